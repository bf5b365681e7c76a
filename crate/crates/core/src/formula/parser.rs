//! Parser for the ASCII/Unicode formula syntax.
//!
//! Tokens: identifiers starting with a lowercase letter, `T`, `F`, `~`,
//! `&`, `|`, `->`, `[]`, `<>`, `|>`, parentheses; the Unicode aliases
//! `⊤ ⊥ ¬ ∧ ∨ → □ ◇ ▷` are accepted too. Precedence, tightest first:
//! `~ [] <>`, then `&`, `|`, `|>`, `->`. Implication is right-associative,
//! `&`/`|` are left-associative, and `|>` is non-associative: a chain like
//! `a |> b |> c` is rejected and must be parenthesized.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    /// `|>` does not associate; chains need explicit parentheses.
    #[error("'|>' is non-associative: parenthesize the chain at position {position}")]
    Associativity { position: usize },
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Imp,
    Box,
    Diamond,
    Rhd,
    LParen,
    RParen,
}

/// Lexes `text` into tokens tagged with their character position.
fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let pos = i;
        let c = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            'T' | '⊤' => Tok::Top,
            'F' | '⊥' => Tok::Bot,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '∨' => Tok::Or,
            '→' => Tok::Imp,
            '□' => Tok::Box,
            '◇' => Tok::Diamond,
            '▷' => Tok::Rhd,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' => {
                if chars.get(i) == Some(&'>') {
                    i += 1;
                    Tok::Rhd
                } else {
                    Tok::Or
                }
            }
            '-' => {
                if chars.get(i) == Some(&'>') {
                    i += 1;
                    Tok::Imp
                } else {
                    return Err(syntax(pos, "expected '>' after '-'"));
                }
            }
            '[' => {
                if chars.get(i) == Some(&']') {
                    i += 1;
                    Tok::Box
                } else {
                    return Err(syntax(pos, "expected ']' after '['"));
                }
            }
            '<' => {
                if chars.get(i) == Some(&'>') {
                    i += 1;
                    Tok::Diamond
                } else {
                    return Err(syntax(pos, "expected '>' after '<'"));
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut name = String::from(c);
                while let Some(&c) = chars.get(i) {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        i += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        };
        toks.push((pos, tok));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.cursor)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    // imp := rhd ('->' imp)?        right-associative
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.rhd()?;
        if matches!(self.peek(), Some((_, Tok::Imp))) {
            self.next();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    // rhd := or ('|>' or)?          non-associative
    fn rhd(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if matches!(self.peek(), Some((_, Tok::Rhd))) {
            self.next();
            let rhs = self.or()?;
            if let Some((pos, Tok::Rhd)) = self.peek() {
                return Err(ParseError::Associativity { position: *pos });
            }
            return Ok(Formula::rhd(lhs, rhs));
        }
        Ok(lhs)
    }

    // or := and ('|' and)*          left-associative
    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while matches!(self.peek(), Some((_, Tok::Or))) {
            self.next();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    // and := unary ('&' unary)*     left-associative
    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some((_, Tok::And))) {
            self.next();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some((_, Tok::Not)) => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Some((_, Tok::Box)) => {
                self.next();
                Ok(Formula::boxed(self.unary()?))
            }
            Some((_, Tok::Diamond)) => {
                self.next();
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some((_, Tok::Ident(name))) => Ok(Formula::Var(name)),
            Some((_, Tok::Top)) => Ok(Formula::Top),
            Some((_, Tok::Bot)) => Ok(Formula::Bot),
            Some((pos, Tok::LParen)) => {
                let inner = self.imp()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => Err(syntax(pos, "unclosed '('")),
                }
            }
            Some((pos, tok)) => Err(syntax(pos, format!("unexpected token {tok:?}"))),
            None => Err(syntax(self.end, "unexpected end of input")),
        }
    }
}

/// Parses `text` into a [`Formula`].
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut parser = Parser {
        toks,
        cursor: 0,
        end,
    };
    let f = parser.imp()?;
    if let Some((pos, tok)) = parser.peek() {
        return Err(syntax(*pos, format!("trailing input at token {tok:?}")));
    }
    Ok(f)
}

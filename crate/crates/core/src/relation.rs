//! Binary relations on a small finite carrier, stored as per-row bitmasks.
//!
//! All frames in this crate live on carriers of at most 64 worlds, so a
//! row fits in a `u64` and the usual relation algebra (composition,
//! closure, reachability) is a handful of word operations.

/// Maximum carrier size supported by the bitmask representation.
pub const MAX_WORLDS: usize = 64;

/// A binary relation on `{0, .., n-1}`; `rows[x]` is the successor set of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_WORLDS, "carrier too large for bitmask relations");
        Relation {
            n,
            rows: vec![0; n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rel = Relation::empty(n);
        for (x, y) in pairs {
            rel.insert(x, y);
        }
        rel
    }

    pub fn identity(n: usize) -> Self {
        let mut rel = Relation::empty(n);
        for x in 0..n {
            rel.insert(x, x);
        }
        rel
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n && y < self.n);
        self.rows[x] |= 1 << y;
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && self.rows[x] >> y & 1 == 1
    }

    /// Successor set of `x` as a bitmask.
    pub fn row(&self, x: usize) -> u64 {
        self.rows[x]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| {
            (0..self.n).filter_map(move |y| self.contains(x, y).then_some((x, y)))
        })
    }

    /// Some `(x, y, z)` with `x R y`, `y R z`, not `x R z`, if one exists.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in bits(self.rows[x]) {
                let missing = self.rows[y] & !self.rows[x];
                if missing != 0 {
                    return Some((x, y, missing.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// Some reflexive point, if one exists.
    pub fn reflexivity_witness(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.contains(x, x))
    }

    pub fn is_irreflexive(&self) -> bool {
        self.reflexivity_witness().is_none()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n);
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn with_identity(&self) -> Relation {
        self.union(&Relation::identity(self.n))
    }

    pub fn transitive_closure(&self) -> Relation {
        let mut rel = self.clone();
        // Floyd-Warshall over bitmask rows.
        for k in 0..rel.n {
            for x in 0..rel.n {
                if rel.rows[x] >> k & 1 == 1 {
                    rel.rows[x] |= rel.rows[k];
                }
            }
        }
        rel
    }

    /// Worlds reachable from `x` in one or more steps.
    pub fn reachable_from(&self, x: usize) -> u64 {
        let mut seen = self.rows[x];
        loop {
            let mut next = seen;
            for y in bits(seen) {
                next |= self.rows[y];
            }
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    /// Restricts the relation to the worlds in `keep` (a bitmask), renumbering
    /// them in increasing order.
    pub fn restrict(&self, keep: u64) -> Relation {
        let kept: Vec<usize> = bits(keep).filter(|&x| x < self.n).collect();
        let mut out = Relation::empty(kept.len());
        for (new_x, &old_x) in kept.iter().enumerate() {
            for (new_y, &old_y) in kept.iter().enumerate() {
                if self.contains(old_x, old_y) {
                    out.insert(new_x, new_y);
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "Relation{:?}", self.pairs().collect::<Vec<_>>())
    }
}

/// Iterates over the set bits of a mask, in increasing order.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(Some(mask), |&m| {
        let rest = m & m.wrapping_sub(1);
        (rest != 0).then_some(rest)
    })
    .take_while(|&m| m != 0)
    .map(|m| m.trailing_zeros() as usize)
}

/// The full mask `{0, .., n-1}`.
pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

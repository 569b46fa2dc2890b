//! Sequences of Kudo-Araki operation indices.
//!
//! `Seq(i1, ..., ir)` denotes the composite `Q^{i1} ... Q^{ir}` with `Q^{ir}`
//! applied first. The empty sequence is the identity operation.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seq(Vec<u32>);

/// Excess of a sequence, with the empty sequence carrying `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Excess {
    Finite(i64),
    Infinite,
}

impl Excess {
    pub fn is_positive(self) -> bool {
        match self {
            Excess::Finite(e) => e > 0,
            Excess::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Excess::Finite(e) => Some(e),
            Excess::Infinite => None,
        }
    }

    /// True when the excess is strictly greater than `bound`.
    pub fn exceeds(self, bound: i64) -> bool {
        match self {
            Excess::Finite(e) => e > bound,
            Excess::Infinite => true,
        }
    }
}

impl PartialOrd for Excess {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Excess {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Excess::Finite(a), Excess::Finite(b)) => a.cmp(b),
            (Excess::Finite(_), Excess::Infinite) => Ordering::Less,
            (Excess::Infinite, Excess::Finite(_)) => Ordering::Greater,
            (Excess::Infinite, Excess::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Excess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Excess::Finite(e) => write!(f, "{e}"),
            Excess::Infinite => write!(f, "+inf"),
        }
    }
}

impl Seq {
    /// Builds a sequence; every entry must be positive.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&i| i == 0) {
            return Err(Error::MalformedSequence(format!(
                "entry {} of {:?} is not positive",
                pos + 1,
                entries
            )));
        }
        Ok(Seq(entries))
    }

    /// Accepts signed input, rejecting non-positive entries.
    pub fn from_signed(entries: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(entries.len());
        for &e in entries {
            if e <= 0 {
                return Err(Error::MalformedSequence(format!("non-positive entry {e}")));
            }
            out.push(u32::try_from(e).map_err(|_| Error::Overflow(format!("entry {e}")))?);
        }
        Ok(Seq(out))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        Seq(entries)
    }

    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i_j <= 2 i_{j+1}` for every adjacent pair.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= 2 * w[1])
    }

    /// `i1 - base_dim - (i2 + ... + ir)`; the empty sequence has infinite excess.
    pub fn excess(&self, base_dim: u32) -> Excess {
        match self.0.split_first() {
            None => Excess::Infinite,
            Some((&first, rest)) => {
                let tail: i64 = rest.iter().map(|&i| i as i64).sum();
                Excess::Finite(first as i64 - base_dim as i64 - tail)
            }
        }
    }

    /// Outermost operation, if any.
    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// The sequence with the outermost operation removed.
    pub fn tail(&self) -> Seq {
        Seq(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    /// Prepends an outer operation.
    pub fn prepend(&self, i: u32) -> Seq {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Seq(v)
    }

    /// Appends an inner operation (applied before all others).
    pub fn append(&self, i: u32) -> Seq {
        let mut v = self.0.clone();
        v.push(i);
        Seq(v)
    }

    /// Every entry multiplied by `2^t`.
    pub fn doubled(&self, t: u32) -> Seq {
        Seq(self.0.iter().map(|&i| i << t).collect())
    }

    /// Enumerates all admissible sequences of the given length budget and
    /// exact dimension. Used by tests and enumerators.
    pub fn admissible_of_dim(dim: u32) -> Vec<Seq> {
        let mut out = Vec::new();
        // build from the innermost entry outward
        fn grow(acc: &mut Vec<u32>, remaining: u32, out: &mut Vec<Seq>) {
            if remaining == 0 {
                let mut v = acc.clone();
                v.reverse();
                out.push(Seq(v));
                return;
            }
            let cap = match acc.last() {
                Some(&inner) => remaining.min(2 * inner),
                None => remaining,
            };
            for i in 1..=cap {
                acc.push(i);
                grow(acc, remaining - i, out);
                acc.pop();
            }
        }
        if dim == 0 {
            return vec![Seq::empty()];
        }
        grow(&mut Vec::new(), dim, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> Seq {
        Seq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(s(&[4, 2, 1]).is_admissible());
        assert!(!s(&[5, 2]).is_admissible());
        assert!(Seq::empty().is_admissible());
        assert!(Seq::new(vec![3, 0]).is_err());
        assert!(Seq::from_signed(&[2, -1]).is_err());
    }

    #[test]
    fn excess_values() {
        assert_eq!(s(&[4, 2, 1]).excess(0), Excess::Finite(1));
        assert_eq!(Seq::empty().excess(7), Excess::Infinite);
        assert_eq!(s(&[3, 2]).excess(1), Excess::Finite(0));
        assert!(Excess::Infinite > Excess::Finite(i64::MAX));
    }

    #[test]
    fn admissible_enumeration_matches_filter() {
        // brute force over all compositions
        fn compositions(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for d in 0..=12 {
            let mut expect: Vec<Seq> = compositions(d)
                .into_iter()
                .map(Seq)
                .filter(|q| q.is_admissible())
                .collect();
            expect.sort();
            assert_eq!(Seq::admissible_of_dim(d), expect, "dim {d}");
        }
    }

    proptest! {
        #[test]
        fn excess_positive_iff_head_dominates(v in proptest::collection::vec(1u32..8, 1..5)) {
            let q = Seq(v.clone());
            let rest: u32 = v[1..].iter().sum();
            prop_assert_eq!(q.excess(0).is_positive(), v[0] > rest);
        }
    }
}

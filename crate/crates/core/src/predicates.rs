//! Nontriviality predicates for the classes `x_i^{-k}` and `w^{-k}`, the
//! arithmetic functions `ν_j` and `q(p)`, and the lookup tables of
//! spherical dimensions and suspension bounds. Every answer carries the
//! anchor string of the table row it came from.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::atlas::{bott_space, AtlasSpace};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, mod_pow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub kind: String,
    pub fields: Vec<(String, String)>,
    pub anchor: String,
}

impl Row {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn list(&self, key: &str) -> Vec<u32> {
        self.get(key)
            .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect())
            .unwrap_or_default()
    }

    fn has_k(&self, r: u32) -> bool {
        self.list("k").contains(&r)
    }
}

#[derive(Debug, Clone, Default)]
pub struct PredicateTable {
    rows: Vec<Row>,
}

impl PredicateTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| Error::Presentation { line: n + 1, message: m.to_string() };
            let (head, anchor) = line.split_once("anchor=\"").ok_or_else(|| err("missing anchor"))?;
            let anchor = anchor.strip_suffix('"').ok_or_else(|| err("unterminated anchor"))?;
            if anchor.trim().is_empty() {
                return Err(err("empty anchor"));
            }
            let mut parts = head.split_whitespace();
            let kind = parts.next().ok_or_else(|| err("missing kind"))?.to_string();
            let mut fields = Vec::new();
            for p in parts {
                let (k, v) = p.split_once('=').ok_or_else(|| err("expected key=value"))?;
                fields.push((k.to_string(), v.to_string()));
            }
            rows.push(Row { kind, fields, anchor: anchor.to_string() });
        }
        Ok(PredicateTable { rows })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn find(&self, kind: &str, pred: impl Fn(&Row) -> bool) -> Option<&Row> {
        self.rows.iter().find(|r| r.kind == kind && pred(r))
    }

    fn anchor(&self, kind: &str, pred: impl Fn(&Row) -> bool) -> &str {
        self.find(kind, pred)
            .map(|r| r.anchor.as_str())
            .expect("predicate table covers every case")
    }
}

/// The shipped predicate table.
pub fn table() -> &'static PredicateTable {
    static T: OnceLock<PredicateTable> = OnceLock::new();
    T.get_or_init(|| {
        PredicateTable::parse(include_str!("../data/predicates.tbl")).expect("shipped table parses")
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchored<T> {
    pub value: T,
    pub anchor: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Real,
    Complex,
}

pub fn suspension_bound(ladder: Ladder) -> Anchored<u32> {
    let key = match ladder {
        Ladder::Real => "real",
        Ladder::Complex => "complex",
    };
    let row = table().find("bound", |r| r.get("ladder") == Some(key)).expect("bound rows");
    Anchored { value: row.list("t")[0], anchor: &row.anchor }
}

/// Dimensions in which `H_*Ω_0^k SO` can carry spherical classes.
pub fn spherical_dims(k: u32) -> Anchored<BTreeSet<u32>> {
    let row = table().find("spherical", |r| r.has_k(k % 8)).expect("spherical rows");
    Anchored { value: row.list("dims").into_iter().collect(), anchor: &row.anchor }
}

/// `ν_j = v_2(3^{4j} - 1)`.
pub fn nu(j: u64) -> u32 {
    assert!(j >= 1, "nu is defined for j >= 1");
    let v = BigUint::from(3u32).pow(4 * j as u32) - BigUint::one();
    v.trailing_zeros().expect("nonzero") as u32
}

pub fn nu_anchor() -> &'static str {
    table().anchor("nu", |_| true)
}

pub const Q_SEARCH_BOUND: u64 = 100_000;

/// The least prime `q` with `q^i ≢ 1 (mod p)` for `1 <= i <= p-2` and
/// `p ∥ q^{p-1} - 1`.
pub fn q_of_p(p: u64) -> Result<u64> {
    q_of_p_bounded(p, Q_SEARCH_BOUND)
}

pub fn q_of_p_bounded(p: u64, bound: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("q(p) is defined for odd p".into()));
    }
    (2..=bound)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            (1..=p - 2).all(|i| mod_pow(q, i, p) != 1) && mod_pow(q, p - 1, p * p) != 1
        })
        .ok_or(Error::SearchBound(bound))
}

pub fn q_of_p_anchor() -> &'static str {
    table().anchor("qp", |_| true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XClass {
    pub i: u32,
    pub k: u32,
    pub space: AtlasSpace,
    pub generator: String,
    pub nontrivial: bool,
    /// The subalgebra generated by `Q^I x_i^{-k}` is exterior.
    pub exterior: bool,
    pub anchor: &'static str,
    pub notes: Vec<&'static str>,
}

/// `x_i^{-k}`, the image of the dimension-`i` generator of `H_*Ω_0^k SO`.
pub fn x_class(i: u32, k: u32) -> Result<XClass> {
    let space = bott_space(k);
    let sp = space.presentation();
    let generator = sp
        .generators()
        .iter()
        .find(|g| g.dim == i)
        .map(|g| g.name.clone())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("H_*{} has no generator in dimension {i}", space.name()))
        })?;
    let r = k % 8;
    let t = table();
    let anchor = t.anchor("x_clause", |row| row.has_k(r));
    let nontrivial = if r != 0 {
        true
    } else if k == 0 {
        // 3^0 - 1 = 0 has infinite 2-adic valuation
        true
    } else {
        let period = 1u64 << nu((k / 8) as u64);
        !(i as u64 + 1).is_multiple_of(period)
    };
    let exterior = t.find("x_exterior", |row| row.has_k(r)).is_some();
    let notes = t
        .rows()
        .iter()
        .filter(|row| row.kind == "x_powers" && row.has_k(r))
        .map(|row| row.anchor.as_str())
        .collect();
    Ok(XClass { i, k, space, generator, nontrivial, exterior, anchor, notes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WClass {
    pub i: u32,
    pub k: u32,
    pub p: u64,
    /// `2i + 1 - ε(k)`.
    pub dim: u32,
    /// `c_{2i}` in `H_*BU` for odd `k`, `u_{2i+1}` in `H_*U` for even `k`.
    pub source: String,
    pub nontrivial: bool,
    pub exterior: bool,
    pub anchor: &'static str,
}

pub fn epsilon(k: u32) -> u32 {
    k % 2
}

/// `w^{-k}_{2i+1-ε(k)}` with its nontriviality verdict at the prime `p`.
pub fn w_class(i: u32, k: u32, p: u64) -> Result<WClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let eps = epsilon(k);
    if eps == 1 && i == 0 {
        return Err(Error::InvalidArgument("w^{-k} for odd k needs i >= 1".into()));
    }
    let dim = 2 * i + 1 - eps;
    let source = if eps == 1 { format!("c{dim}") } else { format!("u{dim}") };
    let t = table();
    let (nontrivial, anchor) = if p == 2 {
        let r = k % 8;
        let row = t
            .find("w_clause", |row| row.get("p") == Some("2") && row.has_k(r))
            .expect("w rows cover all residues");
        let v = match row.get("parity") {
            Some("any") => true,
            Some("even") => i.is_multiple_of(2),
            Some("odd") => i % 2 == 1,
            _ => false,
        };
        (v, row.anchor.as_str())
    } else {
        let n = k.div_ceil(2) as u64;
        let q = q_of_p(p)?;
        let key = if k % 2 == 1 { "odd" } else { "even" };
        let anchor = t.anchor("w_clause", |row| row.get("p") == Some("odd") && row.get("k") == Some(key));
        (mod_pow(q, n + i as u64, p) == 1, anchor)
    };
    let exterior = p == 2 && t.find("w_exterior", |row| row.has_k(k % 8)).is_some();
    Ok(WClass { i, k, p, dim, source, nontrivial, exterior, anchor })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2_oracle(mut n: u128) -> u32 {
        let mut v = 0;
        while n.is_multiple_of(2) {
            n /= 2;
            v += 1;
        }
        v
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(1), 4);
        assert_eq!(nu(2), 5);
        assert_eq!(v2_oracle(3u128.pow(4) - 1), 4);
        assert_eq!(v2_oracle(3u128.pow(8) - 1), 5);
        for j in 1..=64u64 {
            assert!(nu(j) >= 4);
            assert_eq!(nu(j), 4 + j.trailing_zeros());
        }
        for j in 1..=20u64 {
            assert_eq!(nu(j), v2_oracle(3u128.pow(4 * j as u32) - 1));
        }
    }

    fn q_oracle(p: u64) -> u64 {
        (2u64..)
            .filter(|&q| (2..q).all(|d| q % d != 0))
            .find(|&q| {
                // multiplicative order of q mod p is p - 1
                let mut x = 1u64;
                let mut order = 0;
                for e in 1..p {
                    x = x * q % p;
                    if x == 1 {
                        order = e;
                        break;
                    }
                }
                let big = BigUint::from(q).pow((p - 1) as u32) - BigUint::one();
                let pp = BigUint::from(p * p);
                order == p - 1 && (&big % &pp) != BigUint::from(0u32)
            })
            .unwrap()
    }

    #[test]
    fn q_of_p_values() {
        assert_eq!(q_of_p(3).unwrap(), 2);
        assert_eq!(q_of_p(5).unwrap(), 2);
        assert_eq!(q_of_p(7).unwrap(), 3);
        for p in (3..=100).filter(|&p| is_prime(p)) {
            assert_eq!(q_of_p(p).unwrap(), q_oracle(p), "p={p}");
        }
        assert!(q_of_p(4).is_err());
        assert!(matches!(q_of_p_bounded(7, 2), Err(Error::SearchBound(2))));
    }

    #[test]
    fn tables() {
        assert_eq!(spherical_dims(8).value, BTreeSet::from([1, 3, 7]));
        assert_eq!(spherical_dims(19).value, BTreeSet::from([4]));
        assert_eq!(spherical_dims(15).value, BTreeSet::from([1, 2, 4, 8]));
        for k in 3..=5 {
            assert_eq!(spherical_dims(k).value, BTreeSet::from([7 - k]));
        }
        assert_eq!(suspension_bound(Ladder::Complex).value, 3);
        assert_eq!(suspension_bound(Ladder::Real).value, 7);
        for row in table().rows() {
            assert!(!row.anchor.is_empty());
        }
    }

    #[test]
    fn x_class_verdicts() {
        let x = x_class(4, 3).unwrap();
        assert!(x.nontrivial);
        assert_eq!(x.space, AtlasSpace::BSp);
        assert!(x_class(5, 3).is_err());
        assert!(!x_class(15, 8).unwrap().nontrivial);
        assert!(x_class(14, 8).unwrap().nontrivial);
        assert!(x_class(3, 8).unwrap().exterior);
        assert!(!x_class(3, 7).unwrap().exterior);
        assert_eq!(x_class(3, 7).unwrap().notes.len(), 1);
        for i in 1..=64 {
            assert_eq!(x_class(i, 8).unwrap().nontrivial, i % 16 != 15);
            assert_eq!(x_class(i, 16).unwrap().nontrivial, i % 32 != 31);
        }
    }

    #[test]
    fn w_class_verdicts() {
        assert!(!w_class(1, 5, 2).unwrap().nontrivial);
        let w = w_class(3, 4, 2).unwrap();
        assert!(w.nontrivial);
        assert_eq!(w.dim, 7);
        assert!(w.exterior);
        let w = w_class(1, 1, 3).unwrap();
        assert!(w.nontrivial);
        assert_eq!(w.dim, 2);
        assert!(w_class(2, 2, 2).unwrap().nontrivial);
        assert!(!w_class(1, 2, 2).unwrap().nontrivial);
        assert!(w_class(0, 3, 2).is_err());
    }
}

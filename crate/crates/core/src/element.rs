//! Canonical monomials and F2-linear combinations of them.
//!
//! A monomial is `[c] * a1^e1 * ... * an^en` where `[c]` is a group-like
//! component class (absent in connected contexts) and each atom `ai` is an
//! admissible operation sequence applied to a root: a π₀ generator `[γ_j]` or
//! a basis monomial of a base space. Monomials are ordered by total
//! dimension, then atom list, then exponent vector, then component.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::seq::Seq;
use crate::space::BaseMonomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    /// The `j`-th declared π₀ generator.
    Pi0(u16),
    /// An additive basis element of the base space.
    Base(BaseMonomial),
}

impl Root {
    pub fn dim(&self) -> u32 {
        match self {
            Root::Pi0(_) => 0,
            Root::Base(m) => m.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    dim: u32,
    ops: Seq,
    root: Root,
}

impl Atom {
    pub fn new(ops: Seq, root: Root) -> Self {
        Atom {
            dim: ops.dim() + root.dim(),
            ops,
            root,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn ops(&self) -> &Seq {
        &self.ops
    }

    pub fn root(&self) -> &Root {
        &self.root
    }

    /// Number of operations applied.
    pub fn length(&self) -> usize {
        self.ops.len()
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.root.cmp(&other.root))
            .then_with(|| self.ops.cmp(&other.ops))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    dim: u32,
    factors: Vec<(Atom, u32)>,
    component: Vec<i64>,
}

impl Monomial {
    /// The unit of a context whose π₀ has `rank` summands.
    pub fn unit(rank: usize) -> Self {
        Monomial {
            dim: 0,
            factors: Vec::new(),
            component: vec![0; rank],
        }
    }

    /// Group-like class `[c]`.
    pub fn group_like(component: Vec<i64>) -> Self {
        Monomial {
            dim: 0,
            factors: Vec::new(),
            component,
        }
    }

    /// Builds a monomial from raw parts. Factors are sorted and merged;
    /// the caller is responsible for relation disciplines.
    pub fn from_parts(mut factors: Vec<(Atom, u32)>, component: Vec<i64>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Atom, u32)> = Vec::with_capacity(factors.len());
        for (a, e) in factors {
            match merged.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => merged.push((a, e)),
            }
        }
        let dim = merged.iter().map(|(a, e)| a.dim * e).sum();
        Monomial {
            dim,
            factors: merged,
            component,
        }
    }

    pub fn atom(atom: Atom, rank: usize) -> Self {
        Monomial::from_parts(vec![(atom, 1)], vec![0; rank])
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.factors
    }

    /// The group-like factor `[c]` (not the full component label).
    pub fn component(&self) -> &[i64] {
        &self.component
    }

    pub fn is_group_like(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of atom factors counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn with_component(&self, component: Vec<i64>) -> Self {
        Monomial {
            dim: self.dim,
            factors: self.factors.clone(),
            component,
        }
    }

    /// Raw product: exponents add, group-like parts add (unreduced).
    pub fn raw_mul(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let component = add_vec(&self.component, &other.component);
        Monomial::from_parts(factors, component)
    }
}

pub(crate) fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| {
                let a = self.factors.iter().map(|(x, _)| x);
                let b = other.factors.iter().map(|(x, _)| x);
                a.cmp(b)
            })
            .then_with(|| {
                let a = self.factors.iter().map(|(_, e)| e);
                let b = other.factors.iter().map(|(_, e)| e);
                a.cmp(b)
            })
            .then_with(|| self.component.cmp(&other.component))
    }
}

/// An F2-linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Element(BTreeSet<Monomial>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeSet::new())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element(BTreeSet::from([m]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.contains(m)
    }

    /// Leading (largest) monomial.
    pub fn leading(&self) -> Option<&Monomial> {
        self.0.iter().next_back()
    }

    /// Smallest monomial.
    pub fn trailing(&self) -> Option<&Monomial> {
        self.0.iter().next()
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for m in &other.0 {
            self.add_monomial(m.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// The dimension if all terms share one.
    pub fn dim(&self) -> Option<u32> {
        let mut it = self.0.iter().map(Monomial::dim);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Element {
        let mut out = Element::zero();
        for m in &self.0 {
            out.add_monomial(f(m));
        }
        out
    }
}

impl FromIterator<Monomial> for Element {
    fn from_iter<T: IntoIterator<Item = Monomial>>(iter: T) -> Self {
        let mut out = Element::zero();
        for m in iter {
            out.add_monomial(m);
        }
        out
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = &'a Monomial;
    type IntoIter = std::collections::btree_set::Iter<'a, Monomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for Element {
    type Item = Monomial;
    type IntoIter = std::collections::btree_set::IntoIter<Monomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// An F2-linear combination of tensors `a ⊗ b`.
pub type Tensor = std::collections::HashSet<(Monomial, Monomial)>;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atom(ops: &[u32], j: u16) -> Atom {
        Atom::new(Seq::new(ops.to_vec()).unwrap(), Root::Pi0(j))
    }

    #[test]
    fn merge_and_dims() {
        let a = atom(&[2], 0);
        let b = atom(&[3, 1], 0);
        let m = Monomial::from_parts(vec![(b.clone(), 1), (a.clone(), 1), (a.clone(), 2)], vec![1]);
        assert_eq!(m.dim(), 3 * 2 + 4);
        assert_eq!(m.factors()[0], (a, 3));
        assert_eq!(m.weight(), 4);
    }

    #[test]
    fn element_is_f2() {
        let m = Monomial::unit(1);
        let mut e = Element::from_monomial(m.clone());
        e.add_monomial(m);
        assert!(e.is_zero());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        (
            proptest::collection::vec(((1u32..5, 1u32..4), 0u16..2, 1u32..3), 0..3),
            -3i64..3,
        )
            .prop_map(|(fs, c)| {
                let factors = fs
                    .into_iter()
                    .map(|((a, b), j, e)| (atom(&[a, b], j), e))
                    .collect();
                Monomial::from_parts(factors, vec![c])
            })
    }

    proptest! {
        #[test]
        fn canonical_order_is_total(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            // antisymmetry
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            // transitivity
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}

//! Bases, Poincaré series, primitives and indecomposables, for base spaces
//! and for the free algebras `H_*QX` and `H_*Q_0S^{-k}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::element::{Atom, Element, Monomial, Root};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::linalg::{from_coords, kernel, SparseVec};
use crate::seq::Seq;
use crate::space::{BaseElement, BaseMonomial, SpacePresentation};

/// Interns hashable keys as consecutive coordinates.
struct Interner<K>(HashMap<K, usize>);

impl<K: std::hash::Hash + Eq> Interner<K> {
    fn new() -> Self {
        Interner(HashMap::new())
    }
    fn id(&mut self, k: K) -> usize {
        let n = self.0.len();
        *self.0.entry(k).or_insert(n)
    }
}

fn combine<T: Clone + Ord>(basis: &[T], v: &SparseVec) -> std::collections::BTreeSet<T> {
    v.iter().map(|&i| basis[i].clone()).collect()
}

// ---- base spaces ----

/// Basis of the primitives of a base space in one dimension.
pub fn base_primitives(sp: &SpacePresentation, dim: u32) -> Result<Vec<BaseElement>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let basis = sp.basis(dim);
    let mut ids = Interner::new();
    let mut images = Vec::with_capacity(basis.len());
    for m in &basis {
        let t = sp.reduced_coproduct_monomial(m)?;
        images.push(from_coords(t.into_iter().map(|p| ids.id(p)).collect()));
    }
    Ok(kernel(&images).iter().map(|v| combine(&basis, v)).collect())
}

/// Generators of a base space in one dimension: its indecomposables.
pub fn base_indecomposables(sp: &SpacePresentation, dim: u32) -> Vec<BaseMonomial> {
    sp.basis(dim).into_iter().filter(|m| m.degree() == 1).collect()
}

/// Primitives killed by every `Sq^r_*`, `r >= 1`, in dimensions `1..=up_to`.
pub fn a_annihilated_primitives(
    sp: &SpacePresentation,
    up_to: u32,
) -> Result<Vec<(u32, BaseElement)>> {
    let mut out = Vec::new();
    for d in 1..=up_to {
        let prims = base_primitives(sp, d)?;
        if prims.is_empty() {
            continue;
        }
        let mut ids = Interner::new();
        let mut images = Vec::with_capacity(prims.len());
        for p in &prims {
            let mut coords = Vec::new();
            for r in 1..=d / 2 {
                for m in sp.sq(r, p)? {
                    coords.push(ids.id((r, m)));
                }
            }
            images.push(from_coords(coords));
        }
        for v in kernel(&images) {
            let mut x = BaseElement::new();
            for &i in &v {
                for m in &prims[i] {
                    crate::f2::toggle_ord(&mut x, m.clone());
                }
            }
            out.push((d, x));
        }
    }
    Ok(out)
}

// ---- free algebras ----

impl Engine {
    /// Algebra generators `Q^I x` of one dimension, sorted.
    pub fn atoms_of_dim(&self, dim: u32) -> Vec<Atom> {
        let mut out = Vec::new();
        match (self.pi0(), self.space()) {
            (Some(p), _) => {
                for j in 0..p.rank() {
                    for s in Seq::admissible_of_dim(dim) {
                        if !s.is_empty() && s.excess(0).is_positive() {
                            out.push(Atom::new(s, Root::Pi0(j as u16)));
                        }
                    }
                }
            }
            (None, Some(sp)) => {
                for d in 1..=dim {
                    let roots = sp.basis(d);
                    if roots.is_empty() {
                        continue;
                    }
                    for s in Seq::admissible_of_dim(dim - d) {
                        if s.excess(d).is_positive() {
                            for x in &roots {
                                out.push(Atom::new(s.clone(), Root::Base(x.clone())));
                            }
                        }
                    }
                }
            }
            (None, None) => unreachable!(),
        }
        out.sort();
        out
    }

    fn atom_height(&self, a: &Atom) -> Option<u32> {
        match (self.pi0(), a.root()) {
            (Some(p), Root::Pi0(j)) => p.order_exp(*j as usize).map(|d| 1u32 << d),
            _ => None,
        }
    }

    /// Monomial basis of one dimension (the base-point component in a π₀
    /// context), in canonical order.
    pub fn basis(&self, dim: u32) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.basis_cache.lock().get(&dim) {
            return b.clone();
        }
        let mut atoms = Vec::new();
        for d in 1..=dim {
            atoms.extend(self.atoms_of_dim(d));
        }
        let mut out = Vec::new();
        let mut acc = Vec::new();
        self.basis_rec(&atoms, 0, dim, &mut acc, &mut out);
        out.sort();
        let out = Arc::new(out);
        self.basis_cache.lock().insert(dim, out.clone());
        out
    }

    fn basis_rec(
        &self,
        atoms: &[Atom],
        start: usize,
        remaining: u32,
        acc: &mut Vec<(Atom, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            let raw = Monomial::from_parts(acc.clone(), vec![0; self.rank()]);
            let label = self.label(&raw);
            let comp = self.reduce_component(&label.iter().map(|x| -x).collect::<Vec<_>>());
            out.push(raw.with_component(comp));
            return;
        }
        for (i, a) in atoms.iter().enumerate().skip(start) {
            if a.dim() > remaining {
                break;
            }
            let cap = (remaining / a.dim()).min(self.atom_height(a).map_or(u32::MAX, |h| h - 1));
            for e in 1..=cap {
                acc.push((a.clone(), e));
                self.basis_rec(atoms, i + 1, remaining - e * a.dim(), acc, out);
                acc.pop();
            }
        }
    }

    /// Dimensions `0..=up_to` by generating functions over the generators.
    pub fn poincare_series(&self, up_to: u32) -> Vec<u64> {
        let n = up_to as usize;
        let mut series = vec![0u64; n + 1];
        series[0] = 1;
        for d in 1..=up_to {
            for a in self.atoms_of_dim(d) {
                let h = self.atom_height(&a).map(|h| h as usize);
                let d = d as usize;
                let mut next = vec![0u64; n + 1];
                for (i, &c) in series.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut e = 0;
                    while i + e * d <= n && h.is_none_or(|h| e < h) {
                        next[i + e * d] += c;
                        e += 1;
                    }
                }
                series = next;
            }
        }
        series
    }

    pub fn is_primitive(&self, x: &Element) -> Result<bool> {
        Ok(self.reduced_coproduct(x)?.is_empty())
    }

    /// Basis of the primitives in one dimension, in reduced echelon form
    /// with lowest canonical pivots.
    pub fn primitives(&self, dim: u32) -> Result<Vec<Element>> {
        if dim == 0 {
            return Ok(Vec::new());
        }
        let basis = self.basis(dim);
        let mut ids = Interner::new();
        let mut images = Vec::with_capacity(basis.len());
        for m in basis.iter() {
            let t = self.reduced_coproduct(&Element::from_monomial(m.clone()))?;
            images.push(from_coords(t.into_iter().map(|p| ids.id(p)).collect()));
        }
        Ok(kernel(&images)
            .iter()
            .map(|v| v.iter().map(|&i| basis[i].clone()).collect())
            .collect())
    }

    /// Representatives of the indecomposables in one dimension: the
    /// generators, since every algebra here is free or truncated on them.
    pub fn indecomposables(&self, dim: u32) -> Vec<Element> {
        self.atoms_of_dim(dim)
            .into_iter()
            .map(|a| {
                let m = Monomial::atom(a, self.rank());
                let label = self.label(&m);
                let c = self.reduce_component(&label.iter().map(|x| -x).collect::<Vec<_>>());
                Element::from_monomial(m.with_component(c))
            })
            .collect()
    }

    /// Coordinates of a homogeneous element in the basis of its dimension.
    pub fn coordinates(&self, x: &Element) -> Result<SparseVec> {
        let Some(d) = x.dim() else {
            return if x.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::InvalidArgument("inhomogeneous element".into()))
            };
        };
        let basis = self.basis(d);
        let mut out = Vec::with_capacity(x.len());
        for m in x {
            match basis.binary_search(m) {
                Ok(i) => out.push(i),
                Err(_) => {
                    return Err(Error::InvalidArgument(
                        "element outside the base-point component".into(),
                    ))
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{evaluate, x_class};

    fn so(n: u32) -> SpacePresentation {
        let mut text = String::from("name SO\nbottom 1\n");
        for i in 1..=n {
            text += &format!("gen s{i} dim={i} rel=ext\n");
        }
        for i in 1..=n {
            let terms: Vec<String> = (0..=i)
                .map(|a| {
                    let l = if a == 0 { "1".to_string() } else { format!("s{a}") };
                    let r = if a == i { "1".to_string() } else { format!("s{}", i - a) };
                    format!("{l}|{r}")
                })
                .collect();
            text += &format!("coprod s{i} = {}\n", terms.join(" + "));
            for r in 1..=i / 2 {
                if crate::scalar::binom_odd((i - r) as i64, r as i64) {
                    text += &format!("sq {r} s{i} = s{}\n", i - r);
                }
            }
        }
        text += &format!("sqbound {n}\n");
        SpacePresentation::parse(&text).unwrap()
    }

    #[test]
    fn qs0_basis_matches_brute_force_counts() {
        let e = Engine::sphere(0).unwrap();
        assert_eq!(e.basis(0).len(), 1);
        let b1 = e.basis(1);
        assert_eq!(b1.len(), 1);
        assert_eq!(Element::from_monomial(b1[0].clone()), x_class(&e, 1));
        // oracle: generators Q^I x_i <-> all sequences (I, i) of positive
        // entries with i1 <= 2 i2 ... and i1 > i2 + ... (brute force)
        fn gens(d: u32) -> u64 {
            fn all(n: u32) -> Vec<Vec<u32>> {
                if n == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for f in 1..=n {
                    for mut r in all(n - f) {
                        r.insert(0, f);
                        out.push(r);
                    }
                }
                out
            }
            all(d)
                .into_iter()
                .filter(|v| {
                    v.windows(2).all(|w| w[0] <= 2 * w[1])
                        && v[0] > v[1..].iter().sum::<u32>()
                })
                .count() as u64
        }
        let mut series = vec![0u64; 11];
        series[0] = 1;
        for d in 1..=10usize {
            for _ in 0..gens(d as u32) {
                let mut next = series.clone();
                for i in d..=10 {
                    next[i] += next[i - d];
                }
                series = next;
            }
        }
        assert_eq!(e.poincare_series(10), series);
        for d in 0..=10 {
            assert_eq!(e.basis(d).len() as u64, series[d as usize]);
        }
    }

    #[test]
    fn truncated_series_for_order_eight() {
        let e = Engine::sphere(3).unwrap();
        let s = e.poincare_series(8);
        for d in 0..=8 {
            assert_eq!(e.basis(d).len() as u64, s[d as usize]);
        }
        // x = Q^1[nu] * [-2 nu]: x^4 nonzero, x^8 = 0
        assert!(s[4] >= 1 && s[8] >= 1);
    }

    #[test]
    fn so_primitives_are_the_pairwise_sums() {
        let sp = so(15);
        for n in 0..7u32 {
            let d = 2 * n + 1;
            let prims = base_primitives(&sp, d).unwrap();
            assert_eq!(prims.len(), 1, "dim {d}");
            // s_{2n+1} + sum_{i=1..n} s_i s_{2n+1-i}
            let mut expect = BaseElement::new();
            expect.insert(sp.gen_monomial(sp.lookup(&format!("s{d}")).unwrap()));
            for i in 1..=n {
                let a = sp.lookup(&format!("s{i}")).unwrap();
                let b = sp.lookup(&format!("s{}", d - i)).unwrap();
                expect.insert(sp.monomial(&[(a, 1), (b, 1)]).unwrap());
            }
            assert_eq!(prims[0], expect);
        }
        for d in [2, 4, 6] {
            assert!(base_primitives(&sp, d).unwrap().is_empty());
        }
    }

    #[test]
    fn so_annihilated_primitives() {
        let sp = so(16);
        let dims: Vec<u32> = a_annihilated_primitives(&sp, 16)
            .unwrap()
            .into_iter()
            .map(|(d, _)| d)
            .collect();
        assert_eq!(dims, vec![1, 3, 7, 15]);
    }

    #[test]
    fn dimension_one_is_primitive() {
        let e = Engine::sphere(0).unwrap();
        assert_eq!(e.primitives(1).unwrap(), vec![x_class(&e, 1)]);
        let prims = e.primitives(3).unwrap();
        assert!(prims.iter().all(|p| e.is_primitive(p).unwrap()));
        assert!(!prims.is_empty());
        let q = evaluate(&e, "Q[2]x(1)").unwrap();
        assert_eq!(e.indecomposables(3).len(), e.atoms_of_dim(3).len());
        assert!(e.coordinates(&q).is_ok());
    }
}

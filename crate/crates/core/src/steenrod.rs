//! The dual Steenrod action `Sq^r_*` on `H_*QX` and `H_*QS^{-k}`, and the
//! square root map `r`.
//!
//! On operations the action is pushed through by the Nishida relations
//! `Sq^r_* Q^s = Σ_i C(s-r, r-2i) Q^{s-r+i} Sq^i_*`, through products by the
//! Cartan formula, and onto base classes by the presentation's table.

use crate::element::{Atom, Element, Monomial, Root};
use crate::engine::{unit_series, Engine};
use crate::error::Result;
use crate::scalar::binom_odd;
use crate::seq::Seq;
use crate::space::BaseElement;

impl Engine {
    fn base_to_element(&self, x: &BaseElement) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            out.add_assign(&self.base_class(m)?);
        }
        Ok(out)
    }

    fn sq_root(&self, r: u32, root: &Root) -> Result<Element> {
        match root {
            Root::Pi0(_) => Ok(if r == 0 {
                self.root_element(root)?
            } else {
                Element::zero()
            }),
            Root::Base(m) => {
                let sp = self.space().expect("base root in a space context");
                self.base_to_element(&sp.sq_monomial(r, m)?)
            }
        }
    }

    /// `Sq^r_*` of an atom.
    pub fn sq_atom(&self, r: u32, atom: &Atom) -> Result<Element> {
        if r == 0 {
            return Ok(self.atom_element(atom));
        }
        if r > atom.dim() {
            return Ok(Element::zero());
        }
        if let Some(v) = self.sq_cache.lock().get(&(r, atom.clone())) {
            return Ok(v.clone());
        }
        let v = match atom.ops().first() {
            None => self.sq_root(r, atom.root())?,
            Some(s) => {
                let tail = atom.ops().tail();
                let inner = if tail.is_empty() {
                    self.root_element(atom.root())?
                } else {
                    self.atom_element(&Atom::new(tail, atom.root().clone()))
                };
                self.nishida(r, s, &inner)?
            }
        };
        self.sq_cache.lock().insert((r, atom.clone()), v.clone());
        Ok(v)
    }

    /// `Sq^r_* Q^s y` by one Nishida step.
    fn nishida(&self, r: u32, s: u32, y: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for i in 0..=r / 2 {
            if s + i < r || !binom_odd(s as i64 - r as i64, r as i64 - 2 * i as i64) {
                continue;
            }
            let sy = self.sq(i, y)?;
            if sy.is_zero() {
                continue;
            }
            out.add_assign(&self.q_apply(s - r + i, &sy)?);
        }
        Ok(out)
    }

    /// `Sq^0_* .. Sq^n_*` of `atom^e`, using `Sq^a_*(y^2) = (Sq^{a/2}_* y)^2`.
    fn sq_total_power(&self, atom: &Atom, e: u32, n: u32) -> Result<Vec<Element>> {
        let len = n as usize + 1;
        let mut acc = unit_series(self.one(), len);
        let (mut e, mut bit) = (e, 0u32);
        while e > 0 {
            if e & 1 == 1 {
                let step = 1u32 << bit;
                let mut v = vec![Element::zero(); len];
                let mut a = 0u32;
                while a * step <= n {
                    let q = self.sq_atom(a, atom)?;
                    v[(a * step) as usize] = self.frobenius(&q, bit);
                    a += 1;
                }
                acc = self.convolve(&acc, &v);
            }
            e >>= 1;
            bit += 1;
        }
        Ok(acc)
    }

    pub fn sq_monomial(&self, r: u32, m: &Monomial) -> Result<Element> {
        if r == 0 {
            return Ok(Element::from_monomial(m.clone()));
        }
        if r > m.dim() {
            return Ok(Element::zero());
        }
        let mut acc = unit_series(
            Element::from_monomial(Monomial::group_like(m.component().to_vec())),
            r as usize + 1,
        );
        for (a, e) in m.factors() {
            let v = self.sq_total_power(a, *e, r)?;
            acc = self.convolve(&acc, &v);
        }
        Ok(acc.pop().unwrap_or_default())
    }

    /// `Sq^r_* x`, normalized.
    pub fn sq(&self, r: u32, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            out.add_assign(&self.sq_monomial(r, m)?);
        }
        Ok(out)
    }

    /// `Sq^r_*` of `Q^I x` computed by Nishida on the unnormalized sequence,
    /// outermost operation first.
    pub fn sq_through_ops(&self, r: u32, ops: &[u32], x: &Element) -> Result<Element> {
        let Some((&s, rest)) = ops.split_first() else {
            return self.sq(r, x);
        };
        let mut out = Element::zero();
        for i in 0..=r / 2 {
            if s + i < r || !binom_odd(s as i64 - r as i64, r as i64 - 2 * i as i64) {
                continue;
            }
            let inner = self.sq_through_ops(i, rest, x)?;
            if inner.is_zero() {
                continue;
            }
            out.add_assign(&self.q_apply(s - r + i, &inner)?);
        }
        Ok(out)
    }

    /// The square root map computed structurally: multiplicative,
    /// `r Q^{2i+1} ξ = 0`, `r Q^{2i} ξ = Q^i r ξ`, `r x = Sq^t_* x` on base
    /// classes of dimension `2t`, identity on group-like classes.
    pub fn square_root(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            let mut acc = self.group_like(m.component());
            for (a, e) in m.factors() {
                let ra = self.square_root_atom(a)?;
                acc = self.mul(&acc, &self.pow(&ra, *e));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    fn square_root_atom(&self, a: &Atom) -> Result<Element> {
        if a.dim() % 2 == 1 {
            return Ok(Element::zero());
        }
        match a.ops().first() {
            None => match a.root() {
                Root::Pi0(_) => self.root_element(a.root()),
                Root::Base(m) => {
                    let sp = self.space().expect("base root in a space context");
                    self.base_to_element(&sp.sq_monomial(m.dim() / 2, m)?)
                }
            },
            Some(s) if s % 2 == 1 => Ok(Element::zero()),
            Some(s) => {
                let tail = a.ops().tail();
                let inner = if tail.is_empty() {
                    self.root_element(a.root())?
                } else {
                    self.atom_element(&Atom::new(tail, a.root().clone()))
                };
                let ri = self.square_root(&inner)?;
                self.q_apply(s / 2, &ri)
            }
        }
    }

    /// The square root map as `Sq^t_*` in dimension `2t` (zero in odd
    /// dimensions), evaluated through Nishida and Cartan.
    pub fn square_root_by_sq(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            if m.dim() % 2 == 0 {
                out.add_assign(&self.sq_monomial(m.dim() / 2, m)?);
            }
        }
        Ok(out)
    }
}

/// A formal sum of operation sequences, possibly inadmissible.
pub type FormalSum = std::collections::BTreeSet<Seq>;

/// Which inadmissible pair the formal Adem rewriter attacks next.
#[derive(Debug, Clone, Copy)]
pub enum RewriteOrder {
    /// The innermost (rightmost) inadmissible pair of the first term.
    Innermost,
    /// The outermost (leftmost) inadmissible pair of the last term.
    Outermost,
    /// Pseudo-random choices driven by a seed.
    Random(u64),
}

/// Rewrites a formal sum of sequences to admissible form by the Adem
/// relations alone (no instability), in the requested order.
pub fn adem_rewrite(input: &FormalSum, order: RewriteOrder) -> FormalSum {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(match order {
        RewriteOrder::Random(s) => s,
        _ => 0,
    });
    let mut cur = input.clone();
    loop {
        let bad: Vec<&Seq> = cur.iter().filter(|s| !s.is_admissible()).collect();
        if bad.is_empty() {
            return cur;
        }
        let target = match order {
            RewriteOrder::Innermost => bad[0].clone(),
            RewriteOrder::Outermost => bad[bad.len() - 1].clone(),
            RewriteOrder::Random(_) => bad[rng.gen_range(0..bad.len())].clone(),
        };
        let e = target.entries();
        let positions: Vec<usize> = (0..e.len() - 1).filter(|&j| e[j] > 2 * e[j + 1]).collect();
        let j = match order {
            RewriteOrder::Innermost => positions[positions.len() - 1],
            RewriteOrder::Outermost => positions[0],
            RewriteOrder::Random(_) => positions[rng.gen_range(0..positions.len())],
        };
        cur.remove(&target);
        let (r, s) = (e[j], e[j + 1]);
        for m in r.div_ceil(2)..r - s {
            if !binom_odd(m as i64 - s as i64 - 1, 2 * m as i64 - r as i64) {
                continue;
            }
            let mut v = e[..j].to_vec();
            v.push(r + s - m);
            v.push(m);
            v.extend_from_slice(&e[j + 2..]);
            let seq = Seq::from_vec_unchecked(v);
            if !cur.remove(&seq) {
                cur.insert(seq);
            }
        }
    }
}

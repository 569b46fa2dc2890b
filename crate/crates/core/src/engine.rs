//! The Dyer-Lashof engine at p = 2: Adem normalization, Cartan formulas,
//! powers and the coproduct, in either a π₀ context `H_*QS^{-k}` or a free
//! context `H_*QX` over a declared base space.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::element::{Atom, Element, Monomial, Root, Tensor};
use crate::error::{Error, Result};
use crate::f2::toggle;
use crate::pi0::Pi0Spec;
use crate::scalar::{binom_odd, Prime};
use crate::seq::Seq;
use crate::space::{BaseMonomial, SpacePresentation};

#[derive(Debug, Clone)]
pub enum Context {
    /// `H_*QS^{-k}` with its π₀ data.
    Pi0(Pi0Spec),
    /// `H_*QX` for a connected base `X`.
    Space(Arc<SpacePresentation>),
}

type TotalCache = HashMap<Vec<i64>, Vec<Element>>;

pub struct Engine {
    ctx: Context,
    q_cache: Mutex<HashMap<(u32, Atom), Element>>,
    gl_cache: Mutex<TotalCache>,
    psi_cache: Mutex<HashMap<Atom, Arc<Tensor>>>,
    pub(crate) sq_cache: Mutex<HashMap<(u32, Atom), Element>>,
    pub(crate) basis_cache: Mutex<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("ctx", &self.ctx).finish()
    }
}

impl Engine {
    pub fn new(ctx: Context) -> Self {
        Engine {
            ctx,
            q_cache: Mutex::new(HashMap::new()),
            gl_cache: Mutex::new(HashMap::new()),
            psi_cache: Mutex::new(HashMap::new()),
            sq_cache: Mutex::new(HashMap::new()),
            basis_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Engine for `H_*QS^{-k}` from the built-in π₀ table.
    pub fn sphere(k: u32) -> Result<Self> {
        Ok(Engine::new(Context::Pi0(Pi0Spec::builtin(k)?)))
    }

    pub fn free(space: SpacePresentation) -> Self {
        Engine::new(Context::Space(Arc::new(space)))
    }

    /// Fails unless `p = 2`; the engine has no odd-primary relations.
    pub fn with_prime(ctx: Context, p: Prime) -> Result<Self> {
        p.require_two()?;
        Ok(Engine::new(ctx))
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn pi0(&self) -> Option<&Pi0Spec> {
        match &self.ctx {
            Context::Pi0(p) => Some(p),
            Context::Space(_) => None,
        }
    }

    pub fn space(&self) -> Option<&SpacePresentation> {
        match &self.ctx {
            Context::Space(s) => Some(s),
            Context::Pi0(_) => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.pi0().map_or(0, Pi0Spec::rank)
    }

    // ---- constructors ----

    pub fn one(&self) -> Element {
        Element::from_monomial(Monomial::unit(self.rank()))
    }

    pub fn group_like(&self, c: &[i64]) -> Element {
        Element::from_monomial(Monomial::group_like(self.reduce_component(c)))
    }

    pub fn reduce_component(&self, c: &[i64]) -> Vec<i64> {
        match &self.ctx {
            Context::Pi0(p) => p.reduce(c),
            Context::Space(_) => Vec::new(),
        }
    }

    /// The element `Q^I` applied to a root, normalized.
    pub fn root_element(&self, root: &Root) -> Result<Element> {
        match root {
            Root::Pi0(j) => {
                let p = self
                    .pi0()
                    .ok_or_else(|| Error::Context("π₀ class in a connected context".into()))?;
                Ok(self.group_like(&p.generator(*j as usize)))
            }
            Root::Base(m) => {
                if m.is_unit() {
                    return Ok(self.one());
                }
                Ok(Element::from_monomial(Monomial::atom(
                    Atom::new(Seq::empty(), root.clone()),
                    self.rank(),
                )))
            }
        }
    }

    pub fn base_class(&self, m: &BaseMonomial) -> Result<Element> {
        self.root_element(&Root::Base(m.clone()))
    }

    pub fn atom_element(&self, atom: &Atom) -> Element {
        Element::from_monomial(Monomial::atom(atom.clone(), self.rank()))
    }

    /// `Q^I` applied to a root, normalized.
    pub fn q_seq_root(&self, ops: &Seq, root: &Root) -> Result<Element> {
        let x = self.root_element(root)?;
        self.q_seq(ops, &x)
    }

    // ---- products ----

    fn height(&self, atom: &Atom) -> Option<u64> {
        match (&self.ctx, atom.root()) {
            (Context::Pi0(p), Root::Pi0(j)) => p.order_exp(*j as usize).map(|d| 1u64 << d),
            _ => None,
        }
    }

    /// Applies truncation and reduces the component; `None` if zero.
    fn finish(&self, m: Monomial) -> Option<Monomial> {
        for (a, e) in m.factors() {
            if let Some(h) = self.height(a) {
                if *e as u64 >= h {
                    return None;
                }
            }
        }
        let c = self.reduce_component(m.component());
        Some(m.with_component(c))
    }

    pub fn mul_monomial(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        self.finish(a.raw_mul(b))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for a in x {
            for b in y {
                if let Some(m) = self.mul_monomial(a, b) {
                    out.add_monomial(m);
                }
            }
        }
        out
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    fn frobenius_monomial(&self, m: &Monomial, t: u32) -> Option<Monomial> {
        let f = 1u32 << t;
        let factors = m.factors().iter().map(|(a, e)| (a.clone(), e * f)).collect();
        let c = m.component().iter().map(|x| x * f as i64).collect();
        self.finish(Monomial::from_parts(factors, c))
    }

    /// `x^{2^t}` via the Frobenius: squaring is additive mod 2.
    pub fn frobenius(&self, x: &Element, t: u32) -> Element {
        x.terms()
            .filter_map(|m| self.frobenius_monomial(m, t))
            .collect()
    }

    pub fn square(&self, x: &Element) -> Element {
        self.frobenius(x, 1)
    }

    /// `x^{2^t}` by repeated Cartan multiplication (no Frobenius shortcut).
    pub fn power_by_multiplication(&self, x: &Element, t: u32) -> Element {
        let mut acc = x.clone();
        for _ in 0..t {
            acc = self.mul(&acc, &acc);
        }
        acc
    }

    /// `x^n` by repeated multiplication.
    pub fn pow(&self, x: &Element, n: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `e^{2^t}`; for a single atom `Q^I ξ` also checks the closed form
    /// `Q^{2^t I} ξ^{2^t}`.
    pub fn power(&self, x: &Element, t: u32) -> Result<Element> {
        let direct = self.power_by_multiplication(x, t);
        if x.len() == 1 {
            let m = x.trailing().unwrap();
            if m.factors().len() == 1 && m.factors()[0].1 == 1 {
                let atom = &m.factors()[0].0;
                let closed = self.power_closed_form(atom, t)?;
                let closed = self.mul(&closed, &self.group_like(&scale(m.component(), 1 << t)));
                if closed != direct {
                    return Err(Error::Inconsistency(format!(
                        "power law fails for an atom of dimension {}",
                        atom.dim()
                    )));
                }
            }
        }
        Ok(direct)
    }

    /// `Q^{2^t I}` applied to `ξ^{2^t}` for an atom `Q^I ξ`.
    pub fn power_closed_form(&self, atom: &Atom, t: u32) -> Result<Element> {
        let root = self.root_element(atom.root())?;
        let rt = self.power_by_multiplication(&root, t);
        self.q_seq(&atom.ops().doubled(t), &rt)
    }

    // ---- operations ----

    /// `Q^i` of an atom, normalized to admissible form.
    pub fn q_atom(&self, i: u32, atom: &Atom) -> Result<Element> {
        if let Some(v) = self.q_cache.lock().get(&(i, atom.clone())) {
            return Ok(v.clone());
        }
        let v = self.q_atom_uncached(i, atom)?;
        self.q_cache.lock().insert((i, atom.clone()), v.clone());
        Ok(v)
    }

    fn q_atom_uncached(&self, i: u32, atom: &Atom) -> Result<Element> {
        let d = atom.dim();
        if i < d {
            return Ok(Element::zero());
        }
        if i == d {
            return Ok(self.square(&self.atom_element(atom)));
        }
        let ops = atom.ops();
        let first = match ops.first() {
            None => {
                let a = Atom::new(Seq::from_vec_unchecked(vec![i]), atom.root().clone());
                return Ok(self.atom_element(&a));
            }
            Some(f) => f,
        };
        if i <= 2 * first {
            return Ok(self.atom_element(&Atom::new(ops.prepend(i), atom.root().clone())));
        }
        // Adem: Q^r Q^s = sum_m C(m-s-1, 2m-r) Q^{r+s-m} Q^m for r > 2s
        let (r, s) = (i, first);
        let tail = ops.tail();
        let inner = if tail.is_empty() {
            self.root_element(atom.root())?
        } else {
            self.atom_element(&Atom::new(tail, atom.root().clone()))
        };
        let mut out = Element::zero();
        for m in r.div_ceil(2)..r - s {
            if !binom_odd(m as i64 - s as i64 - 1, 2 * m as i64 - r as i64) {
                continue;
            }
            let qm = self.q_apply(m, &inner)?;
            if qm.is_zero() {
                continue;
            }
            out.add_assign(&self.q_apply(r + s - m, &qm)?);
        }
        Ok(out)
    }

    /// `Q^0 .. Q^n` of the group-like class `[c]`.
    pub fn q_total_group_like(&self, c: &[i64], n: u32) -> Result<Vec<Element>> {
        let c = self.reduce_component(c);
        if let Some(v) = self.gl_cache.lock().get(&c) {
            if v.len() > n as usize {
                return Ok(v[..=n as usize].to_vec());
            }
        }
        let v = self.q_total_group_like_uncached(&c, n)?;
        self.gl_cache.lock().insert(c, v.clone());
        Ok(v)
    }

    fn q_total_group_like_uncached(&self, c: &[i64], n: u32) -> Result<Vec<Element>> {
        let len = n as usize + 1;
        let mut acc = unit_series(self.one(), len);
        let Some(p) = self.pi0() else {
            return Ok(acc);
        };
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            let mut gen = Vec::with_capacity(len);
            gen.push(self.group_like(&scale(&p.generator(j), 2)));
            for a in 1..len {
                let atom = Atom::new(Seq::from_vec_unchecked(vec![a as u32]), Root::Pi0(j as u16));
                gen.push(self.atom_element(&atom));
            }
            let pw = self.series_pow(&gen, cj.unsigned_abs())?;
            let factor = if cj < 0 { self.series_inverse(&pw) } else { pw };
            acc = self.convolve(&acc, &factor);
        }
        Ok(acc)
    }

    pub(crate) fn convolve(&self, x: &[Element], y: &[Element]) -> Vec<Element> {
        let len = x.len().min(y.len());
        let mut out = vec![Element::zero(); len];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate().take(len - a) {
                if yb.is_zero() {
                    continue;
                }
                out[a + b].add_assign(&self.mul(xa, yb));
            }
        }
        out
    }

    /// Total series raised to `n`, by Frobenius on the binary digits.
    fn series_pow(&self, s: &[Element], n: u64) -> Result<Vec<Element>> {
        let len = s.len();
        let mut acc = unit_series(self.one(), len);
        let mut bit = 0u32;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                let step = 1usize
                    .checked_shl(bit)
                    .ok_or_else(|| Error::Overflow("exponent".into()))?;
                let mut v = vec![Element::zero(); len];
                for (a, x) in s.iter().enumerate() {
                    let idx = a.saturating_mul(step);
                    if idx >= len {
                        break;
                    }
                    v[idx] = self.frobenius(x, bit);
                }
                acc = self.convolve(&acc, &v);
            }
            n >>= 1;
            bit += 1;
        }
        Ok(acc)
    }

    /// Inverse of a series whose constant term is group-like.
    fn series_inverse(&self, s: &[Element]) -> Vec<Element> {
        let len = s.len();
        let c0 = s[0].trailing().expect("constant term").component().to_vec();
        let inv0 = self.group_like(&c0.iter().map(|x| -x).collect::<Vec<_>>());
        let mut u = vec![Element::zero(); len];
        u[0] = inv0.clone();
        for i in 1..len {
            let mut acc = Element::zero();
            for a in 1..=i {
                if s[a].is_zero() || u[i - a].is_zero() {
                    continue;
                }
                acc.add_assign(&self.mul(&s[a], &u[i - a]));
            }
            u[i] = self.mul(&inv0, &acc);
        }
        u
    }

    /// `Q^0 .. Q^n` of `atom^e`.
    fn q_total_power(&self, atom: &Atom, e: u32, n: u32) -> Result<Vec<Element>> {
        let len = n as usize + 1;
        let mut acc = unit_series(self.one(), len);
        let mut bit = 0u32;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                let step = 1u32 << bit;
                let mut v = vec![Element::zero(); len];
                let mut a = 0u32;
                while a * step <= n {
                    let q = self.q_atom(a, atom)?;
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

    /// `Q^0 .. Q^n` of a monomial, by the Cartan formula.
    pub fn q_total_monomial(&self, m: &Monomial, n: u32) -> Result<Vec<Element>> {
        let mut acc = if m.component().iter().all(|&x| x == 0) {
            let mut v = unit_series(self.one(), n as usize + 1);
            // Q^0 [0] = [0]
            v[0] = self.one();
            v
        } else {
            self.q_total_group_like(m.component(), n)?
        };
        for (a, e) in m.factors() {
            let v = self.q_total_power(a, *e, n)?;
            acc = self.convolve(&acc, &v);
        }
        Ok(acc)
    }

    pub fn q_monomial(&self, i: u32, m: &Monomial) -> Result<Element> {
        if i < m.dim() {
            return Ok(Element::zero());
        }
        if m.factors().len() == 1 && m.factors()[0].1 == 1 && m.component().iter().all(|&x| x == 0)
        {
            return self.q_atom(i, &m.factors()[0].0);
        }
        let mut v = self.q_total_monomial(m, i)?;
        Ok(v.pop().unwrap_or_default())
    }

    /// `Q^i x`, normalized.
    pub fn q_apply(&self, i: u32, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            out.add_assign(&self.q_monomial(i, m)?);
        }
        Ok(out)
    }

    /// `Q^I x` with the last entry of `I` applied first.
    pub fn q_seq(&self, ops: &Seq, x: &Element) -> Result<Element> {
        let mut acc = x.clone();
        for &i in ops.entries().iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = self.q_apply(i, &acc)?;
        }
        Ok(acc)
    }

    /// Same as `q_seq` on raw signed indices; negative indices are rejected.
    pub fn q_seq_signed(&self, ops: &[i64], x: &Element) -> Result<Element> {
        let mut acc = x.clone();
        for &i in ops.iter().rev() {
            let i = u32::try_from(i)
                .map_err(|_| Error::InvalidArgument(format!("negative operation index {i}")))?;
            acc = self.q_apply(i, &acc)?;
        }
        Ok(acc)
    }

    /// Rewrites an element given by possibly inadmissible atoms into normal
    /// form by re-applying every atom's operations from its root.
    pub fn normalize(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for m in x {
            let mut acc = self.group_like(m.component());
            for (a, e) in m.factors() {
                let base = self.q_seq_root(a.ops(), a.root())?;
                acc = self.mul(&acc, &self.pow(&base, *e));
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// True when every atom is admissible with positive relative excess and
    /// every exponent respects the truncation.
    pub fn is_normal(&self, x: &Element) -> bool {
        x.terms().all(|m| {
            self.finish(m.clone()).as_ref() == Some(m)
                && m.factors().iter().all(|(a, _)| {
                    a.ops().is_admissible()
                        && a.ops().excess(a.root().dim()).is_positive()
                        && !(a.ops().is_empty() && matches!(a.root(), Root::Pi0(_)))
                })
        })
    }

    // ---- coproduct ----

    pub fn counit(&self, m: &Monomial) -> bool {
        m.is_group_like()
    }

    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (a, b) in x {
            for (c, d) in y {
                if let (Some(l), Some(r)) = (self.mul_monomial(a, c), self.mul_monomial(b, d)) {
                    toggle(&mut out, (l, r));
                }
            }
        }
        out
    }

    fn root_coproduct(&self, root: &Root) -> Result<Tensor> {
        match root {
            Root::Pi0(_) => {
                let g = self.root_element(root)?.trailing().unwrap().clone();
                Ok(Tensor::from([(g.clone(), g)]))
            }
            Root::Base(m) => {
                let sp = self.space().expect("base root in a space context");
                let mut out = Tensor::new();
                for (a, b) in sp.coproduct_monomial(m)? {
                    let l = self.base_class(&a)?.trailing().unwrap().clone();
                    let r = self.base_class(&b)?.trailing().unwrap().clone();
                    toggle(&mut out, (l, r));
                }
                Ok(out)
            }
        }
    }

    /// `ψ` of an atom: `ψQ^n y = Σ_{a+b=n} Q^a y' ⊗ Q^b y''`.
    pub fn atom_coproduct(&self, atom: &Atom) -> Result<Arc<Tensor>> {
        if let Some(t) = self.psi_cache.lock().get(atom) {
            return Ok(t.clone());
        }
        let mut t = self.root_coproduct(atom.root())?;
        for &n in atom.ops().entries().iter().rev() {
            t = self.tensor_q(n, &t)?;
        }
        let t = Arc::new(t);
        self.psi_cache.lock().insert(atom.clone(), t.clone());
        Ok(t)
    }

    /// `Q^n` on a tensor via the Cartan coproduct rule.
    pub fn tensor_q(&self, n: u32, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::new();
        for (y1, y2) in t {
            let l = self.q_total_monomial(y1, n)?;
            let r = self.q_total_monomial(y2, n)?;
            for a in 0..=n as usize {
                if l[a].is_zero() || r[n as usize - a].is_zero() {
                    continue;
                }
                for p in &l[a] {
                    for q in &r[n as usize - a] {
                        toggle(&mut out, (p.clone(), q.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<Tensor> {
        let g = Monomial::group_like(m.component().to_vec());
        let mut acc = Tensor::from([(g.clone(), g)]);
        for (a, e) in m.factors() {
            let psi = self.atom_coproduct(a)?;
            for _ in 0..*e {
                acc = self.tensor_mul(&acc, &psi);
            }
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &Element) -> Result<Tensor> {
        let mut out = Tensor::new();
        for m in x {
            for t in self.coproduct_monomial(m)? {
                toggle(&mut out, t);
            }
        }
        Ok(out)
    }

    /// The π₀-component a monomial lives in: its group-like factor plus
    /// `e * 2^{l(I)} γ_j` for each factor `(Q^I[γ_j])^e`.
    pub fn label(&self, m: &Monomial) -> Vec<i64> {
        let mut c = m.component().to_vec();
        for (a, e) in m.factors() {
            if let Root::Pi0(j) = a.root() {
                c[*j as usize] += (*e as i64) << a.length();
            }
        }
        self.reduce_component(&c)
    }

    /// `ψx - x ⊗ [c] - [c] ⊗ x` summed over monomials, `[c]` the component
    /// of each monomial.
    pub fn reduced_coproduct(&self, x: &Element) -> Result<Tensor> {
        let mut out = Tensor::new();
        for m in x {
            let g = Monomial::group_like(self.label(m));
            for t in self.coproduct_monomial(m)? {
                toggle(&mut out, t);
            }
            toggle(&mut out, (m.clone(), g.clone()));
            toggle(&mut out, (g, m.clone()));
        }
        Ok(out)
    }

    /// Sorted rendering-friendly copy of a tensor.
    pub fn sorted_tensor(t: &Tensor) -> Vec<(Monomial, Monomial)> {
        let mut v: Vec<_> = t.iter().cloned().collect();
        v.sort();
        v
    }
}

pub(crate) fn unit_series(one: Element, len: usize) -> Vec<Element> {
    let mut v = vec![Element::zero(); len];
    v[0] = one;
    v
}

fn scale(c: &[i64], f: i64) -> Vec<i64> {
    c.iter().map(|x| x * f).collect()
}

#[cfg(test)]
mod tests;

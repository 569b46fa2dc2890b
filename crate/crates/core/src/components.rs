//! Component calculus on `H_*QS^{-k}`: classes `[γ]`, translation,
//! `[γ_J]` classes and their truncation, homology suspension and maps of
//! infinite loop spaces.

use std::collections::HashMap;

use crate::element::{Element, Monomial, Root};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::expr::render;
use crate::seq::Seq;
use crate::space::BaseMonomial;

fn pi0_of(engine: &Engine) -> Result<&crate::pi0::Pi0Spec> {
    engine
        .pi0()
        .ok_or_else(|| Error::Context("operation needs a π₀ context".into()))
}

/// The 0-dimensional class `[g]`.
pub fn hclass(engine: &Engine, g: &[i64]) -> Result<Element> {
    pi0_of(engine)?;
    Ok(engine.group_like(g))
}

/// Multiplication by `[c]`.
pub fn translate(engine: &Engine, x: &Element, c: &[i64]) -> Element {
    engine.mul(x, &engine.group_like(c))
}

/// The component label of a homogeneous class.
pub fn component(engine: &Engine, x: &Element) -> Option<Vec<i64>> {
    let mut it = x.terms().map(|m| engine.label(m));
    let c = it.next()?;
    it.all(|d| d == c).then_some(c)
}

/// `Q^I[c]` for an arbitrary π₀ element `c`, rewritten over atoms on the
/// declared generators (inverse classes eliminated through
/// `Q^i([g] * [-g]) = Q^i[0]`).
pub fn eliminate_inverses(engine: &Engine, ops: &Seq, c: &[i64]) -> Result<Element> {
    let x = hclass(engine, c)?;
    engine.q_seq(ops, &x)
}

/// Exponent `d` of the order `2^d` of a π₀ element; `None` if infinite.
pub fn order_exp(engine: &Engine, g: &[i64]) -> Result<Option<u32>> {
    let p = pi0_of(engine)?;
    let g = p.reduce(g);
    let mut best = 0u32;
    for (j, &x) in g.iter().enumerate() {
        if x == 0 {
            continue;
        }
        match p.order_exp(j) {
            None => return Ok(None),
            Some(d) => best = best.max(d - (x.trailing_zeros()).min(d)),
        }
    }
    Ok(Some(best))
}

/// `[γ_J] = Q^J[γ] * [-2^{l(J)} γ]`, a class of the base-point component.
pub fn gamma_class(engine: &Engine, gamma: &[i64], j: &Seq) -> Result<Element> {
    if j.is_empty() {
        return Err(Error::InvalidArgument("J must be nonempty".into()));
    }
    if !j.is_admissible() {
        return Err(Error::MalformedSequence(format!("{j} is not admissible")));
    }
    let d = order_exp(engine, gamma)?
        .ok_or_else(|| Error::InvalidArgument("γ must have finite order".into()))?;
    let l = j.len() as u32;
    if l > d {
        return Err(Error::InvalidArgument(format!(
            "l(J) = {l} exceeds d = {d} for γ of order 2^{d}"
        )));
    }
    let q = engine.q_seq(j, &hclass(engine, gamma)?)?;
    if l == d {
        return Ok(q);
    }
    let shift: Vec<i64> = gamma.iter().map(|x| -(x << l)).collect();
    Ok(translate(engine, &q, &shift))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationTrace {
    pub steps: Vec<String>,
    pub dim: u32,
    /// Whether `(Q^I[γ_J])^{2^d}` vanished by direct multiplication.
    pub direct_zero: bool,
    /// Whether the power-law route `Q^{2^d I}(Q^{2^d J}[2^d γ] * ...)` vanished.
    pub power_law_zero: bool,
}

/// Computes `(Q^I[γ_J])^{2^d}` in two ways and records the reduction.
/// Fails with an inconsistency if either route is nonzero.
pub fn verify_truncation(
    engine: &Engine,
    gamma: &[i64],
    i: &Seq,
    j: &Seq,
) -> Result<TruncationTrace> {
    if !i.is_admissible() {
        return Err(Error::MalformedSequence(format!("{i} is not admissible")));
    }
    let d = order_exp(engine, gamma)?
        .ok_or_else(|| Error::InvalidArgument("γ must have finite order".into()))?;
    let p = pi0_of(engine)?;
    let g = gamma_class(engine, gamma, j)?;
    let y = engine.q_seq(i, &g)?;
    let mut steps = vec![
        format!("[γ_J] = {}", render(engine, &g)?),
        format!("Q^I[γ_J] = {}", render(engine, &y)?),
    ];
    let direct = engine.power_by_multiplication(&y, d);
    steps.push(format!("(Q^I[γ_J])^{} by repeated multiplication = {}", 1u64 << d, render(engine, &direct)?));
    let f = 1i64 << d;
    let l = j.len() as u32;
    let gd: Vec<i64> = gamma.iter().map(|x| x * f).collect();
    steps.push(format!("2^d γ = [{}]", p.render_element(&gd)));
    let inner = engine.q_seq(&j.doubled(d), &engine.group_like(&gd))?;
    steps.push(format!("Q^(2^d J)[2^d γ] = {}", render(engine, &inner)?));
    let shift: Vec<i64> = gamma.iter().map(|x| -(x << (l + d))).collect();
    let inner = translate(engine, &inner, &shift);
    let closed = engine.q_seq(&i.doubled(d), &inner)?;
    steps.push(format!("Q^(2^d I)(...) = {}", render(engine, &closed)?));
    let trace = TruncationTrace {
        steps,
        dim: y.dim().unwrap_or(0),
        direct_zero: direct.is_zero(),
        power_law_zero: closed.is_zero(),
    };
    if !trace.direct_zero || !trace.power_law_zero {
        return Err(Error::Inconsistency(format!(
            "(Q^{i}[γ_{j}])^{} is nonzero",
            1u64 << d
        )));
    }
    Ok(trace)
}

/// Images of generators under a map of infinite loop spaces, or under the
/// homology suspension.
#[derive(Debug, Clone, Default)]
pub struct GeneratorImages {
    /// Image of `[γ_j]` (for a map) or of `σ_*[γ_j]` (for a suspension).
    pub pi0: Vec<Element>,
    pub base: HashMap<BaseMonomial, Element>,
}

fn root_image(images: &GeneratorImages, root: &Root) -> Result<Element> {
    match root {
        Root::Pi0(j) => images
            .pi0
            .get(*j as usize)
            .cloned()
            .ok_or_else(|| Error::MissingImage(format!("π₀ generator {j}"))),
        Root::Base(m) => images
            .base
            .get(m)
            .cloned()
            .ok_or_else(|| Error::MissingImage(format!("base class of dimension {}", m.dim()))),
    }
}

/// `f_*` for an infinite loop map: multiplicative, commutes with every
/// `Q^i`, and `[c] ↦ Π [f γ_j]^{c_j}`.
pub fn pushforward(src: &Engine, tgt: &Engine, images: &GeneratorImages, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for m in x {
        let mut acc = tgt.one();
        for (j, &cj) in m.component().iter().enumerate() {
            if cj == 0 {
                continue;
            }
            let g = root_image(images, &Root::Pi0(j as u16))?;
            let gl = g
                .trailing()
                .filter(|t| g.len() == 1 && t.is_group_like())
                .ok_or_else(|| Error::InvalidArgument("π₀ image must be group-like".into()))?;
            let c: Vec<i64> = gl.component().iter().map(|x| x * cj).collect();
            acc = tgt.mul(&acc, &tgt.group_like(&c));
        }
        for (a, e) in m.factors() {
            let r = root_image(images, a.root())?;
            let v = tgt.q_seq(a.ops(), &r)?;
            acc = tgt.mul(&acc, &tgt.pow(&v, *e));
        }
        out.add_assign(&acc);
    }
    let _ = src;
    Ok(out)
}

/// The homology suspension `σ_*`: kills products of two positive-dimensional
/// classes, commutes with `Q^I`, and sends `[c]` to `Σ c_j σ_*[γ_j]`.
pub fn suspend(src: &Engine, tgt: &Engine, images: &GeneratorImages, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for m in x {
        out.add_assign(&suspend_monomial(src, tgt, images, m)?);
    }
    Ok(out)
}

fn suspend_monomial(
    _src: &Engine,
    tgt: &Engine,
    images: &GeneratorImages,
    m: &Monomial,
) -> Result<Element> {
    match m.weight() {
        0 => {
            let mut out = Element::zero();
            for (j, &cj) in m.component().iter().enumerate() {
                if cj.rem_euclid(2) == 1 {
                    out.add_assign(&root_image(images, &Root::Pi0(j as u16))?);
                }
            }
            Ok(out)
        }
        1 => {
            let a = &m.factors()[0].0;
            let r = root_image(images, a.root())?;
            tgt.q_seq(a.ops(), &r)
        }
        _ => Ok(Element::zero()),
    }
}

/// `σ_*^t` through a chain of contexts.
pub fn suspend_iter(
    chain: &[(&Engine, &GeneratorImages)],
    last: &Engine,
    x: &Element,
) -> Result<Element> {
    let mut cur = x.clone();
    for (n, (src, images)) in chain.iter().enumerate() {
        let tgt = chain.get(n + 1).map_or(last, |c| c.0);
        cur = suspend(src, tgt, images, &cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{evaluate, x_class};
    use crate::space::SpacePresentation;

    #[test]
    fn hurewicz_classes() {
        let e = Engine::sphere(3).unwrap();
        let a = hclass(&e, &[3]).unwrap();
        let b = hclass(&e, &[7]).unwrap();
        assert_eq!(e.mul(&a, &b), hclass(&e, &[2]).unwrap());
        assert_eq!(hclass(&e, &[8]).unwrap(), e.one());
        let x = evaluate(&e, "Q[2][nu]").unwrap();
        let t = translate(&e, &x, &[5]);
        assert_eq!(translate(&e, &t, &[-5]), x);
        assert_eq!(component(&e, &t), Some(vec![7]));
    }

    #[test]
    fn inverse_elimination() {
        let e = Engine::sphere(0).unwrap();
        let s = Seq::new(vec![1]).unwrap();
        assert_eq!(
            eliminate_inverses(&e, &s, &[-1]).unwrap(),
            evaluate(&e, "Q[1][1] * [-4]").unwrap()
        );
        assert!(eliminate_inverses(&e, &Seq::new(vec![3, 2]).unwrap(), &[0]).unwrap().is_zero());
    }

    #[test]
    fn gamma_classes() {
        let e = Engine::sphere(1).unwrap();
        let j = Seq::new(vec![3]).unwrap();
        assert_eq!(gamma_class(&e, &[1], &j).unwrap(), evaluate(&e, "Q[3][eta]").unwrap());
        assert!(gamma_class(&e, &[1], &Seq::new(vec![2, 1]).unwrap()).is_err());
        let k3 = Engine::sphere(3).unwrap();
        let g = gamma_class(&k3, &[2], &Seq::new(vec![2]).unwrap()).unwrap();
        assert_eq!(component(&k3, &g), Some(vec![0]));
        assert_eq!(order_exp(&k3, &[2]).unwrap(), Some(2));
    }

    #[test]
    fn truncation_small_cases() {
        let e = Engine::sphere(3).unwrap();
        let t = verify_truncation(&e, &[1], &Seq::new(vec![2, 1]).unwrap(), &Seq::new(vec![1]).unwrap())
            .unwrap();
        assert!(t.direct_zero && t.power_law_zero);
        // the fourth power survives for J = (1)
        let g = gamma_class(&e, &[1], &Seq::new(vec![1]).unwrap()).unwrap();
        assert!(!e.pow(&g, 4).is_zero());
    }

    #[test]
    fn eta_pushforward_of_x() {
        let s0 = Engine::sphere(0).unwrap();
        let s1 = Engine::sphere(1).unwrap();
        let images = GeneratorImages {
            pi0: vec![s1.group_like(&[1])],
            base: HashMap::new(),
        };
        for i in 1..=6 {
            let v = pushforward(&s0, &s1, &images, &x_class(&s0, i)).unwrap();
            assert_eq!(v, evaluate(&s1, &format!("Q[{i}][eta]")).unwrap());
        }
    }

    #[test]
    fn suspension_of_x() {
        let s0 = Engine::sphere(0).unwrap();
        let circle = SpacePresentation::parse("name S1\nbottom 1\ngen g1 dim=1 rel=ext primitive\nsqbound 1\n").unwrap();
        let t = Engine::free(circle);
        let g1 = evaluate(&t, "g(1)").unwrap();
        let images = GeneratorImages {
            pi0: vec![g1],
            base: HashMap::new(),
        };
        for i in 1..=5 {
            let v = suspend(&s0, &t, &images, &x_class(&s0, i)).unwrap();
            assert_eq!(v, evaluate(&t, &format!("Q[{i}]g(1)")).unwrap());
        }
        let prod = s0.mul(&x_class(&s0, 1), &x_class(&s0, 2));
        assert!(suspend(&s0, &t, &images, &prod).unwrap().is_zero());
    }
}

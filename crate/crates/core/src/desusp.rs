//! Primitives of `H_*QBU` under the loop sum `⊙`, their decomposition into
//! the classes `Q^I p_{i,J}` and `Q^K p_L`, and the exterior generators of
//! `H_*QΣ^{-1}BU` they desuspend to.
//!
//! `p_L` (`4 ∤ L`) and `p_{i,J} = Q^{2i+1} c_J` (`4 | J`) are fixed as the
//! unique primitive with the given indecomposable part, reduced against the
//! squares of primitives of half the dimension.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::atlas::AtlasSpace;
use crate::element::{Element, Monomial};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::linalg::{xor, Echelon, SparseVec};
use crate::seq::Seq;
use crate::space::BaseMonomial;

/// `c_J = c_{2j_1} ⋯ c_{2j_t}` in `H_*BU`, entries even and non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CJ(Vec<u32>);

impl CJ {
    pub fn new(mut entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&e| e == 0 || e % 2 == 1) {
            return Err(Error::InvalidArgument(format!(
                "c_J needs nonempty positive even entries, got {entries:?}"
            )));
        }
        entries.sort_unstable();
        Ok(CJ(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `4 | J`.
    pub fn divisible_by_4(&self) -> bool {
        self.0.iter().all(|e| e % 4 == 0)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    fn to_base(&self, engine: &Engine) -> Result<BaseMonomial> {
        let sp = engine.space().expect("BU context");
        let names: Vec<String> = self.0.iter().map(|e| format!("c{e}")).collect();
        sp.parse_base_monomial(&names.join("*"))?
            .ok_or_else(|| Error::InvalidArgument(format!("{self} is zero")))
    }

    /// Every `c_J` of dimension exactly `d`.
    pub fn of_dim(d: u32) -> Vec<CJ> {
        fn grow(min: u32, rem: u32, acc: &mut Vec<u32>, out: &mut Vec<CJ>) {
            if rem == 0 {
                out.push(CJ(acc.clone()));
                return;
            }
            let mut e = min;
            while e <= rem {
                acc.push(e);
                grow(e, rem - e, acc, out);
                acc.pop();
                e += 2;
            }
        }
        let mut out = Vec::new();
        if d > 0 && d.is_multiple_of(2) {
            grow(2, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for CJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// A named `⊙`-primitive of `H_*QBU`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PGen {
    /// `p_{i,J}`, `4 | J`, leading term `Q^{2i+1} c_J`.
    IJ(u32, CJ),
    /// `p_L`, `4 ∤ L`, leading term `c_L`.
    L(CJ),
}

impl PGen {
    pub fn dim(&self) -> u32 {
        match self {
            PGen::IJ(i, j) => 2 * i + 1 + j.dim(),
            PGen::L(l) => l.dim(),
        }
    }

    /// Degree of the desuspended generator `c^{-1}`.
    pub fn desusp_degree(&self) -> u32 {
        self.dim() - 1
    }
}

impl fmt::Display for PGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PGen::IJ(i, j) => write!(f, "p[{i};{j}]"),
            PGen::L(l) => write!(f, "p[{l}]"),
        }
    }
}

impl std::str::FromStr for PGen {
    type Err = Error;

    /// Accepts the display forms `p[i;(j1,...)]` and `p[(l1,...)]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected p[i;(J)] or p[(L)], got `{s}`"));
        let inner = s.trim().strip_prefix("p[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let entries = |t: &str| -> Result<CJ> {
            let t = t.trim().trim_start_matches('(').trim_end_matches(')');
            let v = t
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            CJ::new(v)
        };
        match inner.split_once(';') {
            Some((i, j)) => {
                let i = i.trim().parse().map_err(|_| bad())?;
                let j = entries(j)?;
                if !j.divisible_by_4() {
                    return Err(Error::InvalidArgument(format!("p[i;J] needs 4 | J, got {j}")));
                }
                Ok(PGen::IJ(i, j))
            }
            None => {
                let l = entries(inner)?;
                if l.divisible_by_4() {
                    return Err(Error::InvalidArgument(format!("p[L] needs 4 not dividing L, got {l}")));
                }
                Ok(PGen::L(l))
            }
        }
    }
}

/// `Q^I` applied to a named primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub ops: Seq,
    pub gen: PGen,
}

impl Term {
    pub fn dim(&self) -> u32 {
        self.ops.dim() + self.gen.dim()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            write!(f, "{}", self.gen)
        } else {
            let v: Vec<String> = self.ops.entries().iter().map(u32::to_string).collect();
            write!(f, "Q[{}] {}", v.join(","), self.gen)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    /// `η` with the remaining decomposable part equal to `η^2`.
    pub square: Option<Box<Decomposition>>,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        if let Some(s) = &self.square {
            parts.push(format!("({s})^2"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct DimData {
    prims: Vec<Element>,
    /// Indecomposable coordinates of each primitive, eliminated with combinations.
    ind_pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    squares: Echelon,
}

/// Computations in `H_*QBU`.
pub struct Desusp {
    engine: Engine,
    dims: Mutex<HashMap<u32, Arc<DimData>>>,
    pgens: Mutex<HashMap<PGen, Element>>,
}

impl Default for Desusp {
    fn default() -> Self {
        Self::new()
    }
}

fn indecomposable_part(x: &Element) -> Element {
    x.terms()
        .filter(|m| m.factors().len() == 1 && m.factors()[0].1 == 1)
        .cloned()
        .collect()
}

fn frobenius_root(x: &Element) -> Option<Element> {
    let mut out = Element::zero();
    for m in x {
        if m.factors().iter().any(|(_, e)| e % 2 == 1) {
            return None;
        }
        let f = m.factors().iter().map(|(a, e)| (a.clone(), e / 2)).collect();
        out.add_monomial(Monomial::from_parts(f, m.component().to_vec()));
    }
    Some(out)
}

impl Desusp {
    pub fn new() -> Self {
        Desusp {
            engine: Engine::free((*AtlasSpace::BU.presentation()).clone()),
            dims: Mutex::new(HashMap::new()),
            pgens: Mutex::new(HashMap::new()),
        }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn c(&self, j: &CJ) -> Result<Element> {
        self.engine.base_class(&j.to_base(&self.engine)?)
    }

    /// `c_J ∈ ker r` by the closed form, checked against the square root
    /// evaluated structurally and as `Sq^{dim/2}_*`.
    pub fn ker_r(&self, j: &CJ) -> Result<bool> {
        let closed = !j.divisible_by_4();
        let c = self.c(j)?;
        let structural = self.engine.square_root(&c)?.is_zero();
        let by_sq = self.engine.square_root_by_sq(&c)?.is_zero();
        if closed != structural || closed != by_sq {
            return Err(Error::Inconsistency(format!(
                "ker r on c{j}: closed form {closed}, structural {structural}, Sq {by_sq}"
            )));
        }
        Ok(closed)
    }

    fn dim_data(&self, n: u32) -> Result<Arc<DimData>> {
        if let Some(d) = self.dims.lock().get(&n) {
            return Ok(d.clone());
        }
        let prims = self.engine.primitives(n)?;
        let mut ind_pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        for (k, p) in prims.iter().enumerate() {
            let mut v = self.engine.coordinates(&indecomposable_part(p))?;
            let mut combo = vec![k];
            while let Some(&lead) = v.first() {
                match ind_pivots.get(&lead) {
                    Some((row, c)) => {
                        v = xor(&v, row);
                        combo = xor(&combo, c);
                    }
                    None => break,
                }
            }
            if let Some(&lead) = v.first() {
                ind_pivots.insert(lead, (v, combo));
            }
        }
        let mut squares = Echelon::new();
        if n.is_multiple_of(2) {
            for p in self.engine.primitives(n / 2)? {
                squares.insert(&self.engine.coordinates(&self.engine.square(&p))?);
            }
        }
        let d = Arc::new(DimData { prims, ind_pivots, squares });
        self.dims.lock().insert(n, d.clone());
        Ok(d)
    }

    fn element_at(&self, n: u32, v: &[usize]) -> Element {
        let basis = self.engine.basis(n);
        v.iter().map(|&i| basis[i].clone()).collect()
    }

    /// The primitive whose indecomposable part is `ind`, reduced against
    /// squares of primitives.
    pub fn lift(&self, ind: &Element) -> Result<Element> {
        let Some(n) = ind.dim() else {
            return Ok(Element::zero());
        };
        let data = self.dim_data(n)?;
        let mut v = self.engine.coordinates(ind)?;
        let mut combo: SparseVec = Vec::new();
        while let Some(&lead) = v.first() {
            match data.ind_pivots.get(&lead) {
                Some((row, c)) => {
                    v = xor(&v, row);
                    combo = xor(&combo, c);
                }
                None => {
                    return Err(Error::InvalidArgument(
                        "no primitive with this indecomposable part".into(),
                    ))
                }
            }
        }
        let mut p = Element::zero();
        for k in combo {
            p.add_assign(&data.prims[k]);
        }
        let coords = data.squares.reduce_fully(&self.engine.coordinates(&p)?);
        Ok(self.element_at(n, &coords))
    }

    pub fn pgen(&self, g: &PGen) -> Result<Element> {
        if let Some(x) = self.pgens.lock().get(g) {
            return Ok(x.clone());
        }
        let lead = match g {
            PGen::L(l) => {
                if l.divisible_by_4() {
                    return Err(Error::InvalidArgument(format!("p_L needs 4 ∤ L, got {l}")));
                }
                self.c(l)?
            }
            PGen::IJ(i, j) => {
                if !j.divisible_by_4() || 2 * i < j.dim() {
                    return Err(Error::InvalidArgument(format!(
                        "p_(i,J) needs 4 | J and 2i+1 > dim J, got i={i}, J={j}"
                    )));
                }
                self.engine.q_apply(2 * i + 1, &self.c(j)?)?
            }
        };
        let p = self.lift(&lead)?;
        self.pgens.lock().insert(g.clone(), p.clone());
        Ok(p)
    }

    pub fn term(&self, t: &Term) -> Result<Element> {
        self.engine.q_seq(&t.ops, &self.pgen(&t.gen)?)
    }

    /// The generator set `Q^I p_{i,J}`, `Q^K p_L` landing in dimension `n`:
    /// `I` admissible with `excess(I) > 2i + dim J`, `K` admissible with
    /// `excess(K) > dim L - 1`.
    pub fn generator_terms(n: u32) -> Vec<Term> {
        let mut out = Vec::new();
        for jd in 1..=n {
            for j in CJ::of_dim(jd) {
                if j.divisible_by_4() {
                    let mut i = jd / 2;
                    while 2 * i + 1 + jd <= n {
                        let bound = (2 * i + jd) as i64;
                        for s in Seq::admissible_of_dim(n - 2 * i - 1 - jd) {
                            if s.excess(0).exceeds(bound) {
                                out.push(Term { ops: s, gen: PGen::IJ(i, j.clone()) });
                            }
                        }
                        i += 1;
                    }
                } else {
                    let bound = jd as i64 - 1;
                    for s in Seq::admissible_of_dim(n - jd) {
                        if s.excess(0).exceeds(bound) {
                            out.push(Term { ops: s, gen: PGen::L(j.clone()) });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Decomposes a `⊙`-primitive into `Σ Q^I p_{i,J} + Σ Q^K p_L + η^2`,
    /// recursively in `η`. Candidates are eliminated in order of decreasing
    /// excess, then increasing length.
    pub fn primitive_decompose(&self, xi: &Element) -> Result<Decomposition> {
        if xi.is_zero() {
            return Ok(Decomposition::default());
        }
        if !self.engine.is_primitive(xi)? {
            return Err(Error::InvalidArgument("input is not ⊙-primitive".into()));
        }
        let n = xi
            .dim()
            .ok_or_else(|| Error::InvalidArgument("inhomogeneous element".into()))?;
        let mut cands: Vec<(Term, Element)> = Vec::new();
        for t in Self::generator_terms(n) {
            let x = self.term(&t)?;
            if !indecomposable_part(&x).is_zero() {
                cands.push((t, x));
            }
        }
        cands.sort_by(|a, b| {
            let ea = a.0.ops.excess(0);
            let eb = b.0.ops.excess(0);
            eb.cmp(&ea).then(a.0.ops.len().cmp(&b.0.ops.len())).then(a.0.cmp(&b.0))
        });
        let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        for (k, (_, x)) in cands.iter().enumerate() {
            let mut v = self.engine.coordinates(&indecomposable_part(x))?;
            let mut combo = vec![k];
            while let Some(&lead) = v.first() {
                match pivots.get(&lead) {
                    Some((row, c)) => {
                        v = xor(&v, row);
                        combo = xor(&combo, c);
                    }
                    None => break,
                }
            }
            if let Some(&lead) = v.first() {
                pivots.insert(lead, (v, combo));
            }
        }
        let mut v = self.engine.coordinates(&indecomposable_part(xi))?;
        let mut combo: SparseVec = Vec::new();
        while let Some(&lead) = v.first() {
            let (row, c) = pivots.get(&lead).ok_or_else(|| {
                Error::Inconsistency(format!("indecomposable part of a primitive in dim {n} not reached"))
            })?;
            v = xor(&v, row);
            combo = xor(&combo, c);
        }
        let mut rest = xi.clone();
        let mut terms = Vec::new();
        for k in combo {
            rest.add_assign(&cands[k].1);
            terms.push(cands[k].0.clone());
        }
        terms.sort();
        let square = if rest.is_zero() {
            None
        } else {
            let eta = frobenius_root(&rest).ok_or_else(|| {
                Error::Inconsistency("decomposable primitive is not a square".into())
            })?;
            Some(Box::new(self.primitive_decompose(&eta)?))
        };
        Ok(Decomposition { terms, square })
    }

    pub fn reassemble(&self, d: &Decomposition) -> Result<Element> {
        let mut out = Element::zero();
        for t in &d.terms {
            out.add_assign(&self.term(t)?);
        }
        if let Some(s) = &d.square {
            out.add_assign(&self.engine.square(&self.reassemble(s)?));
        }
        Ok(out)
    }

    /// Number of exterior generators of `H_*QΣ^{-1}BU` in each degree
    /// `0..=up_to`, by the generator indexing and by the dimension of the
    /// primitives one degree up.
    pub fn generator_counts(&self, up_to: u32) -> Result<(Vec<u64>, Vec<u64>)> {
        let mut by_index = vec![0u64; up_to as usize + 1];
        let mut by_prims = vec![0u64; up_to as usize + 1];
        for m in 1..=up_to {
            by_index[m as usize] = Self::generator_terms(m + 1).len() as u64;
            by_prims[m as usize] = self.dim_data(m + 1)?.prims.len() as u64;
        }
        Ok((by_index, by_prims))
    }

    /// Checks that the generator terms of dimension `n` are primitive,
    /// linearly independent and span the primitives; returns the pairs of
    /// terms with equal images.
    pub fn check_generators(&self, n: u32) -> Result<Vec<(Term, Term)>> {
        let terms = Self::generator_terms(n);
        let mut seen: HashMap<Element, Term> = HashMap::new();
        let mut merges = Vec::new();
        let mut e = Echelon::new();
        for t in terms {
            let x = self.term(&t)?;
            if !self.engine.is_primitive(&x)? {
                return Err(Error::Inconsistency(format!("{t} is not primitive")));
            }
            if let Some(prev) = seen.get(&x) {
                merges.push((prev.clone(), t));
                continue;
            }
            e.insert(&self.engine.coordinates(&x)?);
            seen.insert(x, t);
        }
        let p = self.dim_data(n)?.prims.len();
        if e.rank() != p {
            return Err(Error::Inconsistency(format!(
                "dimension {n}: generator terms span rank {}, primitives {p}",
                e.rank()
            )));
        }
        Ok(merges)
    }
}

/// Poincaré series of an exterior algebra on generators counted by degree.
pub fn exterior_series(gens: &[u64], up_to: u32) -> Vec<u64> {
    let n = up_to as usize;
    let mut s = vec![0u64; n + 1];
    s[0] = 1;
    for (d, &c) in gens.iter().enumerate().skip(1).take(n) {
        for _ in 0..c {
            for k in (d..=n).rev() {
                s[k] += s[k - d];
            }
        }
    }
    s
}

/// A desuspended class in `H_*Q_0S^{-2k-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WDesusp {
    pub gen: PGen,
    pub k: u32,
    /// Degree in `H_*Q_0S^{-2k-2}`.
    pub degree: u32,
    pub in_j_image: bool,
    /// The literal clause "trivial if 2k ≡ 3, 4 (mod 8)" applied to classes in
    /// the image.
    pub literal_trivial: bool,
    pub note: Option<String>,
}

/// The class `w^{-2k-2}_{i,J}` or `w^{-2k-2}_L`.
pub fn w_desusp_class(gen: PGen, k: u32) -> WDesusp {
    let in_j_image = match &gen {
        PGen::IJ(..) => false,
        PGen::L(l) => l.strictly_increasing(),
    };
    let r = (2 * k) % 8;
    let literal_trivial = in_j_image && (r == 3 || r == 4);
    let note = in_j_image.then(|| {
        format!(
            "2k ≡ 3 (mod 8) never holds; the loop degree 2k+2 = {} is ≡ {} (mod 8), \
             and the iterated complex J-map vanishes in mod 2 homology exactly for degrees ≡ 5, 6",
            2 * k + 2,
            (2 * k + 2) % 8
        )
    });
    WDesusp { degree: gen.desusp_degree(), gen, k, in_j_image, literal_trivial, note }
}

#[cfg(test)]
mod tests;

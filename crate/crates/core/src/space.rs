//! Declared homology rings of spaces: generators with relation disciplines,
//! a dual Steenrod action table and coproduct data.
//!
//! A presentation is exchanged as a line-oriented text file:
//!
//! ```text
//! # comment
//! name BU
//! bottom 2
//! sqbound 64
//! gen c2 dim=2 rel=poly
//! gen s1 dim=1 rel=ext primitive
//! gen y4 dim=4 rel=trunc:4
//! sq 2 c4 = c2
//! coprod c4 = c4|1 + c2|c2 + 1|c4
//! ```
//!
//! Base monomials are written `1` or as `*`-separated generator names with
//! optional `^e` exponents. `sqbound d` declares the Steenrod table complete
//! for generators of dimension at most `d`: undeclared entries there are zero.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::f2::toggle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discipline {
    Polynomial,
    Exterior,
    /// `x^h = 0`, `h` a power of two.
    Truncated(u32),
}

impl Discipline {
    /// Largest allowed exponent, if bounded.
    pub fn max_exponent(self) -> Option<u32> {
        match self {
            Discipline::Polynomial => None,
            Discipline::Exterior => Some(1),
            Discipline::Truncated(h) => Some(h - 1),
        }
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discipline::Polynomial => write!(f, "poly"),
            Discipline::Exterior => write!(f, "ext"),
            Discipline::Truncated(h) => write!(f, "trunc:{h}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub family: String,
    pub index: Option<u32>,
    pub dim: u32,
    pub discipline: Discipline,
    pub primitive: bool,
}

fn split_family(name: &str) -> (String, Option<u32>) {
    let digits = name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 || digits == name.len() {
        return (name.to_string(), None);
    }
    let (fam, idx) = name.split_at(name.len() - digits);
    match idx.parse() {
        Ok(i) => (fam.to_string(), Some(i)),
        Err(_) => (name.to_string(), None),
    }
}

/// A monomial in a base ring: generator indices with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseMonomial {
    dim: u32,
    factors: Vec<(u16, u32)>,
}

impl BaseMonomial {
    pub fn unit() -> Self {
        BaseMonomial { dim: 0, factors: Vec::new() }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(u16, u32)] {
        &self.factors
    }

    /// Exponent of generator `g`.
    pub fn exponent(&self, g: u16) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| *h == g)
            .map_or(0, |&(_, e)| e)
    }

    /// Total number of generator factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }
}

pub type BaseElement = BTreeSet<BaseMonomial>;
pub type BaseTensor = HashSet<(BaseMonomial, BaseMonomial)>;

#[derive(Debug, Clone)]
pub struct SpacePresentation {
    name: String,
    gens: Vec<Generator>,
    by_name: HashMap<String, u16>,
    sq: HashMap<(u32, u16), BaseElement>,
    sq_bound: Option<u32>,
    has_sq: bool,
    coprod: HashMap<u16, Vec<(BaseMonomial, BaseMonomial)>>,
    bottom: u32,
}

impl SpacePresentation {
    pub fn new(name: impl Into<String>) -> Self {
        SpacePresentation {
            name: name.into(),
            gens: Vec::new(),
            by_name: HashMap::new(),
            sq: HashMap::new(),
            sq_bound: None,
            has_sq: false,
            coprod: HashMap::new(),
            bottom: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: u16) -> &Generator {
        &self.gens[g as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.by_name.get(name).copied()
    }

    pub fn has_steenrod(&self) -> bool {
        self.has_sq
    }

    pub fn sq_bound(&self) -> Option<u32> {
        self.sq_bound
    }

    /// Largest declared generator dimension.
    pub fn top_generator_dim(&self) -> u32 {
        self.gens.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    pub fn add_generator(
        &mut self,
        name: &str,
        dim: u32,
        discipline: Discipline,
        primitive: bool,
    ) -> Result<u16> {
        if self.by_name.contains_key(name) {
            return Err(Error::Context(format!("generator `{name}` declared twice")));
        }
        if dim == 0 {
            return Err(Error::Context(format!("generator `{name}` must have positive dimension")));
        }
        if let Discipline::Truncated(h) = discipline {
            if h < 2 || !h.is_power_of_two() {
                return Err(Error::Context(format!(
                    "truncation height {h} of `{name}` is not a power of 2"
                )));
            }
        }
        let idx = u16::try_from(self.gens.len())
            .map_err(|_| Error::Overflow("too many generators".into()))?;
        let (family, index) = split_family(name);
        self.gens.push(Generator {
            name: name.to_string(),
            family,
            index,
            dim,
            discipline,
            primitive,
        });
        self.by_name.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn set_bottom(&mut self, d: u32) {
        self.bottom = d;
    }

    pub fn set_sq_bound(&mut self, d: u32) {
        self.sq_bound = Some(d);
        self.has_sq = true;
    }

    pub fn set_sq(&mut self, r: u32, g: u16, value: BaseElement) -> Result<()> {
        let gd = self.gens[g as usize].dim;
        if value.iter().any(|m| m.dim + r != gd) {
            return Err(Error::Context(format!(
                "Sq^{r} of `{}` is not homogeneous of dimension {}",
                self.gens[g as usize].name,
                gd as i64 - r as i64
            )));
        }
        self.has_sq = true;
        self.sq.insert((r, g), value);
        Ok(())
    }

    pub fn set_coproduct(&mut self, g: u16, terms: Vec<(BaseMonomial, BaseMonomial)>) -> Result<()> {
        let gd = self.gens[g as usize].dim;
        if terms.iter().any(|(a, b)| a.dim + b.dim != gd) {
            return Err(Error::Context(format!(
                "coproduct of `{}` is not homogeneous",
                self.gens[g as usize].name
            )));
        }
        self.coprod.insert(g, terms);
        Ok(())
    }

    pub fn gen_monomial(&self, g: u16) -> BaseMonomial {
        BaseMonomial {
            dim: self.gens[g as usize].dim,
            factors: vec![(g, 1)],
        }
    }

    /// Monomial from `(generator, exponent)` pairs; `None` if it vanishes.
    pub fn monomial(&self, pairs: &[(u16, u32)]) -> Option<BaseMonomial> {
        let mut m = BaseMonomial::unit();
        for &(g, e) in pairs {
            if e == 0 {
                continue;
            }
            let f = BaseMonomial {
                dim: self.gens[g as usize].dim * e,
                factors: vec![(g, e)],
            };
            m = self.mono_mul(&m, &f)?;
        }
        Some(m)
    }

    /// Product of monomials under the relation disciplines.
    pub fn mono_mul(&self, a: &BaseMonomial, b: &BaseMonomial) -> Option<BaseMonomial> {
        let mut out = Vec::with_capacity(a.factors.len() + b.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            let next = match (a.factors.get(i), b.factors.get(j)) {
                (Some(&x), Some(&y)) if x.0 == y.0 => {
                    i += 1;
                    j += 1;
                    (x.0, x.1 + y.1)
                }
                (Some(&x), Some(&y)) => {
                    if x.0 < y.0 {
                        i += 1;
                        x
                    } else {
                        j += 1;
                        y
                    }
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            if let Some(max) = self.gens[next.0 as usize].discipline.max_exponent() {
                if next.1 > max {
                    return None;
                }
            }
            out.push(next);
        }
        Some(BaseMonomial {
            dim: a.dim + b.dim,
            factors: out,
        })
    }

    pub fn mul(&self, x: &BaseElement, y: &BaseElement) -> BaseElement {
        let mut out = BaseElement::new();
        for a in x {
            for b in y {
                if let Some(m) = self.mono_mul(a, b) {
                    if !out.insert(m.clone()) {
                        out.remove(&m);
                    }
                }
            }
        }
        out
    }

    /// `Sq^r_*` of a generator.
    pub fn sq_gen(&self, r: u32, g: u16) -> Result<BaseElement> {
        let gen = &self.gens[g as usize];
        if r == 0 {
            return Ok(BaseElement::from([self.gen_monomial(g)]));
        }
        if 2 * r > gen.dim {
            return Ok(BaseElement::new());
        }
        if let Some(v) = self.sq.get(&(r, g)) {
            return Ok(v.clone());
        }
        match self.sq_bound {
            Some(b) if gen.dim <= b => Ok(BaseElement::new()),
            bound => Err(Error::MissingSteenrod {
                generator: gen.name.clone(),
                bound,
            }),
        }
    }

    /// `Sq^0_*, ..., Sq^r_*` of a monomial, by the Cartan formula.
    pub fn sq_total_monomial(&self, m: &BaseMonomial, r: u32) -> Result<Vec<BaseElement>> {
        let mut acc: Vec<BaseElement> = vec![BaseElement::new(); r as usize + 1];
        acc[0].insert(BaseMonomial::unit());
        for &(g, e) in &m.factors {
            let mut gen_total = Vec::with_capacity(r as usize + 1);
            for a in 0..=r {
                gen_total.push(self.sq_gen(a, g)?);
            }
            for _ in 0..e {
                acc = self.convolve(&acc, &gen_total, r);
            }
        }
        Ok(acc)
    }

    fn convolve(&self, x: &[BaseElement], y: &[BaseElement], r: u32) -> Vec<BaseElement> {
        let mut out = vec![BaseElement::new(); r as usize + 1];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_empty() {
                continue;
            }
            for (b, yb) in y.iter().enumerate().take(r as usize + 1 - a) {
                if yb.is_empty() {
                    continue;
                }
                for m in self.mul(xa, yb) {
                    if !out[a + b].insert(m.clone()) {
                        out[a + b].remove(&m);
                    }
                }
            }
        }
        out
    }

    pub fn sq_monomial(&self, r: u32, m: &BaseMonomial) -> Result<BaseElement> {
        if 2 * r > m.dim {
            return Ok(BaseElement::new());
        }
        Ok(self.sq_total_monomial(m, r)?.pop().unwrap_or_default())
    }

    pub fn sq(&self, r: u32, x: &BaseElement) -> Result<BaseElement> {
        let mut out = BaseElement::new();
        for m in x {
            for t in self.sq_monomial(r, m)? {
                if !out.insert(t.clone()) {
                    out.remove(&t);
                }
            }
        }
        Ok(out)
    }

    /// The square root map: `Sq^t_*` in dimension `2t`, zero in odd dimensions.
    pub fn square_root(&self, x: &BaseElement) -> Result<BaseElement> {
        let mut out = BaseElement::new();
        for m in x {
            if m.dim % 2 == 1 {
                continue;
            }
            for t in self.sq_monomial(m.dim / 2, m)? {
                if !out.insert(t.clone()) {
                    out.remove(&t);
                }
            }
        }
        Ok(out)
    }

    pub fn coproduct_gen(&self, g: u16) -> Result<BaseTensor> {
        let gm = self.gen_monomial(g);
        if let Some(terms) = self.coprod.get(&g) {
            let mut t = BaseTensor::new();
            for pair in terms {
                toggle(&mut t, pair.clone());
            }
            return Ok(t);
        }
        if self.gens[g as usize].primitive {
            return Ok(BaseTensor::from([
                (gm.clone(), BaseMonomial::unit()),
                (BaseMonomial::unit(), gm),
            ]));
        }
        Err(Error::MissingCoproduct(self.gens[g as usize].name.clone()))
    }

    pub fn has_coproduct(&self, g: u16) -> bool {
        self.coprod.contains_key(&g) || self.gens[g as usize].primitive
    }

    fn tensor_mul(&self, x: &BaseTensor, y: &BaseTensor) -> BaseTensor {
        let mut out = BaseTensor::new();
        for (a, b) in x {
            for (c, d) in y {
                if let (Some(l), Some(r)) = (self.mono_mul(a, c), self.mono_mul(b, d)) {
                    toggle(&mut out, (l, r));
                }
            }
        }
        out
    }

    pub fn coproduct_monomial(&self, m: &BaseMonomial) -> Result<BaseTensor> {
        let mut acc = BaseTensor::from([(BaseMonomial::unit(), BaseMonomial::unit())]);
        for &(g, e) in &m.factors {
            let psi = self.coproduct_gen(g)?;
            for _ in 0..e {
                acc = self.tensor_mul(&acc, &psi);
            }
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &BaseElement) -> Result<BaseTensor> {
        let mut out = BaseTensor::new();
        for m in x {
            for t in self.coproduct_monomial(m)? {
                toggle(&mut out, t);
            }
        }
        Ok(out)
    }

    /// Coproduct with the primitive part `x|1 + 1|x` removed.
    pub fn reduced_coproduct_monomial(&self, m: &BaseMonomial) -> Result<BaseTensor> {
        let mut t = self.coproduct_monomial(m)?;
        toggle(&mut t, (m.clone(), BaseMonomial::unit()));
        toggle(&mut t, (BaseMonomial::unit(), m.clone()));
        Ok(t)
    }

    /// The monomial basis in one dimension, sorted.
    pub fn basis(&self, dim: u32) -> Vec<BaseMonomial> {
        let mut order: Vec<u16> = (0..self.gens.len() as u16).collect();
        order.sort_by_key(|&g| (self.gens[g as usize].dim, g));
        let mut out = Vec::new();
        let mut acc = Vec::new();
        self.basis_rec(&order, 0, dim, &mut acc, &mut out);
        out.sort();
        out
    }

    fn basis_rec(
        &self,
        order: &[u16],
        start: usize,
        remaining: u32,
        acc: &mut Vec<(u16, u32)>,
        out: &mut Vec<BaseMonomial>,
    ) {
        if remaining == 0 {
            let mut factors = acc.clone();
            factors.sort();
            out.push(BaseMonomial {
                dim: 0,
                factors,
            });
            let last = out.last_mut().unwrap();
            last.dim = last
                .factors
                .iter()
                .map(|&(g, e)| self.gens[g as usize].dim * e)
                .sum();
            return;
        }
        for (pos, &g) in order.iter().enumerate().skip(start) {
            let gen = &self.gens[g as usize];
            if gen.dim > remaining {
                break;
            }
            let max = gen
                .discipline
                .max_exponent()
                .unwrap_or(u32::MAX)
                .min(remaining / gen.dim);
            for e in 1..=max {
                acc.push((g, e));
                self.basis_rec(order, pos + 1, remaining - e * gen.dim, acc, out);
                acc.pop();
            }
        }
    }

    /// Dimensions of the basis in degrees `0..=up_to`, by generating functions.
    pub fn poincare_series(&self, up_to: u32) -> Vec<u64> {
        let n = up_to as usize;
        let mut series = vec![0u64; n + 1];
        series[0] = 1;
        for gen in &self.gens {
            let d = gen.dim as usize;
            if d > n {
                continue;
            }
            let max = gen.discipline.max_exponent().map(|m| m as usize);
            let mut next = vec![0u64; n + 1];
            for (i, &c) in series.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut e = 0;
                while i + e * d <= n && max.is_none_or(|m| e <= m) {
                    next[i + e * d] += c;
                    e += 1;
                }
            }
            series = next;
        }
        series
    }

    pub fn render_monomial(&self, m: &BaseMonomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let mut s = String::new();
        for (n, &(g, e)) in m.factors.iter().enumerate() {
            if n > 0 {
                s.push('*');
            }
            s.push_str(&self.gens[g as usize].name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    pub fn render_element(&self, x: &BaseElement) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|m| self.render_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_tensor(&self, t: &BaseTensor) -> String {
        if t.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<_> = t.iter().collect();
        terms.sort();
        terms
            .into_iter()
            .map(|(a, b)| format!("{}|{}", self.render_monomial(a), self.render_monomial(b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Renders a base monomial in the expression-language atom syntax,
    /// e.g. `c(2,4)` for `c2*c4`. Multiple families are joined with `.`.
    pub fn render_atom_root(&self, m: &BaseMonomial) -> String {
        let mut groups: Vec<(String, Vec<String>)> = Vec::new();
        for &(g, e) in &m.factors {
            let gen = &self.gens[g as usize];
            let arg = gen.index.map(|i| i.to_string()).unwrap_or_default();
            for _ in 0..e {
                match groups.last_mut() {
                    Some((fam, args)) if *fam == gen.family && gen.index.is_some() => {
                        args.push(arg.clone())
                    }
                    _ => groups.push((gen.family.clone(), vec![arg.clone()])),
                }
            }
        }
        groups
            .into_iter()
            .map(|(fam, args)| format!("{fam}({})", args.join(",")))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Resolves `family(args)` into a base monomial.
    pub fn resolve_family(&self, family: &str, args: &[u32]) -> Result<Option<BaseMonomial>> {
        let mut pairs: Vec<(u16, u32)> = Vec::new();
        if args.is_empty() {
            let g = self
                .lookup(family)
                .ok_or_else(|| Error::UnknownGenerator(format!("{family}()")))?;
            pairs.push((g, 1));
        }
        for &a in args {
            let name = format!("{family}{a}");
            let g = self
                .lookup(&name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            pairs.push((g, 1));
        }
        let mut m = BaseMonomial::unit();
        for p in pairs {
            let f = BaseMonomial {
                dim: self.gens[p.0 as usize].dim,
                factors: vec![p],
            };
            match self.mono_mul(&m, &f) {
                Some(x) => m = x,
                None => return Ok(None),
            }
        }
        Ok(Some(m))
    }

    // ---- text format ----

    pub fn parse(text: &str) -> Result<Self> {
        let mut sp = SpacePresentation::new("unnamed");
        let mut pending_sq = Vec::new();
        let mut pending_coprod = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::Presentation { line: line_no, message: m };
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "name" => sp.name = rest.to_string(),
                "bottom" => {
                    sp.bottom = rest.parse().map_err(|_| err(format!("bad bottom `{rest}`")))?
                }
                "sqbound" => sp.set_sq_bound(
                    rest.parse().map_err(|_| err(format!("bad sqbound `{rest}`")))?,
                ),
                "gen" => {
                    let mut parts = rest.split_whitespace();
                    let name = parts.next().ok_or_else(|| err("missing generator name".into()))?;
                    let mut dim = None;
                    let mut disc = None;
                    let mut primitive = false;
                    for p in parts {
                        if let Some(d) = p.strip_prefix("dim=") {
                            dim = Some(d.parse::<u32>().map_err(|_| err(format!("bad dim `{d}`")))?);
                        } else if let Some(r) = p.strip_prefix("rel=") {
                            disc = Some(match r {
                                "poly" => Discipline::Polynomial,
                                "ext" => Discipline::Exterior,
                                t if t.starts_with("trunc:") => Discipline::Truncated(
                                    t[6..].parse().map_err(|_| err(format!("bad height `{t}`")))?,
                                ),
                                other => return Err(err(format!("unknown relation `{other}`"))),
                            });
                        } else if p == "primitive" {
                            primitive = true;
                        } else {
                            return Err(err(format!("unexpected `{p}`")));
                        }
                    }
                    let dim = dim.ok_or_else(|| err("missing dim=".into()))?;
                    let disc = disc.ok_or_else(|| err("missing rel=".into()))?;
                    sp.add_generator(name, dim, disc, primitive)
                        .map_err(|e| err(e.to_string()))?;
                }
                "sq" => {
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| err("expected `=`".into()))?;
                    let mut l = lhs.split_whitespace();
                    let r: u32 = l
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("bad operation degree".into()))?;
                    let g = l.next().ok_or_else(|| err("missing generator".into()))?.to_string();
                    pending_sq.push((line_no, r, g, rhs.trim().to_string()));
                }
                "coprod" => {
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| err("expected `=`".into()))?;
                    pending_coprod.push((line_no, lhs.trim().to_string(), rhs.trim().to_string()));
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        for (line, r, g, rhs) in pending_sq {
            let err = |m: String| Error::Presentation { line, message: m };
            let gi = sp.lookup(&g).ok_or_else(|| err(format!("undeclared generator `{g}`")))?;
            let value = sp.parse_base_element(&rhs).map_err(|e| err(e.to_string()))?;
            sp.set_sq(r, gi, value).map_err(|e| err(e.to_string()))?;
        }
        for (line, g, rhs) in pending_coprod {
            let err = |m: String| Error::Presentation { line, message: m };
            let gi = sp.lookup(&g).ok_or_else(|| err(format!("undeclared generator `{g}`")))?;
            let mut terms = Vec::new();
            if rhs != "0" {
                for term in rhs.split('+') {
                    let (a, b) = term
                        .split_once('|')
                        .ok_or_else(|| err(format!("expected `a|b` in `{term}`")))?;
                    let a = sp.parse_base_monomial(a.trim()).map_err(|e| err(e.to_string()))?;
                    let b = sp.parse_base_monomial(b.trim()).map_err(|e| err(e.to_string()))?;
                    if let (Some(a), Some(b)) = (a, b) {
                        terms.push((a, b));
                    }
                }
            }
            sp.set_coproduct(gi, terms).map_err(|e| err(e.to_string()))?;
        }
        Ok(sp)
    }

    pub fn parse_base_monomial(&self, text: &str) -> Result<Option<BaseMonomial>> {
        let text = text.trim();
        if text == "1" {
            return Ok(Some(BaseMonomial::unit()));
        }
        let mut pairs = Vec::new();
        for f in text.split('*') {
            let f = f.trim();
            let (name, e) = match f.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Context(format!("bad exponent in `{f}`")))?,
                ),
                None => (f, 1),
            };
            let g = self
                .lookup(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            pairs.push((g, e));
        }
        Ok(self.monomial(&pairs))
    }

    pub fn parse_base_element(&self, text: &str) -> Result<BaseElement> {
        let mut out = BaseElement::new();
        if text.trim() == "0" {
            return Ok(out);
        }
        for term in text.split('+') {
            if let Some(m) = self.parse_base_monomial(term)? {
                if !out.insert(m.clone()) {
                    out.remove(&m);
                }
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "bottom {}", self.bottom);
        if let Some(b) = self.sq_bound {
            let _ = writeln!(s, "sqbound {b}");
        }
        for g in &self.gens {
            let _ = write!(s, "gen {} dim={} rel={}", g.name, g.dim, g.discipline);
            if g.primitive {
                s.push_str(" primitive");
            }
            s.push('\n');
        }
        let mut sq: Vec<_> = self.sq.iter().collect();
        sq.sort_by_key(|((r, g), _)| (*g, *r));
        for ((r, g), v) in sq {
            let _ = writeln!(s, "sq {} {} = {}", r, self.gens[*g as usize].name, self.render_element(v));
        }
        let mut cp: Vec<_> = self.coprod.iter().collect();
        cp.sort_by_key(|(g, _)| **g);
        for (g, terms) in cp {
            let rendered = if terms.is_empty() {
                "0".to_string()
            } else {
                terms
                    .iter()
                    .map(|(a, b)| format!("{}|{}", self.render_monomial(a), self.render_monomial(b)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(s, "coprod {} = {}", self.gens[*g as usize].name, rendered);
        }
        s
    }

    /// Checks counit and coassociativity of the declared coproducts on all
    /// basis monomials up to `dim`.
    pub fn check_coproduct(&self, dim: u32) -> Result<()> {
        for d in 1..=dim {
            for m in self.basis(d) {
                let psi = match self.coproduct_monomial(&m) {
                    Ok(p) => p,
                    Err(Error::MissingCoproduct(_)) => continue,
                    Err(e) => return Err(e),
                };
                let left: usize = psi.iter().filter(|(a, b)| a.is_unit() && *b == m).count();
                let right: usize = psi.iter().filter(|(a, b)| b.is_unit() && *a == m).count();
                if left != 1 || right != 1 {
                    return Err(Error::Inconsistency(format!(
                        "counit fails on {}",
                        self.render_monomial(&m)
                    )));
                }
                // (psi x 1) psi == (1 x psi) psi
                let mut lhs: HashSet<(BaseMonomial, BaseMonomial, BaseMonomial)> = HashSet::new();
                let mut rhs = lhs.clone();
                for (a, b) in &psi {
                    for (a1, a2) in self.coproduct_monomial(a)? {
                        toggle(&mut lhs, (a1, a2, b.clone()));
                    }
                    for (b1, b2) in self.coproduct_monomial(b)? {
                        toggle(&mut rhs, (a.clone(), b1, b2));
                    }
                }
                if lhs != rhs {
                    return Err(Error::Inconsistency(format!(
                        "coassociativity fails on {}",
                        self.render_monomial(&m)
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
name toy
bottom 1
sqbound 4
gen s1 dim=1 rel=ext
gen s2 dim=2 rel=ext
gen s3 dim=3 rel=ext
gen y4 dim=4 rel=trunc:4
coprod s1 = s1|1 + 1|s1
coprod s2 = s2|1 + s1|s1 + 1|s2
coprod s3 = s3|1 + s2|s1 + s1|s2 + 1|s3
sq 1 s2 = s1
sq 1 s3 = 0
";

    #[test]
    fn parse_and_render_roundtrip() {
        let sp = SpacePresentation::parse(SAMPLE).unwrap();
        assert_eq!(sp.name(), "toy");
        let again = SpacePresentation::parse(&sp.to_text()).unwrap();
        assert_eq!(again.to_text(), sp.to_text());
        for d in 0..=8 {
            assert_eq!(sp.basis(d).len() as u64, sp.poincare_series(8)[d as usize]);
        }
    }

    #[test]
    fn disciplines() {
        let sp = SpacePresentation::parse(SAMPLE).unwrap();
        let s1 = sp.gen_monomial(0);
        assert!(sp.mono_mul(&s1, &s1).is_none());
        let y = sp.gen_monomial(3);
        let y2 = sp.mono_mul(&y, &y).unwrap();
        let y3 = sp.mono_mul(&y2, &y).unwrap();
        assert!(sp.mono_mul(&y3, &y).is_none());
    }

    #[test]
    fn steenrod_bound_behaviour() {
        let sp = SpacePresentation::parse(SAMPLE).unwrap();
        // declared
        assert_eq!(sp.sq_gen(1, 1).unwrap().len(), 1);
        // undeclared below the bound is zero
        assert!(sp.sq_gen(2, 3).unwrap().is_empty());
        let mut big = sp.clone();
        let g = big.add_generator("s9", 9, Discipline::Exterior, false).unwrap();
        assert!(matches!(big.sq_gen(2, g), Err(Error::MissingSteenrod { .. })));
        // instability: r > dim/2 is zero without lookup
        assert!(big.sq_gen(5, g).unwrap().is_empty());
    }

    #[test]
    fn coproduct_checks() {
        let sp = SpacePresentation::parse(SAMPLE).unwrap();
        // y4 has no coproduct data; check skips it
        sp.check_coproduct(6).unwrap();
        assert!(matches!(sp.coproduct_gen(3), Err(Error::MissingCoproduct(_))));
        let s1s2 = sp.monomial(&[(0, 1), (1, 1)]).unwrap();
        let s3 = sp.gen_monomial(2);
        let mut p = sp.reduced_coproduct_monomial(&s1s2).unwrap();
        for t in sp.reduced_coproduct_monomial(&s3).unwrap() {
            toggle(&mut p, t);
        }
        assert!(p.is_empty(), "s3 + s1 s2 is primitive");
    }

    #[test]
    fn presentation_errors() {
        assert!(matches!(
            SpacePresentation::parse("gen x dim=2 rel=trunc:3"),
            Err(Error::Presentation { line: 1, .. })
        ));
        assert!(SpacePresentation::parse("sq 1 x = 0").is_err());
        assert!(SpacePresentation::parse("gen x dim=2 rel=poly\nfoo").is_err());
        assert!(SpacePresentation::parse("gen x dim=2 rel=poly\ngen x dim=3 rel=poly").is_err());
    }

    #[test]
    fn atom_root_rendering() {
        let sp = SpacePresentation::parse(SAMPLE).unwrap();
        let m = sp.monomial(&[(0, 1), (2, 1)]).unwrap();
        assert_eq!(sp.render_atom_root(&m), "s(1,3)");
        assert_eq!(sp.resolve_family("s", &[1, 3]).unwrap(), Some(m));
        assert_eq!(sp.resolve_family("s", &[1, 1]).unwrap(), None);
    }
}

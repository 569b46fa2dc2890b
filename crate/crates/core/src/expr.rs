//! Expression syntax: parsing, lowering to normalized elements, rendering.
//!
//! ```text
//! element  := term ("+" term)* | "0"
//! term     := factor ("*" factor)*
//! factor   := op-chain atom | atom | "(" element ")" | factor "^" UINT
//! op-chain := ("Q[" UINT ("," UINT)* "]")+
//! atom     := NAME "(" args ")" ("." NAME "(" args ")")* | "[" pi0elt "]"
//! ```
//!
//! In `H_*QS^0` the name `x(i)` abbreviates `Q[i][1] * [-2]`. In a space
//! context `c(2,4)` is the base class `c2*c4`; families are joined with `.`.

use std::fmt::Write as _;

use crate::element::{Atom, Element, Monomial, Root};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::seq::Seq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    /// Operations listed outermost first.
    Apply(Vec<u32>, Box<Expr>),
    Named(Vec<(String, Vec<u32>)>),
    /// Raw text of a `[...]` class.
    Class(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Uint(u64),
    QOpen,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Star,
    Plus,
    Caret,
    Comma,
    Dot,
    /// Raw contents of `[...]` not preceded by `Q`.
    ClassText(String),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Lexer {
    fn lex(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let (mut line, mut col) = (1usize, 1usize);
        let mut i = 0;
        let mut in_ops = false;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let advance = |n: usize, i: &mut usize, col: &mut usize| {
                *i += n;
                *col += n;
            };
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                advance(1, &mut i, &mut col);
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let v = s
                    .parse::<u64>()
                    .map_err(|_| syntax(l0, c0, format!("integer `{s}` too large")))?;
                toks.push((Tok::Uint(v), l0, c0));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                if s == "Q" && chars.get(i) == Some(&'[') {
                    i += 1;
                    col += 1;
                    toks.push((Tok::QOpen, l0, c0));
                    in_ops = true;
                } else {
                    toks.push((Tok::Name(s), l0, c0));
                }
                continue;
            }
            match c {
                '[' => {
                    // a class: capture raw text up to the matching bracket
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && chars[j] != ']' {
                        if chars[j] == '[' || chars[j] == '\n' {
                            return Err(syntax(l0, c0, "unterminated `[`"));
                        }
                        j += 1;
                    }
                    if j == chars.len() {
                        return Err(syntax(l0, c0, "unterminated `[`"));
                    }
                    let s: String = chars[start..j].iter().collect();
                    toks.push((Tok::LBracket, l0, c0));
                    toks.push((Tok::ClassText(s.trim().to_string()), l0, c0 + 1));
                    toks.push((Tok::RBracket, l0, c0 + (j - i)));
                    col += j + 1 - i;
                    i = j + 1;
                    continue;
                }
                ']' => {
                    if !in_ops {
                        return Err(syntax(l0, c0, "unexpected `]`"));
                    }
                    in_ops = false;
                    toks.push((Tok::RBracket, l0, c0));
                }
                '(' => toks.push((Tok::LParen, l0, c0)),
                ')' => toks.push((Tok::RParen, l0, c0)),
                '*' => toks.push((Tok::Star, l0, c0)),
                '+' => toks.push((Tok::Plus, l0, c0)),
                '^' => toks.push((Tok::Caret, l0, c0)),
                ',' => toks.push((Tok::Comma, l0, c0)),
                '.' => toks.push((Tok::Dot, l0, c0)),
                other => return Err(syntax(l0, c0, format!("unexpected character `{other}`"))),
            }
            advance(1, &mut i, &mut col);
        }
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.1, t.2))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Uint(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an unsigned integer")),
        }
    }

    fn u32(&mut self) -> Result<u32> {
        let (l, c) = self.here();
        let v = self.uint()?;
        u32::try_from(v).map_err(|_| syntax(l, c, format!("{v} out of range")))
    }

    fn element(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Uint(0)) {
            self.pos += 1;
            return Ok(Expr::Zero);
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            Expr::Product(fs)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut f = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.u32()?;
            f = Expr::Power(Box::new(f), e);
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::QOpen) => {
                let mut ops = Vec::new();
                while self.peek() == Some(&Tok::QOpen) {
                    self.pos += 1;
                    ops.push(self.u32()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        ops.push(self.u32()?);
                    }
                    self.expect(Tok::RBracket, "`]`")?;
                }
                let arg = match self.peek() {
                    Some(Tok::LParen) => {
                        self.pos += 1;
                        let e = self.element()?;
                        self.expect(Tok::RParen, "`)`")?;
                        e
                    }
                    _ => self.atom()?,
                };
                Ok(Expr::Apply(ops, Box::new(arg)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.element()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::LBracket) => {
                self.pos += 1;
                let text = match self.peek() {
                    Some(Tok::ClassText(s)) => s.clone(),
                    _ => return Err(self.err("expected a π₀ class")),
                };
                self.pos += 1;
                self.expect(Tok::RBracket, "`]`")?;
                if text.is_empty() {
                    return Err(self.err("empty class `[]`"));
                }
                Ok(Expr::Class(text))
            }
            Some(Tok::Name(_)) => {
                let mut parts = vec![self.named_part()?];
                while self.peek() == Some(&Tok::Dot) {
                    self.pos += 1;
                    parts.push(self.named_part()?);
                }
                Ok(Expr::Named(parts))
            }
            _ => Err(self.err("expected an atom")),
        }
    }

    fn named_part(&mut self) -> Result<(String, Vec<u32>)> {
        let name = match self.peek() {
            Some(Tok::Name(n)) => n.clone(),
            _ => return Err(self.err("expected a name")),
        };
        self.pos += 1;
        self.expect(Tok::LParen, "`(` after a generator name")?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            args.push(self.u32()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.u32()?);
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok((name, args))
    }
}

/// Parses text into a syntax tree.
pub fn parse(text: &str) -> Result<Expr> {
    let lx = Lexer::lex(text)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser {
        toks: lx.toks,
        pos: 0,
        end,
    };
    if p.toks.is_empty() {
        return Err(syntax(1, 1, "empty expression"));
    }
    let e = p.element()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Evaluates a syntax tree in an engine context, fully normalized.
pub fn lower(engine: &Engine, e: &Expr) -> Result<Element> {
    match e {
        Expr::Zero => Ok(Element::zero()),
        Expr::Sum(ts) => {
            let mut acc = Element::zero();
            for t in ts {
                acc.add_assign(&lower(engine, t)?);
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = engine.one();
            for f in fs {
                acc = engine.mul(&acc, &lower(engine, f)?);
            }
            Ok(acc)
        }
        Expr::Power(b, n) => Ok(engine.pow(&lower(engine, b)?, *n)),
        Expr::Apply(ops, arg) => {
            let x = lower(engine, arg)?;
            let mut acc = x;
            for &i in ops.iter().rev() {
                acc = engine.q_apply(i, &acc)?;
            }
            Ok(acc)
        }
        Expr::Class(text) => match engine.pi0() {
            Some(p) => Ok(engine.group_like(&p.parse_element(text)?)),
            None => {
                if text.trim() == "0" {
                    Ok(engine.one())
                } else {
                    Err(Error::Context(format!(
                        "class [{text}] in a connected context; only [0] is available"
                    )))
                }
            }
        },
        Expr::Named(parts) => lower_named(engine, parts),
    }
}

fn lower_named(engine: &Engine, parts: &[(String, Vec<u32>)]) -> Result<Element> {
    if let Some(p) = engine.pi0() {
        if p.is_integral() && parts.len() == 1 && parts[0].0 == "x" && parts[0].1.len() == 1 {
            let i = parts[0].1[0];
            if i == 0 {
                return Err(Error::UnknownGenerator("x(0)".into()));
            }
            return Ok(x_class(engine, i));
        }
        let shown: Vec<String> = parts.iter().map(|(n, a)| format!("{n}({a:?})")).collect();
        return Err(Error::UnknownGenerator(shown.join(".")));
    }
    let sp = engine.space().expect("space context");
    let mut m = crate::space::BaseMonomial::unit();
    for (fam, args) in parts {
        match sp.resolve_family(fam, args)? {
            None => return Ok(Element::zero()),
            Some(f) => match sp.mono_mul(&m, &f) {
                Some(x) => m = x,
                None => return Ok(Element::zero()),
            },
        }
    }
    engine.base_class(&m)
}

/// `x_i = Q^i[1] * [-2]` in `H_*QS^0`.
pub fn x_class(engine: &Engine, i: u32) -> Element {
    let a = Atom::new(Seq::from_vec_unchecked(vec![i]), Root::Pi0(0));
    engine.mul(&engine.atom_element(&a), &engine.group_like(&[-2]))
}

/// Parses and evaluates in one step.
pub fn evaluate(engine: &Engine, text: &str) -> Result<Element> {
    lower(engine, &parse(text)?)
}

/// Splits an element into parts homogeneous in dimension and component,
/// ordered by (dimension, component).
pub fn split_homogeneous(engine: &Engine, x: &Element) -> Vec<Element> {
    let mut parts: std::collections::BTreeMap<(u32, Vec<i64>), Element> = Default::default();
    for m in x {
        parts
            .entry((m.dim(), engine.label(m)))
            .or_default()
            .add_monomial(m.clone());
    }
    parts.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Atoms on π₀ generators or base classes.
    Raw,
    /// Polynomials in `Q^I x(i)`; only in `H_*QS^0`.
    XBasis,
}

impl Style {
    pub fn default_for(engine: &Engine) -> Style {
        match engine.pi0() {
            Some(p) if p.is_integral() => Style::XBasis,
            _ => Style::Raw,
        }
    }
}

fn render_root(engine: &Engine, root: &Root) -> String {
    match root {
        Root::Pi0(j) => match engine.pi0() {
            Some(p) if p.is_integral() => "[1]".into(),
            Some(p) => format!("[{}]", p.name(*j as usize)),
            None => "[?]".into(),
        },
        Root::Base(m) => engine
            .space()
            .map_or_else(|| "?".into(), |sp| sp.render_atom_root(m)),
    }
}

fn render_ops(ops: &[u32]) -> String {
    if ops.is_empty() {
        return String::new();
    }
    let v: Vec<String> = ops.iter().map(u32::to_string).collect();
    format!("Q[{}]", v.join(","))
}

fn render_component(engine: &Engine, c: &[i64]) -> String {
    match engine.pi0() {
        Some(p) => format!("[{}]", p.render_element(c)),
        None => "[0]".into(),
    }
}

pub fn render_monomial(engine: &Engine, m: &Monomial) -> String {
    let mut parts = Vec::new();
    if m.is_group_like() || m.component().iter().any(|&x| x != 0) {
        parts.push(render_component(engine, m.component()));
    }
    for (a, e) in m.factors() {
        let mut s = render_ops(a.ops().entries());
        s.push_str(&render_root(engine, a.root()));
        if *e > 1 {
            let _ = write!(s, "^{e}");
        }
        parts.push(s);
    }
    parts.join(" * ")
}

/// Renders with the engine's default style.
pub fn render(engine: &Engine, x: &Element) -> Result<String> {
    render_styled(engine, x, Style::default_for(engine))
}

pub fn render_styled(engine: &Engine, x: &Element, style: Style) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    match style {
        Style::Raw => Ok(x
            .terms()
            .map(|m| render_monomial(engine, m))
            .collect::<Vec<_>>()
            .join(" + ")),
        Style::XBasis => {
            let terms = to_x_basis(engine, x)?;
            Ok(terms
                .iter()
                .map(|t| render_x_term(engine, t))
                .collect::<Vec<_>>()
                .join(" + "))
        }
    }
}

/// A monomial `[c] * Π (Q^I x_i)^e` of `H_*QS^0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XTerm {
    pub component: i64,
    pub factors: Vec<(Seq, u32, u32)>,
    key: Monomial,
}

fn render_x_term(engine: &Engine, t: &XTerm) -> String {
    let mut parts = Vec::new();
    if t.component != 0 || t.factors.is_empty() {
        parts.push(render_component(engine, &[t.component]));
    }
    for (ops, i, e) in &t.factors {
        let mut s = render_ops(ops.entries());
        let _ = write!(s, "x({i})");
        if *e > 1 {
            let _ = write!(s, "^{e}");
        }
        parts.push(s);
    }
    parts.join(" * ")
}

/// Expands `[c] * Π (Q^I x_i)^e` back into atoms.
pub fn x_term_value(engine: &Engine, t: &XTerm) -> Result<Element> {
    let mut acc = engine.group_like(&[t.component]);
    for (ops, i, e) in &t.factors {
        let xi = x_class(engine, *i);
        let q = engine.q_seq(ops, &xi)?;
        acc = engine.mul(&acc, &engine.pow(&q, *e));
    }
    Ok(acc)
}

/// Rewrites an element of `H_*QS^0` in the polynomial basis on `Q^I x_i`.
/// The change of basis is unitriangular in the number of atom factors.
pub fn to_x_basis(engine: &Engine, x: &Element) -> Result<Vec<XTerm>> {
    let mut rem = x.clone();
    let mut out = Vec::new();
    let mut guard = 0usize;
    while let Some(m) = rem.terms().min_by_key(|m| (m.weight(), (*m).clone())).cloned() {
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::Inconsistency("x-basis conversion did not terminate".into()));
        }
        let mut factors = Vec::new();
        for (a, e) in m.factors() {
            let entries = a.ops().entries();
            let (i, outer) = entries
                .split_last()
                .ok_or_else(|| Error::Inconsistency("bare π₀ atom".into()))?;
            factors.push((Seq::from_vec_unchecked(outer.to_vec()), *i, *e));
        }
        let t = XTerm {
            component: engine.label(&m)[0],
            factors,
            key: m.clone(),
        };
        let v = x_term_value(engine, &t)?;
        if !v.contains(&m) {
            return Err(Error::Inconsistency(format!(
                "x-basis leading term missing for {}",
                render_monomial(engine, &m)
            )));
        }
        rem.add_assign(&v);
        out.push(t);
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs0() -> Engine {
        Engine::sphere(0).unwrap()
    }

    #[test]
    fn worked_examples() {
        let e = qs0();
        let x1 = evaluate(&e, "Q[1][1] * [-2]").unwrap();
        assert_eq!(x1, x_class(&e, 1));
        assert_eq!(render(&e, &x1).unwrap(), "x(1)");
        assert_eq!(render(&e, &evaluate(&e, "[0]").unwrap()).unwrap(), "[0]");
        let q3 = evaluate(&e, "Q[3] x(1)").unwrap();
        assert_eq!(render(&e, &q3).unwrap(), "x(1)^4");
        let k1 = Engine::sphere(1).unwrap();
        let z = evaluate(&k1, "Q[2][eta] * Q[2][eta]").unwrap();
        assert_eq!(render(&k1, &z).unwrap(), "0");
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("Q[1] x(1) +\n  * x(2)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse("Q[1 x(1)").is_err());
        assert!(parse("[1").is_err());
        assert!(parse("").is_err());
        assert!(parse("x(1) x(2)").is_err());
    }

    #[test]
    fn unknown_names() {
        let e = qs0();
        assert!(matches!(evaluate(&e, "y(1)"), Err(Error::UnknownGenerator(_))));
        let k1 = Engine::sphere(1).unwrap();
        assert!(matches!(evaluate(&k1, "[nu]"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn inhomogeneous_input_is_split() {
        let e = qs0();
        let v = evaluate(&e, "x(1) + x(2) + [3] + x(1)*x(1)").unwrap();
        let parts = split_homogeneous(&e, &v);
        assert_eq!(parts.len(), 3);
    }

    #[test]
    fn round_trip_rendering() {
        let e = qs0();
        for text in [
            "x(1)^2 * x(2) + Q[4,2]x(1)",
            "[3] * Q[5]x(2)",
            "Q[6,3]x(1) * x(3)",
            "[-2]",
            "Q[2][1]",
        ] {
            let v = evaluate(&e, text).unwrap();
            for style in [Style::Raw, Style::XBasis] {
                let s = render_styled(&e, &v, style).unwrap();
                assert_eq!(evaluate(&e, &s).unwrap(), v, "{text} -> {s}");
            }
        }
        let k8 = Engine::sphere(8).unwrap();
        let v = evaluate(&k8, "Q[3][eta_sigma+epsilon] * [epsilon]").unwrap();
        let s = render(&k8, &v).unwrap();
        assert_eq!(evaluate(&k8, &s).unwrap(), v);
    }
}

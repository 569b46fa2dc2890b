//! The 2-local group `π₀QS^{-k} = π_k^S` as a sum of cyclic summands.

use crate::error::{Error, Result};

const STEMS: &str = include_str!("../data/pi0/stems.tbl");

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pi0Spec {
    k: u32,
    /// `Some(d)` for a summand of order `2^d`, `None` for `Z`.
    orders: Vec<Option<u32>>,
    names: Vec<String>,
}

impl Pi0Spec {
    pub fn new(k: u32, orders: Vec<Option<u32>>, names: Vec<String>) -> Result<Self> {
        if orders.len() != names.len() {
            return Err(Error::Context("summand and name counts differ".into()));
        }
        if orders.iter().any(|o| *o == Some(0) || o.is_some_and(|d| d > 62)) {
            return Err(Error::Context("cyclic summand order out of range".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Context(format!("generator name `{n}` repeated")));
            }
        }
        Ok(Pi0Spec { k, orders, names })
    }

    /// Built-in table for `0 <= k <= 9`.
    pub fn builtin(k: u32) -> Result<Self> {
        for line in STEMS.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let spec = Pi0Spec::parse_line(line)?;
            if spec.k == k {
                return Ok(spec);
            }
        }
        Err(Error::Context(format!("no built-in π₀ data for k = {k}")))
    }

    /// Parses `pi0 k=<k> summands=2^d1,... names=g1,...`.
    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = |m: &str| Error::Presentation {
            line: 1,
            message: format!("{m} in `{line}`"),
        };
        let mut parts = line.split_whitespace();
        if parts.next() != Some("pi0") {
            return Err(bad("expected `pi0`"));
        }
        let (mut k, mut orders, mut names) = (None, None, None);
        for p in parts {
            if let Some(v) = p.strip_prefix("k=") {
                k = Some(v.parse::<u32>().map_err(|_| bad("bad k"))?);
            } else if let Some(v) = p.strip_prefix("summands=") {
                let mut o = Vec::new();
                for s in v.split(',').filter(|s| !s.is_empty()) {
                    if s == "Z" {
                        o.push(None);
                    } else {
                        let d = s
                            .strip_prefix("2^")
                            .and_then(|d| d.parse::<u32>().ok())
                            .ok_or_else(|| bad("bad summand"))?;
                        o.push(Some(d));
                    }
                }
                orders = Some(o);
            } else if let Some(v) = p.strip_prefix("names=") {
                names = Some(
                    v.split(',')
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect::<Vec<_>>(),
                );
            } else {
                return Err(bad("unexpected field"));
            }
        }
        Pi0Spec::new(
            k.ok_or_else(|| bad("missing k"))?,
            orders.unwrap_or_default(),
            names.unwrap_or_default(),
        )
    }

    pub fn to_line(&self) -> String {
        let summands: Vec<String> = self
            .orders
            .iter()
            .map(|o| match o {
                None => "Z".to_string(),
                Some(d) => format!("2^{d}"),
            })
            .collect();
        format!(
            "pi0 k={} summands={} names={}",
            self.k,
            summands.join(","),
            self.names.join(",")
        )
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    /// `d` for a summand of order `2^d`; `None` for `Z`.
    pub fn order_exp(&self, j: usize) -> Option<u32> {
        self.orders[j]
    }

    pub fn is_integral(&self) -> bool {
        self.orders.len() == 1 && self.orders[0].is_none()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn generator(&self, j: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[j] = 1;
        v
    }

    /// Reduces every coordinate into `[0, 2^d)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        self.orders
            .iter()
            .enumerate()
            .map(|(j, o)| {
                let x = v.get(j).copied().unwrap_or(0);
                match o {
                    None => x,
                    Some(d) => x.rem_euclid(1i64 << d),
                }
            })
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(&crate::element::add_vec(a, b))
    }

    pub fn scale(&self, a: &[i64], n: i64) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(a.len());
        for &x in a {
            out.push(
                x.checked_mul(n)
                    .ok_or_else(|| Error::Overflow(format!("{n} * {x}")))?,
            );
        }
        Ok(self.reduce(&out))
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// Parses the inside of `[...]`: an integer, a name, `INT NAME`, or sums
    /// of these with `+`/`-`.
    pub fn parse_element(&self, text: &str) -> Result<Vec<i64>> {
        let mut v = self.zero();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Context("empty π₀ element".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                s[start..pos]
                    .parse::<i64>()
                    .map_err(|_| Error::Overflow(s[start..pos].to_string()))?
            } else {
                1
            };
            let nstart = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let name = &s[nstart..pos];
            let j = if name.is_empty() {
                if nstart == start {
                    return Err(Error::Context(format!("malformed π₀ element `{text}`")));
                }
                if self.rank() == 1 {
                    0
                } else if coeff == 0 {
                    continue;
                } else {
                    return Err(Error::Context(format!(
                        "bare integer in π₀ of rank {} (k = {})",
                        self.rank(),
                        self.k
                    )));
                }
            } else {
                self.index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?
            };
            let term = coeff
                .checked_mul(sign)
                .ok_or_else(|| Error::Overflow(text.to_string()))?;
            v[j] = v[j]
                .checked_add(term)
                .ok_or_else(|| Error::Overflow(text.to_string()))?;
        }
        Ok(self.reduce(&v))
    }

    pub fn render_element(&self, v: &[i64]) -> String {
        if self.is_integral() {
            return v.first().copied().unwrap_or(0).to_string();
        }
        let v = self.reduce(v);
        let mut parts = Vec::new();
        for (j, &x) in v.iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(self.names[j].clone()),
                n => parts.push(format!("{n} {}", self.names[j])),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table() {
        for k in 0..=9 {
            let s = Pi0Spec::builtin(k).unwrap();
            assert_eq!(Pi0Spec::parse_line(&s.to_line()).unwrap(), s);
        }
        assert!(Pi0Spec::builtin(0).unwrap().is_integral());
        assert_eq!(Pi0Spec::builtin(3).unwrap().order_exp(0), Some(3));
        assert_eq!(Pi0Spec::builtin(9).unwrap().rank(), 3);
        assert!(Pi0Spec::builtin(10).is_err());
    }

    #[test]
    fn element_arithmetic() {
        let s = Pi0Spec::builtin(3).unwrap();
        assert_eq!(s.parse_element("3 nu").unwrap(), vec![3]);
        assert_eq!(s.parse_element("-nu").unwrap(), vec![7]);
        assert_eq!(s.parse_element("8").unwrap(), vec![0]);
        assert_eq!(s.render_element(&[10]), "2 nu");
        let z = Pi0Spec::builtin(0).unwrap();
        assert_eq!(z.parse_element("-2").unwrap(), vec![-2]);
        assert_eq!(z.render_element(&[-2]), "-2");
        let e = Pi0Spec::builtin(8).unwrap();
        let v = e.parse_element("eta_sigma+epsilon").unwrap();
        assert_eq!(v, vec![1, 1]);
        assert_eq!(e.add(&v, &v), vec![0, 0]);
        assert_eq!(e.render_element(&v), "eta_sigma+epsilon");
        assert!(e.parse_element("2").is_err());
        assert_eq!(e.parse_element("0").unwrap(), vec![0, 0]);
        assert!(e.parse_element("nu").is_err());
    }
}

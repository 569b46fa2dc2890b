//! Built-in homology presentations of the classical spaces on the Bott
//! ladder, and the maps `ι_t` from `U`/`BU` into the stages of `Ω^k SO`.
//!
//! Shipped presentations run through dimension [`ATLAS_DIM`]. Spaces whose
//! Steenrod action or coproduct is not needed by any computation here carry
//! their ring structure only.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hopf::base_primitives;
use crate::scalar::binom_odd;
use crate::space::{BaseElement, BaseMonomial, SpacePresentation};

pub const ATLAS_DIM: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtlasSpace {
    SO,
    Spin,
    BO,
    BSO,
    U,
    BU,
    SOmodU,
    UmodSp,
    BSp,
    Sp,
    SpmodU,
    UmodO,
    SUmodSO,
}

use AtlasSpace::*;

impl AtlasSpace {
    pub const ALL: [AtlasSpace; 13] = [
        SO, Spin, BO, BSO, U, BU, SOmodU, UmodSp, BSp, Sp, SpmodU, UmodO, SUmodSO,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SO => "SO",
            Spin => "Spin",
            BO => "BO",
            BSO => "BSO",
            U => "U",
            BU => "BU",
            SOmodU => "SO/U",
            UmodSp => "U/Sp",
            BSp => "BSp",
            Sp => "Sp",
            SpmodU => "Sp/U",
            UmodO => "U/O",
            SUmodSO => "SU/SO",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::ALL.into_iter().find(|a| {
            a.name().eq_ignore_ascii_case(s) || a.file_stem().eq_ignore_ascii_case(s)
        })
    }

    pub fn file_stem(self) -> &'static str {
        match self {
            SO => "so",
            Spin => "spin",
            BO => "bo",
            BSO => "bso",
            U => "u",
            BU => "bu",
            SOmodU => "so_u",
            UmodSp => "u_sp",
            BSp => "bsp",
            Sp => "sp",
            SpmodU => "sp_u",
            UmodO => "u_o",
            SUmodSO => "su_so",
        }
    }

    pub fn shipped_text(self) -> &'static str {
        match self {
            SO => include_str!("../data/atlas/so.space"),
            Spin => include_str!("../data/atlas/spin.space"),
            BO => include_str!("../data/atlas/bo.space"),
            BSO => include_str!("../data/atlas/bso.space"),
            U => include_str!("../data/atlas/u.space"),
            BU => include_str!("../data/atlas/bu.space"),
            SOmodU => include_str!("../data/atlas/so_u.space"),
            UmodSp => include_str!("../data/atlas/u_sp.space"),
            BSp => include_str!("../data/atlas/bsp.space"),
            Sp => include_str!("../data/atlas/sp.space"),
            SpmodU => include_str!("../data/atlas/sp_u.space"),
            UmodO => include_str!("../data/atlas/u_o.space"),
            SUmodSO => include_str!("../data/atlas/su_so.space"),
        }
    }

    /// The shipped presentation, parsed once.
    pub fn presentation(self) -> Arc<SpacePresentation> {
        static CACHE: OnceLock<Vec<Arc<SpacePresentation>>> = OnceLock::new();
        let all = CACHE.get_or_init(|| {
            AtlasSpace::ALL
                .iter()
                .map(|a| {
                    Arc::new(
                        SpacePresentation::parse(a.shipped_text())
                            .expect("shipped atlas files parse"),
                    )
                })
                .collect()
        });
        all[self as usize].clone()
    }

    /// Whether the shipped presentation includes a Steenrod table and
    /// coproducts.
    pub fn has_structure(self) -> bool {
        matches!(self, SO | BO | U | BU | BSp | Sp)
    }

    /// The presentation text through dimension `n`.
    pub fn generate(self, n: u32) -> String {
        let mut w = Writer::new(self.name());
        match self {
            SO => w.simple("s", 1, 1, n, "ext", Coprod::Sum, 0),
            BO => w.simple("a", 1, 1, n, "poly", Coprod::Sum, 0),
            U => w.simple("u", 1, 2, n, "ext", Coprod::Primitive, 1),
            BU => w.simple("c", 2, 2, n, "poly", Coprod::Sum, 0),
            BSp => w.simple("p", 4, 4, n, "poly", Coprod::Sum, 0),
            Sp => w.simple("z", 3, 4, n, "ext", Coprod::Primitive, 3),
            Spin => {
                let dims = (3..=n).filter(|i| !i.is_power_of_two()).collect::<Vec<_>>();
                w.bare("s", &dims, "ext");
            }
            BSO => w.bare("a", &(2..=n).collect::<Vec<_>>(), "poly"),
            SOmodU => w.bare("c", &(1..=n / 2).map(|i| 2 * i).collect::<Vec<_>>(), "ext"),
            UmodSp => w.bare("u", &(0..).map(|i| 4 * i + 1).take_while(|&d| d <= n).collect::<Vec<_>>(), "ext"),
            SpmodU => w.bare("y", &(0..).map(|i| 4 * i + 2).take_while(|&d| d <= n).collect::<Vec<_>>(), "ext"),
            UmodO => w.bare("u", &(0..).map(|i| 2 * i + 1).take_while(|&d| d <= n).collect::<Vec<_>>(), "poly"),
            SUmodSO => {
                let mut dims = vec![2];
                dims.extend((1..).map(|i| 2 * i + 1).take_while(|&d| d <= n));
                w.bare("u", &dims, "poly");
            }
        }
        w.text
    }
}

#[derive(Clone, Copy)]
enum Coprod {
    Sum,
    Primitive,
}

struct Writer {
    text: String,
}

impl Writer {
    fn new(name: &str) -> Self {
        Writer { text: format!("name {name}\n") }
    }

    fn bare(&mut self, fam: &str, dims: &[u32], rel: &str) {
        let _ = writeln!(self.text, "bottom {}", dims.first().copied().unwrap_or(0));
        for d in dims {
            let _ = writeln!(self.text, "gen {fam}{d} dim={d} rel={rel}");
        }
    }

    /// Generators `g_d` in dims `first, first+step, ..` with index
    /// `m = (d - origin)/step`, the action `Sq^{step r}_* g_m = C(m-r, r) g_{m-r}`,
    /// and either primitive generators or `ψ g_m = Σ g_i ⊗ g_{m-i}`.
    #[allow(clippy::too_many_arguments)]
    fn simple(&mut self, fam: &str, first: u32, step: u32, n: u32, rel: &str, cp: Coprod, origin: u32) {
        let dims: Vec<u32> = (0..).map(|i| first + i * step).take_while(|&d| d <= n).collect();
        let _ = writeln!(self.text, "bottom {first}");
        let _ = writeln!(self.text, "sqbound {n}");
        let prim = matches!(cp, Coprod::Primitive);
        for d in &dims {
            let _ = writeln!(
                self.text,
                "gen {fam}{d} dim={d} rel={rel}{}",
                if prim { " primitive" } else { "" }
            );
        }
        for d in &dims {
            let m = (d - origin) / step;
            for r in 1..=m / 2 {
                if binom_odd((m - r) as i64, r as i64) {
                    let _ = writeln!(self.text, "sq {} {fam}{d} = {fam}{}", step * r, d - step * r);
                }
            }
        }
        if let Coprod::Sum = cp {
            for d in &dims {
                let terms: Vec<String> = (0..=*d)
                    .step_by(step as usize)
                    .map(|a| {
                        let l = if a == 0 { "1".to_string() } else { format!("{fam}{a}") };
                        let r = if a == *d { "1".to_string() } else { format!("{fam}{}", d - a) };
                        format!("{l}|{r}")
                    })
                    .collect();
                let _ = writeln!(self.text, "coprod {fam}{d} = {}", terms.join(" + "));
            }
        }
    }
}

/// The stage of the Bott ladder homotopy equivalent to `Ω_0^k SO`.
pub fn bott_space(k: u32) -> AtlasSpace {
    [SO, SOmodU, UmodSp, BSp, Sp, SpmodU, UmodO, BO][(k % 8) as usize]
}

/// Domain of `ι_t`: `U` for even `t`, `BU` for odd `t`.
pub fn iota_domain(t: u32) -> AtlasSpace {
    if t.is_multiple_of(2) {
        U
    } else {
        BU
    }
}

fn gen_element(sp: &SpacePresentation, name: &str, e: u32) -> BaseElement {
    let mut out = BaseElement::new();
    if let Some(g) = sp.lookup(name) {
        if let Some(m) = sp.monomial(&[(g, e)]) {
            out.insert(m);
        }
    }
    out
}

/// Image of the domain generator of dimension `d` under `ι_t`, as an
/// element of `bott_space(t)`.
pub fn iota_generator(t: u32, d: u32) -> Result<BaseElement> {
    let t = t % 8;
    let tgt = bott_space(t).presentation();
    let out = match t {
        0 => {
            // u_{2i+1} is primitive, so its image is the primitive with leading term s_{2i+1}
            let lead = format!("s{d}");
            let g = tgt
                .lookup(&lead)
                .ok_or_else(|| Error::UnknownGenerator(lead.clone()))?;
            let lead_m = tgt.gen_monomial(g);
            let prims = base_primitives(&tgt, d)?;
            prims
                .into_iter()
                .find(|p| p.contains(&lead_m))
                .ok_or_else(|| Error::Inconsistency(format!("no primitive through {lead} in SO")))?
        }
        1 => gen_element(&tgt, &format!("c{d}"), 1),
        2 if d % 4 == 1 => gen_element(&tgt, &format!("u{d}"), 1),
        3 if d.is_multiple_of(4) => gen_element(&tgt, &format!("p{d}"), 1),
        4 if d % 4 == 3 => gen_element(&tgt, &format!("z{d}"), 1),
        7 => gen_element(&tgt, &format!("a{}", d / 2), 2),
        _ => BaseElement::new(),
    };
    Ok(out)
}

/// `(ι_t)_*` on `H_*U` (even `t`) or `H_*BU` (odd `t`), extended
/// multiplicatively from the generator images.
pub fn iota_pushforward(t: u32, src: &SpacePresentation, x: &BaseElement) -> Result<BaseElement> {
    let want = iota_domain(t);
    if src.name() != want.name() {
        return Err(Error::Context(format!(
            "iota_{t} is defined on H_*{}, got H_*{}",
            want.name(),
            src.name()
        )));
    }
    let tgt = bott_space(t).presentation();
    let mut out = BaseElement::new();
    for m in x {
        let mut acc: BaseElement = BTreeSet::from([BaseMonomial::unit()]);
        for &(g, e) in m.factors() {
            let img = iota_generator(t, src.generator(g).dim)?;
            for _ in 0..e {
                acc = tgt.mul(&acc, &img);
            }
            if acc.is_empty() {
                break;
            }
        }
        for v in acc {
            if !out.remove(&v) {
                out.insert(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn regenerate_shipped_files() {
        for a in AtlasSpace::ALL {
            let path = format!("{}/data/atlas/{}.space", env!("CARGO_MANIFEST_DIR"), a.file_stem());
            std::fs::write(path, a.generate(ATLAS_DIM)).unwrap();
        }
    }

    #[test]
    fn shipped_files_match_generator() {
        for a in AtlasSpace::ALL {
            assert_eq!(a.shipped_text(), a.generate(ATLAS_DIM), "{}", a.name());
            let sp = a.presentation();
            assert_eq!(sp.name(), a.name());
            assert_eq!(AtlasSpace::from_name(a.name()), Some(a));
        }
    }

    #[test]
    fn ladder() {
        assert_eq!(bott_space(7), BO);
        assert_eq!(bott_space(0), SO);
        assert_eq!(bott_space(11), BSp);
        assert_eq!(bott_space(13), SpmodU);
    }

    fn series_by_partitions(parts: &[u32], distinct: bool, n: u32) -> Vec<u64> {
        let mut s = vec![0u64; n as usize + 1];
        s[0] = 1;
        for &p in parts {
            if distinct {
                for d in (p..=n).rev() {
                    s[d as usize] += s[(d - p) as usize];
                }
            } else {
                for d in p..=n {
                    s[d as usize] += s[(d - p) as usize];
                }
            }
        }
        s
    }

    #[test]
    fn poincare_series_match_product_formulas() {
        let n = 20;
        let all: Vec<u32> = (1..=n).collect();
        assert_eq!(SO.presentation().poincare_series(n), series_by_partitions(&all, true, n));
        assert_eq!(BO.presentation().poincare_series(n), series_by_partitions(&all, false, n));
        // H_*U/O polynomial on odd classes has the series of H_*SO: partitions
        // into odd parts and into distinct parts are equinumerous
        assert_eq!(UmodO.presentation().poincare_series(n), SO.presentation().poincare_series(n));
        let even: Vec<u32> = (1..=n / 2).map(|i| 2 * i).collect();
        assert_eq!(BU.presentation().poincare_series(n), series_by_partitions(&even, false, n));
    }

    #[test]
    fn structured_spaces_are_coherent() {
        for a in [SO, BO, U, BU, BSp, Sp] {
            a.presentation().check_coproduct(14).unwrap();
        }
    }

    #[test]
    fn bu_action_table() {
        let bu = BU.presentation();
        let c = |n: &str| bu.parse_base_element(n).unwrap();
        assert_eq!(bu.sq(2, &c("c4")).unwrap(), c("c2"));
        assert_eq!(bu.sq(2, &c("c6")).unwrap(), c("0"));
        assert_eq!(bu.sq(4, &c("c8")).unwrap(), c("c4"));
        assert_eq!(bu.sq(1, &c("c4")).unwrap(), c("0"));
    }

    #[test]
    fn iota_zero_maps_and_t7() {
        let bu = BU.presentation();
        let u = U.presentation();
        for d in 1..=24 {
            for m in u.basis(d) {
                assert!(iota_pushforward(6, &u, &BTreeSet::from([m])).unwrap().is_empty());
            }
            for m in bu.basis(d) {
                assert!(iota_pushforward(5, &bu, &BTreeSet::from([m])).unwrap().is_empty());
            }
        }
        let bo = BO.presentation();
        for i in 1..=12 {
            let c = bu.parse_base_element(&format!("c{}", 2 * i)).unwrap();
            let a = bo.parse_base_element(&format!("a{i}^2")).unwrap();
            assert_eq!(iota_pushforward(7, &bu, &c).unwrap(), a);
        }
    }

    #[test]
    fn iota_images() {
        let u = U.presentation();
        let bu = BU.presentation();
        let e = |sp: &SpacePresentation, s: &str| sp.parse_base_element(s).unwrap();
        let usp = UmodSp.presentation();
        assert_eq!(iota_pushforward(2, &u, &e(&u, "u5")).unwrap(), e(&usp, "u5"));
        assert!(iota_pushforward(2, &u, &e(&u, "u3")).unwrap().is_empty());
        let bsp = BSp.presentation();
        assert_eq!(iota_pushforward(3, &bu, &e(&bu, "c4*c8")).unwrap(), e(&bsp, "p4*p8"));
        assert!(iota_pushforward(3, &bu, &e(&bu, "c2")).unwrap().is_empty());
        let sp = Sp.presentation();
        assert_eq!(iota_pushforward(4, &u, &e(&u, "u7")).unwrap(), e(&sp, "z7"));
        let sou = SOmodU.presentation();
        assert_eq!(iota_pushforward(1, &bu, &e(&bu, "c2*c4")).unwrap(), e(&sou, "c2*c4"));
        // exterior target kills squares
        assert!(iota_pushforward(1, &bu, &e(&bu, "c2^2")).unwrap().is_empty());
        assert!(iota_pushforward(1, &u, &e(&u, "u1")).is_err());
    }

    #[test]
    fn iota0_lands_on_primitives() {
        let u = U.presentation();
        let so = SO.presentation();
        for i in 0..8 {
            let d = 2 * i + 1;
            let x = u.parse_base_element(&format!("u{d}")).unwrap();
            let y = iota_pushforward(0, &u, &x).unwrap();
            assert!(y.contains(&so.parse_base_monomial(&format!("s{d}")).unwrap().unwrap()));
            for m in &y {
                assert_eq!(m.dim(), d);
            }
            assert!(base_primitives(&so, d).unwrap().contains(&y));
        }
        let s3 = iota_pushforward(0, &u, &u.parse_base_element("u3").unwrap()).unwrap();
        assert_eq!(s3, so.parse_base_element("s3 + s1*s2").unwrap());
    }
}

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{coherence, Check, Suite, VerifyConfig};
use crate::atlas::{iota_pushforward, AtlasSpace, ATLAS_DIM};
use crate::components::{gamma_class, pushforward, verify_truncation, GeneratorImages};
use crate::desusp::{exterior_series, CJ, Desusp};
use crate::engine::{Context, Engine};
use crate::error::Result;
use crate::expr::{evaluate, render, x_class};
use crate::hopf::a_annihilated_primitives;
use crate::pi0::Pi0Spec;
use crate::predicates::{nu, q_of_p, w_class, x_class as x_pred};
use crate::scalar::{binom_odd, is_prime};
use crate::seq::Seq;
use crate::space::SpacePresentation;

pub(super) static ALL: &[Suite] = &[
    Suite {
        name: "q3x1",
        about: "Q^3 x_1 = x_1^4 in the base-point component of QS^0",
        anchor: "for example Q^3 x_1 = x_1^4",
        run: q3x1,
    },
    Suite {
        name: "eta-pushforward",
        about: "eta_* x_i = Q^i[eta] for 1 <= i <= 12",
        anchor: "eta_*x_i = eta_*Q^i[1] * eta_*[-2] = Q^i[eta] * [0] = Q^i[eta]",
        run: eta_pushforward,
    },
    Suite {
        name: "nilpotency",
        about: "(Q^I[gamma_J])^(2^d) = 0 for cyclic summands of order 2^d, d = 1, 2, 3",
        anchor: "truncated polynomial subalgebra whose truncation height is at most 2^d",
        run: nilpotency,
    },
    Suite {
        name: "hopf-one",
        about: "A-annihilated odd primitives of H_*SO sit in dimensions 2^t - 1",
        anchor: "the only A-annihilated primitive classes in H_*(SO; Z/2) are p_{2^t-1}^{SO}",
        run: hopf_one,
    },
    Suite {
        name: "x-classes",
        about: "x_i^{-8j} is trivial exactly for i = -1 mod 2^{nu_j}",
        anchor: "If k = 8j and i not= 2^{v_j} k - 1 where 2^{v_j} is the largest power of 2 which divides 3^{4j} - 1",
        run: x_classes,
    },
    Suite {
        name: "iota",
        about: "iota_5 and iota_6 vanish; iota_7 c_{2i} = a_i^2",
        anchor: "For t = 5, 6 we have (iota_t)_* = 0; (iota_7)_* c_{2i} = a_i^2",
        run: iota,
    },
    Suite {
        name: "ker-r",
        about: "c_J in ker r exactly when 4 does not divide J",
        anchor: "c_J in ker r if and only if 4 not| J",
        run: ker_r,
    },
    Suite {
        name: "decompose",
        about: "every loop-sum primitive of H_*QBU decomposes and reassembles",
        anchor: "linear combination of classes of the form Q^I p_{i,J}^{BU} and Q^K p_L^{BU} with 4|J and 4 not| L",
        run: decompose,
    },
    Suite {
        name: "desusp-count",
        about: "generator indexing of H_*Q Sigma^{-1} BU matches primitives of H_*QBU",
        anchor: "H_*Q_0 Sigma^{-1} X = E_{Z/2}(sigma_* P H_* QX)",
        run: desusp_count,
    },
    Suite {
        name: "coherence",
        about: "randomized Adem, Cartan, power law, Nishida, square root and coproduct properties",
        anchor: "Cartan formula (Q^i xi)^2 = Q^{2i} xi^2; r Q^{2i+1} xi = 0, r Q^{2i} xi = Q^i r xi; Nishida relations",
        run: coherence::run,
    },
    Suite {
        name: "w-classes",
        about: "nontriviality grid for w^{-k} over k mod 8, parity of i, p in {2, 3, 5}",
        anchor: "The classes w_{2i+1-epsilon}^{-k} are nontrivial if and only if",
        run: w_classes,
    },
];

fn q3x1(_: &VerifyConfig) -> Vec<Check> {
    let anchor = "for example Q^3 x_1 = x_1^4";
    let r = (|| -> Result<(bool, String)> {
        let e = Engine::sphere(0)?;
        let x1 = e.mul(&evaluate(&e, "Q[1][1]")?, &e.group_like(&[-2]));
        let lhs = e.q_apply(3, &x1)?;
        let rhs = e.pow(&x1, 4);
        let shown = render(&e, &lhs)?;
        Ok((lhs == rhs && shown == "x(1)^4", format!("Q[3] x(1) = {shown}")))
    })();
    vec![Check::from_result("q3x1", anchor, r)]
}

fn eta_pushforward(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "eta_*x_i = Q^i[eta]";
    let n = cfg.bound(12);
    let setup = (|| -> Result<(Engine, Engine)> { Ok((Engine::sphere(0)?, Engine::sphere(1)?)) })();
    let Ok((s0, s1)) = setup else {
        return vec![Check::new("eta-pushforward", false, anchor, "context setup failed")];
    };
    let images = GeneratorImages { pi0: vec![s1.group_like(&[1])], base: HashMap::new() };
    (1..=n)
        .map(|i| {
            let r = (|| -> Result<(bool, String)> {
                let v = pushforward(&s0, &s1, &images, &x_class(&s0, i))?;
                let want = evaluate(&s1, &format!("Q[{i}][eta]"))?;
                Ok((v == want && !v.is_zero(), render(&s1, &v)?))
            })();
            Check::from_result(format!("eta-pushforward/i={i:02}"), anchor, r)
        })
        .collect()
}

fn sweep_truncation(e: &Engine, gamma: &[i64], d: u32, max: u32) -> Result<(bool, String)> {
    let mut count = 0usize;
    for jd in 1..=max {
        for j in Seq::admissible_of_dim(jd) {
            if j.len() as u32 > d {
                continue;
            }
            for id in 0..=max - jd {
                for i in Seq::admissible_of_dim(id) {
                    verify_truncation(e, gamma, &i, &j)?;
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} pairs (I, J)")))
}

fn nilpotency(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "truncation height is at most 2^d";
    let max = cfg.bound(16);
    let mut out = Vec::new();
    let eta = Engine::sphere(1);
    out.push(Check::from_result(
        "nilpotency/d=1/eta",
        anchor,
        eta.and_then(|e| sweep_truncation(&e, &[1], 1, max)),
    ));
    out.push(Check::from_result(
        "nilpotency/d=2/two-nu",
        anchor,
        Engine::sphere(3).and_then(|e| sweep_truncation(&e, &[2], 2, max)),
    ));
    let z4 = Pi0Spec::new(3, vec![Some(2)], vec!["g".into()]).map(|p| Engine::new(Context::Pi0(p)));
    out.push(Check::from_result(
        "nilpotency/d=2/z4",
        anchor,
        z4.and_then(|e| sweep_truncation(&e, &[1], 2, max)),
    ));
    out.push(Check::from_result(
        "nilpotency/d=3/nu",
        "(Q^I[nu])^8 = 0",
        Engine::sphere(3).and_then(|e| sweep_truncation(&e, &[1], 3, max)),
    ));
    let witness = (|| -> Result<(bool, String)> {
        let e = Engine::sphere(3)?;
        let g = gamma_class(&e, &[1], &Seq::new(vec![1])?)?;
        let four = e.pow(&g, 4);
        Ok((!four.is_zero(), format!("([nu_(1)])^4 has {} terms", four.len())))
    })();
    out.push(Check::from_result("nilpotency/d=3/fourth-power-survives", anchor, witness));
    out
}

/// SO through dimension `n` with the standard action and coproduct.
pub(crate) fn so_presentation(n: u32) -> Result<SpacePresentation> {
    SpacePresentation::parse(&AtlasSpace::SO.generate(n))
}

fn hopf_one(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "the only A-annihilated primitive classes in H_*(SO; Z/2) are p_{2^t-1}^{SO}";
    let n = cfg.bound(127);
    let expected: BTreeSet<u32> = (1..=7).map(|t| (1u32 << t) - 1).filter(|&d| d <= n).collect();
    // Sq^r_* p_m = C(m-r, r) p_{m-r}, and H_*SO has no primitives in even dimensions
    let table: BTreeSet<u32> = (1..=n)
        .step_by(2)
        .filter(|&m| (1..=m / 2).all(|r| (m - r) % 2 == 0 || !binom_odd((m - r) as i64, r as i64)))
        .collect();
    let mut out = vec![Check::new(
        "hopf-one/binomial-table",
        table == expected,
        anchor,
        format!("dims {table:?}"),
    )];
    let small = n.min(20);
    let la = (|| -> Result<(bool, String)> {
        let so = so_presentation(small)?;
        let found: BTreeSet<u32> = a_annihilated_primitives(&so, small)?
            .into_iter()
            .map(|(d, _)| d)
            .filter(|d| d % 2 == 1)
            .collect();
        let want: BTreeSet<u32> = expected.iter().copied().filter(|&d| d <= small).collect();
        let agree: BTreeSet<u32> = table.iter().copied().filter(|&d| d <= small).collect();
        Ok((found == want && found == agree, format!("dims {found:?} through {small}")))
    })();
    out.push(Check::from_result("hopf-one/linear-algebra", anchor, la));
    out
}

fn v2_by_division(mut n: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(2) {
        n /= 2;
        v += 1;
    }
    v
}

fn x_classes(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "2^{v_j} is the largest power of 2 which divides 3^{4j} - 1";
    let n = cfg.bound(ATLAS_DIM).min(ATLAS_DIM);
    let mut out = Vec::new();
    let nu1 = v2_by_division(3u64.pow(4) - 1);
    let nu2 = v2_by_division(3u64.pow(8) - 1);
    out.push(Check::new(
        "x-classes/nu",
        nu1 == 4 && nu2 == 5 && nu(1) == nu1 && nu(2) == nu2,
        anchor,
        format!("nu_1 = {nu1} from 80, nu_2 = {nu2} from 6560"),
    ));
    for (k, period) in [(8u32, 1u32 << nu1), (16, 1 << nu2)] {
        let r = (|| -> Result<(bool, String)> {
            let mut bad = Vec::new();
            for i in 1..=n {
                let x = x_pred(i, k)?;
                if x.nontrivial != ((i + 1) % period != 0) || x.anchor.is_empty() {
                    bad.push(i);
                }
            }
            Ok((bad.is_empty(), format!("period {period} through dim {n}; mismatches {bad:?}")))
        })();
        out.push(Check::from_result(format!("x-classes/k={k:02}"), anchor, r));
    }
    out
}

fn iota(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "For t = 5, 6 we have (iota_t)_* = 0";
    let n = cfg.bound(24).min(ATLAS_DIM);
    let u = AtlasSpace::U.presentation();
    let bu = AtlasSpace::BU.presentation();
    let bo = AtlasSpace::BO.presentation();
    let zero = |t: u32, sp: &SpacePresentation| -> Result<(bool, String)> {
        let mut count = 0;
        for d in 1..=n {
            for m in sp.basis(d) {
                count += 1;
                if !iota_pushforward(t, sp, &BTreeSet::from([m]))?.is_empty() {
                    return Ok((false, format!("nonzero image in dim {d}")));
                }
            }
        }
        Ok((true, format!("{count} basis classes through dim {n}")))
    };
    let t7 = (|| -> Result<(bool, String)> {
        for i in 1..=n / 2 {
            let c = bu.parse_base_element(&format!("c{}", 2 * i))?;
            let a = bo.parse_base_element(&format!("a{i}^2"))?;
            if iota_pushforward(7, &bu, &c)? != a {
                return Ok((false, format!("c{} does not map to a{i}^2", 2 * i)));
            }
        }
        Ok((true, format!("c_(2i) -> a_i^2 for 2i <= {n}")))
    })();
    vec![
        Check::from_result("iota/t=5", anchor, zero(5, &bu)),
        Check::from_result("iota/t=6", anchor, zero(6, &u)),
        Check::from_result("iota/t=7", "(iota_7)_* c_{2i} = a_i^2", t7),
    ]
}

fn ker_r(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "c_J in ker r if and only if 4 not| J";
    let n = cfg.bound(24);
    let d = Desusp::new();
    let r = (|| -> Result<(bool, String)> {
        let mut count = 0;
        for dim in 1..=n {
            for j in CJ::of_dim(dim) {
                // ker_r itself fails on any disagreement between the routes
                if d.ker_r(&j)? == j.divisible_by_4() {
                    return Ok((false, format!("c{j}")));
                }
                count += 1;
            }
        }
        Ok((true, format!("{count} monomials c_J through dim {n}")))
    })();
    vec![Check::from_result("ker-r", anchor, r)]
}

fn decompose(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "linear combination of classes of the form Q^I p_{i,J}^{BU} and Q^K p_L^{BU}";
    let n = cfg.bound(12);
    let d = Desusp::new();
    (1..=n)
        .map(|dim| {
            let r = (|| -> Result<(bool, String)> {
                let prims = d.engine().primitives(dim)?;
                for p in &prims {
                    let dec = d.primitive_decompose(p)?;
                    if d.reassemble(&dec)? != *p {
                        return Ok((false, format!("round trip failed: {dec}")));
                    }
                }
                Ok((true, format!("{} primitives", prims.len())))
            })();
            Check::from_result(format!("decompose/dim={dim:02}"), anchor, r)
        })
        .collect()
}

fn desusp_count(cfg: &VerifyConfig) -> Vec<Check> {
    let anchor = "E_{Z/2}(Q^I c_{i,J}^{-1}, Q^K c_L^{-1} : excess(I) > 2i + dim J, excess(K) > dim L - 1)";
    let n = cfg.bound(12);
    let d = Desusp::new();
    let series = (|| -> Result<(bool, String)> {
        let (a, b) = d.generator_counts(n)?;
        let sa = exterior_series(&a, n);
        let sb = exterior_series(&b, n);
        Ok((a == b && sa == sb, format!("generators {a:?}; series {sa:?}")))
    })();
    let span = (|| -> Result<(bool, String)> {
        let mut merges = 0;
        for m in 2..=n + 1 {
            merges += d.check_generators(m)?.len();
        }
        Ok((true, format!("generator terms form a basis of the primitives; {merges} merged")))
    })();
    vec![
        Check::from_result("desusp-count/series", anchor, series),
        Check::from_result("desusp-count/suspension-iso", anchor, span),
    ]
}

/// `p = 2` clauses restated by hand, independent of the shipped table.
fn w_expected_two(k: u32, i: u32) -> bool {
    match k % 8 {
        0 | 1 | 7 => true,
        2 | 3 => i.is_multiple_of(2),
        4 => i % 2 == 1,
        _ => false,
    }
}

fn q_brute(p: u64) -> u64 {
    (2u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            let qb = BigUint::from(q);
            let pb = BigUint::from(p);
            let primitive = (1..=p - 2).all(|i| (qb.pow(i as u32) - BigUint::one()) % &pb != BigUint::zero());
            let top = qb.pow((p - 1) as u32) - BigUint::one();
            primitive && (&top % &pb).is_zero() && !(&top % (&pb * &pb)).is_zero()
        })
        .expect("a prime exists")
}

fn w_classes(_: &VerifyConfig) -> Vec<Check> {
    let anchor = "The classes w_{2i+1-epsilon}^{-k} are nontrivial if and only if";
    let mut out = Vec::new();
    let q3 = q_brute(3);
    let q5 = q_brute(5);
    out.push(Check::new(
        "w-classes/q",
        q3 == 2 && q5 == 2 && q_of_p(3).ok() == Some(q3) && q_of_p(5).ok() == Some(q5),
        "q^i - 1 not= 0 (mod p) and p divides q^{p-1} - 1 exactly once",
        format!("q(3) = {q3}, q(5) = {q5}"),
    ));
    for p in [2u64, 3, 5] {
        for k in 0..8u32 {
            for i in [1u32, 2] {
                let r = (|| -> Result<(bool, String)> {
                    let w = w_class(i, k, p)?;
                    let want = if p == 2 {
                        w_expected_two(k, i)
                    } else {
                        let n = k.div_ceil(2);
                        let q = BigUint::from(q_brute(p));
                        ((q.pow(n + i) - BigUint::one()) % BigUint::from(p)).is_zero()
                    };
                    Ok((
                        w.nontrivial == want && !w.anchor.is_empty(),
                        format!("dim {} nontrivial={}", w.dim, w.nontrivial),
                    ))
                })();
                let parity = if i % 2 == 0 { "even" } else { "odd" };
                out.push(Check::from_result(format!("w-classes/p={p}/k={k}/i-{parity}"), anchor, r));
            }
        }
    }
    out
}

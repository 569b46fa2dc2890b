use num_bigint::BigUint;
use proptest::prelude::*;

use lashof::desusp::{PGen, CJ};
use lashof::predicates::{nu, w_class, x_class};
use lashof::verify::{Check, RunReport};

fn v2_brute(j: u64) -> u32 {
    let mut n = BigUint::from(3u32).pow(4 * j as u32) - 1u32;
    let mut v = 0;
    while (&n % 2u32) == BigUint::from(0u32) {
        n /= 2u32;
        v += 1;
    }
    v
}

proptest! {
    #[test]
    fn nu_matches_bigint(j in 1u64..200) {
        prop_assert_eq!(nu(j), v2_brute(j));
    }

    #[test]
    fn x_class_period(j in 1u32..6, i in 1u32..60) {
        let c = x_class(i, 8 * j).unwrap();
        let period = 1u32 << v2_brute(j as u64);
        prop_assert_eq!(c.nontrivial, (i + 1) % period != 0);
        prop_assert!(!c.anchor.is_empty());
    }

    #[test]
    fn w_class_depends_on_k_mod_8(i in 1u32..50, k in 0u32..64, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let a = w_class(i, k, p).unwrap();
        let b = w_class(i, k % 8, p).unwrap();
        if p == 2 {
            prop_assert_eq!(a.nontrivial, b.nontrivial);
        }
        prop_assert!(!a.anchor.is_empty());
    }

    #[test]
    fn pgen_round_trip(j in prop::collection::vec(1u32..6, 1..4), i in 0u32..5) {
        let j: Vec<u32> = j.into_iter().map(|x| 2 * x).collect();
        let cj = CJ::new(j).unwrap();
        let g = if cj.divisible_by_4() { PGen::IJ(i, cj) } else { PGen::L(cj) };
        prop_assert_eq!(g.to_string().parse::<PGen>().unwrap(), g);
    }

    #[test]
    fn report_round_trip(ids in prop::collection::vec("[a-z0-9/=-]{1,12}", 1..8), oks in prop::collection::vec(any::<bool>(), 8)) {
        let checks: Vec<Check> = ids.iter().zip(&oks).map(|(id, ok)| Check::new(id.clone(), *ok, "an anchor", "")).collect();
        let r = RunReport { command: "lashof verify x seed=1".into(), checks };
        let text = r.render_report();
        let back = RunReport::parse_report(&text).unwrap();
        prop_assert_eq!(back.render_report(), text);
        prop_assert_eq!(back.failures(), r.failures());
    }
}

use super::*;

fn cj(v: &[u32]) -> CJ {
    CJ::new(v.to_vec()).unwrap()
}

#[test]
fn ker_r_examples() {
    let d = Desusp::new();
    assert!(d.ker_r(&cj(&[2, 4])).unwrap());
    assert!(!d.ker_r(&cj(&[4])).unwrap());
    assert!(!d.ker_r(&cj(&[4, 8])).unwrap());
    let r = d.engine().square_root(&d.c(&cj(&[4])).unwrap()).unwrap();
    assert_eq!(r, d.c(&cj(&[2])).unwrap());
}

#[test]
fn ker_r_sweep() {
    let d = Desusp::new();
    for n in 1..=24 {
        for j in CJ::of_dim(n) {
            assert_eq!(d.ker_r(&j).unwrap(), !j.divisible_by_4(), "{j}");
        }
    }
}

#[test]
fn cj_enumeration_counts_partitions() {
    // partitions of n into parts, doubled
    let p = [1, 1, 2, 3, 5, 7, 11, 15, 22];
    for (n, &c) in p.iter().enumerate().skip(1) {
        assert_eq!(CJ::of_dim(2 * n as u32).len(), c);
    }
    assert!(CJ::of_dim(3).is_empty());
    assert!(CJ::new(vec![3]).is_err());
}

#[test]
fn bottom_generators() {
    let t = Desusp::generator_terms(2);
    assert_eq!(t, vec![Term { ops: Seq::empty(), gen: PGen::L(cj(&[2])) }]);
    assert!(Desusp::generator_terms(1).is_empty());
    let d = Desusp::new();
    assert_eq!(d.pgen(&PGen::L(cj(&[2]))).unwrap(), d.c(&cj(&[2])).unwrap());
}

#[test]
fn named_primitives_are_primitive() {
    let d = Desusp::new();
    for g in [
        PGen::L(cj(&[2, 4])),
        PGen::L(cj(&[2, 2])),
        PGen::L(cj(&[6])),
        PGen::IJ(2, cj(&[4])),
        PGen::IJ(3, cj(&[4])),
    ] {
        let p = d.pgen(&g).unwrap();
        assert!(d.engine().is_primitive(&p).unwrap(), "{g}");
        assert_eq!(p.dim(), Some(g.dim()));
    }
    assert!(d.pgen(&PGen::L(cj(&[4]))).is_err());
    assert!(d.pgen(&PGen::IJ(1, cj(&[4]))).is_err());
}

#[test]
fn decompose_base_cases() {
    let d = Desusp::new();
    let pl = d.pgen(&PGen::L(cj(&[2, 4]))).unwrap();
    let dec = d.primitive_decompose(&pl).unwrap();
    assert_eq!(dec.terms, vec![Term { ops: Seq::empty(), gen: PGen::L(cj(&[2, 4])) }]);
    assert!(dec.square.is_none());
    let pij = d.pgen(&PGen::IJ(2, cj(&[4]))).unwrap();
    let dec = d.primitive_decompose(&pij).unwrap();
    assert_eq!(dec.terms, vec![Term { ops: Seq::empty(), gen: PGen::IJ(2, cj(&[4])) }]);
    let sq = d.engine().square(&pl);
    let dec = d.primitive_decompose(&sq).unwrap();
    assert_eq!(d.reassemble(&dec).unwrap(), sq);
    assert!(d.primitive_decompose(&d.c(&cj(&[4])).unwrap()).is_err());
}

#[test]
fn decompose_round_trip_small() {
    let d = Desusp::new();
    for n in 1..=9 {
        for p in d.engine().primitives(n).unwrap() {
            let dec = d.primitive_decompose(&p).unwrap();
            assert_eq!(d.reassemble(&dec).unwrap(), p, "dim {n}: {dec}");
        }
    }
}

#[test]
fn double_count_small() {
    let d = Desusp::new();
    let (a, b) = d.generator_counts(8).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[1], 1);
    for n in 2..=9 {
        assert!(d.check_generators(n).unwrap().is_empty());
    }
    assert_eq!(exterior_series(&a, 8), exterior_series(&b, 8));
}

#[test]
fn exterior_series_small() {
    assert_eq!(exterior_series(&[0, 1, 1, 0], 3), vec![1, 1, 1, 1]);
    assert_eq!(exterior_series(&[0, 2], 2), vec![1, 2, 1]);
}

#[test]
fn w_classes() {
    let w = w_desusp_class(PGen::IJ(2, cj(&[4])), 1);
    assert!(!w.in_j_image);
    assert_eq!(w.degree, 8);
    assert!(w_desusp_class(PGen::L(cj(&[2, 4])), 0).in_j_image);
    assert!(!w_desusp_class(PGen::L(cj(&[2, 2])), 0).in_j_image);
    let w = w_desusp_class(PGen::L(cj(&[2, 4])), 2);
    assert!(w.literal_trivial);
    assert!(w.note.is_some());
    assert!(!w_desusp_class(PGen::L(cj(&[2, 4])), 1).literal_trivial);
}


use super::*;

fn q(ops: &[u32], j: u16) -> Atom {
    Atom::new(Seq::new(ops.to_vec()).unwrap(), Root::Pi0(j))
}

fn x(e: &Engine, i: u32) -> Element {
    let a = e.atom_element(&q(&[i], 0));
    e.mul(&a, &e.group_like(&[-2]))
}

#[test]
fn group_like_operations() {
    let e = Engine::sphere(0).unwrap();
    let zero = e.group_like(&[0]);
    assert_eq!(e.q_apply(0, &zero).unwrap(), e.one());
    for i in 1..8 {
        assert!(e.q_apply(i, &zero).unwrap().is_zero());
    }
    // [a]*[b] = [a+b]
    assert_eq!(e.mul(&e.group_like(&[3]), &e.group_like(&[-5])), e.group_like(&[-2]));
    assert_eq!(e.q_apply(0, &e.group_like(&[-3])).unwrap(), e.group_like(&[-6]));
}

#[test]
fn inverse_series_multiplies_to_unit() {
    let e = Engine::sphere(0).unwrap();
    let a = e.q_total_group_like(&[1], 8).unwrap();
    let b = e.q_total_group_like(&[-1], 8).unwrap();
    let c = e.convolve(&a, &b);
    assert_eq!(c[0], e.one());
    for t in &c[1..] {
        assert!(t.is_zero());
    }
}

#[test]
fn q_one_of_minus_one() {
    // 0 = Q^1([1]*[-1]) gives Q^1[-1] = Q^1[1] * [-4]
    let e = Engine::sphere(0).unwrap();
    let lhs = e.q_apply(1, &e.group_like(&[-1])).unwrap();
    let rhs = e.mul(&e.atom_element(&q(&[1], 0)), &e.group_like(&[-4]));
    assert_eq!(lhs, rhs);
    assert_eq!(e.label(lhs.trailing().unwrap()), vec![-2]);
}

#[test]
fn inadmissible_on_point_class_vanishes() {
    let e = Engine::sphere(0).unwrap();
    let r = e.q_seq(&Seq::new(vec![3, 1]).unwrap(), &e.group_like(&[1])).unwrap();
    assert!(r.is_zero());
}

#[test]
fn q3_x1_is_x1_to_the_fourth() {
    let e = Engine::sphere(0).unwrap();
    let x1 = x(&e, 1);
    let lhs = e.q_apply(3, &x1).unwrap();
    let rhs = e.pow(&x1, 4);
    assert!(!rhs.is_zero());
    assert_eq!(lhs, rhs);
}

#[test]
fn instability() {
    let e = Engine::sphere(0).unwrap();
    let x2 = x(&e, 2);
    assert!(e.q_apply(1, &x2).unwrap().is_zero());
    assert_eq!(e.q_apply(2, &x2).unwrap(), e.mul(&x2, &x2));
}

#[test]
fn exterior_for_order_two() {
    let e = Engine::sphere(1).unwrap();
    let a = e.atom_element(&q(&[2], 0));
    assert!(e.mul(&a, &a).is_zero());
    // (Q^2[eta])^2 = Q^4[2 eta] = Q^4[0] = 0
    assert!(e.q_apply(4, &e.group_like(&[2])).unwrap().is_zero());
}

#[test]
fn power_law_closed_form() {
    let e = Engine::sphere(0).unwrap();
    for ops in [&[1u32][..], &[2, 1], &[3], &[4, 2]] {
        let a = e.atom_element(&q(ops, 0));
        for t in 0..=3 {
            e.power(&a, t).unwrap();
        }
    }
    let k3 = Engine::sphere(3).unwrap();
    let a = k3.atom_element(&q(&[2, 1], 0));
    k3.power(&a, 2).unwrap();
}

#[test]
fn cartan_on_products() {
    let e = Engine::sphere(0).unwrap();
    let a = x(&e, 1);
    let b = x(&e, 2);
    let ab = e.mul(&a, &b);
    for i in 3..9 {
        let lhs = e.q_apply(i, &ab).unwrap();
        let mut rhs = Element::zero();
        for s in 0..=i {
            let l = e.q_apply(s, &a).unwrap();
            let r = e.q_apply(i - s, &b).unwrap();
            rhs.add_assign(&e.mul(&l, &r));
        }
        assert_eq!(lhs, rhs, "Q^{i}");
    }
}

#[test]
fn coproduct_of_q_on_point() {
    let e = Engine::sphere(0).unwrap();
    let n = 5;
    let psi = e.coproduct(&e.atom_element(&q(&[n], 0))).unwrap();
    let mut expect = Tensor::new();
    for a in 0..=n {
        let l = e.q_apply(a, &e.group_like(&[1])).unwrap();
        let r = e.q_apply(n - a, &e.group_like(&[1])).unwrap();
        for p in &l {
            for s in &r {
                toggle(&mut expect, (p.clone(), s.clone()));
            }
        }
    }
    assert_eq!(psi, expect);
    // x_i primitive only for i = 1
    assert!(e.reduced_coproduct(&x(&e, 1)).unwrap().is_empty());
    assert!(!e.reduced_coproduct(&x(&e, 2)).unwrap().is_empty());
}

#[test]
fn truncation_relation_is_consistent() {
    // (Q^1[nu])^8 = Q^8[8 nu] = 0 and the fourth power survives
    let e = Engine::sphere(3).unwrap();
    let a = e.atom_element(&q(&[1], 0));
    assert!(e.pow(&a, 8).is_zero());
    assert!(!e.pow(&a, 4).is_zero());
    assert!(e.q_apply(8, &e.group_like(&[8])).unwrap().is_zero());
    assert_eq!(e.q_apply(4, &e.group_like(&[4])).unwrap(), e.pow(&a, 4));
}

use proptest::prelude::*;
use wedd_core::catalog;
use wedd_core::ff::{make_field, ExtensionField, FieldElement};
use wedd_core::galg::GroupAlgebra;
use wedd_core::shoda::{cyclotomic_classes, field_multiplier};

fn fields() -> Vec<ExtensionField> {
    [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 8)]
        .iter()
        .map(|&(q, d)| make_field(q, d, None).unwrap())
        .collect()
}

fn field_and_codes(n: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let size = fields()[i].size();
        (Just(i), proptest::collection::vec(0..size, n))
    })
}

proptest! {
    #[test]
    fn field_axioms((i, codes) in field_and_codes(3)) {
        let f = &fields()[i];
        let [a, b, c] = [0, 1, 2].map(|j| f.element(codes[j]).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn trace_is_linear_and_frobenius_fixed((i, codes) in field_and_codes(2)) {
        let f = &fields()[i];
        let [a, b] = [0, 1].map(|j| f.element(codes[j]).unwrap());
        for m in (1..=f.degree()).filter(|m| f.degree().is_multiple_of(*m)) {
            let ta = f.galois_trace(a, m).unwrap();
            let tb = f.galois_trace(b, m).unwrap();
            prop_assert_eq!(f.galois_trace(f.add(a, b), m).unwrap(), f.add(ta, tb));
            prop_assert_eq!(f.frobenius(ta, m), ta);
        }
    }

    #[test]
    fn cyclotomic_classes_partition_units(k in 1u64..200, qi in 0usize..4) {
        let f = &fields()[[0, 3, 5, 7][qi]];
        prop_assume!(k % f.characteristic() as u64 != 0);
        let qm = field_multiplier(f, k);
        let o = wedd_core::arith::multiplicative_order(qm, k).unwrap();
        let classes = cyclotomic_classes(k, qm);
        let mut all: Vec<u64> = classes.iter().flat_map(|c| c.exponents().to_vec()).collect();
        all.sort_unstable();
        let units: Vec<u64> = (0..k).filter(|&j| wedd_core::arith::gcd(j, k) == 1).collect();
        prop_assert_eq!(all, units);
        for c in &classes {
            prop_assert_eq!(o % c.len() as u64, 0);
        }
    }

    #[test]
    fn group_algebra_is_associative(gi in 0usize..41, seed in proptest::collection::vec(0u64..9, 3 * 128)) {
        let g = &catalog::corpus()[gi];
        let f = make_field(3, 2, None).unwrap();
        let alg = GroupAlgebra::new(g, &f);
        let n = g.order();
        let mk = |off: usize| alg.from_coeffs((0..n).map(|i| f.element(seed[off + i]).unwrap()).collect()).unwrap();
        let (a, b, c) = (mk(0), mk(128), mk(256));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
        let x = gi % n;
        prop_assert_eq!(alg.conjugate(&alg.mul(&a, &b), x), alg.mul(&alg.conjugate(&a, x), &alg.conjugate(&b, x)));
    }
}

#[test]
fn element_two_split_everywhere() {
    for g in catalog::corpus() {
        if !g.is_nilpotent() {
            continue;
        }
        for x in 0..g.order() {
            let (x2, xo) = g.element_two_split(x);
            assert_eq!(g.mul(x2, xo), x);
            assert_eq!(g.mul(x2, xo), g.mul(xo, x2));
            assert!(g.element_order(x2).is_power_of_two());
            assert_eq!(g.element_order(xo) % 2, 1);
            assert_eq!(g.element_order(x2) * g.element_order(xo), g.element_order(x));
        }
    }
}

#[test]
fn quotients_are_homomorphic_and_transversals_cover() {
    for g in catalog::corpus() {
        for k in g.all_subgroups() {
            let rt = g.right_transversal(&k);
            assert_eq!(rt.len() * k.order(), g.order());
            if !g.is_normal(&k) {
                continue;
            }
            let q = g.quotient(&k).unwrap();
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(q.project(g.mul(x, y)), q.quotient.mul(q.project(x), q.project(y)));
                }
            }
        }
    }
}

#[test]
fn lagrange_and_sylow() {
    for g in catalog::corpus() {
        for h in g.all_subgroups() {
            assert_eq!(g.order() % h.order(), 0);
        }
        let sylow = g.sylow_decomposition().unwrap();
        assert_eq!(sylow.values().map(|s| s.order()).product::<usize>(), g.order());
    }
}

#[test]
fn sum_of_two_squares_for_odd_fields() {
    for f in fields().iter().filter(|f| f.characteristic() != 2) {
        for (x, y) in [
            f.sum_of_two_squares_minus_one().unwrap(),
            f.sum_of_two_squares_minus_one_fast().unwrap(),
        ] {
            assert!(!y.is_zero());
            assert_eq!(
                f.add(f.add(f.mul(x, x), f.mul(y, y)), FieldElement::ONE),
                FieldElement::ZERO
            );
        }
    }
}

#[test]
fn desk_scale_fields_are_sound() {
    for f in fields() {
        let g = f.generator();
        assert_eq!(f.order(g), f.size() - 1);
    }
}

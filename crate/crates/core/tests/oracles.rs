use wedd_core::catalog;
use wedd_core::ff::make_field;
use wedd_core::galg::{GroupAlgebra, TraceTable};
use wedd_core::shoda::{cyclotomic_classes, strong_shoda_pairs};

#[test]
fn m16_e_c_has_two_conjugates() {
    let m16 = catalog::modular(16);
    let f3 = make_field(3, 1, None).unwrap();
    let alg = GroupAlgebra::new(&m16, &f3);
    let h = m16.closure(&[1]);
    let classes = cyclotomic_classes(8, 3);
    let tt = TraceTable::new(&f3, 8).unwrap();
    let eps = alg.epsilon_c(&h, &m16.trivial(), 1, &classes[0], &tt).unwrap();
    let mut conjugates: Vec<_> = (0..16).map(|g| alg.conjugate(&eps, g)).collect();
    conjugates.sort();
    conjugates.dedup();
    assert_eq!(conjugates.len(), 2);
    assert_eq!(alg.centralizer_in_group(&eps), h);
    let other = alg.epsilon_c(&h, &m16.trivial(), 1, &classes[1], &tt).unwrap();
    assert!(conjugates.contains(&other));
}

#[test]
fn epsilon_c_supported_in_h() {
    let f5 = make_field(5, 1, None).unwrap();
    for g in [catalog::quaternion(16), catalog::dihedral(16), catalog::modular(16)] {
        let alg = GroupAlgebra::new(&g, &f5);
        for p in strong_shoda_pairs(&g) {
            let k = p.index();
            let tt = TraceTable::new(&f5, k).unwrap();
            for c in cyclotomic_classes(k, 5 % k) {
                let e = alg.epsilon_c(&p.h, &p.k, p.generator, &c, &tt).unwrap();
                assert!(alg.is_idempotent(&e));
                assert!(e.support().iter().all(|&x| p.h.contains(x)));
            }
            let avg = alg.averaging_idempotent(&p.h).unwrap();
            assert_eq!(avg.support(), p.h.elements());
        }
    }
}

#[test]
fn group_lattice_examples() {
    let d8 = catalog::dihedral(8);
    let reflection = d8.closure(&[4]);
    assert_eq!(d8.normalizer(&reflection).order(), 4);
    let rotation = d8.closure(&[1]);
    assert_eq!(d8.find_complement(&rotation).unwrap().order(), 2);

    let q8 = catalog::quaternion(8);
    assert!(q8.find_complement(&q8.closure(&[1])).is_none());
    let minimal = q8.minimal_normal_subgroups();
    assert_eq!(minimal.len(), 1);
    assert_eq!(minimal[0].order(), 2);
    let q = q8.quotient(&minimal[0]).unwrap();
    assert_eq!(q.quotient.order(), 4);
    assert!((1..4).all(|x| q.quotient.element_order(x) == 2));

    let c4 = catalog::cyclic(4);
    assert_eq!(c4.all_subgroups().len(), 3);
    let v4 = catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(2));
    assert_eq!(v4.minimal_normal_subgroups().len(), 3);
    assert!(!catalog::symmetric3().is_nilpotent());
    assert_eq!(c4.right_transversal(&c4.whole()), [0]);
}

#[test]
fn non_nilpotent_input_still_enumerates() {
    let s3 = catalog::symmetric3();
    let f5 = make_field(5, 1, None).unwrap();
    let alg = GroupAlgebra::new(&s3, &f5);
    let comps = wedd_core::shoda::central_decomposition(&alg, &strong_shoda_pairs(&s3)).unwrap();
    let total = alg.sum(comps.iter().map(|c| &c.e_c));
    assert_eq!(total, alg.one());
    let err = wedd_core::construct::construct_component(&alg, &comps[0]).unwrap_err();
    assert_eq!(err, wedd_core::Error::NotNilpotent);
}

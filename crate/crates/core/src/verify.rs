//! Independent checks of constructed idempotents, and measurement of each
//! component's shape `M_N(F_{q^{m d}})` by linear algebra alone.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::construct::MatrixUnits;
use crate::ff::FieldElement;
use crate::galg::{AlgebraElement, GroupAlgebra, Side};
use crate::linalg::{self, EchelonBasis};
use crate::shoda::{class_orbits, cyclotomic_classes, field_multiplier, StrongShodaPair, TraceCache};
use crate::{Error, Result};

/// Quadruples sampled when a matrix-unit grid is larger than 4x4.
pub const SAMPLED_QUADRUPLES: usize = 200;
/// Corners of at most this many elements are checked element by element.
pub const EXHAUSTIVE_CORNER_SIZE: u64 = 81;
const SAMPLE_SEED: u64 = 0x5eed;

fn fail<T>(msg: String) -> Result<T> {
    Err(Error::Verification(msg))
}

/// Measured `F`-dimensions: the ideal, its centre, and the derived `(N, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasuredShape {
    pub dimension: usize,
    pub center_dimension: usize,
    pub matrix_size: usize,
    pub field_degree: usize,
}

/// Each `e` central idempotent, pairwise orthogonal, summing to 1, with
/// two-sided dimensions adding up to `|G|`. Returns those dimensions.
pub fn check_central_decomposition(alg: &GroupAlgebra, es: &[AlgebraElement]) -> Result<Vec<usize>> {
    for (i, e) in es.iter().enumerate() {
        if e.is_zero() {
            return fail(format!("central idempotent {i} is zero"));
        }
        if !alg.is_idempotent(e) {
            return fail(format!("central idempotent {i} is not idempotent"));
        }
        if !alg.is_central(e) {
            return fail(format!("central idempotent {i} is not central"));
        }
        for (j, f) in es.iter().enumerate().skip(i + 1) {
            if !alg.mul(e, f).is_zero() {
                return fail(format!("central idempotents {i} and {j} are not orthogonal"));
            }
        }
    }
    if alg.sum(es.iter()) != alg.one() {
        return fail("central idempotents do not sum to 1".into());
    }
    let dims: Vec<usize> = es.iter().map(|e| alg.ideal_dimension(e, Side::TwoSided)).collect();
    let total: usize = dims.iter().sum();
    if total != alg.dimension() {
        return fail(format!("component dimensions sum to {total}, not {}", alg.dimension()));
    }
    Ok(dims)
}

/// `D = dim F G e`, `Z = dim Z(F G e)` from the kernel of
/// `α -> (α s - s α)_s` over the generators `s`, then `d = Z`, `N = sqrt(D/d)`.
pub fn measure_shape(alg: &GroupAlgebra, e: &AlgebraElement) -> Result<MeasuredShape> {
    let f = alg.field;
    let basis = alg.ideal_basis(e, Side::TwoSided);
    let dim = basis.rank();
    let n = alg.dimension();
    let gens = alg.group.generators();
    // columns: one per basis vector, stacked commutators over all generators
    let columns: Vec<Vec<FieldElement>> = basis
        .rows()
        .iter()
        .map(|row| {
            let v = alg.from_coeffs(row.clone()).expect("ideal rows live in F G");
            let mut col = Vec::with_capacity(n * gens.len());
            for &s in gens {
                let c = alg.sub(&alg.right_mul_group(&v, s), &alg.left_mul_group(s, &v));
                col.extend_from_slice(c.coeffs());
            }
            col
        })
        .collect();
    let height = n * gens.len();
    let rows = (0..height).map(|r| columns.iter().map(|c| c[r]).collect::<Vec<_>>());
    let center = linalg::kernel(f, dim, rows).len();
    if center == 0 || !dim.is_multiple_of(center) {
        return fail(format!("centre dimension {center} does not divide {dim}"));
    }
    let sq = dim / center;
    let size = sq.isqrt();
    if size * size != sq {
        return fail(format!("D/d = {sq} is not a square; e is not primitive central"));
    }
    Ok(MeasuredShape {
        dimension: dim,
        center_dimension: center,
        matrix_size: size,
        field_degree: center,
    })
}

/// `N` non-zero pairwise orthogonal idempotents summing to `e_C`.
pub fn check_idempotent_set(
    alg: &GroupAlgebra,
    ids: &[AlgebraElement],
    e_c: &AlgebraElement,
    matrix_size: usize,
) -> Result<()> {
    if ids.len() != matrix_size {
        return fail(format!("{} idempotents for matrix size {matrix_size}", ids.len()));
    }
    for (i, x) in ids.iter().enumerate() {
        if x.is_zero() {
            return fail(format!("idempotent {i} is zero"));
        }
        if !alg.is_idempotent(x) {
            return fail(format!("element {i} is not idempotent"));
        }
        for (j, y) in ids.iter().enumerate() {
            if i != j && !alg.mul(x, y).is_zero() {
                return fail(format!("idempotents {i} and {j} are not orthogonal"));
            }
        }
    }
    if alg.sum(ids.iter()) != *e_c {
        return fail("idempotents do not sum to e_C".into());
    }
    Ok(())
}

/// `E_{ij} E_{kl} = δ_{jk} E_{il}` (all quadruples when `N <= 4`, else a
/// fixed-seed sample) and `Σ E_{ii} = e_C`.
pub fn check_matrix_units(alg: &GroupAlgebra, units: &MatrixUnits, e_c: &AlgebraElement) -> Result<usize> {
    let n = units.size();
    let check = |i: usize, j: usize, k: usize, l: usize| -> Result<()> {
        let prod = alg.mul(units.get(i, j), units.get(k, l));
        let ok = if j == k {
            prod == *units.get(i, l)
        } else {
            prod.is_zero()
        };
        if ok {
            Ok(())
        } else {
            fail(format!("E_{i}{j} E_{k}{l} relation fails"))
        }
    };
    let mut checked = 0;
    if n <= 4 {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        check(i, j, k, l)?;
                        checked += 1;
                    }
                }
            }
        }
    } else {
        let mut rng = SmallRng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLED_QUADRUPLES {
            let (i, j, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            // bias half the draws towards the non-trivial j == k branch
            let k = if rng.gen_bool(0.5) { j } else { rng.gen_range(0..n) };
            check(i, j, k, l)?;
            checked += 1;
        }
    }
    let diag = alg.sum((0..n).map(|i| units.get(i, i)));
    if diag != *e_c {
        return fail("diagonal matrix units do not sum to e_C".into());
    }
    Ok(checked)
}

/// Lemma parts 1-2: `ε(H,K) = Σ_C ε_C(H,K)` and
/// `e(G,H,K) = Σ_{C in R} e_C(G,H,K)` for orbit representatives `R`.
pub fn check_epsilon_projection(alg: &GroupAlgebra, pair: &StrongShodaPair, cache: &mut TraceCache) -> Result<()> {
    let k = pair.index();
    let classes = cyclotomic_classes(k, field_multiplier(alg.field, k));
    let traces = cache.get(alg.field, k)?;
    let eps = alg.epsilon(&pair.h, &pair.k)?;
    let parts: Vec<AlgebraElement> = classes
        .iter()
        .map(|c| alg.epsilon_c(&pair.h, &pair.k, pair.generator, c, traces))
        .collect::<Result<_>>()?;
    if alg.sum(parts.iter()) != eps {
        return fail(format!(
            "ε(H,K) differs from Σ ε_C for H = {:?}, K = {:?}",
            pair.h.elements(),
            pair.k.elements()
        ));
    }
    let e = alg.sum_of_distinct_conjugates(&eps);
    let reps: Vec<AlgebraElement> = class_orbits(alg.group, pair, &classes)
        .iter()
        .map(|orbit| alg.sum_of_distinct_conjugates(&parts[orbit[0]]))
        .collect();
    if alg.sum(reps.iter()) != e {
        return fail(format!(
            "e(G,H,K) differs from Σ_R e_C for H = {:?}, K = {:?}",
            pair.h.elements(),
            pair.k.elements()
        ));
    }
    Ok(())
}

/// ε_C computed from every exponent of its class agrees.
pub fn check_class_independence(
    alg: &GroupAlgebra,
    pair: &StrongShodaPair,
    class: &crate::shoda::CyclotomicClass,
    cache: &mut TraceCache,
) -> Result<()> {
    let traces = cache.get(alg.field, pair.index())?;
    let first = alg.epsilon_c(&pair.h, &pair.k, pair.generator, class, traces)?;
    for &j in class.exponents() {
        if alg.epsilon_c_with_exponent(&pair.h, &pair.k, pair.generator, class, j, traces)? != first {
            return fail(format!("ε_C depends on the exponent {j}"));
        }
    }
    Ok(())
}

/// How the corner `f F G f` was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub dimension: usize,
    pub exhaustive: bool,
    pub elements_checked: u64,
}

/// `f F G f` is commutative of dimension `degree` and every non-zero element
/// is a unit: exhaustive when the corner has at most 81 elements, otherwise
/// on a fixed-seed sample.
pub fn check_corner_ring(alg: &GroupAlgebra, f: &AlgebraElement, degree: usize) -> Result<CornerReport> {
    let field = alg.field;
    let mut basis = EchelonBasis::new(field, alg.dimension());
    for g in 0..alg.dimension() {
        let v = alg.mul(&alg.right_mul_group(f, g), f);
        basis.insert(v.coeffs());
    }
    let dim = basis.rank();
    if dim != degree {
        return fail(format!("corner dimension {dim}, expected {degree}"));
    }
    let elems: Vec<AlgebraElement> = basis
        .rows()
        .iter()
        .map(|r| alg.from_coeffs(r.clone()).expect("corner rows live in F G"))
        .collect();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            if alg.mul(x, y) != alg.mul(y, x) {
                return fail("corner ring is not commutative".into());
            }
        }
    }
    let q = field.size();
    let size = q.checked_pow(dim as u32).unwrap_or(u64::MAX);
    let combine = |coords: &[FieldElement]| -> AlgebraElement {
        let mut acc = alg.zero();
        for (c, b) in coords.iter().zip(&elems) {
            if !c.is_zero() {
                acc = alg.add(&acc, &alg.scale(*c, b));
            }
        }
        acc
    };
    // x is a unit iff multiplication by x is injective on the corner
    let is_unit = |x: &AlgebraElement| -> bool {
        let images = elems.iter().map(|b| alg.mul(x, b).into_coeffs());
        linalg::rank(field, alg.dimension(), images) == dim
    };
    let exhaustive = size <= EXHAUSTIVE_CORNER_SIZE;
    let mut checked = 0;
    if exhaustive {
        for code in 1..size {
            let coords: Vec<FieldElement> = (0..dim)
                .map(|i| field.element((code / q.pow(i as u32)) % q).expect("in range"))
                .collect();
            if !is_unit(&combine(&coords)) {
                return fail(format!("corner element {code} is a zero divisor"));
            }
            checked += 1;
        }
    } else {
        let mut rng = SmallRng::seed_from_u64(SAMPLE_SEED);
        while checked < 64 {
            let coords: Vec<FieldElement> = (0..dim)
                .map(|_| field.element(rng.gen_range(0..q)).expect("in range"))
                .collect();
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            if !is_unit(&combine(&coords)) {
                return fail("sampled corner element is a zero divisor".into());
            }
            checked += 1;
        }
    }
    if !is_unit(f) {
        return fail("corner identity is degenerate".into());
    }
    Ok(CornerReport {
        dimension: dim,
        exhaustive,
        elements_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::construct::{construct_component, matrix_units};
    use crate::ff::make_field;
    use crate::shoda::{central_decomposition, strong_shoda_pairs};

    #[test]
    fn c7_over_f2() {
        let f2 = make_field(2, 1, None).unwrap();
        let c7 = catalog::cyclic(7);
        let alg = GroupAlgebra::new(&c7, &f2);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&c7)).unwrap();
        let es: Vec<AlgebraElement> = comps.iter().map(|c| c.e_c.clone()).collect();
        assert_eq!(check_central_decomposition(&alg, &es).unwrap(), [3, 3, 1]);
    }

    #[test]
    fn shapes() {
        let f3 = make_field(3, 1, None).unwrap();
        let q8 = catalog::quaternion(8);
        let alg = GroupAlgebra::new(&q8, &f3);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&q8)).unwrap();
        let shapes: Vec<(usize, usize)> = comps
            .iter()
            .map(|c| {
                let s = measure_shape(&alg, &c.e_c).unwrap();
                (s.matrix_size, s.field_degree)
            })
            .collect();
        assert_eq!(shapes.iter().filter(|s| **s == (2, 1)).count(), 1);
        assert_eq!(shapes.iter().filter(|s| **s == (1, 1)).count(), 4);

        let f2 = make_field(2, 1, None).unwrap();
        let c3 = catalog::cyclic(3);
        let alg = GroupAlgebra::new(&c3, &f2);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&c3)).unwrap();
        let s = measure_shape(&alg, &comps[0].e_c).unwrap();
        assert_eq!((s.matrix_size, s.field_degree), (1, 2));
        let avg = alg.averaging_idempotent(&c3.whole()).unwrap();
        let s = measure_shape(&alg, &avg).unwrap();
        assert_eq!((s.matrix_size, s.field_degree), (1, 1));
    }

    #[test]
    fn q8_full_check() {
        let f3 = make_field(3, 1, None).unwrap();
        let q8 = catalog::quaternion(8);
        let alg = GroupAlgebra::new(&q8, &f3);
        let pairs = strong_shoda_pairs(&q8);
        let mut cache = TraceCache::new();
        for p in &pairs {
            check_epsilon_projection(&alg, p, &mut cache).unwrap();
        }
        for c in central_decomposition(&alg, &pairs).unwrap() {
            let shape = measure_shape(&alg, &c.e_c).unwrap();
            let set = construct_component(&alg, &c).unwrap();
            check_idempotent_set(&alg, &set.idempotents, &set.e_c, shape.matrix_size).unwrap();
            let mu = matrix_units(&alg, &set);
            check_matrix_units(&alg, &mu, &c.e_c).unwrap();
            for i in 0..mu.size() {
                let r = check_corner_ring(&alg, mu.get(i, i), shape.field_degree).unwrap();
                assert!(r.exhaustive);
            }
        }
    }

    #[test]
    fn tampered_set_is_rejected() {
        let f3 = make_field(3, 1, None).unwrap();
        let q8 = catalog::quaternion(8);
        let alg = GroupAlgebra::new(&q8, &f3);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&q8)).unwrap();
        let c = comps.iter().find(|c| c.shape.matrix_size == 2).unwrap();
        let mut set = construct_component(&alg, c).unwrap();
        set.idempotents[1] = set.idempotents[0].clone();
        assert!(matches!(
            check_idempotent_set(&alg, &set.idempotents, &set.e_c, 2),
            Err(Error::Verification(_))
        ));
    }
}

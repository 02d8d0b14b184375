//! Complete sets of orthogonal primitive idempotents and matrix units of a
//! simple component `F G e_C`, for nilpotent `G`.
//!
//! Everything is fitted inside `E/K`; lifts back to `G` are the least coset
//! members. Subgroup averages use full preimages, which is harmless since
//! `K~` is central in `F E` and absorbed by `ε_C`.

use alloc::format;
use alloc::vec::Vec;

use crate::ff::FieldElement;
use crate::galg::{AlgebraElement, GroupAlgebra};
use crate::groups::{FiniteGroup, QuotientGroup, Subgroup};
use crate::shoda::Component;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    CyclicGEqualsH,
    Case1i,
    Case1ii,
    Case2,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::CyclicGEqualsH => "cyclic-G-equals-H",
            CaseTag::Case1i => "case1i",
            CaseTag::Case1ii => "case1ii",
            CaseTag::Case2 => "case2",
        }
    }
}

/// The fitted presentation of `E_2/K`, with elements lifted to `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseWitness {
    pub tag: CaseTag,
    pub a2: usize,
    pub a2_odd: usize,
    pub b2: Option<usize>,
    pub c2: Option<usize>,
    pub b2_odd: usize,
    /// Full preimage of the complement `M_2/K` (case 1).
    pub m2: Option<Subgroup>,
    /// `|H_2/K| = 2^n`.
    pub n: u32,
    /// `|b_2 K| = 2^k`.
    pub k: u32,
    pub r: Option<u64>,
    /// `[E_2:H_2]`.
    pub d: usize,
    pub x: Option<FieldElement>,
    pub y: Option<FieldElement>,
}

/// `E/K` with its 2-parts and 2'-parts.
#[derive(Clone, Debug)]
pub struct SplitEK {
    pub e: Subgroup,
    pub quotient: QuotientGroup,
    pub e2: Subgroup,
    pub e2_odd: Subgroup,
    pub h2: Subgroup,
    pub h2_odd: Subgroup,
    /// Images of `a_2`, `a_{2'}` and `b_{2'}` in `E/K`.
    pub a2_bar: usize,
    pub a2_odd_bar: usize,
    pub b2_odd_bar: usize,
}

pub fn split_ek(g: &FiniteGroup, comp: &Component) -> Result<SplitEK> {
    let e = comp.shape.e.clone();
    let quotient = g.subquotient(&e, &comp.pair.k)?;
    let q = &quotient.quotient;
    let (e2, e2_odd) = q.two_part_split()?;
    let a_bar = quotient.project(comp.pair.generator);
    let (a2_bar, a2_odd_bar) = q.element_two_split(a_bar);
    let h2 = q.closure(&[a2_bar]);
    let h2_odd = q.closure(&[a2_odd_bar]);
    let (_, b2_odd_bar) = q
        .find_cyclic_complement_in(&e2_odd, &h2_odd)
        .ok_or_else(|| Error::Construction("no cyclic complement of <a_2'> in E_2'/K".into()))?;
    Ok(SplitEK {
        e,
        quotient,
        e2,
        e2_odd,
        h2,
        h2_odd,
        a2_bar,
        a2_odd_bar,
        b2_odd_bar,
    })
}

fn log2_exact(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::Construction(format!("{n} is not a power of 2")))
    }
}

/// `r` with `x^y = x^r` inside `<x>`, if conjugation by `y` normalises `<x>`.
fn conj_exponent(q: &FiniteGroup, x: usize, y: usize) -> Option<u64> {
    let target = q.conj(x, y);
    let ox = q.element_order(x);
    let mut p = 0;
    for r in 0..ox {
        if p == target {
            return Some(r as u64);
        }
        p = q.mul(p, x);
    }
    None
}

/// Fits `<a,b,c | c^2 = c2_square, a^b = a^r (r = 1 mod 4), a^c = a^{-1}, [b,c] = 1>`
/// inside `within`, with `<b> ∩ <a> = 1` and `|<b>| = |within| / (2 |a|)`.
fn fit_bc(q: &FiniteGroup, within: &Subgroup, a: usize, c2_square: usize) -> Option<(usize, usize, u64)> {
    let oa = q.element_order(a);
    let ha = q.closure(&[a]);
    let b_order = within.order() / (2 * oa);
    let a_inv = q.inv(a);
    let cs: Vec<usize> = within
        .elements()
        .iter()
        .copied()
        .filter(|&c| q.mul(c, c) == c2_square && q.conj(a, c) == a_inv)
        .collect();
    for &b in within.elements() {
        if q.element_order(b) != b_order || ha.elements().iter().any(|&x| x != 0 && q.closure(&[b]).contains(x)) {
            continue;
        }
        let Some(r) = conj_exponent(q, a, b) else { continue };
        if oa >= 4 && r % 4 != 1 {
            continue;
        }
        for &c in &cs {
            if q.mul(b, c) == q.mul(c, b) && q.closure(&[a, b, c]).order() == within.order() {
                return Some((b, c, r));
            }
        }
    }
    None
}

pub fn classify_case(alg: &GroupAlgebra, comp: &Component, split: &SplitEK) -> Result<CaseWitness> {
    let g = alg.group;
    let qg = &split.quotient;
    let q = &qg.quotient;
    let d = split.e2.order() / split.h2.order();
    let n = log2_exact(split.h2.order())?;
    let a2 = qg.lift(split.a2_bar);
    let mut w = CaseWitness {
        tag: CaseTag::Case1i,
        a2,
        a2_odd: qg.lift(split.a2_odd_bar),
        b2: None,
        c2: None,
        b2_odd: qg.lift(split.b2_odd_bar),
        m2: None,
        n,
        k: 0,
        r: None,
        d,
        x: None,
        y: None,
    };
    let complement = q
        .find_cyclic_complement_in(&split.e2, &split.h2)
        .map(|(m, b)| (m, Some(b)))
        .or_else(|| q.find_complement_in(&split.e2, &split.h2).map(|m| (m, None)));
    match complement {
        Some((m, Some(b))) => {
            let r = conj_exponent(q, split.a2_bar, b)
                .ok_or_else(|| Error::Construction("complement does not normalise <a_2>".into()))?;
            let central = n <= 1 || {
                let z = q.pow(split.a2_bar, 1 << (n - 2));
                split.e2.elements().iter().all(|&x| q.mul(x, z) == q.mul(z, x))
            };
            w.tag = if central { CaseTag::Case1i } else { CaseTag::Case1ii };
            w.k = log2_exact(m.order())?;
            w.b2 = Some(qg.lift(b));
            w.r = Some(r);
            w.m2 = Some(qg.preimage(g, &m));
        }
        Some((m, None)) => {
            let (b, c, r) = fit_bc(q, &split.e2, split.a2_bar, 0)
                .ok_or_else(|| Error::Construction("non-cyclic complement fits no presentation".into()))?;
            w.tag = CaseTag::Case1ii;
            w.k = log2_exact(q.element_order(b))?;
            w.b2 = Some(qg.lift(b));
            w.c2 = Some(qg.lift(c));
            w.r = Some(r);
            w.m2 = Some(qg.preimage(g, &m));
        }
        None => {
            if n < 2 {
                return Err(Error::Construction("no complement with |H_2/K| < 4".into()));
            }
            let top = q.pow(split.a2_bar, 1 << (n - 1));
            let (b, c, r) = fit_bc(q, &split.e2, split.a2_bar, top)
                .ok_or_else(|| Error::Construction("E_2/K fits no quaternion-type presentation".into()))?;
            let (x, y) = alg.field.sum_of_two_squares_minus_one()?;
            w.tag = CaseTag::Case2;
            w.k = log2_exact(q.element_order(b))?;
            w.b2 = Some(qg.lift(b));
            w.c2 = Some(qg.lift(c));
            w.r = Some(r);
            w.x = Some(x);
            w.y = Some(y);
        }
    }
    if w.tag == CaseTag::Case1ii && n < 2 {
        return Err(Error::Construction("case 1(ii) needs |H_2/K| >= 4".into()));
    }
    if comp.pair.h.order() == g.order() {
        w.tag = CaseTag::CyclicGEqualsH;
    }
    Ok(w)
}

/// `β_{e_C}`, the ordered transversal `T_{e_C}` and the conjugates `β^t`.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    pub e_c: AlgebraElement,
    pub beta: AlgebraElement,
    pub transversal: Vec<usize>,
    pub idempotents: Vec<AlgebraElement>,
    pub witness: CaseWitness,
}

pub fn build_beta_and_t(
    alg: &GroupAlgebra,
    comp: &Component,
    split: &SplitEK,
    w: &CaseWitness,
) -> Result<IdempotentSet> {
    let g = alg.group;
    let f = alg.field;
    let qg = &split.quotient;

    let b_odd = qg.preimage(g, &qg.quotient.closure(&[split.b2_odd_bar]));
    let b_odd_avg = alg.averaging_idempotent(&b_odd)?;

    let (beta2, t2): (AlgebraElement, Vec<usize>) = match w.tag {
        CaseTag::CyclicGEqualsH | CaseTag::Case1i | CaseTag::Case1ii => {
            let m2 =
                w.m2.as_ref()
                    .ok_or_else(|| Error::Construction("case 1 without complement".into()))?;
            let beta2 = alg.averaging_idempotent(m2)?;
            let t2 = if w.tag == CaseTag::Case1ii {
                let half = (w.d / 2) as i64;
                let shift = 1i64 << (w.n - 2);
                (0..half).chain(shift..shift + half).map(|i| g.pow(w.a2, i)).collect()
            } else {
                (0..w.d as i64).map(|i| g.pow(w.a2, i)).collect()
            };
            (beta2, t2)
        }
        CaseTag::Case2 => {
            let b2 = w.b2.expect("case 2 witness");
            let c2 = w.c2.expect("case 2 witness");
            let (x, y) = (w.x.expect("case 2 x"), w.y.expect("case 2 y"));
            let b_pre = qg.preimage(g, &qg.quotient.closure(&[qg.project(b2)]));
            let half = f.inv(f.from_int(2)).ok_or(Error::EvenCharacteristic)?;
            let z = g.pow(w.a2, 1 << (w.n - 2));
            let mut inner = alg.one();
            inner = alg.add(&inner, &alg.scale(x, &alg.basis(z)));
            inner = alg.add(&inner, &alg.scale(y, &alg.basis(g.mul(z, c2))));
            let beta2 = alg.mul(&alg.averaging_idempotent(&b_pre)?, &alg.scale(half, &inner));
            let span = 1i64 << w.k;
            let mut t2: Vec<usize> = (0..span).map(|i| g.pow(w.a2, i)).collect();
            t2.extend((0..span).map(|i| g.mul(c2, g.pow(w.a2, i))));
            (beta2, t2)
        }
    };

    let odd_index = split.e2_odd.order() / split.h2_odd.order();
    let t_odd: Vec<usize> = (0..odd_index as i64).map(|i| g.pow(w.a2_odd, i)).collect();
    let t_e = g.right_transversal(&split.e);

    let mut transversal = Vec::with_capacity(t_odd.len() * t2.len() * t_e.len());
    for &x in &t_odd {
        for &y in &t2 {
            for &z in &t_e {
                transversal.push(g.mul(g.mul(x, y), z));
            }
        }
    }
    let beta = alg.mul(&alg.mul(&b_odd_avg, &beta2), &comp.epsilon_c);
    let idempotents: Vec<AlgebraElement> = transversal.iter().map(|&t| alg.conjugate(&beta, t)).collect();
    if let Some(i) = idempotents.iter().position(|x| x.is_zero()) {
        return Err(Error::Construction(format!("conjugate {i} of beta vanishes")));
    }
    Ok(IdempotentSet {
        e_c: comp.e_c.clone(),
        beta,
        transversal,
        idempotents,
        witness: w.clone(),
    })
}

/// The whole pipeline for one component.
pub fn construct_component(alg: &GroupAlgebra, comp: &Component) -> Result<IdempotentSet> {
    if !alg.group.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let split = split_ek(alg.group, comp)?;
    let w = classify_case(alg, comp, &split)?;
    build_beta_and_t(alg, comp, &split, &w)
}

/// `E_{tt'} = t^{-1} β t'` over `T × T`, row-major in transversal order.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    pub transversal: Vec<usize>,
    pub units: Vec<Vec<AlgebraElement>>,
}

impl MatrixUnits {
    pub fn size(&self) -> usize {
        self.transversal.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.units[i][j]
    }
}

pub fn matrix_units(alg: &GroupAlgebra, set: &IdempotentSet) -> MatrixUnits {
    let g = alg.group;
    let units = set
        .transversal
        .iter()
        .map(|&t| {
            let left = alg.left_mul_group(g.inv(t), &set.beta);
            set.transversal.iter().map(|&u| alg.right_mul_group(&left, u)).collect()
        })
        .collect();
    MatrixUnits {
        transversal: set.transversal.clone(),
        units,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::make_field;
    use crate::shoda::{central_decomposition, strong_shoda_pairs};

    fn components(g: &FiniteGroup, q: u32, m: usize) -> (crate::ff::ExtensionField, Vec<Component>) {
        let f = make_field(q, m, None).unwrap();
        let comps = {
            let alg = GroupAlgebra::new(g, &f);
            central_decomposition(&alg, &strong_shoda_pairs(g)).unwrap()
        };
        (f, comps)
    }

    fn check_set(alg: &GroupAlgebra, set: &IdempotentSet) {
        let ids = &set.idempotents;
        for (i, x) in ids.iter().enumerate() {
            assert!(alg.is_idempotent(x));
            for (j, y) in ids.iter().enumerate() {
                if i != j {
                    assert!(alg.mul(x, y).is_zero(), "{i} {j}");
                }
            }
        }
        assert_eq!(alg.sum(ids.iter()), set.e_c);
    }

    #[test]
    fn q8_over_f3_is_case2() {
        let q8 = catalog::quaternion(8);
        let (f, comps) = components(&q8, 3, 1);
        let alg = GroupAlgebra::new(&q8, &f);
        let big: Vec<&Component> = comps.iter().filter(|c| c.shape.matrix_size == 2).collect();
        assert_eq!(big.len(), 1);
        let set = construct_component(&alg, big[0]).unwrap();
        assert_eq!(set.witness.tag, CaseTag::Case2);
        assert_eq!((set.witness.n, set.witness.k), (2, 0));
        assert_eq!(
            (set.witness.x, set.witness.y),
            (Some(f.from_int(1)), Some(f.from_int(1)))
        );
        assert_eq!(set.idempotents.len(), 2);
        check_set(&alg, &set);
        let mu = matrix_units(&alg, &set);
        assert_eq!(alg.mul(mu.get(0, 1), mu.get(1, 0)), *mu.get(0, 0));
    }

    #[test]
    fn d8_over_f3_is_case1ii() {
        let d8 = catalog::dihedral(8);
        let (f, comps) = components(&d8, 3, 1);
        let alg = GroupAlgebra::new(&d8, &f);
        let big = comps.iter().find(|c| c.shape.matrix_size == 2).unwrap();
        let set = construct_component(&alg, big).unwrap();
        assert_eq!(set.witness.tag, CaseTag::Case1ii);
        assert_eq!(set.witness.d, 2);
        assert_eq!(set.transversal, [0, 1]);
        check_set(&alg, &set);
    }

    #[test]
    fn cyclic_components_are_single() {
        let c12 = catalog::cyclic(12);
        let (f, comps) = components(&c12, 5, 1);
        let alg = GroupAlgebra::new(&c12, &f);
        for c in &comps {
            let set = construct_component(&alg, c).unwrap();
            assert_eq!(set.witness.tag, CaseTag::CyclicGEqualsH);
            assert_eq!(set.idempotents, core::slice::from_ref(&c.e_c));
        }
    }

    #[test]
    fn c12_split() {
        let c12 = catalog::cyclic(12);
        let (_, comps) = components(&c12, 5, 1);
        let faithful = comps.iter().find(|c| c.pair.k.is_trivial()).unwrap();
        let split = split_ek(&c12, faithful).unwrap();
        assert_eq!(split.quotient.lift(split.a2_bar), 9);
        assert_eq!(split.quotient.lift(split.a2_odd_bar), 4);
    }
}

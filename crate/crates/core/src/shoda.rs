//! Strong Shoda pairs, `q^m`-cyclotomic classes, `E_G(H/K)` and the
//! predicted shape of each simple component.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::ff::ExtensionField;
use crate::galg::{AlgebraElement, GroupAlgebra, TraceTable};
use crate::groups::{FiniteGroup, QuotientGroup, Subgroup};
use crate::{Error, Result};

/// An orbit of units modulo `k` under multiplication by `q^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclotomicClass {
    modulus: u64,
    exponents: Vec<u64>,
}

impl CyclotomicClass {
    /// Validates closure and coprimality.
    pub fn new(modulus: u64, mut exponents: Vec<u64>, qm: u64) -> Result<Self> {
        exponents.sort_unstable();
        exponents.dedup();
        if modulus == 0 || exponents.is_empty() {
            return Err(Error::InvalidClass("empty class".into()));
        }
        for &j in &exponents {
            if j >= modulus || arith::gcd(j, modulus) != 1 {
                return Err(Error::InvalidClass(format!("{j} is not a unit mod {modulus}")));
            }
            if exponents
                .binary_search(&arith::mul_mod(j, qm % modulus, modulus))
                .is_err()
            {
                return Err(Error::InvalidClass(format!("not closed under x{qm} mod {modulus}")));
            }
        }
        Ok(CyclotomicClass { modulus, exponents })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted ascending.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn representative(&self) -> u64 {
        self.exponents[0]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The class `s C`.
    pub fn scaled(&self, s: u64) -> CyclotomicClass {
        let mut exponents: Vec<u64> = self
            .exponents
            .iter()
            .map(|&j| arith::mul_mod(j, s, self.modulus))
            .collect();
        exponents.sort_unstable();
        CyclotomicClass {
            modulus: self.modulus,
            exponents,
        }
    }
}

/// Orbits of `{j in [0,k) : gcd(j,k) = 1}` under `j -> j q^m`, ordered by
/// least member. For `k = 1` this is the single class `{0}`.
pub fn cyclotomic_classes(k: u64, qm: u64) -> Vec<CyclotomicClass> {
    let mult = qm % k;
    let mut seen = vec![false; k as usize];
    let mut out = Vec::new();
    for j in 0..k {
        if seen[j as usize] || arith::gcd(j, k) != 1 {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = j;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = arith::mul_mod(x, mult, k);
        }
        orbit.sort_unstable();
        out.push(CyclotomicClass {
            modulus: k,
            exponents: orbit,
        });
    }
    out
}

/// `q^m mod k` for the base field.
pub fn field_multiplier(field: &ExtensionField, k: u64) -> u64 {
    arith::pow_mod(field.characteristic() as u64, field.degree() as u64, k)
}

/// A pair satisfying (SS1)-(SS3).
#[derive(Clone, Debug)]
pub struct StrongShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    /// `H/K` as a group.
    pub quotient: QuotientGroup,
    /// Least element of `H` whose coset generates `H/K`.
    pub generator: usize,
    pub normalizer_of_k: Subgroup,
}

impl StrongShodaPair {
    /// `[H:K]`.
    pub fn index(&self) -> u64 {
        (self.h.order() / self.k.order()) as u64
    }

    fn sort_key(&self) -> (usize, usize, &[usize], &[usize]) {
        (self.h.order(), self.k.order(), self.h.elements(), self.k.elements())
    }
}

/// Integer multiple of `ε(H,K)` in `ℤ G`: the product of
/// `X_M = (|M|/|K|) 1_K - 1_M` over minimal normal `M/K`, or `1_K` if `H = K`.
fn scaled_epsilon(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<i128> {
    let mut indicator_k = vec![0i128; g.order()];
    for &x in k.elements() {
        indicator_k[x] = 1;
    }
    if h == k {
        return indicator_k;
    }
    let mut acc = indicator_k.clone();
    for m in g.minimal_normal_over(h, k) {
        let ratio = (m.order() / k.order()) as i128;
        let mut factor = vec![0i128; g.order()];
        for &x in k.elements() {
            factor[x] += ratio;
        }
        for &x in m.elements() {
            factor[x] -= 1;
        }
        acc = int_mul(g, &acc, &factor);
        let content = acc.iter().fold(0i128, |c, &x| gcd_i128(c, x));
        if content > 1 {
            for x in acc.iter_mut() {
                *x /= content;
            }
        }
    }
    acc
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn int_mul(g: &FiniteGroup, a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; g.order()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[g.mul(i, j)] += x * y;
            }
        }
    }
    out
}

/// (SS1) and (SS2) for `K <= H`; returns `H/K` and its generator.
fn check_ss1_ss2(g: &FiniteGroup, h: &Subgroup, k: &Subgroup, n: &Subgroup) -> Option<(QuotientGroup, usize)> {
    if !k.is_subset(h) || !h.is_subset(n) || !g.is_normal_in(n, h) {
        return None;
    }
    let quotient = g.subquotient(h, k).ok()?;
    let gen_q = quotient.quotient.is_cyclic(&quotient.quotient.whole())?;
    let a = quotient.lift(gen_q);
    // H/K is maximal abelian in N/K iff its centraliser there is itself.
    let self_centralizing = n.elements().iter().all(|&x| {
        let commutator = g.mul(g.inv(a), g.conj(a, x));
        !k.contains(commutator) || h.contains(x)
    });
    self_centralizing.then_some((quotient, a))
}

/// Tests (SS1)-(SS3) for a single pair.
pub fn strong_shoda_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<StrongShodaPair> {
    let n = g.normalizer(k);
    let (quotient, generator) = check_ss1_ss2(g, h, k, &n)?;
    if n.order() != g.order() {
        let eps = scaled_epsilon(g, h, k);
        for t in g.right_transversal(&n).into_iter().skip(1) {
            let conj: Vec<i128> = {
                let mut c = vec![0i128; g.order()];
                for (x, &v) in eps.iter().enumerate() {
                    c[g.conj(x, t)] = v;
                }
                c
            };
            if int_mul(g, &eps, &conj).iter().any(|&v| v != 0) {
                return None;
            }
        }
    }
    Some(StrongShodaPair {
        h: h.clone(),
        k: k.clone(),
        quotient,
        generator,
        normalizer_of_k: n,
    })
}

/// Every strong Shoda pair of `g`, ordered by `(|H|, |K|, H, K)`.
pub fn strong_shoda_pairs(g: &FiniteGroup) -> Vec<StrongShodaPair> {
    let subgroups = g.all_subgroups();
    let mut pairs = Vec::new();
    for k in &subgroups {
        let n = g.normalizer(k);
        for h in &subgroups {
            if h.order() % k.order() != 0 || !h.is_subset(&n) {
                continue;
            }
            if let Some(p) = strong_shoda_pair(g, h, k) {
                pairs.push(p);
            }
        }
    }
    pairs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    pairs
}

/// `(g, s)` for each `g in N_G(H) ∩ N_G(K)`, where `a^g = a^s` in `H/K`.
pub fn conjugation_multipliers(g: &FiniteGroup, pair: &StrongShodaPair) -> Vec<(usize, u64)> {
    let q = &pair.quotient;
    let k = pair.index();
    let a_bar = q.project(pair.generator);
    let mut powers = vec![0u64; q.quotient.order()];
    let mut x = 0;
    for s in 0..k {
        powers[x] = s;
        x = q.quotient.mul(x, a_bar);
    }
    let nh = g.normalizer(&pair.h);
    let both = g.intersection(&nh, &pair.normalizer_of_k);
    both.elements()
        .iter()
        .map(|&t| (t, powers[q.project(g.conj(pair.generator, t))]))
        .collect()
}

/// `E_G(H/K)`: elements of `N_G(H) ∩ N_G(K)` whose action on `H/K` fixes the
/// cyclotomic class of a generator. Computed for every generator class and
/// required to agree.
pub fn stabilizer_e(g: &FiniteGroup, pair: &StrongShodaPair, classes: &[CyclotomicClass]) -> Result<Subgroup> {
    let multipliers = conjugation_multipliers(g, pair);
    let mut result: Option<Vec<usize>> = None;
    for c in classes {
        let els: Vec<usize> = multipliers
            .iter()
            .filter(|&&(_, s)| c.scaled(s) == *c)
            .map(|&(t, _)| t)
            .collect();
        match &result {
            None => result = Some(els),
            Some(prev) if *prev != els => {
                return Err(Error::Construction(
                    "stabilizer depends on the chosen generator class".into(),
                ));
            }
            _ => {}
        }
    }
    let els = result.ok_or_else(|| Error::InvalidClass("no cyclotomic classes".into()))?;
    g.subgroup(&els)
}

/// Orbits of the `N_G(H) ∩ N_G(K)` action on classes, as index lists into `classes`.
pub fn class_orbits(g: &FiniteGroup, pair: &StrongShodaPair, classes: &[CyclotomicClass]) -> Vec<Vec<usize>> {
    let mut multipliers: Vec<u64> = conjugation_multipliers(g, pair).into_iter().map(|(_, s)| s).collect();
    multipliers.sort_unstable();
    multipliers.dedup();
    let mut seen = vec![false; classes.len()];
    let mut orbits = Vec::new();
    for i in 0..classes.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for &s in &multipliers {
            let image = classes[i].scaled(s);
            if let Some(j) = classes.iter().position(|c| *c == image) {
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Predicted `M_{[G:H]}(F_{q^{m o/[E:H]}})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentShape {
    pub matrix_size: usize,
    /// Degree over the prime field: `m o / [E:H]`.
    pub field_degree_predicted: usize,
    /// The printed exponent `m o / [E:K]` as a reduced fraction.
    pub printed_exponent: (usize, usize),
    pub field_degree_measured: Option<usize>,
    pub e: Subgroup,
    pub o: u64,
}

impl ComponentShape {
    /// Whether the printed exponent agrees with the `[E:H]` prediction.
    pub fn printed_matches(&self) -> bool {
        self.printed_exponent == (self.field_degree_predicted, 1)
    }
}

pub fn component_shape(
    g: &FiniteGroup,
    field: &ExtensionField,
    pair: &StrongShodaPair,
    classes: &[CyclotomicClass],
) -> Result<ComponentShape> {
    let k = pair.index();
    let o = arith::multiplicative_order(field_multiplier(field, k), k)?;
    let e = stabilizer_e(g, pair, classes)?;
    let m = field.degree();
    let e_h = e.order() / pair.h.order();
    let e_k = e.order() / pair.k.order();
    let num = m * o as usize;
    if !num.is_multiple_of(e_h) {
        return Err(Error::Construction(format!(
            "[E:H] = {e_h} does not divide m o = {num}"
        )));
    }
    let d = arith::gcd(num as u64, e_k as u64) as usize;
    Ok(ComponentShape {
        matrix_size: g.order() / pair.h.order(),
        field_degree_predicted: num / e_h,
        printed_exponent: (num / d, e_k / d),
        field_degree_measured: None,
        e,
        o,
    })
}

/// One simple component: the first pair (in canonical order) and class
/// producing its primitive central idempotent.
#[derive(Clone, Debug)]
pub struct Component {
    pub pair: StrongShodaPair,
    pub class: CyclotomicClass,
    pub classes: Vec<CyclotomicClass>,
    pub epsilon_c: AlgebraElement,
    pub e_c: AlgebraElement,
    pub shape: ComponentShape,
}

/// Trace tables keyed by `k`, built on demand.
#[derive(Clone, Debug, Default)]
pub struct TraceCache {
    tables: BTreeMap<u64, TraceTable>,
}

impl TraceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, field: &ExtensionField, k: u64) -> Result<&TraceTable> {
        if let alloc::collections::btree_map::Entry::Vacant(e) = self.tables.entry(k) {
            e.insert(TraceTable::new(field, k)?);
        }
        Ok(&self.tables[&k])
    }
}

/// All `e_C(G,H,K)` over strong Shoda pairs and classes, deduplicated by
/// value; the first pair and class in canonical order label each component.
pub fn central_decomposition(alg: &GroupAlgebra, pairs: &[StrongShodaPair]) -> Result<Vec<Component>> {
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple {
            order: alg.group.order(),
            q: alg.field.characteristic(),
        });
    }
    let mut cache = TraceCache::new();
    let mut out: Vec<Component> = Vec::new();
    for pair in pairs {
        let k = pair.index();
        let classes = cyclotomic_classes(k, field_multiplier(alg.field, k));
        let traces = cache.get(alg.field, k)?;
        let mut shape: Option<ComponentShape> = None;
        for class in &classes {
            let eps = alg.epsilon_c(&pair.h, &pair.k, pair.generator, class, traces)?;
            let e_c = alg.sum_of_distinct_conjugates(&eps);
            if out.iter().any(|c| c.e_c == e_c) {
                continue;
            }
            if shape.is_none() {
                shape = Some(component_shape(alg.group, alg.field, pair, &classes)?);
            }
            out.push(Component {
                pair: pair.clone(),
                class: class.clone(),
                classes: classes.clone(),
                epsilon_c: eps,
                e_c,
                shape: shape.clone().expect("set above"),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::make_field;

    fn exps(c: &[CyclotomicClass]) -> Vec<Vec<u64>> {
        c.iter().map(|x| x.exponents().to_vec()).collect()
    }

    #[test]
    fn classes() {
        assert_eq!(exps(&cyclotomic_classes(3, 2)), [vec![1, 2]]);
        assert_eq!(exps(&cyclotomic_classes(8, 3)), [vec![1, 3], vec![5, 7]]);
        assert_eq!(exps(&cyclotomic_classes(1, 5)), [vec![0]]);
        assert_eq!(exps(&cyclotomic_classes(7, 2)), [vec![1, 2, 4], vec![3, 5, 6]]);
        assert!(CyclotomicClass::new(8, vec![1, 3], 3).is_ok());
        assert!(CyclotomicClass::new(8, vec![1], 3).is_err());
        assert!(CyclotomicClass::new(8, vec![2, 6], 3).is_err());
    }

    #[test]
    fn cyclic_pairs() {
        let c6 = catalog::cyclic(6);
        let pairs = strong_shoda_pairs(&c6);
        assert_eq!(pairs.len(), 4);
        assert!(pairs.iter().all(|p| p.h.order() == 6));
    }

    #[test]
    fn q8_pairs_and_e() {
        let q8 = catalog::quaternion(8);
        let pairs = strong_shoda_pairs(&q8);
        let a = q8.closure(&[1]);
        let pair = pairs.iter().find(|p| p.h == a && p.k.is_trivial()).expect("(<a>,1)");
        let f3 = make_field(3, 1, None).unwrap();
        let classes = cyclotomic_classes(4, 3);
        let e = stabilizer_e(&q8, pair, &classes).unwrap();
        assert_eq!(e.order(), 8);
        let shape = component_shape(&q8, &f3, pair, &classes).unwrap();
        assert_eq!((shape.matrix_size, shape.field_degree_predicted), (2, 1));
        assert_eq!(shape.printed_exponent, (1, 4));
        assert!(pairs.iter().any(|p| p.h == q8.whole() && p.k == q8.whole()));
    }

    #[test]
    fn m16_e_is_h() {
        let m16 = catalog::modular(16);
        let a = m16.closure(&[1]);
        let pair = strong_shoda_pair(&m16, &a, &m16.trivial()).expect("SS pair");
        let f3 = make_field(3, 1, None).unwrap();
        let classes = cyclotomic_classes(8, 3);
        let shape = component_shape(&m16, &f3, &pair, &classes).unwrap();
        assert_eq!(shape.e, a);
        assert_eq!((shape.matrix_size, shape.field_degree_predicted), (2, 2));
    }

    #[test]
    fn d8_reflection_pair_fails_ss2() {
        let d8 = catalog::dihedral(8);
        let b = d8.closure(&[4]);
        assert!(strong_shoda_pair(&d8, &b, &d8.trivial()).is_none());
    }

    #[test]
    fn decomposition_counts() {
        let f2 = make_field(2, 1, None).unwrap();
        let c7 = catalog::cyclic(7);
        let alg = GroupAlgebra::new(&c7, &f2);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&c7)).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].class.exponents(), [1, 2, 4]);
        assert_eq!(comps[2].pair.k.order(), 7);

        let f3 = make_field(3, 1, None).unwrap();
        let q8 = catalog::quaternion(8);
        let alg = GroupAlgebra::new(&q8, &f3);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&q8)).unwrap();
        assert_eq!(comps.len(), 5);
        let total = alg.sum(comps.iter().map(|c| &c.e_c));
        assert_eq!(total, alg.one());
    }
}

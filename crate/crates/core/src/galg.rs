//! Arithmetic in the group algebra `F G` and the idempotents built from
//! subgroups: `H~`, `ε(H,K)`, `ε_C(H,K)` and `e_C(G,H,K)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::ff::{ExtensionField, FieldElement, FieldEmbedding};
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::EchelonBasis;
use crate::shoda::CyclotomicClass;
use crate::{Error, Result};

/// Dense coefficient vector indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<FieldElement>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn coeff(&self, g: usize) -> FieldElement {
        self.coeffs[g]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    TwoSided,
}

/// `F G` for a fixed group and base field.
#[derive(Clone, Copy, Debug)]
pub struct GroupAlgebra<'a> {
    pub group: &'a FiniteGroup,
    pub field: &'a ExtensionField,
}

impl<'a> GroupAlgebra<'a> {
    pub fn new(group: &'a FiniteGroup, field: &'a ExtensionField) -> Self {
        GroupAlgebra { group, field }
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    /// `gcd(q, |G|) = 1`.
    pub fn is_semisimple(&self) -> bool {
        !(self.group.order() as u64).is_multiple_of(self.field.characteristic() as u64)
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dimension() || coeffs.iter().any(|c| c.code() >= self.field.size()) {
            return Err(Error::ContextMismatch);
        }
        Ok(AlgebraElement { coeffs })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![FieldElement::ZERO; self.dimension()],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(0)
    }

    pub fn basis(&self, g: usize) -> AlgebraElement {
        let mut a = self.zero();
        a.coeffs[g] = FieldElement::ONE;
        a
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = self.field;
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = self.field;
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.sub(x, y)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, a: &AlgebraElement) -> AlgebraElement {
        let f = self.field;
        AlgebraElement {
            coeffs: a.coeffs.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    pub fn sum<'b>(&self, items: impl IntoIterator<Item = &'b AlgebraElement>) -> AlgebraElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Convolution product over the Cayley table.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = self.field;
        let g = self.group;
        let mut out = vec![FieldElement::ZERO; self.dimension()];
        let b_support: Vec<(usize, FieldElement)> = b
            .coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &b_support {
                let k = g.mul(i, j);
                out[k] = f.add(out[k], f.mul(x, y));
            }
        }
        AlgebraElement { coeffs: out }
    }

    /// `g · a`.
    pub fn left_mul_group(&self, g: usize, a: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![FieldElement::ZERO; self.dimension()];
        for (x, &c) in a.coeffs.iter().enumerate() {
            out[self.group.mul(g, x)] = c;
        }
        AlgebraElement { coeffs: out }
    }

    /// `a · g`.
    pub fn right_mul_group(&self, a: &AlgebraElement, g: usize) -> AlgebraElement {
        let mut out = vec![FieldElement::ZERO; self.dimension()];
        for (x, &c) in a.coeffs.iter().enumerate() {
            out[self.group.mul(x, g)] = c;
        }
        AlgebraElement { coeffs: out }
    }

    /// `a^g = g^{-1} a g`.
    pub fn conjugate(&self, a: &AlgebraElement, g: usize) -> AlgebraElement {
        let mut out = vec![FieldElement::ZERO; self.dimension()];
        for (x, &c) in a.coeffs.iter().enumerate() {
            out[self.group.conj(x, g)] = c;
        }
        AlgebraElement { coeffs: out }
    }

    pub fn is_idempotent(&self, a: &AlgebraElement) -> bool {
        self.mul(a, a) == *a
    }

    pub fn is_central(&self, a: &AlgebraElement) -> bool {
        self.group.generators().iter().all(|&s| self.conjugate(a, s) == *a)
    }

    pub fn centralizer_in_group(&self, a: &AlgebraElement) -> Subgroup {
        let els: Vec<usize> = (0..self.dimension()).filter(|&g| self.conjugate(a, g) == *a).collect();
        self.group.subgroup(&els).expect("centralizers are subgroups")
    }

    /// Sum of the distinct `G`-conjugates of `a`, compared by exact value.
    pub fn sum_of_distinct_conjugates(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut seen: Vec<AlgebraElement> = Vec::new();
        for g in 0..self.dimension() {
            let c = self.conjugate(a, g);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        self.sum(seen.iter())
    }

    fn inverse_of_int(&self, n: usize) -> Result<FieldElement> {
        self.field
            .inv(self.field.from_int(n as i64))
            .ok_or(Error::NotSemisimple {
                order: n,
                q: self.field.characteristic(),
            })
    }

    /// `H~ = |H|^{-1} sum_{h in H} h`.
    pub fn averaging_idempotent(&self, h: &Subgroup) -> Result<AlgebraElement> {
        let c = self.inverse_of_int(h.order())?;
        let mut a = self.zero();
        for &x in h.elements() {
            a.coeffs[x] = c;
        }
        Ok(a)
    }

    /// `ε(H,K)`: `K~` if `H = K`, else the product of `K~ - M~` over the
    /// minimal normal subgroups `M/K` of `H/K`.
    pub fn epsilon(&self, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement> {
        if !self.group.is_normal_in(h, k) {
            return Err(Error::NotNormal);
        }
        self.inverse_of_int(h.order())?;
        let k_avg = self.averaging_idempotent(k)?;
        if h == k {
            return Ok(k_avg);
        }
        let mut acc = k_avg.clone();
        for m in self.group.minimal_normal_over(h, k) {
            let factor = self.sub(&k_avg, &self.averaging_idempotent(&m)?);
            acc = self.mul(&acc, &factor);
        }
        Ok(acc)
    }

    /// `ε_C(H,K) = |H|^{-1} sum_{h in H} tr(χ(hK)) h^{-1}` with
    /// `χ(a^i K) = ξ_k^{j i}`, `a` the given generator of `H/K` and `j` the
    /// least exponent of the class.
    pub fn epsilon_c(
        &self,
        h: &Subgroup,
        k: &Subgroup,
        generator: usize,
        class: &CyclotomicClass,
        traces: &TraceTable,
    ) -> Result<AlgebraElement> {
        self.epsilon_c_with_exponent(h, k, generator, class, class.representative(), traces)
    }

    /// Same as [`Self::epsilon_c`] but seeding `χ` with an arbitrary exponent of the class.
    pub fn epsilon_c_with_exponent(
        &self,
        h: &Subgroup,
        k: &Subgroup,
        generator: usize,
        class: &CyclotomicClass,
        exponent: u64,
        traces: &TraceTable,
    ) -> Result<AlgebraElement> {
        let g = self.group;
        if !g.is_normal_in(h, k) {
            return Err(Error::NotNormal);
        }
        let modulus = (h.order() / k.order()) as u64;
        if class.modulus() != modulus || traces.modulus() != modulus {
            return Err(Error::InvalidClass("class modulus differs from [H:K]".into()));
        }
        if !class.exponents().contains(&exponent) || arith::gcd(exponent, modulus) != 1 {
            return Err(Error::InvalidClass("exponent is not a unit of the class".into()));
        }
        // coset exponent of every element of H
        let mut coset_exp = vec![u64::MAX; g.order()];
        let mut x = 0;
        for i in 0..modulus {
            for &y in k.elements() {
                coset_exp[g.mul(x, y)] = i;
            }
            x = g.mul(x, generator);
        }
        if h.elements().iter().any(|&y| coset_exp[y] == u64::MAX) {
            return Err(Error::NotCyclic);
        }
        let scale = self.inverse_of_int(h.order())?;
        let mut out = self.zero();
        for &y in h.elements() {
            let t = arith::mul_mod(exponent, coset_exp[y], modulus);
            out.coeffs[g.inv(y)] = self.field.mul(scale, traces.trace_of_power(t));
        }
        Ok(out)
    }

    /// Sum of the distinct `G`-conjugates of `ε_C(H,K)`.
    pub fn e_c(
        &self,
        h: &Subgroup,
        k: &Subgroup,
        generator: usize,
        class: &CyclotomicClass,
        traces: &TraceTable,
    ) -> Result<AlgebraElement> {
        let eps = self.epsilon_c(h, k, generator, class, traces)?;
        Ok(self.sum_of_distinct_conjugates(&eps))
    }

    /// Echelon basis of `F G a` (left) or `F G a F G` (two-sided).
    pub fn ideal_basis(&self, a: &AlgebraElement, side: Side) -> EchelonBasis<'a> {
        let mut basis = EchelonBasis::new(self.field, self.dimension());
        let mut queue = Vec::new();
        if basis.insert(&a.coeffs) {
            queue.push(a.clone());
        }
        while let Some(v) = queue.pop() {
            for &s in self.group.generators() {
                let mut candidates = vec![self.left_mul_group(s, &v)];
                if side == Side::TwoSided {
                    candidates.push(self.right_mul_group(&v, s));
                }
                for c in candidates {
                    if basis.insert(&c.coeffs) {
                        queue.push(c);
                    }
                }
            }
        }
        basis
    }

    pub fn ideal_dimension(&self, a: &AlgebraElement, side: Side) -> usize {
        self.ideal_basis(a, side).rank()
    }
}

/// `tr_{F(ξ_k)/F}(ξ_k^t)` for all `t mod k`, pulled back into `F`.
#[derive(Clone, Debug)]
pub struct TraceTable {
    modulus: u64,
    order: u64,
    values: Vec<FieldElement>,
}

impl TraceTable {
    /// Works inside `F_{q^{m o}}`, `o` the order of `q^m` mod `k`.
    pub fn new(base: &ExtensionField, k: u64) -> Result<Self> {
        let q = base.characteristic() as u64;
        let m = base.degree();
        if k == 0 || arith::gcd(q, k) != 1 {
            return Err(Error::NotCoprime { base: q, modulus: k });
        }
        let qm = arith::pow_mod(q, m as u64, k);
        let o = arith::multiplicative_order(qm, k)?;
        let big = ExtensionField::new(base.characteristic(), m * o as usize, None)?;
        let embedding = FieldEmbedding::new(base, &big)?;
        let xi = big.primitive_root_of_unity(k)?;
        let mut values = Vec::with_capacity(k as usize);
        let mut power = FieldElement::ONE;
        for _ in 0..k {
            values.push(embedding.section(big.galois_trace(power, m)?)?);
            power = big.mul(power, xi);
        }
        Ok(TraceTable {
            modulus: k,
            order: o,
            values,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Multiplicative order of `q^m` modulo `k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn trace_of_power(&self, t: u64) -> FieldElement {
        self.values[(t % self.modulus) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::make_field;
    use crate::shoda::cyclotomic_classes;

    fn elem(alg: &GroupAlgebra, xs: &[i64]) -> AlgebraElement {
        let mut a = alg.zero();
        for (i, &x) in xs.iter().enumerate() {
            a.coeffs[i] = alg.field.from_int(x);
        }
        a
    }

    #[test]
    fn basic_arithmetic() {
        let f3 = make_field(3, 1, None).unwrap();
        let c2 = catalog::cyclic(2);
        let alg = GroupAlgebra::new(&c2, &f3);
        let one_plus_a = elem(&alg, &[1, 1]);
        assert_eq!(alg.mul(&one_plus_a, &one_plus_a), elem(&alg, &[2, 2]));
        assert_eq!(alg.mul(&alg.one(), &one_plus_a), one_plus_a);
        assert_eq!(alg.conjugate(&one_plus_a, 0), one_plus_a);
    }

    #[test]
    fn averaging() {
        let f3 = make_field(3, 1, None).unwrap();
        let c2 = catalog::cyclic(2);
        let alg = GroupAlgebra::new(&c2, &f3);
        assert_eq!(alg.averaging_idempotent(&c2.trivial()).unwrap(), alg.one());
        assert_eq!(alg.averaging_idempotent(&c2.whole()).unwrap(), elem(&alg, &[2, 2]));
        let f2 = make_field(2, 1, None).unwrap();
        let c3 = catalog::cyclic(3);
        let alg2 = GroupAlgebra::new(&c3, &f2);
        assert_eq!(alg2.averaging_idempotent(&c3.whole()).unwrap(), elem(&alg2, &[1, 1, 1]));
        let c2_over_f2 = GroupAlgebra::new(&c2, &f2);
        assert!(matches!(
            c2_over_f2.averaging_idempotent(&c2.whole()),
            Err(Error::NotSemisimple { .. })
        ));
    }

    #[test]
    fn epsilons() {
        let f3 = make_field(3, 1, None).unwrap();
        let c2 = catalog::cyclic(2);
        let alg = GroupAlgebra::new(&c2, &f3);
        assert_eq!(alg.epsilon(&c2.whole(), &c2.trivial()).unwrap(), elem(&alg, &[2, 1]));
        assert_eq!(alg.epsilon(&c2.whole(), &c2.whole()).unwrap(), elem(&alg, &[2, 2]));
        let c4 = catalog::cyclic(4);
        let alg4 = GroupAlgebra::new(&c4, &f3);
        assert_eq!(
            alg4.epsilon(&c4.whole(), &c4.trivial()).unwrap(),
            elem(&alg4, &[2, 0, 1, 0])
        );
        let d8 = catalog::dihedral(8);
        let alg8 = GroupAlgebra::new(&d8, &f3);
        assert_eq!(alg8.epsilon(&d8.whole(), &d8.closure(&[4])), Err(Error::NotNormal));
    }

    #[test]
    fn epsilon_c_over_f2_c3() {
        let f2 = make_field(2, 1, None).unwrap();
        let c3 = catalog::cyclic(3);
        let alg = GroupAlgebra::new(&c3, &f2);
        let classes = cyclotomic_classes(3, 2);
        assert_eq!(classes.len(), 1);
        let tt = TraceTable::new(&f2, 3).unwrap();
        let e = alg.epsilon_c(&c3.whole(), &c3.trivial(), 1, &classes[0], &tt).unwrap();
        assert_eq!(e, elem(&alg, &[0, 1, 1]));
        assert!(alg.is_idempotent(&e));
    }

    #[test]
    fn epsilon_c_over_f3_c4() {
        // Oracle: F_9 = F_3[i], ξ_4 = ±i, tr(ξ^t) = ξ^t + ξ^{3t}:
        // t=0 -> 2, t=1 -> 0, t=2 -> -2 = 1, t=3 -> 0. Coefficient of a^{-t} is
        // 4^{-1} tr = tr since 4 = 1 mod 3: 2·1 + 1·a^2.
        let f3 = make_field(3, 1, None).unwrap();
        let c4 = catalog::cyclic(4);
        let alg = GroupAlgebra::new(&c4, &f3);
        let tt = TraceTable::new(&f3, 4).unwrap();
        let classes = cyclotomic_classes(4, 3);
        assert_eq!(classes.len(), 1);
        let e = alg.epsilon_c(&c4.whole(), &c4.trivial(), 1, &classes[0], &tt).unwrap();
        assert_eq!(e, elem(&alg, &[2, 0, 1, 0]));
        assert!(alg.is_idempotent(&e));
        let eps = alg.epsilon(&c4.whole(), &c4.trivial()).unwrap();
        assert_eq!(eps, e);
    }

    #[test]
    fn ideal_dimensions() {
        let f3 = make_field(3, 1, None).unwrap();
        let q8 = catalog::quaternion(8);
        let alg = GroupAlgebra::new(&q8, &f3);
        assert_eq!(alg.ideal_dimension(&alg.one(), Side::TwoSided), 8);
        let avg = alg.averaging_idempotent(&q8.whole()).unwrap();
        assert_eq!(alg.ideal_dimension(&avg, Side::TwoSided), 1);
        let h = q8.closure(&[1]);
        let tt = TraceTable::new(&f3, 4).unwrap();
        let classes = cyclotomic_classes(4, 3);
        let e = alg.e_c(&h, &q8.trivial(), 1, &classes[0], &tt).unwrap();
        assert!(alg.is_central(&e));
        assert_eq!(alg.ideal_dimension(&e, Side::TwoSided), 4);
        assert_eq!(alg.ideal_dimension(&e, Side::Left), 4);
    }
}

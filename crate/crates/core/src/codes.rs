//! Left ideals of `F G` as linear codes of length `|G|`, coordinates in
//! element-index order.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ff::{ExtensionField, FieldElement};
use crate::galg::{AlgebraElement, GroupAlgebra, Side};
use crate::{Error, Result};

/// Default cap on the number of codewords enumerated by [`min_distance`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub length: usize,
    /// Reduced row echelon form, rows ordered by pivot.
    pub basis: Vec<Vec<FieldElement>>,
    pub min_distance: Option<usize>,
    pub label: String,
}

impl LinearCode {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// The code `F G α`.
pub fn left_ideal_code(alg: &GroupAlgebra, alpha: &AlgebraElement, label: impl Into<String>) -> LinearCode {
    let basis = alg.ideal_basis(alpha, Side::Left);
    LinearCode {
        length: alg.dimension(),
        basis: basis.rows().to_vec(),
        min_distance: None,
        label: label.into(),
    }
}

/// Least Hamming weight of a non-zero codeword, by enumerating all
/// `|F|^k - 1` of them. Refuses when `|F|^k` exceeds `bound`.
pub fn min_distance(field: &ExtensionField, code: &LinearCode, bound: u64) -> Result<usize> {
    let k = code.dimension();
    if k == 0 {
        return Err(Error::EmptyCode);
    }
    let q = field.size();
    let total = q.checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > bound {
        return Err(Error::EnumerationBound(total));
    }
    let mut digits = alloc::vec![0u64; k];
    let mut word = alloc::vec![FieldElement::ZERO; code.length];
    let mut best = code.length;
    for _ in 1..total {
        // increment the base-|F| counter, updating the word digit by digit
        let mut i = 0;
        loop {
            let old = field.element(digits[i]).expect("digit in range");
            digits[i] = (digits[i] + 1) % q;
            let new = field.element(digits[i]).expect("digit in range");
            let delta = field.sub(new, old);
            for (w, &r) in word.iter_mut().zip(&code.basis[i]) {
                if !r.is_zero() {
                    *w = field.add(*w, field.mul(delta, r));
                }
            }
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        let weight = word.iter().filter(|c| !c.is_zero()).count();
        best = best.min(weight);
    }
    Ok(best)
}

/// Fills in `min_distance`.
pub fn with_min_distance(field: &ExtensionField, mut code: LinearCode, bound: u64) -> Result<LinearCode> {
    code.min_distance = Some(min_distance(field, &code, bound)?);
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::make_field;
    use crate::shoda::{central_decomposition, strong_shoda_pairs};

    #[test]
    fn hamming_code_from_c7() {
        let f2 = make_field(2, 1, None).unwrap();
        let c7 = catalog::cyclic(7);
        let alg = GroupAlgebra::new(&c7, &f2);
        let comps = central_decomposition(&alg, &strong_shoda_pairs(&c7)).unwrap();
        let e0 = alg.averaging_idempotent(&c7.whole()).unwrap();
        assert_eq!(comps[2].e_c, e0);
        let rep = left_ideal_code(&alg, &e0, "e0");
        assert_eq!(rep.dimension(), 1);
        assert_eq!(min_distance(&f2, &rep, DEFAULT_ENUMERATION_BOUND).unwrap(), 7);
        for faithful in &comps[..2] {
            let code = left_ideal_code(&alg, &alg.add(&e0, &faithful.e_c), "e0+C");
            assert_eq!(code.dimension(), 4);
            assert_eq!(min_distance(&f2, &code, DEFAULT_ENUMERATION_BOUND).unwrap(), 3);
        }
        let full = left_ideal_code(&alg, &alg.one(), "1");
        assert_eq!(full.dimension(), 7);
        assert_eq!(min_distance(&f2, &full, DEFAULT_ENUMERATION_BOUND).unwrap(), 1);
    }

    #[test]
    fn refusals() {
        let f2 = make_field(2, 1, None).unwrap();
        let c7 = catalog::cyclic(7);
        let alg = GroupAlgebra::new(&c7, &f2);
        let zero = left_ideal_code(&alg, &alg.zero(), "0");
        assert_eq!(min_distance(&f2, &zero, 16), Err(Error::EmptyCode));
        let full = left_ideal_code(&alg, &alg.one(), "1");
        assert_eq!(min_distance(&f2, &full, 64), Err(Error::EnumerationBound(128)));
    }

    #[test]
    fn extension_field_code() {
        let f4 = make_field(2, 2, None).unwrap();
        let c3 = catalog::cyclic(3);
        let alg = GroupAlgebra::new(&c3, &f4);
        let code = left_ideal_code(&alg, &alg.one(), "1");
        assert_eq!(min_distance(&f4, &code, DEFAULT_ENUMERATION_BOUND).unwrap(), 1);
    }
}

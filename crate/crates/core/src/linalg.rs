//! Gaussian elimination over an [`ExtensionField`].

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{ExtensionField, FieldElement};

/// Row space kept in reduced row echelon form, rows sorted by pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBasis<'f> {
    field: &'f ExtensionField,
    width: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl<'f> EchelonBasis<'f> {
    pub fn new(field: &'f ExtensionField, width: usize) -> Self {
        EchelonBasis {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the current rows.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("non-zero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank(field: &ExtensionField, width: usize, vectors: impl IntoIterator<Item = Vec<FieldElement>>) -> usize {
    let mut basis = EchelonBasis::new(field, width);
    for v in vectors {
        basis.insert(&v);
        if basis.rank() == width {
            break;
        }
    }
    basis.rank()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows, each of length `width`.
pub fn kernel(
    field: &ExtensionField,
    width: usize,
    rows: impl IntoIterator<Item = Vec<FieldElement>>,
) -> Vec<Vec<FieldElement>> {
    let mut basis = EchelonBasis::new(field, width);
    for r in rows {
        basis.insert(&r);
        if basis.rank() == width {
            break;
        }
    }
    let pivots = basis.pivots().to_vec();
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fcol| {
            let mut x = vec![FieldElement::ZERO; width];
            x[fcol] = FieldElement::ONE;
            for (row, &p) in basis.rows().iter().zip(&pivots) {
                x[p] = field.neg(row[fcol]);
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    fn v(f: &ExtensionField, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rank_and_kernel_over_f3() {
        let f = make_field(3, 1, None).unwrap();
        let rows = [v(&f, &[1, 2, 0]), v(&f, &[2, 1, 0]), v(&f, &[0, 0, 1])];
        assert_eq!(rank(&f, 3, rows.iter().cloned()), 2);
        let ker = kernel(&f, 3, rows.iter().cloned());
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dot = r
                .iter()
                .zip(&ker[0])
                .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn echelon_is_reduced() {
        let f = make_field(5, 1, None).unwrap();
        let mut b = EchelonBasis::new(&f, 3);
        assert!(b.insert(&v(&f, &[0, 2, 4])));
        assert!(b.insert(&v(&f, &[3, 1, 1])));
        assert!(!b.insert(&v(&f, &[3, 3, 0])));
        assert_eq!(b.pivots(), [0, 1]);
        assert_eq!(b.rows()[0][1], FieldElement::ZERO);
        assert_eq!(b.rows()[1][1], FieldElement::ONE);
    }
}

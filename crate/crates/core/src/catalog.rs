//! Small named groups built from normal forms, used by tests and the corpus.
//!
//! In every group here element `1` is the distinguished generator `a`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::inv_mod;
use crate::groups::FiniteGroup;

fn from_rule(n: usize, name: alloc::string::String, rule: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = rule(a, b);
        }
    }
    FiniteGroup::from_table_unchecked(table, Some(name))
}

pub fn cyclic(n: usize) -> FiniteGroup {
    from_rule(n, format!("C{n}"), |a, b| (a + b) % n)
}

/// `<a, b | a^m = b^k = 1, b^-1 a b = a^r>`, elements `a^i b^j` at index `i + m j`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> FiniteGroup {
    let r = r % m.max(1);
    assert_eq!(
        crate::arith::pow_mod(r as u64, k as u64, m as u64),
        1 % m as u64,
        "r^k must be 1 mod m"
    );
    let s = inv_mod(r as u64, m as u64).unwrap_or(0) as usize;
    let mut spow = vec![1 % m.max(1); k];
    for j in 1..k {
        spow[j] = spow[j - 1] * s % m;
    }
    from_rule(m * k, format!("C{m}:C{k}[{r}]"), move |x, y| {
        let (i, j) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        (i + i2 * spow[j]) % m + m * ((j + j2) % k)
    })
}

/// Dihedral group of the given order `2n`; `b` is element `n`.
pub fn dihedral(order: usize) -> FiniteGroup {
    let n = order / 2;
    metacyclic(n, 2, n - 1).with_name(format!("D{order}"))
}

/// Generalized quaternion (dicyclic) group of order `4n`:
/// `<a, c | a^{2n} = 1, c^2 = a^n, c^-1 a c = a^-1>`, `c` is element `2n`.
pub fn quaternion(order: usize) -> FiniteGroup {
    let n = order / 4;
    let m = 2 * n;
    from_rule(order, format!("Q{order}"), move |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let k = if j == 1 { (m - k) % m } else { k };
        let mut e = i + k;
        if j == 1 && l == 1 {
            e += n;
        }
        e % m + m * ((j + l) % 2)
    })
}

/// `M_{2^n} = <a, b | a^{2^{n-1}} = b^2 = 1, a^b = a^{1 + 2^{n-2}}>`.
pub fn modular(order: usize) -> FiniteGroup {
    let m = order / 2;
    metacyclic(m, 2, 1 + m / 2).with_name(format!("M{order}"))
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (g.order(), h.order());
    let name = format!("{}x{}", g.name().unwrap_or("G"), h.name().unwrap_or("H"));
    from_rule(n1 * n2, name, |x, y| g.mul(x / n2, y / n2) * n2 + h.mul(x % n2, y % n2))
}

pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], 6)
        .expect("S3")
        .with_name("S3")
}

/// The fixed corpus of nilpotent groups used by the acceptance suite.
pub fn corpus() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=30).map(cyclic).collect();
    out.push(direct_product(&cyclic(2), &cyclic(2)));
    out.push(direct_product(&cyclic(2), &cyclic(4)));
    out.push(direct_product(&cyclic(4), &cyclic(4)));
    out.push(dihedral(8));
    out.push(quaternion(8));
    out.push(dihedral(16));
    out.push(quaternion(16));
    out.push(modular(16));
    out.push(direct_product(&cyclic(3), &quaternion(8)));
    out.push(direct_product(&cyclic(5), &dihedral(8)));
    out.push(direct_product(&cyclic(3), &cyclic(9)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_groups() {
        for g in corpus().iter().chain([symmetric3()].iter()) {
            let again = FiniteGroup::from_cayley_table(&g.cayley_rows(), 128).unwrap();
            assert_eq!(again.order(), g.order());
        }
    }

    #[test]
    fn presentations() {
        let m16 = modular(16);
        let b = 8;
        assert_eq!(m16.element_order(1), 8);
        assert_eq!(m16.conj(1, b), m16.pow(1, 5));
        let q16 = quaternion(16);
        assert_eq!(q16.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        let d16 = dihedral(16);
        assert_eq!(d16.conj(1, 8), d16.pow(1, -1));
        assert!(corpus().iter().all(|g| g.is_nilpotent()));
    }
}

// Dense polynomials over F_q, ascending coefficients, no trailing zeros
// (the zero polynomial is the empty vector).

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::inv_mod;

pub(crate) fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q = q as u64;
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % q;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a non-zero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], q: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm] as u64, q as u64).expect("non-zero leading coefficient");
    let q64 = q as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv) % q64;
        for (i, &mi) in m.iter().enumerate() {
            let t = (c * mi as u64) % q64;
            r[shift + i] = ((r[shift + i] as u64 + q64 - t) % q64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], q: u32) -> Vec<u32> {
    rem(&mul(a, b, q), m, q)
}

pub(crate) fn powmod(base: &[u32], mut exp: u64, m: &[u32], q: u32) -> Vec<u32> {
    let mut acc = rem(&[1], m, q);
    let mut b = rem(base, m, q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, q);
        }
        b = mulmod(&b, &b, m, q);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a polynomial of degree `d` over `F_q` is irreducible iff
/// `gcd(x^{q^i} - x, f) = 1` for every `1 <= i <= d/2`.
pub(crate) fn is_irreducible(f: &[u32], q: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = [0, 1];
    let mut h = rem(&x, f, q);
    for _ in 1..=d / 2 {
        h = powmod(&h, q as u64, f, q);
        let g = gcd(&sub(&h, &x, q), f, q);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

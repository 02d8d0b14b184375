//! Integer helpers: primality, factoring by trial division, modular orders.

use alloc::vec::Vec;

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Largest `e` with `p^e | n`.
pub fn p_valuation(mut n: u64, p: u64) -> u32 {
    assert!(n >= 1 && p >= 2);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least `o >= 1` with `base^o = 1 (mod k)`.
pub fn multiplicative_order(base: u64, k: u64) -> Result<u64> {
    if k == 1 {
        return Ok(1);
    }
    if k == 0 || gcd(base % k, k) != 1 {
        return Err(Error::NotCoprime { base, modulus: k });
    }
    let b = base % k;
    let mut x = b;
    let mut o = 1;
    while x != 1 {
        x = mul_mod(x, b, k);
        o += 1;
    }
    Ok(o)
}

/// Prime factors of `q^d - 1`, found by splitting into cyclotomic values
/// `Phi_e(q)` for `e | d` and trial-dividing each of them.
pub fn prime_factors_of_power_minus_one(q: u64, d: u64) -> Vec<u64> {
    let mut phis: Vec<(u64, u128)> = Vec::new();
    for e in divisors(d) {
        let mut v = (q as u128).pow(e as u32) - 1;
        for &(f, phi_f) in &phis {
            if e % f == 0 {
                v /= phi_f;
            }
        }
        phis.push((e, v));
    }
    let mut out: Vec<u64> = phis.iter().flat_map(|&(_, v)| prime_factors(v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quo = old_r / r;
        (old_r, r) = (r, old_r - quo * r);
        (old_s, s) = (s, old_s - quo * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(3, 4).unwrap(), 2);
        assert_eq!(multiplicative_order(9, 1).unwrap(), 1);
        assert_eq!(multiplicative_order(25, 29).unwrap(), 7);
        assert!(multiplicative_order(2, 6).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(8, 2), 3);
        assert_eq!(p_valuation(12, 2), 2);
        assert_eq!(p_valuation(7, 2), 0);
    }

    #[test]
    fn factors_of_power_minus_one() {
        assert_eq!(prime_factors_of_power_minus_one(2, 28), [3, 5, 29, 43, 113, 127]);
        assert_eq!(prime_factors_of_power_minus_one(3, 2), [2]);
        let brute = prime_factors(7u128.pow(22) - 1);
        assert_eq!(prime_factors_of_power_minus_one(7, 22), brute);
    }

    #[test]
    fn tonelli_shanks_roots() {
        for p in [3u64, 5, 7, 11, 13, 17, 29, 41, 97] {
            for a in 0..p {
                match tonelli_shanks(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert!((0..p).all(|x| mul_mod(x, x, p) != a)),
                }
            }
        }
    }
}

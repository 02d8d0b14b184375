//! Finite fields `F_{q^d} = F_q[x]/(f)`.
//!
//! Elements are [`FieldElement`] codes: the coefficient vector `(c_0, ..., c_{d-1})`
//! of the reduced polynomial, packed as the integer `sum c_i q^i`. The
//! canonical order on elements is the numeric order of that code. Every
//! operation goes through the owning [`ExtensionField`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, is_prime};
use crate::poly;
use crate::{Error, Result};

/// Fields up to this size get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Embeddings keep an explicit image table, so their source must be small.
const EMBED_SOURCE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ExtensionField {
    q: u32,
    degree: usize,
    modulus: Vec<u32>,
    size: u64,
    generator: FieldElement,
    tables: Option<LogTables>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for ExtensionField {}

/// Builds `F_{q^d}`. Without an explicit modulus the lexicographically least
/// monic irreducible polynomial (comparing `c_0` first) is used.
pub fn make_field(q: u32, d: usize, modulus: Option<&[u32]>) -> Result<ExtensionField> {
    ExtensionField::new(q, d, modulus)
}

impl ExtensionField {
    pub fn new(q: u32, d: usize, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (q as u64)
            .checked_pow(d as u32)
            .filter(|s| *s < (1 << 62))
            .ok_or(Error::FieldTooLarge { q, degree: d })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d + 1 || m[d] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {d}, got {m:?}"
                    )));
                }
                if m.iter().any(|&c| c >= q) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {q})")));
                }
                if !poly::is_irreducible(m, q) {
                    return Err(Error::InvalidModulus(format!("{m:?} is reducible over F_{q}")));
                }
                m.to_vec()
            }
            None => least_irreducible(q, d),
        };
        let mut field = ExtensionField {
            q,
            degree: d,
            modulus,
            size,
            generator: FieldElement::ONE,
            tables: None,
        };
        field.generator = field.find_generator();
        if size <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn prime_field(q: u32) -> Result<Self> {
        Self::new(q, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Least element (in code order) generating the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.size {
            return Err(Error::InvalidModulus(format!(
                "code {code} outside a field of size {}",
                self.size
            )));
        }
        Ok(FieldElement(code))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let q = self.q as u64;
        let mut c = a.0;
        (0..self.degree)
            .map(|_| {
                let digit = (c % q) as u32;
                c /= q;
                digit
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let reduced = poly::rem(coeffs, &self.modulus, self.q);
        self.encode(&reduced)
    }

    fn encode(&self, reduced: &[u32]) -> FieldElement {
        let q = self.q as u64;
        FieldElement(reduced.iter().rev().fold(0, |acc, &c| acc * q + c as u64))
    }

    fn decode(&self, a: FieldElement) -> Vec<u32> {
        let mut c = self.coeffs(a);
        poly::trim(&mut c);
        c
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.q as i64) as u64)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let q = self.q as u64;
        if self.degree == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= q { s - q } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x != 0 || y != 0 {
            let s = (x % q + y % q) % q;
            out += s * place;
            place *= q;
            x /= q;
            y /= q;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let q = self.q as u64;
        if self.degree == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { q - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x != 0 {
            out += ((q - x % q) % q) * place;
            place *= q;
            x /= q;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.degree == 1 {
            return FieldElement(arith::mul_mod(a.0, b.0, self.q as u64));
        }
        if let Some(t) = &self.tables {
            let n = self.size - 1;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
            return FieldElement(t.exp[e as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = poly::mulmod(&self.decode(a), &self.decode(b), &self.modulus, self.q);
        self.encode(&p)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        if let Some(t) = &self.tables {
            if a.0 == 0 {
                return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
            }
            let n = self.size - 1;
            let l = arith::mul_mod(t.log[a.0 as usize] as u64, e % n, n);
            return FieldElement(t.exp[l as usize]);
        }
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let n = self.size - 1;
            let l = (n - t.log[a.0 as usize] as u64) % n;
            return Some(FieldElement(t.exp[l as usize]));
        }
        Some(self.pow(a, self.size - 2))
    }

    /// Multiplicative order of a non-zero element.
    pub fn order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let n = self.size - 1;
        let mut o = n;
        for p in arith::prime_factors_of_power_minus_one(self.q as u64, self.degree as u64) {
            while o.is_multiple_of(p) && self.pow(a, o / p) == FieldElement::ONE {
                o /= p;
            }
        }
        o
    }

    fn find_generator(&self) -> FieldElement {
        let n = self.size - 1;
        let primes = arith::prime_factors_of_power_minus_one(self.q as u64, self.degree as u64);
        (1..self.size)
            .map(FieldElement)
            .find(|&g| primes.iter().all(|&p| self.pow_slow(g, n / p) != FieldElement::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn pow_slow(&self, a: FieldElement, e: u64) -> FieldElement {
        if self.degree == 1 {
            return FieldElement(arith::pow_mod(a.0, e, self.q as u64));
        }
        let p = poly::powmod(&self.decode(a), e, &self.modulus, self.q);
        self.encode(&p)
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.size as usize];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = if self.degree == 1 {
                FieldElement(arith::mul_mod(x.0, self.generator.0, self.q as u64))
            } else {
                self.mul_slow(x, self.generator)
            };
        }
        LogTables { exp, log }
    }

    /// `x -> x^(q^m)`, the Frobenius of `F_{q^d}` over `F_{q^m}`.
    pub fn frobenius(&self, a: FieldElement, m: usize) -> FieldElement {
        let mut x = a;
        for _ in 0..m {
            x = self.pow(x, self.q as u64);
        }
        x
    }

    /// Element of exact order `k`: `g^((|F| - 1) / k)` for the stored generator.
    pub fn primitive_root_of_unity(&self, k: u64) -> Result<FieldElement> {
        let n = self.size - 1;
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NoRootOfUnity { k, size: self.size });
        }
        Ok(self.pow(self.generator, n / k))
    }

    /// `tr_{F_{q^d}/F_{q^m}}(a) = sum_{i < d/m} a^(q^(m i))`.
    pub fn galois_trace(&self, a: FieldElement, m: usize) -> Result<FieldElement> {
        if m == 0 || !self.degree.is_multiple_of(m) {
            return Err(Error::DegreeMismatch { m, degree: self.degree });
        }
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.degree / m {
            acc = self.add(acc, x);
            x = self.frobenius(x, m);
        }
        Ok(acc)
    }

    /// Evaluates a polynomial with prime-field coefficients at `a`.
    pub fn eval_poly(&self, coeffs: &[u32], a: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
            self.add(self.mul(acc, a), FieldElement(c as u64 % self.q as u64))
        })
    }

    /// Least pair `(x, y)`, ordered by `(code(x), code(y))`, with
    /// `x^2 + y^2 = -1` and `y != 0`.
    pub fn sum_of_two_squares_minus_one(&self) -> Result<(FieldElement, FieldElement)> {
        if self.q == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if self.size > EMBED_SOURCE_LIMIT {
            return Err(Error::FieldTooLarge {
                q: self.q,
                degree: self.degree,
            });
        }
        let mut least_root: BTreeMap<FieldElement, FieldElement> = BTreeMap::new();
        for y in self.elements().skip(1) {
            least_root.entry(self.mul(y, y)).or_insert(y);
        }
        let minus_one = self.neg(FieldElement::ONE);
        for x in self.elements() {
            let t = self.sub(minus_one, self.mul(x, x));
            if let Some(&y) = least_root.get(&t) {
                return Ok((x, y));
            }
        }
        unreachable!("every element of a finite field is a sum of two squares")
    }

    /// Same contract as [`Self::sum_of_two_squares_minus_one`] without the
    /// least-pair guarantee: uses `sqrt(-1)` when `|F| = 1 mod 4`, otherwise
    /// splits `-1 = a + (-1 - a)` inside the prime field and takes
    /// Tonelli-Shanks square roots.
    pub fn sum_of_two_squares_minus_one_fast(&self) -> Result<(FieldElement, FieldElement)> {
        if self.q == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let minus_one = self.neg(FieldElement::ONE);
        let n = self.size - 1;
        if n.is_multiple_of(4) {
            let non_residue = self
                .elements()
                .skip(1)
                .find(|&b| self.pow(b, n / 2) == minus_one)
                .expect("half of the units are non-squares");
            return Ok((FieldElement::ZERO, self.pow(non_residue, n / 4)));
        }
        let p = self.q as u64;
        for a in 0..p - 1 {
            let b = (p - 1 - a) % p;
            if let (Some(x), Some(y)) = (arith::tonelli_shanks(a, p), arith::tonelli_shanks(b, p)) {
                if y != 0 {
                    return Ok((FieldElement(x), FieldElement(y)));
                }
            }
        }
        unreachable!("-1 is a sum of two squares in every prime field")
    }
}

fn least_irreducible(q: u32, d: usize) -> Vec<u32> {
    let mut tail = vec![0u32; d];
    // for d >= 2 every candidate with c_0 = 0 is divisible by x
    if d >= 2 {
        tail[0] = 1;
    }
    loop {
        let mut f = tail.clone();
        f.push(1);
        if poly::is_irreducible(&f, q) {
            return f;
        }
        // lexicographic successor with c_0 most significant
        let mut i = d;
        loop {
            i -= 1;
            tail[i] += 1;
            if tail[i] < q {
                break;
            }
            tail[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

/// Embedding `F_{q^m} -> F_{q^{m e}}` determined by the image of `x`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: ExtensionField,
    target: ExtensionField,
    image_of_generator: FieldElement,
    images: Vec<FieldElement>,
    preimages: BTreeMap<FieldElement, FieldElement>,
}

impl FieldEmbedding {
    /// Picks the least root (in code order among `0` and the powers of a
    /// generator of the subfield) of the source modulus inside the target.
    pub fn new(source: &ExtensionField, target: &ExtensionField) -> Result<Self> {
        if source.q != target.q || !target.degree.is_multiple_of(source.degree) {
            return Err(Error::DegreeMismatch {
                m: source.degree,
                degree: target.degree,
            });
        }
        if source.size > EMBED_SOURCE_LIMIT {
            return Err(Error::FieldTooLarge {
                q: source.q,
                degree: source.degree,
            });
        }
        let sub_gen = target.pow(target.generator, (target.size - 1) / (source.size - 1));
        let mut candidates = vec![FieldElement::ZERO];
        let mut x = FieldElement::ONE;
        for _ in 0..source.size - 1 {
            candidates.push(x);
            x = target.mul(x, sub_gen);
        }
        candidates.sort_unstable();
        let theta = candidates
            .into_iter()
            .find(|&c| target.eval_poly(&source.modulus, c).is_zero())
            .ok_or_else(|| Error::InvalidModulus("source modulus has no root in the target".into()))?;
        let mut images = Vec::with_capacity(source.size as usize);
        let mut preimages = BTreeMap::new();
        for a in source.elements() {
            let img = target.eval_poly(&source.coeffs(a), theta);
            images.push(img);
            preimages.insert(img, a);
        }
        Ok(FieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            image_of_generator: theta,
            images,
            preimages,
        })
    }

    pub fn source(&self) -> &ExtensionField {
        &self.source
    }

    pub fn target(&self) -> &ExtensionField {
        &self.target
    }

    /// Image of the class of `x` in the source field.
    pub fn image_of_source_generator(&self) -> FieldElement {
        self.image_of_generator
    }

    pub fn embed(&self, a: FieldElement) -> FieldElement {
        self.images[a.0 as usize]
    }

    pub fn section(&self, b: FieldElement) -> Result<FieldElement> {
        self.preimages.get(&b).copied().ok_or(Error::NotInImage)
    }
}

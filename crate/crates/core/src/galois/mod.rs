//! Exact arithmetic in prime-power fields GF(p^m).
//!
//! Elements are dense coefficient vectors over GF(p) packed into a `u32`
//! as base-`p` digits (digit `i` is the coefficient of `x^i`). Packing keeps
//! elements `Copy` and makes the natural integer order the fixed
//! enumeration order used for every deterministic choice in this crate
//! (smallest primitive element, smallest normal-basis generator, ...).
//!
//! Multiplication goes through discrete-log tables that are built once per
//! field on first use; [`Field::mul_reference`] is the schoolbook product
//! the tables are derived from.

mod cache;
mod conway;
mod pair;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cache::CACHE_ENV;
pub use pair::ExtensionPair;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Serializable description of GF(p^m): characteristic, degree and a monic
/// irreducible modulus (coefficients low-to-high).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

struct Tables {
    generator: u32,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    spec: FieldSpec,
    order: u32,
    tables: OnceLock<Tables>,
}

/// A finite field handle. Cheap to clone; all clones share lazily built
/// tables.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power into `(p, m)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p as u32, m))
}

// Dense polynomial helpers over GF(p) on coefficient slices, low-to-high.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem_prime(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Trial division against every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                divisor.push((x % p as u64) as u32);
                x /= p as u64;
            }
            divisor.push(1);
            if poly_rem_prime(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds a field from an explicit spec, validating primality of `p`,
    /// the order cap and irreducibility of the modulus.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let FieldSpec { p, m, ref modulus } = spec;
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let order = spec.order();
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::InvalidField(format!(
                "order {p}^{m} exceeds the cap of {MAX_FIELD_ORDER}"
            )));
        }
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {m}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible")));
        }
        Ok(Field(Arc::new(FieldInner {
            order: order as u32,
            spec,
            tables: OnceLock::new(),
        })))
    }

    /// GF(p^m) with the tabulated Conway modulus, or the lexicographically
    /// smallest primitive modulus when the table has no entry.
    pub fn gf(p: u32, m: u32) -> Result<Self> {
        if let Some(poly) = conway::lookup(p, m) {
            return Field::new(FieldSpec {
                p,
                m,
                modulus: poly.to_vec(),
            });
        }
        if !is_prime(p as u64) || m == 0 || (p as u64).checked_pow(m).is_none_or(|q| q > MAX_FIELD_ORDER as u64) {
            return Err(Error::InvalidField(format!("GF({p}^{m}) is not supported")));
        }
        let count = (p as u64).pow(m);
        for low in 0..count {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut x = low;
            for _ in 0..m {
                modulus.push((x % p as u64) as u32);
                x /= p as u64;
            }
            modulus.push(1);
            if modulus[0] == 0 || !is_irreducible(&modulus, p) {
                continue;
            }
            let field = Field::new(FieldSpec { p, m, modulus })?;
            if m == 1 || field.multiplicative_order(p) == field.order() - 1 {
                return Ok(field);
            }
        }
        Err(Error::InvalidField(format!("no primitive modulus for GF({p}^{m})")))
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Field::gf(p, m)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.m
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.order
    }

    pub fn nonzero_elements(&self) -> std::ops::Range<u32> {
        1..self.0.order
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.order
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::InvalidField(format!("{value} is not an element of {}", self.spec())));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Base-`p` digits of `a`, low-to-high, always of length `m`.
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let p = self.characteristic();
        (0..self.degree())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        let p = self.characteristic();
        if digits.len() > self.degree() as usize || digits.iter().any(|&d| d >= p) {
            return Err(Error::InvalidField(format!(
                "{digits:?} is not a coefficient vector of {}",
                self.spec()
            )));
        }
        Ok(digits.iter().rev().fold(0, |acc, &d| acc * p + d))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic();
        if p == 2 {
            return a ^ b;
        }
        if self.degree() == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.characteristic();
        if p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.characteristic() == 2 {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }

    fn tables(&self) -> &Tables {
        self.0.tables.get_or_init(|| self.build_tables())
    }

    fn build_tables(&self) -> Tables {
        let q = self.order();
        let cache = cache::dir();
        let cached = cache
            .as_deref()
            .and_then(|d| cache::load(d, &self.0.spec, |a, b| self.mul_reference(a, b)));
        let fresh = cached.is_none();
        let (generator, powers) = cached.unwrap_or_else(|| {
            let generator = self.find_primitive_element();
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut x = 1u32;
            for _ in 0..(q - 1) {
                powers.push(x);
                x = self.mul_reference(x, generator);
            }
            (generator, powers)
        });
        if let (true, Some(d)) = (fresh, cache.as_deref()) {
            cache::store(d, &self.0.spec, generator, &powers);
        }
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        for (i, &x) in powers.iter().enumerate() {
            exp[i] = x;
            log[x as usize] = i as u32;
        }
        for i in (q - 1)..2 * (q - 1) {
            exp[i as usize] = exp[(i - (q - 1)) as usize];
        }
        Tables { generator, exp, log }
    }

    fn find_primitive_element(&self) -> u32 {
        let q = self.order() as u64;
        if q == 2 {
            return 1;
        }
        let factors = prime_factors(q - 1);
        (1..self.order())
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_reference(g, (q - 1) / r) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn pow_reference(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_reference(r, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        r
    }

    /// Schoolbook product of coefficient vectors reduced by the modulus.
    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic();
        let m = self.degree() as usize;
        if m == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let r = poly_rem_prime(&prod, &self.0.spec.modulus, p);
        r.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn try_inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = self.tables();
        let q1 = self.order() - 1;
        Some(t.exp[((q1 - t.log[a as usize]) % q1) as usize])
    }

    /// Multiplicative inverse of a nonzero element.
    ///
    /// # Panics
    /// On zero. Use [`Field::try_inv`] or [`FieldElement::inv`] for a
    /// fallible version.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.try_inv(a).expect("inversion of zero")
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = self.tables();
        let q1 = (self.order() - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % q1)) % q1) as usize]
    }

    /// `g^e` for the fixed primitive element `g`, negative exponents allowed.
    pub fn exp(&self, e: i64) -> u32 {
        let q1 = (self.order() - 1) as i64;
        self.tables().exp[e.rem_euclid(q1) as usize]
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.tables().log[a as usize])
    }

    /// The smallest element (in enumeration order) generating the
    /// multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.tables().generator
    }

    pub fn multiplicative_order(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul_reference(x, a);
            k += 1;
        }
        k
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: u32, e: u32) -> u32 {
        self.pow(a, (self.characteristic() as u64).pow(e))
    }

    /// Absolute trace `sum_{i<m} a^(p^i)`; the result lies in GF(p), so its
    /// packed value is below `p`.
    pub fn absolute_trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, x);
            x = self.pow(x, self.characteristic() as u64);
        }
        acc
    }

    /// Primitive `n`-th root of unity: the fixed primitive element raised to
    /// `(q-1)/n`.
    pub fn primitive_nth_root(&self, n: u64) -> Result<u32> {
        let q1 = (self.order() - 1) as u64;
        if n == 0 || !q1.is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, order: q1 });
        }
        Ok(self.pow(self.primitive_element(), q1 / n))
    }
}

/// A field element bound to its field; arithmetic is checked for field
/// agreement.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.field.digits(self.value), self.field)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.spec().to_string(),
                right: other.field.spec().to_string(),
            });
        }
        Ok(())
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .try_inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    pub fn absolute_trace(&self) -> FieldElement {
        self.with(self.field.absolute_trace(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::gf(2, 2).unwrap()
    }

    // GF(4) = {0, 1, w, w^2} with w = x (packed 2) and w^2 = x + 1 (packed 3).
    const W: u32 = 2;
    const W2: u32 = 3;

    #[test]
    fn gf4_addition() {
        let f = gf4();
        assert_eq!(f.add(W, W), 0);
        assert_eq!(f.add(W, 1), W2);
        for a in f.elements() {
            assert_eq!(f.add(0, a), a);
        }
    }

    #[test]
    fn gf4_multiplication() {
        let f = gf4();
        assert_eq!(f.mul(W, W), W2);
        assert_eq!(f.mul(W, W2), 1);
        for a in f.elements() {
            assert_eq!(f.mul(1, a), a);
        }
    }

    #[test]
    fn gf4_trace() {
        let f = gf4();
        assert_eq!(f.absolute_trace(0), 0);
        assert_eq!(f.absolute_trace(W), 1);
        assert_eq!(f.absolute_trace(1), 0);
    }

    #[test]
    fn element_api_checks_fields() {
        let f = gf4();
        let g = Field::gf(3, 1).unwrap();
        let a = f.element(W).unwrap();
        let b = g.element(1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(f.element(0).unwrap().inv(), Err(Error::ZeroInverse)));
        assert_eq!(a.mul(&a).unwrap().value(), W2);
        assert_eq!(a.coeffs(), vec![0, 1]);
        assert!(f.element(4).is_err());
    }

    #[test]
    fn table_multiplication_matches_schoolbook() {
        for (p, m) in [(2, 4), (3, 2), (5, 2), (7, 2), (2, 6), (3, 3)] {
            let f = Field::gf(p, m).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b), "GF({p}^{m}) {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn inverses_and_negation() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (7, 2)] {
            let f = Field::gf(p, m).unwrap();
            for a in f.nonzero_elements() {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.sub(a, a), 0);
            }
            assert_eq!(f.try_inv(0), None);
        }
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        for (p, m) in [(2, 2), (2, 4), (2, 8), (3, 2), (3, 4), (5, 2), (7, 2), (2, 6)] {
            let f = Field::gf(p, m).unwrap();
            for x in f.elements() {
                let tx = f.absolute_trace(x);
                assert!(tx < p, "trace lands in the prime field");
                assert_eq!(f.absolute_trace(f.frobenius(x, 1)), tx);
                if f.order() <= 64 {
                    for y in f.elements() {
                        assert_eq!(f.absolute_trace(f.add(x, y)), f.add(tx, f.absolute_trace(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        for (p, m) in [(2, 1), (2, 4), (2, 6), (3, 2), (5, 2), (7, 2), (2, 8), (3, 1)] {
            let f = Field::gf(p, m).unwrap();
            let g = f.primitive_element();
            assert_eq!(f.multiplicative_order(g), f.order() - 1);
            // smallest such element
            for a in 1..g {
                assert!(f.multiplicative_order(a) < f.order() - 1);
            }
        }
    }

    #[test]
    fn nth_roots() {
        let f = Field::gf(2, 4).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.primitive_nth_root(15).unwrap(), g);
        assert_eq!(f.primitive_nth_root(5).unwrap(), f.pow(g, 3));
        assert_eq!(f.primitive_nth_root(1).unwrap(), 1);
        assert!(matches!(f.primitive_nth_root(7), Err(Error::NoRootOfUnity { .. })));
        for n in [1u64, 3, 5, 15] {
            let a = f.primitive_nth_root(n).unwrap();
            assert_eq!(f.pow(a, n), 1);
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(f.pow(a, d), 1);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = |p, m, modulus: Vec<u32>| Field::new(FieldSpec { p, m, modulus }).is_err();
        assert!(bad(4, 1, vec![1, 1]));
        assert!(bad(2, 2, vec![1, 0, 1])); // x^2 + 1 = (x + 1)^2
        assert!(bad(2, 2, vec![1, 1, 0]));
        assert!(bad(2, 17, vec![1; 18]));
        assert!(!bad(2, 2, vec![1, 1, 1]));
    }

    #[test]
    fn digits_round_trip() {
        let f = Field::gf(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
        }
        assert!(f.from_digits(&[3]).is_err());
    }

    #[test]
    fn fallback_modulus_search() {
        // GF(17^2) is not tabulated
        let f = Field::gf(17, 2).unwrap();
        assert_eq!(f.order(), 289);
        assert_eq!(f.multiplicative_order(17), 288);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

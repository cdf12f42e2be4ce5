use serde::{Serialize, Serializer};

use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::galois::{ExtensionPair, Field};

/// A finitely supported sequence `N -> F`, stored densely without
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    field: Field,
    values: Vec<u32>,
}

impl Sequence {
    pub fn new(field: Field, values: Vec<u32>) -> Self {
        Sequence {
            field,
            values: poly::trim(values),
        }
    }

    pub fn zero(field: Field) -> Self {
        Sequence {
            field,
            values: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Values up to the last nonzero entry.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, i: usize) -> u32 {
        poly::coeff(&self.values, i)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != 0).collect()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&x| x != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Values padded with zeros to `len` (which must cover the support).
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.values.clone();
        assert!(v.len() <= len, "support exceeds requested length");
        v.resize(len, 0);
        v
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let digits: Vec<Vec<u32>> = self.values.iter().map(|&v| self.field.digits(v)).collect();
        digits.serialize(s)
    }
}

/// `sigma(u) = coefficients of sum_i D^i u_i(D^n)`: coefficient `j` of
/// `u_i` lands at index `j n + i`.
pub fn sigma(field: &Field, u: &[Poly]) -> Sequence {
    let n = u.len();
    let len = u.iter().map(|p| p.len()).max().unwrap_or(0) * n;
    let mut values = vec![0; len];
    for (i, p) in u.iter().enumerate() {
        for (j, &c) in p.iter().enumerate() {
            values[j * n + i] = c;
        }
    }
    Sequence::new(field.clone(), values)
}

/// Inverse of [`sigma`] for `n` components.
pub fn sigma_inverse(s: &Sequence, n: usize) -> Vec<Poly> {
    assert!(n > 0, "n must be positive");
    let mut u = vec![Vec::new(); n];
    for (idx, &c) in s.values().iter().enumerate() {
        let p = &mut u[idx % n];
        let j = idx / n;
        if p.len() <= j {
            p.resize(j + 1, 0);
        }
        p[j] = c;
    }
    u.into_iter().map(poly::trim).collect()
}

fn check_fields(a: &Field, b: &Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: a.spec().to_string(),
            right: b.spec().to_string(),
        })
    }
}

/// `sum_i u_i v_i`.
pub fn inner_product_euclidean(u: &Sequence, v: &Sequence) -> Result<u32> {
    check_fields(u.field(), v.field())?;
    let f = u.field();
    Ok(u
        .values()
        .iter()
        .zip(v.values())
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
}

/// `sum_i u_i v_i^q` over the extension field of `pair`.
pub fn inner_product_hermitian(u: &Sequence, v: &Sequence, pair: &ExtensionPair) -> Result<u32> {
    check_fields(u.field(), v.field())?;
    if u.field() != pair.ext() {
        return Err(Error::NoQuadraticStructure);
    }
    let f = u.field();
    Ok(u
        .values()
        .iter()
        .zip(v.values())
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, pair.frobenius_q(b)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_interleaves() {
        let f = Field::gf(2, 1).unwrap();
        let s = sigma(&f, &[vec![1], vec![0, 1]]);
        assert_eq!(s.values(), &[1, 0, 0, 1]);
        assert_eq!(s.support(), vec![0, 3]);
        assert!(sigma(&f, &[vec![], vec![]]).is_zero());
        assert_eq!(sigma(&f, &[vec![1, 0, 1]]).values(), &[1, 0, 1]);
    }

    #[test]
    fn hermitian_examples() {
        let pair = ExtensionPair::with_order(2).unwrap();
        let f = pair.ext().clone();
        let w = Sequence::new(f.clone(), vec![2]);
        assert_eq!(inner_product_hermitian(&w, &w, &pair).unwrap(), 1);
        let zero = Sequence::zero(f.clone());
        assert_eq!(inner_product_hermitian(&w, &zero, &pair).unwrap(), 0);
        let base = Sequence::new(pair.base().clone(), vec![1]);
        assert!(matches!(
            inner_product_hermitian(&base, &base, &pair),
            Err(Error::NoQuadraticStructure)
        ));
        assert!(inner_product_euclidean(&base, &w).is_err());
    }

    fn seq(f: &Field, v: Vec<u32>) -> Sequence {
        Sequence::new(f.clone(), v.into_iter().map(|x| x % f.order()).collect())
    }

    proptest! {
        #[test]
        fn sigma_round_trip(q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]),
                            n in 1usize..5,
                            raw in prop::collection::vec(prop::collection::vec(0u32..1000, 0..21), 1..5)) {
            let f = Field::with_order(q).unwrap();
            let mut u: Vec<Poly> = raw.into_iter()
                .map(|p| poly::trim(p.into_iter().map(|x| x % f.order()).collect()))
                .collect();
            u.resize(n, Vec::new());
            u.truncate(n);
            prop_assert_eq!(sigma_inverse(&sigma(&f, &u), n), u);
        }

        #[test]
        fn hermitian_conjugate_symmetry(q in prop::sample::select(vec![2u64, 3, 4, 5]),
                                        a in prop::collection::vec(0u32..10_000, 0..12),
                                        b in prop::collection::vec(0u32..10_000, 0..12)) {
            let pair = ExtensionPair::with_order(q).unwrap();
            let f = pair.ext();
            let (u, v) = (seq(f, a), seq(f, b));
            let uv = inner_product_hermitian(&u, &v, &pair).unwrap();
            let vu = inner_product_hermitian(&v, &u, &pair).unwrap();
            prop_assert_eq!(uv, pair.frobenius_q(vu));
            prop_assert_eq!(inner_product_euclidean(&u, &v).unwrap(), inner_product_euclidean(&v, &u).unwrap());
        }
    }
}

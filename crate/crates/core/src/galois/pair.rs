use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Field;
use crate::error::{Error, Result};

struct PairInner {
    base: Field,
    ext: Field,
    embed: Vec<u32>,
    restrict: Vec<Option<u32>>,
    conj: Vec<u32>,
    normal: (u32, u32),
}

/// GF(q) together with its quadratic extension GF(q^2) and a fixed
/// embedding of the former into the latter.
#[derive(Clone)]
pub struct ExtensionPair(Arc<PairInner>);

impl std::fmt::Debug for ExtensionPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExtensionPair({:?} < {:?})", self.0.base, self.0.ext)
    }
}

impl ExtensionPair {
    /// Pairs GF(q) with GF(q^2) built from the default modulus table.
    pub fn over(base: &Field) -> Result<Self> {
        let ext = Field::gf(base.characteristic(), 2 * base.degree())?;
        Self::new(base.clone(), ext)
    }

    pub fn with_order(q: u64) -> Result<Self> {
        Self::over(&Field::with_order(q)?)
    }

    pub fn new(base: Field, ext: Field) -> Result<Self> {
        if base.characteristic() != ext.characteristic() || ext.degree() != 2 * base.degree() {
            return Err(Error::InvalidField(format!(
                "{} is not a quadratic extension of {}",
                ext.spec(),
                base.spec()
            )));
        }
        let q = base.order() as u64;
        let modulus = &base.spec().modulus;
        // Smallest root of the base modulus in the extension; prime-field
        // coefficients have the same packed value in both fields.
        let eval = |x: u32| {
            modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| ext.add(ext.mul(acc, x), c))
        };
        let root = ext
            .elements()
            .find(|&x| eval(x) == 0)
            .ok_or_else(|| Error::InvalidField("base modulus has no root in the extension".into()))?;
        let embed: Vec<u32> = base
            .elements()
            .map(|a| {
                base.digits(a)
                    .iter()
                    .rev()
                    .fold(0u32, |acc, &c| ext.add(ext.mul(acc, root), c))
            })
            .collect();
        let mut restrict = vec![None; ext.order() as usize];
        for (a, &e) in embed.iter().enumerate() {
            restrict[e as usize] = Some(a as u32);
        }
        let conj: Vec<u32> = ext.elements().map(|x| ext.pow(x, q)).collect();

        let normal = ext
            .elements()
            .find_map(|beta| {
                let beta_q = conj[beta as usize];
                let denom = ext.sub(ext.mul(beta_q, beta_q), ext.mul(beta, beta));
                let dependent = beta == 0 || embed.iter().any(|&c| ext.mul(c, beta) == beta_q);
                (!dependent && denom != 0).then_some((beta, beta_q))
            })
            .expect("a normal basis always exists");

        let pair = ExtensionPair(Arc::new(PairInner {
            base,
            ext,
            embed,
            restrict,
            conj,
            normal,
        }));
        pair.check_embedding(0x5eed)?;
        Ok(pair)
    }

    fn check_embedding(&self, seed: u64) -> Result<()> {
        let (base, ext) = (&self.0.base, &self.0.ext);
        let check = |a: u32, b: u32| {
            let (ea, eb) = (self.embed(a), self.embed(b));
            self.embed(base.add(a, b)) == ext.add(ea, eb)
                && self.embed(base.mul(a, b)) == ext.mul(ea, eb)
                && self.frobenius_q(ea) == ea
        };
        let ok = if base.order() <= 256 {
            base.elements().all(|a| base.elements().all(|b| check(a, b)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..1000).all(|_| check(rng.gen_range(0..base.order()), rng.gen_range(0..base.order())))
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CheckFailed("subfield embedding is not a homomorphism".into()))
        }
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn ext(&self) -> &Field {
        &self.0.ext
    }

    /// Order `q` of the base field.
    pub fn q(&self) -> u32 {
        self.0.base.order()
    }

    #[inline]
    pub fn embed(&self, a: u32) -> u32 {
        self.0.embed[a as usize]
    }

    /// Inverse of [`Self::embed`] on its image.
    #[inline]
    pub fn restrict(&self, x: u32) -> Option<u32> {
        self.0.restrict[x as usize]
    }

    /// `x^q`, the involutive Frobenius of GF(q^2) over GF(q).
    #[inline]
    pub fn frobenius_q(&self, x: u32) -> u32 {
        self.0.conj[x as usize]
    }

    /// The normal basis `(beta, beta^q)` of GF(q^2) over GF(q): the
    /// smallest `beta` with `beta, beta^q` independent over GF(q) and
    /// `beta^(2q) != beta^2`.
    pub fn normal_basis_pair(&self) -> (u32, u32) {
        self.0.normal
    }

    /// Whether `beta` passes the normal-basis test.
    pub fn is_normal_generator(&self, beta: u32) -> bool {
        let ext = self.ext();
        let beta_q = self.frobenius_q(beta);
        beta != 0
            && !self.0.embed.iter().any(|&c| ext.mul(c, beta) == beta_q)
            && ext.sub(ext.mul(beta_q, beta_q), ext.mul(beta, beta)) != 0
    }

    pub fn same_as(&self, other: &ExtensionPair) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.base == other.0.base && self.0.ext == other.0.ext)
    }
}

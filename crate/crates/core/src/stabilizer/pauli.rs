use crate::error::{Error, Result};
use crate::galois::ExtensionPair;
use crate::polymat::Sequence;

/// A phase-free Pauli stream `X(a) Z(b)` over GF(q), as two finitely
/// supported sequences of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliVec {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl PauliVec {
    /// Pads the shorter part with zeros.
    pub fn new(mut a: Vec<u32>, mut b: Vec<u32>) -> Self {
        let len = a.len().max(b.len());
        a.resize(len, 0);
        b.resize(len, 0);
        PauliVec { a, b }
    }

    pub fn identity(len: usize) -> Self {
        PauliVec::new(vec![0; len], vec![0; len])
    }

    /// Single-qudit error `X(x) Z(z)` at `pos` inside `len` qudits.
    pub fn single(len: usize, pos: usize, x: u32, z: u32) -> Self {
        let mut p = Self::identity(len);
        p.a[pos] = x;
        p.b[pos] = z;
        p
    }

    pub fn x_part(&self) -> &[u32] {
        &self.a
    }

    pub fn z_part(&self) -> &[u32] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.a[i] != 0 || self.b[i] != 0).collect()
    }

    /// Number of qudits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// Zero-extends both parts to `len` qudits.
    pub fn padded(mut self, len: usize) -> PauliVec {
        let len = len.max(self.len());
        self.a.resize(len, 0);
        self.b.resize(len, 0);
        self
    }

    /// The row `[a | b]` over GF(q), each half padded to `len`.
    pub fn symplectic_row(&self, len: usize) -> Vec<u32> {
        let mut row = vec![0; 2 * len];
        row[..self.len()].copy_from_slice(&self.a);
        row[len..len + self.len()].copy_from_slice(&self.b);
        row
    }
}

/// The normal basis `(beta, beta^q)` and the inverse of
/// `beta^(2q) - beta^2` for one extension pair, plus a lookup table for
/// inverting `tau`.
#[derive(Debug, Clone)]
pub struct TraceAltContext {
    pair: ExtensionPair,
    beta: u32,
    beta_q: u32,
    denom_inv: u32,
    /// `inverse[beta a + beta^q b] = (a, b)`.
    inverse: Vec<(u32, u32)>,
}

impl TraceAltContext {
    pub fn new(pair: &ExtensionPair) -> Self {
        let ext = pair.ext();
        let (beta, beta_q) = pair.normal_basis_pair();
        let denom = ext.sub(ext.mul(beta_q, beta_q), ext.mul(beta, beta));
        let denom_inv = ext.inv(denom);
        let mut inverse = vec![(0, 0); ext.order() as usize];
        for a in pair.base().elements() {
            for b in pair.base().elements() {
                let v = ext.add(ext.mul(beta, pair.embed(a)), ext.mul(beta_q, pair.embed(b)));
                inverse[v as usize] = (a, b);
            }
        }
        TraceAltContext {
            pair: pair.clone(),
            beta,
            beta_q,
            denom_inv,
            inverse,
        }
    }

    pub fn pair(&self) -> &ExtensionPair {
        &self.pair
    }

    pub fn beta(&self) -> (u32, u32) {
        (self.beta, self.beta_q)
    }

    pub fn denom_inv(&self) -> u32 {
        self.denom_inv
    }

    /// A basis of GF(q^2) over GF(p): `1, x, x^2, ...` in the polynomial
    /// representation.
    pub fn prime_basis(&self) -> Vec<u32> {
        let ext = self.pair.ext();
        let p = ext.characteristic();
        (0..ext.degree()).map(|i| p.pow(i)).collect()
    }

    /// `beta a_i + beta^q b_i` at one position.
    #[inline]
    pub fn tau_symbol(&self, a: u32, b: u32) -> u32 {
        let ext = self.pair.ext();
        ext.add(
            ext.mul(self.beta, self.pair.embed(a)),
            ext.mul(self.beta_q, self.pair.embed(b)),
        )
    }

    #[inline]
    pub fn tau_inverse_symbol(&self, v: u32) -> (u32, u32) {
        self.inverse[v as usize]
    }

    /// `sum_i (v_i w_i^q - v_i^q w_i)` before scaling and tracing.
    fn raw_alternating(&self, v: &[u32], w: &[u32]) -> u32 {
        let ext = self.pair.ext();
        v.iter().zip(w).fold(0, |acc, (&x, &y)| {
            if x == 0 || y == 0 {
                return acc;
            }
            let term = ext.sub(
                ext.mul(x, self.pair.frobenius_q(y)),
                ext.mul(self.pair.frobenius_q(x), y),
            );
            ext.add(acc, term)
        })
    }

    /// The trace-alternating form on raw symbol slices.
    pub fn alternating(&self, v: &[u32], w: &[u32]) -> u32 {
        let ext = self.pair.ext();
        let base = self.pair.base();
        let y = ext.mul(self.raw_alternating(v, w), self.denom_inv);
        // y lies in GF(q); trace down to GF(p)
        let mut acc = 0;
        let mut x = y;
        for _ in 0..base.degree() {
            acc = ext.add(acc, x);
            x = ext.frobenius(x, 1);
        }
        acc
    }
}

/// `tau(e)_i = beta a_i + beta^q b_i`.
pub fn tau(e: &PauliVec, ctx: &TraceAltContext) -> Sequence {
    let values = e
        .x_part()
        .iter()
        .zip(e.z_part())
        .map(|(&a, &b)| ctx.tau_symbol(a, b))
        .collect();
    Sequence::new(ctx.pair.ext().clone(), values)
}

pub fn tau_inverse(s: &Sequence, ctx: &TraceAltContext) -> Result<PauliVec> {
    if s.field() != ctx.pair.ext() {
        return Err(Error::FieldMismatch {
            left: s.field().spec().to_string(),
            right: ctx.pair.ext().spec().to_string(),
        });
    }
    let (a, b) = s.values().iter().map(|&v| ctx.tau_inverse_symbol(v)).unzip();
    Ok(PauliVec::new(a, b))
}

/// `tr_{q/p}((v . w^q - v^q . w) / (beta^(2q) - beta^2))`, an element of
/// GF(p) (packed value below `p`).
pub fn trace_alternating(v: &Sequence, w: &Sequence, ctx: &TraceAltContext) -> Result<u32> {
    let ext = ctx.pair.ext();
    if v.field() != ext || w.field() != ext {
        return Err(Error::NoQuadraticStructure);
    }
    Ok(ctx.alternating(v.values(), w.values()))
}

pub fn commutes(x: &PauliVec, y: &PauliVec, ctx: &TraceAltContext) -> bool {
    ctx.alternating(tau(x, ctx).values(), tau(y, ctx).values()) == 0
}

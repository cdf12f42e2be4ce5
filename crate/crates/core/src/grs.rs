//! Quantum convolutional codes from generalized Reed-Solomon codes.
//!
//! For an odd `n | q^2 - 1` and `alpha` of order `n` in GF(q^2), `H0` and
//! `H1` are the parity-check matrices with rows `alpha^{j(2s+1)}` and
//! `alpha^{-j(2s+1)}`, `s < t`. The code generated by `G(D) = H0 + D H1` is
//! Hermitian self-orthogonal and yields `[(n, n-2t, n; t, 2t+1)]_q`.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::{prime_power, ExtensionPair, Field};
use crate::linalg::{self, Matrix, RowSpace};
use crate::polymat::{
    dual_window_distance_hermitian, free_distance_bruteforce, ConvCode, DistanceResult, FreeDistanceOptions,
    PolyGeneratorMatrix,
};
use crate::stabilizer::{quantum_from_hermitian, QuantumConvCode, QuantumOptions};
use crate::weight::{self, WeightSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GrsFamilyParams {
    pub q: u32,
    pub n: usize,
    pub t: usize,
}

impl GrsFamilyParams {
    /// Checks `n | q^2 - 1`, `n` odd, `q + 1 < n` and
    /// `2 <= 2t <= floor(n / (q+1))`.
    pub fn new(q: u32, n: usize, t: usize) -> Result<Self> {
        let p = GrsFamilyParams { q, n, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (q, n, t) = (self.q as usize, self.n, self.t);
        if prime_power(q as u64).is_none() {
            return Err(Error::InvalidParams(format!("{q} is not a prime power")));
        }
        let order = q * q - 1;
        if n == 0 || order % n != 0 || n % 2 == 0 || n <= q + 1 {
            return Err(Error::InvalidParams(format!(
                "n = {n} must be an odd divisor of {order} larger than {}",
                q + 1
            )));
        }
        if t == 0 || 2 * t > n / (q + 1) {
            return Err(Error::InvalidParams(format!(
                "need 2 <= 2t <= {}, got t = {t}",
                n / (q + 1)
            )));
        }
        Ok(())
    }

    pub fn mu(&self) -> usize {
        2 * self.t
    }

    /// The closed form `(n, n - 2t, n, t, 2t + 1)`.
    pub fn expected(&self) -> (usize, usize, usize, usize, usize) {
        (self.n, self.n - 2 * self.t, self.n, self.t, 2 * self.t + 1)
    }
}

impl std::fmt::Display for GrsFamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "grs(q={}, n={}, t={})", self.q, self.n, self.t)
    }
}

/// Fields and the root of unity shared by every matrix of one member.
#[derive(Debug, Clone)]
pub struct GrsSetup {
    pub params: GrsFamilyParams,
    pub pair: ExtensionPair,
    pub alpha: u32,
}

impl GrsSetup {
    pub fn new(params: GrsFamilyParams) -> Result<Self> {
        params.validate()?;
        let pair = ExtensionPair::with_order(params.q as u64)?;
        let alpha = pair.ext().primitive_nth_root(params.n as u64)?;
        Ok(GrsSetup { params, pair, alpha })
    }

    pub fn field(&self) -> &Field {
        self.pair.ext()
    }

    /// `alpha^e` for any integer `e`.
    pub fn alpha_pow(&self, e: i64) -> u32 {
        self.field().pow(self.alpha, e.rem_euclid(self.params.n as i64) as u64)
    }

    /// Row `(1, alpha^j, alpha^{2j}, ...)`.
    pub fn vandermonde_row(&self, j: i64) -> Vec<u32> {
        (0..self.params.n as i64).map(|l| self.alpha_pow(j * l)).collect()
    }
}

/// `t x n` matrix with entry `(s, j) = w_j gamma_j^s`.
pub fn build_h_gamma_w(f: &Field, gamma: &[u32], w: &[u32], t: usize) -> Result<Matrix> {
    if gamma.len() != w.len() {
        return Err(Error::Dimension(format!("{} nodes but {} weights", gamma.len(), w.len())));
    }
    if let Some(j) = w.iter().position(|&x| x == 0) {
        return Err(Error::InvalidParams(format!("weight w_{j} is zero")));
    }
    for (j, &g) in gamma.iter().enumerate() {
        if g == 0 {
            return Err(Error::InvalidParams(format!("node gamma_{j} is zero")));
        }
        if gamma[..j].contains(&g) {
            return Err(Error::InvalidParams(format!("node gamma_{j} repeats an earlier node")));
        }
    }
    let rows = (0..t)
        .map(|s| gamma.iter().zip(w).map(|(&g, &x)| f.mul(x, f.pow(g, s as u64))).collect())
        .collect();
    Ok(if t == 0 { Matrix::with_cols(gamma.len()) } else { Matrix::from_rows(rows) })
}

fn weighted(setup: &GrsSetup, w_exp: i64, gamma_exp: i64, rows: usize) -> Result<Matrix> {
    let n = setup.params.n as i64;
    let gamma: Vec<u32> = (0..n).map(|j| setup.alpha_pow(gamma_exp * j)).collect();
    let w: Vec<u32> = (0..n).map(|j| setup.alpha_pow(w_exp * j)).collect();
    build_h_gamma_w(setup.field(), &gamma, &w, rows)
}

/// `H0(s, j) = alpha^{j(2s+1)}`.
pub fn build_h0(setup: &GrsSetup) -> Result<Matrix> {
    weighted(setup, 1, 2, setup.params.t)
}

/// `H1(s, j) = alpha^{-j(2s+1)}`.
pub fn build_h1(setup: &GrsSetup) -> Result<Matrix> {
    weighted(setup, -1, -2, setup.params.t)
}

/// `H*` with `w_j = alpha^{-j(2t-1)}`, `gamma_j = alpha^{2j}`; its row space
/// is checked against that of `[H0; H1]`.
pub fn build_hstar(setup: &GrsSetup) -> Result<Matrix> {
    let t = setup.params.t as i64;
    let hstar = weighted(setup, -(2 * t - 1), 2, 2 * setup.params.t)?;
    let stacked = Matrix::stack(&[&build_h0(setup)?, &build_h1(setup)?]);
    let f = setup.field();
    let a = RowSpace::new(f, &hstar);
    let b = RowSpace::new(f, &stacked);
    if !(a.dim() == b.dim() && a.contains_space(f, &stacked) && b.contains_space(f, &hstar)) {
        return Err(Error::CheckFailed(format!(
            "row space of H* differs from [H0; H1] for {}",
            setup.params
        )));
    }
    Ok(hstar)
}

/// `G(D) = H0 + D H1` over GF(q^2).
pub fn build_generator(setup: &GrsSetup) -> Result<PolyGeneratorMatrix> {
    PolyGeneratorMatrix::from_coefficients(setup.field().clone(), &[build_h0(setup)?, build_h1(setup)?])
}

pub fn build_convolutional(setup: &GrsSetup) -> Result<ConvCode> {
    ConvCode::new(build_generator(setup)?, Some(&setup.pair))
}

/// Which of the two row families a product refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// `(alpha^{jl})_l`
    H0,
    /// `(alpha^{-jl})_l`
    H1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerProduct {
    pub left: (RowKind, usize),
    pub right: (RowKind, usize),
    pub value: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowProductReport {
    pub q: u32,
    pub n: usize,
    pub mu: usize,
    pub products: Vec<InnerProduct>,
    /// Whether every product vanished.
    pub holds: bool,
}

fn kind_sign(k: RowKind) -> i64 {
    match k {
        RowKind::H0 => 1,
        RowKind::H1 => -1,
    }
}

/// `<row_a | row_b>_h` for rows `(alpha^{+-il})_l` of length `n`.
pub fn row_product(setup: &GrsSetup, a: (RowKind, usize), b: (RowKind, usize)) -> u32 {
    let f = setup.field();
    let u = setup.vandermonde_row(kind_sign(a.0) * a.1 as i64);
    let v = setup.vandermonde_row(kind_sign(b.0) * b.1 as i64);
    u.iter()
        .zip(&v)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, setup.pair.frobenius_q(y))))
}

/// Evaluates every Hermitian product among the rows with index
/// `1 <= i, j <= mu - 1`: `H0` with `H0`, `H1` with `H1`, `H0` with `H1`.
pub fn verify_row_products(q: u32, n: usize, mu: usize) -> Result<RowProductReport> {
    let qq = q as usize;
    if mu < 2 || n <= qq + 1 || mu > n / (qq + 1) {
        return Err(Error::InvalidParams(format!(
            "need q + 1 < n and 2 <= mu <= floor(n / (q+1)), got q = {q}, n = {n}, mu = {mu}"
        )));
    }
    // the setup only needs a valid (q, n); t = 1 fits since mu >= 2
    let setup = GrsSetup::new(GrsFamilyParams::new(q, n, 1)?)?;
    let mut products = Vec::new();
    for (ka, kb) in [(RowKind::H0, RowKind::H0), (RowKind::H1, RowKind::H1), (RowKind::H0, RowKind::H1)] {
        for i in 1..mu {
            for j in 1..mu {
                let value = row_product(&setup, (ka, i), (kb, j));
                products.push(InnerProduct {
                    left: (ka, i),
                    right: (kb, j),
                    value,
                });
            }
        }
    }
    let holds = products.iter().all(|p| p.value == 0);
    Ok(RowProductReport { q, n, mu, products, holds })
}

/// A pair `(i, 1)` with `i + q = 0 (mod n)`, outside the range of the
/// orthogonality statement, whose product is `n mod p != 0`.
pub fn row_product_range_witness(setup: &GrsSetup) -> InnerProduct {
    let n = setup.params.n;
    let i = n - setup.params.q as usize % n;
    let value = row_product(setup, (RowKind::H0, i), (RowKind::H0, 1));
    InnerProduct {
        left: (RowKind::H0, i),
        right: (RowKind::H0, 1),
        value,
    }
}

/// `sum_l alpha^{sl}` is `0` for `s != 0 (mod n)` and `n mod p` otherwise.
pub fn geometric_sums_hold(setup: &GrsSetup) -> bool {
    let f = setup.field();
    let n = setup.params.n;
    let n_mod_p = (n % f.characteristic() as usize) as u32;
    (0..n as i64).all(|s| {
        let sum = setup.vandermonde_row(s).iter().fold(0, |acc, &x| f.add(acc, x));
        sum == if s == 0 { n_mod_p } else { 0 }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    /// `wt(C^{perp_h})`, expected `2t + 1`.
    pub dual: DistanceResult,
    /// Minimum weight of the row space of `H*`, expected `n - 2t + 1`.
    pub hstar_lower: usize,
    pub hstar_upper: Option<usize>,
    /// Interval for `d_f` of `C` itself.
    pub free: DistanceResult,
}

impl DistanceReport {
    pub fn hstar_exact(&self) -> Option<usize> {
        (Some(self.hstar_lower) == self.hstar_upper).then_some(self.hstar_lower)
    }
}

pub fn verify_distances(setup: &GrsSetup, free: &FreeDistanceOptions, budget: &Budget) -> Result<DistanceReport> {
    let g = build_generator(setup)?;
    let dual = dual_window_distance_hermitian(&g, &setup.pair, 3, budget)?;
    let hstar = build_hstar(setup)?;
    let s: WeightSearch = weight::min_weight_rowspace(setup.field(), &hstar, &budget.meter());
    let mut free = free_distance_bruteforce(&g, free);
    // every nonzero block of a codeword lies in the row space of H*
    if s.lower > free.df_lower && s.lower <= free.df_upper {
        free.df_lower = s.lower;
        free.exact = free.df_lower == free.df_upper;
    }
    Ok(DistanceReport {
        dual,
        hstar_lower: s.lower,
        hstar_upper: (s.upper != weight::INFINITE).then_some(s.upper),
        free,
    })
}

/// The quantum code of one member.
pub fn quantum_code(setup: &GrsSetup, opts: &QuantumOptions) -> Result<QuantumConvCode> {
    let c = build_convolutional(setup)?;
    let p = setup.params;
    let code = quantum_from_hermitian(&c, &setup.pair, opts)?
        .with_family("grs", serde_json::json!({ "q": p.q, "n": p.n, "t": p.t }));
    let (n, k, m, delta, d) = p.expected();
    let structural = (code.n, code.k, code.m, code.delta) == (n, k, m, delta);
    let distance_ok = code.df.value().map_or(code.df.lower <= d, |v| v == d);
    if !(structural && distance_ok) {
        return Err(Error::CheckFailed(format!(
            "{p} gave {} instead of [({n}, {k}, {m}; {delta}, {d})]_{}",
            code.label(),
            p.q
        )));
    }
    Ok(code)
}

/// All valid `(q, n, t)` with `q <= q_max`, sorted.
pub fn enumerate_family(q_max: u32) -> Vec<GrsFamilyParams> {
    let mut out = Vec::new();
    // GF(q^2) must fit the field size cap
    for q in 2..=q_max.min(256) {
        if prime_power(q as u64).is_none() {
            continue;
        }
        let qq = q as usize;
        let order = qq * qq - 1;
        for n in (qq + 2..=order).filter(|n| order.is_multiple_of(*n) && n % 2 == 1) {
            for t in 1..=n / (qq + 1) / 2 {
                out.push(GrsFamilyParams { q, n, t });
            }
        }
    }
    out.sort();
    out
}

/// Checks that every row of `a` is Hermitian-orthogonal to every row of
/// `b`.
pub fn rows_orthogonal(pair: &ExtensionPair, a: &Matrix, b: &Matrix) -> bool {
    let f = pair.ext();
    let bc = b.map(|x| pair.frobenius_q(x));
    a.iter_rows().all(|r| bc.iter_rows().all(|s| linalg::dot(f, r, s) == 0))
}

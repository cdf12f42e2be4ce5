//! Quantum convolutional codes from binary Reed-Muller codes.
//!
//! The generator stacks `M_{i,l} = (2^{l-i-1} copies of w_{i+1}) (x)
//! B_{m-l}^{r-i}` for `i < l` and `M_{l,l} = [G_{m-l}^{r-l} 0 ... 0]`, then
//! slices the columns into `2^l` blocks `G_0, ..., G_{2^l - 1}`.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, OrthogonalityWitness, Result};
use crate::galois::Field;
use crate::linalg::{self, Matrix, RowSpace};
use crate::polymat::{
    dual_window_distance, self_orthogonality_witness, ConvCode, DistanceResult, Form, PolyGeneratorMatrix,
};
use crate::stabilizer::{quantum_from_euclidean, QuantumConvCode, QuantumOptions};
use crate::weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RmFamilyParams {
    pub m: usize,
    pub l: usize,
    pub r: usize,
}

/// Largest `m` accepted: vectors have `2^m` entries.
pub const MAX_M: usize = 12;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl RmFamilyParams {
    /// Parameters inside the orthogonality range: `1 <= l <= m` and
    /// `r <= floor((m - l - 1) / 2)`.
    pub fn new(m: usize, l: usize, r: usize) -> Result<Self> {
        let p = RmFamilyParams { m, l, r };
        p.validate()?;
        Ok(p)
    }

    /// Parameters for which the matrices exist, inside the range or not.
    pub fn unchecked(m: usize, l: usize, r: usize) -> Result<Self> {
        if m > MAX_M || l == 0 || l > m || r >= m - l {
            return Err(Error::InvalidParams(format!(
                "need 1 <= l <= m <= {MAX_M} and r < m - l, got (m, l, r) = ({m}, {l}, {r})"
            )));
        }
        Ok(RmFamilyParams { m, l, r })
    }

    pub fn validate(&self) -> Result<()> {
        Self::unchecked(self.m, self.l, self.r)?;
        if !self.in_range() {
            return Err(Error::InvalidParams(format!(
                "r = {} exceeds floor((m - l - 1) / 2) for (m, l) = ({}, {})",
                self.r, self.m, self.l
            )));
        }
        Ok(())
    }

    /// `r <= floor((m - l - 1) / 2)`, equivalently `r <= (m - l) - r - 1`.
    pub fn in_range(&self) -> bool {
        self.m > self.l && 2 * self.r < self.m - self.l
    }

    /// Block length `2^{m-l}`.
    pub fn n(&self) -> usize {
        1 << (self.m - self.l)
    }

    /// `k(r) = sum_{i <= r} C(m - l, i)`.
    pub fn k(&self) -> usize {
        (0..=self.r).map(|i| binomial(self.m - self.l, i)).sum()
    }

    /// `2^{m-l} - 2 k(r)`, possibly nonpositive.
    pub fn quantum_dimension(&self) -> i64 {
        self.n() as i64 - 2 * self.k() as i64
    }

    pub fn memory(&self) -> usize {
        (1 << self.l) - 1
    }

    /// The overlap originally claimed for the family, `2^{m-l} (2^l - 1)`.
    pub fn claimed_m(&self) -> usize {
        self.n() * self.memory()
    }
}

impl std::fmt::Display for RmFamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rm(m={}, l={}, r={})", self.m, self.l, self.r)
    }
}

fn gf2() -> Field {
    Field::gf(2, 1).expect("GF(2) exists")
}

/// Coordinatewise AND.
pub fn boolean_product(u: &[u32], v: &[u32]) -> Result<Vec<u32>> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", u.len(), v.len())));
    }
    Ok(u.iter().zip(v).map(|(a, b)| a & b).collect())
}

/// `b_0` is all ones; for `i >= 1` position `j` holds bit
/// `floor(j / 2^{i-1}) mod 2`.
pub fn basis_vector(i: usize, m: usize) -> Result<Vec<u32>> {
    if i > m || m > MAX_M {
        return Err(Error::InvalidParams(format!("basis vector b_{i} for m = {m}")));
    }
    Ok((0..1usize << m)
        .map(|j| if i == 0 { 1 } else { ((j >> (i - 1)) & 1) as u32 })
        .collect())
}

/// Lexicographic `i`-subsets of `1..=m`.
fn subsets(m: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            cur.push(x);
            go(x + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, i, &mut Vec::new(), &mut out);
    out
}

/// `B_m^i`: products of `i` distinct `b_1, ..., b_m`, lexicographic;
/// `B_m^0 = {b_0}`.
pub fn products_of_degree(m: usize, i: usize) -> Result<Matrix> {
    if i > m || m > MAX_M {
        return Err(Error::InvalidParams(format!("B_{m}^{i}")));
    }
    let ones = basis_vector(0, m)?;
    let rows = subsets(m, i)
        .into_iter()
        .map(|s| {
            s.iter().try_fold(ones.clone(), |acc, &b| boolean_product(&acc, &basis_vector(b, m)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

/// `G_m^r = [B_m^r; ...; B_m^0]`.
pub fn rm_generator(r: usize, m: usize) -> Result<Matrix> {
    if r >= m && m > 0 || m > MAX_M {
        return Err(Error::InvalidParams(format!("G_{m}^{r} needs r < m")));
    }
    let parts = (0..=r).rev().map(|i| products_of_degree(m, i)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::stack(&parts.iter().collect::<Vec<_>>()))
}

/// `w_mu = (1, 1, 0, ..., 0)` of length `2^mu`.
pub fn w_vector(mu: usize) -> Vec<u32> {
    let mut w = vec![0; 1 << mu];
    w[0] = 1;
    w[1] = 1;
    w
}

/// `M_{i,l}`, or `None` when its row count `C(m - l, r - i)` is zero
/// (`r < i`).
pub fn build_m(i: usize, p: &RmFamilyParams) -> Result<Option<Matrix>> {
    let (m, l, r) = (p.m, p.l, p.r);
    if i > l {
        return Err(Error::InvalidParams(format!("M_{{{i},{l}}}")));
    }
    if r < i {
        return Ok(None);
    }
    let width = 1usize << m;
    if i == l {
        let g = rm_generator(r - l, m - l)?;
        let rows = g
            .iter_rows()
            .map(|row| {
                let mut v = row.to_vec();
                v.resize(width, 0);
                v
            })
            .collect();
        return Ok(Some(Matrix::from_rows(rows)));
    }
    let w = w_vector(i + 1);
    let prefix: Vec<u32> = (0..1usize << (l - i - 1)).flat_map(|_| w.iter().copied()).collect();
    let b = products_of_degree(m - l, r - i)?;
    let rows = b
        .iter_rows()
        .map(|row| prefix.iter().flat_map(|&x| row.iter().map(move |&y| x & y)).collect::<Vec<u32>>())
        .collect::<Vec<_>>();
    debug_assert!(rows.iter().all(|v| v.len() == width));
    Ok(Some(Matrix::from_rows(rows)))
}

/// The blocks `G_0, ..., G_{2^l - 1}` of the stacked `M` matrix.
pub fn coefficient_blocks(p: &RmFamilyParams) -> Result<Vec<Matrix>> {
    let parts: Vec<Matrix> = (0..=p.l).filter_map(|i| build_m(i, p).transpose()).collect::<Result<_>>()?;
    let stacked = Matrix::stack(&parts.iter().collect::<Vec<_>>());
    let n = p.n();
    Ok((0..1usize << p.l)
        .map(|b| stacked.select_columns(&(b * n..(b + 1) * n).collect::<Vec<_>>()))
        .collect())
}

/// Builds `G(D) = sum G_i D^i` and checks that `G_0` spans `R(r, m - l)`
/// and that every nonzero row of a later block is a row of `G_0`.
pub fn build_convolutional(p: &RmFamilyParams) -> Result<ConvCode> {
    let p = RmFamilyParams::unchecked(p.m, p.l, p.r)?;
    let f = gf2();
    let blocks = coefficient_blocks(&p)?;
    let rm = rm_generator(p.r, p.m - p.l)?;
    let g0 = &blocks[0];
    let span = RowSpace::new(&f, g0);
    if !(span.dim() == linalg::rank(&f, &rm) && span.contains_space(&f, &rm)) {
        return Err(Error::CheckFailed(format!("G_0 does not span R({}, {}) for {p}", p.r, p.m - p.l)));
    }
    let g0_rows: Vec<&[u32]> = g0.iter_rows().collect();
    for (i, b) in blocks.iter().enumerate().skip(1) {
        if let Some(row) = b.iter_rows().find(|r| r.iter().any(|&x| x != 0) && !g0_rows.contains(r)) {
            return Err(Error::CheckFailed(format!("row {row:?} of G_{i} is not a row of G_0 for {p}")));
        }
    }
    ConvCode::new(PolyGeneratorMatrix::from_coefficients(f, &blocks)?, None)
}

#[derive(Debug, Clone, Serialize)]
pub struct RmOrthogonalityReport {
    pub params: RmFamilyParams,
    /// `(i, j)` pairs with `G_i G_j^T != 0`.
    pub nonzero_products: Vec<(usize, usize)>,
    pub products_checked: usize,
    /// First violated shift condition of the convolutional code.
    pub witness: Option<OrthogonalityWitness>,
    /// `r <= (m - l) - r - 1`.
    pub sufficient_condition: bool,
}

impl RmOrthogonalityReport {
    pub fn holds(&self) -> bool {
        self.nonzero_products.is_empty() && self.witness.is_none()
    }
}

/// Computes every `G_i G_j^T` and the shift criterion of `G(D)`.
pub fn verify_self_orthogonal(p: &RmFamilyParams) -> Result<RmOrthogonalityReport> {
    let p = RmFamilyParams::unchecked(p.m, p.l, p.r)?;
    let f = gf2();
    let blocks = coefficient_blocks(&p)?;
    let mut nonzero_products = Vec::new();
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate() {
            if !linalg::mul(&f, a, &b.transpose()).is_zero() {
                nonzero_products.push((i, j));
            }
        }
    }
    let g = PolyGeneratorMatrix::from_coefficients(f, &blocks)?;
    Ok(RmOrthogonalityReport {
        params: p,
        nonzero_products,
        products_checked: blocks.len() * blocks.len(),
        witness: self_orthogonality_witness(&g, &Form::Euclidean)?,
        sufficient_condition: p.in_range(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RmDualReport {
    pub dual: DistanceResult,
    pub expected: usize,
    /// A lightest word of `R(r, m-l)^perp`, placed in one block, is
    /// orthogonal to every shift of every row.
    pub single_block_word_is_dual: bool,
    pub single_block_weight: usize,
}

pub fn dual_free_distance(p: &RmFamilyParams, budget: &Budget) -> Result<RmDualReport> {
    let c = build_convolutional(p)?;
    let f = gf2();
    let g = c.generator();
    let dual = dual_window_distance(g, 3, budget);
    let rm = rm_generator(p.r, p.m - p.l)?;
    let s = weight::min_dependent_columns(&f, &rm, None, &budget.meter());
    let (ok, w) = match s.witness {
        Some(word) => {
            let ok = g.coefficients().iter().all(|b| linalg::vec_mul(&f, &word, &b.transpose()).iter().all(|&x| x == 0));
            (ok, linalg::weight(&word))
        }
        None => (false, 0),
    };
    Ok(RmDualReport {
        dual,
        expected: 1 << (p.r + 1),
        single_block_word_is_dual: ok,
        single_block_weight: w,
    })
}

/// The quantum code of one member; records the claimed overlap and the
/// degree-0 reading next to the computed parameters.
pub fn quantum_code(p: &RmFamilyParams, opts: &QuantumOptions) -> Result<QuantumConvCode> {
    p.validate()?;
    if p.quantum_dimension() <= 0 {
        return Err(Error::InvalidParams(format!(
            "{p} has quantum dimension {}",
            p.quantum_dimension()
        )));
    }
    let c = build_convolutional(p)?;
    let mut code = quantum_from_euclidean(&c, opts)?
        .with_family("rm", serde_json::json!({ "m": p.m, "l": p.l, "r": p.r }));
    code.claimed_m = Some(p.claimed_m());
    code.corrected_delta = Some(0);
    let (n, k, d) = (p.n(), p.quantum_dimension() as usize, 1usize << (p.r + 1));
    let distance_ok = code.df.value().map_or(code.df.lower <= d, |v| v == d);
    if !((code.n, code.k, code.delta) == (n, k, 0) && distance_ok) {
        return Err(Error::CheckFailed(format!(
            "{p} gave {} instead of [({n}, {k}, .; 0, {d})]_2",
            code.label()
        )));
    }
    Ok(code)
}

/// All in-range `(m, l, r)` with `m <= m_max` and positive quantum
/// dimension, sorted.
pub fn enumerate_family(m_max: usize) -> Vec<RmFamilyParams> {
    let mut out = Vec::new();
    for m in 1..=m_max.min(MAX_M) {
        for l in 1..m {
            for r in 0..=(m - l - 1) / 2 {
                let p = RmFamilyParams { m, l, r };
                if p.quantum_dimension() > 0 {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out
}

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::pauli::{tau, PauliVec, TraceAltContext};
use super::window::build_stabilizer_window;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::galois::ExtensionPair;
use crate::linalg::{self, Matrix, RowSpace};
use crate::polymat::{
    dual_window_distance, dual_window_matrix, expand_window, free_distance_lower_bound, row_reduce,
    self_orthogonality_witness, ConvCode, DegreeInfo, DistanceResult, Form, PolyGeneratorMatrix, Sequence,
    TriState,
};
use crate::weight::{self, INFINITE};

/// Which self-orthogonality the source code satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceForm {
    /// `C` over GF(q^2) with `C` inside its Hermitian dual.
    Hermitian,
    /// `C` over GF(q) with `C` inside its Euclidean dual.
    Euclidean,
}

/// The free distance interval of a quantum code. `upper` is `None` when no
/// candidate word was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfInterval {
    pub lower: usize,
    pub upper: Option<usize>,
    pub exact: bool,
}

impl DfInterval {
    fn new(lower: usize, upper: usize) -> Self {
        let upper = (upper != INFINITE).then_some(upper);
        let lower = upper.map_or(lower, |u| lower.min(u));
        DfInterval {
            lower,
            upper,
            exact: upper == Some(lower),
        }
    }

    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// How `wt(C^perp \ C)` was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistancePath {
    /// Every nonzero word of `C` is heavier than `wt(C^perp)`, so the
    /// lightest dual words lie outside `C`.
    Separated,
    /// Single-block dual words were enumerated and filtered by membership
    /// in `C`.
    Filtered,
    /// Neither argument applied within the limits.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumOptions {
    /// Depth of the windows searched for multi-block dual words.
    pub t: usize,
    /// Applied to each distance search separately.
    pub budget: Budget,
    /// Largest number of projective single-block dual words enumerated by
    /// the membership filter.
    pub filter_cap: u64,
}

impl Default for QuantumOptions {
    fn default() -> Self {
        QuantumOptions {
            t: 3,
            budget: Budget::steps(400_000_000),
            filter_cap: 1 << 22,
        }
    }
}

/// Everything computed on the way to a descriptor.
#[derive(Debug, Clone)]
pub struct QuantumSource {
    pub pair: ExtensionPair,
    pub ctx: TraceAltContext,
    /// `G(D)` over GF(q^2): the source itself, or its embedding.
    pub lifted: PolyGeneratorMatrix,
    pub degree: DegreeInfo,
    /// `n` times the memory of the source encoder.
    pub overlap: usize,
    /// Whether `m / n` is known to be the least memory of any encoder.
    pub memory_minimal: bool,
    /// `wt(C^perp)` (Hermitian or Euclidean).
    pub dual: DistanceResult,
    /// Lower bound on the weight of nonzero words of `C`.
    pub free_lower: usize,
    pub path: DistancePath,
    /// A lightest known word of `C^perp \ C`, over GF(q^2).
    pub certificate: Option<Sequence>,
}

/// `[(n, k, m; delta, d_f)]_q`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumConvCode {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// Degree of a basic encoder of the source code.
    pub delta: usize,
    pub df: DfInterval,
    pub pure: TriState,
    pub singleton_bound: usize,
    pub optimal: bool,
    pub family: String,
    pub family_params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_delta: Option<usize>,
    pub form: SourceForm,
    /// The source generator, over GF(q^2) or GF(q) according to `form`.
    pub generator: PolyGeneratorMatrix,
    #[serde(skip)]
    source: Option<Arc<QuantumSource>>,
}

impl QuantumConvCode {
    /// `None` for descriptors read back from JSON.
    pub fn source(&self) -> Option<&QuantumSource> {
        self.source.as_deref()
    }

    fn require_source(&self) -> Result<&QuantumSource> {
        self.source()
            .ok_or_else(|| Error::CheckFailed("descriptor carries no computed source".into()))
    }

    pub fn with_family(mut self, family: &str, params: serde_json::Value) -> Self {
        self.family = family.to_string();
        self.family_params = params;
        self
    }

    /// `df_upper <= singleton_bound` whenever an upper bound is known.
    pub fn within_singleton(&self) -> bool {
        self.df.upper.is_none_or(|u| u <= self.singleton_bound)
    }

    /// Short `[(n,k,m;delta,d)]_q` label.
    pub fn label(&self) -> String {
        let d = match (self.df.exact, self.df.upper) {
            (true, _) => self.df.lower.to_string(),
            (false, Some(u)) => format!("{}..{}", self.df.lower, u),
            (false, None) => format!(">={}", self.df.lower),
        };
        format!("[({}, {}, {}; {}, {})]_{}", self.n, self.k, self.m, self.delta, d, self.q)
    }
}

/// `((n-k)/2) (floor(2 delta / (n+k)) + 1) + delta + 1`.
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> Result<usize> {
    if k >= n {
        return Err(Error::InvalidParams(format!("need k < n, got k = {k}, n = {n}")));
    }
    if !(n - k).is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("n - k = {} is odd", n - k)));
    }
    Ok((n - k) / 2 * (2 * delta / (n + k) + 1) + delta + 1)
}

/// Quantum code from `C` over GF(q^2) with `C` inside its Hermitian dual.
pub fn quantum_from_hermitian(c: &ConvCode, pair: &ExtensionPair, opts: &QuantumOptions) -> Result<QuantumConvCode> {
    let g = c.generator();
    let form = Form::Hermitian(pair.clone());
    form.check_field(g.field())?;
    if let Some(w) = self_orthogonality_witness(g, &form)? {
        return Err(Error::NotSelfOrthogonal(w));
    }
    let conj = g.map_coefficients(|x| pair.frobenius_q(x));
    let dist = quantum_distance(g, &conj, opts);
    let certificate = dist.witness.clone().map(|w| Sequence::new(pair.ext().clone(), w));
    finish(c, SourceForm::Hermitian, pair, g.clone(), dist, certificate)
}

/// Quantum code from `C` over GF(q) with `C` inside its Euclidean dual.
/// Distances are computed over GF(q); the stabilizer uses the embedding of
/// `G(D)` into GF(q^2), which is Hermitian self-orthogonal.
pub fn quantum_from_euclidean(c: &ConvCode, opts: &QuantumOptions) -> Result<QuantumConvCode> {
    let g = c.generator();
    if let Some(w) = self_orthogonality_witness(g, &Form::Euclidean)? {
        return Err(Error::NotSelfOrthogonal(w));
    }
    let pair = ExtensionPair::over(g.field())?;
    let lifted = g.with_field(pair.ext().clone(), |x| pair.embed(x));
    let dist = quantum_distance(g, g, opts);
    let certificate = dist
        .witness
        .clone()
        .map(|w| Sequence::new(pair.ext().clone(), w.iter().map(|&x| pair.embed(x)).collect()));
    finish(c, SourceForm::Euclidean, &pair, lifted, dist, certificate)
}

fn finish(
    c: &ConvCode,
    form: SourceForm,
    pair: &ExtensionPair,
    lifted: PolyGeneratorMatrix,
    dist: QuantumDistance,
    certificate: Option<Sequence>,
) -> Result<QuantumConvCode> {
    let (n, kc) = (c.n, c.k);
    if 2 * kc >= n {
        return Err(Error::InvalidParams(format!(
            "quantum dimension n - 2k = {n} - {} is not positive",
            2 * kc
        )));
    }
    let k = n - 2 * kc;
    let delta = c.degree.internal_degree.unwrap_or(0);
    let overlap = n * c.memory;
    let (m, memory_minimal) = if c.degree.internal_degree == Some(0) {
        (0, true)
    } else {
        (overlap, c.right_invertible == TriState::Yes && c.degree.reduced)
    };
    let df = DfInterval::new(dist.lower, dist.upper);
    let dual = &dist.dual;
    let pure = if df.exact && dual.exact {
        (df.lower == dual.df_lower).into()
    } else if dual.df_upper < df.lower {
        TriState::No
    } else {
        TriState::Unknown
    };
    let bound = singleton_bound(n, k, delta)?;
    Ok(QuantumConvCode {
        q: pair.q(),
        n,
        k,
        m,
        delta,
        df,
        pure,
        singleton_bound: bound,
        optimal: df.value() == Some(bound),
        family: "custom".into(),
        family_params: serde_json::json!({}),
        claimed_m: None,
        corrected_delta: None,
        form,
        generator: c.generator().clone(),
        source: Some(Arc::new(QuantumSource {
            pair: pair.clone(),
            ctx: TraceAltContext::new(pair),
            lifted,
            degree: c.degree.clone(),
            overlap,
            memory_minimal,
            dual: dist.dual,
            free_lower: dist.free_lower,
            path: dist.path,
            certificate,
        })),
    })
}

struct QuantumDistance {
    lower: usize,
    upper: usize,
    witness: Option<Vec<u32>>,
    dual: DistanceResult,
    free_lower: usize,
    path: DistancePath,
}

/// `wt(C^perp \ C)` where `C^perp` is the Euclidean dual of `conj`.
fn quantum_distance(g: &PolyGeneratorMatrix, conj: &PolyGeneratorMatrix, opts: &QuantumOptions) -> QuantumDistance {
    let f = g.field();
    let dual = dual_window_distance(conj, opts.t, &opts.budget);
    let free_lower = free_distance_lower_bound(g, &opts.budget.meter());
    if dual.exact && !dual.is_infinite() && free_lower > dual.df_upper {
        return QuantumDistance {
            lower: dual.df_lower,
            upper: dual.df_upper,
            witness: dual.certificate.as_ref().map(|s| s.values().to_vec()),
            dual,
            free_lower,
            path: DistancePath::Separated,
        };
    }

    let meter = opts.budget.meter();
    let mu = conj.memory();
    let multi_lower = if mu == 0 {
        // blocks of a word are dual words on their own
        INFINITE
    } else {
        let last = weight::min_dependent_columns(f, &conj.coefficient(mu), None, &meter);
        let first = weight::min_dependent_columns(f, &conj.coefficient(0), None, &meter);
        if last.lower == INFINITE || first.lower == INFINITE {
            INFINITE
        } else {
            last.lower + first.lower
        }
    };
    let unresolved = |dual: DistanceResult| QuantumDistance {
        lower: dual.df_lower,
        upper: INFINITE,
        witness: None,
        dual,
        free_lower,
        path: DistancePath::Unresolved,
    };
    let Some((best, witness)) = filter_single_block(g, conj, opts.filter_cap, &meter) else {
        return unresolved(dual);
    };
    let lower = dual.df_lower.max(best.min(multi_lower));
    QuantumDistance {
        lower,
        upper: best,
        witness,
        dual,
        free_lower,
        path: DistancePath::Filtered,
    }
}

/// Lightest word supported on one block that is orthogonal to every row
/// of `conj` and does not lie in `C`. `None` if the enumeration does not
/// fit or the membership test is unavailable.
fn filter_single_block(
    g: &PolyGeneratorMatrix,
    conj: &PolyGeneratorMatrix,
    cap: u64,
    meter: &Meter,
) -> Option<(usize, Option<Vec<u32>>)> {
    let f = g.field();
    let members = single_block_members(g)?;
    let kernel = linalg::kernel(f, &conj.stacked_coefficients());
    let dim = kernel.rows();
    let q = f.order() as u64;
    let count = q.checked_pow(dim as u32)?;
    if count / (q - 1).max(1) > cap {
        return None;
    }
    let mut best = (INFINITE, None);
    for lead in 0..dim {
        let tail = dim - lead - 1;
        for idx in 0..q.pow(tail as u32) {
            if !meter.tick(kernel.cols() as u64) {
                return None;
            }
            let mut v = kernel.row(lead).to_vec();
            let mut x = idx;
            for r in lead + 1..dim {
                let c = (x % q) as u32;
                x /= q;
                if c != 0 {
                    linalg::axpy(f, &mut v, c, kernel.row(r));
                }
            }
            let w = linalg::weight(&v);
            if w < best.0 && !members.contains(f, &v) {
                best = (w, Some(v));
            }
        }
    }
    Some(best)
}

/// Words of `C` supported on block 0: with a row-reduced encoder these are
/// the combinations of the constant rows.
fn single_block_members(g: &PolyGeneratorMatrix) -> Option<RowSpace> {
    let f = g.field();
    let rows = row_reduce(g)?;
    let constant: Vec<Vec<u32>> = rows
        .iter()
        .filter(|r| r.iter().all(|p| p.len() <= 1))
        .map(|r| r.iter().map(|p| p.first().copied().unwrap_or(0)).collect())
        .collect();
    let m = if constant.is_empty() {
        Matrix::with_cols(g.n())
    } else {
        Matrix::from_rows(constant)
    };
    Some(RowSpace::new(f, &m))
}

/// Detectability against the stabilizer of `code`, for errors supported on
/// blocks `0..=t + mu` of the depth-`t` window.
pub struct Detector {
    ctx: TraceAltContext,
    qudits: usize,
    /// GF(p)-multiples of every shift of every row meeting the window,
    /// truncated to it.
    checks: Vec<Vec<u32>>,
    /// Words of `C` supported inside the window.
    members: RowSpace,
    member_len: usize,
}

impl Detector {
    pub fn new(code: &QuantumConvCode, t: usize) -> Result<Self> {
        let src = code.require_source()?;
        let g = &src.lifted;
        let ext = src.pair.ext();
        let (n, mu) = (g.n(), g.memory());
        let blocks = t + 1 + mu;
        let basis = src.ctx.prime_basis();
        let mut checks = Vec::new();
        for r in dual_window_matrix(g, blocks).iter_rows() {
            for &lambda in &basis {
                checks.push(linalg::scale(ext, r, lambda));
            }
        }
        // a row-reduced encoder reaches every codeword inside the window
        // with inputs of degree at most t + mu
        let reduced = match row_reduce(g) {
            Some(rows) => PolyGeneratorMatrix::new(ext.clone(), rows)?,
            None => g.clone(),
        };
        let span = expand_window(&reduced, t + mu).into_matrix();
        let member_len = span.cols().max(blocks * n);
        let padded = Matrix::from_rows(
            span.iter_rows()
                .map(|r| {
                    let mut v = r.to_vec();
                    v.resize(member_len, 0);
                    v
                })
                .collect(),
        );
        Ok(Detector {
            ctx: src.ctx.clone(),
            qudits: blocks * n,
            checks,
            members: RowSpace::new(ext, &padded),
            member_len,
        })
    }

    /// Number of qudits an error may occupy.
    pub fn qudits(&self) -> usize {
        self.qudits
    }

    /// Detectable iff `e` fails to commute with some stabilizer element or
    /// a multiple of `e` lies in the stabilizer.
    pub fn is_detectable(&self, e: &PauliVec) -> Result<bool> {
        if e.support().last().is_some_and(|&i| i >= self.qudits) {
            return Err(Error::OutsideWindow);
        }
        let image = tau(e, &self.ctx);
        let v = image.padded(self.qudits);
        Ok(self.detects_image(&v))
    }

    /// [`Self::is_detectable`] on `tau(e)`, given as `qudits` symbols.
    pub fn detects_image(&self, v: &[u32]) -> bool {
        if self.checks.iter().any(|r| self.ctx.alternating(v, r) != 0) {
            return true;
        }
        let mut w = v.to_vec();
        w.resize(self.member_len, 0);
        self.members.contains(self.ctx.pair().ext(), &w)
    }
}

pub fn is_detectable(e: &PauliVec, code: &QuantumConvCode, t: usize) -> Result<bool> {
    Detector::new(code, t)?.is_detectable(e)
}

/// The Pauli error `tau^{-1}` of the distance certificate.
pub fn certificate_error(code: &QuantumConvCode) -> Result<Option<PauliVec>> {
    let src = code.require_source()?;
    src.certificate
        .as_ref()
        .map(|s| super::pauli::tau_inverse(s, &src.ctx))
        .transpose()
}

/// Recovers `sigma^{-1} tau(S)` from the depth-`t` stabilizer window and
/// checks it against the source: `(n-k)/2` rows, Hermitian
/// self-orthogonality, memory at most `ceil(overlap / n)`, and the same
/// window span.
pub fn classical_image(code: &QuantumConvCode, t: usize) -> Result<ConvCode> {
    let src = code.require_source()?;
    let g = &src.lifted;
    let ext = src.pair.ext();
    let (n, kc) = (g.n(), g.k());
    let window = build_stabilizer_window(g, t, &src.ctx)?;
    let blocks = window.qudits() / n;
    let mut coeffs = vec![Matrix::zeros(kc, n); blocks];
    for i in 0..kc {
        let image = tau(window.row_generator(i), &src.ctx).padded(window.qudits());
        for (b, c) in coeffs.iter_mut().enumerate() {
            c.row_mut(i).copy_from_slice(&image[b * n..(b + 1) * n]);
        }
    }
    let recovered = PolyGeneratorMatrix::from_coefficients(ext.clone(), &coeffs)?;
    if 2 * recovered.k() != code.n - code.k {
        return Err(Error::CheckFailed(format!(
            "recovered {} rows, expected {}",
            recovered.k(),
            (code.n - code.k) / 2
        )));
    }
    if let Some(w) = self_orthogonality_witness(&recovered, &Form::Hermitian(src.pair.clone()))? {
        return Err(Error::NotSelfOrthogonal(w));
    }
    let bound = src.overlap.div_ceil(n);
    if recovered.memory() > bound {
        return Err(Error::CheckFailed(format!(
            "recovered memory {} exceeds ceil(m/n) = {bound}",
            recovered.memory()
        )));
    }
    let a = expand_window(&recovered, t).into_matrix();
    let b = window.image();
    let len = a.cols().max(b.cols());
    let pad = |m: &Matrix| {
        Matrix::from_rows(
            m.iter_rows()
                .map(|r| {
                    let mut v = r.to_vec();
                    v.resize(len, 0);
                    v
                })
                .collect(),
        )
    };
    let (a, b) = (pad(&a), pad(b));
    let ra = RowSpace::new(ext, &a);
    if !(ra.contains_space(ext, &b) && RowSpace::new(ext, &b).contains_space(ext, &a)) {
        return Err(Error::CheckFailed("recovered code spans a different window".into()));
    }
    ConvCode::new(recovered, Some(&src.pair))
}

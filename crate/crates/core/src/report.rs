//! Per-member verification reports for both families and for arbitrary
//! code descriptors.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::{ExtensionPair, Field};
use crate::grs::{self, GrsFamilyParams, GrsSetup};
use crate::polymat::{free_distance_bruteforce, self_orthogonality_witness, ConvCode, Form, FreeDistanceOptions};
use crate::rm::{self, RmFamilyParams};
use crate::stabilizer::{
    assemble, certificate_error, classical_image, quantum_from_euclidean, quantum_from_hermitian, Detector,
    PauliVec, QuantumConvCode, QuantumOptions, SourceForm,
};
use crate::polymat::TriState;

/// Ordered so that the worst status is the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A search ran out of budget before settling the claim.
    Bounded,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Bounded => "bounded",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub member: String,
    pub claims: Vec<Claim>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        self.claims.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// 0 when every claim passes, 1 on any failure, otherwise 2.
pub fn exit_code<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> i32 {
    match reports.into_iter().map(|r| r.status()).max() {
        Some(Status::Fail) => 1,
        Some(Status::Bounded) => 2,
        _ => 0,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest window depth for the S1-S3 checks.
    pub t_max: usize,
    pub free: FreeDistanceOptions,
    pub quantum: QuantumOptions,
    /// Seeds the random detectability sample.
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            t_max: 3,
            free: FreeDistanceOptions::default(),
            quantum: QuantumOptions::default(),
            seed: 0x5eed,
            samples: 64,
        }
    }
}

impl VerifyOptions {
    /// Caps every search at `cap` of wall time.
    pub fn with_time_cap(mut self, cap: Duration) -> Self {
        self.free.budget = self.free.budget.with_time_cap(cap);
        self.quantum.budget = self.quantum.budget.with_time_cap(cap);
        self
    }

    fn budget(&self) -> Budget {
        self.quantum.budget
    }
}

/// The descriptor (when construction succeeded) with its report.
#[derive(Debug, Clone)]
pub struct MemberOutcome {
    pub code: Option<QuantumConvCode>,
    pub report: VerificationReport,
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push(&mut self, id: &str, statement: &str, status: Status, details: impl Into<String>) {
        self.0.push(Claim {
            id: id.into(),
            statement: statement.into(),
            status,
            details: details.into(),
        });
    }

    fn check(&mut self, id: &str, statement: &str, ok: bool, details: impl Into<String>) {
        self.push(id, statement, if ok { Status::Pass } else { Status::Fail }, details);
    }
}

/// Pass on an exact match, bounded when `target` lies in `[lower, upper]`,
/// fail otherwise.
fn interval_status(lower: usize, upper: Option<usize>, exact: bool, target: usize) -> Status {
    if exact {
        if lower == target {
            Status::Pass
        } else {
            Status::Fail
        }
    } else if lower <= target && upper.is_none_or(|u| target <= u) {
        Status::Bounded
    } else {
        Status::Fail
    }
}

fn show(upper: Option<usize>) -> String {
    upper.map_or("inf".into(), |u| u.to_string())
}

const NOT_BUILT: &str = "code was not constructed";

/// Claims about a constructed descriptor that hold for every family.
fn code_claims(code: Option<&QuantumConvCode>, opts: &VerifyOptions, out: &mut Claims) {
    let Some(src) = code.and_then(|c| c.source().map(|s| (c, s))) else {
        for (id, statement) in CODE_CLAIMS {
            out.push(id, statement, Status::Fail, NOT_BUILT);
        }
        return;
    };
    let (code, src) = src;
    let [s_orth, s_window, s_image, s_singleton, s_cert, s_sample] = CODE_CLAIMS;

    let witness = self_orthogonality_witness(&src.lifted, &Form::Hermitian(src.pair.clone()));
    match witness {
        Ok(None) => out.push(s_orth.0, s_orth.1, Status::Pass, "no witness"),
        Ok(Some(w)) => out.push(s_orth.0, s_orth.1, Status::Fail, format!("witness {w}")),
        Err(e) => out.push(s_orth.0, s_orth.1, Status::Fail, e.to_string()),
    }

    let mut failed = Vec::new();
    for t in 0..=opts.t_max {
        match assemble(&src.lifted, t, &src.ctx) {
            Ok(w) => {
                let c = w.checks();
                if !c.all() {
                    failed.push(format!("t={t}: s1={} s2={} s3={}", c.s1, c.s2, c.s3));
                }
            }
            Err(e) => failed.push(format!("t={t}: {e}")),
        }
    }
    out.check(
        s_window.0,
        s_window.1,
        failed.is_empty(),
        if failed.is_empty() { format!("t = 0..={}", opts.t_max) } else { failed.join("; ") },
    );

    match classical_image(code, 1) {
        Ok(c) => out.push(s_image.0, s_image.1, Status::Pass, format!("({}, {}) memory {}", c.n, c.k, c.memory)),
        Err(e) => out.push(s_image.0, s_image.1, Status::Fail, e.to_string()),
    }

    out.check(
        s_singleton.0,
        s_singleton.1,
        code.within_singleton(),
        format!("df in [{}, {}], bound {}", code.df.lower, show(code.df.upper), code.singleton_bound),
    );

    let detector = Detector::new(code, 1);
    match (certificate_error(code), &detector) {
        (Ok(Some(e)), Ok(det)) => {
            let fits = e.support().last().is_none_or(|&i| i < det.qudits());
            let detectable = if fits { det.is_detectable(&e).ok() } else { None };
            let ok = detectable == Some(false) && Some(e.weight()) == code.df.upper;
            out.check(
                s_cert.0,
                s_cert.1,
                ok,
                format!("weight {}, detectable {:?}", e.weight(), detectable),
            );
        }
        (Ok(None), _) => out.push(s_cert.0, s_cert.1, Status::Bounded, "no certificate word"),
        (Err(e), _) => out.push(s_cert.0, s_cert.1, Status::Fail, e.to_string()),
        (_, Err(e)) => out.push(s_cert.0, s_cert.1, Status::Fail, e.to_string()),
    }

    match detector {
        Ok(det) => {
            let below = code.df.lower.saturating_sub(1).min(det.qudits());
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let q = src.pair.q();
            let mut misses = 0;
            let count = if below == 0 { 0 } else { opts.samples };
            for _ in 0..count {
                let w = rng.gen_range(1..=below);
                let e = random_error(&mut rng, det.qudits(), w, q);
                if !det.is_detectable(&e).unwrap_or(false) {
                    misses += 1;
                }
            }
            out.check(
                s_sample.0,
                s_sample.1,
                misses == 0,
                format!("{count} errors of weight <= {below}, {misses} undetected"),
            );
        }
        Err(e) => out.push(s_sample.0, s_sample.1, Status::Fail, e.to_string()),
    }
}

const CODE_CLAIMS: [(&str, &str); 6] = [
    ("code.self-orthogonal", "the GF(q^2) source is Hermitian self-orthogonal"),
    ("code.windows", "every stabilizer window up to t_max satisfies S1, S2 and S3"),
    ("code.classical-image", "the depth-1 window recovers a classical code matching the source"),
    ("code.singleton", "df_upper does not exceed the quantum Singleton bound"),
    ("code.certificate", "the distance certificate is an undetectable error of weight df"),
    ("code.detect-sample", "random errors lighter than df are detectable"),
];

fn random_error(rng: &mut ChaCha8Rng, len: usize, weight: usize, q: u32) -> PauliVec {
    let mut positions: Vec<usize> = (0..len).collect();
    for i in 0..weight {
        let j = rng.gen_range(i..len);
        positions.swap(i, j);
    }
    let (mut a, mut b) = (vec![0; len], vec![0; len]);
    for &pos in &positions[..weight] {
        loop {
            let (x, z) = (rng.gen_range(0..q), rng.gen_range(0..q));
            if x != 0 || z != 0 {
                a[pos] = x;
                b[pos] = z;
                break;
            }
        }
    }
    PauliVec::new(a, b)
}

/// Every claim for one GRS member.
pub fn verify_grs(p: GrsFamilyParams, opts: &VerifyOptions) -> MemberOutcome {
    let start = Instant::now();
    let mut out = Claims(Vec::new());
    let setup = match GrsSetup::new(p) {
        Ok(s) => s,
        Err(e) => {
            out.push("grs.params", "the parameters are valid", Status::Fail, e.to_string());
            code_claims(None, opts, &mut out);
            return finish("grs", p.to_string(), None, out, start);
        }
    };
    let (n, t) = (p.n, p.t);
    out.push("grs.params", "the parameters are valid", Status::Pass, p.to_string());

    match grs::verify_row_products(p.q, n, p.mu()) {
        Ok(r) => out.check(
            "grs.orthogonal-rows",
            "Hermitian products among H0 and H1 rows vanish in range",
            r.holds,
            format!("{} products", r.products.len()),
        ),
        Err(e) => out.push("grs.orthogonal-rows", "", Status::Fail, e.to_string()),
    }
    let w = grs::row_product_range_witness(&setup);
    out.check(
        "grs.range-tight",
        "some product outside the range is nonzero",
        w.value != 0,
        format!("{:?} x {:?} = {}", w.left, w.right, w.value),
    );
    out.check(
        "grs.geometric-sums",
        "powers of alpha sum to zero except at exponent zero",
        grs::geometric_sums_hold(&setup),
        "",
    );

    match grs::verify_distances(&setup, &opts.free, &opts.budget()) {
        Ok(r) => {
            out.push(
                "grs.dual-distance",
                "the Hermitian dual has free distance 2t + 1",
                interval_status(r.dual.df_lower, Some(r.dual.df_upper), r.dual.exact, 2 * t + 1),
                format!("[{}, {}]", r.dual.df_lower, r.dual.df_upper),
            );
            let target = n - 2 * t + 1;
            out.push(
                "grs.hstar-weight",
                "the row space of H* has minimum weight n - 2t + 1",
                interval_status(r.hstar_lower, r.hstar_upper, r.hstar_exact().is_some(), target),
                format!("[{}, {}]", r.hstar_lower, show(r.hstar_upper)),
            );
            let status = if r.free.df_lower >= target {
                Status::Pass
            } else if r.free.df_upper >= target {
                Status::Bounded
            } else {
                Status::Fail
            };
            out.push(
                "grs.free-distance",
                "the classical code has free distance at least n - 2t + 1",
                status,
                format!("[{}, {}]", r.free.df_lower, r.free.df_upper),
            );
        }
        Err(e) => {
            for id in ["grs.dual-distance", "grs.hstar-weight", "grs.free-distance"] {
                out.push(id, "", Status::Fail, e.to_string());
            }
        }
    }

    let code = grs::quantum_code(&setup, &opts.quantum);
    let (n_, k_, m_, delta_, d_) = p.expected();
    let expected = format!("[({n_}, {k_}, {m_}; {delta_}, {d_})]_{}", p.q);
    match &code {
        Ok(c) => {
            out.push(
                "grs.parameters",
                "the quantum code is [(n, n - 2t, n; t, 2t + 1)]_q",
                if c.df.exact { Status::Pass } else { Status::Bounded },
                c.label(),
            );
            out.check(
                "grs.optimal",
                "the Singleton bound equals 2t + 1 and is attained",
                c.singleton_bound == d_ && c.optimal,
                format!("bound {}, optimal {}", c.singleton_bound, c.optimal),
            );
            let status = match c.pure {
                TriState::Yes => Status::Pass,
                TriState::No => Status::Fail,
                TriState::Unknown => Status::Bounded,
            };
            out.push("grs.pure", "the code is pure", status, format!("{:?}", c.pure));
        }
        Err(e) => {
            out.push("grs.parameters", "", Status::Fail, format!("expected {expected}: {e}"));
            out.push("grs.optimal", "", Status::Fail, NOT_BUILT);
            out.push("grs.pure", "", Status::Fail, NOT_BUILT);
        }
    }
    let code = code.ok();
    code_claims(code.as_ref(), opts, &mut out);
    finish("grs", p.to_string(), code, out, start)
}

/// Every claim for one RM member. Parameters outside the orthogonality
/// range are accepted and fail.
pub fn verify_rm(p: RmFamilyParams, opts: &VerifyOptions) -> MemberOutcome {
    let start = Instant::now();
    let mut out = Claims(Vec::new());
    let key = p.to_string();
    out.check(
        "rm.params",
        "1 <= l <= m and r <= floor((m - l - 1) / 2)",
        p.validate().is_ok(),
        p.validate().err().map(|e| e.to_string()).unwrap_or_default(),
    );

    match rm::verify_self_orthogonal(&p) {
        Ok(r) => {
            let details = match (&r.witness, r.nonzero_products.first()) {
                (None, None) => format!("{} products G_i G_j^T are zero", r.products_checked),
                (w, first) => format!(
                    "witness {}; first nonzero G_i G_j^T at {:?}",
                    w.map_or("none".into(), |w| w.to_string()),
                    first
                ),
            };
            out.check("rm.self-orthogonal", "every G_i G_j^T vanishes", r.holds(), details);
        }
        Err(e) => out.push("rm.self-orthogonal", "every G_i G_j^T vanishes", Status::Fail, e.to_string()),
    }

    let classical = rm::build_convolutional(&p);
    match &classical {
        Ok(c) => out.push(
            "rm.structure",
            "G_0 spans R(r, m - l) and later blocks reuse rows of G_0",
            Status::Pass,
            format!("({}, {}) memory {}", c.n, c.k, c.memory),
        ),
        Err(e) => out.push("rm.structure", "", Status::Fail, e.to_string()),
    }

    match rm::dual_free_distance(&p, &opts.budget()) {
        Ok(r) => {
            let mut status = interval_status(r.dual.df_lower, Some(r.dual.df_upper), r.dual.exact, r.expected);
            if !(r.single_block_word_is_dual && r.single_block_weight == r.expected) {
                status = Status::Fail;
            }
            out.push(
                "rm.dual-distance",
                "the dual has free distance 2^(r+1), reached in a single block",
                status,
                format!(
                    "[{}, {}], single-block word of weight {}",
                    r.dual.df_lower, r.dual.df_upper, r.single_block_weight
                ),
            );
        }
        Err(e) => out.push("rm.dual-distance", "", Status::Fail, e.to_string()),
    }

    match &classical {
        Ok(c) => {
            // two nonzero blocks, each a nonzero word of R(r, m - l); this
            // is 2^(m-r) only when l = 1
            let target = 1usize << (p.m - p.l - p.r + 1);
            let f = free_distance_bruteforce(c.generator(), &FreeDistanceOptions { t_max: 2, ..opts.free });
            out.push(
                "rm.classical-free-distance",
                "the classical code has free distance 2^(m-l-r+1)",
                interval_status(f.df_lower, Some(f.df_upper), f.exact, target),
                format!(
                    "[{}, {}], expected {target}; 2^(m-r) = {} {}",
                    f.df_lower,
                    f.df_upper,
                    1usize << (p.m - p.r),
                    if f.value() == Some(1 << (p.m - p.r)) { "matches" } else { "does not match" }
                ),
            );
            let d = &c.degree;
            out.check(
                "rm.degree-zero",
                "the encoder has internal degree 0",
                d.internal_degree == Some(0),
                format!(
                    "max minor degree {:?}, gcd degree {:?}, claimed m <= {}",
                    d.max_minor_degree,
                    d.minor_gcd_degree,
                    p.claimed_m()
                ),
            );
        }
        Err(_) => {
            out.push("rm.classical-free-distance", "", Status::Fail, NOT_BUILT);
            out.push("rm.degree-zero", "", Status::Fail, NOT_BUILT);
        }
    }

    let code = rm::quantum_code(&p, &opts.quantum);
    match &code {
        Ok(c) => {
            out.push(
                "rm.parameters",
                "the quantum code is [(2^(m-l), 2^(m-l) - 2k(r), 0; 0, 2^(r+1))]_2",
                if c.df.exact { Status::Pass } else { Status::Bounded },
                c.label(),
            );
            let status = match c.pure {
                TriState::Yes => Status::Pass,
                TriState::No => Status::Fail,
                TriState::Unknown => Status::Bounded,
            };
            out.push("rm.pure", "the code is pure", status, format!("{:?}", c.pure));
        }
        Err(e) => {
            out.push("rm.parameters", "", Status::Fail, e.to_string());
            out.push("rm.pure", "", Status::Fail, NOT_BUILT);
        }
    }
    let code = code.ok();
    code_claims(code.as_ref(), opts, &mut out);
    finish("rm", key, code, out, start)
}

fn finish(family: &str, member: String, code: Option<QuantumConvCode>, out: Claims, start: Instant) -> MemberOutcome {
    MemberOutcome {
        code,
        report: VerificationReport {
            family: family.into(),
            member,
            claims: out.0,
            wall_time_ms: start.elapsed().as_millis() as u64,
        },
    }
}

/// Parses one descriptor, an array of them, or an object with a `codes`
/// array, and checks the structural invariants.
pub fn load_descriptors(text: &str) -> Result<Vec<QuantumConvCode>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let list = match value {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(ref map) if map.contains_key("codes") => match &map["codes"] {
            serde_json::Value::Array(items) => items.clone(),
            _ => return Err(Error::Schema("`codes` must be an array".into())),
        },
        other => vec![other],
    };
    list.into_iter()
        .enumerate()
        .map(|(i, v)| {
            let c: QuantumConvCode =
                serde_json::from_value(v).map_err(|e| Error::Schema(format!("descriptor {i}: {e}")))?;
            check_descriptor(&c).map_err(|e| Error::Schema(format!("descriptor {i}: {e}")))?;
            Ok(c)
        })
        .collect()
}

fn check_descriptor(c: &QuantumConvCode) -> std::result::Result<(), String> {
    if c.k >= c.n {
        return Err(format!("k = {} is not below n = {}", c.k, c.n));
    }
    if !(c.n - c.k).is_multiple_of(2) {
        return Err(format!("n - k = {} is odd", c.n - c.k));
    }
    let g = &c.generator;
    if g.n() != c.n || 2 * g.k() != c.n - c.k {
        return Err(format!(
            "generator is {} x {}, expected {} x {}",
            g.k(),
            g.n(),
            (c.n - c.k) / 2,
            c.n
        ));
    }
    let expected = match c.form {
        SourceForm::Hermitian => (c.q as u64).checked_mul(c.q as u64),
        SourceForm::Euclidean => Some(c.q as u64),
    };
    if expected != Some(g.field().order() as u64) {
        return Err(format!("generator field {:?} does not match q = {}", g.field(), c.q));
    }
    Ok(())
}

/// Recomputes a descriptor from its generator, form and `q`, keeping the
/// family fields of the input.
pub fn rederive(c: &QuantumConvCode, opts: &QuantumOptions) -> Result<QuantumConvCode> {
    let g = c.generator.clone();
    let fresh = match c.form {
        SourceForm::Hermitian => {
            let pair = ExtensionPair::new(Field::with_order(c.q as u64)?, g.field().clone())?;
            quantum_from_hermitian(&ConvCode::new(g, Some(&pair))?, &pair, opts)?
        }
        SourceForm::Euclidean => quantum_from_euclidean(&ConvCode::new(g, None)?, opts)?,
    };
    let mut fresh = fresh.with_family(&c.family, c.family_params.clone());
    fresh.claimed_m = c.claimed_m;
    fresh.corrected_delta = c.corrected_delta;
    Ok(fresh)
}

/// The generator the named family would build, if the descriptor names one.
fn family_generator(c: &QuantumConvCode) -> Option<Result<crate::polymat::PolyGeneratorMatrix>> {
    let p = &c.family_params;
    let get = |k: &str| p.get(k).and_then(|v| v.as_u64()).map(|v| v as usize);
    match c.family.as_str() {
        "grs" => Some((|| {
            let (q, n, t) = (get("q"), get("n"), get("t"));
            let (Some(q), Some(n), Some(t)) = (q, n, t) else {
                return Err(Error::Schema("grs family_params need q, n and t".into()));
            };
            grs::build_generator(&GrsSetup::new(GrsFamilyParams::new(q as u32, n, t)?)?)
        })()),
        "rm" => Some((|| {
            let (Some(m), Some(l), Some(r)) = (get("m"), get("l"), get("r")) else {
                return Err(Error::Schema("rm family_params need m, l and r".into()));
            };
            Ok(rm::build_convolutional(&RmFamilyParams::unchecked(m, l, r)?)?.generator().clone())
        })()),
        _ => None,
    }
}

/// Re-verifies a user-supplied descriptor from its generator.
pub fn verify_descriptor(c: &QuantumConvCode, opts: &VerifyOptions) -> MemberOutcome {
    let start = Instant::now();
    let mut out = Claims(Vec::new());
    let params = c.family_params.clone();
    let member = match c.family.as_str() {
        "grs" => serde_json::from_value::<GrsFamilyParams>(params).map(|p| p.to_string()).ok(),
        "rm" => serde_json::from_value::<RmFamilyParams>(params).map(|p| p.to_string()).ok(),
        _ => None,
    }
    .unwrap_or_else(|| c.label());

    let fresh = rederive(c, &opts.quantum);
    match &fresh {
        Ok(f) => {
            let a = serde_json::to_value(c).ok();
            let b = serde_json::to_value(f).ok();
            let same = a.is_some() && a == b;
            let details = if same {
                f.label()
            } else {
                format!("stated {}, recomputed {}", c.label(), f.label())
            };
            out.check("descriptor.rederive", "recomputing from the generator reproduces the descriptor", same, details);
        }
        Err(Error::NotSelfOrthogonal(w)) => out.push(
            "descriptor.rederive",
            "recomputing from the generator reproduces the descriptor",
            Status::Fail,
            format!("not self-orthogonal, witness {w}"),
        ),
        Err(e) => out.push("descriptor.rederive", "", Status::Fail, e.to_string()),
    }

    match family_generator(c) {
        None => out.push("descriptor.family", "the generator matches its named family", Status::Pass, "custom code"),
        Some(Ok(g)) => out.check(
            "descriptor.family",
            "the generator matches its named family",
            g == c.generator,
            if g == c.generator { "identical" } else { "generator differs from the family construction" },
        ),
        Some(Err(e)) => out.push("descriptor.family", "", Status::Fail, e.to_string()),
    }

    match singleton_check(c) {
        Ok(()) => out.push("descriptor.singleton", "the stated Singleton bound is correct", Status::Pass, ""),
        Err(e) => out.push("descriptor.singleton", "the stated Singleton bound is correct", Status::Fail, e),
    }

    let fresh = fresh.ok();
    code_claims(fresh.as_ref(), opts, &mut out);
    // a witness for the stated generator is the most useful failure detail
    if fresh.is_none() {
        let form = match c.form {
            SourceForm::Hermitian => ExtensionPair::new(
                Field::with_order(c.q as u64).unwrap_or_else(|_| c.generator.field().clone()),
                c.generator.field().clone(),
            )
            .map(Form::Hermitian),
            SourceForm::Euclidean => Ok(Form::Euclidean),
        };
        if let Ok(Ok(Some(w))) = form.map(|f| self_orthogonality_witness(&c.generator, &f)) {
            if let Some(claim) = out.0.iter_mut().find(|x| x.id == "code.self-orthogonal") {
                claim.details = format!("witness {w}");
            }
        }
    }
    MemberOutcome {
        code: Some(fresh.unwrap_or_else(|| c.clone())),
        report: VerificationReport {
            family: c.family.clone(),
            member,
            claims: out.0,
            wall_time_ms: start.elapsed().as_millis() as u64,
        },
    }
}

fn singleton_check(c: &QuantumConvCode) -> std::result::Result<(), String> {
    let b = crate::stabilizer::singleton_bound(c.n, c.k, c.delta).map_err(|e| e.to_string())?;
    if b != c.singleton_bound {
        return Err(format!("stated {}, recomputed {b}", c.singleton_bound));
    }
    if c.optimal != (c.df.value() == Some(b)) {
        return Err(format!("optimal flag {} disagrees with df", c.optimal));
    }
    Ok(())
}

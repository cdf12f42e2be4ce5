use super::pauli::{tau_inverse, PauliVec, TraceAltContext};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polymat::{expand_window, self_orthogonality_witness, Form, PolyGeneratorMatrix, Sequence};

/// Outcome of the three window conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct WindowChecks {
    /// Generators commute pairwise.
    pub s1: bool,
    /// GF(q)-rank of the symplectic rows equals `(t+1)(n-k)`.
    pub s2: bool,
    /// GF(q^2)-rank of the tau-image equals its row count.
    pub s3: bool,
}

impl WindowChecks {
    pub fn all(&self) -> bool {
        self.s1 && self.s2 && self.s3
    }
}

/// The finite stabilizer group `S_t` on `(t+1)n + m` qudits, given by the
/// generators `tau^{-1}(lambda r)` for every window row `r` of `G(D)` and
/// every `lambda` in a GF(p)-basis of GF(q^2).
#[derive(Debug, Clone)]
pub struct StabilizerWindow {
    t: usize,
    n: usize,
    rows_per_block: usize,
    multiples: usize,
    qudits: usize,
    generators: Vec<PauliVec>,
    image: Matrix,
    checks: WindowChecks,
}

impl StabilizerWindow {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    /// Generators of the group, `multiples` consecutive entries per window
    /// row.
    pub fn generators(&self) -> &[PauliVec] {
        &self.generators
    }

    /// The generator `tau^{-1}(r)` of window row `r`.
    pub fn row_generator(&self, r: usize) -> &PauliVec {
        &self.generators[r * self.multiples]
    }

    /// The window rows over GF(q^2).
    pub fn image(&self) -> &Matrix {
        &self.image
    }

    /// Number of GF(q^2)-generators added per block shift.
    pub fn rows_per_block(&self) -> usize {
        self.rows_per_block
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn checks(&self) -> WindowChecks {
        self.checks
    }
}

/// Builds `S_t` from a Hermitian self-orthogonal `G(D)` over GF(q^2) and
/// verifies S1-S3.
pub fn build_stabilizer_window(
    g: &PolyGeneratorMatrix,
    t: usize,
    ctx: &TraceAltContext,
) -> Result<StabilizerWindow> {
    let window = assemble(g, t, ctx)?;
    let c = window.checks;
    let failed = [(c.s1, "S1"), (c.s2, "S2"), (c.s3, "S3")].into_iter().find(|(ok, _)| !ok);
    if let Some((_, name)) = failed {
        return Err(Error::StabilizerCondition {
            condition: name,
            detail: format!("window of depth {t} for a {} x {} generator", g.k(), g.n()),
        });
    }
    Ok(window)
}

/// Like [`build_stabilizer_window`] but reports the conditions instead of
/// failing on them.
pub fn assemble(g: &PolyGeneratorMatrix, t: usize, ctx: &TraceAltContext) -> Result<StabilizerWindow> {
    let pair = ctx.pair();
    let form = Form::Hermitian(pair.clone());
    if let Some(w) = self_orthogonality_witness(g, &form)? {
        return Err(Error::NotSelfOrthogonal(w));
    }
    let ext = pair.ext();
    let image = expand_window(g, t).into_matrix();
    let qudits = image.cols();
    let basis = ctx.prime_basis();
    let mut scaled = Vec::with_capacity(image.rows() * basis.len());
    for r in image.iter_rows() {
        for &lambda in &basis {
            scaled.push(linalg::scale(ext, r, lambda));
        }
    }
    let generators = scaled
        .iter()
        .map(|v| Ok(tau_inverse(&Sequence::new(ext.clone(), v.clone()), ctx)?.padded(qudits)))
        .collect::<Result<Vec<_>>>()?;

    let s1 = (0..scaled.len()).all(|i| (i + 1..scaled.len()).all(|j| ctx.alternating(&scaled[i], &scaled[j]) == 0));
    let symplectic = Matrix::from_rows(generators.iter().map(|p| p.symplectic_row(qudits)).collect());
    let base_rank = if generators.is_empty() { 0 } else { linalg::rank(pair.base(), &symplectic) };
    let s2 = base_rank == 2 * image.rows();
    let s3 = linalg::rank(ext, &image) == image.rows();
    Ok(StabilizerWindow {
        t,
        n: g.n(),
        rows_per_block: g.k(),
        multiples: basis.len(),
        qudits,
        generators,
        image,
        checks: WindowChecks { s1, s2, s3 },
    })
}

/// `((t+1)k + m, (t+1)n + m)`: the rate of the block code on the depth-`t`
/// window as an exact fraction.
pub fn window_rate(n: usize, k: usize, m: usize, t: usize) -> (usize, usize) {
    ((t + 1) * k + m, (t + 1) * n + m)
}

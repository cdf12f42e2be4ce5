use super::PolyGeneratorMatrix;
use crate::error::{Error, OrthogonalityWitness, Result};
use crate::galois::{ExtensionPair, Field};
use crate::linalg::{self, Matrix};

/// Truncation of the semi-infinite block-Toeplitz matrix of `G(D)` after
/// `t + 1` block rows: `(t+1)k x (t+1+mu)n`, block `(a, b)` equal to
/// `G_{b-a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMatrix {
    field: Field,
    t: usize,
    k: usize,
    n: usize,
    mu: usize,
    matrix: Matrix,
}

impl WindowMatrix {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn memory(&self) -> usize {
        self.mu
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Block `(a, b)`: rows of block row `a`, columns of block column `b`.
    pub fn block(&self, a: usize, b: usize) -> Matrix {
        let rows: Vec<Vec<u32>> = (a * self.k..(a + 1) * self.k)
            .map(|r| self.matrix.row(r)[b * self.n..(b + 1) * self.n].to_vec())
            .collect();
        if rows.is_empty() {
            Matrix::zeros(0, self.n)
        } else {
            Matrix::from_rows(rows)
        }
    }
}

pub fn expand_window(g: &PolyGeneratorMatrix, t: usize) -> WindowMatrix {
    let (k, n, mu) = (g.k(), g.n(), g.memory());
    let coeffs = g.coefficients();
    let mut m = Matrix::zeros((t + 1) * k, (t + 1 + mu) * n);
    for a in 0..=t {
        for (d, c) in coeffs.iter().enumerate() {
            for i in 0..k {
                let row = m.row_mut(a * k + i);
                row[(a + d) * n..(a + d + 1) * n].copy_from_slice(c.row(i));
            }
        }
    }
    WindowMatrix {
        field: g.field().clone(),
        t,
        k,
        n,
        mu,
        matrix: m,
    }
}

/// Which form self-orthogonality refers to.
#[derive(Debug, Clone)]
pub enum Form {
    Euclidean,
    /// `<u|v>_h = sum u_i v_i^q` on GF(q^2); the matrix must live in the
    /// extension field of the pair.
    Hermitian(ExtensionPair),
}

impl Form {
    /// The map applied to the second argument of the form.
    pub fn conjugator(&self) -> impl Fn(u32) -> u32 + '_ {
        move |x| match self {
            Form::Euclidean => x,
            Form::Hermitian(p) => p.frobenius_q(x),
        }
    }

    pub fn check_field(&self, field: &Field) -> Result<()> {
        match self {
            Form::Hermitian(p) if p.ext() != field => Err(Error::NoQuadraticStructure),
            _ => Ok(()),
        }
    }
}

/// First violated condition `sum_i G_i[a] . conj(G_{i+s}[b]) != 0`, ordered
/// by shift, then rows. These finitely many conditions are equivalent to
/// `G G^T = 0` (resp. `G G^dagger = 0`) for the semi-infinite matrix.
pub fn self_orthogonality_witness(
    g: &PolyGeneratorMatrix,
    form: &Form,
) -> Result<Option<OrthogonalityWitness>> {
    form.check_field(g.field())?;
    let f = g.field();
    let conj = form.conjugator();
    let coeffs = g.coefficients();
    let conj_coeffs: Vec<Matrix> = coeffs.iter().map(|c| c.map(&conj)).collect();
    let mu = coeffs.len() - 1;
    for shift in 0..=mu {
        for row_a in 0..g.k() {
            for row_b in 0..g.k() {
                let mut acc = 0;
                for i in 0..=mu - shift {
                    acc = f.add(acc, linalg::dot(f, coeffs[i].row(row_a), conj_coeffs[i + shift].row(row_b)));
                }
                if acc != 0 {
                    return Ok(Some(OrthogonalityWitness { row_a, row_b, shift }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_self_orthogonal(g: &PolyGeneratorMatrix, form: &Form) -> Result<bool> {
    Ok(self_orthogonality_witness(g, form)?.is_none())
}

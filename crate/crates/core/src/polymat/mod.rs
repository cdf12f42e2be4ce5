//! Polynomial generator matrices over F_q[D] and the classical
//! convolutional-code machinery built on them.

pub mod code;
pub mod degree;
pub mod distance;
pub mod poly;
mod sequence;
mod window;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois::{Field, FieldSpec};
use crate::linalg::Matrix;

pub use code::{ConvCode, TriState};
pub use degree::{degree, minor_gcd, right_invertible, row_reduce, DegreeInfo, RightInvertibility};
pub use distance::{
    dual_window_distance, dual_window_distance_hermitian, dual_window_matrix, free_distance_bruteforce,
    free_distance_lower_bound, DistanceResult,
    FreeDistanceOptions,
};
pub use poly::Poly;
pub use sequence::{inner_product_euclidean, inner_product_hermitian, sigma, sigma_inverse, Sequence};
pub use window::{expand_window, is_self_orthogonal, self_orthogonality_witness, Form, WindowMatrix};

/// A `k x n` matrix `G(D)` of polynomials over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGeneratorMatrix {
    field: Field,
    k: usize,
    n: usize,
    entries: Vec<Vec<Poly>>,
}

impl PolyGeneratorMatrix {
    /// Builds `G(D)` from rows of entry polynomials; trailing zero
    /// coefficients are dropped.
    pub fn new(field: Field, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let k = entries.len();
        let n = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows of G(D) have different lengths".into()));
        }
        let entries: Vec<Vec<Poly>> = entries
            .into_iter()
            .map(|r| r.into_iter().map(poly::trim).collect())
            .collect();
        if let Some(&bad) = entries.iter().flatten().flatten().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidField(format!("{bad} is not an element of {}", field.spec())));
        }
        Ok(PolyGeneratorMatrix {
            field,
            k,
            n,
            entries,
        })
    }

    /// `G(D) = sum_i G_i D^i` from its coefficient matrices.
    pub fn from_coefficients(field: Field, blocks: &[Matrix]) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::Dimension("no coefficient matrices".into()));
        };
        let (k, n) = (first.rows(), first.cols());
        if blocks.iter().any(|b| b.rows() != k || b.cols() != n) {
            return Err(Error::Dimension("coefficient matrices differ in shape".into()));
        }
        let entries = (0..k)
            .map(|i| {
                (0..n)
                    .map(|j| blocks.iter().map(|b| b.get(i, j)).collect())
                    .collect()
            })
            .collect();
        Self::new(field, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    /// Row degrees `nu_i`; zero rows get 0 by convention.
    pub fn row_degrees(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|r| r.iter().filter_map(|p| poly::degree(p)).max().unwrap_or(0))
            .collect()
    }

    /// Memory `mu = max nu_i`.
    pub fn memory(&self) -> usize {
        self.row_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.entries[i].iter().all(|p| p.is_empty())
    }

    /// Coefficient matrix `G_d` (zero beyond the memory).
    pub fn coefficient(&self, d: usize) -> Matrix {
        let mut m = Matrix::zeros(self.k, self.n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                m.set(i, j, poly::coeff(p, d));
            }
        }
        m
    }

    /// `[G_0, ..., G_mu]`.
    pub fn coefficients(&self) -> Vec<Matrix> {
        (0..=self.memory()).map(|d| self.coefficient(d)).collect()
    }

    /// `[G_0; G_1; ...; G_mu]` stacked vertically.
    pub fn stacked_coefficients(&self) -> Matrix {
        let blocks = self.coefficients();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::stack(&refs)
    }

    /// Applies `g` to every coefficient, e.g. the entrywise `q`-power.
    pub fn map_coefficients(&self, g: impl Fn(u32) -> u32) -> PolyGeneratorMatrix {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| poly::map(p, &g)).collect())
            .collect();
        PolyGeneratorMatrix {
            field: self.field.clone(),
            k: self.k,
            n: self.n,
            entries,
        }
    }

    /// Same polynomials read in another field of identical packing (used
    /// to lift a base-field matrix through an embedding).
    pub fn with_field(&self, field: Field, g: impl Fn(u32) -> u32) -> PolyGeneratorMatrix {
        let mut out = self.map_coefficients(g);
        out.field = field;
        out
    }

    pub fn rows_subset(&self, rows: &[usize]) -> PolyGeneratorMatrix {
        PolyGeneratorMatrix {
            field: self.field.clone(),
            k: rows.len(),
            n: self.n,
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Sets the coefficient of `D^d` in entry `(i, j)`.
    pub fn with_coefficient(&self, i: usize, j: usize, d: usize, value: u32) -> PolyGeneratorMatrix {
        let mut out = self.clone();
        let p = &mut out.entries[i][j];
        if p.len() <= d {
            p.resize(d + 1, 0);
        }
        p[d] = value;
        *p = poly::trim(std::mem::take(p));
        out
    }
}

/// An element as written in JSON: a packed integer or a digit list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Int(u32),
    Digits(Vec<u32>),
}

impl ElementJson {
    pub fn resolve(&self, field: &Field) -> Result<u32> {
        match self {
            ElementJson::Int(v) => {
                if field.contains(*v) {
                    Ok(*v)
                } else {
                    Err(Error::Schema(format!("{v} is not an element of {}", field.spec())))
                }
            }
            ElementJson::Digits(d) => field
                .from_digits(d)
                .map_err(|e| Error::Schema(format!("bad element {d:?}: {e}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    field: FieldSpec,
    k: usize,
    n: usize,
    entries: Vec<Vec<Vec<ElementJson>>>,
}

impl PolyGeneratorMatrix {
    fn to_json_repr(&self) -> GeneratorJson {
        let f = &self.field;
        GeneratorJson {
            field: f.spec().clone(),
            k: self.k,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| p.iter().map(|&c| ElementJson::Digits(f.digits(c))).collect())
                        .collect()
                })
                .collect(),
        }
    }

    fn from_json_repr(raw: GeneratorJson) -> Result<Self> {
        let field = Field::new(raw.field).map_err(|e| Error::Schema(e.to_string()))?;
        if raw.entries.len() != raw.k || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(Error::Schema(format!(
                "entries do not form a {} x {} array",
                raw.k, raw.n
            )));
        }
        let entries = raw
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| p.iter().map(|c| c.resolve(&field)).collect::<Result<Poly>>())
                    .collect::<Result<Vec<Poly>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = Self::new(field, entries)?;
        // keep the declared shape even when k = 0
        g.n = raw.n;
        Ok(g)
    }
}

impl Serialize for PolyGeneratorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyGeneratorMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GeneratorJson::deserialize(d)?;
        Self::from_json_repr(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_memory() {
        let f = Field::gf(2, 1).unwrap();
        let g = PolyGeneratorMatrix::new(f.clone(), vec![vec![vec![1, 1], vec![1]], vec![vec![], vec![]]]).unwrap();
        assert_eq!(g.row_degrees(), vec![1, 0]);
        assert_eq!(g.memory(), 1);
        assert!(g.is_zero_row(1));
        let c = PolyGeneratorMatrix::new(f, vec![vec![vec![1], vec![0, 0]]]).unwrap();
        assert_eq!(c.memory(), 0);
        assert_eq!(c.entry(0, 1), &Vec::<u32>::new());
    }

    #[test]
    fn json_round_trip_and_integer_input() {
        let f = Field::gf(2, 2).unwrap();
        let g = PolyGeneratorMatrix::new(f, vec![vec![vec![1, 2], vec![3]]]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"entries\":[[[[1,0],[0,1]],[[1,1]]]]"), "{text}");
        let back: PolyGeneratorMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let ints = r#"{"field":{"p":2,"m":2,"modulus":[1,1,1]},"k":1,"n":2,"entries":[[[1,2],[3]]]}"#;
        assert_eq!(serde_json::from_str::<PolyGeneratorMatrix>(ints).unwrap(), g);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad_shape = r#"{"field":{"p":2,"m":1,"modulus":[1,1]},"k":2,"n":1,"entries":[[[1]]]}"#;
        assert!(serde_json::from_str::<PolyGeneratorMatrix>(bad_shape).is_err());
        let bad_elem = r#"{"field":{"p":2,"m":1,"modulus":[1,1]},"k":1,"n":1,"entries":[[[2]]]}"#;
        assert!(serde_json::from_str::<PolyGeneratorMatrix>(bad_elem).is_err());
        let reducible = r#"{"field":{"p":2,"m":2,"modulus":[1,0,1]},"k":1,"n":1,"entries":[[[1]]]}"#;
        assert!(serde_json::from_str::<PolyGeneratorMatrix>(reducible).is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::gf(3, 1).unwrap();
        let g0 = Matrix::from_rows(vec![vec![1, 2, 0]]);
        let g1 = Matrix::from_rows(vec![vec![0, 1, 1]]);
        let g = PolyGeneratorMatrix::from_coefficients(f, &[g0.clone(), g1.clone()]).unwrap();
        assert_eq!(g.coefficients(), vec![g0, g1]);
        assert_eq!(g.stacked_coefficients().rows(), 2);
    }
}

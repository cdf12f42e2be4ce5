use serde::{Deserialize, Serialize};

use super::{
    degree, free_distance_bruteforce, is_self_orthogonal, right_invertible, DegreeInfo, DistanceResult,
    Form, FreeDistanceOptions, PolyGeneratorMatrix,
};
use crate::error::{Error, Result};
use crate::galois::ExtensionPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }
}

/// A classical convolutional code given by a generator matrix, together
/// with its computed invariants. The generator need not be right
/// invertible.
#[derive(Debug, Clone, Serialize)]
pub struct ConvCode {
    #[serde(rename = "generator")]
    gen: PolyGeneratorMatrix,
    pub n: usize,
    pub k: usize,
    pub degree: DegreeInfo,
    pub memory: usize,
    pub right_invertible: TriState,
    pub free_distance: Option<DistanceResult>,
    pub self_orth_euclid: bool,
    /// `None` when the field carries no quadratic structure.
    pub self_orth_herm: Option<bool>,
}

impl ConvCode {
    /// Rejects zero rows and `k > n`. `pair` enables the Hermitian check
    /// when `G(D)` lives in its extension field.
    pub fn new(gen: PolyGeneratorMatrix, pair: Option<&ExtensionPair>) -> Result<Self> {
        if gen.k() > gen.n() {
            return Err(Error::TooManyRows { k: gen.k(), n: gen.n() });
        }
        if let Some(i) = (0..gen.k()).find(|&i| gen.is_zero_row(i)) {
            return Err(Error::ZeroRow(i));
        }
        let degree = degree(&gen)?;
        let right_invertible = right_invertible(&gen).invertible.into();
        let self_orth_euclid = is_self_orthogonal(&gen, &Form::Euclidean)?;
        let self_orth_herm = match pair {
            Some(p) if p.ext() == gen.field() => Some(is_self_orthogonal(&gen, &Form::Hermitian(p.clone()))?),
            _ => None,
        };
        Ok(ConvCode {
            n: gen.n(),
            k: gen.k(),
            memory: gen.memory(),
            degree,
            right_invertible,
            free_distance: None,
            self_orth_euclid,
            self_orth_herm,
            gen,
        })
    }

    pub fn generator(&self) -> &PolyGeneratorMatrix {
        &self.gen
    }

    /// Computes and stores the free-distance interval.
    pub fn with_free_distance(mut self, opts: &FreeDistanceOptions) -> Self {
        self.free_distance = Some(free_distance_bruteforce(&self.gen, opts));
        self
    }
}

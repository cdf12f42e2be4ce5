//! Minimum-weight searches for linear block codes: the smallest dependent
//! column set of a matrix (minimum distance of its kernel) and the minimum
//! weight of its row space.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::budget::Meter;
use crate::galois::Field;
use crate::linalg::{self, Matrix, RowSpace};

/// Stand-in for "no nonzero word exists".
pub const INFINITE: usize = usize::MAX;

/// Result of a bounded search: `lower <= true minimum <= upper`, with a
/// word of weight `upper` when one was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSearch {
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<Vec<u32>>,
}

impl WeightSearch {
    pub fn exact(weight: usize, witness: Option<Vec<u32>>) -> Self {
        WeightSearch {
            lower: weight,
            upper: weight,
            witness,
        }
    }

    pub fn empty() -> Self {
        Self::exact(INFINITE, None)
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

/// Column vectors of `m` after row reduction, one per column, each of
/// length `rank`. Row operations preserve column dependencies.
fn reduced_columns(f: &Field, m: &Matrix) -> (usize, Vec<Vec<u32>>) {
    let mut r = m.clone();
    let rank = linalg::rref(f, &mut r).len();
    let cols = (0..m.cols())
        .map(|c| (0..rank).map(|i| r.get(i, c)).collect())
        .collect();
    (rank, cols)
}

/// Gaussian step: eliminates `pivot_vec[p]` from `v`.
#[inline]
fn eliminate(f: &Field, v: &mut [u32], pivot_vec: &[u32], p: usize) {
    let a = v[p];
    if a != 0 {
        let factor = f.neg(f.div(a, pivot_vec[p]));
        linalg::axpy(f, v, factor, pivot_vec);
    }
}

/// Searches for an independent set of `depth` columns (indices increasing,
/// drawn from `cands`) such that some later candidate reduces to zero
/// against it. Returns the dependent index set.
fn dfs_circuit(
    f: &Field,
    cands: &[(usize, Vec<u32>)],
    chosen: &mut Vec<usize>,
    depth: usize,
    meter: &Meter,
    stop: &AtomicBool,
) -> Option<Vec<usize>> {
    if stop.load(Ordering::Relaxed) || !meter.tick(cands.len() as u64 + 1) {
        return None;
    }
    if depth == 0 {
        return cands.iter().find(|(_, v)| v.iter().all(|&x| x == 0)).map(|(c, _)| {
            let mut set = chosen.clone();
            set.push(*c);
            set
        });
    }
    for (idx, (c, v)) in cands.iter().enumerate() {
        if cands.len() - idx - 1 < depth {
            break;
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            continue;
        };
        let next: Vec<(usize, Vec<u32>)> = cands[idx + 1..]
            .iter()
            .map(|(c2, v2)| {
                let mut w = v2.clone();
                eliminate(f, &mut w, v, p);
                (*c2, w)
            })
            .collect();
        chosen.push(*c);
        let found = dfs_circuit(f, &next, chosen, depth - 1, meter, stop);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Kernel vector supported on `set`, a dependent column set of `m`.
fn dependency_vector(f: &Field, m: &Matrix, set: &[usize]) -> Vec<u32> {
    let sub = m.select_columns(set);
    let k = linalg::kernel(f, &sub);
    let mut out = vec![0; m.cols()];
    if k.rows() > 0 {
        for (j, &c) in set.iter().enumerate() {
            out[c] = k.get(0, j);
        }
    }
    out
}

/// Minimum size of a dependent set of columns of `m`, i.e. the minimum
/// distance of the code `{x : m x^T = 0}`. Levels are searched in
/// increasing size, so an exhausted budget still leaves a valid lower
/// bound. `max_size` stops the search early once larger sets are all that
/// remain (the result is then a lower bound).
pub fn min_dependent_columns(
    f: &Field,
    m: &Matrix,
    max_size: Option<usize>,
    meter: &Meter,
) -> WeightSearch {
    let (rank, cols) = reduced_columns(f, m);
    let n = cols.len();
    if n == rank {
        return WeightSearch::empty();
    }
    let cands: Vec<(usize, Vec<u32>)> = cols.into_iter().enumerate().collect();
    let limit = max_size.unwrap_or(rank + 1).min(rank + 1);
    for size in 1..=limit {
        if size == rank + 1 {
            // any rank + 1 columns are dependent
            let set: Vec<usize> = (0..=rank).collect();
            let w = dependency_vector(f, m, &set);
            return WeightSearch::exact(size, Some(w));
        }
        let stop = AtomicBool::new(false);
        let depth = size - 1;
        // shard on the first chosen column
        let found = if depth == 0 {
            dfs_circuit(f, &cands, &mut Vec::new(), 0, meter, &stop)
        } else {
            (0..n)
                .into_par_iter()
                .find_map_first(|first| {
                    let (c, v) = &cands[first];
                    let p = v.iter().position(|&x| x != 0)?;
                    let next: Vec<(usize, Vec<u32>)> = cands[first + 1..]
                        .iter()
                        .map(|(c2, v2)| {
                            let mut w = v2.clone();
                            eliminate(f, &mut w, v, p);
                            (*c2, w)
                        })
                        .collect();
                    let r = dfs_circuit(f, &next, &mut vec![*c], depth - 1, meter, &stop);
                    if r.is_some() {
                        stop.store(true, Ordering::Relaxed);
                    }
                    r
                })
        };
        if let Some(set) = found {
            let w = dependency_vector(f, m, &set);
            return WeightSearch::exact(linalg::weight(&w), Some(w));
        }
        if meter.exhausted() {
            return WeightSearch {
                lower: size,
                upper: rank + 1,
                witness: None,
            };
        }
    }
    // stopped by max_size
    WeightSearch {
        lower: limit + 1,
        upper: rank + 1,
        witness: None,
    }
}

/// Largest row-space size handled by direct enumeration, in
/// `(projective messages) * n` units.
const ENUMERATION_CAP: u128 = 40_000_000;

/// Minimum weight of the nonzero vectors in the row space of `m`.
pub fn min_weight_rowspace(f: &Field, m: &Matrix, meter: &Meter) -> WeightSearch {
    let rs = RowSpace::new(f, m);
    let basis = rs.basis();
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        return WeightSearch::empty();
    }
    let q = f.order() as u128;
    let projective = q.checked_pow(k as u32).map(|p| (p - 1) / (q - 1));
    if projective.is_some_and(|p| p.saturating_mul(n as u128) <= ENUMERATION_CAP) {
        return enumerate_rowspace(f, basis, meter);
    }
    // MDS test: every k columns independent
    let circuits = min_dependent_columns(f, basis, Some(k), meter);
    if circuits.lower > k {
        let zeros: Vec<usize> = (0..k - 1).collect();
        let w = hyperplane_word(f, basis, &zeros);
        return WeightSearch::exact(n - k + 1, Some(w));
    }
    hyperplane_search(f, basis, meter)
}

/// Exhaustive projective enumeration.
fn enumerate_rowspace(f: &Field, basis: &Matrix, meter: &Meter) -> WeightSearch {
    let k = basis.rows();
    let mut best = WeightSearch {
        lower: 1,
        upper: INFINITE,
        witness: None,
    };
    // leading row index fixes the first nonzero coefficient to 1
    for lead in 0..k {
        let start = basis.row(lead).to_vec();
        if !enumerate_tail(f, basis, lead + 1, start, meter, &mut best) {
            best.lower = best.lower.min(best.upper);
            return best;
        }
    }
    best.lower = best.upper;
    best
}

fn enumerate_tail(
    f: &Field,
    basis: &Matrix,
    row: usize,
    acc: Vec<u32>,
    meter: &Meter,
    best: &mut WeightSearch,
) -> bool {
    if row == basis.rows() {
        if !meter.tick(acc.len() as u64) {
            return false;
        }
        let w = linalg::weight(&acc);
        if w < best.upper {
            best.upper = w;
            best.witness = Some(acc);
        }
        return true;
    }
    for a in f.elements() {
        let mut next = acc.clone();
        linalg::axpy(f, &mut next, a, basis.row(row));
        if !enumerate_tail(f, basis, row + 1, next, meter, best) {
            return false;
        }
    }
    true
}

/// The codeword (unique up to scalar) vanishing on the columns `zeros`,
/// which must be `k - 1` independent columns of the `k`-row `basis`.
fn hyperplane_word(f: &Field, basis: &Matrix, zeros: &[usize]) -> Vec<u32> {
    let sub = basis.select_columns(zeros).transpose();
    let u = linalg::kernel(f, &sub);
    linalg::vec_mul(f, u.row(0), basis)
}

/// A minimum-weight word vanishes on `k - 1` independent columns, so it
/// suffices to visit every independent `(k-1)`-subset.
fn hyperplane_search(f: &Field, basis: &Matrix, meter: &Meter) -> WeightSearch {
    let k = basis.rows();
    let (_, cols) = reduced_columns(f, basis);
    let mut best = WeightSearch {
        lower: 1,
        upper: INFINITE,
        witness: None,
    };
    let mut chosen = Vec::new();
    let cands: Vec<(usize, Vec<u32>)> = cols.into_iter().enumerate().collect();
    let complete = visit_independent(f, &cands, &mut chosen, k - 1, meter, &mut |set| {
        let w = hyperplane_word(f, basis, set);
        let wt = linalg::weight(&w);
        if wt < best.upper {
            best.upper = wt;
            best.witness = Some(w);
        }
    });
    if complete {
        best.lower = best.upper;
    }
    best
}

fn visit_independent(
    f: &Field,
    cands: &[(usize, Vec<u32>)],
    chosen: &mut Vec<usize>,
    depth: usize,
    meter: &Meter,
    visit: &mut dyn FnMut(&[usize]),
) -> bool {
    if !meter.tick(cands.len() as u64 + 1) {
        return false;
    }
    if depth == 0 {
        visit(chosen);
        return true;
    }
    for (idx, (c, v)) in cands.iter().enumerate() {
        let Some(p) = v.iter().position(|&x| x != 0) else {
            continue;
        };
        let next: Vec<(usize, Vec<u32>)> = cands[idx + 1..]
            .iter()
            .map(|(c2, v2)| {
                let mut w = v2.clone();
                eliminate(f, &mut w, v, p);
                (*c2, w)
            })
            .collect();
        chosen.push(*c);
        let ok = visit_independent(f, &next, chosen, depth - 1, meter, visit);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

//! Free distance of `C` and minimum weight of its (shift-invariant) dual.
//!
//! Results are intervals. Lower bounds used for the free distance:
//!
//! * every nonzero block of a codeword lies in the row space of
//!   `[G_0; ...; G_mu]`, so its minimum weight bounds `d_f` from below;
//! * when `G_0` and `G_mu` both have full row rank, the first nonzero block
//!   of a codeword is `u_a G_0 != 0` and the last is `u_b G_mu != 0`, in
//!   different blocks, so `d_f >= d(G_0) + d(G_mu)`;
//! * a shortest-path search over encoder states settles codeword weights in
//!   increasing order; when it finishes the value is exact, and when it is
//!   cut off the current frontier is a lower bound.
//!
//! Upper bounds come from the same search and from enumerating messages of
//! degree at most `t_max` by increasing number of nonzero symbols.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Serialize, Serializer};

use super::{expand_window, PolyGeneratorMatrix, Sequence};
use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::galois::{ExtensionPair, Field};
use crate::linalg::{self, Matrix};
use crate::weight::{self, WeightSearch, INFINITE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub df_lower: usize,
    /// [`INFINITE`] when no nonzero word exists.
    pub df_upper: usize,
    pub exact: bool,
    pub certificate: Option<Sequence>,
}

impl DistanceResult {
    fn from_bounds(field: &Field, lower: usize, upper: usize, witness: Option<Vec<u32>>) -> Self {
        debug_assert!(lower <= upper, "lower bound {lower} exceeds upper bound {upper}");
        let lower = lower.min(upper);
        DistanceResult {
            df_lower: lower,
            df_upper: upper,
            exact: lower == upper,
            certificate: witness.map(|w| Sequence::new(field.clone(), w)),
        }
    }

    fn from_search(field: &Field, s: WeightSearch) -> Self {
        Self::from_bounds(field, s.lower, s.upper, s.witness)
    }

    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.df_lower)
    }

    pub fn is_infinite(&self) -> bool {
        self.exact && self.df_lower == INFINITE
    }
}

fn finite_or_null<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *v == INFINITE {
        s.serialize_none()
    } else {
        s.serialize_u64(*v as u64)
    }
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            #[serde(serialize_with = "finite_or_null")]
            df_lower: usize,
            #[serde(serialize_with = "finite_or_null")]
            df_upper: usize,
            exact: bool,
            certificate: &'a Option<Sequence>,
        }
        Repr {
            df_lower: self.df_lower,
            df_upper: self.df_upper,
            exact: self.exact,
            certificate: &self.certificate,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeDistanceOptions {
    /// Largest message degree in the enumeration phase.
    pub t_max: usize,
    /// The state search stops once every unexplored codeword is known to
    /// weigh at least this much.
    pub w_cap: usize,
    /// Applied separately to each search phase.
    pub budget: Budget,
}

impl Default for FreeDistanceOptions {
    fn default() -> Self {
        FreeDistanceOptions {
            t_max: 3,
            w_cap: 4096,
            budget: Budget::steps(400_000_000),
        }
    }
}

/// Largest `q^k` for which the state search precomputes input blocks.
const MAX_INPUTS: u64 = 1 << 16;

pub fn free_distance_bruteforce(g: &PolyGeneratorMatrix, opts: &FreeDistanceOptions) -> DistanceResult {
    let f = g.field();
    let (k, mu) = (g.k(), g.memory());
    if (0..k).all(|i| g.is_zero_row(i)) {
        return DistanceResult::from_bounds(f, INFINITE, INFINITE, None);
    }
    let meter = opts.budget.meter();
    if mu == 0 {
        return DistanceResult::from_search(f, weight::min_weight_rowspace(f, &g.coefficient(0), &meter));
    }

    let mut lower = free_distance_lower_bound(g, &meter);
    let mut upper = INFINITE;
    let mut witness = None;

    let search_meter = opts.budget.meter();
    if let Some(s) = state_search(g, opts.w_cap, &search_meter) {
        if s.complete {
            return DistanceResult::from_bounds(f, s.best, s.best, s.witness);
        }
        lower = lower.max(s.frontier.min(s.best));
        if s.best < upper {
            upper = s.best;
            witness = s.witness;
        }
    }

    let enum_meter = opts.budget.meter();
    let (w, cw) = enumerate_messages(g, opts.t_max, &enum_meter);
    if w < upper {
        upper = w;
        witness = cw;
    }
    DistanceResult::from_bounds(f, lower.min(upper), upper, witness)
}

/// The end-block bound `d(G_0) + d(G_mu)` when both blocks have full row
/// rank, else the minimum weight of the row space of the stacked blocks.
/// Valid for any memory; [`INFINITE`] for the zero code.
pub fn free_distance_lower_bound(g: &PolyGeneratorMatrix, meter: &Meter) -> usize {
    let f = g.field();
    let (k, mu) = (g.k(), g.memory());
    if (0..k).all(|i| g.is_zero_row(i)) {
        return INFINITE;
    }
    let g0 = g.coefficient(0);
    let gmu = g.coefficient(mu);
    if mu > 0 && linalg::rank(f, &g0) == k && linalg::rank(f, &gmu) == k {
        let a = weight::min_weight_rowspace(f, &g0, meter);
        let b = weight::min_weight_rowspace(f, &gmu, meter);
        a.lower + b.lower
    } else {
        weight::min_weight_rowspace(f, &g.stacked_coefficients(), meter).lower
    }
}

struct StateSearch {
    best: usize,
    witness: Option<Vec<u32>>,
    /// Every codeword not yet found weighs at least this much.
    frontier: usize,
    complete: bool,
}

/// Dijkstra over encoder states `(u_{j-1}, ..., u_{j-mu})` from the zero
/// state back to it. `None` when the state space does not fit.
fn state_search(g: &PolyGeneratorMatrix, w_cap: usize, meter: &Meter) -> Option<StateSearch> {
    let f = g.field();
    let (k, n, mu) = (g.k(), g.n(), g.memory());
    let q = f.order() as u64;
    let inputs = q.checked_pow(k as u32).filter(|&x| x <= MAX_INPUTS)?;
    let state_count = inputs.checked_pow(mu as u32).filter(|&x| x < (1 << 62))?;
    let high = state_count / inputs;
    let coeffs = g.coefficients();
    let message = |x: u64| -> Vec<u32> {
        let mut x = x;
        (0..k)
            .map(|_| {
                let d = (x % q) as u32;
                x /= q;
                d
            })
            .collect()
    };
    let input_blocks: Vec<Vec<u32>> = (0..inputs)
        .map(|x| linalg::vec_mul(f, &message(x), &coeffs[0]))
        .collect();
    if !meter.tick(inputs * n as u64) {
        return None;
    }
    // contribution of the remembered inputs to the next output block
    let state_block = |s: u64| -> Vec<u32> {
        let mut out = vec![0; n];
        let mut s = s;
        for c in coeffs.iter().skip(1) {
            let u = message(s % inputs);
            s /= inputs;
            let part = linalg::vec_mul(f, &u, c);
            for (o, p) in out.iter_mut().zip(part) {
                *o = f.add(*o, p);
            }
        }
        out
    };

    let mut dist: HashMap<u64, usize> = HashMap::new();
    let mut pred: HashMap<u64, (u64, u64)> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let mut best = INFINITE;
    let mut best_end: Option<u64> = None;
    for x in 1..inputs {
        let w = linalg::weight(&input_blocks[x as usize]);
        if dist.get(&x).is_none_or(|&d| w < d) {
            dist.insert(x, w);
            pred.insert(x, (0, x));
            heap.push(Reverse((w, x)));
        }
    }
    let mut settled = std::collections::HashSet::new();
    let mut frontier = 0;
    let mut complete = true;
    while let Some(Reverse((d, s))) = heap.pop() {
        frontier = d;
        if d >= best {
            break;
        }
        if d >= w_cap {
            complete = false;
            break;
        }
        if !settled.insert(s) {
            continue;
        }
        let sb = state_block(s);
        if !meter.tick(inputs * n as u64) {
            complete = false;
            break;
        }
        let base = (s % high) * inputs;
        for x in 0..inputs {
            let out = &input_blocks[x as usize];
            let w = sb.iter().zip(out).filter(|(&a, &b)| f.add(a, b) != 0).count();
            let next = base + x;
            let total = d + w;
            if next == 0 {
                if total < best {
                    best = total;
                    best_end = Some(s);
                }
            } else if total < best && dist.get(&next).is_none_or(|&old| total < old) {
                dist.insert(next, total);
                pred.insert(next, (s, x));
                heap.push(Reverse((total, next)));
            }
        }
    }
    if heap.is_empty() && complete {
        frontier = best;
    }
    let witness = best_end.map(|end| {
        let mut inputs_rev = Vec::new();
        let mut cur = end;
        while cur != 0 {
            let (prev, x) = pred[&cur];
            inputs_rev.push(x);
            cur = prev;
        }
        let msg: Vec<u32> = inputs_rev.iter().rev().flat_map(|&x| message(x)).collect();
        let t = inputs_rev.len() - 1;
        linalg::vec_mul(f, &msg, expand_window(g, t).matrix())
    });
    Some(StateSearch {
        best,
        witness,
        frontier,
        complete,
    })
}

/// Messages of degree `<= t_max` with a nonzero first block, by increasing
/// number of nonzero symbols; the first nonzero symbol is fixed to 1.
fn enumerate_messages(g: &PolyGeneratorMatrix, t_max: usize, meter: &Meter) -> (usize, Option<Vec<u32>>) {
    let f = g.field();
    let w = expand_window(g, t_max).into_matrix();
    let positions = w.rows();
    let k = g.k();
    let mut best = (INFINITE, None);
    for count in 1..=positions {
        for first in 0..k {
            if g.is_zero_row(first) {
                continue;
            }
            let acc = w.row(first).to_vec();
            if !extend(f, &w, first + 1, count - 1, acc, meter, &mut best) {
                return best;
            }
        }
    }
    best
}

fn extend(
    f: &Field,
    w: &Matrix,
    from: usize,
    remaining: usize,
    acc: Vec<u32>,
    meter: &Meter,
    best: &mut (usize, Option<Vec<u32>>),
) -> bool {
    if !meter.tick(w.cols() as u64) {
        return false;
    }
    if remaining == 0 {
        let wt = linalg::weight(&acc);
        if wt > 0 && wt < best.0 {
            *best = (wt, Some(acc));
        }
        return true;
    }
    for pos in from..w.rows() {
        if w.rows() - pos < remaining {
            break;
        }
        for a in f.nonzero_elements() {
            let mut next = acc.clone();
            linalg::axpy(f, &mut next, a, w.row(pos));
            if !extend(f, w, pos + 1, remaining - 1, next, meter, best) {
                return false;
            }
        }
    }
    true
}

/// Parity-check rows for dual words supported on blocks `0..blocks`:
/// every shift of every row of `G(D)` that meets those blocks, restricted
/// to them.
pub fn dual_window_matrix(g: &PolyGeneratorMatrix, blocks: usize) -> Matrix {
    let (n, mu) = (g.n(), g.memory());
    let coeffs = g.coefficients();
    let mut out = Matrix::with_cols(blocks * n);
    for j in -(mu as i64)..blocks as i64 {
        for i in 0..g.k() {
            let mut row = vec![0; blocks * n];
            for (d, c) in coeffs.iter().enumerate() {
                let b = j + d as i64;
                if (0..blocks as i64).contains(&b) {
                    let b = b as usize;
                    row[b * n..(b + 1) * n].copy_from_slice(c.row(i));
                }
            }
            if row.iter().any(|&x| x != 0) {
                out.push_row(&row);
            }
        }
    }
    out
}

/// Minimum weight of a nonzero finitely supported `c` orthogonal to every
/// shift of every row of `G(D)`.
///
/// Single-block words are searched exactly. A word spanning blocks
/// `a < b` has `c_a` in the kernel of `G_mu` and `c_b` in the kernel of
/// `G_0`, which bounds multi-block words from below; when that bound is not
/// enough, windows of `2..=t+1` blocks are searched as well.
pub fn dual_window_distance(g: &PolyGeneratorMatrix, t: usize, budget: &Budget) -> DistanceResult {
    let f = g.field();
    let mu = g.memory();
    let meter = budget.meter();
    let single = weight::min_dependent_columns(f, &g.stacked_coefficients(), None, &meter);
    let last = weight::min_dependent_columns(f, &g.coefficient(mu), None, &meter);
    let first = weight::min_dependent_columns(f, &g.coefficient(0), None, &meter);
    let multi_lower = if last.lower == INFINITE || first.lower == INFINITE {
        INFINITE
    } else {
        last.lower + first.lower
    };
    if single.is_exact() && single.upper <= multi_lower {
        return DistanceResult::from_search(f, single);
    }
    let lower = single.lower.min(multi_lower);
    let mut upper = single.upper;
    let mut witness = single.witness;
    for blocks in 2..=t + 1 {
        let r = weight::min_dependent_columns(f, &dual_window_matrix(g, blocks), None, &meter);
        if r.upper < upper {
            upper = r.upper;
            witness = r.witness;
        }
    }
    DistanceResult::from_bounds(f, lower, upper, witness)
}

/// [`dual_window_distance`] for the Hermitian dual: the Euclidean dual of
/// the entrywise `q`-power of `G(D)`.
pub fn dual_window_distance_hermitian(
    g: &PolyGeneratorMatrix,
    pair: &ExtensionPair,
    t: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    super::Form::Hermitian(pair.clone()).check_field(g.field())?;
    let conj = g.map_coefficients(|x| pair.frobenius_q(x));
    Ok(dual_window_distance(&conj, t, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::Poly;
    use proptest::prelude::*;

    fn gmat(q: u64, entries: Vec<Vec<Poly>>) -> PolyGeneratorMatrix {
        PolyGeneratorMatrix::new(Field::with_order(q).unwrap(), entries).unwrap()
    }

    /// Independent oracle: every message of degree <= t, minimum weight of
    /// the nonzero codewords.
    fn oracle_upper(g: &PolyGeneratorMatrix, t: usize) -> usize {
        let f = g.field();
        let w = expand_window(g, t).into_matrix();
        let q = f.order() as usize;
        let mut best = INFINITE;
        for idx in 1..q.pow(w.rows() as u32) {
            let mut x = idx;
            let u: Vec<u32> = (0..w.rows())
                .map(|_| {
                    let d = (x % q) as u32;
                    x /= q;
                    d
                })
                .collect();
            let wt = linalg::weight(&linalg::vec_mul(f, &u, &w));
            if wt > 0 {
                best = best.min(wt);
            }
        }
        best
    }

    #[test]
    fn repetition_style_row() {
        let g = gmat(2, vec![vec![vec![1, 1], vec![1, 1]]]);
        let d = free_distance_bruteforce(&g, &FreeDistanceOptions::default());
        assert_eq!(d.value(), Some(4));
        assert_eq!(d.certificate.as_ref().unwrap().weight(), 4);
    }

    #[test]
    fn classic_rate_half_code() {
        // (1 + D + D^2, 1 + D^2): free distance 5
        let g = gmat(2, vec![vec![vec![1, 1, 1], vec![1, 0, 1]]]);
        let d = free_distance_bruteforce(&g, &FreeDistanceOptions::default());
        assert_eq!(d.value(), Some(5));
        let cert = d.certificate.unwrap();
        assert_eq!(cert.weight(), 5);
    }

    #[test]
    fn block_code_reduction() {
        let g = gmat(
            2,
            vec![
                vec![vec![1], vec![0], vec![0], vec![0], vec![1], vec![1], vec![0]],
                vec![vec![0], vec![1], vec![0], vec![0], vec![0], vec![1], vec![1]],
                vec![vec![0], vec![0], vec![1], vec![0], vec![1], vec![1], vec![1]],
                vec![vec![0], vec![0], vec![0], vec![1], vec![1], vec![0], vec![1]],
            ],
        );
        let d = free_distance_bruteforce(&g, &FreeDistanceOptions::default());
        assert_eq!(d.value(), Some(3));
        assert_eq!(d.value(), Some(oracle_upper(&g, 0)));
    }

    #[test]
    fn identity_has_trivial_dual() {
        let g = gmat(3, vec![vec![vec![1], vec![]], vec![vec![], vec![1]]]);
        let d = dual_window_distance(&g, 2, &Budget::default());
        assert!(d.is_infinite());
        let json = serde_json::to_value(&d).unwrap();
        assert!(json["df_lower"].is_null());
    }

    #[test]
    fn dual_of_rate_half_code() {
        // (1 + D + D^2, 1 + D^2) has a dual of free distance 3 (it is its own
        // reversal-type dual up to swapping): check against a window oracle
        let g = gmat(2, vec![vec![vec![1, 1, 1], vec![1, 0, 1]]]);
        let d = dual_window_distance(&g, 3, &Budget::default());
        let oracle = (1..=4)
            .map(|b| {
                let k = dual_window_matrix(&g, b);
                let ker = linalg::kernel(g.field(), &k);
                if ker.rows() == 0 {
                    INFINITE
                } else {
                    weight::min_weight_rowspace(g.field(), &ker, &Budget::default().meter())
                        .value()
                        .unwrap()
                }
            })
            .min()
            .unwrap();
        assert_eq!(d.df_upper, oracle);
        let cert = d.certificate.unwrap();
        let len = cert.values().len().div_ceil(2) * 2;
        let blocks = len / 2;
        let k = dual_window_matrix(&g, blocks);
        let v = cert.padded(blocks * 2);
        for r in k.iter_rows() {
            assert_eq!(linalg::dot(g.field(), r, &v), 0);
        }
    }

    fn random_gen(q: u32, k: usize, n: usize, mu: usize, seed: &[u32]) -> Vec<Vec<Poly>> {
        let mut it = seed.iter().cycle();
        (0..k)
            .map(|_| (0..n).map(|_| (0..=mu).map(|_| it.next().unwrap() % q).collect()).collect())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Exact results never exceed the windowed oracle and match it once
        /// the window is long enough for these small codes.
        #[test]
        fn free_distance_matches_oracle(
            seed in prop::collection::vec(0u32..8, 1..20),
            q in prop::sample::select(vec![2u64, 3]),
            n in 2usize..4,
            mu in 1usize..3,
        ) {
            let g = gmat(q, random_gen(q as u32, 1, n, mu, &seed));
            prop_assume!(!g.is_zero_row(0));
            let d = free_distance_bruteforce(&g, &FreeDistanceOptions::default());
            prop_assert!(d.exact);
            let oracle = oracle_upper(&g, 4);
            prop_assert!(d.df_upper <= oracle);
            if let Some(c) = &d.certificate {
                prop_assert_eq!(c.weight(), d.df_upper);
            }
        }

        #[test]
        fn bounds_are_monotone(
            seed in prop::collection::vec(0u32..8, 1..20),
            n in 2usize..4,
        ) {
            let g = gmat(2, random_gen(2, 1, n, 2, &seed));
            prop_assume!(!g.is_zero_row(0));
            let mut prev_upper = INFINITE;
            for t_max in 0..3 {
                let opts = FreeDistanceOptions { t_max, w_cap: 0, ..Default::default() };
                let d = free_distance_bruteforce(&g, &opts);
                prop_assert!(d.df_upper <= prev_upper);
                prev_upper = d.df_upper;
            }
            let mut prev_lower = 0;
            for w_cap in 0..8 {
                let opts = FreeDistanceOptions { w_cap, ..Default::default() };
                let d = free_distance_bruteforce(&g, &opts);
                prop_assert!(d.df_lower >= prev_lower);
                prev_lower = d.df_lower;
            }
        }
    }
}

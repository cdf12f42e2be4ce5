//! Degree, minor gcd and right invertibility of `G(D)`.
//!
//! The maximal `k x k` minor degree is computed from the minors directly
//! when there are few of them, and otherwise from a row-reduced equivalent
//! matrix (unimodular row operations change minors by a nonzero constant,
//! and for a row-reduced matrix the maximal minor degree equals the sum of
//! the row degrees). The minor gcd comes from a column Hermite reduction,
//! which preserves the ideal generated by the minors.

use serde::Serialize;

use super::poly::{self, Poly};
use super::PolyGeneratorMatrix;
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::linalg::{self, Matrix};

/// Largest `C(n, k) * k^3` handled by explicit minor expansion.
pub const MINOR_WORK_CAP: u128 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMethod {
    Minors,
    RowReduction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeInfo {
    /// Maximal degree of a `k x k` minor; `None` when all minors vanish.
    pub max_minor_degree: Option<usize>,
    pub row_degree_sum: usize,
    /// Whether `max_minor_degree == row_degree_sum`.
    pub reduced: bool,
    /// Degree of the monic gcd of the minors; `None` when all vanish.
    pub minor_gcd_degree: Option<usize>,
    /// `max_minor_degree - minor_gcd_degree`: the degree of a basic
    /// encoder of the same code.
    pub internal_degree: Option<usize>,
    pub method: DegreeMethod,
}

impl DegreeInfo {
    /// The degree `delta` as the maximal minor degree (0 when undefined).
    pub fn delta(&self) -> usize {
        self.max_minor_degree.unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightInvertibility {
    pub invertible: bool,
    /// Monic gcd of the `k x k` minors (empty when they all vanish). A
    /// nonconstant gcd is the common factor blocking invertibility.
    pub gcd: Poly,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Determinant by fraction-free (Bareiss) elimination over F[D].
pub fn determinant(f: &Field, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut negate = false;
    let mut prev: Poly = vec![1];
    for c in 0..n - 1 {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_empty()) else {
            return Vec::new();
        };
        if p != c {
            m.swap(p, c);
            negate = !negate;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = poly::sub(f, &poly::mul(f, &m[c][c], &m[i][j]), &poly::mul(f, &m[i][c], &m[c][j]));
                let (qt, r) = poly::divrem(f, &num, &prev);
                debug_assert!(r.is_empty(), "Bareiss division is exact");
                m[i][j] = qt;
            }
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        poly::scale(f, &d, f.neg(1))
    } else {
        d
    }
}

/// Calls `visit` on every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Max minor degree and gcd of all minors by explicit expansion, or
/// `None` if the expansion exceeds [`MINOR_WORK_CAP`].
pub fn minors_summary(g: &PolyGeneratorMatrix) -> Option<(Option<usize>, Poly)> {
    let (k, n) = (g.k(), g.n());
    let work = binomial(n, k).saturating_mul((k.max(1) as u128).pow(3));
    if work > MINOR_WORK_CAP {
        return None;
    }
    let f = g.field();
    let mut best: Option<usize> = None;
    let mut gcd: Poly = Vec::new();
    for_each_subset(n, k, |cols| {
        let sub: Vec<Vec<Poly>> = (0..k)
            .map(|i| cols.iter().map(|&j| g.entry(i, j).clone()).collect())
            .collect();
        let d = determinant(f, sub);
        if let Some(deg) = poly::degree(&d) {
            best = Some(best.map_or(deg, |b| b.max(deg)));
            gcd = poly::gcd(f, &gcd, &d);
        }
    });
    Some((best, gcd))
}

/// Row-reduced form: unimodular row operations until the leading row
/// coefficient matrix has full rank. Returns `None` if a row vanishes
/// (the rows are dependent over F(D)).
pub fn row_reduce(g: &PolyGeneratorMatrix) -> Option<Vec<Vec<Poly>>> {
    let f = g.field();
    let (k, n) = (g.k(), g.n());
    let mut rows: Vec<Vec<Poly>> = g.entries().to_vec();
    loop {
        let mut nu = Vec::with_capacity(k);
        for r in &rows {
            nu.push(r.iter().filter_map(|p| poly::degree(p)).max()?);
        }
        let mut lead = Matrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                lead.set(i, j, poly::coeff(&rows[i][j], nu[i]));
            }
        }
        let left = linalg::kernel(f, &lead.transpose());
        if left.rows() == 0 {
            return Some(rows);
        }
        let x = left.row(0);
        let target = (0..k)
            .filter(|&i| x[i] != 0)
            .max_by_key(|&i| (nu[i], std::cmp::Reverse(i)))
            .expect("kernel vector is nonzero");
        let new_row: Vec<Poly> = (0..n)
            .map(|j| {
                (0..k).filter(|&i| x[i] != 0).fold(Vec::new(), |acc, i| {
                    let term = poly::shift(&poly::scale(f, &rows[i][j], x[i]), nu[target] - nu[i]);
                    poly::add(f, &acc, &term)
                })
            })
            .collect();
        rows[target] = new_row;
    }
}

/// Monic gcd of all `k x k` minors via column Hermite reduction; empty if
/// every minor vanishes.
pub fn minor_gcd(g: &PolyGeneratorMatrix) -> Poly {
    let f = g.field();
    let (k, n) = (g.k(), g.n());
    if k > n {
        return Vec::new();
    }
    let mut a: Vec<Vec<Poly>> = g.entries().to_vec();
    let mut diag: Poly = vec![1];
    for i in 0..k {
        loop {
            let Some(j0) = (i..n)
                .filter(|&j| !a[i][j].is_empty())
                .min_by_key(|&j| (poly::degree(&a[i][j]), j))
            else {
                return Vec::new();
            };
            if j0 != i {
                for row in a.iter_mut() {
                    row.swap(i, j0);
                }
            }
            let mut done = true;
            for j in i + 1..n {
                if a[i][j].is_empty() {
                    continue;
                }
                let (qt, _) = poly::divrem(f, &a[i][j], &a[i][i]);
                for row in a.iter_mut() {
                    let t = poly::mul(f, &qt, &row[i]);
                    row[j] = poly::sub(f, &row[j], &t);
                }
                if !a[i][j].is_empty() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        diag = poly::mul(f, &diag, &a[i][i]);
    }
    poly::monic(f, &diag)
}

pub fn right_invertible(g: &PolyGeneratorMatrix) -> RightInvertibility {
    let gcd = minor_gcd(g);
    RightInvertibility {
        invertible: poly::degree(&gcd) == Some(0),
        gcd,
    }
}

pub fn degree(g: &PolyGeneratorMatrix) -> Result<DegreeInfo> {
    if g.k() > g.n() {
        return Err(Error::TooManyRows { k: g.k(), n: g.n() });
    }
    let row_degree_sum = g.row_degrees().iter().sum();
    let gcd = minor_gcd(g);
    let (max_minor_degree, method) = match minors_summary(g) {
        Some((d, _)) => (d, DegreeMethod::Minors),
        None => {
            let d = row_reduce(g).map(|rows| {
                rows.iter()
                    .map(|r| r.iter().filter_map(|p| poly::degree(p)).max().unwrap_or(0))
                    .sum()
            });
            (d, DegreeMethod::RowReduction)
        }
    };
    let minor_gcd_degree = poly::degree(&gcd);
    Ok(DegreeInfo {
        max_minor_degree,
        row_degree_sum,
        reduced: max_minor_degree == Some(row_degree_sum),
        minor_gcd_degree,
        internal_degree: max_minor_degree.zip(minor_gcd_degree).map(|(a, b)| a - b),
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gmat(q: u64, entries: Vec<Vec<Poly>>) -> PolyGeneratorMatrix {
        PolyGeneratorMatrix::new(Field::with_order(q).unwrap(), entries).unwrap()
    }

    #[test]
    fn constant_identity() {
        let g = gmat(3, vec![vec![vec![1], vec![]], vec![vec![], vec![1]]]);
        let d = degree(&g).unwrap();
        assert_eq!(d.max_minor_degree, Some(0));
        assert!(d.reduced);
        assert!(right_invertible(&g).invertible);
    }

    #[test]
    fn common_factor_blocks_invertibility() {
        let g = gmat(2, vec![vec![vec![1, 1], vec![1, 1]]]);
        let r = right_invertible(&g);
        assert!(!r.invertible);
        assert_eq!(r.gcd, vec![1, 1]);
        let d = degree(&g).unwrap();
        assert_eq!(d.max_minor_degree, Some(1));
        assert_eq!(d.internal_degree, Some(0));
    }

    #[test]
    fn non_reduced_matrix() {
        // rows (1, D) and (D, D^2 + 1): leading matrix [[0,1],[0,1]] is singular
        let g = gmat(2, vec![vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1, 0, 1]]]);
        let d = degree(&g).unwrap();
        assert_eq!(d.row_degree_sum, 3);
        assert_eq!(d.max_minor_degree, Some(0));
        assert!(!d.reduced);
        let rows = row_reduce(&g).unwrap();
        let sum: usize = rows
            .iter()
            .map(|r| r.iter().filter_map(|p| poly::degree(p)).max().unwrap())
            .sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn rank_deficient_has_no_minor_degree() {
        let g = gmat(2, vec![vec![vec![1], vec![1]], vec![vec![0, 1], vec![0, 1]]]);
        let d = degree(&g).unwrap();
        assert_eq!(d.max_minor_degree, None);
        assert_eq!(minor_gcd(&g), Vec::<u32>::new());
        assert!(row_reduce(&g).is_none());
        assert!(!right_invertible(&g).invertible);
    }

    #[test]
    fn too_many_rows() {
        let g = gmat(2, vec![vec![vec![1]], vec![vec![1]]]);
        assert!(matches!(degree(&g), Err(Error::TooManyRows { k: 2, n: 1 })));
    }

    fn random_gen(q: u32, k: usize, n: usize, mu: usize, seed: &[u32]) -> Vec<Vec<Poly>> {
        let mut it = seed.iter().cycle();
        (0..k)
            .map(|_| (0..n).map(|_| (0..=mu).map(|_| it.next().unwrap() % q).collect()).collect())
            .collect()
    }

    proptest! {
        /// Row reduction and Hermite reduction agree with explicit minors.
        #[test]
        fn reductions_agree_with_minors(
            seed in prop::collection::vec(0u32..16, 1..30),
            q in prop::sample::select(vec![2u64, 3, 4]),
            k in 1usize..4,
            extra in 0usize..3,
            mu in 0usize..3,
        ) {
            let n = k + extra;
            let g = gmat(q, random_gen(q as u32, k, n, mu, &seed));
            let (max_deg, gcd) = minors_summary(&g).unwrap();
            let reduced = row_reduce(&g).map(|rows| rows.iter()
                .map(|r| r.iter().filter_map(|p| poly::degree(p)).max().unwrap_or(0))
                .sum::<usize>());
            prop_assert_eq!(reduced, max_deg);
            prop_assert_eq!(minor_gcd(&g), gcd);
        }
    }
}

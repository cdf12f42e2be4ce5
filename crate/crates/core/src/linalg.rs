//! Dense matrices over a [`Field`], stored row-major as packed elements.

use crate::galois::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn with_cols(cols: usize) -> Self {
        Matrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.iter_rows().map(<[u32]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut out = Matrix::with_cols(cols);
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in stack");
            out.data.extend_from_slice(&m.data);
            out.rows += m.rows;
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hconcat(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row mismatch in hconcat");
            for r in 0..rows {
                out.row_mut(r)[offset..offset + m.cols].copy_from_slice(m.row(r));
            }
            offset += m.cols;
        }
        out
    }
}

#[inline]
pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// `y += a * x`.
#[inline]
pub fn axpy(f: &Field, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

pub fn scale(f: &Field, v: &[u32], a: u32) -> Vec<u32> {
    v.iter().map(|&x| f.mul(a, x)).collect()
}

pub fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `v * M` for a row vector `v`.
pub fn vec_mul(f: &Field, v: &[u32], m: &Matrix) -> Vec<u32> {
    assert_eq!(v.len(), m.rows(), "vector length");
    let mut out = vec![0; m.cols()];
    for (r, &a) in v.iter().enumerate() {
        axpy(f, &mut out, a, m.row(r));
    }
    out
}

pub fn mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols(), b.rows(), "inner dimension");
    let mut out = Matrix::zeros(a.rows(), b.cols());
    for r in 0..a.rows() {
        let row = vec_mul(f, a.row(r), b);
        out.row_mut(r).copy_from_slice(&row);
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns. Zero rows
/// are moved to the bottom.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols() {
                let (a, b) = (m.get(r, j), m.get(p, j));
                m.set(r, j, b);
                m.set(p, j, a);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in 0..m.cols() {
            let x = m.get(r, j);
            m.set(r, j, f.mul(x, inv));
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.rows() {
            if i != r {
                let factor = m.get(i, c);
                if factor != 0 {
                    axpy(f, m.row_mut(i), f.neg(factor), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of the right kernel `{x : M x^T = 0}`, one vector per row.
pub fn kernel(f: &Field, m: &Matrix) -> Matrix {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(free.len(), m.cols());
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            out.set(k, pc, f.neg(r.get(i, fc)));
        }
    }
    out
}

/// Row space in reduced echelon form, for membership tests.
#[derive(Debug, Clone)]
pub struct RowSpace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(f: &Field, m: &Matrix) -> Self {
        let mut basis = m.clone();
        let pivots = rref(f, &mut basis);
        let basis = Matrix::from_rows_cols(basis.to_rows().into_iter().take(pivots.len()).collect(), m.cols());
        RowSpace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Residue of `v` after eliminating the pivot columns.
    pub fn reduce(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            if a != 0 {
                axpy(f, &mut v, f.neg(a), self.basis.row(i));
            }
        }
        v
    }

    pub fn contains(&self, f: &Field, v: &[u32]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, f: &Field, other: &Matrix) -> bool {
        other.iter_rows().all(|r| self.contains(f, r))
    }
}

impl Matrix {
    fn from_rows_cols(rows: Vec<Vec<u32>>, cols: usize) -> Matrix {
        let mut m = Matrix::with_cols(cols);
        for r in rows {
            m.push_row(&r);
        }
        m
    }
}

/// Solves `x M = target` for a row vector `x` when solvable.
pub fn solve_left(f: &Field, m: &Matrix, target: &[u32]) -> Option<Vec<u32>> {
    // [M^T | target^T] column system
    let mt = m.transpose();
    let mut aug = Matrix::zeros(mt.rows(), mt.cols() + 1);
    for r in 0..mt.rows() {
        aug.row_mut(r)[..mt.cols()].copy_from_slice(mt.row(r));
        aug.set(r, mt.cols(), target[r]);
    }
    let pivots = rref(f, &mut aug);
    if pivots.contains(&mt.cols()) {
        return None;
    }
    let mut x = vec![0; mt.cols()];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(i, mt.cols());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_gf4() {
        let f = Field::gf(2, 2).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3, 0], vec![2, 3, 1, 0], vec![3, 1, 2, 0]]);
        // row 1 = w * row 0, row 2 = w^2 * row 0
        assert_eq!(rank(&f, &m), 1);
        let k = kernel(&f, &m);
        assert_eq!(k.rows(), 3);
        for x in k.iter_rows() {
            for r in m.iter_rows() {
                assert_eq!(dot(&f, r, x), 0);
            }
        }
    }

    #[test]
    fn row_space_membership() {
        let f = Field::gf(3, 1).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 0], vec![0, 1, 1]]);
        let rs = RowSpace::new(&f, &m);
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&f, &[1, 0, 1])); // r0 + r1 = (1, 0, 1) mod 3
        assert!(!rs.contains(&f, &[0, 0, 1]));
    }

    #[test]
    fn solve_left_finds_combination() {
        let f = Field::gf(5, 1).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 4]]);
        let target = vec_mul(&f, &[3, 2], &m);
        assert_eq!(solve_left(&f, &m, &target), Some(vec![3, 2]));
        assert_eq!(solve_left(&f, &m, &[0, 0, 1]), None);
    }
}

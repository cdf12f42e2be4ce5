//! Reference models of phase-free Pauli operators, independent of the
//! library's trace-alternating form.

#![allow(dead_code)]

/// Integer matrix of `X^{a_1} Z^{b_1} (x) ... (x) X^{a_n} Z^{b_n}` for qubits.
pub fn qubit_matrix(a: &[u32], b: &[u32]) -> Vec<Vec<i64>> {
    let x = vec![vec![0, 1], vec![1, 0]];
    let z = vec![vec![1, 0], vec![0, -1]];
    let id = vec![vec![1, 0], vec![0, 1]];
    let mut out = vec![vec![1i64]];
    for (&ai, &bi) in a.iter().zip(b) {
        let xa = if ai == 1 { &x } else { &id };
        let zb = if bi == 1 { &z } else { &id };
        out = kron(&out, &matmul(xa, zb));
    }
    out
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn kron(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![0; ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn qubit_commute(x: (&[u32], &[u32]), y: (&[u32], &[u32])) -> bool {
    let p = qubit_matrix(x.0, x.1);
    let q = qubit_matrix(y.0, y.1);
    matmul(&p, &q) == matmul(&q, &p)
}

/// Arithmetic of GF(3) or GF(4) (modulus x^2 + x + 1, packed as `d0 + 2 d1`).
#[derive(Clone, Copy)]
pub struct SmallField {
    pub q: u32,
}

impl SmallField {
    pub fn p(&self) -> u32 {
        if self.q == 4 {
            2
        } else {
            self.q
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.q == 4 {
            a ^ b
        } else {
            (a + b) % self.q
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.q == 4 {
            const T: [[u32; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
            T[a as usize][b as usize]
        } else {
            a * b % self.q
        }
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self, a: u32) -> u32 {
        if self.q == 4 {
            self.add(a, self.mul(a, a))
        } else {
            a
        }
    }
}

/// `E(a, b)|x> = w^{tr(b.x)} |x + a>` as a monomial matrix: for each basis
/// index, the image index and the exponent of `w` modulo `p`.
pub fn monomial(f: SmallField, a: &[u32], b: &[u32]) -> Vec<(usize, u32)> {
    let n = a.len();
    let q = f.q as usize;
    (0..q.pow(n as u32))
        .map(|idx| {
            let x: Vec<u32> = (0..n).map(|i| ((idx / q.pow(i as u32)) % q) as u32).collect();
            let phase = x.iter().zip(b).fold(0, |acc, (&xi, &bi)| (acc + f.trace(f.mul(bi, xi))) % f.p());
            let target = x
                .iter()
                .zip(a)
                .enumerate()
                .map(|(i, (&xi, &ai))| f.add(xi, ai) as usize * q.pow(i as u32))
                .sum();
            (target, phase)
        })
        .collect()
}

fn compose(f: SmallField, outer: &[(usize, u32)], inner: &[(usize, u32)]) -> Vec<(usize, u32)> {
    inner
        .iter()
        .map(|&(t, ph)| {
            let (t2, ph2) = outer[t];
            (t2, (ph + ph2) % f.p())
        })
        .collect()
}

pub fn monomial_commute(f: SmallField, x: (&[u32], &[u32]), y: (&[u32], &[u32])) -> bool {
    let p = monomial(f, x.0, x.1);
    let q = monomial(f, y.0, y.1);
    compose(f, &p, &q) == compose(f, &q, &p)
}

/// Every `(a, b)` pair on `n` qudits over GF(q).
pub fn all_paulis(q: u32, n: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let total = (q as usize).pow(2 * n as u32);
    (0..total)
        .map(|mut idx| {
            let mut digits = Vec::with_capacity(2 * n);
            for _ in 0..2 * n {
                digits.push((idx % q as usize) as u32);
                idx /= q as usize;
            }
            (digits[..n].to_vec(), digits[n..].to_vec())
        })
        .collect()
}

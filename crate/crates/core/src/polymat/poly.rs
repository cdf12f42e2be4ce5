//! Univariate polynomials over a field as coefficient vectors, low degree
//! first. The zero polynomial is the empty vector; all results are trimmed.

use crate::galois::Field;

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn is_zero(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&x| x != 0)
}

pub fn constant(c: u32) -> Poly {
    trim(vec![c])
}

pub fn coeff(a: &[u32], i: usize) -> u32 {
    a.get(i).copied().unwrap_or(0)
}

pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let len = a.len().max(b.len());
    trim((0..len).map(|i| f.add(coeff(a, i), coeff(b, i))).collect())
}

pub fn sub(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let len = a.len().max(b.len());
    trim((0..len).map(|i| f.sub(coeff(a, i), coeff(b, i))).collect())
}

pub fn scale(f: &Field, a: &[u32], c: u32) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

/// `D^s * a`.
pub fn shift(a: &[u32], s: usize) -> Poly {
    if is_zero(a) {
        return Vec::new();
    }
    let mut out = vec![0; s];
    out.extend_from_slice(a);
    trim(out)
}

pub fn mul(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return Vec::new();
    };
    let mut out = vec![0; da + db + 1];
    for (i, &x) in a[..=da].iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b[..=db].iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trim(out)
}

/// Quotient and remainder.
///
/// # Panics
/// If `b` is zero.
pub fn divrem(f: &Field, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut rem = trim(a.to_vec());
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; da - db + 1];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(rem[dr], lead_inv);
        quot[dr - db] = c;
        for (j, &y) in b[..=db].iter().enumerate() {
            let idx = dr - db + j;
            rem[idx] = f.sub(rem[idx], f.mul(c, y));
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Scales to a monic polynomial (zero stays zero).
pub fn monic(f: &Field, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d])),
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Applies `g` to every coefficient.
pub fn map(a: &[u32], g: impl Fn(u32) -> u32) -> Poly {
    trim(a.iter().map(|&x| g(x)).collect())
}

/// Human-readable form such as `1 + 3D + D^2`, coefficients as packed
/// integers.
pub fn display(a: &[u32]) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "D".into(),
            (1, c) => format!("{c}D"),
            (i, 1) => format!("D^{i}"),
            (i, c) => format!("{c}D^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

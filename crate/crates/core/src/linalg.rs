//! Dense matrices over a [`Field`], row-vector convention (`v -> v * M`).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Row-major n x n matrix product.
pub fn mat_mul(f: &Field, n: usize, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; n * n];
    mat_mul_into(f, n, a, b, &mut out);
    out
}

pub fn mat_mul_into(f: &Field, n: usize, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        row.fill(Fe::ZERO);
        for k in 0..n {
            let c = a[i * n + k];
            if c.is_zero() {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            if c == Fe::ONE {
                for j in 0..n {
                    row[j] = f.add(row[j], brow[j]);
                }
            } else {
                for j in 0..n {
                    row[j] = f.add(row[j], f.mul(c, brow[j]));
                }
            }
        }
    }
}

/// `v * M` for a row vector `v`.
pub fn vec_mat(f: &Field, v: &[Fe], m: &[Fe], out: &mut [Fe]) {
    let n = v.len();
    out[..n].fill(Fe::ZERO);
    for (k, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let row = &m[k * n..(k + 1) * n];
        for j in 0..n {
            out[j] = f.add(out[j], f.mul(c, row[j]));
        }
    }
}

pub fn identity(n: usize) -> Vec<Fe> {
    let mut m = vec![Fe::ZERO; n * n];
    for i in 0..n {
        m[i * n + i] = Fe::ONE;
    }
    m
}

pub fn is_identity(n: usize, m: &[Fe]) -> bool {
    m.iter().enumerate().all(|(idx, &x)| {
        x == if idx / n == idx % n {
            Fe::ONE
        } else {
            Fe::ZERO
        }
    })
}

pub fn transpose(n: usize, m: &[Fe]) -> Vec<Fe> {
    let mut t = vec![Fe::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = m[i * n + j];
        }
    }
    t
}

/// Gauss-Jordan inverse.
pub fn mat_inv(f: &Field, n: usize, m: &[Fe]) -> Result<Vec<Fe>> {
    let mut a = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r * n + col].is_zero())
            .ok_or(Error::Singular)?;
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
        }
        let s = f.inv(a[col * n + col])?;
        for j in 0..n {
            a[col * n + j] = f.mul(s, a[col * n + j]);
            inv[col * n + j] = f.mul(s, inv[col * n + j]);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let c = a[r * n + col];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                inv[r * n + j] = f.sub(inv[r * n + j], f.mul(c, inv[col * n + j]));
            }
        }
    }
    Ok(inv)
}

/// Reduced row echelon form of a `rows x cols` matrix; returns pivot columns.
pub fn rref(f: &Field, rows: usize, cols: usize, a: &mut [Fe]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let s = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        for j in 0..cols {
            a[r * cols + j] = f.mul(s, a[r * cols + j]);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let t = a[i * cols + c];
            if t.is_zero() {
                continue;
            }
            for j in 0..cols {
                a[i * cols + j] = f.sub(a[i * cols + j], f.mul(t, a[r * cols + j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, rows: usize, cols: usize, a: &[Fe]) -> usize {
    let mut b = a.to_vec();
    rref(f, rows, cols, &mut b).len()
}

pub fn det(f: &Field, n: usize, m: &[Fe]) -> Fe {
    let mut a = m.to_vec();
    let mut d = Fe::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Fe::ZERO;
        };
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            d = f.neg(d);
        }
        let pv = a[col * n + col];
        d = f.mul(d, pv);
        let s = f.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let c = f.mul(a[r * n + col], s);
            if c.is_zero() {
                continue;
            }
            for j in col..n {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
            }
        }
    }
    d
}

/// Basis (as rows) of `{x : x * M = 0}` for an `rows x cols` matrix `M`,
/// i.e. the left kernel.
pub fn left_kernel(f: &Field, rows: usize, cols: usize, m: &[Fe]) -> Vec<Vec<Fe>> {
    // left kernel of M = right kernel of M^T
    let mut t = vec![Fe::ZERO; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            t[j * rows + i] = m[i * cols + j];
        }
    }
    right_kernel(f, cols, rows, &mut t)
}

/// Basis of `{x : M * x^T = 0}`; `m` is consumed as scratch space.
pub fn right_kernel(f: &Field, rows: usize, cols: usize, m: &mut [Fe]) -> Vec<Vec<Fe>> {
    let pivots = rref(f, rows, cols, m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; cols];
        v[free] = Fe::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[r * cols + free]);
        }
        basis.push(v);
    }
    basis
}

/// Entrywise `x -> x^(p^k)`.
pub fn frob_entries(f: &Field, m: &[Fe], k: u32) -> Vec<Fe> {
    if k.is_multiple_of(f.degree()) {
        return m.to_vec();
    }
    m.iter().map(|&x| f.frob(x, k)).collect()
}

pub fn dot(f: &Field, u: &[Fe], v: &[Fe]) -> Fe {
    u.iter()
        .zip(v)
        .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

pub fn vec_add(f: &Field, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn vec_sub(f: &Field, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
    u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn vec_scale(f: &Field, c: Fe, v: &[Fe]) -> Vec<Fe> {
    v.iter().map(|&a| f.mul(c, a)).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = Fe::ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn inverse_and_det() {
        let f = Field::new(3, 1).unwrap();
        let m: Vec<Fe> = [1, 2, 0, 0, 1, 1, 1, 0, 2].iter().map(|&x| Fe(x)).collect();
        let inv = mat_inv(&f, 3, &m).unwrap();
        assert!(is_identity(3, &mat_mul(&f, 3, &m, &inv)));
        assert!(!det(&f, 3, &m).is_zero());
        let sing: Vec<Fe> = [1, 1, 0, 1, 1, 0, 0, 0, 1].iter().map(|&x| Fe(x)).collect();
        assert!(mat_inv(&f, 3, &sing).is_err());
        assert_eq!(det(&f, 3, &sing), Fe::ZERO);
        assert_eq!(rank(&f, 3, 3, &sing), 2);
    }

    #[test]
    fn kernels() {
        let f = Field::new(2, 2).unwrap();
        let m: Vec<Fe> = [1, 1, 0, 1, 1, 0].iter().map(|&x| Fe(x)).collect();
        // 2x3 matrix: left kernel is {x : x*M = 0}, of dimension 1 here
        let k = left_kernel(&f, 2, 3, &m);
        assert_eq!(k.len(), 1);
        let mut out = [Fe::ZERO; 3];
        for j in 0..3 {
            out[j] = f.add(f.mul(k[0][0], m[j]), f.mul(k[0][1], m[3 + j]));
        }
        assert!(out.iter().all(|x| x.is_zero()));
    }
}

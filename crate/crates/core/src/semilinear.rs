//! Semilinear maps `v -> sigma^k(v) * A`, the single element model used for
//! every group in the crate (Omega, O, GammaO, SU, GammaU and their blow-ups).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg;

/// A pair `(A, k)` acting by `v -> sigma^k(v) * A`, where `sigma` raises each
/// coordinate to the p-th power. Composition is left-to-right:
/// `(A, k) then (B, l) = (sigma^l(A) * B, k + l)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semilinear {
    n: usize,
    frob: u32,
    mat: Vec<Fe>,
}

impl Semilinear {
    /// Checks invertibility and reduces the Frobenius exponent mod the field degree.
    pub fn new(f: &Field, n: usize, mat: Vec<Fe>, frob: u32) -> Result<Self> {
        if mat.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: mat.len(),
            });
        }
        if linalg::det(f, n, &mat).is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self {
            n,
            frob: frob % f.degree(),
            mat,
        })
    }

    pub fn linear(f: &Field, n: usize, mat: Vec<Fe>) -> Result<Self> {
        Self::new(f, n, mat, 0)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            frob: 0,
            mat: linalg::identity(n),
        }
    }

    /// The bare field automorphism `v -> sigma^k(v)`.
    pub fn frobenius(f: &Field, n: usize, k: u32) -> Self {
        Self {
            n,
            frob: k % f.degree(),
            mat: linalg::identity(n),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn frob(&self) -> u32 {
        self.frob
    }

    #[inline]
    pub fn matrix(&self) -> &[Fe] {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Fe {
        self.mat[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        self.frob == 0 && linalg::is_identity(self.n, &self.mat)
    }

    pub fn is_linear(&self) -> bool {
        self.frob == 0
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self, f: &Field) -> Self {
        debug_assert_eq!(self.n, other.n);
        let a = linalg::frob_entries(f, &self.mat, other.frob);
        let mat = linalg::mat_mul(f, self.n, &a, &other.mat);
        Self {
            n: self.n,
            frob: (self.frob + other.frob) % f.degree(),
            mat,
        }
    }

    pub fn inverse(&self, f: &Field) -> Self {
        let e = f.degree();
        let back = (e - self.frob % e) % e;
        let inv =
            linalg::mat_inv(f, self.n, &self.mat).expect("semilinear elements are invertible");
        Self {
            n: self.n,
            frob: back,
            mat: linalg::frob_entries(f, &inv, back),
        }
    }

    pub fn pow(&self, f: &Field, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base, f);
            }
            base = base.compose(&base, f);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`, i.e. `g^-1` then `self` then `g`.
    pub fn conjugate_by(&self, g: &Self, f: &Field) -> Self {
        g.inverse(f).compose(self, f).compose(g, f)
    }

    /// Order by repeated composition, bounded by `limit`.
    pub fn order(&self, f: &Field, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self, f);
        }
        None
    }

    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.n];
        self.apply_into(f, v, &mut out);
        out
    }

    /// `out = sigma^k(v) * A`.
    #[inline]
    pub fn apply_into(&self, f: &Field, v: &[Fe], out: &mut [Fe]) {
        let n = self.n;
        out[..n].fill(Fe::ZERO);
        for (k, &c) in v.iter().enumerate().take(n) {
            let c = f.frob(c, self.frob);
            if c.is_zero() {
                continue;
            }
            let row = &self.mat[k * n..(k + 1) * n];
            for j in 0..n {
                out[j] = f.add(out[j], f.mul(c, row[j]));
            }
        }
    }

    /// Determinant of the matrix part.
    pub fn det(&self, f: &Field) -> Fe {
        linalg::det(f, self.n, &self.mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    #[test]
    fn identity_acts_trivially() {
        let f = Field::new(2, 2).unwrap();
        let id = Semilinear::identity(3);
        let v = vec![Fe(1), Fe(2), Fe(3)];
        assert_eq!(id.apply(&f, &v), v);
    }

    #[test]
    fn frobenius_on_gf4_has_order_two() {
        let f = Field::new(2, 2).unwrap();
        let s = Semilinear::frobenius(&f, 1, 1);
        let s2 = s.compose(&s, &f);
        assert!(s2.is_identity());
        assert_eq!(s.order(&f, 10), Some(2));
    }

    fn random_invertible(f: &Field, n: usize, seed: &[u16]) -> Vec<Fe> {
        // upper unitriangular times lower triangular with nonzero diagonal
        let q = f.order() as u16;
        let mut u = linalg::identity(n);
        let mut l = linalg::identity(n);
        let mut it = seed.iter().cycle();
        for i in 0..n {
            for j in 0..n {
                let x = Fe(*it.next().unwrap() % q);
                if j > i {
                    u[i * n + j] = x;
                } else if j < i {
                    l[i * n + j] = x;
                } else {
                    l[i * n + j] = Fe(1 + *it.next().unwrap() % (q - 1));
                }
            }
        }
        linalg::mat_mul(f, n, &l, &u)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn compose_with_inverse_is_identity(seed in proptest::collection::vec(0u16..1000, 40), k in 0u32..2) {
            let f = Field::new(2, 2).unwrap();
            let a = Semilinear::new(&f, 4, random_invertible(&f, 4, &seed), k).unwrap();
            prop_assert!(a.compose(&a.inverse(&f), &f).is_identity());
            prop_assert!(a.inverse(&f).compose(&a, &f).is_identity());
        }

        #[test]
        fn composition_is_associative_and_acts(
            s1 in proptest::collection::vec(0u16..1000, 30),
            s2 in proptest::collection::vec(0u16..1000, 30),
            s3 in proptest::collection::vec(0u16..1000, 30),
            ks in (0u32..4, 0u32..4, 0u32..4),
            v in proptest::collection::vec(0u16..16, 3),
        ) {
            let f = Field::new(2, 4).unwrap();
            let a = Semilinear::new(&f, 3, random_invertible(&f, 3, &s1), ks.0).unwrap();
            let b = Semilinear::new(&f, 3, random_invertible(&f, 3, &s2), ks.1).unwrap();
            let c = Semilinear::new(&f, 3, random_invertible(&f, 3, &s3), ks.2).unwrap();
            let left = a.compose(&b, &f).compose(&c, &f);
            let right = a.compose(&b.compose(&c, &f), &f);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.frob(), (ks.0 + ks.1 + ks.2) % 4);
            let v: Vec<Fe> = v.into_iter().map(Fe).collect();
            let stepwise = c.apply(&f, &b.apply(&f, &a.apply(&f, &v)));
            prop_assert_eq!(left.apply(&f, &v), stepwise);
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = Field::new(2, 1).unwrap();
        assert!(Semilinear::linear(&f, 2, vec![Fe(1), Fe(1), Fe(1), Fe(1)]).is_err());
    }
}

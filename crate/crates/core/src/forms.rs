//! Quadratic spaces (stored by upper-triangular Gram matrix so that
//! characteristic 2 needs no special casing) and hermitian spaces.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::field::{find_irreducible_mu, Fe, Field, FieldRef};
use crate::linalg;
use crate::semilinear::Semilinear;

/// Default limit on the number of vectors any exhaustive enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormType {
    Plus,
    Minus,
}

/// A standard basis `e_1, f_1, ..., e_{m-1}, f_{m-1}, d, d'` with
/// `Q(e_i) = Q(f_i) = 0`, `B(e_i, f_j) = delta_ij`, `Q(d) = 1`, `B(d, d') = 1`,
/// `Q(d') = zeta`, all other products zero. Rows are in this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub vectors: Vec<Vec<Fe>>,
    pub zeta: Fe,
}

impl StandardBasis {
    /// Number of hyperbolic pairs.
    pub fn pairs(&self) -> usize {
        (self.vectors.len() - 2) / 2
    }

    /// `e_i`, 1-based.
    pub fn e(&self, i: usize) -> &[Fe] {
        &self.vectors[2 * (i - 1)]
    }

    /// `f_i`, 1-based.
    pub fn f(&self, i: usize) -> &[Fe] {
        &self.vectors[2 * (i - 1) + 1]
    }

    pub fn d(&self) -> &[Fe] {
        &self.vectors[self.vectors.len() - 2]
    }

    pub fn d_prime(&self) -> &[Fe] {
        &self.vectors[self.vectors.len() - 1]
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 1..=self.pairs() {
            out.push(format!("e{i}"));
            out.push(format!("f{i}"));
        }
        out.push("d".into());
        out.push("d'".into());
        out
    }

    /// Change-of-basis matrix whose rows are the basis vectors.
    pub fn matrix(&self) -> Vec<Fe> {
        self.vectors.concat()
    }
}

/// Upper-triangular Gram matrix of the standard minus form in `m` half-dimension.
pub fn standard_minus_upper(m: usize, zeta: Fe) -> Vec<Fe> {
    let n = 2 * m;
    let mut u = vec![Fe::ZERO; n * n];
    for i in 0..m - 1 {
        u[(2 * i) * n + 2 * i + 1] = Fe::ONE;
    }
    let d = n - 2;
    u[d * n + d] = Fe::ONE;
    u[d * n + d + 1] = Fe::ONE;
    u[(d + 1) * n + d + 1] = zeta;
    u
}

#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    field: FieldRef,
    n: usize,
    upper: Vec<Fe>,
    polar: Vec<Fe>,
    terms: Vec<(usize, usize, Fe)>,
    basis: Option<StandardBasis>,
}

impl QuadraticSpace {
    /// A space from an arbitrary Gram matrix; entries below the diagonal are
    /// folded into the upper triangle. Rejects degenerate polar forms.
    pub fn from_gram(field: FieldRef, n: usize, gram: &[Fe]) -> Result<Self> {
        if gram.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: gram.len(),
            });
        }
        let f = &*field;
        let mut upper = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                upper[a * n + b] = f.add(upper[a * n + b], gram[i * n + j]);
            }
        }
        let mut polar = vec![Fe::ZERO; n * n];
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                polar[i * n + j] = f.add(upper[i * n + j], upper[j * n + i]);
            }
            for j in i..n {
                if !upper[i * n + j].is_zero() {
                    terms.push((i, j, upper[i * n + j]));
                }
            }
        }
        if linalg::rank(f, n, n, &polar) != n {
            return Err(Error::Degenerate);
        }
        Ok(Self {
            field,
            n,
            upper,
            polar,
            terms,
            basis: None,
        })
    }

    /// The standard `2m`-dimensional minus-type space over GF(q): `m - 1`
    /// hyperbolic pairs followed by the anisotropic plane `<d, d'>` with
    /// `Q(d') = zeta`, `zeta` the first element making `x^2 + x + zeta` irreducible.
    pub fn minus_standard(m: usize, q: u32) -> Result<Self> {
        Self::minus_standard_over(Field::of_order(q)?, m)
    }

    pub fn minus_standard_over(field: FieldRef, m: usize) -> Result<Self> {
        if m < 2 || 2 * m > 24 {
            return Err(Error::OutOfRange(format!("half-dimension m = {m}")));
        }
        let zeta = find_irreducible_mu(&field)?;
        let upper = standard_minus_upper(m, zeta);
        let mut s = Self::from_gram(field, 2 * m, &upper)?;
        let vectors = (0..2 * m).map(|i| linalg::unit(2 * m, i)).collect();
        s.basis = Some(StandardBasis { vectors, zeta });
        Ok(s)
    }

    /// The hyperbolic (plus-type) space with `m` hyperbolic pairs.
    pub fn plus_standard(m: usize, q: u32) -> Result<Self> {
        let field = Field::of_order(q)?;
        let n = 2 * m;
        let mut u = vec![Fe::ZERO; n * n];
        for i in 0..m {
            u[(2 * i) * n + 2 * i + 1] = Fe::ONE;
        }
        Self::from_gram(field, n, &u)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[Fe] {
        &self.upper
    }

    pub fn polar_matrix(&self) -> &[Fe] {
        &self.polar
    }

    pub fn codec(&self) -> Codec {
        Codec::new(self.field.order(), self.n)
    }

    pub fn standard_basis(&self) -> Option<&StandardBasis> {
        self.basis.as_ref()
    }

    pub fn with_standard_basis(mut self, b: StandardBasis) -> Result<Self> {
        self.check_standard_basis(&b)?;
        self.basis = Some(b);
        Ok(self)
    }

    /// Confirms that `b` has exactly the standard Gram profile.
    pub fn check_standard_basis(&self, b: &StandardBasis) -> Result<()> {
        if b.vectors.len() != self.n || !self.n.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: b.vectors.len(),
            });
        }
        let want = standard_minus_upper(self.n / 2, b.zeta);
        for i in 0..self.n {
            if self.q(&b.vectors[i]) != want[i * self.n + i] {
                return Err(Error::Precondition(format!("Q of basis vector {i}")));
            }
            for j in i + 1..self.n {
                if self.beta(&b.vectors[i], &b.vectors[j]) != want[i * self.n + j] {
                    return Err(Error::Precondition(format!("B of basis vectors {i},{j}")));
                }
            }
        }
        Ok(())
    }

    /// `Q(v)`.
    #[inline]
    pub fn q(&self, v: &[Fe]) -> Fe {
        let f = &*self.field;
        let mut acc = Fe::ZERO;
        for &(i, j, c) in &self.terms {
            let (a, b) = (v[i], v[j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = f.add(acc, f.mul(c, f.mul(a, b)));
        }
        acc
    }

    /// The polar form `B(u, v) = Q(u + v) - Q(u) - Q(v)`.
    pub fn beta(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &*self.field;
        let mut acc = Fe::ZERO;
        for (&ui, row) in u.iter().zip(self.polar.chunks(self.n)) {
            if !ui.is_zero() {
                acc = f.add(acc, f.mul(ui, linalg::dot(f, row, v)));
            }
        }
        acc
    }

    pub fn check_dim(&self, v: &[Fe]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The reflection `v -> v - B(v, w)/Q(w) w`.
    pub fn reflection(&self, w: &[Fe]) -> Result<Semilinear> {
        self.check_dim(w)?;
        let f = &*self.field;
        let qw = self.q(w);
        if qw.is_zero() {
            return Err(Error::Precondition("reflection needs Q(w) != 0".into()));
        }
        let inv = f.inv(qw)?;
        let mut mat = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            let ei = linalg::unit(self.n, i);
            let c = f.mul(self.beta(&ei, w), inv);
            let row = linalg::vec_sub(f, &ei, &linalg::vec_scale(f, c, w));
            mat.extend(row);
        }
        Semilinear::linear(f, self.n, mat)
    }

    /// The Eichler (Siegel) transformation
    /// `x -> x + B(x,v) u - B(x,u) v - Q(v) B(x,u) u` for singular `u` and `v` in `u^perp`.
    pub fn eichler(&self, u: &[Fe], v: &[Fe]) -> Result<Semilinear> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let f = &*self.field;
        if u.iter().all(|x| x.is_zero()) || !self.q(u).is_zero() || !self.beta(u, v).is_zero() {
            return Err(Error::Precondition(
                "eichler needs u singular nonzero and v in u^perp".into(),
            ));
        }
        let qv = self.q(v);
        let mut mat = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            let x = linalg::unit(self.n, i);
            let bxv = self.beta(&x, v);
            let bxu = self.beta(&x, u);
            let cu = f.sub(bxv, f.mul(qv, bxu));
            let mut row = x;
            for k in 0..self.n {
                row[k] = f.add(row[k], f.sub(f.mul(cu, u[k]), f.mul(bxu, v[k])));
            }
            mat.extend(row);
        }
        Semilinear::linear(f, self.n, mat)
    }

    /// `Q(g v) = Q(v)^(p^k)` for all `v`, where `k` is the Frobenius exponent of `g`.
    pub fn is_semi_isometry(&self, g: &Semilinear) -> bool {
        if g.dim() != self.n {
            return false;
        }
        let f = &*self.field;
        let k = g.frob();
        let rows: Vec<&[Fe]> = (0..self.n)
            .map(|i| &g.matrix()[i * self.n..(i + 1) * self.n])
            .collect();
        for i in 0..self.n {
            if self.q(rows[i]) != f.frob(self.upper[i * self.n + i], k) {
                return false;
            }
            for j in i + 1..self.n {
                if self.beta(rows[i], rows[j]) != f.frob(self.polar[i * self.n + j], k) {
                    return false;
                }
            }
        }
        true
    }

    /// Linear and preserves `Q`.
    pub fn is_isometry(&self, g: &Semilinear) -> bool {
        g.is_linear() && self.is_semi_isometry(g)
    }

    /// 0 iff the linear isometry `g` lies in Omega. Even q: the Dickson
    /// invariant `rank(g - 1) mod 2`. Odd q: determinant and the spinor norm,
    /// read off as the discriminant of the Wall form on the image of `1 - g`.
    pub fn dickson_or_spinor(&self, g: &Semilinear) -> Result<u8> {
        if !self.is_isometry(g) {
            return Err(Error::NotAnIsometry);
        }
        let f = &*self.field;
        let n = self.n;
        let mut d = g.matrix().to_vec();
        for i in 0..n {
            d[i * n + i] = f.sub(d[i * n + i], Fe::ONE);
        }
        if f.p() == 2 {
            return Ok((linalg::rank(f, n, n, &d) % 2) as u8);
        }
        let det = g.det(f);
        if det != Fe::ONE {
            return Ok(1);
        }
        // rows of (1 - g) are u_i(1 - g); keep an independent subset
        let mut picked: Vec<(usize, Vec<Fe>)> = Vec::new();
        let mut stacked: Vec<Fe> = Vec::new();
        for i in 0..n {
            let w: Vec<Fe> = d[i * n..(i + 1) * n].iter().map(|&x| f.neg(x)).collect();
            let mut trial = stacked.clone();
            trial.extend_from_slice(&w);
            if linalg::rank(f, picked.len() + 1, n, &trial) == picked.len() + 1 {
                stacked = trial;
                picked.push((i, w));
            }
        }
        let k = picked.len();
        let mut gram = vec![Fe::ZERO; k * k];
        for (a, (i, _)) in picked.iter().enumerate() {
            let u = linalg::unit(n, *i);
            for (b, (_, w)) in picked.iter().enumerate() {
                gram[a * k + b] = self.beta(&u, w);
            }
        }
        let disc = if k == 0 {
            Fe::ONE
        } else {
            linalg::det(f, k, &gram)
        };
        if disc.is_zero() {
            return Err(Error::CheckFailed("Wall form is degenerate".into()));
        }
        Ok(if f.is_square(disc) { 0 } else { 1 })
    }

    /// All nonzero `v` with `Q(v) = c`, as sorted codes.
    pub fn enumerate_value_set(&self, c: Fe, cap: u64) -> Result<Vec<u64>> {
        let codec = self.codec();
        let size = codec
            .size()
            .filter(|&s| s <= cap)
            .ok_or(Error::CapExceeded { cap: cap as usize })?;
        let mut buf = vec![Fe::ZERO; self.n];
        let mut out = Vec::new();
        for code in 1..size {
            codec.decode(code, &mut buf);
            if self.q(&buf) == c {
                out.push(code);
            }
        }
        Ok(out)
    }

    pub fn count_value(&self, c: Fe, cap: u64) -> Result<u64> {
        let codec = self.codec();
        let size = codec
            .size()
            .filter(|&s| s <= cap)
            .ok_or(Error::CapExceeded { cap: cap as usize })?;
        let mut buf = vec![Fe::ZERO; self.n];
        let mut count = 0;
        for code in 1..size {
            codec.decode(code, &mut buf);
            if self.q(&buf) == c {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Plus or minus type, by counting nonzero singular vectors.
    pub fn classify_type(&self, cap: u64) -> Result<FormType> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::Precondition(
                "type is defined for even dimension".into(),
            ));
        }
        let count = self.count_value(Fe::ZERO, cap)?;
        let q = self.field.order() as u64;
        let m = (self.n / 2) as u32;
        let minus = (q.pow(m - 1) - 1) * (q.pow(m) + 1);
        let plus = (q.pow(m) - 1) * (q.pow(m - 1) + 1);
        if count == minus {
            Ok(FormType::Minus)
        } else if count == plus {
            Ok(FormType::Plus)
        } else {
            Err(Error::UnknownType { count })
        }
    }

    /// Basis of `{x : B(x, v) = 0 for all v in vs}`.
    pub fn perp(&self, vs: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let f = &*self.field;
        if vs.is_empty() {
            return (0..self.n).map(|i| linalg::unit(self.n, i)).collect();
        }
        // columns: polar * v^T for each v
        let k = vs.len();
        let mut m = vec![Fe::ZERO; self.n * k];
        for (c, v) in vs.iter().enumerate() {
            for i in 0..self.n {
                let row = &self.polar[i * self.n..(i + 1) * self.n];
                m[i * k + c] = linalg::dot(f, row, v);
            }
        }
        linalg::left_kernel(f, self.n, k, &m)
    }

    /// Conjugates `g` (acting in these coordinates) into coordinates relative
    /// to the rows of `basis`: returns `P g P^-1` where `P` has the basis as rows.
    pub fn to_basis_coords(&self, basis: &[Vec<Fe>], g: &Semilinear) -> Result<Semilinear> {
        change_basis(&self.field, basis, g)
    }
}

/// For `P` with rows `basis` and `g` acting in ambient coordinates, returns the
/// element acting on coordinates `x` (meaning the vector `x P`) by
/// `x -> (g(x P)) P^-1`, i.e. `(sigma^k(P) A P^-1, k)`.
pub fn change_basis(field: &Field, basis: &[Vec<Fe>], g: &Semilinear) -> Result<Semilinear> {
    let n = g.dim();
    let p: Vec<Fe> = basis.concat();
    if p.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: p.len(),
        });
    }
    let pinv = linalg::mat_inv(field, n, &p)?;
    let sp = linalg::frob_entries(field, &p, g.frob());
    let mat = linalg::mat_mul(field, n, &linalg::mat_mul(field, n, &sp, g.matrix()), &pinv);
    Semilinear::new(field, n, mat, g.frob())
}

/// Inverse of [`change_basis`]: takes an element in basis coordinates back to
/// ambient coordinates.
pub fn from_basis_coords(field: &Field, basis: &[Vec<Fe>], g: &Semilinear) -> Result<Semilinear> {
    let n = g.dim();
    let p: Vec<Fe> = basis.concat();
    let pinv = linalg::mat_inv(field, n, &p)?;
    let spinv = linalg::frob_entries(field, &pinv, g.frob());
    let mat = linalg::mat_mul(field, n, &linalg::mat_mul(field, n, &spinv, g.matrix()), &p);
    Semilinear::new(field, n, mat, g.frob())
}

/// Nondegenerate hermitian space over GF(q^2), `B(u, v) = u H sigma^f(v)^T`.
#[derive(Clone, Debug)]
pub struct HermitianSpace {
    field: FieldRef,
    m: usize,
    gram: Vec<Fe>,
}

impl HermitianSpace {
    pub fn from_gram(field: FieldRef, m: usize, gram: Vec<Fe>) -> Result<Self> {
        let fdeg = field.sub_degree().ok_or(Error::MissingSubfield)?;
        if field.degree() != 2 * fdeg {
            return Err(Error::MissingSubfield);
        }
        if gram.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: gram.len(),
            });
        }
        for i in 0..m {
            for j in 0..m {
                if gram[j * m + i] != field.frob(gram[i * m + j], fdeg) {
                    return Err(Error::Precondition("Gram matrix is not hermitian".into()));
                }
            }
        }
        if linalg::det(&field, m, &gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Self { field, m, gram })
    }

    /// Standard basis `E_1, F_1, ..., E_l, F_l` followed by `D` when `m` is odd,
    /// with `B(E_i, F_j) = delta_ij` and `B(D, D) = 1`. Built over GF(q^2).
    pub fn standard(m: usize, q: u32) -> Result<Self> {
        let (p, f) = crate::field::prime_power(q).ok_or(Error::FieldOutOfRange { p: q, e: 2 })?;
        Self::standard_over(Field::quadratic_over(p, f)?, m)
    }

    pub fn standard_over(field: FieldRef, m: usize) -> Result<Self> {
        if !(2..=12).contains(&m) {
            return Err(Error::OutOfRange(format!("hermitian dimension {m}")));
        }
        let mut gram = vec![Fe::ZERO; m * m];
        for i in 0..m / 2 {
            gram[(2 * i) * m + 2 * i + 1] = Fe::ONE;
            gram[(2 * i + 1) * m + 2 * i] = Fe::ONE;
        }
        if m % 2 == 1 {
            gram[(m - 1) * m + m - 1] = Fe::ONE;
        }
        Self::from_gram(field, m, gram)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn gram(&self) -> &[Fe] {
        &self.gram
    }

    /// Degree of GF(q) over the prime field.
    pub fn sub_degree(&self) -> u32 {
        self.field.sub_degree().expect("checked at construction")
    }

    /// Number of hyperbolic pairs in the standard basis.
    pub fn pairs(&self) -> usize {
        self.m / 2
    }

    pub fn has_anisotropic_vector(&self) -> bool {
        self.m % 2 == 1
    }

    pub fn eval(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &*self.field;
        let fd = self.sub_degree();
        let vbar: Vec<Fe> = v.iter().map(|&x| f.frob(x, fd)).collect();
        let mut acc = Fe::ZERO;
        for (&ui, row) in u.iter().zip(self.gram.chunks(self.m)) {
            if !ui.is_zero() {
                acc = f.add(acc, f.mul(ui, linalg::dot(f, row, &vbar)));
            }
        }
        acc
    }

    /// `B(g u, g v) = B(u, v)^(p^k)` on all basis pairs.
    pub fn is_semi_unitary(&self, g: &Semilinear) -> bool {
        if g.dim() != self.m {
            return false;
        }
        let f = &*self.field;
        let m = self.m;
        let rows: Vec<&[Fe]> = (0..m).map(|i| &g.matrix()[i * m..(i + 1) * m]).collect();
        (0..m).all(|i| {
            (0..m).all(|j| self.eval(rows[i], rows[j]) == f.frob(self.gram[i * m + j], g.frob()))
        })
    }

    /// The unitary transvection `x -> x + c B(x, u) u`; needs `B(u, u) = 0`
    /// and `c + c^q = 0`.
    pub fn transvection(&self, u: &[Fe], c: Fe) -> Result<Semilinear> {
        let f = &*self.field;
        if !self.eval(u, u).is_zero() || !f.rel_trace(c)?.is_zero() {
            return Err(Error::Precondition(
                "transvection needs isotropic u and trace-zero c".into(),
            ));
        }
        let m = self.m;
        let mut mat = Vec::with_capacity(m * m);
        for i in 0..m {
            let x = linalg::unit(m, i);
            let s = f.mul(c, self.eval(&x, u));
            let row: Vec<Fe> = x
                .iter()
                .zip(u)
                .map(|(&a, &b)| f.add(a, f.mul(s, b)))
                .collect();
            mat.extend(row);
        }
        Semilinear::linear(f, m, mat)
    }

    /// The named standard basis vector `E_i` (1-based).
    pub fn e(&self, i: usize) -> Vec<Fe> {
        linalg::unit(self.m, 2 * (i - 1))
    }

    pub fn f(&self, i: usize) -> Vec<Fe> {
        linalg::unit(self.m, 2 * (i - 1) + 1)
    }

    /// `D`, present for odd dimension.
    pub fn d(&self) -> Option<Vec<Fe>> {
        self.has_anisotropic_vector()
            .then(|| linalg::unit(self.m, self.m - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[u16]) -> Vec<Fe> {
        xs.iter().map(|&x| Fe(x)).collect()
    }

    #[test]
    fn singular_counts() {
        let s = QuadraticSpace::minus_standard(4, 2).unwrap();
        assert_eq!(s.count_value(Fe::ZERO, DEFAULT_ENUM_CAP).unwrap(), 119);
        assert_eq!(s.count_value(Fe::ONE, DEFAULT_ENUM_CAP).unwrap(), 136);
        let s = QuadraticSpace::minus_standard(5, 2).unwrap();
        assert_eq!(
            s.enumerate_value_set(Fe::ZERO, DEFAULT_ENUM_CAP)
                .unwrap()
                .len(),
            495
        );
        assert_eq!(
            s.enumerate_value_set(Fe::ONE, DEFAULT_ENUM_CAP)
                .unwrap()
                .len(),
            528
        );
        assert_eq!(s.classify_type(DEFAULT_ENUM_CAP).unwrap(), FormType::Minus);
        let h = QuadraticSpace::plus_standard(4, 2).unwrap();
        assert_eq!(h.count_value(Fe::ZERO, DEFAULT_ENUM_CAP).unwrap(), 135);
        assert_eq!(h.classify_type(DEFAULT_ENUM_CAP).unwrap(), FormType::Plus);
    }

    #[test]
    fn hyperbolic_pair_values() {
        let s = QuadraticSpace::minus_standard(5, 2).unwrap();
        let b = s.standard_basis().unwrap();
        assert_eq!(s.q(b.e(1)), Fe::ZERO);
        assert_eq!(s.q(b.f(1)), Fe::ZERO);
        assert_eq!(s.beta(b.e(1), b.f(1)), Fe::ONE);
        // Q(d') = zeta with x^2 + x + zeta irreducible
        let zeta = s.q(b.d_prime());
        let f = s.field();
        assert!(f
            .elements()
            .all(|x| !f.add(f.add(f.mul(x, x), x), zeta).is_zero()));
        s.check_standard_basis(b).unwrap();
    }

    #[test]
    fn minus_type_everywhere_at_desk_scale() {
        for (m, q) in [
            (2, 2),
            (3, 2),
            (4, 2),
            (5, 2),
            (6, 2),
            (2, 3),
            (3, 3),
            (4, 3),
            (2, 4),
            (3, 4),
            (4, 4),
            (2, 9),
        ] {
            let s = QuadraticSpace::minus_standard(m, q).unwrap();
            assert_eq!(
                s.classify_type(DEFAULT_ENUM_CAP).unwrap(),
                FormType::Minus,
                "m={m} q={q}"
            );
        }
    }

    proptest! {
        #[test]
        fn polar_identity_gf3(u in proptest::collection::vec(0u16..3, 8), w in proptest::collection::vec(0u16..3, 8)) {
            let s = QuadraticSpace::minus_standard(4, 3).unwrap();
            let f = s.field().clone();
            let (u, w) = (v(&u), v(&w));
            let lhs = s.beta(&u, &w);
            let rhs = f.sub(f.sub(s.q(&linalg::vec_add(&f, &u, &w)), s.q(&u)), s.q(&w));
            prop_assert_eq!(lhs, rhs);
            // B(v, v) = 2 Q(v)
            prop_assert_eq!(s.beta(&u, &u), f.add(s.q(&u), s.q(&u)));
        }
    }

    #[test]
    fn reflection_in_char_two() {
        let s = QuadraticSpace::minus_standard(4, 2).unwrap();
        let b = s.standard_basis().unwrap().clone();
        let f = s.field().clone();
        let w = linalg::vec_add(&f, b.e(1), b.f(1));
        let r = s.reflection(&w).unwrap();
        assert!(s.is_isometry(&r));
        assert!(r.compose(&r, &f).is_identity());
        assert_eq!(r.apply(&f, b.e(1)), b.f(1).to_vec());
        assert_eq!(r.apply(&f, b.f(1)), b.e(1).to_vec());
        assert_eq!(s.dickson_or_spinor(&r).unwrap(), 1);
        assert!(s.reflection(b.e(1)).is_err());
    }

    #[test]
    fn reflection_odd_q_fixes_perp() {
        let s = QuadraticSpace::minus_standard(4, 3).unwrap();
        let f = s.field().clone();
        let w = v(&[1, 1, 0, 0, 0, 0, 1, 0]);
        let r = s.reflection(&w).unwrap();
        assert!(s.is_isometry(&r));
        assert_eq!(r.apply(&f, &w), linalg::vec_scale(&f, f.neg(Fe::ONE), &w));
        for x in s.perp(core::slice::from_ref(&w)) {
            assert_eq!(r.apply(&f, &x), x);
        }
        assert_eq!(s.dickson_or_spinor(&r).unwrap(), 1);
        assert_eq!(r.det(&f), f.neg(Fe::ONE));
    }

    #[test]
    fn eichler_basics() {
        let s = QuadraticSpace::minus_standard(4, 2).unwrap();
        let f = s.field().clone();
        let b = s.standard_basis().unwrap().clone();
        let zero = vec![Fe::ZERO; 8];
        assert!(s.eichler(b.e(1), &zero).unwrap().is_identity());
        assert!(s.eichler(b.e(1), b.e(1)).unwrap().is_identity());
        let g = s.eichler(b.e(1), b.d()).unwrap();
        assert!(s.is_isometry(&g));
        assert_eq!(s.dickson_or_spinor(&g).unwrap(), 0);
        assert!(s.eichler(b.e(1), b.f(1)).is_err());
        assert!(s.eichler(b.d(), b.e(1)).is_err());
        let _ = f;
    }

    #[test]
    fn hermitian_standard_values() {
        let h = HermitianSpace::standard(5, 2).unwrap();
        let d = h.d().unwrap();
        assert_eq!(h.eval(&d, &d), Fe::ONE);
        assert_eq!(h.eval(&h.e(1), &h.f(1)), Fe::ONE);
        assert_eq!(h.eval(&h.e(1), &h.e(1)), Fe::ZERO);
        assert_eq!(h.eval(&h.e(1), &d), Fe::ZERO);
        let f = h.field();
        let m = h.dim();
        for i in 0..m {
            for j in 0..m {
                assert_eq!(h.gram()[j * m + i], f.frob(h.gram()[i * m + j], 1));
            }
        }
    }
}

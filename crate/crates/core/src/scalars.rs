//! Restriction of scalars from GF(q^2) to GF(q): an m-dimensional space over
//! the extension is read as a 2m-dimensional space over the subfield, using the
//! subfield basis `{1, xi}` where `xi` is the canonical generator of GF(q^2).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{find_irreducible_mu, Fe, Field, FieldRef};
use crate::forms::{HermitianSpace, QuadraticSpace, StandardBasis};
use crate::linalg;
use crate::semilinear::Semilinear;

#[derive(Clone, Debug)]
pub struct ScalarBridge {
    ext: FieldRef,
    sub: FieldRef,
    embed: Vec<Fe>,
    split: Vec<(Fe, Fe)>,
    xi: Fe,
    m: usize,
}

impl ScalarBridge {
    /// Bridge for `m`-dimensional spaces over `ext`, which must carry a
    /// distinguished subfield of half its degree.
    pub fn new(ext: FieldRef, m: usize) -> Result<Self> {
        let f = ext.sub_degree().ok_or(Error::MissingSubfield)?;
        if ext.degree() != 2 * f {
            return Err(Error::MissingSubfield);
        }
        // an even-degree subfield keeps its own quadratic subfield so bridges can be stacked
        let sub = if f % 2 == 0 {
            Field::quadratic_over(ext.p(), f / 2)?
        } else {
            Field::new(ext.p(), f)?
        };
        let embed = ext.embedding_from(&sub)?;
        let xi = ext.generator();
        let mut split = vec![(Fe::ZERO, Fe::ZERO); ext.order() as usize];
        let mut seen = vec![false; ext.order() as usize];
        for a in sub.elements() {
            for b in sub.elements() {
                let c = ext.add(embed[a.0 as usize], ext.mul(embed[b.0 as usize], xi));
                if seen[c.0 as usize] {
                    return Err(Error::CheckFailed("{1, xi} is not a basis".into()));
                }
                seen[c.0 as usize] = true;
                split[c.0 as usize] = (a, b);
            }
        }
        Ok(Self {
            ext,
            sub,
            embed,
            split,
            xi,
            m,
        })
    }

    pub fn ext(&self) -> &FieldRef {
        &self.ext
    }

    pub fn sub(&self) -> &FieldRef {
        &self.sub
    }

    pub fn xi(&self) -> Fe {
        self.xi
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Image of a subfield element in the extension.
    pub fn embed(&self, a: Fe) -> Fe {
        self.embed[a.0 as usize]
    }

    /// `c = a + b xi`, returns `(a, b)`.
    pub fn split(&self, c: Fe) -> (Fe, Fe) {
        self.split[c.0 as usize]
    }

    /// An extension element known to lie in the subfield, as a subfield element.
    pub fn to_sub(&self, c: Fe) -> Result<Fe> {
        let (a, b) = self.split(c);
        if !b.is_zero() {
            return Err(Error::CheckFailed(format!("{c:?} is not in the subfield")));
        }
        Ok(a)
    }

    pub fn blowup_vector(&self, v: &[Fe]) -> Vec<Fe> {
        let mut out = Vec::with_capacity(2 * v.len());
        for &c in v {
            let (a, b) = self.split(c);
            out.push(a);
            out.push(b);
        }
        out
    }

    pub fn blowdown_vector(&self, w: &[Fe]) -> Vec<Fe> {
        w.chunks(2)
            .map(|ab| {
                self.ext
                    .add(self.embed(ab[0]), self.ext.mul(self.embed(ab[1]), self.xi))
            })
            .collect()
    }

    /// The unique GF(q)-semilinear element `B` with
    /// `blowup(g v) = B(blowup v)`; Frobenius exponents carry over mod `f`.
    pub fn blowup_element(&self, g: &Semilinear) -> Result<Semilinear> {
        if g.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: g.dim(),
            });
        }
        let n = 2 * self.m;
        let mut mat = Vec::with_capacity(n * n);
        for r in 0..n {
            let u = linalg::unit(n, r);
            let img = g.apply(&self.ext, &self.blowdown_vector(&u));
            mat.extend(self.blowup_vector(&img));
        }
        Semilinear::new(&self.sub, n, mat, g.frob() % self.sub.degree())
    }

    /// Gram data of the GF(q)-form `w -> value(blowdown(w))`, where `value`
    /// returns an extension element that must lie in the subfield.
    fn restricted_form<F>(&self, value: F) -> Result<QuadraticSpace>
    where
        F: Fn(&[Fe]) -> Fe,
    {
        let n = 2 * self.m;
        let sub = &*self.sub;
        let qv = |w: &[Fe]| -> Result<Fe> { self.to_sub(value(&self.blowdown_vector(w))) };
        let mut upper = vec![Fe::ZERO; n * n];
        let units: Vec<Vec<Fe>> = (0..n).map(|r| linalg::unit(n, r)).collect();
        let diag: Vec<Fe> = units.iter().map(|u| qv(u)).collect::<Result<_>>()?;
        for r in 0..n {
            upper[r * n + r] = diag[r];
            for s in r + 1..n {
                let both = qv(&linalg::vec_add(sub, &units[r], &units[s]))?;
                upper[r * n + s] = sub.sub(sub.sub(both, diag[r]), diag[s]);
            }
        }
        QuadraticSpace::from_gram(self.sub.clone(), n, &upper)
    }

    /// The GF(q)-quadratic form `Q(w) = B#(v, v)` for `w = blowup(v)`.
    pub fn unitary_restriction(&self, hs: &HermitianSpace) -> Result<QuadraticSpace> {
        if hs.dim() != self.m || **hs.field() != *self.ext {
            return Err(Error::FieldMismatch);
        }
        self.restricted_form(|v| hs.eval(v, v))
    }

    /// The GF(q)-quadratic form `Q(w) = Tr(Q#(v))` for `w = blowup(v)`.
    pub fn trace_restriction(&self, ext_space: &QuadraticSpace) -> Result<QuadraticSpace> {
        if ext_space.dim() != self.m || **ext_space.field() != *self.ext {
            return Err(Error::FieldMismatch);
        }
        let tr = |v: &[Fe]| {
            self.ext
                .rel_trace(ext_space.q(v))
                .expect("bridge field has a subfield")
        };
        self.restricted_form(tr)
    }

    /// `(e_1, f_1) = (blowup(lambda E_1), blowup(F_1))`, checking that it is a
    /// hyperbolic pair for `space` and that `Q(e_1 + f_1) = 1`.
    pub fn transported_pair(
        &self,
        hs: &HermitianSpace,
        space: &QuadraticSpace,
        lambda: Fe,
    ) -> Result<(Vec<Fe>, Vec<Fe>)> {
        if self.ext.rel_trace(lambda)? != Fe::ONE {
            return Err(Error::Precondition("lambda + lambda^q must be 1".into()));
        }
        let e = self.blowup_vector(&linalg::vec_scale(&self.ext, lambda, &hs.e(1)));
        let f = self.blowup_vector(&hs.f(1));
        let sub = &*self.sub;
        if !space.q(&e).is_zero() {
            return Err(Error::CheckFailed("Q(lambda E_1) != 0".into()));
        }
        if !space.q(&f).is_zero() {
            return Err(Error::CheckFailed("Q(F_1) != 0".into()));
        }
        if space.beta(&e, &f) != Fe::ONE {
            return Err(Error::CheckFailed("B(lambda E_1, F_1) != 1".into()));
        }
        if space.q(&linalg::vec_add(sub, &e, &f)) != Fe::ONE {
            return Err(Error::CheckFailed("Q(lambda E_1 + F_1) != 1".into()));
        }
        Ok((e, f))
    }
}

/// Extends `partial` (empty, a singular vector, or a hyperbolic pair) to a
/// full standard minus-type basis by greedy hyperbolic-pair extraction.
pub fn complete_standard_basis(
    space: &QuadraticSpace,
    partial: &[Vec<Fe>],
    cap: u64,
) -> Result<StandardBasis> {
    let f = space.field().clone();
    let n = space.dim();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::Precondition(
            "standard basis needs even dimension >= 4".into(),
        ));
    }
    for v in partial {
        space.check_dim(v)?;
    }
    let mut chosen: Vec<Vec<Fe>> = Vec::new();
    match partial.len() {
        0 => {}
        1 | 2 => {
            let e = partial[0].clone();
            if e.iter().all(|x| x.is_zero()) || !space.q(&e).is_zero() {
                return Err(Error::Precondition(
                    "e_1 must be singular and nonzero".into(),
                ));
            }
            let fv = match partial.get(1) {
                Some(fv) => {
                    if !space.q(fv).is_zero() || space.beta(&e, fv) != Fe::ONE {
                        return Err(Error::Precondition(
                            "(e_1, f_1) is not a hyperbolic pair".into(),
                        ));
                    }
                    fv.clone()
                }
                None => partner(space, &e, &space.perp(&[]))?,
            };
            chosen.push(e);
            chosen.push(fv);
        }
        _ => {
            return Err(Error::Precondition(
                "at most one hyperbolic pair may be prescribed".into(),
            ))
        }
    }
    loop {
        let w = space.perp(&chosen);
        if w.len() != n - chosen.len() {
            return Err(Error::Degenerate);
        }
        if w.len() == 2 {
            let zeta = find_irreducible_mu(&f)?;
            let (d, dp) = anisotropic_pair(space, &w, zeta)?;
            chosen.push(d);
            chosen.push(dp);
            let basis = StandardBasis {
                vectors: chosen,
                zeta,
            };
            space.check_standard_basis(&basis)?;
            return Ok(basis);
        }
        let e = first_in_span(space, &w, cap, |v| space.q(v).is_zero())?.ok_or(
            Error::Precondition("complement has no singular vector; not minus type".into()),
        )?;
        let fv = partner(space, &e, &w)?;
        chosen.push(e);
        chosen.push(fv);
    }
}

/// Singular `f` in `span(w)` with `B(e, f) = 1`.
fn partner(space: &QuadraticSpace, e: &[Fe], w: &[Vec<Fe>]) -> Result<Vec<Fe>> {
    let f = space.field();
    let x = w
        .iter()
        .find(|x| !space.beta(e, x).is_zero())
        .ok_or(Error::Degenerate)?;
    let x = linalg::vec_scale(f, f.inv(space.beta(e, x))?, x);
    let fv = linalg::vec_sub(f, &x, &linalg::vec_scale(f, space.q(&x), e));
    debug_assert!(space.q(&fv).is_zero());
    Ok(fv)
}

fn anisotropic_pair(space: &QuadraticSpace, w: &[Vec<Fe>], zeta: Fe) -> Result<(Vec<Fe>, Vec<Fe>)> {
    let f = space.field();
    let cap = (f.order() as u64).pow(2);
    if first_in_span(space, w, cap, |v| space.q(v).is_zero())?.is_some() {
        return Err(Error::Precondition(
            "residual plane is hyperbolic; form is not minus type".into(),
        ));
    }
    let d = first_in_span(space, w, cap, |v| space.q(v) == Fe::ONE)?
        .ok_or(Error::NoSolution("Q(d) = 1"))?;
    let dp = first_in_span(space, w, cap, |v| {
        space.beta(&d, v) == Fe::ONE && space.q(v) == zeta
    })?
    .ok_or(Error::NoSolution("d' with B(d,d') = 1, Q(d') = zeta"))?;
    Ok((d, dp))
}

/// First nonzero vector of `span(w)` (coefficients in enumeration order) satisfying `pred`.
fn first_in_span<P>(
    space: &QuadraticSpace,
    w: &[Vec<Fe>],
    cap: u64,
    pred: P,
) -> Result<Option<Vec<Fe>>>
where
    P: Fn(&[Fe]) -> bool,
{
    let f = space.field();
    let codec = crate::codec::Codec::new(f.order(), w.len());
    let size = codec
        .size()
        .filter(|&s| s <= cap)
        .ok_or(Error::CapExceeded { cap: cap as usize })?;
    let mut coeffs = vec![Fe::ZERO; w.len()];
    let n = space.dim();
    for code in 1..size {
        codec.decode(code, &mut coeffs);
        let mut v = vec![Fe::ZERO; n];
        for (c, row) in coeffs.iter().zip(w) {
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                v[k] = f.add(v[k], f.mul(*c, row[k]));
            }
        }
        if pred(&v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::solve_lambda;
    use crate::forms::{FormType, DEFAULT_ENUM_CAP};
    use proptest::prelude::*;

    #[test]
    fn blowup_of_omega() {
        let ext = Field::quadratic_over(2, 1).unwrap();
        let b = ScalarBridge::new(ext.clone(), 1).unwrap();
        assert_eq!(b.blowup_vector(&[ext.generator()]), vec![Fe::ZERO, Fe::ONE]);
        assert_eq!(b.blowup_vector(&[Fe::ZERO]), vec![Fe::ZERO, Fe::ZERO]);
    }

    proptest! {
        #[test]
        fn blowup_round_trip(v in proptest::collection::vec(0u16..9, 4)) {
            let ext = Field::quadratic_over(3, 1).unwrap();
            let b = ScalarBridge::new(ext, 4).unwrap();
            let v: Vec<Fe> = v.into_iter().map(Fe).collect();
            prop_assert_eq!(b.blowdown_vector(&b.blowup_vector(&v)), v);
        }
    }

    #[test]
    fn scalar_multiplication_blows_up_to_blocks() {
        let ext = Field::quadratic_over(2, 2).unwrap();
        let b = ScalarBridge::new(ext.clone(), 3).unwrap();
        let xi = b.xi();
        let mut mat = vec![Fe::ZERO; 9];
        for i in 0..3 {
            mat[i * 3 + i] = xi;
        }
        let g = Semilinear::linear(&ext, 3, mat).unwrap();
        let bg = b.blowup_element(&g).unwrap();
        let sub = b.sub().clone();
        for i in 0..3 {
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(bg.entry(2 * i + r, 2 * i + c), bg.entry(r, c));
                }
            }
        }
        assert_eq!(
            bg.order(&sub, 100),
            Some(ext.mult_order(xi).unwrap() as u64)
        );
    }

    #[test]
    fn unitary_restriction_is_minus_type() {
        let hs = HermitianSpace::standard(5, 2).unwrap();
        let b = ScalarBridge::new(hs.field().clone(), 5).unwrap();
        let v = b.unitary_restriction(&hs).unwrap();
        assert_eq!(v.classify_type(DEFAULT_ENUM_CAP).unwrap(), FormType::Minus);
        assert_eq!(v.count_value(Fe::ZERO, DEFAULT_ENUM_CAP).unwrap(), 495);
        let d = b.blowup_vector(&hs.d().unwrap());
        assert_eq!(v.q(&d), Fe::ONE);
        // Q(blowup v) = B#(v, v) for every v
        let ext = hs.field().clone();
        let codec = crate::codec::Codec::new(4, 5);
        let mut buf = vec![Fe::ZERO; 5];
        for code in 0..1024u64 {
            codec.decode(code, &mut buf);
            assert_eq!(
                ext.add(b.embed(v.q(&b.blowup_vector(&buf))), Fe::ZERO),
                hs.eval(&buf, &buf)
            );
        }
    }

    #[test]
    fn transported_pair_and_completion() {
        let hs = HermitianSpace::standard(5, 2).unwrap();
        let b = ScalarBridge::new(hs.field().clone(), 5).unwrap();
        let v = b.unitary_restriction(&hs).unwrap();
        let lambda = solve_lambda(hs.field()).unwrap();
        let (e, f) = b.transported_pair(&hs, &v, lambda).unwrap();
        // lambda = omega, so e1 = blowup(omega E_1) = (0, 1, 0, ...)
        assert_eq!(&e[..2], &[Fe::ZERO, Fe::ONE]);
        let basis = complete_standard_basis(&v, &[e.clone(), f.clone()], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(basis.e(1), &e[..]);
        assert_eq!(basis.f(1), &f[..]);
        let std = QuadraticSpace::minus_standard(5, 2).unwrap();
        assert_eq!(basis.zeta, std.standard_basis().unwrap().zeta);
    }

    #[test]
    fn completion_from_any_singular_vector() {
        let v = QuadraticSpace::minus_standard(5, 2).unwrap();
        let singular = v.enumerate_value_set(Fe::ZERO, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(singular.len(), 495);
        let codec = v.codec();
        for code in singular {
            let e = codec.decode_vec(code);
            let basis =
                complete_standard_basis(&v, core::slice::from_ref(&e), DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(basis.e(1), &e[..]);
        }
        let native = complete_standard_basis(&v, &[], DEFAULT_ENUM_CAP).unwrap();
        v.check_standard_basis(&native).unwrap();
    }

    #[test]
    fn trace_restriction_values() {
        let ext = Field::quadratic_over(2, 1).unwrap();
        let vs = QuadraticSpace::minus_standard_over(ext.clone(), 2).unwrap();
        let b = ScalarBridge::new(ext.clone(), 4).unwrap();
        let v = b.trace_restriction(&vs).unwrap();
        assert_eq!(v.dim(), 8);
        assert_eq!(v.classify_type(DEFAULT_ENUM_CAP).unwrap(), FormType::Minus);
        assert_eq!(v.count_value(Fe::ZERO, DEFAULT_ENUM_CAP).unwrap(), 119);
        let dp = b.blowup_vector(vs.standard_basis().unwrap().d_prime());
        let mu = vs.standard_basis().unwrap().zeta;
        let expect = ext.add(mu, ext.frob(mu, 1));
        assert!(!expect.is_zero());
        assert_eq!(b.embed(v.q(&dp)), expect);
    }

    #[test]
    fn two_step_tower_matches_direct_coordinates() {
        // GF(16) over GF(4) over GF(2) versus GF(16) over GF(2) in the basis {1, xi2, xi4, xi2 xi4}
        let f16 = Field::quadratic_over(2, 2).unwrap();
        let f4 = Field::quadratic_over(2, 1).unwrap();
        let top = ScalarBridge::new(f16.clone(), 1).unwrap();
        let low = ScalarBridge::new(f4.clone(), 2).unwrap();
        let plain16 = Field::new(2, 4).unwrap();
        let e4 = plain16.embedding_from(&Field::new(2, 2).unwrap()).unwrap();
        let xi4 = top.xi();
        let xi2 = e4[low.xi().0 as usize];
        let basis = [Fe::ONE, xi2, xi4, f16.mul(xi2, xi4)];
        for c in f16.elements() {
            let two_step = low.blowup_vector(&top.blowup_vector(&[c]));
            // brute-force coordinates in the direct basis
            let mut found = None;
            for code in 0..16u16 {
                let bits: Vec<Fe> = (0..4).map(|i| Fe((code >> i) & 1)).collect();
                let val = bits
                    .iter()
                    .zip(basis)
                    .fold(Fe::ZERO, |acc, (&b, x)| f16.add(acc, f16.mul(b, x)));
                if val == c {
                    found = Some(bits);
                }
            }
            assert_eq!(found.unwrap(), two_step);
        }
    }
}

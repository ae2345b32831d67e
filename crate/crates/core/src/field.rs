//! Exact arithmetic in GF(p^e) for p in {2, 3} and e <= 8.
//!
//! Elements are stored as an index whose base-p digits are the coefficients
//! of the polynomial representative (digit `i` is the coefficient of `x^i`).
//! Every field is built from the Conway polynomial for its `(p, e)`, so the
//! subfield GF(p^d) of GF(p^e) is reached by sending `x_d` to
//! `x_e^((p^e - 1)/(p^d - 1))`, which keeps towers such as
//! GF(2) < GF(4) < GF(16) consistent without any extra bookkeeping.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: u32 = 8;

/// A field element, as an index into its field's tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Conway polynomials, coefficients from the constant term upwards
/// (the leading 1 included).
fn conway(p: u32, e: u32) -> Option<&'static [u8]> {
    let c: &'static [u8] = match (p, e) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (3, 7) => &[1, 0, 2, 0, 0, 0, 0, 1],
        (3, 8) => &[2, 2, 2, 0, 1, 2, 0, 0, 1],
        _ => return None,
    };
    Some(c)
}

/// A finite field GF(p^e) with precomputed log/antilog tables.
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u8>,
    sub_degree: Option<u32>,
    // exp has length 2*(order-1) so that log a + log b never needs a reduction
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub type FieldRef = Arc<Field>;

impl Field {
    /// GF(p^e) with its Conway modulus.
    pub fn new(p: u32, e: u32) -> Result<FieldRef> {
        if !(p == 2 || p == 3) || e == 0 || e > MAX_DEGREE {
            return Err(Error::FieldOutOfRange { p, e });
        }
        let modulus = conway(p, e).ok_or(Error::FieldOutOfRange { p, e })?;
        Self::with_modulus(p, modulus, None)
    }

    /// GF(q^2) for q = p^f, with GF(q) marked as the distinguished subfield.
    pub fn quadratic_over(p: u32, f: u32) -> Result<FieldRef> {
        let base = Self::new(p, 2 * f)?;
        Ok(Arc::new(base.with_sub_degree(f)?))
    }

    /// GF(p^e) for the given prime power `q = p^e`.
    pub fn of_order(q: u32) -> Result<FieldRef> {
        let (p, e) = prime_power(q).ok_or(Error::FieldOutOfRange { p: q, e: 1 })?;
        Self::new(p, e)
    }

    /// Builds a field from an explicit monic modulus (low coefficients first).
    pub fn with_modulus(p: u32, modulus: &[u8], sub_degree: Option<u32>) -> Result<FieldRef> {
        let e = (modulus.len() as u32).saturating_sub(1);
        if !(p == 2 || p == 3) || e == 0 || e > MAX_DEGREE {
            return Err(Error::FieldOutOfRange { p, e });
        }
        if modulus[e as usize] != 1 || modulus.iter().any(|&c| c as u32 >= p) {
            return Err(Error::ReducibleModulus);
        }
        if !is_irreducible(p, modulus) {
            return Err(Error::ReducibleModulus);
        }
        if let Some(s) = sub_degree {
            if s == 0 || !e.is_multiple_of(s) {
                return Err(Error::BadSubDegree { e, sub: s });
            }
        }
        let order = p.pow(e);
        let mut field = Field {
            p,
            degree: e,
            order,
            modulus: modulus.to_vec(),
            sub_degree,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
            neg: Vec::new(),
        };
        field.neg = (0..order).map(|a| field.slow_neg(a) as u16).collect();
        if p == 3 && order <= 729 {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = field.slow_add(a, b) as u16;
                }
            }
            field.add = Some(t);
        }
        field.build_log_tables()?;
        Ok(Arc::new(field))
    }

    fn with_sub_degree(&self, sub: u32) -> Result<Field> {
        if sub == 0 || !self.degree.is_multiple_of(sub) {
            return Err(Error::BadSubDegree {
                e: self.degree,
                sub,
            });
        }
        Ok(Field {
            p: self.p,
            degree: self.degree,
            order: self.order,
            modulus: self.modulus.clone(),
            sub_degree: Some(sub),
            exp: self.exp.clone(),
            log: self.log.clone(),
            add: self.add.clone(),
            neg: self.neg.clone(),
        })
    }

    fn digits(&self, mut a: u32) -> [u8; MAX_DEGREE as usize] {
        let mut d = [0u8; MAX_DEGREE as usize];
        for slot in d.iter_mut().take(self.degree as usize) {
            *slot = (a % self.p) as u8;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u8]) -> u32 {
        d.iter()
            .take(self.degree as usize)
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut z = [0u8; MAX_DEGREE as usize];
        for i in 0..self.degree as usize {
            z[i] = ((x[i] as u32 + y[i] as u32) % self.p) as u8;
        }
        self.undigits(&z)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let x = self.digits(a);
        let mut z = [0u8; MAX_DEGREE as usize];
        for i in 0..self.degree as usize {
            z[i] = ((self.p - x[i] as u32) % self.p) as u8;
        }
        self.undigits(&z)
    }

    /// Polynomial product reduced by the modulus; used only to build tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let e = self.degree as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u32; 2 * MAX_DEGREE as usize];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] += x[i] as u32 * y[j] as u32;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = prod[k] % self.p;
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate().take(e) {
                    prod[k - e + i] += (self.p - (m as u32)) * c;
                }
            }
            prod[k] = 0;
        }
        let mut z = [0u8; MAX_DEGREE as usize];
        for i in 0..e {
            z[i] = (prod[i] % self.p) as u8;
        }
        self.undigits(&z)
    }

    fn build_log_tables(&mut self) -> Result<()> {
        let n = self.order - 1;
        // first primitive element in enumeration order; x itself for Conway moduli
        for g in 1..self.order {
            let mut exp = Vec::with_capacity(2 * n as usize);
            let mut cur = 1u32;
            let mut ok = true;
            for k in 0..n {
                if k > 0 && cur == 1 {
                    ok = false;
                    break;
                }
                exp.push(cur as u16);
                cur = self.slow_mul(cur, g);
            }
            if !ok || cur != 1 {
                continue;
            }
            let mut log = vec![u32::MAX; self.order as usize];
            for (k, &v) in exp.iter().enumerate() {
                log[v as usize] = k as u32;
            }
            let doubled: Vec<u16> = exp.iter().chain(exp.iter()).copied().collect();
            self.exp = doubled;
            self.log = log;
            return Ok(());
        }
        Err(Error::ReducibleModulus)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn sub_degree(&self) -> Option<u32> {
        self.sub_degree
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(|a| Fe(a as u16))
    }

    /// Polynomial coordinates of `a` over the prime field.
    pub fn coeffs(&self, a: Fe) -> Vec<u8> {
        self.digits(a.0 as u32)[..self.degree as usize].to_vec()
    }

    pub fn from_coeffs(&self, c: &[u8]) -> Result<Fe> {
        if c.len() != self.degree as usize || c.iter().any(|&x| x as u32 >= self.p) {
            return Err(Error::BadCoefficients);
        }
        Ok(Fe(self.undigits(c) as u16))
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u16)
    }

    /// The class of `x` in GF(p)[x]/(modulus).
    pub fn generator(&self) -> Fe {
        if self.degree == 1 {
            // GF(p) has no polynomial generator; use a primitive root instead
            Fe(self.exp[1])
        } else {
            Fe(self.p as u16)
        }
    }

    /// A fixed primitive element (the one the log tables are built on).
    pub fn primitive(&self) -> Fe {
        Fe(self.exp[1])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => Fe(t[a.0 as usize * self.order as usize + b.0 as usize]),
            None => Fe(self.slow_add(a.0 as u32, b.0 as u32) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[k as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let k = (n - self.log[a.0 as usize]) % n;
        Ok(Fe(self.exp[k as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer `k` (negative powers require `a != 0`).
    pub fn pow(&self, a: Fe, k: i64) -> Result<Fe> {
        if a.0 == 0 {
            return match k {
                0 => Ok(Fe::ONE),
                k if k > 0 => Ok(Fe::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.order - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let k = (l * k.rem_euclid(n)).rem_euclid(n);
        Ok(Fe(self.exp[k as usize]))
    }

    /// `a^(p^k)`; `k` is taken modulo the degree.
    #[inline]
    pub fn frob(&self, a: Fe, k: u32) -> Fe {
        let k = k % self.degree;
        if k == 0 || a.0 == 0 {
            return a;
        }
        let n = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        let e = (l * (self.p as u64).pow(k)) % n;
        Fe(self.exp[e as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(n / gcd(n, l))
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.0 == 0 || self.p == 2 {
            return true;
        }
        self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Relative trace down to the distinguished subfield of degree f: `a + a^(p^f) + ...`.
    pub fn rel_trace(&self, a: Fe) -> Result<Fe> {
        let f = self.sub_degree.ok_or(Error::MissingSubfield)?;
        let mut acc = Fe::ZERO;
        let mut k = 0;
        while k < self.degree {
            acc = self.add(acc, self.frob(a, k));
            k += f;
        }
        Ok(acc)
    }

    /// Relative norm to the distinguished subfield.
    pub fn rel_norm(&self, a: Fe) -> Result<Fe> {
        let f = self.sub_degree.ok_or(Error::MissingSubfield)?;
        let mut acc = Fe::ONE;
        let mut k = 0;
        while k < self.degree {
            acc = self.mul(acc, self.frob(a, k));
            k += f;
        }
        Ok(acc)
    }

    /// True when `a` lies in the subfield of degree `d`.
    pub fn in_subfield(&self, a: Fe, d: u32) -> bool {
        self.frob(a, d) == a
    }

    /// Embedding of `sub` into `self` (requires Conway-compatible moduli),
    /// as a lookup table indexed by `sub` elements.
    pub fn embedding_from(&self, sub: &Field) -> Result<Vec<Fe>> {
        if sub.p != self.p || !self.degree.is_multiple_of(sub.degree) {
            return Err(Error::NotASubfield);
        }
        let ratio = (self.order - 1) / (sub.order - 1);
        let mut table = vec![Fe::ZERO; sub.order as usize];
        for a in 1..sub.order {
            let k = sub.log[a as usize] as u64 * ratio as u64 % (self.order - 1) as u64;
            table[a as usize] = Fe(self.exp[k as usize]);
        }
        // check it really is a ring homomorphism
        for a in sub.elements() {
            for b in sub.elements() {
                let ia = table[a.0 as usize];
                let ib = table[b.0 as usize];
                if table[sub.add(a, b).0 as usize] != self.add(ia, ib)
                    || table[sub.mul(a, b).0 as usize] != self.mul(ia, ib)
                {
                    return Err(Error::NotASubfield);
                }
            }
        }
        Ok(table)
    }
}

/// Solves `lambda + lambda^q = 1` in GF(q^2), first hit in enumeration order.
pub fn solve_lambda(ext: &Field) -> Result<Fe> {
    solve_trace(ext, Fe::ONE)
}

/// First `a` (in enumeration order) with relative trace `target`.
pub fn solve_trace(ext: &Field, target: Fe) -> Result<Fe> {
    for a in ext.elements() {
        if ext.rel_trace(a)? == target {
            return Ok(a);
        }
    }
    Err(Error::NoSolution("relative trace"))
}

/// First `mu` (in enumeration order) such that `x^2 + x + mu` has no root in the field.
pub fn find_irreducible_mu(field: &Field) -> Result<Fe> {
    field
        .elements()
        .find(|&mu| {
            !field
                .elements()
                .any(|x| field.add(field.add(field.mul(x, x), x), mu).is_zero())
        })
        .ok_or(Error::NoSolution("irreducible quadratic"))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits a prime power into `(p, e)` for p in {2, 3, 5, 7}.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    for p in [2u32, 3, 5, 7] {
        let mut n = q;
        let mut e = 0;
        while n > 1 && n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if n == 1 && e > 0 {
            return Some((p, e));
        }
    }
    None
}

/// Exhaustive trial division by every monic polynomial of degree <= e/2.
fn is_irreducible(p: u32, modulus: &[u8]) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                div.push((x % p) as u8);
                x /= p;
            }
            div.push(1);
            if poly_rem_is_zero(p, modulus, &div) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, num: &[u8], div: &[u8]) -> bool {
    let mut r: Vec<u32> = num.iter().map(|&c| c as u32).collect();
    let d = div.len() - 1;
    for k in (d..r.len()).rev() {
        let c = r[k] % p;
        if c != 0 {
            for i in 0..=d {
                r[k - d + i] = (r[k - d + i] + (p - div[i] as u32) * c) % p;
            }
        }
    }
    r[..d].iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_omega_cubed() {
        let f = Field::new(2, 2).unwrap();
        let w = f.generator();
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w, w2), Fe::ONE);
        assert_eq!(f.add(Fe::ONE, Fe::ONE), Fe::ZERO);
        assert_eq!(f.frob(w, 1), w2);
    }

    #[test]
    fn gf2_basics() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.add(Fe::ONE, Fe::ONE), Fe::ZERO);
        assert_eq!(f.frob(Fe::ONE, 1), Fe::ONE);
    }

    #[test]
    fn gf16_multiplicative_group_by_table() {
        // exhaustive multiplication table, independent of the log tables
        let f = Field::new(2, 4).unwrap();
        let x = f.generator();
        let mut pow = Fe::ONE;
        let mut seen = [false; 16];
        for k in 0..15 {
            assert!(!seen[pow.0 as usize], "x^{k} repeats");
            seen[pow.0 as usize] = true;
            pow = Fe(f.slow_mul(pow.0 as u32, x.0 as u32) as u16);
        }
        assert_eq!(pow, Fe::ONE);
        let x14 = f.pow(x, 14).unwrap();
        assert_eq!(f.mul(x, x14), Fe::ONE);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b).0 as u32, f.slow_mul(a.0 as u32, b.0 as u32));
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for (p, e) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)] {
            let f = Field::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.frob(a, e), a);
                for b in f.elements() {
                    assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
                    assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
                }
            }
        }
    }

    #[test]
    fn rel_trace_properties() {
        let f4 = Field::quadratic_over(2, 1).unwrap();
        let w = f4.generator();
        assert_eq!(f4.rel_trace(w).unwrap(), Fe::ONE);
        assert_eq!(f4.rel_trace(Fe::ZERO).unwrap(), Fe::ZERO);

        // GF(16)/GF(4): linear, onto, all fibres of size 4
        let f16 = Field::quadratic_over(2, 2).unwrap();
        let mut fibres = [0usize; 16];
        for a in f16.elements() {
            let t = f16.rel_trace(a).unwrap();
            assert!(f16.in_subfield(t, 2));
            fibres[t.0 as usize] += 1;
        }
        let sub: Vec<usize> = fibres.iter().copied().filter(|&c| c > 0).collect();
        assert_eq!(sub, vec![4, 4, 4, 4]);

        // every element of the subfield has exactly q preimages
        for (p, fdeg) in [(3u32, 1u32), (2, 2), (3, 2)] {
            let ext = Field::quadratic_over(p, fdeg).unwrap();
            let q = p.pow(fdeg) as usize;
            let mut counts = vec![0usize; ext.order() as usize];
            for a in ext.elements() {
                counts[ext.rel_trace(a).unwrap().0 as usize] += 1;
            }
            for c in ext.elements().filter(|&c| ext.in_subfield(c, fdeg)) {
                assert_eq!(counts[c.0 as usize], q);
            }
        }
    }

    #[test]
    fn lambda_solutions() {
        let f4 = Field::quadratic_over(2, 1).unwrap();
        assert_eq!(solve_lambda(&f4).unwrap(), f4.generator());
        for (p, fdeg) in [(2u32, 2u32), (3, 1)] {
            let ext = Field::quadratic_over(p, fdeg).unwrap();
            let l = solve_lambda(&ext).unwrap();
            let q = p.pow(fdeg);
            assert_eq!(ext.add(l, ext.pow(l, q as i64).unwrap()), Fe::ONE);
            let n = ext
                .elements()
                .filter(|&a| ext.rel_trace(a).unwrap() == Fe::ONE)
                .count();
            assert_eq!(n as u32, q);
        }
    }

    #[test]
    fn mu_search() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.generator();
        assert_eq!(find_irreducible_mu(&f4).unwrap(), w);
        // 1 is not valid: omega is a root of x^2 + x + 1
        assert!(f4
            .elements()
            .any(|x| f4.add(f4.add(f4.mul(x, x), x), Fe::ONE).is_zero()));
        let f16 = Field::new(2, 4).unwrap();
        let valid = f16
            .elements()
            .filter(|&mu| {
                !f16.elements()
                    .any(|x| f16.add(f16.add(f16.mul(x, x), x), mu).is_zero())
            })
            .count();
        assert_eq!(valid, 8);
    }

    #[test]
    fn tower_embeddings_compose() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let f256 = Field::new(2, 8).unwrap();
        let a = f16.embedding_from(&f4).unwrap();
        let b = f256.embedding_from(&f16).unwrap();
        let c = f256.embedding_from(&f4).unwrap();
        for x in f4.elements() {
            assert_eq!(b[a[x.0 as usize].0 as usize], c[x.0 as usize]);
        }
        assert!(f4.embedding_from(&f2).is_ok());
        let f9 = Field::new(3, 2).unwrap();
        let f81 = Field::new(3, 4).unwrap();
        assert!(f81.embedding_from(&f9).is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::new(5, 1).is_err());
        assert!(Field::new(2, 9).is_err());
        assert!(Field::with_modulus(2, &[1, 0, 1], None).is_err()); // x^2+1 = (x+1)^2
        let f = Field::new(2, 2).unwrap();
        assert!(f.inv(Fe::ZERO).is_err());
        assert!(f.rel_trace(Fe::ONE).is_err());
    }
}

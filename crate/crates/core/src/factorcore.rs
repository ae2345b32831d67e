//! Brute-force factorization checks on explicit small permutation groups.
//!
//! Groups are stored as sorted element lists, which keeps every check an
//! exact set computation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};

/// Largest group the module will enumerate.
pub const MAX_GROUP: usize = 100_000;
/// Largest number of pairwise products a single check may form.
pub const MAX_PRODUCTS: u64 = 100_000_000;

/// A permutation of `0..n`, acting on the right: `i -> p[i]`.
pub type Perm = Vec<u8>;

type Set = HashSet<Perm, FxBuildHasher>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// `a` then `b`.
pub fn mul(a: &[u8], b: &[u8]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inv(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

/// `x^-1 a x`.
pub fn conj(a: &[u8], x: &[u8]) -> Perm {
    mul(&mul(&inv(x), a), x)
}

fn is_perm(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| (i as usize) < p.len() && !core::mem::replace(&mut seen[i as usize], true))
}

fn sign(p: &[u8]) -> u8 {
    let mut seen = vec![false; p.len()];
    let mut s = 0;
    for i in 0..p.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        if len > 0 {
            s ^= ((len + 1) % 2) as u8;
        }
    }
    s
}

/// An explicit finite permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl SmallGroup {
    /// Closure of `gens` under multiplication.
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Self> {
        for g in gens {
            if g.len() != degree || !is_perm(g) {
                return Err(Error::Precondition(format!(
                    "{g:?} is not a permutation of degree {degree}"
                )));
            }
        }
        let id = identity(degree);
        let mut set = Set::default();
        set.insert(id.clone());
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let h = mul(&elements[i], g);
                if set.insert(h.clone()) {
                    if elements.len() == MAX_GROUP {
                        return Err(Error::CapExceeded { cap: MAX_GROUP });
                    }
                    elements.push(h);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Ok(Self { degree, elements })
    }

    /// Wraps an explicit element list, checking the group axioms.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        if elements.len() > MAX_GROUP {
            return Err(Error::CapExceeded { cap: MAX_GROUP });
        }
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|g| g.len() != degree || !is_perm(g)) {
            return Err(Error::Precondition(
                "element is not a permutation of the stated degree".into(),
            ));
        }
        let g = Self { degree, elements };
        if !g.contains(&identity(degree)) {
            return Err(Error::CheckFailed("identity missing".into()));
        }
        for a in &g.elements {
            if !g.contains(&inv(a)) {
                return Err(Error::CheckFailed("not closed under inverses".into()));
            }
            for b in &g.elements {
                if !g.contains(&mul(a, b)) {
                    return Err(Error::CheckFailed("not closed under multiplication".into()));
                }
            }
        }
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            elements: vec![identity(degree)],
        }
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Ok(Self::trivial(n));
        }
        let mut t = identity(n);
        t.swap(0, 1);
        let c: Perm = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        Self::generate(n, &[t, c])
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let s = Self::symmetric(n)?;
        Ok(Self {
            degree: n,
            elements: s.elements.into_iter().filter(|p| sign(p) == 0).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, g: &[u8]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(g))
            .is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<Perm> {
        let mut gens = Vec::new();
        let mut span = Self::trivial(self.degree);
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(g.clone());
                span = Self::generate(self.degree, &gens).expect("subgroup of a capped group");
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_normal_in(&self, other: &Self) -> bool {
        let own = self.generators();
        self.is_subgroup_of(other)
            && other
                .generators()
                .iter()
                .all(|x| own.iter().all(|a| self.contains(&conj(a, x))))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let elements = self
            .elements
            .iter()
            .filter(|g| other.contains(g))
            .cloned()
            .collect();
        Self {
            degree: self.degree,
            elements,
        }
    }

    /// `x^-1 H x`.
    pub fn conjugate(&self, x: &[u8]) -> Self {
        let mut elements: Vec<Perm> = self.elements.iter().map(|a| conj(a, x)).collect();
        elements.sort_unstable();
        Self {
            degree: self.degree,
            elements,
        }
    }

    /// The subgroup generated by the union of two subgroups.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generate(self.degree, &gens)
    }

    /// The normal closure of `gens` in `self`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<Self> {
        let ambient = self.generators();
        let mut closure = Self::generate(self.degree, gens)?;
        loop {
            let mut all = closure.generators();
            let before = all.len();
            for a in closure.generators() {
                for x in &ambient {
                    let c = conj(&a, x);
                    if !closure.contains(&c) {
                        all.push(c);
                    }
                }
            }
            if all.len() == before {
                return Ok(closure);
            }
            closure = Self::generate(self.degree, &all)?;
        }
    }

    /// The product set `HK` as an element list.
    pub fn product_set(&self, other: &Self) -> Result<Vec<Perm>> {
        check_products(self, other)?;
        let mut set = Set::default();
        for h in &self.elements {
            for k in &other.elements {
                set.insert(mul(h, k));
            }
        }
        let mut out: Vec<Perm> = set.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }
}

fn check_products(h: &SmallGroup, k: &SmallGroup) -> Result<()> {
    if h.order() as u64 * k.order() as u64 > MAX_PRODUCTS {
        return Err(Error::CapExceeded {
            cap: MAX_PRODUCTS as usize,
        });
    }
    if h.degree != k.degree {
        return Err(Error::DimensionMismatch {
            expected: h.degree,
            got: k.degree,
        });
    }
    Ok(())
}

fn covers(set: &[Perm], sub: &SmallGroup) -> bool {
    sub.elements.iter().all(|g| set.binary_search(g).is_ok())
}

/// `G = HK` by hashed enumeration of the product set.
pub fn is_factorization(g: &SmallGroup, h: &SmallGroup, k: &SmallGroup) -> Result<bool> {
    if !h.is_subgroup_of(g) || !k.is_subgroup_of(g) {
        return Err(Error::Precondition("factors must be subgroups".into()));
    }
    Ok(h.product_set(k)?.len() == g.order())
}

/// `G = HK` by the count `|H||K| / |H n K| = |G|`.
pub fn is_factorization_by_count(g: &SmallGroup, h: &SmallGroup, k: &SmallGroup) -> bool {
    h.order() * k.order() == g.order() * h.intersection(k).order()
}

/// Coset label of `x` modulo the normal subgroup `n`: the least element of `xN`.
fn coset_rep(x: &[u8], n: &SmallGroup) -> Perm {
    n.elements
        .iter()
        .map(|a| mul(x, a))
        .min()
        .expect("subgroup is nonempty")
}

/// Evaluates both sides of: `G = HK` iff `HK >= N` and `G/N = (HN/N)(KN/N)`.
/// Returns whether they agree.
pub fn quotient_reduction_check(
    g: &SmallGroup,
    h: &SmallGroup,
    k: &SmallGroup,
    n: &SmallGroup,
) -> Result<bool> {
    if !n.is_normal_in(g) {
        return Err(Error::Precondition("N must be normal in G".into()));
    }
    let lhs = is_factorization(g, h, k)?;
    let hk = h.product_set(k)?;
    let contains_n = covers(&hk, n);
    // (HN/N)(KN/N) is the set of cosets hkN
    let mut quotient_products = Set::default();
    for x in &hk {
        quotient_products.insert(coset_rep(x, n));
    }
    let quotient_order = g.order() / n.order();
    let rhs = contains_n && quotient_products.len() == quotient_order;
    Ok(lhs == rhs)
}

/// Outcome of the conjugation checks for one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateOutcome {
    /// `HK >= L` held for the input pair.
    pub factor_pair: bool,
    /// `G = HK` held for the input pair.
    pub factorization: bool,
    /// Every implication whose premise held was confirmed.
    pub holds: bool,
}

/// For `L` normal in `G` and `alpha in G`, `x, y in L`: a factor pair `(H, K)`
/// of `L` stays one after `(H^alpha, K^alpha)` and `(H^x, K^y)`. If `G = HK`
/// and `x, y in G` then `G = H^x K^y` with `|H^x n K^y| = |H n K|`.
pub fn conjugate_pair_checks(
    g: &SmallGroup,
    l: &SmallGroup,
    h: &SmallGroup,
    k: &SmallGroup,
    alpha: &[u8],
    x: &[u8],
    y: &[u8],
) -> Result<ConjugateOutcome> {
    if !l.is_normal_in(g) || !g.contains(alpha) || !g.contains(x) || !g.contains(y) {
        return Err(Error::Precondition(
            "need L normal in G and alpha, x, y in G".into(),
        ));
    }
    let hk = h.product_set(k)?;
    let factor_pair = covers(&hk, l);
    let factorization = hk.len() == g.order();
    let mut holds = true;
    if factor_pair {
        let (ha, ka) = (h.conjugate(alpha), k.conjugate(alpha));
        holds &= covers(&ha.product_set(&ka)?, l);
        if l.contains(x) && l.contains(y) {
            holds &= covers(&h.conjugate(x).product_set(&k.conjugate(y))?, l);
        }
    }
    if factorization {
        let (hx, ky) = (h.conjugate(x), k.conjugate(y));
        holds &= is_factorization(g, &hx, &ky)?;
        holds &= hx.intersection(&ky).order() == h.intersection(k).order();
    }
    Ok(ConjugateOutcome {
        factor_pair,
        factorization,
        holds,
    })
}

/// For `G = HK` and `L` normal in `G`: `HL n KL = (H n KL)(K n HL)`.
/// Returns `None` when the premise fails.
pub fn mixed_product_identity(
    g: &SmallGroup,
    h: &SmallGroup,
    k: &SmallGroup,
    l: &SmallGroup,
) -> Result<Option<bool>> {
    if !l.is_normal_in(g) {
        return Err(Error::Precondition("L must be normal in G".into()));
    }
    if !is_factorization(g, h, k)? {
        return Ok(None);
    }
    let hl = h.join(l)?;
    let kl = k.join(l)?;
    let lhs = hl.intersection(&kl);
    let rhs = h.intersection(&kl).product_set(&k.intersection(&hl))?;
    Ok(Some(lhs.elements == rhs))
}

/// Totals of a randomized property run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub samples: usize,
    /// Samples with `G = HK`.
    pub factorizations: usize,
    /// Samples where the mixed-product premise held and the identity was compared.
    pub mixed_checked: usize,
    pub failures: Vec<String>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_element(rng: &mut ChaCha8Rng, g: &SmallGroup) -> Perm {
    g.elements[(rng.next_u64() % g.order() as u64) as usize].clone()
}

/// A random subgroup: generated by one to three random elements, or a
/// point stabilizer, which makes factorizations common.
fn random_subgroup(rng: &mut ChaCha8Rng, g: &SmallGroup) -> Result<SmallGroup> {
    match rng.next_u32() % 4 {
        0 => {
            let pt = (rng.next_u32() as usize % g.degree) as u8;
            let elements = g
                .elements
                .iter()
                .filter(|p| p[pt as usize] == pt)
                .cloned()
                .collect();
            Ok(SmallGroup {
                degree: g.degree,
                elements,
            })
        }
        r => {
            let gens: Vec<Perm> = (0..r).map(|_| random_element(rng, g)).collect();
            SmallGroup::generate(g.degree, &gens)
        }
    }
}

fn random_normal(rng: &mut ChaCha8Rng, g: &SmallGroup) -> Result<SmallGroup> {
    match rng.next_u32() % 4 {
        0 => Ok(SmallGroup::trivial(g.degree)),
        1 => Ok(g.clone()),
        _ => g.normal_closure(&[random_element(rng, g)]),
    }
}

/// The ambient groups of the corpus: S4, S5, A5, A6.
pub fn corpus_groups() -> Result<Vec<(&'static str, SmallGroup)>> {
    Ok(vec![
        ("S4", SmallGroup::symmetric(4)?),
        ("S5", SmallGroup::symmetric(5)?),
        ("A5", SmallGroup::alternating(5)?),
        ("A6", SmallGroup::alternating(6)?),
    ])
}

/// Runs every check on `per_group` random samples in each corpus group.
pub fn property_corpus(seed: u64, per_group: usize) -> Result<CorpusReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CorpusReport::default();
    for (name, g) in corpus_groups()? {
        for i in 0..per_group {
            let h = random_subgroup(&mut rng, &g)?;
            let k = random_subgroup(&mut rng, &g)?;
            let n = random_normal(&mut rng, &g)?;
            let (alpha, x, y) = (
                random_element(&mut rng, &g),
                random_element(&mut rng, &g),
                random_element(&mut rng, &g),
            );
            let tag = format!(
                "{name} sample {i} (|H| = {}, |K| = {}, |N| = {})",
                h.order(),
                k.order(),
                n.order()
            );
            report.samples += 1;
            let set_test = is_factorization(&g, &h, &k)?;
            if set_test {
                report.factorizations += 1;
            }
            if set_test != is_factorization_by_count(&g, &h, &k) {
                report
                    .failures
                    .push(format!("{tag}: product-set and counting tests disagree"));
            }
            if !quotient_reduction_check(&g, &h, &k, &n)? {
                report.failures.push(format!("{tag}: quotient reduction"));
            }
            // L ranges over the same normal subgroups; x, y in L for the factor-pair clause
            let xl = if n.contains(&x) {
                x.clone()
            } else {
                identity(g.degree)
            };
            let outcome = conjugate_pair_checks(&g, &n, &h, &k, &alpha, &xl, &y)?;
            if !outcome.holds {
                report.failures.push(format!("{tag}: conjugate pair"));
            }
            let outcome = conjugate_pair_checks(&g, &g, &h, &k, &alpha, &x, &y)?;
            if !outcome.holds {
                report
                    .failures
                    .push(format!("{tag}: conjugate pair with L = G"));
            }
            match mixed_product_identity(&g, &h, &k, &n)? {
                Some(true) => report.mixed_checked += 1,
                Some(false) => report
                    .failures
                    .push(format!("{tag}: mixed product identity")),
                None => {}
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycle: &[u8]) -> Perm {
        let mut p = identity(n);
        for (i, &a) in cycle.iter().enumerate() {
            p[a as usize] = cycle[(i + 1) % cycle.len()];
        }
        p
    }

    fn s4_s3_a4() -> (SmallGroup, SmallGroup, SmallGroup) {
        let g = SmallGroup::symmetric(4).unwrap();
        let h = SmallGroup::generate(4, &[cyc(4, &[0, 1]), cyc(4, &[0, 1, 2])]).unwrap();
        let k = SmallGroup::alternating(4).unwrap();
        (g, h, k)
    }

    #[test]
    fn standard_orders() {
        assert_eq!(SmallGroup::symmetric(5).unwrap().order(), 120);
        assert_eq!(SmallGroup::alternating(5).unwrap().order(), 60);
        assert_eq!(SmallGroup::alternating(6).unwrap().order(), 360);
        let a4 = SmallGroup::alternating(4).unwrap();
        assert_eq!(
            SmallGroup::from_elements(4, a4.elements().to_vec()).unwrap(),
            a4
        );
        assert!(SmallGroup::from_elements(3, vec![identity(3), cyc(3, &[0, 1, 2])]).is_err());
    }

    #[test]
    fn s4_is_s3_times_a4() {
        let (g, h, k) = s4_s3_a4();
        assert_eq!(h.intersection(&k).order(), 3);
        assert!(is_factorization(&g, &h, &k).unwrap());
        assert!(is_factorization_by_count(&g, &h, &k));
        assert!(is_factorization(&g, &g, &SmallGroup::trivial(4)).unwrap());
    }

    #[test]
    fn a4_is_not_c2_c3() {
        let g = SmallGroup::alternating(4).unwrap();
        let h = SmallGroup::generate(4, &[mul(&cyc(4, &[0, 1]), &cyc(4, &[2, 3]))]).unwrap();
        let k = SmallGroup::generate(4, &[cyc(4, &[0, 1, 2])]).unwrap();
        assert!(!is_factorization(&g, &h, &k).unwrap());
    }

    #[test]
    fn quotient_reduction_extremes() {
        let (g, h, k) = s4_s3_a4();
        assert!(quotient_reduction_check(&g, &h, &k, &SmallGroup::trivial(4)).unwrap());
        assert!(quotient_reduction_check(&g, &h, &k, &g).unwrap());
        let v4 = g
            .normal_closure(&[mul(&cyc(4, &[0, 1]), &cyc(4, &[2, 3]))])
            .unwrap();
        assert_eq!(v4.order(), 4);
        assert!(quotient_reduction_check(&g, &h, &k, &v4).unwrap());
    }

    #[test]
    fn conjugated_factorizations() {
        let (g, h, k) = s4_s3_a4();
        let id = identity(4);
        assert!(
            conjugate_pair_checks(&g, &g, &h, &k, &id, &id, &id)
                .unwrap()
                .holds
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (x, y) = (random_element(&mut rng, &g), random_element(&mut rng, &g));
            let (hx, ky) = (h.conjugate(&x), k.conjugate(&y));
            assert!(is_factorization(&g, &hx, &ky).unwrap());
            assert_eq!(hx.intersection(&ky).order(), 3);
        }
    }

    #[test]
    fn a5_factor_pair_survives_conjugation() {
        // A5 = A4 * C5
        let g = SmallGroup::alternating(5).unwrap();
        let h = SmallGroup::generate(5, &[cyc(5, &[0, 1, 2]), cyc(5, &[1, 2, 3])]).unwrap();
        let k = SmallGroup::generate(5, &[cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert!(is_factorization(&g, &h, &k).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (a, x, y) = (
                random_element(&mut rng, &g),
                random_element(&mut rng, &g),
                random_element(&mut rng, &g),
            );
            let out = conjugate_pair_checks(&g, &g, &h, &k, &a, &x, &y).unwrap();
            assert!(out.factor_pair && out.factorization && out.holds);
        }
    }

    #[test]
    fn mixed_product_on_s4() {
        let (g, h, k) = s4_s3_a4();
        let v4 = g
            .normal_closure(&[mul(&cyc(4, &[0, 1]), &cyc(4, &[2, 3]))])
            .unwrap();
        assert_eq!(mixed_product_identity(&g, &h, &k, &v4).unwrap(), Some(true));
        assert_eq!(mixed_product_identity(&g, &h, &k, &g).unwrap(), Some(true));
        assert_eq!(
            mixed_product_identity(&g, &h, &k, &SmallGroup::trivial(4)).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn corpus_has_no_failures() {
        let r = property_corpus(1, 130).unwrap();
        assert!(r.samples >= 500);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(
            r.factorizations > 20,
            "only {} factorizations",
            r.factorizations
        );
    }
}

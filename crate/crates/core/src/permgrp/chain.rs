//! Schreier-Sims stabilizer chains for semilinear groups acting on vectors.
//!
//! Construction runs a seeded random phase first. It finishes either when a
//! proven upper bound on the order is reached (product of basic orbit lengths
//! is always a lower bound), or with a deterministic pass that sifts every
//! Schreier generator at every level and then every input generator.

use alloc::borrow::Cow;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxBuildHasher;

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::forms::DEFAULT_ENUM_CAP;
use crate::linalg;
use crate::semilinear::Semilinear;

/// Orbit points past this index keep only a Schreier vector entry.
const EXPLICIT_TRANSVERSAL: usize = 1 << 17;

#[derive(Clone, Debug)]
pub struct ChainOptions {
    pub seed: u64,
    /// Largest basic orbit allowed.
    pub cap: usize,
    /// Base points to use first, in order.
    pub base_hint: Vec<Vec<Fe>>,
    /// A proven upper bound on the group order. Reaching it certifies the chain.
    pub order_bound: Option<BigUint>,
    /// Consecutive successful random sifts that end the random phase.
    pub quiet_rounds: usize,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self {
            seed: 0x005e_ed0f_c4a1,
            cap: DEFAULT_ENUM_CAP as usize,
            base_hint: Vec::new(),
            order_bound: None,
            quiet_rounds: 40,
        }
    }
}

impl ChainOptions {
    pub fn with_base(mut self, base: Vec<Vec<Fe>>) -> Self {
        self.base_hint = base;
        self
    }

    pub fn with_bound(mut self, bound: BigUint) -> Self {
        self.order_bound = Some(bound);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

/// How completeness of a chain was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Every Schreier generator and every input generator sifts to the identity.
    SchreierVerified,
    /// The orbit-length product met a proven upper bound on the order.
    OrderBound,
    /// Inherited from a complete parent chain.
    Inherited,
}

#[derive(Clone, Debug)]
struct Level {
    base: Vec<Fe>,
    gens: Vec<usize>,
    tested: Vec<usize>,
    orbit: Vec<u64>,
    pos: HashMap<u64, u32, FxBuildHasher>,
    /// Schreier vector: the point each orbit point was reached from, and by which generator.
    parent: Vec<(u32, u32)>,
    /// Explicit transversal elements for the first points in discovery order.
    fwd: Vec<Semilinear>,
    inv: Vec<Semilinear>,
}

impl Level {
    fn new(n: usize, base: Vec<Fe>, codec: &Codec) -> Self {
        let base_code = codec.encode(&base);
        let mut pos = HashMap::with_hasher(FxBuildHasher);
        pos.insert(base_code, 0);
        Self {
            base,
            gens: Vec::new(),
            tested: Vec::new(),
            orbit: vec![base_code],
            pos,
            parent: vec![(0, 0)],
            fwd: vec![Semilinear::identity(n)],
            inv: vec![Semilinear::identity(n)],
        }
    }
}

/// Text-exportable summary of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSummary {
    pub base: Vec<Vec<Fe>>,
    pub orbit_sizes: Vec<usize>,
    pub order: BigUint,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    field: FieldRef,
    n: usize,
    codec: Codec,
    levels: Vec<Level>,
    elems: Vec<Semilinear>,
    elems_inv: Vec<Semilinear>,
    cap: usize,
    completion: Completion,
}

impl StabChain {
    /// Builds a complete chain for the group generated by `gens`.
    pub fn build(
        field: FieldRef,
        n: usize,
        gens: &[Semilinear],
        opts: &ChainOptions,
    ) -> Result<Self> {
        for g in gens {
            if g.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.dim(),
                });
            }
        }
        let codec = Codec::new(field.order(), n);
        if codec.size().is_none() {
            return Err(Error::OutOfRange(
                "ambient space too large to encode".into(),
            ));
        }
        let mut chain = Self {
            field,
            n,
            codec,
            levels: Vec::new(),
            elems: Vec::new(),
            elems_inv: Vec::new(),
            cap: opts.cap,
            completion: Completion::SchreierVerified,
        };
        for b in &opts.base_hint {
            if b.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.len(),
                });
            }
            if !chain.levels.iter().any(|l| &l.base == b) {
                chain.levels.push(Level::new(n, b.clone(), &chain.codec));
            }
        }
        let gens: Vec<Semilinear> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok(chain);
        }

        chain.random_phase(&gens, opts)?;
        if let Some(bound) = &opts.order_bound {
            let order = chain.order();
            if &order == bound {
                chain.completion = Completion::OrderBound;
                return Ok(chain);
            }
            if &order > bound {
                return Err(Error::CheckFailed(format!(
                    "chain order {order} exceeds the stated bound {bound}"
                )));
            }
        }
        chain.complete()?;
        // the chain describes <level 0 generators>; make sure that is everything
        loop {
            let mut changed = false;
            for g in &gens {
                let (r, l) = chain.sift_from(g.clone(), 0);
                if l < chain.levels.len() || !r.is_identity() {
                    chain.add_generator(r, 0, l)?;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            chain.complete()?;
        }
        chain.completion = Completion::SchreierVerified;
        Ok(chain)
    }

    fn random_phase(&mut self, gens: &[Semilinear], opts: &ChainOptions) -> Result<()> {
        let mut pr = ProductReplacement::new(&self.field, gens, opts.seed);
        let mut quiet = 0;
        while quiet < opts.quiet_rounds {
            if let Some(bound) = &opts.order_bound {
                if &self.order() >= bound {
                    break;
                }
            }
            let g = pr.next(&self.field);
            let (r, l) = self.sift_from(g, 0);
            if l < self.levels.len() || !r.is_identity() {
                self.add_generator(r, 0, l)?;
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
        Ok(())
    }

    /// Deterministic completion: every Schreier generator of every level sifts.
    fn complete(&mut self) -> Result<()> {
        if self.levels.is_empty() {
            return Ok(());
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.test_level(i)? {
                Some(l) => i = l,
                None if i == 0 => return Ok(()),
                None => i -= 1,
            }
        }
    }

    /// Tests untested Schreier generators at level `i`. On the first failure,
    /// adds the residue and returns the level it dropped out at.
    fn test_level(&mut self, i: usize) -> Result<Option<usize>> {
        let f = self.field.clone();
        let mut gi = 0;
        while gi < self.levels[i].gens.len() {
            let s_id = self.levels[i].gens[gi];
            let mut j = self.levels[i].tested[gi];
            while j < self.levels[i].orbit.len() {
                let lvl = &self.levels[i];
                let img = self.act_code(&self.elems[s_id], lvl.orbit[j]);
                let jj = *lvl.pos.get(&img).expect("orbit is closed") as usize;
                if lvl.parent[jj] == (j as u32, s_id as u32) && jj != 0 {
                    j += 1;
                    continue;
                }
                let us = self.fwd(i, j).compose(&self.elems[s_id], &f);
                if us == *self.fwd(i, jj) {
                    j += 1;
                    continue;
                }
                let h = us.compose(&self.inv(i, jj), &f);
                let (r, l) = self.sift_from(h, i + 1);
                if l < self.levels.len() || !r.is_identity() {
                    self.levels[i].tested[gi] = j + 1;
                    self.add_generator(r, i + 1, l)?;
                    return Ok(Some(l));
                }
                j += 1;
            }
            self.levels[i].tested[gi] = j;
            gi += 1;
        }
        Ok(None)
    }

    fn act_code(&self, g: &Semilinear, code: u64) -> u64 {
        let v = self.codec.decode_vec(code);
        self.codec.encode(&g.apply(&self.field, &v))
    }

    /// Sifts `g` starting at level `start`: returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    pub fn sift_from(&self, mut g: Semilinear, start: usize) -> (Semilinear, usize) {
        let mut out = vec![Fe::ZERO; self.n];
        for l in start..self.levels.len() {
            let lvl = &self.levels[l];
            g.apply_into(&self.field, &lvl.base, &mut out);
            match lvl.pos.get(&self.codec.encode(&out)) {
                None => return (g, l),
                Some(&j) => {
                    if j != 0 {
                        g = g.compose(&self.inv(l, j as usize), &self.field);
                    }
                }
            }
        }
        (g, self.levels.len())
    }

    pub fn sift(&self, g: &Semilinear) -> (Semilinear, usize) {
        self.sift_from(g.clone(), 0)
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Semilinear) -> bool {
        if g.dim() != self.n {
            return false;
        }
        let (r, l) = self.sift(g);
        l == self.levels.len() && r.is_identity()
    }

    /// Adds `h` as a strong generator of levels `from..=to`, creating a new
    /// level (with a base point moved by `h`) when `to` is past the end.
    fn add_generator(&mut self, h: Semilinear, from: usize, to: usize) -> Result<()> {
        if to == self.levels.len() {
            let b = self.moved_point(&h);
            self.levels.push(Level::new(self.n, b, &self.codec));
        }
        let hinv = h.inverse(&self.field);
        let id = self.elems.len();
        self.elems.push(h);
        self.elems_inv.push(hinv);
        for l in from..=to {
            self.levels[l].gens.push(id);
            self.levels[l].tested.push(0);
            self.extend_orbit(l, id)?;
        }
        Ok(())
    }

    fn moved_point(&self, h: &Semilinear) -> Vec<Fe> {
        let f = &self.field;
        for i in 0..self.n {
            let u = linalg::unit(self.n, i);
            if h.apply(f, &u) != u {
                return u;
            }
        }
        let mut v = vec![Fe::ZERO; self.n];
        v[0] = f.primitive();
        debug_assert!(h.apply(f, &v) != v);
        v
    }

    fn extend_orbit(&mut self, l: usize, new_gen: usize) -> Result<()> {
        let f = self.field.clone();
        let old = self.levels[l].orbit.len();
        let mut head = 0;
        while head < self.levels[l].orbit.len() {
            let x = self.levels[l].orbit[head];
            let gens: Vec<usize> = if head < old {
                vec![new_gen]
            } else {
                self.levels[l].gens.clone()
            };
            for s in gens {
                let y = self.act_code(&self.elems[s], x);
                let lvl = &mut self.levels[l];
                if lvl.pos.contains_key(&y) {
                    continue;
                }
                if lvl.orbit.len() >= self.cap {
                    return Err(Error::CapExceeded { cap: self.cap });
                }
                if lvl.orbit.len() < EXPLICIT_TRANSVERSAL {
                    let fwd = lvl.fwd[head].compose(&self.elems[s], &f);
                    let inv = self.elems_inv[s].compose(&lvl.inv[head], &f);
                    lvl.fwd.push(fwd);
                    lvl.inv.push(inv);
                }
                lvl.pos.insert(y, lvl.orbit.len() as u32);
                lvl.orbit.push(y);
                lvl.parent.push((head as u32, s as u32));
            }
            head += 1;
        }
        Ok(())
    }

    /// Generator path from the nearest explicitly stored ancestor of point `j`.
    fn path(&self, l: usize, mut j: usize) -> (usize, Vec<usize>) {
        let lvl = &self.levels[l];
        let mut steps = Vec::new();
        while j >= lvl.fwd.len() {
            let (p, s) = lvl.parent[j];
            steps.push(s as usize);
            j = p as usize;
        }
        (j, steps)
    }

    /// Transversal element carrying the base point of level `l` to orbit point `j`.
    fn fwd(&self, l: usize, j: usize) -> Cow<'_, Semilinear> {
        let lvl = &self.levels[l];
        if j < lvl.fwd.len() {
            return Cow::Borrowed(&lvl.fwd[j]);
        }
        let (a, steps) = self.path(l, j);
        let g = steps.iter().rev().fold(lvl.fwd[a].clone(), |g, &s| {
            g.compose(&self.elems[s], &self.field)
        });
        Cow::Owned(g)
    }

    /// Inverse of `fwd(l, j)`.
    fn inv(&self, l: usize, j: usize) -> Cow<'_, Semilinear> {
        let lvl = &self.levels[l];
        if j < lvl.inv.len() {
            return Cow::Borrowed(&lvl.inv[j]);
        }
        let (a, steps) = self.path(l, j);
        let g = steps.iter().fold(Semilinear::identity(self.n), |g, &s| {
            g.compose(&self.elems_inv[s], &self.field)
        });
        Cow::Owned(g.compose(&lvl.inv[a], &self.field))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<Vec<Fe>> {
        self.levels.iter().map(|l| l.base.clone()).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Codes of the basic orbit at level `i`, in discovery order.
    pub fn level_orbit(&self, i: usize) -> &[u64] {
        &self.levels[i].orbit
    }

    /// Transversal element carrying the base point of level `i` to `v`.
    pub fn transversal(&self, i: usize, v: &[Fe]) -> Option<Semilinear> {
        let lvl = self.levels.get(i)?;
        let j = *lvl.pos.get(&self.codec.encode(v))?;
        Some(self.fwd(i, j as usize).into_owned())
    }

    /// Strong generators of the stabilizer of the first `i` base points.
    pub fn level_generators(&self, i: usize) -> Vec<Semilinear> {
        match self.levels.get(i) {
            Some(l) => l.gens.iter().map(|&id| self.elems[id].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// The chain of the pointwise stabilizer of the first `i` base points.
    pub fn sub_chain(&self, i: usize) -> StabChain {
        StabChain {
            field: self.field.clone(),
            n: self.n,
            codec: self.codec,
            levels: self.levels[i.min(self.levels.len())..].to_vec(),
            elems: self.elems.clone(),
            elems_inv: self.elems_inv.clone(),
            cap: self.cap,
            completion: Completion::Inherited,
        }
    }

    pub fn summary(&self) -> ChainSummary {
        ChainSummary {
            base: self.base(),
            orbit_sizes: self.orbit_sizes(),
            order: self.order(),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "base length {}, orbit sizes {:?}, order {}",
            self.depth(),
            self.orbit_sizes(),
            self.order()
        )
    }
}

/// Product replacement with an accumulator, seeded by ChaCha8.
struct ProductReplacement {
    state: Vec<Semilinear>,
    acc: Semilinear,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    fn new(f: &crate::field::Field, gens: &[Semilinear], seed: u64) -> Self {
        let n = gens[0].dim();
        let size = gens.len().max(10);
        let state = (0..size).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = Self {
            state,
            acc: Semilinear::identity(n),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.next(f);
        }
        pr
    }

    fn next(&mut self, f: &crate::field::Field) -> Semilinear {
        let k = self.state.len();
        let i = (self.rng.next_u32() as usize) % k;
        let mut j = (self.rng.next_u32() as usize) % (k - 1);
        if j >= i {
            j += 1;
        }
        let bits = self.rng.next_u32();
        let other = if bits & 1 == 0 {
            self.state[j].clone()
        } else {
            self.state[j].inverse(f)
        };
        self.state[i] = if bits & 2 == 0 {
            self.state[i].compose(&other, f)
        } else {
            other.compose(&self.state[i], f)
        };
        self.acc = self.acc.compose(&self.state[i], f);
        self.acc.clone()
    }
}

//! Orbits, stabilizer chains, stabilizers, membership and index-2 kernels.

mod action;
mod chain;
mod orbit;

pub use action::{ActionPoint, PointAction, PointKey, PointKind, Scratch};
pub use chain::{ChainOptions, ChainSummary, Completion, StabChain};
pub use orbit::{orbit, Orbit};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::group::GroupHandle;
use crate::semilinear::Semilinear;

/// Orbit of `start` under the generators of `handle`.
pub fn group_orbit(handle: &GroupHandle, start: &ActionPoint, cap: usize) -> Result<Orbit> {
    orbit(
        handle.field(),
        handle.dim(),
        handle.generators(),
        start,
        cap,
    )
}

/// Full stabilizer of the vector `point`, with its chain and exact order.
pub fn stabilizer(handle: &GroupHandle, point: &[Fe]) -> Result<GroupHandle> {
    let chain = handle.rebased(vec![point.to_vec()])?;
    let sub = chain.sub_chain(1);
    let gens = chain.level_generators(1);
    let order = sub.order();
    Ok(GroupHandle::new(
        format!("{}_v", handle.name()),
        handle.field().clone(),
        handle.dim(),
        gens,
    )?
    .with_options(handle.options().clone())
    .with_claimed_order(order)
    .with_chain(sub))
}

#[derive(Clone, Debug)]
pub struct PairStabilizer {
    /// Fixes both points.
    pub pointwise: GroupHandle,
    /// Fixes the set; equal to `pointwise` when no swap exists.
    pub setwise: GroupHandle,
    /// An element interchanging the two points, if any.
    pub swap: Option<Semilinear>,
}

impl PairStabilizer {
    pub fn swap_exists(&self) -> bool {
        self.swap.is_some()
    }
}

/// Stabilizer of the set `{a, b}` of vectors.
pub fn setwise_pair_stabilizer(handle: &GroupHandle, a: &[Fe], b: &[Fe]) -> Result<PairStabilizer> {
    if a == b {
        return Err(Error::Precondition("pair needs two distinct points".into()));
    }
    let f = handle.field().clone();
    let chain = handle.rebased(vec![a.to_vec(), b.to_vec()])?;
    let sub = chain.sub_chain(2);
    let pointwise = GroupHandle::new(
        format!("{}_ab", handle.name()),
        f.clone(),
        handle.dim(),
        chain.level_generators(2),
    )?
    .with_options(handle.options().clone())
    .with_claimed_order(sub.order())
    .with_chain(sub);
    // g = k u with u: a -> b at level 0 and k in G_a; g swaps iff b^k = a^(u^-1)
    let swap = match chain.transversal(0, b) {
        None => None,
        Some(u) => {
            let target = u.inverse(&f).apply(&f, a);
            chain.transversal(1, &target).map(|k| k.compose(&u, &f))
        }
    };
    let setwise = match &swap {
        None => pointwise.clone(),
        Some(s) => {
            debug_assert_eq!(s.apply(&f, a), b);
            debug_assert_eq!(s.apply(&f, b), a);
            let order = pointwise.claimed_order().cloned().unwrap_or_default() * 2u32;
            pointwise
                .extended(
                    format!("{}_{{ab}}", handle.name()),
                    core::slice::from_ref(s),
                )?
                .with_claimed_order(order.clone())
                .with_order_bound(order)
        }
    };
    Ok(PairStabilizer {
        pointwise,
        setwise,
        swap,
    })
}

/// Membership by sifting through a complete chain.
pub fn membership(chain: &StabChain, g: &Semilinear) -> bool {
    chain.contains(g)
}

/// The kernel of a homomorphism `parity` onto C2 (or the trivial group).
/// Multiplicativity is checked on all products of generator pairs.
pub fn parity_kernel<P>(handle: &GroupHandle, parity: P) -> Result<GroupHandle>
where
    P: Fn(&Semilinear) -> Result<u8>,
{
    let f = handle.field().clone();
    let gens = handle.generators();
    let par: Vec<u8> = gens.iter().map(&parity).collect::<Result<_>>()?;
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if parity(&g.compose(h, &f))? != (par[i] + par[j]) % 2 {
                return Err(Error::CheckFailed(
                    "parity is not multiplicative on generator products".into(),
                ));
            }
        }
    }
    let name = format!("ker({})", handle.name());
    let Some(oi) = par.iter().position(|&p| p == 1) else {
        let mut k = handle.clone();
        k = GroupHandle::new(name, f.clone(), handle.dim(), k.generators().to_vec())?
            .with_options(handle.options().clone());
        return Ok(k);
    };
    // Schreier generators for the transversal {1, o}
    let o = &gens[oi];
    let oinv = o.inverse(&f);
    let mut kgens = Vec::new();
    for (s, &p) in gens.iter().zip(&par) {
        let cand = if p == 0 {
            [s.clone(), o.compose(s, &f).compose(&oinv, &f)]
        } else {
            [s.compose(&oinv, &f), o.compose(s, &f)]
        };
        for c in cand {
            if !c.is_identity() && !kgens.contains(&c) {
                kgens.push(c);
            }
        }
    }
    let expected = handle.order()? / BigUint::from(2u32);
    let k = GroupHandle::new(name, f, handle.dim(), kgens)?
        .with_options(handle.options().clone())
        .with_claimed_order(expected);
    k.check_gate()?;
    Ok(k)
}

//! Generated groups with a lazily built stabilizer chain.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::permgrp::{ChainOptions, StabChain};
use crate::semilinear::Semilinear;

#[derive(Clone, Debug)]
pub struct GroupHandle {
    name: String,
    field: FieldRef,
    dim: usize,
    generators: Vec<Semilinear>,
    claimed_order: Option<BigUint>,
    // set only when every generator is known to lie in a group of this order
    order_bound: Option<BigUint>,
    opts: ChainOptions,
    chain: OnceCell<StabChain>,
}

impl GroupHandle {
    pub fn new(
        name: impl Into<String>,
        field: FieldRef,
        dim: usize,
        generators: Vec<Semilinear>,
    ) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
            if g.frob() >= field.degree() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self {
            name: name.into(),
            field,
            dim,
            generators,
            claimed_order: None,
            order_bound: None,
            opts: ChainOptions::default(),
            chain: OnceCell::new(),
        })
    }

    pub fn with_claimed_order(mut self, order: BigUint) -> Self {
        self.claimed_order = Some(order);
        self
    }

    /// Records that the group lies inside a group of order `bound`, which lets
    /// chain construction stop as soon as it has certified that many elements.
    pub fn with_order_bound(mut self, bound: BigUint) -> Self {
        self.order_bound = Some(bound);
        self
    }

    pub fn with_options(mut self, opts: ChainOptions) -> Self {
        self.opts = opts;
        self
    }

    /// Installs an already complete chain for these generators.
    pub fn with_chain(self, chain: StabChain) -> Self {
        let _ = self.chain.set(chain);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Semilinear] {
        &self.generators
    }

    pub fn claimed_order(&self) -> Option<&BigUint> {
        self.claimed_order.as_ref()
    }

    pub fn options(&self) -> &ChainOptions {
        &self.opts
    }

    pub fn chain(&self) -> Result<&StabChain> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        let mut opts = self.opts.clone();
        if opts.order_bound.is_none() {
            opts.order_bound = self.order_bound.clone();
        }
        let c = StabChain::build(self.field.clone(), self.dim, &self.generators, &opts)?;
        let _ = self.chain.set(c);
        Ok(self.chain.get().expect("just set"))
    }

    pub fn order(&self) -> Result<BigUint> {
        Ok(self.chain()?.order())
    }

    /// Chain order must equal the claimed order.
    pub fn check_gate(&self) -> Result<BigUint> {
        let got = self.order()?;
        match &self.claimed_order {
            Some(c) if *c != got => Err(Error::OrderGate {
                what: self.name.clone(),
                got: format!("{got}"),
                expected: format!("{c}"),
            }),
            _ => Ok(got),
        }
    }

    pub fn contains(&self, g: &Semilinear) -> Result<bool> {
        Ok(self.chain()?.contains(g))
    }

    /// A fresh chain for the same group whose base starts with `base`.
    /// Uses the known order as the certifying bound.
    pub fn rebased(&self, base: Vec<Vec<Fe>>) -> Result<StabChain> {
        let order = self.order()?;
        let opts = self.opts.clone().with_base(base).with_bound(order);
        StabChain::build(self.field.clone(), self.dim, &self.generators, &opts)
    }

    /// A copy with extra generators (no chain, claimed order cleared).
    pub fn extended(&self, name: impl Into<String>, extra: &[Semilinear]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Ok(Self::new(name, self.field.clone(), self.dim, gens)?.with_options(self.opts.clone()))
    }
}

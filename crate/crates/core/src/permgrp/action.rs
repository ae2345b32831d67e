//! Points acted on by semilinear groups, and their canonical integer keys.

use alloc::vec;
use alloc::vec::Vec;

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::semilinear::Semilinear;

/// A point of one of the supported actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionPoint {
    Vector(Vec<Fe>),
    /// A 1-space, represented by any nonzero spanning vector.
    Line(Vec<Fe>),
    OrderedTuple(Vec<Vec<Fe>>),
    /// Stored sorted, so `{a, b}` and `{b, a}` compare equal.
    UnorderedPair(Vec<Fe>, Vec<Fe>),
}

impl ActionPoint {
    pub fn unordered_pair(a: Vec<Fe>, b: Vec<Fe>) -> Self {
        if a <= b {
            ActionPoint::UnorderedPair(a, b)
        } else {
            ActionPoint::UnorderedPair(b, a)
        }
    }

    pub fn kind(&self) -> PointKind {
        match self {
            ActionPoint::Vector(_) => PointKind::Vector,
            ActionPoint::Line(_) => PointKind::Line,
            ActionPoint::OrderedTuple(t) => PointKind::OrderedTuple(t.len()),
            ActionPoint::UnorderedPair(..) => PointKind::UnorderedPair,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Vector,
    Line,
    OrderedTuple(usize),
    UnorderedPair,
}

/// Canonical key of a point: vector codes, normalized for lines and sorted for pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKey {
    One(u64),
    Two(u64, u64),
    Many(Vec<u64>),
}

/// Encodes, decodes and moves points of one kind in a fixed ambient space.
#[derive(Clone, Debug)]
pub struct PointAction<'a> {
    field: &'a Field,
    codec: Codec,
    kind: PointKind,
}

impl<'a> PointAction<'a> {
    pub fn new(field: &'a Field, n: usize, kind: PointKind) -> Result<Self> {
        let codec = Codec::new(field.order(), n);
        if codec.size().is_none() {
            return Err(Error::OutOfRange(
                "ambient space too large to encode".into(),
            ));
        }
        Ok(Self { field, codec, kind })
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn codec(&self) -> Codec {
        self.codec
    }

    /// Scales `v` so its first nonzero coordinate is 1.
    pub fn normalize_line(&self, v: &mut [Fe]) {
        if let Some(&lead) = v.iter().find(|x| !x.is_zero()) {
            if lead != Fe::ONE {
                let s = self.field.inv(lead).expect("nonzero");
                for x in v.iter_mut() {
                    *x = self.field.mul(s, *x);
                }
            }
        }
    }

    pub fn key(&self, pt: &ActionPoint) -> Result<PointKey> {
        let n = self.codec.dim();
        let check = |v: &[Fe]| -> Result<()> {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            Ok(())
        };
        if pt.kind() != self.kind {
            return Err(Error::Precondition(
                "point kind does not match the action".into(),
            ));
        }
        Ok(match pt {
            ActionPoint::Vector(v) => {
                check(v)?;
                PointKey::One(self.codec.encode(v))
            }
            ActionPoint::Line(v) => {
                check(v)?;
                if v.iter().all(|x| x.is_zero()) {
                    return Err(Error::Precondition("a line needs a nonzero vector".into()));
                }
                let mut w = v.clone();
                self.normalize_line(&mut w);
                PointKey::One(self.codec.encode(&w))
            }
            ActionPoint::OrderedTuple(t) => {
                for v in t {
                    check(v)?;
                }
                let codes: Vec<u64> = t.iter().map(|v| self.codec.encode(v)).collect();
                match codes.len() {
                    1 => PointKey::One(codes[0]),
                    2 => PointKey::Two(codes[0], codes[1]),
                    _ => PointKey::Many(codes),
                }
            }
            ActionPoint::UnorderedPair(a, b) => {
                check(a)?;
                check(b)?;
                let (x, y) = (self.codec.encode(a), self.codec.encode(b));
                PointKey::Two(x.min(y), x.max(y))
            }
        })
    }

    pub fn point(&self, key: &PointKey) -> ActionPoint {
        let dec = |c: u64| self.codec.decode_vec(c);
        match (self.kind, key) {
            (PointKind::Vector, PointKey::One(c)) => ActionPoint::Vector(dec(*c)),
            (PointKind::Line, PointKey::One(c)) => ActionPoint::Line(dec(*c)),
            (PointKind::OrderedTuple(_), PointKey::One(c)) => {
                ActionPoint::OrderedTuple(vec![dec(*c)])
            }
            (PointKind::OrderedTuple(_), PointKey::Two(a, b)) => {
                ActionPoint::OrderedTuple(vec![dec(*a), dec(*b)])
            }
            (PointKind::OrderedTuple(_), PointKey::Many(cs)) => {
                ActionPoint::OrderedTuple(cs.iter().map(|&c| dec(c)).collect())
            }
            (PointKind::UnorderedPair, PointKey::Two(a, b)) => {
                ActionPoint::UnorderedPair(dec(*a), dec(*b))
            }
            _ => panic!("key does not match the action kind"),
        }
    }

    /// Image of a single vector code under `g`.
    #[inline]
    pub fn act_code(&self, g: &Semilinear, code: u64, buf: &mut [Fe], out: &mut [Fe]) -> u64 {
        self.codec.decode(code, buf);
        g.apply_into(self.field, buf, out);
        if self.kind == PointKind::Line {
            self.normalize_line(out);
        }
        self.codec.encode(out)
    }

    pub fn act(&self, g: &Semilinear, key: &PointKey, scratch: &mut Scratch) -> PointKey {
        let (buf, out) = (&mut scratch.a[..], &mut scratch.b[..]);
        match (self.kind, key) {
            (PointKind::UnorderedPair, PointKey::Two(a, b)) => {
                let x = self.act_code(g, *a, buf, out);
                let y = self.act_code(g, *b, buf, out);
                PointKey::Two(x.min(y), x.max(y))
            }
            (_, PointKey::One(a)) => PointKey::One(self.act_code(g, *a, buf, out)),
            (_, PointKey::Two(a, b)) => PointKey::Two(
                self.act_code(g, *a, buf, out),
                self.act_code(g, *b, buf, out),
            ),
            (_, PointKey::Many(cs)) => {
                PointKey::Many(cs.iter().map(|&c| self.act_code(g, c, buf, out)).collect())
            }
        }
    }

    pub fn scratch(&self) -> Scratch {
        Scratch {
            a: vec![Fe::ZERO; self.codec.dim()],
            b: vec![Fe::ZERO; self.codec.dim()],
        }
    }
}

/// Reusable buffers for [`PointAction::act`].
#[derive(Clone, Debug)]
pub struct Scratch {
    a: Vec<Fe>,
    b: Vec<Fe>,
}

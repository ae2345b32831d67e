use alloc::vec::Vec;

use hashbrown::HashSet;
use rustc_hash::FxBuildHasher;

use super::action::{ActionPoint, PointAction, PointKey};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::semilinear::Semilinear;

/// An orbit as a sorted list of canonical keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<PointKey>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, key: &PointKey) -> bool {
        self.points.binary_search(key).is_ok()
    }
}

/// Breadth-first orbit of `start` under `gens`, failing once more than `cap`
/// points have been seen.
pub fn orbit(
    field: &Field,
    n: usize,
    gens: &[Semilinear],
    start: &ActionPoint,
    cap: usize,
) -> Result<Orbit> {
    let action = PointAction::new(field, n, start.kind())?;
    let first = action.key(start)?;
    orbit_keys(&action, gens, first, cap)
}

pub(crate) fn orbit_keys(
    action: &PointAction<'_>,
    gens: &[Semilinear],
    first: PointKey,
    cap: usize,
) -> Result<Orbit> {
    let mut seen: HashSet<PointKey, FxBuildHasher> = HashSet::with_hasher(FxBuildHasher);
    let mut queue = Vec::new();
    let mut scratch = action.scratch();
    seen.insert(first.clone());
    queue.push(first);
    let mut head = 0;
    while head < queue.len() {
        let pt = queue[head].clone();
        head += 1;
        for g in gens {
            let img = action.act(g, &pt, &mut scratch);
            if !seen.contains(&img) {
                if queue.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(img.clone());
                queue.push(img);
            }
        }
    }
    queue.sort_unstable();
    Ok(Orbit { points: queue })
}

//! Structural checks of the four Q-word properties on a finite Delta-graph,
//! relative to the Q-ranking that annotates it.
//!
//! All checks are exact: full paths are enumerated on the layered DAG with
//! co-reachability pruning, and enumeration aborts with
//! [`Error::PathCapExceeded`] instead of truncating.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::QRanking;
use crate::state::{Role, StateId, StateSpace};
use crate::word::{FiniteWord, RunPath};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// A path together with the acceptance-pair indices it touches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathVisitProfile {
    pub path: RunPath,
    pub visited_g: BTreeSet<usize>,
    pub visited_b: BTreeSet<usize>,
}

impl PathVisitProfile {
    pub fn of(path: RunPath) -> Self {
        let mut visited_g = BTreeSet::new();
        let mut visited_b = BTreeSet::new();
        for s in &path.states {
            match s.role() {
                Role::G => {
                    visited_g.insert(s.index());
                }
                Role::B => {
                    visited_b.insert(s.index());
                }
                _ => {}
            }
        }
        PathVisitProfile {
            path,
            visited_g,
            visited_b,
        }
    }

    /// Obligations owed: G visited, B not.
    pub fn owed(&self) -> BTreeSet<usize> {
        self.visited_g
            .difference(&self.visited_b)
            .copied()
            .collect()
    }

    /// The position `i` in `order` (1-based) whose pattern this path matches:
    /// avoids `B(order[j])` for `j <= i`, visits `B(order[j])` for `j > i`,
    /// avoids `G(order[j])` for `j < i` and visits `G(order[i])`.
    pub fn pattern_slot(&self, order: &[usize]) -> Option<usize> {
        (1..=order.len()).find(|&i| {
            order.iter().enumerate().all(|(pos, &idx)| {
                let j = pos + 1;
                let b_ok = (j <= i) != self.visited_b.contains(&idx);
                let g_ok = match j.cmp(&i) {
                    std::cmp::Ordering::Less => !self.visited_g.contains(&idx),
                    std::cmp::Ordering::Equal => self.visited_g.contains(&idx),
                    std::cmp::Ordering::Greater => true,
                };
                b_ok && g_ok
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
    P3,
    P4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A path that violates the property.
    Path { profile: PathVisitProfile },
    /// No full path with the required visits exists between the two states.
    MissingPath { from: StateId, to: StateId },
    /// Wrong number of full paths along a track.
    PathCount {
        state: StateId,
        expected: usize,
        found: usize,
    },
    /// No path along the track matches slot `slot` of the index order.
    MissingSlot { state: StateId, slot: usize },
    /// A non-Q endpoint at the first or last level.
    BoundaryEdge {
        level: usize,
        src: StateId,
        dst: StateId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witnesses: Vec<PathVisitProfile>,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    fn pass(property: Property, witnesses: Vec<PathVisitProfile>) -> Self {
        PropertyReport {
            property,
            holds: true,
            witnesses,
            counterexample: None,
        }
    }

    fn fail(property: Property, witnesses: Vec<PathVisitProfile>, cex: Counterexample) -> Self {
        PropertyReport {
            property,
            holds: false,
            witnesses,
            counterexample: Some(cex),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verifier {
    pub path_cap: usize,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

fn same_space(w: &FiniteWord, f: &QRanking) -> Result<()> {
    if w.space() != f.space() {
        return Err(Error::SpaceMismatch {
            left: w.space(),
            right: f.space(),
        });
    }
    Ok(())
}

/// `alive[l][s]`: vertex `<s, l>` reaches `<to, |w|>`.
fn co_reachable(space: StateSpace, succ: &[Vec<Vec<usize>>], to: usize) -> Vec<Vec<bool>> {
    let mut alive = vec![vec![false; space.len()]; succ.len() + 1];
    alive[succ.len()][to] = true;
    for l in (0..succ.len()).rev() {
        for s in 0..space.len() {
            alive[l][s] = succ[l][s].iter().any(|&d| alive[l + 1][d]);
        }
    }
    alive
}

impl Verifier {
    pub fn new(path_cap: usize) -> Self {
        Verifier { path_cap }
    }

    /// Every full path from `<from, 0>` to `<to, |w|>`, in lexicographic order
    /// of state sequences.
    pub fn enumerate_full_paths(
        &self,
        w: &FiniteWord,
        from: StateId,
        to: StateId,
    ) -> Result<Vec<RunPath>> {
        let space = w.space();
        space.check(from)?;
        space.check(to)?;
        let succ = w.dense_successors();
        let alive = co_reachable(space, &succ, space.dense(to));
        let start = space.dense(from);
        let mut out = Vec::new();
        if !alive[0][start] {
            return Ok(out);
        }
        let mut path = vec![start];
        // next successor to try at each depth
        let mut cursor = vec![0usize];
        while let Some(depth) = cursor.len().checked_sub(1) {
            if depth == w.len() {
                if out.len() == self.path_cap {
                    return Err(Error::PathCapExceeded { cap: self.path_cap });
                }
                out.push(RunPath {
                    states: path.iter().map(|&d| space.state(d)).collect(),
                    start_level: 0,
                });
                cursor.pop();
                path.pop();
                continue;
            }
            let here = path[depth];
            let next = succ[depth][here][cursor[depth]..]
                .iter()
                .position(|&d| alive[depth + 1][d]);
            match next {
                Some(off) => {
                    let idx = cursor[depth] + off;
                    cursor[depth] = idx + 1;
                    path.push(succ[depth][here][idx]);
                    cursor.push(0);
                }
                None => {
                    cursor.pop();
                    path.pop();
                }
            }
        }
        Ok(out)
    }

    /// Some full path from `from` to `to`, if any.
    pub fn find_full_path(&self, w: &FiniteWord, from: StateId, to: StateId) -> Option<RunPath> {
        let space = w.space();
        if !space.contains(from) || !space.contains(to) {
            return None;
        }
        let succ = w.dense_successors();
        let alive = co_reachable(space, &succ, space.dense(to));
        let mut cur = space.dense(from);
        if !alive[0][cur] {
            return None;
        }
        let mut states = vec![from];
        for l in 0..w.len() {
            cur = *succ[l][cur].iter().find(|&&d| alive[l + 1][d])?;
            states.push(space.state(cur));
        }
        Some(RunPath {
            states,
            start_level: 0,
        })
    }

    /// For every `q, q'` with `r(q) > r(q')`, some full path `q -> q'` visits
    /// all of `B(1), ..., B(k)`.
    pub fn check_property_1(&self, w: &FiniteWord, f: &QRanking) -> Result<PropertyReport> {
        same_space(w, f)?;
        let k = f.k();
        let mut witnesses = Vec::new();
        for a in 0..f.n() {
            for b in 0..f.n() {
                if f.rank(a) <= f.rank(b) {
                    continue;
                }
                let (from, to) = (StateId::q(a), StateId::q(b));
                let found = self
                    .enumerate_full_paths(w, from, to)?
                    .into_iter()
                    .map(PathVisitProfile::of)
                    .find(|p| p.visited_b.len() == k);
                match found {
                    Some(p) => witnesses.push(p),
                    None => {
                        return Ok(PropertyReport::fail(
                            Property::P1,
                            witnesses,
                            Counterexample::MissingPath { from, to },
                        ))
                    }
                }
            }
        }
        Ok(PropertyReport::pass(Property::P1, witnesses))
    }

    /// For every `q`, exactly `k` full paths `q -> q`, the `i`-th of which owes
    /// obligation `h(q)[i]` in the prescribed pattern. Witnesses are listed
    /// per track, ordered by slot.
    pub fn check_property_2(&self, w: &FiniteWord, f: &QRanking) -> Result<PropertyReport> {
        same_space(w, f)?;
        let k = f.k();
        let mut witnesses = Vec::new();
        for i in 0..f.n() {
            let q = StateId::q(i);
            let order = f.index_order(i);
            let paths = self.enumerate_full_paths(w, q, q)?;
            if paths.len() != k {
                return Ok(PropertyReport::fail(
                    Property::P2,
                    witnesses,
                    Counterexample::PathCount {
                        state: q,
                        expected: k,
                        found: paths.len(),
                    },
                ));
            }
            let mut slots: Vec<Option<PathVisitProfile>> = vec![None; k];
            for profile in paths.into_iter().map(PathVisitProfile::of) {
                match profile.pattern_slot(order) {
                    Some(slot) if slots[slot - 1].is_none() => slots[slot - 1] = Some(profile),
                    _ => {
                        return Ok(PropertyReport::fail(
                            Property::P2,
                            witnesses,
                            Counterexample::Path { profile },
                        ))
                    }
                }
            }
            // k paths in k distinct slots fill every slot
            witnesses.extend(slots.into_iter().flatten());
        }
        Ok(PropertyReport::pass(Property::P2, witnesses))
    }

    /// Only Q-vertices have outgoing edges at the first level and incoming
    /// edges at the last level.
    pub fn check_property_3(&self, w: &FiniteWord) -> Result<PropertyReport> {
        let (first, last) = match w.letters() {
            [] => return Err(Error::EmptyWord),
            [one] => (one, one),
            [first, .., last] => (first, last),
        };
        if let Some(&(src, dst)) = first.edges().iter().find(|(s, _)| !s.is_q()) {
            return Ok(PropertyReport::fail(
                Property::P3,
                vec![],
                Counterexample::BoundaryEdge { level: 0, src, dst },
            ));
        }
        if let Some(&(src, dst)) = last.edges().iter().find(|(_, d)| !d.is_q()) {
            return Ok(PropertyReport::fail(
                Property::P3,
                vec![],
                Counterexample::BoundaryEdge {
                    level: w.len() - 1,
                    src,
                    dst,
                },
            ));
        }
        Ok(PropertyReport::pass(Property::P3, vec![]))
    }

    /// No full path `q -> q'` when `r(q) < r(q')`.
    pub fn check_property_4(&self, w: &FiniteWord, f: &QRanking) -> Result<PropertyReport> {
        same_space(w, f)?;
        for a in 0..f.n() {
            for b in 0..f.n() {
                if f.rank(a) >= f.rank(b) {
                    continue;
                }
                if let Some(path) = self.find_full_path(w, StateId::q(a), StateId::q(b)) {
                    return Ok(PropertyReport::fail(
                        Property::P4,
                        vec![],
                        Counterexample::Path {
                            profile: PathVisitProfile::of(path),
                        },
                    ));
                }
            }
        }
        Ok(PropertyReport::pass(Property::P4, vec![]))
    }

    /// All four properties, in order.
    pub fn check_all(&self, w: &FiniteWord, f: &QRanking) -> Result<Vec<PropertyReport>> {
        Ok(vec![
            self.check_property_1(w, f)?,
            self.check_property_2(w, f)?,
            self.check_property_3(w)?,
            self.check_property_4(w, f)?,
        ])
    }
}

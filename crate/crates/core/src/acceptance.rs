//! Acceptance of ultimately periodic words `u . v^omega` by a full Streett
//! automaton, with replayable witnesses.
//!
//! The lasso product has one vertex per `(state, position)`, positions
//! `0..|u|+|v|`, with the last period position wrapping back to `|u|`. A run
//! is accepting iff some reachable strongly connected vertex set with an
//! internal cycle projects onto a state set satisfying the condition. Streett
//! emptiness uses the recursive SCC refinement: inside a component, every
//! pair whose `G` is present but whose `B` is absent is bad, and the `G`
//! vertices of bad pairs are deleted before decomposing again.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automaton::FullStreettAutomaton;
use crate::error::{Error, Result};
use crate::scc::{is_nontrivial, tarjan};
use crate::state::{StateId, StateSpace};
use crate::word::{dense_adjacency, LassoWord, RunPath};

#[derive(Debug, Clone)]
pub struct ProductGraph {
    space: StateSpace,
    positions: usize,
    succ: Vec<Vec<usize>>,
    reachable: Vec<bool>,
    initial: Vec<usize>,
}

impl ProductGraph {
    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn vertex(&self, state: StateId, position: usize) -> usize {
        position * self.space.len() + self.space.dense(state)
    }

    pub fn state_of(&self, v: usize) -> StateId {
        self.space.state(v % self.space.len())
    }

    pub fn position_of(&self, v: usize) -> usize {
        v / self.space.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.reachable[v]
    }

    pub fn reachable_count(&self) -> usize {
        self.reachable.iter().filter(|&&r| r).count()
    }

    pub fn initial_vertices(&self) -> &[usize] {
        &self.initial
    }

    /// SCCs of the reachable part.
    pub fn reachable_sccs(&self) -> Vec<Vec<usize>> {
        tarjan(&self.succ, &self.reachable)
    }

    fn project(&self, vs: &[usize]) -> BTreeSet<StateId> {
        vs.iter().map(|&v| self.state_of(v)).collect()
    }

    /// Shortest path from `from` to `to` using only vertices in `allowed`.
    fn bfs(&self, from: &[usize], to: usize, allowed: &[bool]) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.succ.len()];
        let mut queue = VecDeque::new();
        for &s in from {
            if allowed[s] && parent[s] == usize::MAX {
                parent[s] = s;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![v];
                let mut cur = v;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.succ[v] {
                if allowed[w] && parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// A closed walk from `comp[0]` through every vertex of the strongly
    /// connected, nontrivial set `comp`.
    fn covering_cycle(&self, comp: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.succ.len()];
        for &v in comp {
            inside[v] = true;
        }
        let start = comp[0];
        let mut seen = vec![false; self.succ.len()];
        let mut walk = vec![start];
        seen[start] = true;
        let extend = |walk: &mut Vec<usize>, target: usize, seen: &mut Vec<bool>| {
            let cur = *walk.last().unwrap();
            // from `cur`, take at least one step so a lone self-loop is used
            let firsts: Vec<usize> = self.succ[cur]
                .iter()
                .copied()
                .filter(|&w| inside[w])
                .collect();
            let seg = self
                .bfs(&firsts, target, &inside)
                .expect("component is strongly connected");
            for &v in &seg {
                seen[v] = true;
            }
            walk.extend(seg);
        };
        for &v in &comp[1..] {
            if !seen[v] {
                extend(&mut walk, v, &mut seen);
            }
        }
        extend(&mut walk, start, &mut seen);
        walk
    }

    fn witness(&self, comp: &[usize], rabin_pair: Option<usize>) -> LassoWitness {
        let loop_vs = self.covering_cycle(comp);
        let stem_vs = self
            .bfs(&self.initial, loop_vs[0], &self.reachable)
            .expect("component is reachable");
        let stem = RunPath {
            states: stem_vs.iter().map(|&v| self.state_of(v)).collect(),
            start_level: 0,
        };
        let cycle = RunPath {
            states: loop_vs.iter().map(|&v| self.state_of(v)).collect(),
            start_level: stem.end_level(),
        };
        LassoWitness {
            stem,
            cycle,
            inf_states: self.project(comp),
            rabin_pair,
        }
    }
}

pub fn build_product(aut: &FullStreettAutomaton, lasso: &LassoWord) -> Result<ProductGraph> {
    let space = aut.space();
    if lasso.space() != space {
        return Err(Error::SpaceMismatch {
            left: space,
            right: lasso.space(),
        });
    }
    let u = lasso.prefix().len();
    let positions = u + lasso.period().len();
    let ns = space.len();
    let mut succ = vec![Vec::new(); ns * positions];
    for pos in 0..positions {
        let letter = lasso.letter_at(pos);
        let next = if pos + 1 < positions { pos + 1 } else { u };
        for (s, ds) in dense_adjacency(space, letter).into_iter().enumerate() {
            succ[pos * ns + s] = ds.into_iter().map(|d| next * ns + d).collect();
        }
    }
    let initial: Vec<usize> = aut.initial_states().map(|q| space.dense(q)).collect();
    let mut reachable = vec![false; succ.len()];
    let mut stack = initial.clone();
    for &v in &initial {
        reachable[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !reachable[w] {
                reachable[w] = true;
                stack.push(w);
            }
        }
    }
    Ok(ProductGraph {
        space,
        positions,
        succ,
        reachable,
        initial,
    })
}

/// A lasso-shaped run: `stem` from level 0, then `cycle` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoWitness {
    pub stem: RunPath,
    #[serde(rename = "loop")]
    pub cycle: RunPath,
    pub inf_states: BTreeSet<StateId>,
    /// For Rabin witnesses, the 1-based pair index that is satisfied.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rabin_pair: Option<usize>,
}

impl LassoWitness {
    /// Replays the run edge by edge on the lasso and checks that the cycle is
    /// a genuine loop of the product whose state set is `inf_states`.
    pub fn replays(&self, lasso: &LassoWord) -> bool {
        let letter_at = |l: usize| Some(lasso.letter_at(l));
        let (Some(&first), Some(&stem_end)) = (self.stem.states.first(), self.stem.states.last())
        else {
            return false;
        };
        let (Some(&c0), Some(&c_last)) = (self.cycle.states.first(), self.cycle.states.last())
        else {
            return false;
        };
        let closes = lasso.position(self.cycle.start_level)
            == lasso.position(self.cycle.end_level())
            && self.cycle.start_level >= lasso.prefix().len();
        self.stem.start_level == 0
            && first.is_q()
            && self.stem.follows(letter_at)
            && self.cycle.start_level == self.stem.end_level()
            && c0 == stem_end
            && c0 == c_last
            && self.cycle.states.len() > 1
            && closes
            && self.cycle.follows(letter_at)
            && self.cycle.states.iter().copied().collect::<BTreeSet<_>>() == self.inf_states
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptanceVerdict {
    pub accepted: bool,
    pub witness: Option<LassoWitness>,
}

impl AcceptanceVerdict {
    fn rejected() -> Self {
        AcceptanceVerdict {
            accepted: false,
            witness: None,
        }
    }

    fn accepted(w: LassoWitness) -> Self {
        AcceptanceVerdict {
            accepted: true,
            witness: Some(w),
        }
    }
}

/// Some run on `u . v^omega` satisfies `<G, B>_I`.
pub fn streett_accepts(aut: &FullStreettAutomaton, lasso: &LassoWord) -> Result<AcceptanceVerdict> {
    let product = build_product(aut, lasso)?;
    Ok(streett_on_product(aut, &product))
}

pub fn streett_on_product(aut: &FullStreettAutomaton, product: &ProductGraph) -> AcceptanceVerdict {
    let ns = aut.num_states();
    let masks: Vec<_> = (0..aut.index_size()).map(|i| aut.pair_masks(i)).collect();
    let mut work: VecDeque<Vec<usize>> = product.reachable_sccs().into();
    let mut alive = vec![false; product.vertex_count()];
    while let Some(comp) = work.pop_front() {
        if !is_nontrivial(&product.succ, &comp) {
            continue;
        }
        let bad: Vec<usize> = masks
            .iter()
            .enumerate()
            .filter(|(_, (g, b))| {
                comp.iter().any(|&v| g[v % ns]) && !comp.iter().any(|&v| b[v % ns])
            })
            .map(|(i, _)| i)
            .collect();
        if bad.is_empty() {
            return AcceptanceVerdict::accepted(product.witness(&comp, None));
        }
        let keep: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| !bad.iter().any(|&i| masks[i].0[v % ns]))
            .collect();
        for &v in &keep {
            alive[v] = true;
        }
        work.extend(tarjan(&product.succ, &alive));
        for &v in &keep {
            alive[v] = false;
        }
    }
    AcceptanceVerdict::rejected()
}

/// Some run on `u . v^omega` satisfies `[G, B]_I`.
pub fn rabin_accepts(aut: &FullStreettAutomaton, lasso: &LassoWord) -> Result<AcceptanceVerdict> {
    let product = build_product(aut, lasso)?;
    Ok(rabin_on_product(aut, &product))
}

pub fn rabin_on_product(aut: &FullStreettAutomaton, product: &ProductGraph) -> AcceptanceVerdict {
    let ns = aut.num_states();
    for i in 0..aut.index_size() {
        let (g, b) = aut.pair_masks(i);
        let alive: Vec<bool> = (0..product.vertex_count())
            .map(|v| product.reachable[v] && !b[v % ns])
            .collect();
        let found = tarjan(&product.succ, &alive)
            .into_iter()
            .find(|c| is_nontrivial(&product.succ, c) && c.iter().any(|&v| g[v % ns]));
        if let Some(comp) = found {
            return AcceptanceVerdict::accepted(product.witness(&comp, Some(i + 1)));
        }
    }
    AcceptanceVerdict::rejected()
}

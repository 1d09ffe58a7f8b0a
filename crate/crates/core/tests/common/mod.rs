//! Independent oracles shared by the integration tests. Nothing here reuses
//! the library's product construction, SCC code or path enumerator.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use streett_fool::{
    build_q_word, enumerate_q_rankings, FiniteWord, FullStreettAutomaton, LassoWord, Letter, QWord,
    StateId, StateSpace,
};

/// Explicit lasso product: vertex `pos * |S| + dense(s)`.
pub struct NaiveProduct {
    pub width: usize,
    pub states: Vec<StateId>,
    pub succ: Vec<Vec<usize>>,
    pub reachable: Vec<bool>,
}

impl NaiveProduct {
    pub fn new(lasso: &LassoWord) -> Self {
        let space = lasso.space();
        let states: Vec<StateId> = space.states().collect();
        let width = states.len();
        let u = lasso.prefix().len();
        let positions = u + lasso.period().len();
        let dense = |s: StateId| states.iter().position(|&x| x == s).unwrap();
        let mut succ = vec![Vec::new(); positions * width];
        for pos in 0..positions {
            let letter = if pos < u {
                &lasso.prefix().letters()[pos]
            } else {
                &lasso.period().letters()[pos - u]
            };
            let next = if pos + 1 == positions { u } else { pos + 1 };
            for &(s, d) in letter.edges() {
                succ[pos * width + dense(s)].push(next * width + dense(d));
            }
        }
        let mut reachable = vec![false; succ.len()];
        let mut stack: Vec<usize> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_q())
            .map(|(i, _)| i)
            .collect();
        for &v in &stack {
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
        NaiveProduct {
            width,
            states,
            succ,
            reachable,
        }
    }

    pub fn state(&self, v: usize) -> StateId {
        self.states[v % self.width]
    }

    /// `reach[v][w]`: nonempty path from `v` to `w` inside `allowed`.
    pub fn closure(&self, allowed: &[bool]) -> Vec<Vec<bool>> {
        let n = self.succ.len();
        let mut reach = vec![vec![false; n]; n];
        for v in (0..n).filter(|&v| allowed[v]) {
            let mut stack: Vec<usize> = self.succ[v]
                .iter()
                .copied()
                .filter(|&w| allowed[w])
                .collect();
            while let Some(w) = stack.pop() {
                if reach[v][w] {
                    continue;
                }
                reach[v][w] = true;
                stack.extend(
                    self.succ[w]
                        .iter()
                        .copied()
                        .filter(|&x| allowed[x] && !reach[v][x]),
                );
            }
        }
        reach
    }

    /// Maximal strongly connected sets (with an internal cycle) inside `allowed`.
    pub fn cyclic_sccs(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let reach = self.closure(allowed);
        let n = self.succ.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if !allowed[v] || done[v] || !reach[v][v] {
                continue;
            }
            let comp: Vec<usize> = (0..n)
                .filter(|&w| w == v || (reach[v][w] && reach[w][v]))
                .collect();
            for &w in &comp {
                done[w] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn projection(&self, set: &[usize]) -> BTreeSet<StateId> {
        set.iter().map(|&v| self.state(v)).collect()
    }

    /// Largest reachable cyclic component.
    pub fn max_reachable_scc(&self) -> usize {
        self.cyclic_sccs(&self.reachable)
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// Every reachable strongly connected vertex subset with an internal
    /// cycle, by enumerating subsets of each component. Components must have
    /// at most `limit` vertices.
    pub fn strongly_connected_subsets(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for comp in self.cyclic_sccs(&self.reachable) {
            assert!(comp.len() <= limit, "component of {} vertices", comp.len());
            for mask in 1u32..(1 << comp.len()) {
                let subset: Vec<usize> = (0..comp.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| comp[i])
                    .collect();
                if self.is_strongly_connected(&subset) {
                    out.push(subset);
                }
            }
        }
        out
    }

    fn is_strongly_connected(&self, subset: &[usize]) -> bool {
        let inside = |v: usize| subset.binary_search(&v).is_ok();
        let walk = |forward: bool| {
            let mut seen = vec![subset[0]];
            let mut stack = vec![subset[0]];
            let mut internal_edge = false;
            while let Some(v) = stack.pop() {
                for &w in subset {
                    let edge = if forward {
                        self.succ[v].contains(&w)
                    } else {
                        self.succ[w].contains(&v)
                    };
                    if edge {
                        internal_edge = true;
                        if !seen.contains(&w) {
                            seen.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            (seen.len() == subset.len(), internal_edge)
        };
        debug_assert!(subset.iter().all(|&v| inside(v)));
        let (fwd, edge) = walk(true);
        let (bwd, _) = walk(false);
        fwd && bwd && edge
    }
}

/// Streett condition evaluated directly from the pair definitions.
pub fn streett(aut: &FullStreettAutomaton, inf: &BTreeSet<StateId>) -> bool {
    aut.pairs()
        .iter()
        .all(|p| p.g.is_disjoint(inf) || !p.b.is_disjoint(inf))
}

pub fn rabin(aut: &FullStreettAutomaton, inf: &BTreeSet<StateId>) -> bool {
    aut.pairs()
        .iter()
        .any(|p| !p.g.is_disjoint(inf) && p.b.is_disjoint(inf))
}

/// Acceptance by enumeration of strongly connected vertex subsets.
pub fn subset_oracle(
    aut: &FullStreettAutomaton,
    lasso: &LassoWord,
    limit: usize,
    cond: fn(&FullStreettAutomaton, &BTreeSet<StateId>) -> bool,
) -> bool {
    let p = NaiveProduct::new(lasso);
    p.strongly_connected_subsets(limit)
        .iter()
        .any(|s| cond(aut, &p.projection(s)))
}

/// Acceptance by enumeration of state sets `X`: some cyclic component of
/// the product restricted to `X` projects onto exactly `X`.
pub fn state_subset_oracle(aut: &FullStreettAutomaton, lasso: &LassoWord) -> bool {
    let p = NaiveProduct::new(lasso);
    let w = p.width;
    assert!(w <= 16);
    (1u32..(1 << w)).any(|mask| {
        let x: BTreeSet<StateId> = (0..w)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| p.states[i])
            .collect();
        if !streett(aut, &x) {
            return false;
        }
        let allowed: Vec<bool> = (0..p.succ.len())
            .map(|v| p.reachable[v] && mask >> (v % w) & 1 == 1)
            .collect();
        p.cyclic_sccs(&allowed).iter().any(|c| p.projection(c) == x)
    })
}

/// Number of full paths `from -> to`, as a boolean matrix product.
pub fn path_count(word: &FiniteWord, from: StateId, to: StateId) -> BigUint {
    let states: Vec<StateId> = word.space().states().collect();
    let idx = |s: StateId| states.iter().position(|&x| x == s).unwrap();
    let mut row = vec![BigUint::zero(); states.len()];
    row[idx(from)] = BigUint::one();
    for letter in word.letters() {
        let mut next = vec![BigUint::zero(); states.len()];
        for &(s, d) in letter.edges() {
            let add = row[idx(s)].clone();
            next[idx(d)] += add;
        }
        row = next;
    }
    row[idx(to)].clone()
}

pub fn random_letter(rng: &mut ChaCha8Rng, space: StateSpace, density: f64) -> Letter {
    let states: Vec<StateId> = space.states().collect();
    let mut edges = Vec::new();
    for &s in &states {
        for &d in &states {
            if rng.gen_bool(density) {
                edges.push((s, d));
            }
        }
    }
    Letter::new(edges)
}

pub fn random_word(
    rng: &mut ChaCha8Rng,
    space: StateSpace,
    len: usize,
    density: f64,
) -> FiniteWord {
    let letters = (0..len)
        .map(|_| random_letter(rng, space, density))
        .collect();
    FiniteWord::new(space, letters).unwrap()
}

/// Random lasso over one of the small shapes whose product components stay
/// enumerable.
pub fn random_small_lasso(rng: &mut ChaCha8Rng) -> (FullStreettAutomaton, LassoWord) {
    const SHAPES: [(usize, usize, usize); 5] =
        [(1, 1, 3), (2, 1, 2), (1, 2, 2), (2, 2, 2), (3, 1, 2)];
    let (n, k, max_period) = SHAPES[rng.gen_range(0..SHAPES.len())];
    let space = StateSpace::new(n, k).unwrap();
    let density = rng.gen_range(0.08..0.45);
    let (u, v) = (rng.gen_range(0..=2), rng.gen_range(1..=max_period));
    let prefix = random_word(rng, space, u, density);
    let period = random_word(rng, space, v, density);
    (
        FullStreettAutomaton::build(n, k).unwrap(),
        LassoWord::new(prefix, period).unwrap(),
    )
}

pub fn fixtures(n: usize, k: usize) -> (FullStreettAutomaton, Vec<QWord>) {
    let aut = FullStreettAutomaton::build(n, k).unwrap();
    let words = enumerate_q_rankings(n, k)
        .unwrap()
        .map(|f| build_q_word(&aut, &f).unwrap())
        .collect();
    (aut, words)
}

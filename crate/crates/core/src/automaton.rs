//! The family of full Streett automata and their acceptance pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{StateId, StateSpace};

/// One Streett/Rabin pair `(G(i), B(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptancePair {
    pub g: BTreeSet<StateId>,
    pub b: BTreeSet<StateId>,
}

impl AcceptancePair {
    pub fn is_empty(&self) -> bool {
        self.g.is_empty() && self.b.is_empty()
    }
}

/// A full Streett automaton: alphabet `2^(S x S)`, initial states `Q`, and
/// the acceptance condition `<G, B>_I`.
///
/// The state set is fixed by [`StateSpace`]; `pairs` may be longer than
/// `space.k` after [`FullStreettAutomaton::pad_index`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullStreettAutomaton {
    space: StateSpace,
    pairs: Vec<AcceptancePair>,
}

impl FullStreettAutomaton {
    /// Builds the `(n, k)` member of the family: `G(i) = {g_i}`, `B(i) = {b_i}`.
    pub fn build(n: usize, k: usize) -> Result<Self> {
        let space = StateSpace::new(n, k)?;
        let pairs = (1..=k)
            .map(|i| AcceptancePair {
                g: BTreeSet::from([StateId::g(i)]),
                b: BTreeSet::from([StateId::b(i)]),
            })
            .collect();
        Ok(FullStreettAutomaton { space, pairs })
    }

    /// Extends the index set to `[1..k_new]` with empty pairs.
    pub fn pad_index(&self, k_new: usize) -> Result<Self> {
        if k_new < self.pairs.len() {
            return Err(Error::PadBelowIndex {
                current: self.pairs.len(),
                requested: k_new,
            });
        }
        let mut pairs = self.pairs.clone();
        pairs.resize(
            k_new,
            AcceptancePair {
                g: BTreeSet::new(),
                b: BTreeSet::new(),
            },
        );
        Ok(FullStreettAutomaton {
            space: self.space,
            pairs,
        })
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    /// Index size `|I|`, i.e. the number of acceptance pairs.
    pub fn index_size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[AcceptancePair] {
        &self.pairs
    }

    pub fn num_states(&self) -> usize {
        self.space.len()
    }

    pub fn initial_states(&self) -> impl Iterator<Item = StateId> {
        self.space.q_states()
    }

    /// Dense membership masks `(in_g, in_b)` for pair `i` (0-based).
    pub(crate) fn pair_masks(&self, i: usize) -> (Vec<bool>, Vec<bool>) {
        let mut g = vec![false; self.space.len()];
        let mut b = vec![false; self.space.len()];
        for &s in &self.pairs[i].g {
            g[self.space.dense(s)] = true;
        }
        for &s in &self.pairs[i].b {
            b[self.space.dense(s)] = true;
        }
        (g, b)
    }

    /// Streett condition on a set of states visited infinitely often.
    pub fn streett_holds(&self, inf: &BTreeSet<StateId>) -> bool {
        self.pairs
            .iter()
            .all(|p| p.g.is_disjoint(inf) || !p.b.is_disjoint(inf))
    }

    /// Rabin condition `[G, B]_I` on a set of states visited infinitely often.
    pub fn rabin_holds(&self, inf: &BTreeSet<StateId>) -> bool {
        self.rabin_index(inf).is_some()
    }

    /// First pair index (0-based) whose Rabin condition holds on `inf`.
    pub fn rabin_index(&self, inf: &BTreeSet<StateId>) -> Option<usize> {
        self.pairs
            .iter()
            .position(|p| !p.g.is_disjoint(inf) && p.b.is_disjoint(inf))
    }

    /// `B` restricted to nonempty pairs is injective.
    pub fn b_injective(&self) -> bool {
        let nonempty: Vec<_> = self.pairs.iter().filter(|p| !p.is_empty()).collect();
        let distinct: BTreeSet<_> = nonempty.iter().map(|p| &p.b).collect();
        distinct.len() == nonempty.len()
    }
}

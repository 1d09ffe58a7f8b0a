//! Letters, finite words and lasso words over the full alphabet `2^(S x S)`.
//!
//! In a full automaton a letter is its own unit run graph, so a finite word is
//! exactly a layered Delta-graph with `|w| + 1` levels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{StateId, StateSpace};

pub type Edge = (StateId, StateId);

/// A vertex `<s, l>` of a Delta-graph.
pub type Vertex = (StateId, usize);

/// A letter: an edge relation on `S`, kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    edges: Vec<Edge>,
}

impl Letter {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Letter { edges }
    }

    /// `Id(X)` for the given states.
    pub fn identity(states: impl IntoIterator<Item = StateId>) -> Self {
        Letter::new(states.into_iter().map(|s| (s, s)))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn with(&self, edge: Edge) -> Letter {
        Letter::new(self.edges.iter().copied().chain([edge]))
    }

    pub fn without(&self, edge: Edge) -> Letter {
        Letter {
            edges: self.edges.iter().copied().filter(|&e| e != edge).collect(),
        }
    }

    fn check(&self, space: StateSpace) -> Result<()> {
        for &(s, d) in &self.edges {
            space.check(s)?;
            space.check(d)?;
        }
        Ok(())
    }
}

impl fmt::Display for Letter {
    /// Comma-separated `src>dst` tokens in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, d)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}>{d}")?;
        }
        Ok(())
    }
}

/// A finite word (equivalently a finite Delta-graph) over one state space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    space: StateSpace,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(space: StateSpace, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            l.check(space)?;
        }
        Ok(FiniteWord { space, letters })
    }

    pub fn empty(space: StateSpace) -> Self {
        FiniteWord {
            space,
            letters: Vec::new(),
        }
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of levels of the Delta-graph.
    pub fn levels(&self) -> usize {
        self.letters.len() + 1
    }

    /// `G_w . G_w' = G_{w.w'}`: the last level of `self` is merged with the
    /// first level of `other`.
    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(FiniteWord {
            space: self.space,
            letters,
        })
    }

    pub fn repeat(&self, times: usize) -> FiniteWord {
        FiniteWord {
            space: self.space,
            letters: (0..times)
                .flat_map(|_| self.letters.iter().cloned())
                .collect(),
        }
    }

    /// Edges between `level` and `level + 1`.
    pub fn delta_graph_edges(&self, level: usize) -> Result<Vec<(Vertex, Vertex)>> {
        let letter = self.letters.get(level).ok_or(Error::LevelOutOfRange {
            level,
            len: self.len(),
        })?;
        Ok(letter
            .edges()
            .iter()
            .map(|&(s, d)| ((s, level), (d, level + 1)))
            .collect())
    }

    pub fn edge_count(&self) -> usize {
        self.letters.iter().map(Letter::len).sum()
    }

    /// Replaces the letter at `level`.
    pub fn with_letter(&self, level: usize, letter: Letter) -> Result<FiniteWord> {
        if level >= self.len() {
            return Err(Error::LevelOutOfRange {
                level,
                len: self.len(),
            });
        }
        letter.check(self.space)?;
        let mut letters = self.letters.clone();
        letters[level] = letter;
        Ok(FiniteWord {
            space: self.space,
            letters,
        })
    }

    /// Per-letter dense successor lists: `succ[level][s]`.
    pub(crate) fn dense_successors(&self) -> Vec<Vec<Vec<usize>>> {
        self.letters
            .iter()
            .map(|l| dense_adjacency(self.space, l))
            .collect()
    }
}

pub(crate) fn dense_adjacency(space: StateSpace, letter: &Letter) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); space.len()];
    for &(s, d) in letter.edges() {
        adj[space.dense(s)].push(space.dense(d));
    }
    adj
}

/// An ultimately periodic word `prefix . period^omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoWord {
    prefix: FiniteWord,
    period: FiniteWord,
}

impl LassoWord {
    pub fn new(prefix: FiniteWord, period: FiniteWord) -> Result<Self> {
        if prefix.space() != period.space() {
            return Err(Error::SpaceMismatch {
                left: prefix.space(),
                right: period.space(),
            });
        }
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// `period^omega` with an empty prefix.
    pub fn periodic(period: FiniteWord) -> Result<Self> {
        LassoWord::new(FiniteWord::empty(period.space()), period)
    }

    pub fn prefix(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    pub fn space(&self) -> StateSpace {
        self.period.space()
    }

    /// The letter read at `level` of the infinite word.
    pub fn letter_at(&self, level: usize) -> &Letter {
        let u = self.prefix.len();
        if level < u {
            &self.prefix.letters()[level]
        } else {
            &self.period.letters()[(level - u) % self.period.len()]
        }
    }

    /// Position in the lasso product reached at `level`.
    pub fn position(&self, level: usize) -> usize {
        let u = self.prefix.len();
        if level < u {
            level
        } else {
            u + (level - u) % self.period.len()
        }
    }
}

/// A finite run segment: `states[i]` sits at level `start_level + i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunPath {
    pub states: Vec<StateId>,
    pub start_level: usize,
}

impl RunPath {
    pub fn end_level(&self) -> usize {
        self.start_level + self.states.len().saturating_sub(1)
    }

    /// Whether every step is an edge of the letter read at its level.
    pub fn follows<'a>(&self, letter_at: impl Fn(usize) -> Option<&'a Letter>) -> bool {
        self.states
            .windows(2)
            .enumerate()
            .all(|(i, w)| letter_at(self.start_level + i).is_some_and(|l| l.contains((w[0], w[1]))))
    }

    pub fn is_full_path_of(&self, word: &FiniteWord) -> bool {
        self.start_level == 0
            && self.states.len() == word.levels()
            && self.follows(|l| word.letters().get(l))
    }

    pub fn visits(&self, s: StateId) -> bool {
        self.states.contains(&s)
    }
}

impl fmt::Display for RunPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "<{}, {}>", s, self.start_level + i)?;
        }
        Ok(())
    }
}

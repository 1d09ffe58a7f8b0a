//! States of a full Streett automaton and the state space they live in.
//!
//! A state space with parameters `(n, k)` holds `q0..q(n-1)`, the pair pools
//! `g1..gk` and `b1..bk`, and the bypass state `t`, for `n + 2k + 1` states in
//! total. States are ordered role-major (`Q < G < B < T`), index-minor, and the
//! same order defines the dense index used by the graph algorithms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Q,
    G,
    B,
    T,
}

/// A state name such as `q0`, `g2`, `b1` or `t`.
///
/// Q-states are indexed from 0, pair states from 1; `t` always has index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId {
    role: Role,
    index: u32,
}

impl StateId {
    pub const T: StateId = StateId {
        role: Role::T,
        index: 0,
    };

    pub fn q(i: usize) -> Self {
        StateId {
            role: Role::Q,
            index: i as u32,
        }
    }

    pub fn g(i: usize) -> Self {
        StateId {
            role: Role::G,
            index: i as u32,
        }
    }

    pub fn b(i: usize) -> Self {
        StateId {
            role: Role::B,
            index: i as u32,
        }
    }

    pub fn role(self) -> Role {
        self.role
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_q(self) -> bool {
        self.role == Role::Q
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Q => write!(f, "q{}", self.index),
            Role::G => write!(f, "g{}", self.index),
            Role::B => write!(f, "b{}", self.index),
            Role::T => f.write_str("t"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseStateError(pub String);

impl fmt::Display for ParseStateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid state name `{}`", self.0)
    }
}

impl std::error::Error for ParseStateError {}

impl FromStr for StateId {
    type Err = ParseStateError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "t" {
            return Ok(StateId::T);
        }
        let err = || ParseStateError(s.to_string());
        let mut chars = s.chars();
        let role = match chars.next() {
            Some('q') => Role::Q,
            Some('g') => Role::G,
            Some('b') => Role::B,
            _ => return Err(err()),
        };
        let digits = chars.as_str();
        // canonical decimal only: no sign, no leading zeros
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
        {
            return Err(err());
        }
        let index: u32 = digits.parse().map_err(|_| err())?;
        Ok(StateId { role, index })
    }
}

impl Serialize for StateId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StateId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The `(n, k)` parameters that fix a state set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateSpace {
    pub n: usize,
    pub k: usize,
}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

impl StateSpace {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::EmptyFamily { n, k });
        }
        Ok(StateSpace { n, k })
    }

    /// `|S| = n + 2k + 1`.
    pub fn len(&self) -> usize {
        self.n + 2 * self.k + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: StateId) -> bool {
        match s.role {
            Role::Q => s.index() < self.n,
            Role::G | Role::B => (1..=self.k).contains(&s.index()),
            Role::T => s.index == 0,
        }
    }

    pub fn check(&self, s: StateId) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: s.to_string(),
                space: *self,
            })
        }
    }

    /// Position of `s` in the canonical order. `s` must belong to the space.
    pub fn dense(&self, s: StateId) -> usize {
        debug_assert!(self.contains(s));
        match s.role {
            Role::Q => s.index(),
            Role::G => self.n + s.index() - 1,
            Role::B => self.n + self.k + s.index() - 1,
            Role::T => self.n + 2 * self.k,
        }
    }

    pub fn state(&self, dense: usize) -> StateId {
        let (n, k) = (self.n, self.k);
        if dense < n {
            StateId::q(dense)
        } else if dense < n + k {
            StateId::g(dense - n + 1)
        } else if dense < n + 2 * k {
            StateId::b(dense - n - k + 1)
        } else {
            debug_assert_eq!(dense, n + 2 * k);
            StateId::T
        }
    }

    /// All states in canonical order: `q0..q(n-1), g1..gk, b1..bk, t`.
    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.len()).map(move |d| self.state(d))
    }

    pub fn q_states(&self) -> impl Iterator<Item = StateId> {
        (0..self.n).map(StateId::q)
    }
}

//! Q-rankings `f = <r, h>`: a bijective numeric rank `r: Q -> [1..n]` and, per
//! Q-state, a permutation `h(q)` of the index set `[1..k]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::state::{StateId, StateSpace};

/// `r[i] = r(q_i)` and `h[i] = h(q_i)`, both 1-based values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRanking {
    r: Vec<usize>,
    h: Vec<Vec<usize>>,
}

impl QRanking {
    pub fn new(r: Vec<usize>, h: Vec<Vec<usize>>) -> Result<Self> {
        let n = r.len();
        if n == 0 {
            return Err(Error::InvalidRanking("Q must be nonempty".into()));
        }
        if !is_permutation(&r) {
            return Err(Error::InvalidRanking(format!(
                "r={r:?} is not a bijection onto [1..{n}]"
            )));
        }
        if h.len() != n {
            return Err(Error::InvalidRanking(format!(
                "h has {} entries, expected {n}",
                h.len()
            )));
        }
        let k = h[0].len();
        if k == 0 {
            return Err(Error::InvalidRanking("index set must be nonempty".into()));
        }
        for (i, p) in h.iter().enumerate() {
            if p.len() != k || !is_permutation(p) {
                return Err(Error::InvalidRanking(format!(
                    "h(q{i})={p:?} is not a permutation of [1..{k}]"
                )));
            }
        }
        Ok(QRanking { r, h })
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn k(&self) -> usize {
        self.h[0].len()
    }

    pub fn space(&self) -> StateSpace {
        StateSpace {
            n: self.n(),
            k: self.k(),
        }
    }

    /// `r(q_i)`.
    pub fn rank(&self, i: usize) -> usize {
        self.r[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.r
    }

    /// `h(q_i)` as a slice; `h(q_i)[j]` is `self.index_order(i)[j - 1]`.
    pub fn index_order(&self, i: usize) -> &[usize] {
        &self.h[i]
    }

    pub fn index_orders(&self) -> &[Vec<usize>] {
        &self.h
    }

    /// Q-states ordered by strictly decreasing rank.
    pub fn by_decreasing_rank(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.r[b].cmp(&self.r[a]));
        order
    }

    pub fn rank_of(&self, q: StateId) -> Option<usize> {
        q.is_q().then(|| self.r.get(q.index()).copied()).flatten()
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter()
        .all(|&x| (1..=v.len()).contains(&x) && !std::mem::replace(&mut seen[x - 1], true))
}

impl fmt::Display for QRanking {
    /// `r=[2,1,3];h=[[1,2],[1,2],[2,1]]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
            f.write_str("[")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")
        }
        f.write_str("r=")?;
        list(f, &self.r)?;
        f.write_str(";h=[")?;
        for (i, p) in self.h.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            list(f, p)?;
        }
        f.write_str("]")
    }
}

impl FromStr for QRanking {
    type Err = Error;

    /// Accepts the canonical form, ignoring ASCII whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_ascii_whitespace()).collect();
        let bad = |msg: &str| Error::parse(1, format!("ranking: {msg}"));
        let rest = compact
            .strip_prefix("r=")
            .ok_or_else(|| bad("expected `r=`"))?;
        let (r_part, h_part) = rest
            .split_once(";h=")
            .ok_or_else(|| bad("expected `;h=`"))?;
        let r = parse_list(r_part).ok_or_else(|| bad("malformed r list"))?;
        let inner = h_part
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| bad("malformed h list"))?;
        let mut h = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let end = rest.find(']').ok_or_else(|| bad("unterminated h entry"))?;
            h.push(parse_list(&rest[..=end]).ok_or_else(|| bad("malformed h entry"))?);
            rest = &rest[end + 1..];
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad("trailing comma"));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad("expected `,` between h entries"));
            }
        }
        QRanking::new(r, h)
    }
}

fn parse_list(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            if x.is_empty()
                || (x.len() > 1 && x.starts_with('0'))
                || !x.bytes().all(|b| b.is_ascii_digit())
            {
                None
            } else {
                x.parse().ok()
            }
        })
        .collect()
}

/// Rearranges `v` into its lexicographic successor; on the last permutation
/// resets to ascending order and returns `false`.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.reverse();
        return false;
    };
    let pivot = i - 1;
    let j = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
    v.swap(pivot, j);
    v[i..].reverse();
    true
}

/// Lazy stream of all Q-rankings for `(n, k)`: lexicographic on `r`, then on
/// `h(q0), ..., h(q(n-1))`.
#[derive(Debug, Clone)]
pub struct QRankings {
    r: Vec<usize>,
    h: Vec<Vec<usize>>,
    done: bool,
}

impl Iterator for QRankings {
    type Item = QRanking;

    fn next(&mut self) -> Option<QRanking> {
        if self.done {
            return None;
        }
        let item = QRanking {
            r: self.r.clone(),
            h: self.h.clone(),
        };
        let mut carried = true;
        for p in self.h.iter_mut().rev() {
            if next_permutation(p) {
                carried = false;
                break;
            }
        }
        if carried && !next_permutation(&mut self.r) {
            self.done = true;
        }
        Some(item)
    }
}

pub fn enumerate_q_rankings(n: usize, k: usize) -> Result<QRankings> {
    StateSpace::new(n, k)?;
    Ok(QRankings {
        r: (1..=n).collect(),
        h: vec![(1..=k).collect(); n],
        done: false,
    })
}

/// `n! * (k!)^n`, exactly.
pub fn count_q_rankings(n: usize, k: usize) -> BigUint {
    let fact = |m: usize| (1..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    fact(n) * num_traits::pow(fact(k), n)
}

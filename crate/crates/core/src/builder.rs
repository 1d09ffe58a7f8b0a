//! Canonical R-words, H-words and Q-words.
//!
//! Every letter is `Id(Q)` (plus `Id(T)` where the bypass track is live) with
//! one special edge, and some letters drop a horizontal edge so that the
//! matching Q-track is broken. The R-word moves down the numeric ranks through
//! `b1..bk`; the H-word gives each Q-track exactly `k` parallel full paths,
//! the `j`-th of which owes obligation `h(q)[j]`.

use std::fmt;

use crate::automaton::FullStreettAutomaton;
use crate::error::{Error, Result};
use crate::ranking::QRanking;
use crate::state::{StateId, StateSpace};
use crate::word::{FiniteWord, Letter};

/// Named letter shapes. Q indices are 0-based, pair indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterTemplate {
    IdQ,
    IdT,
    /// `Id(Q) [+ Id(T)] + <q_q, b_b>`
    QToB {
        q: usize,
        b: usize,
        bypass: bool,
    },
    /// `Id(Q) [+ Id(T)] + <b_from, b_to>`
    BToB {
        from: usize,
        to: usize,
        bypass: bool,
    },
    /// `Id(Q) + <b_b, q_q>`, closing one R-word part.
    BToQ {
        b: usize,
        q: usize,
    },
    /// `Id(Q) + Id(T) + <b_b, g_g>`
    BToG {
        b: usize,
        g: usize,
    },
    /// `Id(Q) + Id(T) + <q_q, g_g>`
    QToG {
        q: usize,
        g: usize,
    },
    /// `Id(Q) + Id(T) + <g_g, t>`
    GToT {
        g: usize,
    },
    /// `Id(Q) + Id(T) + <q_q, g_g> - <q_q, q_q>`
    QToMinusG {
        q: usize,
        g: usize,
    },
    /// `Id(Q) + Id(T) + <g_g, t> - <q_q, q_q>`
    GToMinusT {
        g: usize,
        q: usize,
    },
    /// `Id(Q) + <t, q_q> - <q_q, q_q>`
    TToMinusQ {
        q: usize,
    },
}

impl LetterTemplate {
    pub fn instantiate(&self, space: StateSpace) -> Letter {
        use LetterTemplate::*;
        let id_q = space.q_states().map(|q| (q, q));
        let tt = (StateId::T, StateId::T);
        let (q, g, b, t) = (StateId::q, StateId::g, StateId::b, StateId::T);
        let mut edges: Vec<_> = id_q.collect();
        let bypass = match *self {
            IdQ => false,
            IdT => return Letter::new([tt]),
            QToB { q: i, b: j, bypass } => {
                edges.push((q(i), b(j)));
                bypass
            }
            BToB { from, to, bypass } => {
                edges.push((b(from), b(to)));
                bypass
            }
            BToQ { b: j, q: i } => {
                edges.push((b(j), q(i)));
                false
            }
            BToG { b: i, g: j } => {
                edges.push((b(i), g(j)));
                true
            }
            QToG { q: i, g: j } => {
                edges.push((q(i), g(j)));
                true
            }
            GToT { g: j } => {
                edges.push((g(j), t));
                true
            }
            QToMinusG { q: i, g: j } => {
                edges.retain(|&e| e != (q(i), q(i)));
                edges.push((q(i), g(j)));
                true
            }
            GToMinusT { g: j, q: i } => {
                edges.retain(|&e| e != (q(i), q(i)));
                edges.push((g(j), t));
                true
            }
            TToMinusQ { q: i } => {
                edges.retain(|&e| e != (q(i), q(i)));
                edges.push((t, q(i)));
                false
            }
        };
        if bypass {
            edges.push(tt);
        }
        Letter::new(edges)
    }
}

impl fmt::Display for LetterTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LetterTemplate::*;
        match *self {
            IdQ => write!(f, "Id(Q)"),
            IdT => write!(f, "Id(T)"),
            QToB { q, b, .. } => write!(f, "Q({q})ToB({b})"),
            BToB { from, to, .. } => write!(f, "B({from})ToB({to})"),
            BToQ { b, q } => write!(f, "B({b})ToQ({q})"),
            BToG { b, g } => write!(f, "B({b})ToG({g})"),
            QToG { q, g } => write!(f, "Q({q})ToG({g})"),
            GToT { g } => write!(f, "G({g})ToT"),
            QToMinusG { q, g } => write!(f, "Q({q})To-G({g})"),
            GToMinusT { g, .. } => write!(f, "G({g})To-T"),
            TToMinusQ { q } => write!(f, "TTo-Q({q})"),
        }
    }
}

fn check_numeric(r: &[usize]) -> Result<()> {
    let mut sorted = r.to_vec();
    sorted.sort_unstable();
    if r.is_empty() || sorted.iter().copied().ne(1..=r.len()) {
        return Err(Error::InvalidRanking(format!(
            "r={r:?} is not a bijection onto [1..{}]",
            r.len()
        )));
    }
    Ok(())
}

/// Letter sequence of the R-word for numeric ranking `r` (`r[i] = r(q_i)`).
pub fn r_word_templates(k: usize, r: &[usize]) -> Result<Vec<LetterTemplate>> {
    check_numeric(r)?;
    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by(|&a, &b| r[b].cmp(&r[a]));
    let mut out = Vec::with_capacity((r.len() - 1) * (k + 1));
    for part in order.windows(2) {
        out.push(LetterTemplate::QToB {
            q: part[0],
            b: 1,
            bypass: false,
        });
        out.extend((1..k).map(|i| LetterTemplate::BToB {
            from: i,
            to: i + 1,
            bypass: false,
        }));
        out.push(LetterTemplate::BToQ { b: k, q: part[1] });
    }
    Ok(out)
}

/// Letter sequence of the H-word for index ranking `h` (`h[i] = h(q_i)`).
pub fn h_word_templates(k: usize, h: &[Vec<usize>]) -> Result<Vec<LetterTemplate>> {
    use LetterTemplate::*;
    for (i, p) in h.iter().enumerate() {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted.iter().copied().ne(1..=k) {
            return Err(Error::InvalidRanking(format!(
                "h(q{i})={p:?} is not a permutation of [1..{k}]"
            )));
        }
    }
    let mut out = Vec::new();
    for (i, p) in h.iter().enumerate() {
        // p[j - 1] is h(q_i)[j]
        let at = |j: usize| p[j - 1];
        for j in 1..k {
            out.push(QToB {
                q: i,
                b: at(j + 1),
                bypass: true,
            });
            out.extend((j + 1..k).map(|m| BToB {
                from: at(m),
                to: at(m + 1),
                bypass: true,
            }));
            out.push(BToG { b: at(k), g: at(j) });
            out.push(GToT { g: at(j) });
        }
        out.push(QToMinusG { q: i, g: at(k) });
        out.push(GToMinusT { g: at(k), q: i });
        out.push(TToMinusQ { q: i });
    }
    Ok(out)
}

fn realize(space: StateSpace, templates: &[LetterTemplate]) -> Result<FiniteWord> {
    FiniteWord::new(
        space,
        templates.iter().map(|t| t.instantiate(space)).collect(),
    )
}

fn check_space(aut: &FullStreettAutomaton, n: usize) -> Result<()> {
    if aut.n() != n {
        return Err(Error::SpaceMismatch {
            left: aut.space(),
            right: StateSpace {
                n,
                k: aut.space().k,
            },
        });
    }
    Ok(())
}

/// `(n-1)(k+1)` letters; empty for `n = 1`.
pub fn build_r_word(aut: &FullStreettAutomaton, r: &[usize]) -> Result<FiniteWord> {
    check_space(aut, r.len())?;
    realize(aut.space(), &r_word_templates(aut.space().k, r)?)
}

/// `n * ((k-1)k/2 + 2(k-1) + 3)` letters.
pub fn build_h_word(aut: &FullStreettAutomaton, h: &[Vec<usize>]) -> Result<FiniteWord> {
    check_space(aut, h.len())?;
    realize(aut.space(), &h_word_templates(aut.space().k, h)?)
}

/// A Q-word together with the ranking that annotates its levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QWord {
    pub ranking: QRanking,
    pub word: FiniteWord,
    /// Length of the R-word prefix; the H-word follows.
    pub r_len: usize,
}

impl QWord {
    pub fn r_word(&self) -> FiniteWord {
        FiniteWord::new(
            self.word.space(),
            self.word.letters()[..self.r_len].to_vec(),
        )
        .expect("prefix of a valid word")
    }

    pub fn h_word(&self) -> FiniteWord {
        FiniteWord::new(
            self.word.space(),
            self.word.letters()[self.r_len..].to_vec(),
        )
        .expect("suffix of a valid word")
    }
}

/// `G_f = G_r . G_h`.
pub fn build_q_word(aut: &FullStreettAutomaton, f: &QRanking) -> Result<QWord> {
    if f.space() != aut.space() {
        return Err(Error::SpaceMismatch {
            left: aut.space(),
            right: f.space(),
        });
    }
    let r_word = build_r_word(aut, f.ranks())?;
    let h_word = build_h_word(aut, f.index_orders())?;
    Ok(QWord {
        ranking: f.clone(),
        r_len: r_word.len(),
        word: r_word.concat(&h_word)?,
    })
}

/// Expected Q-word length for `(n, k)`.
pub fn q_word_len(n: usize, k: usize) -> usize {
    let h_part: usize = (1..k).map(|j| k - j + 2).sum::<usize>() + 3;
    (n - 1) * (k + 1) + n * h_part
}

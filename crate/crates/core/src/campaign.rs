//! End-to-end verification campaign over one `(n, k)` instance.
//!
//! For every Q-ranking `f` the Q-word `G_f` is built and checked structurally,
//! then `(G_f)^omega` must be Streett-rejected (and Rabin-accepted). For every
//! selected ordered pair `f != f'` and every exponent pattern `(a, b)`, the
//! lasso `(G_f^a . G_f'^b)^omega` must be Streett-accepted with a replayable
//! witness. Mixed acceptance is an infinite family; the campaign samples
//! finite exponent patterns and says so in the report.

use std::path::Path;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acceptance::{rabin_accepts, streett_accepts};
use crate::automaton::FullStreettAutomaton;
use crate::builder::{build_q_word, QWord};
use crate::error::{Error, Result};
use crate::ranking::{count_q_rankings, enumerate_q_rankings};
use crate::verify::{Property, Verifier, DEFAULT_PATH_CAP};
use crate::word::LassoWord;

pub const DEFAULT_RANKING_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum PairPolicy {
    AllPairs,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub n: usize,
    pub k: usize,
    pub pair_policy: PairPolicy,
    pub repetition_exponents: Vec<(usize, usize)>,
    pub path_cap: usize,
    pub ranking_budget: u64,
}

impl CampaignConfig {
    pub fn new(n: usize, k: usize) -> Self {
        CampaignConfig {
            n,
            k,
            pair_policy: PairPolicy::AllPairs,
            repetition_exponents: vec![(1, 1), (1, 2), (2, 1), (2, 2)],
            path_cap: DEFAULT_PATH_CAP,
            ranking_budget: DEFAULT_RANKING_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetition_exponents.is_empty() {
            return Err(Error::InvalidConfig("no repetition exponents".into()));
        }
        if let Some(&(a, b)) = self
            .repetition_exponents
            .iter()
            .find(|&&(a, b)| a == 0 || b == 0)
        {
            return Err(Error::InvalidConfig(format!(
                "exponent pattern ({a},{b}): both words must occur, exponents must be >= 1"
            )));
        }
        if self.path_cap == 0 {
            return Err(Error::InvalidConfig("path cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingVerdict {
    pub index: usize,
    pub ranking: String,
    pub word_len: usize,
    /// Holds-flags of properties 1-4, in order.
    pub properties: [bool; 4],
    /// Full paths per Q-track (must all equal `k`).
    pub track_path_counts: Vec<usize>,
    /// `(G_f)^omega` has no Streett-accepting run.
    pub periodic_rejected: bool,
    /// ... and some run satisfies the dual Rabin condition, with a replayed witness.
    pub periodic_rabin_accepted: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub f: usize,
    pub f_prime: usize,
    pub a: usize,
    pub b: usize,
    pub accepted: bool,
    pub witness_replays: bool,
    pub loop_len: usize,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundStatement {
    pub lower_bound_states: u64,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignStats {
    pub elapsed_ms: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub tool_version: String,
    pub config: CampaignConfig,
    pub overall: Outcome,
    pub ranking_count: u64,
    pub rankings: Vec<RankingVerdict>,
    pub pairs: Vec<PairVerdict>,
    pub lower_bound: LowerBoundStatement,
    pub scope_note: String,
    pub stats: CampaignStats,
}

impl CampaignReport {
    /// Pass iff every individual verdict passes.
    pub fn aggregate(&self) -> Outcome {
        let ok = self.rankings.iter().all(|r| r.outcome == Outcome::Pass)
            && self.pairs.iter().all(|p| p.outcome == Outcome::Pass);
        ok.into()
    }

    pub fn failing_rankings(&self) -> impl Iterator<Item = &RankingVerdict> {
        self.rankings.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn failing_pairs(&self) -> impl Iterator<Item = &PairVerdict> {
        self.pairs.iter().filter(|p| p.outcome == Outcome::Fail)
    }
}

fn check_ranking(
    aut: &FullStreettAutomaton,
    verifier: &Verifier,
    index: usize,
    qw: &QWord,
) -> Result<RankingVerdict> {
    let ctx = |e: Error| Error::Report(format!("ranking #{index} ({}): {e}", qw.ranking));
    let reports = verifier.check_all(&qw.word, &qw.ranking).map_err(ctx)?;
    let mut properties = [false; 4];
    for (slot, rep) in properties.iter_mut().zip(&reports) {
        *slot = rep.holds;
    }
    let track_path_counts = (0..qw.ranking.n())
        .map(|i| {
            let q = crate::state::StateId::q(i);
            verifier
                .enumerate_full_paths(&qw.word, q, q)
                .map(|p| p.len())
        })
        .collect::<Result<Vec<_>>>()
        .map_err(ctx)?;
    debug_assert_eq!(reports[1].property, Property::P2);

    let lasso = LassoWord::periodic(qw.word.clone()).map_err(ctx)?;
    let streett = streett_accepts(aut, &lasso).map_err(ctx)?;
    let rabin = rabin_accepts(aut, &lasso).map_err(ctx)?;
    let rabin_ok = rabin.accepted
        && rabin
            .witness
            .as_ref()
            .is_some_and(|w| w.replays(&lasso) && aut.rabin_holds(&w.inf_states));
    let pass = properties.iter().all(|&p| p)
        && track_path_counts.iter().all(|&c| c == qw.ranking.k())
        && !streett.accepted
        && rabin_ok;
    Ok(RankingVerdict {
        index,
        ranking: qw.ranking.to_string(),
        word_len: qw.word.len(),
        properties,
        track_path_counts,
        periodic_rejected: !streett.accepted,
        periodic_rabin_accepted: rabin_ok,
        outcome: pass.into(),
    })
}

/// Streett verdict for `(G_f^a . G_f'^b)^omega`.
pub fn check_mixed_pair(
    aut: &FullStreettAutomaton,
    words: &[QWord],
    (f, f_prime): (usize, usize),
    (a, b): (usize, usize),
) -> Result<PairVerdict> {
    let period = words[f]
        .word
        .repeat(a)
        .concat(&words[f_prime].word.repeat(b))?;
    let lasso = LassoWord::periodic(period)?;
    let verdict = streett_accepts(aut, &lasso)?;
    let (witness_replays, loop_len) = match &verdict.witness {
        Some(w) => (
            w.replays(&lasso) && aut.streett_holds(&w.inf_states),
            w.cycle.states.len() - 1,
        ),
        None => (false, 0),
    };
    Ok(PairVerdict {
        f,
        f_prime,
        a,
        b,
        accepted: verdict.accepted,
        witness_replays,
        loop_len,
        outcome: (verdict.accepted && witness_replays).into(),
    })
}

/// Ordered pairs `(f, f')`, `f != f'`, over `count` rankings.
pub fn select_pairs(count: usize, policy: &PairPolicy) -> Vec<(usize, usize)> {
    let total = count * count.saturating_sub(1);
    let decode = |idx: usize| {
        let f = idx / (count - 1);
        let j = idx % (count - 1);
        (f, if j >= f { j + 1 } else { j })
    };
    match *policy {
        PairPolicy::AllPairs => (0..total).map(decode).collect(),
        PairPolicy::Sample { count: want, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = sample(&mut rng, total, want.min(total)).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(decode).collect()
        }
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let started = Instant::now();
    let aut = FullStreettAutomaton::build(cfg.n, cfg.k)?;
    let big_count = count_q_rankings(cfg.n, cfg.k);
    let count = big_count
        .to_u64()
        .filter(|&c| c <= cfg.ranking_budget)
        .ok_or_else(|| Error::BudgetExceeded {
            count: big_count.to_string(),
            budget: cfg.ranking_budget,
        })?;
    let verifier = Verifier::new(cfg.path_cap);

    let words: Vec<QWord> = enumerate_q_rankings(cfg.n, cfg.k)?
        .map(|f| build_q_word(&aut, &f))
        .collect::<Result<_>>()?;

    let rankings: Vec<RankingVerdict> = words
        .par_iter()
        .enumerate()
        .map(|(i, qw)| check_ranking(&aut, &verifier, i, qw))
        .collect::<Result<_>>()?;

    let jobs: Vec<((usize, usize), (usize, usize))> = select_pairs(words.len(), &cfg.pair_policy)
        .into_iter()
        .flat_map(|p| cfg.repetition_exponents.iter().map(move |&e| (p, e)))
        .collect();
    let pairs: Vec<PairVerdict> = jobs
        .par_iter()
        .map(|&(p, e)| {
            check_mixed_pair(&aut, &words, p, e)
                .map_err(|err| Error::Report(format!("pair {p:?} with exponents {e:?}: {err}")))
        })
        .collect::<Result<_>>()?;

    let mut report = CampaignReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        overall: Outcome::Fail,
        ranking_count: count,
        rankings,
        pairs,
        lower_bound: LowerBoundStatement {
            lower_bound_states: count,
            statement: format!(
                "arithmetic consequence only: if the fooling-set checks pass, any union-closed \
                 automaton complementing the ({}, {}) full Streett automaton needs at least {} states",
                cfg.n, cfg.k, count
            ),
        },
        scope_note: "mixed-word acceptance is checked on the listed exponent patterns only; \
                     this is finite verification, not a proof of the infinite inclusion"
            .to_string(),
        stats: CampaignStats {
            elapsed_ms: started.elapsed().as_millis() as u64,
            threads: rayon::current_num_threads(),
        },
    };
    report.overall = report.aggregate();
    Ok(report)
}

/// Pretty JSON with a stable key order; `overall` is recomputed from the
/// individual verdicts.
pub fn report_to_json(rep: &CampaignReport) -> String {
    let mut rep = rep.clone();
    rep.overall = rep.aggregate();
    let mut s = serde_json::to_string_pretty(&rep).expect("report is always serializable");
    s.push('\n');
    s
}

pub fn parse_report(input: &str) -> Result<CampaignReport> {
    serde_json::from_str(input).map_err(|e| Error::Report(e.to_string()))
}

pub fn emit_report(rep: &CampaignReport, path: &Path) -> Result<()> {
    std::fs::write(path, report_to_json(rep))?;
    Ok(())
}

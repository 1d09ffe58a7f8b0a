//! Fooling-set witnesses for Streett complementation.
//!
//! The crate builds the full Streett automaton over `Q ∪ G ∪ B ∪ {t}`, the
//! canonical word `G_f` for every Q-ranking `f`, a structural verifier for the
//! properties every such word must satisfy, and a lasso acceptance checker
//! (Streett and Rabin) with replayable witnesses. [`campaign`] ties these into
//! an end-to-end fooling-set check with a JSON report.
//!
//! ```
//! use streett_fool::{build_q_word, FullStreettAutomaton, QRanking, Verifier};
//!
//! let aut = FullStreettAutomaton::build(3, 2).unwrap();
//! let f: QRanking = "r=[2,1,3];h=[[1,2],[1,2],[2,1]]".parse().unwrap();
//! let qw = build_q_word(&aut, &f).unwrap();
//! assert_eq!(qw.word.len(), 24);
//! let reports = Verifier::default().check_all(&qw.word, &f).unwrap();
//! assert!(reports.iter().all(|r| r.holds));
//! ```

pub mod acceptance;
pub mod automaton;
pub mod bound;
pub mod builder;
pub mod campaign;
pub mod dot;
pub mod error;
pub mod ranking;
pub mod scc;
pub mod state;
pub mod text;
pub mod verify;
pub mod word;

pub use acceptance::{
    build_product, rabin_accepts, streett_accepts, AcceptanceVerdict, LassoWitness, ProductGraph,
};
pub use automaton::{AcceptancePair, FullStreettAutomaton};
pub use bound::{lower_bound_report, BoundReport, Regime};
pub use builder::{build_h_word, build_q_word, build_r_word, q_word_len, LetterTemplate, QWord};
pub use campaign::{
    emit_report, parse_report, run_campaign, CampaignConfig, CampaignReport, Outcome, PairPolicy,
};
pub use dot::export_dot;
pub use error::{Error, Result};
pub use ranking::{count_q_rankings, enumerate_q_rankings, QRanking};
pub use state::{Role, StateId, StateSpace};
pub use text::{parse_letter, parse_word, write_word};
pub use verify::{Counterexample, PathVisitProfile, Property, PropertyReport, Verifier};
pub use word::{Edge, FiniteWord, LassoWord, Letter, RunPath, Vertex};

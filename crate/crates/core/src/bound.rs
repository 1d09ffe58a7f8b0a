//! Arithmetic behind the complementation lower bound for an instance with
//! `n` states and index size `k`.
//!
//! The witness automaton with parameters `(n0, k0)` has `2*k0 + n0 + 1`
//! states; padding its index set with empty pairs lifts it to index size `k`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::count_q_rankings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `k <= (n - 2) / 3`: the whole index set is used, `k0 = k`.
    KOOfN,
    /// Larger `k`: `k0 = n0` up to rounding.
    KOmegaOfN,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub n0: usize,
    pub k0: usize,
    #[serde(with = "decimal")]
    pub ranking_count: BigUint,
    pub regime: Regime,
}

impl BoundReport {
    /// `log2` of the ranking count, for display.
    pub fn log2_count(&self) -> u64 {
        self.ranking_count.bits().saturating_sub(1)
    }
}

pub fn lower_bound_report(n: usize, k: usize) -> Result<BoundReport> {
    if n < 4 {
        return Err(Error::BoundTooSmall { n });
    }
    if k == 0 {
        return Err(Error::EmptyFamily { n, k });
    }
    let (k0, regime) = if 3 * k <= n - 2 {
        (k, Regime::KOOfN)
    } else {
        ((n - 1) / 3, Regime::KOmegaOfN)
    };
    // remainder of the rounding goes to n0, keeping n = 2*k0 + n0 + 1
    let n0 = n - 2 * k0 - 1;
    debug_assert!(n0 >= k0 && k0 >= 1 && k0 <= k);
    Ok(BoundReport {
        n,
        k,
        n0,
        k0,
        ranking_count: count_q_rankings(n0, k0),
        regime,
    })
}

pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

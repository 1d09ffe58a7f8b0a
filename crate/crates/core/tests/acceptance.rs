//! Acceptance suite: one PASS/FAIL line per criterion, with timings against
//! fixed budgets. Runs without the libtest harness so the lines always show.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use streett_fool::campaign::{run_campaign, CampaignConfig, Outcome, PairPolicy};
use streett_fool::{
    build_q_word, count_q_rankings, enumerate_q_rankings, export_dot, lower_bound_report,
    rabin_accepts, streett_accepts, FiniteWord, FullStreettAutomaton, LassoWord, Letter, QRanking,
    QWord, StateId, Verifier,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counting() -> Check {
    for (n, k, expected) in [(3, 2, 48u64), (4, 3, 31104)] {
        let count = count_q_rankings(n, k);
        let len = enumerate_q_rankings(n, k)
            .map_err(|e| e.to_string())?
            .count();
        ensure(count == BigUint::from(expected), || {
            format!("count({n},{k}) = {count}, expected {expected}")
        })?;
        ensure(len as u64 == expected, || {
            format!("enumeration({n},{k}) yields {len}, expected {expected}")
        })?;
    }
    Ok("count(3,2) = 48, count(4,3) = 31104, both equal enumeration length".into())
}

fn golden_fixture() -> Check {
    let aut = FullStreettAutomaton::build(3, 2).unwrap();
    let f: QRanking = "r=[2,1,3];h=[[1,2],[1,2],[2,1]]".parse().unwrap();
    let qw = build_q_word(&aut, &f).map_err(|e| e.to_string())?;
    let (len, r, h) = (qw.word.len(), qw.r_len, qw.h_word().len());
    ensure((len, r, h) == (24, 6, 18), || {
        format!("lengths {len}/{r}/{h}")
    })?;
    let dot = export_dot(&qw.word);
    let columns = dot.matches("rank=same").count();
    let nodes = dot.matches("[label=").count();
    ensure(columns == 25 && nodes == 25 * 8, || {
        format!("DOT has {columns} columns, {nodes} nodes")
    })?;
    Ok(format!(
        "|G_f| = {len}, |G_r| = {r}, |G_h| = {h}; DOT 25 columns x 8 rows"
    ))
}

fn structural_suite() -> Check {
    let verifier = Verifier::default();
    let mut total = 0;
    for (n, k) in [(2, 1), (2, 2), (3, 2)] {
        let (_, words) = fixtures(n, k);
        for qw in &words {
            let reports = verifier
                .check_all(&qw.word, &qw.ranking)
                .map_err(|e| e.to_string())?;
            if let Some(bad) = reports.iter().find(|r| !r.holds) {
                return Err(format!(
                    "{:?} fails for {}: {:?}",
                    bad.property, qw.ranking, bad.counterexample
                ));
            }
            for i in 0..n {
                let q = StateId::q(i);
                let c = verifier.enumerate_full_paths(&qw.word, q, q).unwrap().len();
                ensure(c == k, || format!("{}: q{i} has {c} paths", qw.ranking))?;
            }
            total += 1;
        }
    }
    ensure(total == 58, || format!("{total} words"))?;
    Ok("58 words, all four properties hold, k paths per track".into())
}

fn periodic_rejection() -> Check {
    let (aut, words) = fixtures(3, 2);
    for qw in &words {
        let lasso = LassoWord::periodic(qw.word.clone()).unwrap();
        let s = streett_accepts(&aut, &lasso).unwrap();
        ensure(!s.accepted, || {
            format!("(G_f)^w accepted for {}", qw.ranking)
        })?;
        let r = rabin_accepts(&aut, &lasso).unwrap();
        let replay = r
            .witness
            .as_ref()
            .is_some_and(|w| w.replays(&lasso) && aut.rabin_holds(&w.inf_states));
        ensure(r.accepted && replay, || {
            format!(
                "(G_f)^w not Rabin-accepted with a witness for {}",
                qw.ranking
            )
        })?;
    }
    Ok(format!(
        "{} words: Streett rejects, Rabin accepts with replayed witness",
        words.len()
    ))
}

fn mixed_acceptance() -> Check {
    let mut all = CampaignConfig::new(3, 2);
    all.repetition_exponents = vec![(1, 1)];
    let rep = run_campaign(&all).map_err(|e| e.to_string())?;
    let passes = rep
        .pairs
        .iter()
        .filter(|p| p.outcome == Outcome::Pass)
        .count();
    ensure(rep.pairs.len() == 2256 && passes == 2256, || {
        format!("(1,1): {passes}/{} pairs pass", rep.pairs.len())
    })?;
    ensure(rep.overall == Outcome::Pass, || {
        "campaign overall fail".into()
    })?;

    let mut sampled = CampaignConfig::new(3, 2);
    sampled.pair_policy = PairPolicy::Sample {
        count: 100,
        seed: 2024,
    };
    sampled.repetition_exponents = vec![(1, 2), (2, 1), (2, 2)];
    let rep = run_campaign(&sampled).map_err(|e| e.to_string())?;
    let passes = rep
        .pairs
        .iter()
        .filter(|p| p.accepted && p.witness_replays)
        .count();
    ensure(rep.pairs.len() == 300 && passes == 300, || {
        format!("sampled: {passes}/{} verdicts pass", rep.pairs.len())
    })?;
    Ok(
        "2256/2256 pairs at (1,1); 100 sampled pairs x 3 patterns = 300/300; all witnesses replay"
            .into(),
    )
}

fn emptiness_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE0);
    let (mut random, mut accepted, mut skipped) = (0, 0, 0);
    while random < 500 {
        let (aut, lasso) = random_small_lasso(&mut rng);
        if NaiveProduct::new(&lasso).max_reachable_scc() > 14 {
            skipped += 1;
            continue;
        }
        random += 1;
        let fast = streett_accepts(&aut, &lasso).unwrap().accepted;
        let slow = subset_oracle(&aut, &lasso, 14, streett);
        ensure(fast == slow, || {
            format!("disagreement on {lasso:?}: {fast} vs {slow}")
        })?;
        accepted += fast as usize;
    }
    ensure(accepted > 50 && accepted < 450, || {
        format!("degenerate sample: {accepted}/500 accepted")
    })?;

    let mut fixture_checks = 0;
    for (n, k) in [(2, 1), (2, 2)] {
        let (aut, words) = fixtures(n, k);
        for (i, a) in words.iter().enumerate() {
            let mut lassos = vec![LassoWord::periodic(a.word.clone()).unwrap()];
            for (j, b) in words.iter().enumerate() {
                if i != j {
                    lassos.push(LassoWord::periodic(a.word.concat(&b.word).unwrap()).unwrap());
                }
            }
            for lasso in &lassos {
                let fast = streett_accepts(&aut, lasso).unwrap().accepted;
                let slow = state_subset_oracle(&aut, lasso);
                ensure(fast == slow, || {
                    format!("fixture ({n},{k}) disagreement: {fast} vs {slow}")
                })?;
                fixture_checks += 1;
            }
        }
    }
    Ok(format!(
        "500 random lassos agree ({accepted} accepted, {skipped} oversized resampled); \
         {fixture_checks} fixture lassos agree"
    ))
}

struct Verdicts {
    properties: Vec<bool>,
    periodic: bool,
    mixed: bool,
}

fn verdicts(aut: &FullStreettAutomaton, w: &FiniteWord, f: &QRanking, partner: &QWord) -> Verdicts {
    let v = Verifier::default();
    let properties = v.check_all(w, f).unwrap().iter().map(|r| r.holds).collect();
    let periodic = streett_accepts(aut, &LassoWord::periodic(w.clone()).unwrap())
        .unwrap()
        .accepted;
    let mixed = streett_accepts(
        aut,
        &LassoWord::periodic(w.concat(&partner.word).unwrap()).unwrap(),
    )
    .unwrap()
    .accepted;
    Verdicts {
        properties,
        periodic,
        mixed,
    }
}

fn witness_edges(qw: &QWord) -> BTreeSet<(usize, StateId, StateId)> {
    let v = Verifier::default();
    let mut out = BTreeSet::new();
    let reports = [
        v.check_property_1(&qw.word, &qw.ranking).unwrap(),
        v.check_property_2(&qw.word, &qw.ranking).unwrap(),
    ];
    for rep in &reports {
        for p in &rep.witnesses {
            for (l, pair) in p.path.states.windows(2).enumerate() {
                out.insert((p.path.start_level + l, pair[0], pair[1]));
            }
        }
    }
    out
}

fn mutation_sensitivity() -> Check {
    let (aut, words) = fixtures(3, 2);
    let states: Vec<StateId> = aut.space().states().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut touching, mut changed_touching) = (0, 0);
    for case in 0..20 {
        let fi = rng.gen_range(0..words.len());
        let qw = &words[fi];
        let partner = &words[(fi + 1) % words.len()];
        let level = rng.gen_range(0..qw.word.len());
        let letter = &qw.word.letters()[level];
        let delete = rng.gen_bool(0.5);
        let (edge, mutated): ((StateId, StateId), Letter) = if delete {
            let e = *letter.edges().choose(&mut rng).unwrap();
            (e, letter.without(e))
        } else {
            let e = loop {
                let e = (
                    *states.choose(&mut rng).unwrap(),
                    *states.choose(&mut rng).unwrap(),
                );
                if !letter.contains(e) {
                    break e;
                }
            };
            (e, letter.with(e))
        };
        let word = qw.word.with_letter(level, mutated).unwrap();
        let touches = delete && witness_edges(qw).contains(&(level, edge.0, edge.1));
        let before = verdicts(&aut, &qw.word, &qw.ranking, partner);
        let after = verdicts(&aut, &word, &qw.ranking, partner);
        let changed = before.properties != after.properties
            || before.periodic != after.periodic
            || before.mixed != after.mixed;
        println!(
            "    mutation {case:2}: {} {}>{} at level {level:2} of {} | witness edge: {} | \
             properties {:?} -> {:?}, periodic accepted {} -> {}, mixed accepted {} -> {} | {}",
            if delete { "delete" } else { "add   " },
            edge.0,
            edge.1,
            qw.ranking,
            touches,
            before.properties,
            after.properties,
            before.periodic,
            after.periodic,
            before.mixed,
            after.mixed,
            if changed { "changed" } else { "unchanged" }
        );
        if touches {
            touching += 1;
            changed_touching += changed as usize;
        }
    }
    ensure(touching > 0, || "no mutation touched a witness edge".into())?;
    ensure(changed_touching * 20 >= touching * 19, || {
        format!("{changed_touching}/{touching} touching mutations changed a verdict")
    })?;
    Ok(format!(
        "{changed_touching}/{touching} witness-touching mutations changed a verdict"
    ))
}

fn padding_invariance() -> Check {
    let (aut, words) = fixtures(2, 2);
    let padded = aut.pad_index(4).map_err(|e| e.to_string())?;
    let v = Verifier::default();
    for qw in &words {
        let lasso = LassoWord::periodic(qw.word.clone()).unwrap();
        let props: Vec<bool> = v
            .check_all(&qw.word, &qw.ranking)
            .unwrap()
            .iter()
            .map(|r| r.holds)
            .collect();
        for other in [&aut, &padded] {
            let qw2 = build_q_word(other, &qw.ranking).unwrap();
            ensure(qw2.word == qw.word, || "word depends on index size".into())?;
            let props2: Vec<bool> = v
                .check_all(&qw2.word, &qw.ranking)
                .unwrap()
                .iter()
                .map(|r| r.holds)
                .collect();
            ensure(props == props2, || "property verdicts differ".into())?;
        }
        let s = (
            streett_accepts(&aut, &lasso).unwrap().accepted,
            streett_accepts(&padded, &lasso).unwrap().accepted,
        );
        let r = (
            rabin_accepts(&aut, &lasso).unwrap().accepted,
            rabin_accepts(&padded, &lasso).unwrap().accepted,
        );
        ensure(s.0 == s.1 && r.0 == r.1, || {
            format!("{}: Streett {s:?}, Rabin {r:?}", qw.ranking)
        })?;
    }
    Ok(format!(
        "{} fixtures: identical verdicts at index 2 and 4",
        words.len()
    ))
}

fn bound_arithmetic() -> Check {
    let rep = lower_bound_report(9, 2).map_err(|e| e.to_string())?;
    ensure(rep.ranking_count == BigUint::from(384u32), || {
        format!("ranking_count = {}", rep.ranking_count)
    })?;
    Ok(format!(
        "lower_bound_report(9,2): n0={}, k0={}, count 384",
        rep.n0, rep.k0
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("counting", Duration::from_secs(1), counting),
        ("golden fixture", Duration::from_secs(1), golden_fixture),
        (
            "structural suite",
            Duration::from_secs(10),
            structural_suite,
        ),
        (
            "periodic words rejected",
            Duration::from_secs(60),
            periodic_rejection,
        ),
        (
            "mixed words accepted",
            Duration::from_secs(600),
            mixed_acceptance,
        ),
        (
            "emptiness oracle",
            Duration::from_secs(300),
            emptiness_oracle,
        ),
        (
            "mutation sensitivity",
            Duration::from_secs(120),
            mutation_sensitivity,
        ),
        (
            "padding invariance",
            Duration::from_secs(10),
            padding_invariance,
        ),
        ("bound arithmetic", Duration::from_secs(1), bound_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > *budget => ("FAIL", format!("over budget {budget:?}")),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{}] {name}: {detail} ({:.3}s, budget {}s)",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

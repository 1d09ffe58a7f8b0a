//! Graphviz rendering of a word's layered Δ-graph.

use std::fmt::Write;

use crate::state::{Role, StateId, StateSpace};
use crate::word::FiniteWord;

/// Row order top to bottom: `g_k..g_1`, `b_k..b_1`, `q_0..q_{n-1}`, `t`.
fn rows(space: StateSpace) -> Vec<StateId> {
    let mut out: Vec<StateId> = (1..=space.k).rev().map(StateId::g).collect();
    out.extend((1..=space.k).rev().map(StateId::b));
    out.extend(space.q_states());
    out.push(StateId::T);
    out
}

fn node(s: StateId, level: usize) -> String {
    format!("{s}_{level}")
}

/// One node per state and level, one edge per Δ-graph edge.
pub fn export_dot(word: &FiniteWord) -> String {
    let space = word.space();
    let rows = rows(space);
    let mut out = String::new();
    out.push_str("digraph word {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
    for level in 0..=word.len() {
        let _ = writeln!(out, "  subgraph level_{level} {{\n    rank=same;");
        for (row, &s) in rows.iter().enumerate() {
            let color = match s.role() {
                Role::Q => "black",
                Role::G => "darkgreen",
                Role::B => "red",
                Role::T => "gray40",
            };
            let _ = writeln!(
                out,
                "    {} [label=\"{s}\", color={color}, pos=\"{},{}!\"];",
                node(s, level),
                level,
                rows.len() - 1 - row
            );
        }
        out.push_str("  }\n");
    }
    for level in 0..word.len() {
        for &((s, i), (d, j)) in &word.delta_graph_edges(level).expect("level in range") {
            let _ = writeln!(out, "  {} -> {};", node(s, i), node(d, j));
        }
    }
    out.push_str("}\n");
    out
}

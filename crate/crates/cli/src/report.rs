//! JSON reports. Every subcommand prints exactly one report object to
//! stdout: {command, inputs, result, stats, version}, keys in that order,
//! all numbers exact integers.

use dhg_core::graph::DirectedHypergraph;
use dhg_core::search::SearchStats;
use serde_json::{json, Value};

pub fn print(command: &str, inputs: Value, result: Value, stats: Value) {
    let report = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "stats": stats,
        "version": env!("CARGO_PKG_VERSION"),
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
}

pub fn graph_value(g: &DirectedHypergraph) -> Value {
    let edges: Vec<[usize; 3]> = g.edges().iter().map(|e| [e.lo(), e.hi(), e.head()]).collect();
    json!({
        "n": g.n(),
        "edge_count": g.edge_count(),
        "edges": edges,
    })
}

pub fn search_stats_value(stats: &SearchStats, jobs: usize, elapsed_ms: u64) -> Value {
    json!({
        "nodes": stats.nodes,
        "bound_prunes": stats.bound_prunes,
        "freeness_prunes": stats.freeness_prunes,
        "jobs": jobs,
        "elapsed_ms": elapsed_ms,
    })
}

pub fn elapsed_value(elapsed_ms: u64) -> Value {
    json!({ "elapsed_ms": elapsed_ms })
}

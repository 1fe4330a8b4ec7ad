//! Enumeration of universal near shortest simple paths in directed graphs.
//!
//! A universal weight vector, dotted with a path's descending-sorted arc
//! costs, subsumes the classic sum, bottleneck, k-sum and k-max path
//! objectives. This crate finds optimal paths per objective family,
//! enumerates every simple s-t path whose value stays within a factor of
//! (1 + eps) of the optimum, computes minimal complete sets and interval
//! representatives, and exports the associated integer programs as LP files.

pub mod complete_set;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod instances;
pub mod lp_export;
pub mod objective;
pub mod solvers;

pub use complete_set::{
    interval_partition, minimal_complete_set, next_usp, next_usp_theorem5, representatives,
    Interval, IntervalPartition, MinimalCompleteSet, NextUspQuery,
};
pub use enumeration::{
    enumerate_alg1, enumerate_alg1_with, enumerate_alg2, enumerate_alg2_traced, enumerate_brute,
    Alg1Options, Alg2Step, PathRecord, PathSink, RunStats,
};
pub use error::{Error, Result};
pub use graph::{parse_graph, Arc, ArcId, ArcMask, Graph, Path, VertexId};
pub use instances::{gen_binary_doubling, gen_random, gen_triplet_chain, generate, GenSpec};
pub use lp_export::{emit_nspip, emit_unspip, nspip_model, unspip_model, LpModel};
pub use objective::{
    parse_lambda, parse_ratio, sorted_cost_vector, universal_value, within_bound, Bound, Lambda,
};
pub use solvers::{
    all_distances_to_sink, solve, solve_bottleneck, solve_brute, solve_ksum, solve_kmax,
    solve_sum, DistanceTable, SolveOutcome, SolveStats,
};

//! Enumeration of all simple s-t paths whose universal value stays within
//! the bound B = (1 + eps) * f*.
//!
//! Two algorithms are provided. `enumerate_alg1` grows paths depth-first and
//! validates every frontier arc with a masked best-completion solve: all
//! outgoing arcs of prefix vertices except the prefix's own arcs are removed,
//! which forces the solver to respect the prefix and keeps completions
//! simple. `enumerate_alg2` repeatedly solves on a graph with forbidden
//! arcs: the optimum's prefix is pinned arc by arc, already-explored
//! deviations are tracked per vertex in consumed-arc sets, and the cursor
//! backtracks along the reference path when a branch is exhausted. Both emit
//! the same set; a brute-force enumerator serves as the oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ArcId, ArcMask, Graph, Path, VertexId};
use crate::objective::{self, Bound, Lambda};
use crate::solvers;

/// Receives emitted paths in the algorithm's emission order, up to a cutoff.
pub struct PathSink<'a> {
    callback: Box<dyn FnMut(&Path, i64) + 'a>,
    max_paths: usize,
    received: usize,
}

impl<'a> PathSink<'a> {
    pub fn new(max_paths: usize, callback: impl FnMut(&Path, i64) + 'a) -> PathSink<'a> {
        PathSink { callback: Box::new(callback), max_paths, received: 0 }
    }

    /// A sink that only counts.
    pub fn counting() -> PathSink<'static> {
        PathSink::new(usize::MAX, |_, _| {})
    }

    pub fn received(&self) -> usize {
        self.received
    }

    /// Delivers a path unless the cutoff is reached. Returns false when the
    /// path could not be delivered; the enumeration then stops and reports
    /// truncation.
    fn offer(&mut self, p: &Path, value: i64) -> bool {
        if self.received >= self.max_paths {
            return false;
        }
        (self.callback)(p, value);
        self.received += 1;
        true
    }
}

/// Counters for one enumeration run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub paths: usize,
    pub uspp_solves: u64,
    pub arcs_scanned: u64,
    pub backtracks: u64,
    pub truncated: bool,
}

/// One emitted path as serialized on the JSON-lines interface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub vertices: Vec<VertexId>,
    pub arc_ids: Vec<ArcId>,
    pub value: i64,
}

impl PathRecord {
    pub fn new(p: &Path, value: i64) -> PathRecord {
        PathRecord { vertices: p.vertices().to_vec(), arc_ids: p.arc_ids().to_vec(), value }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("path record serializes")
    }
}

fn validate_inputs(g: &Graph, lam: &Lambda, eps: Rational64, require_nonneg: bool) -> Result<()> {
    lam.validate(g.vertex_count())?;
    if require_nonneg && !lam.is_nonneg() {
        return Err(Error::InvalidInput(
            "enumeration requires a nonnegative weight vector".into(),
        ));
    }
    if eps < Rational64::from_integer(0) {
        return Err(Error::InvalidInput(format!("epsilon {eps} is negative")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Alg1Options {
    /// For the sum objective only: replace the per-arc masked solve by the
    /// O(1) admissible check D + c(a) + d(v,t) against B, with d taken from
    /// one distance table on the unmasked graph. Emits the same set (the
    /// check is exact at the sink); cross-checked against the literal mode
    /// in the test suite.
    pub sum_shortcut: bool,
}

/// Depth-first enumeration with a masked best-completion test per frontier
/// arc. Emits every simple s-t path with value <= B exactly once, in
/// lexicographic arc-id order.
pub fn enumerate_alg1(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
) -> Result<RunStats> {
    enumerate_alg1_with(g, lam, eps, sink, Alg1Options::default())
}

pub fn enumerate_alg1_with(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
    opts: Alg1Options,
) -> Result<RunStats> {
    validate_inputs(g, lam, eps, true)?;
    let mut stats = RunStats::default();
    let mut mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());

    stats.uspp_solves += 1;
    let init = solvers::solve(g, &mask, s, t, lam)?;
    let Some(f_star) = init.value else {
        return Ok(stats);
    };
    let bound = Bound::new(f_star, eps)?;

    let shortcut = opts.sum_shortcut && matches!(lam, Lambda::Sum);
    let base_dist = if shortcut {
        stats.uspp_solves += 1;
        Some(solvers::all_distances_to_sink(g, &mask)?)
    } else {
        None
    };

    let mut on_path = vec![false; g.vertex_count() + 1];
    on_path[s] = true;
    let mut path_arcs: Vec<ArcId> = Vec::new();
    let mut prefix_cost: Vec<i64> = vec![0];
    let mut verts: Vec<VertexId> = vec![s];
    let mut cursors: Vec<usize> = vec![0];

    'outer: loop {
        let depth = cursors.len() - 1;
        let u = verts[depth];
        let adj = g.out_arcs(u);
        let mut descended = false;
        while cursors[depth] < adj.len() {
            let aid = adj[cursors[depth]];
            cursors[depth] += 1;
            stats.arcs_scanned += 1;
            let arc = g.arc(aid);
            let v = arc.head;
            if on_path[v] {
                continue;
            }

            let feasible = if let Some(dt) = &base_dist {
                match dt.dist[v] {
                    None => false,
                    Some(d) => {
                        let est = prefix_cost[depth]
                            .checked_add(arc.cost)
                            .and_then(|x| x.checked_add(d))
                            .ok_or(Error::Overflow)?;
                        bound.admits(est)
                    }
                }
            } else {
                // Remark-style mask: at the frontier vertex keep only the
                // candidate arc; ancestors are already pinned.
                let others: Vec<ArcId> = adj.iter().copied().filter(|&x| x != aid).collect();
                mask.push(others.iter().copied())?;
                stats.uspp_solves += 1;
                let out = solvers::solve(g, &mask, s, t, lam)?;
                let ok = matches!(out.value, Some(val) if bound.admits(val));
                if ok && v != t {
                    // keep the frontier pin; it becomes the prefix mask
                    descended = true;
                } else {
                    mask.pop(others)?;
                }
                ok
            };
            if !feasible {
                continue;
            }

            if v == t {
                path_arcs.push(aid);
                let p = Path::from_arcs(g, s, path_arcs.clone())?;
                let value = objective::universal_value(&p, lam, g)?;
                debug_assert!(bound.admits(value));
                let delivered = sink.offer(&p, value);
                path_arcs.pop();
                if !delivered {
                    stats.truncated = true;
                    break 'outer;
                }
                stats.paths += 1;
                continue;
            }

            if shortcut {
                descended = true;
            }
            on_path[v] = true;
            path_arcs.push(aid);
            let pc = prefix_cost[depth].checked_add(arc.cost).ok_or(Error::Overflow)?;
            prefix_cost.push(pc);
            verts.push(v);
            cursors.push(0);
            break;
        }
        if descended {
            continue;
        }
        cursors.pop();
        verts.pop();
        prefix_cost.pop();
        if cursors.is_empty() {
            break;
        }
        stats.backtracks += 1;
        let aid = path_arcs.pop().unwrap();
        on_path[g.arc(aid).head] = false;
        if !shortcut {
            let parent = *verts.last().unwrap();
            let others: Vec<ArcId> =
                g.out_arcs(parent).iter().copied().filter(|&x| x != aid).collect();
            mask.pop(others)?;
        }
    }

    debug_assert!(
        shortcut
            || g.arc_count() == 0
            || stats.uspp_solves <= 2 * g.arc_count() as u64 * (stats.paths as u64 + 1),
        "per-path work bound exceeded"
    );
    Ok(stats)
}

/// One step of the deviation-based enumeration, recorded after the step's
/// bookkeeping. `found` is the solver's path and value even when the value
/// exceeded the bound; `cursor` is None once the search retreats past the
/// source. Only nonempty consumed sets are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alg2Step {
    pub found: Option<(Vec<VertexId>, i64)>,
    pub cursor: Option<VertexId>,
    pub consumed: BTreeMap<VertexId, BTreeSet<ArcId>>,
}

/// Deviation-based enumeration: same emitted set as `enumerate_alg1`, at
/// most one masked solve per step and at most n steps between emissions.
pub fn enumerate_alg2(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
) -> Result<RunStats> {
    enumerate_alg2_impl(g, lam, eps, sink, None)
}

/// As `enumerate_alg2`, recording every step (the initialization included).
pub fn enumerate_alg2_traced(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
    trace: &mut Vec<Alg2Step>,
) -> Result<RunStats> {
    enumerate_alg2_impl(g, lam, eps, sink, Some(trace))
}

fn enumerate_alg2_impl(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
    mut trace: Option<&mut Vec<Alg2Step>>,
) -> Result<RunStats> {
    validate_inputs(g, lam, eps, true)?;
    let mut stats = RunStats::default();
    let mut mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());
    let n = g.vertex_count();
    let mut consumed: Vec<BTreeSet<ArcId>> = vec![BTreeSet::new(); n + 1];

    let record = |found: Option<(Vec<VertexId>, i64)>,
                  cursor: Option<VertexId>,
                  consumed: &[BTreeSet<ArcId>],
                  trace: &mut Option<&mut Vec<Alg2Step>>| {
        if let Some(tr) = trace {
            let map = consumed
                .iter()
                .enumerate()
                .filter(|(_, set)| !set.is_empty())
                .map(|(v, set)| (v, set.clone()))
                .collect();
            tr.push(Alg2Step { found, cursor, consumed: map });
        }
    };

    // Initialization: global optimum, pin its prefix, consume its last arc.
    stats.uspp_solves += 1;
    let init = solvers::solve(g, &mask, s, t, lam)?;
    let Some(path0) = init.path else {
        return Ok(stats);
    };
    let bound = Bound::new(init.value.unwrap(), eps)?;
    let value0 = objective::universal_value(&path0, lam, g)?;
    debug_assert!(bound.admits(value0));
    if !sink.offer(&path0, value0) {
        stats.truncated = true;
        return Ok(stats);
    }
    stats.paths += 1;
    pin_prefix(g, &mut mask, &path0, &mut stats);
    let last_hop = path0.vertices()[path0.len() - 1];
    consumed[last_hop].insert(*path0.arc_ids().last().unwrap());
    let mut current = path0;
    let mut cursor: Option<VertexId> = Some(last_hop);
    record(Some((current.vertices().to_vec(), value0)), cursor, &consumed, &mut trace);

    while let Some(v) = cursor {
        stats.uspp_solves += 1;
        let out = solvers::solve(g, &mask, s, t, lam)?;
        let admitted = matches!(out.value, Some(val) if bound.admits(val));
        let found = out.path.as_ref().map(|p| (p.vertices().to_vec(), out.value.unwrap()));

        if !admitted {
            // Exhausted branch: forget v's consumed arcs, consume the arc
            // into v on the reference path, and reopen the out-stars of v
            // and its predecessor (minus the predecessor's consumed arcs).
            stats.backtracks += 1;
            consumed[v].clear();
            let pred = current.pred(v);
            if let Some(p) = pred {
                consumed[p].insert(current.arc_into(v).unwrap());
            }
            for &aid in g.out_arcs(v) {
                stats.arcs_scanned += 1;
                mask.ensure_present(aid);
            }
            if let Some(p) = pred {
                for &aid in g.out_arcs(p) {
                    stats.arcs_scanned += 1;
                    if consumed[p].contains(&aid) {
                        mask.ensure_removed(aid);
                    } else {
                        mask.ensure_present(aid);
                    }
                }
            }
            cursor = pred;
            record(found, cursor, &consumed, &mut trace);
        } else {
            let p = out.path.unwrap();
            debug_assert!(prefix_matches(&current, &p, v), "solver left the pinned prefix");
            let value = objective::universal_value(&p, lam, g)?;
            if !sink.offer(&p, value) {
                stats.truncated = true;
                return Ok(stats);
            }
            stats.paths += 1;
            let last_hop = p.vertices()[p.len() - 1];
            consumed[last_hop].insert(*p.arc_ids().last().unwrap());
            pin_prefix(g, &mut mask, &p, &mut stats);
            cursor = Some(last_hop);
            current = p;
            record(found, cursor, &consumed, &mut trace);
        }
    }

    debug_assert!(
        stats.uspp_solves <= 2 * n as u64 * (stats.paths as u64 + 1),
        "per-path work bound exceeded"
    );
    Ok(stats)
}

/// Removes every outgoing arc of the path's vertices except the path's own
/// arcs, plus the final arc itself. Arcs already absent stay absent.
fn pin_prefix(g: &Graph, mask: &mut ArcMask, p: &Path, stats: &mut RunStats) {
    let verts = p.vertices();
    let arcs = p.arc_ids();
    let l = p.len();
    debug_assert!(l >= 1);
    for i in 0..l - 1 {
        for &aid in g.out_arcs(verts[i]) {
            stats.arcs_scanned += 1;
            if aid != arcs[i] {
                mask.ensure_removed(aid);
            }
        }
    }
    mask.ensure_removed(arcs[l - 1]);
}

fn prefix_matches(reference: &Path, found: &Path, upto: VertexId) -> bool {
    let cut = reference.vertices().iter().position(|&w| w == upto);
    match cut {
        None => false,
        Some(i) => found.arc_ids().len() >= i && found.arc_ids()[..i] == reference.arc_ids()[..i],
    }
}

/// Exhaustive enumeration in lexicographic arc-id order; the oracle for both
/// algorithms. Accepts weight vectors of arbitrary sign.
pub fn enumerate_brute(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    sink: &mut PathSink<'_>,
) -> Result<RunStats> {
    validate_inputs(g, lam, eps, false)?;
    let mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());
    solvers::check_brute_gate(g, &mask, s, t)?;
    let mut stats = RunStats::default();

    stats.uspp_solves += 1;
    let opt = solvers::solve_brute(g, &mask, s, t, lam)?;
    let Some(f_star) = opt.value else {
        return Ok(stats);
    };
    let bound = Bound::new(f_star, eps)?;

    let mut failure: Option<Error> = None;
    solvers::for_each_simple_path(g, &mask, s, t, |arcs, _| {
        stats.arcs_scanned += 1;
        let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
        let value = match objective::value_of_costs(lam, costs, g.vertex_count()) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if !bound.admits(value) {
            return true;
        }
        let p = match Path::from_arcs(g, s, arcs.to_vec()) {
            Ok(p) => p,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if !sink.offer(&p, value) {
            stats.truncated = true;
            return false;
        }
        stats.paths += 1;
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(stats)
}

//! Exact universal shortest path solvers, one per weight family, plus an
//! exhaustive solver for arbitrary weight vectors. All of them operate on a
//! masked graph and return simple paths.
//!
//! Shortest-walk computations use the lexicographic key (weight, hop count):
//! with nonnegative weights any walk containing a cycle loses to its
//! de-cycled version on that key, so the computed optima are automatically
//! simple. Ties beyond hops are broken toward the lexicographically smallest
//! arc-id sequence.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Arc, ArcId, ArcMask, Graph, Path, VertexId};
use crate::objective::{self, Lambda};

/// Shortest distances toward a fixed target vertex, with hop counts and a
/// deterministic parent arc per reachable vertex (the first arc of the
/// chosen optimal path toward the target).
#[derive(Debug, Clone)]
pub struct DistanceTable {
    pub dist: Vec<Option<i64>>,
    pub hops: Vec<u32>,
    pub parent: Vec<Option<ArcId>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub relaxations: u64,
    pub probes: u64,
}

/// Result of one universal shortest path query. `path` and `value` are
/// both present or both absent; the value always equals the universal value
/// of the path.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub path: Option<Path>,
    pub value: Option<i64>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    fn found(path: Path, value: i64, stats: SolveStats) -> SolveOutcome {
        SolveOutcome { path: Some(path), value: Some(value), stats }
    }

    fn none(stats: SolveStats) -> SolveOutcome {
        SolveOutcome { path: None, value: None, stats }
    }

    pub fn is_found(&self) -> bool {
        self.path.is_some()
    }
}

/// Dijkstra toward `target` on the masked graph under an arc weighting.
/// `weight` returns None to exclude an arc entirely. Minimizes
/// (total weight, hops) lexicographically.
fn table_toward(
    g: &Graph,
    mask: &ArcMask,
    target: VertexId,
    weight: impl Fn(ArcId, &Arc) -> Option<i64>,
    stats: &mut SolveStats,
) -> Result<DistanceTable> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<i64>> = vec![None; n + 1];
    let mut hops: Vec<u32> = vec![0; n + 1];
    let mut heap: BinaryHeap<Reverse<(i64, u32, VertexId)>> = BinaryHeap::new();
    dist[target] = Some(0);
    heap.push(Reverse((0, 0, target)));

    while let Some(Reverse((d, h, u))) = heap.pop() {
        if dist[u] != Some(d) || hops[u] != h {
            continue;
        }
        for &aid in g.in_arcs(u) {
            if mask.is_removed(aid) {
                continue;
            }
            let arc = g.arc(aid);
            let Some(w) = weight(aid, arc) else { continue };
            debug_assert!(w >= 0);
            let v = arc.tail;
            let nd = d.checked_add(w).ok_or(Error::Overflow)?;
            let nh = h + 1;
            let better = match dist[v] {
                None => true,
                Some(od) => (nd, nh) < (od, hops[v]),
            };
            if better {
                dist[v] = Some(nd);
                hops[v] = nh;
                stats.relaxations += 1;
                heap.push(Reverse((nd, nh, v)));
            }
        }
    }

    // Deterministic parents: smallest arc id that attains the optimum.
    let mut parent: Vec<Option<ArcId>> = vec![None; n + 1];
    for u in 1..=n {
        let (Some(du), true) = (dist[u], u != target) else { continue };
        for &aid in g.out_arcs(u) {
            if mask.is_removed(aid) {
                continue;
            }
            let arc = g.arc(aid);
            let Some(w) = weight(aid, arc) else { continue };
            if let Some(dv) = dist[arc.head] {
                if dv.checked_add(w) == Some(du) && hops[arc.head] + 1 == hops[u] {
                    parent[u] = Some(aid);
                    break;
                }
            }
        }
        debug_assert!(parent[u].is_some(), "reachable vertex without parent");
    }
    Ok(DistanceTable { dist, hops, parent })
}

fn extract_arcs(g: &Graph, from: VertexId, target: VertexId, table: &DistanceTable) -> Option<Vec<ArcId>> {
    table.dist[from]?;
    let mut arcs = Vec::new();
    let mut at = from;
    while at != target {
        let aid = table.parent[at].expect("parent missing on reachable vertex");
        arcs.push(aid);
        at = g.arc(aid).head;
    }
    Some(arcs)
}

/// Sum-objective distances from every vertex to the graph's sink, i.e. a
/// single shortest path run on the inverse masked graph.
pub fn all_distances_to_sink(g: &Graph, mask: &ArcMask) -> Result<DistanceTable> {
    let mut stats = SolveStats::default();
    table_toward(g, mask, g.sink(), |_, a| Some(a.cost), &mut stats)
}

/// Minimum total cost path; ties by fewer hops, then lexicographically
/// smallest arc ids. The hop tie-break excludes zero-cost cycles.
pub fn solve_sum(g: &Graph, mask: &ArcMask, from: VertexId, to: VertexId) -> Result<SolveOutcome> {
    let mut stats = SolveStats::default();
    if from == to {
        return Ok(SolveOutcome::found(Path::trivial(from), 0, stats));
    }
    let table = table_toward(g, mask, to, |_, a| Some(a.cost), &mut stats)?;
    match extract_arcs(g, from, to, &table) {
        Some(arcs) => {
            let value = table.dist[from].unwrap();
            let path = Path::from_arcs(g, from, arcs)?;
            Ok(SolveOutcome::found(path, value, stats))
        }
        None => Ok(SolveOutcome::none(stats)),
    }
}

fn reachable_within(g: &Graph, mask: &ArcMask, from: VertexId, to: VertexId, cap: i64) -> bool {
    let mut seen = vec![false; g.vertex_count() + 1];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        for &aid in g.out_arcs(u) {
            if mask.is_removed(aid) {
                continue;
            }
            let arc = g.arc(aid);
            if arc.cost <= cap && !seen[arc.head] {
                seen[arc.head] = true;
                queue.push_back(arc.head);
            }
        }
    }
    false
}

fn distinct_unmasked_costs(g: &Graph, mask: &ArcMask) -> Vec<i64> {
    let mut costs: Vec<i64> = g
        .arc_ids()
        .filter(|&id| !mask.is_removed(id))
        .map(|id| g.arc(id).cost)
        .collect();
    costs.sort_unstable();
    costs.dedup();
    costs
}

/// Path minimizing the maximum arc cost: binary search over the distinct
/// costs with reachability probes restricted to arcs at or below the
/// threshold.
pub fn solve_bottleneck(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
) -> Result<SolveOutcome> {
    let mut stats = SolveStats::default();
    if from == to {
        return Ok(SolveOutcome::found(Path::trivial(from), 0, stats));
    }
    let cands = distinct_unmasked_costs(g, mask);
    if cands.is_empty() {
        return Ok(SolveOutcome::none(stats));
    }
    stats.probes += 1;
    if !reachable_within(g, mask, from, to, *cands.last().unwrap()) {
        return Ok(SolveOutcome::none(stats));
    }
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        stats.probes += 1;
        if reachable_within(g, mask, from, to, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let tau = cands[lo];
    // Min-hop lexicographic path among arcs within the threshold.
    let table = table_toward(
        g,
        mask,
        to,
        |_, a| if a.cost <= tau { Some(0) } else { None },
        &mut stats,
    )?;
    let arcs = extract_arcs(g, from, to, &table).expect("threshold was probed reachable");
    let path = Path::from_arcs(g, from, arcs)?;
    let value = objective::universal_value(&path, &Lambda::Bottleneck, g)?;
    debug_assert_eq!(value, tau);
    Ok(SolveOutcome::found(path, value, stats))
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    let max = g.vertex_count() - 1;
    if k >= 1 && k <= max {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("k={k} outside 1..={max}")))
    }
}

/// Path minimizing the k-th largest arc cost. Bisection over candidate
/// thresholds {0} plus the distinct arc costs; threshold tau is feasible iff
/// some path uses at most k-1 arcs costlier than tau.
pub fn solve_kmax(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
    k: usize,
) -> Result<SolveOutcome> {
    check_k(g, k)?;
    let mut stats = SolveStats::default();
    if from == to {
        return Ok(SolveOutcome::found(Path::trivial(from), 0, stats));
    }
    let mut cands = distinct_unmasked_costs(g, mask);
    cands.insert(0, 0);
    cands.dedup();

    let expensive_beyond = |tau: i64, stats: &mut SolveStats| -> Result<Option<i64>> {
        let table = table_toward(g, mask, to, |_, a| Some((a.cost > tau) as i64), stats)?;
        Ok(table.dist[from])
    };

    stats.probes += 1;
    match expensive_beyond(*cands.last().unwrap(), &mut stats)? {
        None => return Ok(SolveOutcome::none(stats)),
        Some(d) => debug_assert_eq!(d, 0),
    }
    let feasible = |tau: i64, stats: &mut SolveStats| -> Result<bool> {
        stats.probes += 1;
        Ok(matches!(expensive_beyond(tau, stats)?, Some(d) if d <= k as i64 - 1))
    };
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid], &mut stats)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let tau = cands[lo];
    let table = table_toward(g, mask, to, |_, a| Some((a.cost > tau) as i64), &mut stats)?;
    let arcs = extract_arcs(g, from, to, &table).expect("feasible threshold is reachable");
    let path = Path::from_arcs(g, from, arcs)?;
    let value = objective::universal_value(&path, &Lambda::KMax(k), g)?;
    debug_assert_eq!(value, tau);
    Ok(SolveOutcome::found(path, value, stats))
}

/// Path minimizing the sum of the k largest arc costs. For every threshold
/// tau in {0} plus the distinct costs, solve a sum shortest path under
/// truncated costs (c - tau)+ and score k*tau + distance; the best score over
/// all thresholds is the optimum.
pub fn solve_ksum(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
    k: usize,
) -> Result<SolveOutcome> {
    check_k(g, k)?;
    let mut stats = SolveStats::default();
    if from == to {
        return Ok(SolveOutcome::found(Path::trivial(from), 0, stats));
    }
    let mut cands = distinct_unmasked_costs(g, mask);
    cands.insert(0, 0);
    cands.dedup();

    let mut best: Option<(i64, Vec<ArcId>)> = None;
    for tau in cands {
        stats.probes += 1;
        let table =
            table_toward(g, mask, to, |_, a| Some((a.cost - tau).max(0)), &mut stats)?;
        let Some(d) = table.dist[from] else { continue };
        let score = (k as i64)
            .checked_mul(tau)
            .and_then(|kt| kt.checked_add(d))
            .ok_or(Error::Overflow)?;
        if best.as_ref().map_or(true, |(b, _)| score < *b) {
            let arcs = extract_arcs(g, from, to, &table).unwrap();
            best = Some((score, arcs));
        }
    }
    match best {
        Some((score, arcs)) => {
            let path = Path::from_arcs(g, from, arcs)?;
            let value = objective::universal_value(&path, &Lambda::KSum(k), g)?;
            debug_assert_eq!(value, score);
            Ok(SolveOutcome::found(path, value, stats))
        }
        None => Ok(SolveOutcome::none(stats)),
    }
}

/// Default vertex-count gate for exhaustive search; `UNSSP_SIZE_GATE`
/// overrides it (intended for tests).
pub(crate) fn brute_vertex_gate() -> usize {
    std::env::var("UNSSP_SIZE_GATE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(14)
}

pub(crate) const BRUTE_PATH_GATE: usize = 1_000_000;

/// Refuses instances too large for exhaustive enumeration: more vertices
/// than the gate and more simple paths than the path cap.
pub(crate) fn check_brute_gate(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
) -> Result<()> {
    let max_n = brute_vertex_gate();
    if g.vertex_count() <= max_n {
        return Ok(());
    }
    let mut count = 0usize;
    let within = for_each_simple_path(g, mask, from, to, |_, _| {
        count += 1;
        count <= BRUTE_PATH_GATE
    });
    if within {
        Ok(())
    } else {
        Err(Error::SizeGate(format!(
            "n={} exceeds {max_n} and the instance has more than {BRUTE_PATH_GATE} simple paths",
            g.vertex_count()
        )))
    }
}

/// Exhaustive optimum over all simple `from`-`to` paths; works for weight
/// vectors of arbitrary sign. Ties break toward the lexicographically
/// smallest arc-id sequence.
pub fn solve_brute(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
    lam: &Lambda,
) -> Result<SolveOutcome> {
    lam.validate(g.vertex_count())?;
    check_brute_gate(g, mask, from, to)?;
    let mut stats = SolveStats::default();
    let mut best: Option<(i64, Vec<ArcId>)> = None;
    let mut failure: Option<Error> = None;
    for_each_simple_path(g, mask, from, to, |arcs, _| {
        stats.probes += 1;
        let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
        match objective::value_of_costs(lam, costs, g.vertex_count()) {
            Ok(v) => {
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, arcs.to_vec()));
                }
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match best {
        Some((value, arcs)) => {
            let path = Path::from_arcs(g, from, arcs)?;
            Ok(SolveOutcome::found(path, value, stats))
        }
        None => Ok(SolveOutcome::none(stats)),
    }
}

/// Dispatches to the specialized solver for family weights and to the
/// exhaustive solver for explicit vectors.
pub fn solve(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
    lam: &Lambda,
) -> Result<SolveOutcome> {
    match lam {
        Lambda::Sum => solve_sum(g, mask, from, to),
        Lambda::Bottleneck => solve_bottleneck(g, mask, from, to),
        Lambda::KSum(k) => solve_ksum(g, mask, from, to, *k),
        Lambda::KMax(k) => solve_kmax(g, mask, from, to, *k),
        Lambda::Explicit(_) => solve_brute(g, mask, from, to, lam),
    }
}

/// Visits every simple `from`-`to` path in the masked graph in
/// lexicographic arc-id-sequence order. The visitor receives the arc ids and
/// the vertex sequence; returning false aborts the walk. Returns false iff
/// aborted.
pub(crate) fn for_each_simple_path<F>(
    g: &Graph,
    mask: &ArcMask,
    from: VertexId,
    to: VertexId,
    mut visit: F,
) -> bool
where
    F: FnMut(&[ArcId], &[VertexId]) -> bool,
{
    if from == to {
        return visit(&[], &[from]);
    }
    let mut on_path = vec![false; g.vertex_count() + 1];
    let mut path_arcs: Vec<ArcId> = Vec::new();
    let mut path_verts: Vec<VertexId> = vec![from];
    let mut cursors: Vec<usize> = vec![0];
    on_path[from] = true;

    loop {
        let depth = cursors.len() - 1;
        let u = *path_verts.last().unwrap();
        let adj = g.out_arcs(u);
        let mut descended = false;
        while cursors[depth] < adj.len() {
            let aid = adj[cursors[depth]];
            cursors[depth] += 1;
            if mask.is_removed(aid) {
                continue;
            }
            let v = g.arc(aid).head;
            if v == to {
                path_arcs.push(aid);
                path_verts.push(v);
                let keep = visit(&path_arcs, &path_verts);
                path_arcs.pop();
                path_verts.pop();
                if !keep {
                    return false;
                }
                continue;
            }
            if on_path[v] {
                continue;
            }
            on_path[v] = true;
            path_arcs.push(aid);
            path_verts.push(v);
            cursors.push(0);
            descended = true;
            break;
        }
        if descended {
            continue;
        }
        cursors.pop();
        if cursors.is_empty() {
            return true;
        }
        let v = path_verts.pop().unwrap();
        on_path[v] = false;
        path_arcs.pop();
    }
}

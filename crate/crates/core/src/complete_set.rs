//! Minimal complete sets (one representative path per achievable value
//! within the bound), the next-value query they are built from, a
//! polynomial-style subset procedure for the fixed-k sum objective, and the
//! interval partition with per-interval representatives.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::error::{Error, Result};
use crate::graph::{ArcId, ArcMask, Graph, Path, VertexId};
use crate::objective::{self, Bound, Lambda};
use crate::solvers;

/// Query for the minimum-value simple s-t path with value at least `xi`
/// (equivalently mu + 1), optionally capped by `psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NextUspQuery {
    pub lam: Lambda,
    pub xi: i64,
    pub mu: Option<i64>,
    pub psi: Option<i64>,
}

impl NextUspQuery {
    pub fn new(lam: Lambda, xi: i64) -> NextUspQuery {
        NextUspQuery { lam, xi, mu: None, psi: None }
    }

    /// Decision form: find a value in [mu+1, psi].
    pub fn from_mu(lam: Lambda, mu: i64, psi: i64) -> Result<NextUspQuery> {
        let q = NextUspQuery { lam, xi: mu + 1, mu: Some(mu), psi: Some(psi) };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(mu), Some(psi)) = (self.mu, self.psi) {
            if psi <= mu {
                return Err(Error::InvalidInput(format!("psi {psi} must exceed mu {mu}")));
            }
        }
        Ok(())
    }
}

/// Minimum f-value at or above the query's target among all simple s-t
/// paths, with a witness path. Exhaustive with pruning at the cap; ties go
/// to the lexicographically smallest arc sequence.
pub fn next_usp(g: &Graph, q: &NextUspQuery) -> Result<Option<(i64, Path)>> {
    q.validate()?;
    q.lam.validate(g.vertex_count())?;
    let mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());
    solvers::check_brute_gate(g, &mask, s, t)?;

    let mut best: Option<(i64, Vec<ArcId>)> = None;
    let mut failure: Option<Error> = None;
    solvers::for_each_simple_path(g, &mask, s, t, |arcs, _| {
        let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
        let value = match objective::value_of_costs(&q.lam, costs, g.vertex_count()) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if value < q.xi {
            return true;
        }
        if let Some(psi) = q.psi {
            if value > psi {
                return true;
            }
        }
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, arcs.to_vec()));
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match best {
        Some((value, arcs)) => Ok(Some((value, Path::from_arcs(g, s, arcs)?))),
        None => Ok(None),
    }
}

const THEOREM5_MAX_K: usize = 3;
const THEOREM5_MAX_M: usize = 25;

/// Decision procedure for the k-sum objective: is there a simple s-t path
/// with value in [mu+1, psi]?
///
/// Iterates arc subsets in ascending total cost. A k-subset R is a witness
/// candidate when its total lies in the window; the graph is then restricted
/// to R plus all arcs no costlier than R's cheapest member, and each of the
/// k! orderings of R is tested for a simple s-t path threading R in that
/// order (a backtracking search, so connector segments never collide).
/// Subsets smaller than k cover witness paths with fewer than k arcs; those
/// must form the entire path. Returns the witness value and path, or None.
pub fn next_usp_theorem5(
    g: &Graph,
    k: usize,
    mu: i64,
    psi: i64,
) -> Result<Option<(i64, Path)>> {
    let n = g.vertex_count();
    let m = g.arc_count();
    if k < 1 || k > n.saturating_sub(1) {
        return Err(Error::InvalidInput(format!("k={k} outside 1..={}", n - 1)));
    }
    if psi <= mu {
        return Err(Error::InvalidInput(format!("psi {psi} must exceed mu {mu}")));
    }
    if k > THEOREM5_MAX_K || m > THEOREM5_MAX_M {
        return Err(Error::SizeGate(format!(
            "subset procedure gated at k <= {THEOREM5_MAX_K}, m <= {THEOREM5_MAX_M} (got k={k}, m={m})"
        )));
    }

    // Arcs ascending by (cost, id); subsets are index vectors into this order.
    let mut order: Vec<ArcId> = g.arc_ids().collect();
    order.sort_by_key(|&id| (g.arc(id).cost, id));
    let cost_at = |idx: usize| g.arc(order[idx]).cost;

    let mut heap: BinaryHeap<Reverse<(i64, Vec<usize>)>> = BinaryHeap::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for j in 1..=k.min(m) {
        let idxs: Vec<usize> = (0..j).collect();
        let sum: i64 = idxs.iter().map(|&i| cost_at(i)).sum();
        seen.insert(idxs.clone());
        heap.push(Reverse((sum, idxs)));
    }

    while let Some(Reverse((sum, idxs))) = heap.pop() {
        if sum > psi {
            break;
        }
        if sum > mu {
            let subset: Vec<ArcId> = idxs.iter().map(|&i| order[i]).collect();
            if let Some(path) = thread_subset(g, &subset, k)? {
                let value = objective::universal_value(&path, &Lambda::KSum(k), g)?;
                debug_assert_eq!(value, sum);
                return Ok(Some((sum, path)));
            }
        }
        for pos in 0..idxs.len() {
            let next = idxs[pos] + 1;
            let upper = idxs.get(pos + 1).copied().unwrap_or(m);
            if next < upper {
                let mut succ = idxs.clone();
                succ[pos] = next;
                if seen.insert(succ.clone()) {
                    let nsum = sum - cost_at(idxs[pos]) + cost_at(next);
                    heap.push(Reverse((nsum, succ)));
                }
            }
        }
    }
    Ok(None)
}

/// Tries to realize `subset` as the top-|subset| arcs of a simple s-t path.
/// For |subset| = k the path may add connector arcs no costlier than the
/// subset's cheapest member; for smaller subsets the path must consist of
/// exactly these arcs.
fn thread_subset(g: &Graph, subset: &[ArcId], k: usize) -> Result<Option<Path>> {
    let (s, t) = (g.source(), g.sink());
    if subset.len() < k {
        // The witness path has fewer than k arcs, so the subset is the whole
        // path: check every ordering for an s-t chain.
        for perm in permutations(subset) {
            if g.arc(perm[0]).tail != s || g.arc(*perm.last().unwrap()).head != t {
                continue;
            }
            if perm.windows(2).all(|w| g.arc(w[0]).head == g.arc(w[1]).tail) {
                if let Ok(p) = Path::from_arcs(g, s, perm) {
                    return Ok(Some(p));
                }
            }
        }
        return Ok(None);
    }

    let cap = subset.iter().map(|&id| g.arc(id).cost).min().unwrap();
    let in_subset: HashSet<ArcId> = subset.iter().copied().collect();
    // Connector arcs: everything at or below the subset's cheapest cost.
    let connector = |id: ArcId| !in_subset.contains(&id) && g.arc(id).cost <= cap;

    for perm in permutations(subset) {
        let mut visited = vec![false; g.vertex_count() + 1];
        visited[s] = true;
        let mut arcs_taken: Vec<ArcId> = Vec::new();
        if thread_dfs(g, s, t, &perm, 0, &connector, &mut visited, &mut arcs_taken) {
            return Ok(Some(Path::from_arcs(g, s, arcs_taken)?));
        }
    }
    Ok(None)
}

/// Backtracking search for a simple path from `at` to `t` traversing the
/// checkpoint arcs in order, connectors in between.
#[allow(clippy::too_many_arguments)]
fn thread_dfs(
    g: &Graph,
    at: VertexId,
    t: VertexId,
    checkpoints: &[ArcId],
    next: usize,
    connector: &impl Fn(ArcId) -> bool,
    visited: &mut Vec<bool>,
    arcs_taken: &mut Vec<ArcId>,
) -> bool {
    if at == t {
        return next == checkpoints.len();
    }
    if next < checkpoints.len() {
        let cp = checkpoints[next];
        let arc = g.arc(cp);
        if arc.tail == at && !visited[arc.head] {
            visited[arc.head] = true;
            arcs_taken.push(cp);
            if thread_dfs(g, arc.head, t, checkpoints, next + 1, connector, visited, arcs_taken) {
                return true;
            }
            arcs_taken.pop();
            visited[arc.head] = false;
        }
    }
    for &aid in g.out_arcs(at) {
        if !connector(aid) {
            continue;
        }
        let arc = g.arc(aid);
        if visited[arc.head] {
            continue;
        }
        visited[arc.head] = true;
        arcs_taken.push(aid);
        if thread_dfs(g, arc.head, t, checkpoints, next, connector, visited, arcs_taken) {
            return true;
        }
        arcs_taken.pop();
        visited[arc.head] = false;
    }
    false
}

fn permutations(items: &[ArcId]) -> Vec<Vec<ArcId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// One representative path per distinct achievable value in [f*, B],
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCompleteSet {
    pub entries: Vec<(i64, Path)>,
}

/// Builds the minimal complete set by enumerating once, memoizing the first
/// (lexicographically smallest) path per value, and replaying the
/// increment-the-target loop against the memo: start at f*, then repeatedly
/// ask for the smallest value at or above the previous value plus one, until
/// the target passes floor(B). Observable behavior matches literal repeated
/// next-value queries at linear instead of quadratic cost.
pub fn minimal_complete_set(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
) -> Result<MinimalCompleteSet> {
    lam.validate(g.vertex_count())?;
    if !lam.is_nonneg() {
        return Err(Error::InvalidInput(
            "minimal complete sets require a nonnegative weight vector".into(),
        ));
    }
    if eps < Rational64::from_integer(0) {
        return Err(Error::InvalidInput(format!("epsilon {eps} is negative")));
    }
    let mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());
    solvers::check_brute_gate(g, &mask, s, t)?;

    let opt = solvers::solve_brute(g, &mask, s, t, lam)?;
    let Some(f_star) = opt.value else {
        return Ok(MinimalCompleteSet { entries: Vec::new() });
    };
    let bound = Bound::new(f_star, eps)?;

    let mut memo: BTreeMap<i64, Vec<ArcId>> = BTreeMap::new();
    let mut failure: Option<Error> = None;
    solvers::for_each_simple_path(g, &mask, s, t, |arcs, _| {
        let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
        match objective::value_of_costs(lam, costs, g.vertex_count()) {
            Ok(v) => {
                if bound.admits(v) {
                    memo.entry(v).or_insert_with(|| arcs.to_vec());
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

    let mut entries: Vec<(i64, Path)> = Vec::new();
    let first = memo.get(&f_star).expect("optimal value is always admitted");
    entries.push((f_star, Path::from_arcs(g, s, first.clone())?));
    let floor_b = bound.floor();
    let mut xi = f_star + 1;
    while xi != floor_b + 1 {
        match memo.range(xi..).next() {
            Some((&value, arcs)) => {
                entries.push((value, Path::from_arcs(g, s, arcs.clone())?));
                xi = value + 1;
            }
            None => break,
        }
    }
    Ok(MinimalCompleteSet { entries })
}

/// One half-open cell of the interval partition; the last cell is closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub closed: bool,
}

impl Interval {
    pub fn contains_value(&self, value: i64) -> bool {
        let v = BigRational::from_integer(BigInt::from(value));
        if v < self.lo {
            return false;
        }
        if self.closed {
            v <= self.hi
        } else {
            v < self.hi
        }
    }
}

/// Geometric partition of [U, B]: cells [(1+delta)^i U, (1+delta)^(i+1) U)
/// and a final closed cell ending at B. Boundaries are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
    pub u: i64,
    pub delta: BigRational,
}

impl IntervalPartition {
    pub fn locate(&self, value: i64) -> Option<usize> {
        self.intervals.iter().position(|iv| iv.contains_value(value))
    }
}

fn big_ratio(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Splits [U, B] with B = (1+eps) U at the powers of (1+delta). Requires
/// U > 0 (a zero optimum collapses the whole range to a point; callers
/// should treat that case as a single interval), eps > 0 and delta > 0.
pub fn interval_partition(
    u: i64,
    eps: Rational64,
    delta: Rational64,
) -> Result<IntervalPartition> {
    if u == 0 {
        return Err(Error::InvalidInput(
            "optimum value 0 degenerates the range to a point; treat it as one interval".into(),
        ));
    }
    if u < 0 {
        return Err(Error::InvalidInput(format!("optimum value {u} must be positive")));
    }
    let zero = Rational64::from_integer(0);
    if eps <= zero {
        return Err(Error::InvalidInput(format!("epsilon {eps} must be positive")));
    }
    if delta <= zero {
        return Err(Error::InvalidInput(format!("delta {delta} must be positive")));
    }

    let one = BigRational::from_integer(BigInt::from(1));
    let u_big = BigRational::from_integer(BigInt::from(u));
    let b = (&one + big_ratio(eps)) * &u_big;
    let growth = &one + big_ratio(delta);

    let mut boundaries = vec![u_big.clone()];
    let mut cur = u_big;
    while cur < b {
        cur *= &growth;
        boundaries.push(cur.clone());
    }
    let cells = boundaries.len() - 1;
    let mut intervals = Vec::with_capacity(cells);
    for i in 0..cells {
        if i + 1 < cells {
            intervals.push(Interval {
                lo: boundaries[i].clone(),
                hi: boundaries[i + 1].clone(),
                closed: false,
            });
        } else {
            intervals.push(Interval { lo: boundaries[i].clone(), hi: b.clone(), closed: true });
        }
    }
    Ok(IntervalPartition { intervals, u, delta: big_ratio(delta) })
}

/// One witness path per nonempty interval, found in a single enumeration
/// pass binned by interval. Entries align with the partition's cells.
pub fn representatives(
    g: &Graph,
    lam: &Lambda,
    eps: Rational64,
    delta: Rational64,
) -> Result<(IntervalPartition, Vec<Option<(i64, Path)>>)> {
    lam.validate(g.vertex_count())?;
    let mask = ArcMask::new(g);
    let (s, t) = (g.source(), g.sink());
    solvers::check_brute_gate(g, &mask, s, t)?;
    let opt = solvers::solve(g, &mask, s, t, lam)?;
    let Some(f_star) = opt.value else {
        return Err(Error::InvalidInput("no s-t path, so no value range to partition".into()));
    };
    let partition = interval_partition(f_star, eps, delta)?;
    let bound = Bound::new(f_star, eps)?;

    let mut witnesses: Vec<Option<(i64, Path)>> = vec![None; partition.intervals.len()];
    let mut failure: Option<Error> = None;
    solvers::for_each_simple_path(g, &mask, s, t, |arcs, _| {
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
        let idx = partition.locate(value).expect("admitted value lies in the partition");
        if witnesses[idx].is_none() {
            match Path::from_arcs(g, s, arcs.to_vec()) {
                Ok(p) => witnesses[idx] = Some((value, p)),
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((partition, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::instances;

    const FIG1: &str = "p unssp 5 6\ns 1\nt 5\n\
        a 1 2 1\na 2 3 6\na 2 4 4\na 4 3 3\na 3 5 2\na 4 5 5\n";

    fn fig1() -> Graph {
        parse_graph(FIG1).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn next_usp_on_example() {
        let g = fig1();
        // sums are 9, 10, 10; ties go to the lexicographically smaller arcs
        let q = NextUspQuery::new(Lambda::Sum, 10);
        let (value, path) = next_usp(&g, &q).unwrap().unwrap();
        assert_eq!(value, 10);
        assert_eq!(path.arc_ids(), &[1, 3, 4, 5]);

        let q = NextUspQuery::new(Lambda::Sum, 9);
        assert_eq!(next_usp(&g, &q).unwrap().unwrap().0, 9);

        let q = NextUspQuery::new(Lambda::Sum, 11);
        assert!(next_usp(&g, &q).unwrap().is_none());

        // cap excludes the only qualifying values
        let q = NextUspQuery { lam: Lambda::Sum, xi: 10, mu: None, psi: Some(9) };
        assert!(next_usp(&g, &q).unwrap().is_none());

        assert!(NextUspQuery::from_mu(Lambda::Sum, 9, 9).is_err());
    }

    #[test]
    fn theorem5_on_example() {
        let g = fig1();
        // k-sum values of the three paths are 8, 7, 9
        let (value, path) = next_usp_theorem5(&g, 2, 7, 8).unwrap().unwrap();
        assert_eq!(value, 8);
        assert_eq!(path.vertices(), &[1, 2, 3, 5]);

        assert!(next_usp_theorem5(&g, 2, 9, 100).unwrap().is_none());
        assert!(next_usp_theorem5(&g, 2, 8, 8).is_err());
        assert!(next_usp_theorem5(&g, 0, 0, 5).is_err());
    }

    #[test]
    fn theorem5_covers_paths_shorter_than_k() {
        // single-arc graph: the only path has value 5 under any k-sum
        let g = parse_graph("p unssp 3 1\ns 1\nt 3\na 1 3 5\n").unwrap();
        let (value, path) = next_usp_theorem5(&g, 2, 4, 6).unwrap().unwrap();
        assert_eq!(value, 5);
        assert_eq!(path.len(), 1);
        assert!(next_usp_theorem5(&g, 2, 5, 6).unwrap().is_none());
    }

    #[test]
    fn theorem5_agrees_with_next_usp_on_random_instances() {
        for seed in 0..60u64 {
            let n = 4 + (seed % 5) as usize;
            let m = (n + 3).min(14);
            let g = instances::gen_random(n, m, 6, seed).unwrap();
            for k in 1..=2usize {
                let values: Vec<i64> = {
                    let mask = ArcMask::new(&g);
                    let mut vs = Vec::new();
                    solvers::for_each_simple_path(&g, &mask, 1, n, |arcs, _| {
                        let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
                        vs.push(
                            objective::value_of_costs(&Lambda::KSum(k), costs, n).unwrap(),
                        );
                        true
                    });
                    vs
                };
                let lo = *values.iter().min().unwrap();
                let hi = *values.iter().max().unwrap();
                for (mu, psi) in [(lo, hi.max(lo + 1)), (lo - 1, lo), (hi, hi + 3)] {
                    let brute_yes = values.iter().any(|&v| v > mu && v <= psi);
                    let got = next_usp_theorem5(&g, k, mu, psi).unwrap();
                    assert_eq!(
                        got.is_some(),
                        brute_yes,
                        "seed {seed} k {k} window ({mu}, {psi}]"
                    );
                    if let Some((v, p)) = got {
                        assert!(v > mu && v <= psi);
                        assert_eq!(
                            objective::universal_value(&p, &Lambda::KSum(k), &g).unwrap(),
                            v
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_complete_set_on_doubling_family() {
        let g = instances::gen_binary_doubling(6).unwrap();
        let mcs = minimal_complete_set(&g, &Lambda::Sum, rat(15, 1)).unwrap();
        assert_eq!(mcs.entries.len(), 16);
        let values: Vec<i64> = mcs.entries.iter().map(|(v, _)| *v).collect();
        assert_eq!(values, (1..=16).collect::<Vec<_>>());
        for (v, p) in &mcs.entries {
            assert_eq!(objective::universal_value(p, &Lambda::Sum, &g).unwrap(), *v);
        }
    }

    #[test]
    fn minimal_complete_set_on_example() {
        let g = fig1();
        let mcs = minimal_complete_set(&g, &Lambda::KMax(2), rat(1, 2)).unwrap();
        let values: Vec<i64> = mcs.entries.iter().map(|(v, _)| *v).collect();
        assert_eq!(values, vec![2, 3]);

        let exact = minimal_complete_set(&g, &Lambda::KMax(2), rat(0, 1)).unwrap();
        assert_eq!(exact.entries.len(), 1);
        assert_eq!(exact.entries[0].0, 2);
    }

    #[test]
    fn interval_partition_two_interval_parameterization() {
        // eps = (n-1)/U - 1 and delta = (n-3/2)/U - 1 split [U, n-1] at n-3/2
        for n in 4i64..=12 {
            for u in 1..=(n - 2) {
                let eps = rat(n - 1 - u, u);
                let delta = rat(2 * n - 3 - 2 * u, 2 * u);
                let part = interval_partition(u, eps, delta).unwrap();
                assert_eq!(part.intervals.len(), 2, "n={n} u={u}");
                let mid = BigRational::new(BigInt::from(2 * n - 3), BigInt::from(2));
                assert_eq!(part.intervals[0].lo, BigRational::from_integer(BigInt::from(u)));
                assert_eq!(part.intervals[0].hi, mid);
                assert!(!part.intervals[0].closed);
                assert_eq!(part.intervals[1].lo, mid);
                assert_eq!(part.intervals[1].hi, BigRational::from_integer(BigInt::from(n - 1)));
                assert!(part.intervals[1].closed);
            }
        }
    }

    #[test]
    fn interval_partition_single_cell_when_delta_dominates() {
        let part = interval_partition(9, rat(1, 2), rat(1, 2)).unwrap();
        assert_eq!(part.intervals.len(), 1);
        assert!(part.intervals[0].closed);
        let part = interval_partition(9, rat(1, 2), rat(3, 1)).unwrap();
        assert_eq!(part.intervals.len(), 1);
    }

    #[test]
    fn interval_partition_tiles_exactly() {
        for seed in 0..100i64 {
            let u = 1 + (seed * 7) % 40;
            let eps = rat(1 + seed % 5, 1 + (seed % 3) as i64 * 3 + 1);
            let delta = rat(1, 2 + seed % 9);
            let part = interval_partition(u, eps, delta).unwrap();
            let b = (BigRational::from_integer(BigInt::from(1)) + big_ratio(eps))
                * BigRational::from_integer(BigInt::from(u));
            assert_eq!(part.intervals[0].lo, BigRational::from_integer(BigInt::from(u)));
            for w in part.intervals.windows(2) {
                assert_eq!(w[0].hi, w[1].lo, "adjacent cells must share a boundary");
                assert!(!w[0].closed);
            }
            let last = part.intervals.last().unwrap();
            assert_eq!(last.hi, b);
            assert!(last.closed);
            assert!(last.lo < b, "final cell is nonempty");
        }
    }

    #[test]
    fn interval_partition_rejects_degenerate_inputs() {
        assert!(matches!(
            interval_partition(0, rat(1, 2), rat(1, 2)),
            Err(Error::InvalidInput(_))
        ));
        assert!(interval_partition(5, rat(0, 1), rat(1, 2)).is_err());
        assert!(interval_partition(5, rat(1, 2), rat(0, 1)).is_err());
    }

    #[test]
    fn representatives_on_example() {
        let g = fig1();
        // U = 9, values 9, 10, 10; with delta = 1/20 the value 9 falls in
        // cell 0 and value 10 in cell 2
        let (part, wits) = representatives(&g, &Lambda::Sum, rat(1, 2), rat(1, 20)).unwrap();
        assert_eq!(part.intervals.len(), 9);
        let hit: Vec<usize> =
            wits.iter().enumerate().filter(|(_, w)| w.is_some()).map(|(i, _)| i).collect();
        assert_eq!(hit, vec![0, 2]);
        assert_eq!(wits[0].as_ref().unwrap().0, 9);
        assert_eq!(wits[2].as_ref().unwrap().0, 10);
        for (idx, w) in wits.iter().enumerate() {
            if let Some((v, p)) = w {
                assert!(part.intervals[idx].contains_value(*v));
                assert_eq!(objective::universal_value(p, &Lambda::Sum, &g).unwrap(), *v);
            }
        }
    }

    #[test]
    fn representatives_single_interval_and_sparse_cases() {
        let g = fig1();
        let (part, wits) = representatives(&g, &Lambda::Sum, rat(1, 2), rat(2, 1)).unwrap();
        assert_eq!(part.intervals.len(), 1);
        let (v, p) = wits[0].as_ref().unwrap();
        assert_eq!(*v, 9);
        assert_eq!(p.arc_ids(), &[1, 2, 5]);

        // one single path: only the first cell is witnessed
        let chain = parse_graph("p unssp 3 2\ns 1\nt 3\na 1 2 2\na 2 3 2\n").unwrap();
        let (part, wits) = representatives(&chain, &Lambda::Sum, rat(3, 1), rat(1, 10)).unwrap();
        assert!(wits[0].is_some());
        assert!(wits[1..].iter().all(|w| w.is_none()));
        assert!(part.intervals.len() > 1);
    }

    #[test]
    fn next_usp_matches_value_set_minimum() {
        for seed in 100..160u64 {
            let n = 4 + (seed % 5) as usize;
            let g = instances::gen_random(n, n + 4, 9, seed).unwrap();
            let lam = Lambda::Sum;
            let mask = ArcMask::new(&g);
            let mut values = Vec::new();
            solvers::for_each_simple_path(&g, &mask, 1, n, |arcs, _| {
                let costs = arcs.iter().map(|&id| g.arc(id).cost).collect();
                values.push(objective::value_of_costs(&lam, costs, n).unwrap());
                true
            });
            values.sort_unstable();
            for xi in [values[0] - 1, values[0], values[0] + 2, values[values.len() - 1] + 1] {
                let want = values.iter().copied().find(|&v| v >= xi);
                let got = next_usp(&g, &NextUspQuery::new(lam.clone(), xi))
                    .unwrap()
                    .map(|(v, _)| v);
                assert_eq!(got, want, "seed {seed} xi {xi}");
            }
        }
    }
}

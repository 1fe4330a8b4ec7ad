//! Directed graph with integer arc costs, file parsing, the inverse graph,
//! and cheap reversible arc masking.
//!
//! Vertices and arc ids are 1-based throughout; arc ids follow file order.
//! Parallel arcs are permitted everywhere (masking works on ids, not
//! endpoint pairs).

use crate::error::{Error, ParseErrorKind, Result};

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub cost: i64,
}

/// Immutable directed graph with a fixed source and sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<ArcId>>,
    in_adj: Vec<Vec<ArcId>>,
    source: VertexId,
    sink: VertexId,
}

impl Graph {
    pub fn new(
        n: usize,
        arcs: Vec<(VertexId, VertexId, i64)>,
        source: VertexId,
        sink: VertexId,
    ) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex".into()));
        }
        if source < 1 || source > n {
            return Err(Error::InvalidInput(format!("source {source} out of range 1..={n}")));
        }
        if sink < 1 || sink > n {
            return Err(Error::InvalidInput(format!("sink {sink} out of range 1..={n}")));
        }
        if source == sink {
            return Err(Error::InvalidInput("source equals sink".into()));
        }
        let mut out_adj = vec![Vec::new(); n + 1];
        let mut in_adj = vec![Vec::new(); n + 1];
        let mut stored = Vec::with_capacity(arcs.len());
        for (idx, (tail, head, cost)) in arcs.into_iter().enumerate() {
            let id = idx + 1;
            if tail < 1 || tail > n {
                return Err(Error::InvalidInput(format!("arc {id}: tail {tail} out of range")));
            }
            if head < 1 || head > n {
                return Err(Error::InvalidInput(format!("arc {id}: head {head} out of range")));
            }
            if cost < 0 {
                return Err(Error::InvalidInput(format!("arc {id}: negative cost {cost}")));
            }
            out_adj[tail].push(id);
            in_adj[head].push(id);
            stored.push(Arc { tail, head, cost });
        }
        Ok(Graph { n, arcs: stored, out_adj, in_adj, source, sink })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id - 1]
    }

    pub fn arc_ids(&self) -> std::ops::RangeInclusive<ArcId> {
        1..=self.arcs.len()
    }

    /// Outgoing arc ids of `v`, in ascending arc-id order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_adj[v]
    }

    /// Incoming arc ids of `v`, in ascending arc-id order.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_adj[v]
    }

    /// The graph with every arc reversed and source/sink swapped.
    /// Arc ids are preserved.
    pub fn inverse(&self) -> Graph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| (a.head, a.tail, a.cost))
            .collect::<Vec<_>>();
        Graph::new(self.n, arcs, self.sink, self.source)
            .expect("inverse of a valid graph is valid")
    }

    /// Serializes to the line-oriented graph file format. `parse` inverts this.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p unssp {} {}\n", self.n, self.arcs.len()));
        out.push_str(&format!("s {}\n", self.source));
        out.push_str(&format!("t {}\n", self.sink));
        for a in &self.arcs {
            out.push_str(&format!("a {} {} {}\n", a.tail, a.head, a.cost));
        }
        out
    }
}

/// Parses the graph file format:
///
/// ```text
/// # comment
/// p unssp <n> <m>
/// s <vertex>
/// t <vertex>
/// a <tail> <head> <cost>     (exactly m times)
/// ```
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut source: Option<(usize, VertexId)> = None;
    let mut sink: Option<(usize, VertexId)> = None;
    let mut arcs: Vec<(VertexId, VertexId, i64)> = Vec::new();
    let mut last_line = 0;

    let err = |line: usize, kind: ParseErrorKind| Error::Parse { line, kind };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateDirective("p")));
                }
                if fields.len() != 4 || fields[1] != "unssp" {
                    return Err(err(
                        line,
                        ParseErrorKind::MalformedLine("expected `p unssp <n> <m>`".into()),
                    ));
                }
                let n: usize = fields[2].parse().map_err(|_| {
                    err(line, ParseErrorKind::MalformedLine("vertex count".into()))
                })?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedLine("arc count".into())))?;
                header = Some((n, m));
            }
            "s" | "t" => {
                let name: &'static str = if fields[0] == "s" { "s" } else { "t" };
                let slot = if name == "s" { &mut source } else { &mut sink };
                if slot.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateDirective(name)));
                }
                if fields.len() != 2 {
                    return Err(err(
                        line,
                        ParseErrorKind::MalformedLine(format!("expected `{name} <vertex>`")),
                    ));
                }
                let v: usize = fields[1]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedLine("vertex id".into())))?;
                *slot = Some((line, v));
            }
            "a" => {
                let (n, m) = header.ok_or_else(|| err(line, ParseErrorKind::ArcBeforeHeader))?;
                if fields.len() != 4 {
                    return Err(err(
                        line,
                        ParseErrorKind::MalformedLine("expected `a <tail> <head> <cost>`".into()),
                    ));
                }
                let tail: usize = fields[1]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedLine("tail".into())))?;
                let head: usize = fields[2]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedLine("head".into())))?;
                let cost: i64 = fields[3]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedLine("cost".into())))?;
                if tail < 1 || tail > n {
                    return Err(err(line, ParseErrorKind::VertexOutOfRange(tail)));
                }
                if head < 1 || head > n {
                    return Err(err(line, ParseErrorKind::VertexOutOfRange(head)));
                }
                if cost < 0 {
                    return Err(err(line, ParseErrorKind::NegativeCost));
                }
                if arcs.len() == m {
                    return Err(err(
                        line,
                        ParseErrorKind::ArcCountMismatch { declared: m, found: m + 1 },
                    ));
                }
                arcs.push((tail, head, cost));
            }
            other => {
                return Err(err(
                    line,
                    ParseErrorKind::MalformedLine(format!("unknown directive `{other}`")),
                ));
            }
        }
    }

    let (n, m) = header.ok_or(Error::Parse {
        line: last_line,
        kind: ParseErrorKind::MissingDirective("p"),
    })?;
    let (s_line, s) = source.ok_or(Error::Parse {
        line: last_line,
        kind: ParseErrorKind::MissingDirective("s"),
    })?;
    let (t_line, t) = sink.ok_or(Error::Parse {
        line: last_line,
        kind: ParseErrorKind::MissingDirective("t"),
    })?;
    if s < 1 || s > n {
        return Err(err(s_line, ParseErrorKind::VertexOutOfRange(s)));
    }
    if t < 1 || t > n {
        return Err(err(t_line, ParseErrorKind::VertexOutOfRange(t)));
    }
    if s == t {
        return Err(err(t_line, ParseErrorKind::SourceEqualsSink));
    }
    if arcs.len() != m {
        return Err(Error::Parse {
            line: last_line,
            kind: ParseErrorKind::ArcCountMismatch { declared: m, found: arcs.len() },
        });
    }
    Graph::new(n, arcs, s, t)
}

/// Reversible removal of arcs by id. The base graph is never mutated; a
/// solver sees the masked adjacency by filtering with [`ArcMask::is_removed`].
///
/// Removal stamps carry a generation counter so that [`ArcMask::clear`]
/// resets the whole mask in O(1).
#[derive(Debug, Clone)]
pub struct ArcMask {
    stamp: Vec<u64>,
    generation: u64,
    removed: usize,
}

impl ArcMask {
    pub fn new(g: &Graph) -> ArcMask {
        ArcMask { stamp: vec![0; g.arc_count() + 1], generation: 1, removed: 0 }
    }

    pub fn is_removed(&self, id: ArcId) -> bool {
        self.stamp[id] == self.generation
    }

    pub fn removed_count(&self) -> usize {
        self.removed
    }

    /// Removes the given arcs. Removing an already-removed arc is a contract
    /// violation.
    pub fn push(&mut self, ids: impl IntoIterator<Item = ArcId>) -> Result<()> {
        for id in ids {
            if self.stamp[id] == self.generation {
                return Err(Error::Mask(format!("arc {id} removed twice")));
            }
            self.stamp[id] = self.generation;
            self.removed += 1;
        }
        Ok(())
    }

    /// Restores the given arcs. Restoring a present arc is a contract
    /// violation.
    pub fn pop(&mut self, ids: impl IntoIterator<Item = ArcId>) -> Result<()> {
        for id in ids {
            if self.stamp[id] != self.generation {
                return Err(Error::Mask(format!("arc {id} restored while present")));
            }
            self.stamp[id] = 0;
            self.removed -= 1;
        }
        Ok(())
    }

    /// Forgets all removals in O(1).
    pub fn clear(&mut self) {
        self.generation += 1;
        self.removed = 0;
    }

    pub(crate) fn ensure_removed(&mut self, id: ArcId) {
        if !self.is_removed(id) {
            self.stamp[id] = self.generation;
            self.removed += 1;
        }
    }

    pub(crate) fn ensure_present(&mut self, id: ArcId) {
        if self.is_removed(id) {
            self.stamp[id] = 0;
            self.removed -= 1;
        }
    }
}

/// A simple path: adjacent arcs, no repeated vertices. A trivial path has a
/// single vertex and no arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    arc_ids: Vec<ArcId>,
    vertices: Vec<VertexId>,
}

impl Path {
    /// Builds and validates a path starting at `start`.
    pub fn from_arcs(g: &Graph, start: VertexId, arc_ids: Vec<ArcId>) -> Result<Path> {
        let mut vertices = Vec::with_capacity(arc_ids.len() + 1);
        vertices.push(start);
        let mut at = start;
        for &id in &arc_ids {
            if id < 1 || id > g.arc_count() {
                return Err(Error::Path(format!("arc id {id} out of range")));
            }
            let arc = g.arc(id);
            if arc.tail != at {
                return Err(Error::Path(format!(
                    "arc {id} starts at {} but the path is at {at}",
                    arc.tail
                )));
            }
            at = arc.head;
            vertices.push(at);
        }
        let mut seen = vec![false; g.vertex_count() + 1];
        for &v in &vertices {
            if seen[v] {
                return Err(Error::Path(format!("vertex {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Path { arc_ids, vertices })
    }

    pub fn trivial(v: VertexId) -> Path {
        Path { arc_ids: Vec::new(), vertices: vec![v] }
    }

    /// Number of arcs (the paper-level length l(P)).
    pub fn len(&self) -> usize {
        self.arc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_ids.is_empty()
    }

    pub fn arc_ids(&self) -> &[ArcId] {
        &self.arc_ids
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first_vertex(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last_vertex(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Predecessor of `v` on this path, or None for the first vertex or a
    /// vertex not on the path.
    pub fn pred(&self, v: VertexId) -> Option<VertexId> {
        let pos = self.vertices.iter().position(|&u| u == v)?;
        if pos == 0 {
            None
        } else {
            Some(self.vertices[pos - 1])
        }
    }

    /// Arc of this path entering `v`, if any.
    pub fn arc_into(&self, v: VertexId) -> Option<ArcId> {
        let pos = self.vertices.iter().position(|&u| u == v)?;
        if pos == 0 {
            None
        } else {
            Some(self.arc_ids[pos - 1])
        }
    }

    pub fn arc_costs(&self, g: &Graph) -> Vec<i64> {
        self.arc_ids.iter().map(|&id| g.arc(id).cost).collect()
    }
}

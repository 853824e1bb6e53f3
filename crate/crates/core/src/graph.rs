//! Undirected weighted graphs with stable global edge ids.

use std::collections::{HashSet, VecDeque};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Node identifier.
pub type NodeId = usize;
/// Global edge index in `[0, edge_count)`.
pub type EdgeId = usize;

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

/// One adjacency entry: the far endpoint, the weight and the shared edge id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub node: u32,
    pub edge_id: u32,
    pub weight: f64,
}

/// Undirected, nonnegatively weighted simple graph.
///
/// Every edge appears in both endpoints' adjacency lists under the same id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Neighbor>>,
}

impl Graph {
    /// A graph with `node_count` nodes and no edges.
    pub fn with_nodes(node_count: usize) -> Result<Self> {
        if node_count > u32::MAX as usize {
            return Err(Error::param("node count exceeds u32 range"));
        }
        Ok(Self {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); node_count],
        })
    }

    /// Builds a graph; edge ids follow iteration order.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut g = Self::with_nodes(node_count)?;
        let mut seen = HashSet::new();
        for (u, v, w) in edges {
            g.check_edge(u, v, w)?;
            if !seen.insert(pair_key(u, v)) {
                return Err(Error::param(format!("duplicate edge {u}-{v}")));
            }
            g.push_edge(u, v, w);
        }
        Ok(g)
    }

    fn check_edge(&self, u: NodeId, v: NodeId, w: f64) -> Result<()> {
        let n = self.node_count();
        if u >= n || v >= n {
            return Err(Error::param(format!(
                "edge {u}-{v} references a node outside [0, {n})"
            )));
        }
        if u == v {
            return Err(Error::param(format!("self-loop on node {u}")));
        }
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::param(format!(
                "edge {u}-{v} has weight {w}; weights must be finite and nonnegative"
            )));
        }
        if self.edges.len() >= u32::MAX as usize {
            return Err(Error::param("edge count exceeds u32 range"));
        }
        Ok(())
    }

    // Caller guarantees validity and uniqueness.
    pub(crate) fn push_edge(&mut self, u: NodeId, v: NodeId, weight: f64) {
        let id = self.edges.len() as u32;
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(Edge { u: a, v: b, weight });
        self.adjacency[a].push(Neighbor {
            node: b as u32,
            edge_id: id,
            weight,
        });
        self.adjacency[b].push(Neighbor {
            node: a as u32,
            edge_id: id,
            weight,
        });
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, node: NodeId) -> &[Neighbor] {
        &self.adjacency[node]
    }

    /// True iff a breadth-first traversal from node 0 reaches every node.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut visited = 1;
        while let Some(u) = queue.pop_front() {
            for nb in self.neighbors(u) {
                let v = nb.node as usize;
                if !seen[v] {
                    seen[v] = true;
                    visited += 1;
                    queue.push_back(v);
                }
            }
        }
        visited == n
    }

    /// Writes the text format: a `<nodes> <edges>` header, then one
    /// `<u> <v> <weight>` line per edge in id order with `u < v`.
    /// Weights use the shortest representation that parses back exactly.
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.node_count(), self.edge_count())?;
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.weight)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads the text format written by [`Graph::save`]. Blank lines are ignored.
    pub fn load<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

        let perr = |line: usize, message: String| Error::GraphParse { line, message };

        let (hline, header) = match lines.next() {
            Some((n, l)) => (n, l?),
            None => return Err(perr(1, "missing header".into())),
        };
        let mut it = header.split_whitespace();
        let (node_count, edge_count) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (
                a.parse::<usize>()
                    .map_err(|e| perr(hline, format!("node count: {e}")))?,
                b.parse::<usize>()
                    .map_err(|e| perr(hline, format!("edge count: {e}")))?,
            ),
            _ => {
                return Err(perr(
                    hline,
                    "header must be \"<node_count> <edge_count>\"".into(),
                ))
            }
        };

        let mut g = Self::with_nodes(node_count).map_err(|e| perr(hline, e.to_string()))?;
        let mut seen = HashSet::with_capacity(edge_count);
        for _ in 0..edge_count {
            let (ln, line) = match lines.next() {
                Some((n, l)) => (n, l?),
                None => {
                    return Err(perr(
                        hline,
                        format!("expected {edge_count} edges, found {}", g.edge_count()),
                    ))
                }
            };
            let mut f = line.split_whitespace();
            let (u, v, w) = match (f.next(), f.next(), f.next(), f.next()) {
                (Some(u), Some(v), Some(w), None) => (u, v, w),
                _ => return Err(perr(ln, "expected \"<u> <v> <weight>\"".into())),
            };
            let u: usize = u.parse().map_err(|e| perr(ln, format!("node id {u:?}: {e}")))?;
            let v: usize = v.parse().map_err(|e| perr(ln, format!("node id {v:?}: {e}")))?;
            let w: f64 = w.parse().map_err(|e| perr(ln, format!("weight {w:?}: {e}")))?;
            g.check_edge(u, v, w).map_err(|e| perr(ln, e.to_string()))?;
            if !seen.insert(pair_key(u, v)) {
                return Err(perr(ln, format!("duplicate edge {u}-{v}")));
            }
            g.push_edge(u, v, w);
        }
        if let Some((ln, line)) = lines.next() {
            line?;
            return Err(perr(ln, "trailing data after the declared edges".into()));
        }
        Ok(g)
    }
}

#[inline]
fn pair_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a as u64) << 32 | b as u64
}

/// Parameters of the random graph generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub node_count: usize,
    pub min_extra_edges_per_node: u32,
    pub max_extra_edges_per_node: u32,
    pub seed: u64,
}

impl GeneratorConfig {
    /// The experimental family: 1 to 25 extra edges initiated per node.
    pub fn new(node_count: usize, seed: u64) -> Self {
        Self {
            node_count,
            min_extra_edges_per_node: 1,
            max_extra_edges_per_node: 25,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::param("generator needs at least 2 nodes"));
        }
        if self.node_count > u32::MAX as usize {
            return Err(Error::param("node count exceeds u32 range"));
        }
        if self.min_extra_edges_per_node < 1
            || self.min_extra_edges_per_node > self.max_extra_edges_per_node
        {
            return Err(Error::param(format!(
                "extra edges per node must satisfy 1 <= min <= max, got {}..{}",
                self.min_extra_edges_per_node, self.max_extra_edges_per_node
            )));
        }
        Ok(())
    }
}

/// Generates a connected random graph.
///
/// Draw order, all from one [`SeededRng`]:
/// 1. for `i` in `1..n`: parent `j = below(i)`, then weight; edge `i-j`.
/// 2. for `u` in `0..n`: count `c` in `[min, max]`; then `c` times a target
///    `v = below(n)`. Self-loops and existing pairs are skipped without
///    drawing a weight; otherwise a weight is drawn and edge `u-v` added.
///
/// Weights are uniform on `[0, 1)`. Edge ids follow creation order.
pub fn generate_graph(config: &GeneratorConfig) -> Result<Graph> {
    config.validate()?;
    let n = config.node_count;
    let mut rng = SeededRng::new(config.seed);
    let mut g = Graph::with_nodes(n)?;
    let mean_extra =
        (config.min_extra_edges_per_node as usize + config.max_extra_edges_per_node as usize) / 2;
    let mut seen = HashSet::with_capacity(n * (mean_extra + 1));

    for i in 1..n {
        let j = rng.below(i as u64) as usize;
        let w = rng.unit_f64();
        seen.insert(pair_key(i, j));
        g.push_edge(i, j, w);
    }
    for u in 0..n {
        let c = rng.range_inclusive(
            config.min_extra_edges_per_node as u64,
            config.max_extra_edges_per_node as u64,
        );
        for _ in 0..c {
            let v = rng.below(n as u64) as usize;
            if v == u || !seen.insert(pair_key(u, v)) {
                continue;
            }
            let w = rng.unit_f64();
            g.push_edge(u, v, w);
        }
    }
    Ok(g)
}

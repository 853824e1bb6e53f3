//! Prim-style MST solvers.
//!
//! [`prim_baseline`] is the classical lazy Prim with an exact hash-set of
//! visited nodes. [`prim_with_visited`] runs the same greedy loop against any
//! [`VisitedSet`]; [`prim_bloom`] plugs in a [`BloomFilter`], trading exactness
//! for a visited set of a few bits per node. A false positive makes the solver
//! skip a node it never visited, so the Bloom result is a forest whose edges
//! are a subset-sized approximation of the true tree.
//!
//! Both solvers order the frontier by `(weight, edge_id)` and mark the start
//! node visited before the loop. Each frontier push or pop costs one
//! membership query, so the Bloom variant runs in `O(k |E| log |V|)`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::bits::BitArray;
use crate::bloom::{BloomFilter, BloomParams};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};

/// Membership structure tracking visited nodes.
pub trait VisitedSet {
    fn contains(&self, node: NodeId) -> bool;
    fn insert(&mut self, node: NodeId);
}

impl VisitedSet for BloomFilter {
    #[inline]
    fn contains(&self, node: NodeId) -> bool {
        BloomFilter::contains(self, node as u64)
    }

    #[inline]
    fn insert(&mut self, node: NodeId) {
        self.add(node as u64)
    }
}

/// Exact visited set, the zero-false-positive stand-in for a Bloom filter.
#[derive(Debug, Clone, Default)]
pub struct ExactSet(HashSet<NodeId>);

impl ExactSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl VisitedSet for ExactSet {
    #[inline]
    fn contains(&self, node: NodeId) -> bool {
        self.0.contains(&node)
    }

    #[inline]
    fn insert(&mut self, node: NodeId) {
        self.0.insert(node);
    }
}

/// A candidate edge on the frontier.
///
/// Ordered so that a [`BinaryHeap`] pops the smallest `(cost, edge_id)` first.
#[derive(Debug, Clone, Copy)]
pub struct FrontierEntry {
    pub cost: f64,
    pub sink_node: u32,
    pub edge_id: u32,
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FrontierEntry {}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.edge_id.cmp(&self.edge_id))
    }
}

/// Output of a solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct MstResult {
    /// Sum of selected edge weights, accumulated in selection order.
    pub total_cost: f64,
    /// Bit `e` is set iff edge id `e` was selected.
    pub edge_bits: BitArray,
    pub selected_edge_count: usize,
    /// Nodes marked visited, including the start.
    pub spanned_node_count: usize,
}

fn check_start(g: &Graph, start: NodeId) -> Result<()> {
    if start >= g.node_count() {
        return Err(Error::param(format!(
            "start node {start} outside [0, {})",
            g.node_count()
        )));
    }
    Ok(())
}

/// Exact MST of the component containing `start`, visited set held in a hash set.
pub fn prim_baseline(g: &Graph, start: NodeId) -> Result<MstResult> {
    check_start(g, start)?;
    let mut visited: HashSet<NodeId> = HashSet::new();
    let mut edge_bits = BitArray::new(g.edge_count());
    let mut heap = BinaryHeap::new();
    let mut total_cost = 0.0;
    let mut selected = 0;

    visited.insert(start);
    for nb in g.neighbors(start) {
        heap.push(FrontierEntry {
            cost: nb.weight,
            sink_node: nb.node,
            edge_id: nb.edge_id,
        });
    }
    while let Some(entry) = heap.pop() {
        let node = entry.sink_node as NodeId;
        if !visited.insert(node) {
            continue;
        }
        total_cost += entry.cost;
        edge_bits.set(entry.edge_id as usize);
        selected += 1;
        for nb in g.neighbors(node) {
            if !visited.contains(&(nb.node as NodeId)) {
                heap.push(FrontierEntry {
                    cost: nb.weight,
                    sink_node: nb.node,
                    edge_id: nb.edge_id,
                });
            }
        }
    }
    Ok(MstResult {
        total_cost,
        edge_bits,
        selected_edge_count: selected,
        spanned_node_count: visited.len(),
    })
}

/// Greedy frontier loop over an arbitrary visited set.
///
/// `visited` should be empty; `start` is inserted before the loop. A popped
/// entry whose sink already tests positive is discarded, and neighbors that
/// test positive are never pushed.
pub fn prim_with_visited<S: VisitedSet>(
    g: &Graph,
    start: NodeId,
    visited: &mut S,
) -> Result<MstResult> {
    check_start(g, start)?;
    let mut edge_bits = BitArray::new(g.edge_count());
    let mut heap = BinaryHeap::new();
    let mut total_cost = 0.0;
    let mut selected = 0;

    visited.insert(start);
    for nb in g.neighbors(start) {
        heap.push(FrontierEntry {
            cost: nb.weight,
            sink_node: nb.node,
            edge_id: nb.edge_id,
        });
    }
    while let Some(entry) = heap.pop() {
        let node = entry.sink_node as NodeId;
        if visited.contains(node) {
            continue;
        }
        visited.insert(node);
        total_cost += entry.cost;
        edge_bits.set(entry.edge_id as usize);
        selected += 1;
        for nb in g.neighbors(node) {
            if !visited.contains(nb.node as NodeId) {
                heap.push(FrontierEntry {
                    cost: nb.weight,
                    sink_node: nb.node,
                    edge_id: nb.edge_id,
                });
            }
        }
    }
    Ok(MstResult {
        total_cost,
        edge_bits,
        selected_edge_count: selected,
        spanned_node_count: selected + 1,
    })
}

/// Prim with a Bloom-filter visited set sized for `g.node_count()` insertions.
pub fn prim_bloom(g: &Graph, start: NodeId, epsilon: f64, hash_seed: u64) -> Result<MstResult> {
    check_start(g, start)?;
    let params = BloomParams::new(g.node_count() as u64, epsilon)?;
    let mut filter = BloomFilter::new(&params, hash_seed);
    prim_with_visited(g, start, &mut filter)
}

/// Selected edges in ascending id order.
pub fn recover_edges(result: &MstResult, g: &Graph) -> Result<Vec<Edge>> {
    if result.edge_bits.len() != g.edge_count() {
        return Err(Error::param(format!(
            "edge map has {} bits but the graph has {} edges",
            result.edge_bits.len(),
            g.edge_count()
        )));
    }
    Ok(result.edge_bits.ones().map(|id| *g.edge(id)).collect())
}

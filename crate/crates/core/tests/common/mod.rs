//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use bloom_mst::bloom::BloomFilter;
use bloom_mst::graph::{Edge, Graph};
use bloom_mst::pixmap::PixelImage;
use bloom_mst::rng::SeededRng;

pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal over all edges: (forest cost, chosen edge ids sorted).
pub fn kruskal(g: &Graph) -> (f64, Vec<usize>) {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        g.edge(a)
            .weight
            .total_cmp(&g.edge(b).weight)
            .then(a.cmp(&b))
    });
    let mut uf = UnionFind::new(g.node_count());
    let mut cost = 0.0;
    let mut chosen = Vec::new();
    for id in order {
        let e = g.edge(id);
        if uf.union(e.u, e.v) {
            cost += e.weight;
            chosen.push(id);
        }
    }
    chosen.sort_unstable();
    (cost, chosen)
}

/// True iff the edges contain no cycle.
pub fn is_forest(node_count: usize, edges: &[Edge]) -> bool {
    let mut uf = UnionFind::new(node_count);
    edges.iter().all(|e| uf.union(e.u, e.v))
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Graph with small integer weights, so ties are everywhere.
pub fn tie_heavy_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 1..n {
        let j = rng.below(i as u64) as usize;
        seen.insert((j, i));
        edges.push((j, i, rng.below(4) as f64));
    }
    for _ in 0..extra {
        let a = rng.below(n as u64) as usize;
        let b = rng.below(n as u64) as usize;
        let key = (a.min(b), a.max(b));
        if a != b && seen.insert(key) {
            edges.push((a, b, rng.below(4) as f64));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Inserts `n` random keys into an empty `m`-bit, `k`-probe filter and counts
/// insertions whose key already tested positive.
pub fn simulate_insert_collisions(n: u64, m_bits: u64, k: u32, trial_seed: u64) -> u64 {
    let mut filter = BloomFilter::with_geometry(m_bits, k, trial_seed);
    let mut keys = SeededRng::new(trial_seed ^ 0x5eed_5eed_5eed_5eed);
    let mut collisions = 0;
    for _ in 0..n {
        let key = keys.next_u64();
        if filter.contains(key) {
            collisions += 1;
        }
        filter.add(key);
    }
    collisions
}

pub fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

/// The 128x128 natural-image crops under `tests/data`.
pub fn natural_images() -> Vec<(String, PixelImage)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ppm"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let img = PixelImage::read_ppm(std::fs::File::open(&p).unwrap()).unwrap();
            (name, img)
        })
        .collect()
}

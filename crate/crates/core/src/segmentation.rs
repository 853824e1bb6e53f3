//! MST-threshold image segmentation.
//!
//! Pixels become nodes (`id = row * width + col`) joined to their
//! 8-neighbours, weighted by squared RGB distance. A spanning tree is grown
//! from pixel 0, tree edges heavier than the threshold are cut, and the
//! remaining pieces are labelled by breadth-first search in ascending order of
//! their smallest pixel id.

use std::collections::VecDeque;
use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mst::{prim_baseline, prim_bloom, recover_edges};
use crate::pixmap::PixelImage;
use crate::rng::SeededRng;

/// Default cut threshold on squared RGB distance.
pub const DEFAULT_THRESHOLD: f64 = 100.0;

/// Which spanning-tree solver drives the segmentation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Baseline,
    Bloom { epsilon: f64, hash_seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationResult {
    pub width: usize,
    pub height: usize,
    /// Row-major component ids in `[0, cluster_count)`.
    pub labels: Vec<u32>,
    pub cluster_count: usize,
}

#[inline]
fn squared_distance(a: [u8; 3], b: [u8; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, y)| {
            let d = x as i32 - y as i32;
            (d * d) as f64
        })
        .sum()
}

/// Number of undirected 8-neighbour pairs in a `w` x `h` grid.
pub fn grid_edge_count(w: usize, h: usize) -> usize {
    if w == 0 || h == 0 {
        return 0;
    }
    (w - 1) * h + w * (h - 1) + 2 * (w - 1) * (h - 1)
}

/// Pixel graph with one edge per 8-adjacent pair.
///
/// For each pixel in row-major order, edges are emitted to the right,
/// lower-left, lower and lower-right neighbours, which fixes the edge ids.
pub fn image_to_graph(img: &PixelImage) -> Result<Graph> {
    let (w, h) = (img.width(), img.height());
    let mut g = Graph::with_nodes(w * h)?;
    if grid_edge_count(w, h) > u32::MAX as usize {
        return Err(Error::param("image too large for 32-bit edge ids"));
    }
    for r in 0..h {
        for c in 0..w {
            let id = r * w + c;
            let px = img.pixel(r, c);
            let mut link = |r2: usize, c2: usize| {
                g.push_edge(id, r2 * w + c2, squared_distance(px, img.pixel(r2, c2)));
            };
            if c + 1 < w {
                link(r, c + 1);
            }
            if r + 1 < h {
                if c > 0 {
                    link(r + 1, c - 1);
                }
                link(r + 1, c);
                if c + 1 < w {
                    link(r + 1, c + 1);
                }
            }
        }
    }
    Ok(g)
}

/// Segments `img` by cutting spanning-tree edges with weight strictly above
/// `threshold`. Pixels the solver never reached end up as singletons.
pub fn segment(img: &PixelImage, threshold: f64, solver: Solver) -> Result<SegmentationResult> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::param(format!("threshold must be >= 0, got {threshold}")));
    }
    let g = image_to_graph(img)?;
    let tree = match solver {
        Solver::Baseline => prim_baseline(&g, 0)?,
        Solver::Bloom { epsilon, hash_seed } => prim_bloom(&g, 0, epsilon, hash_seed)?,
    };

    let n = g.node_count();
    let mut kept: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in recover_edges(&tree, &g)? {
        if e.weight <= threshold {
            kept[e.u].push(e.v as u32);
            kept[e.v].push(e.u as u32);
        }
    }

    const UNSET: u32 = u32::MAX;
    let mut labels = vec![UNSET; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for seed in 0..n {
        if labels[seed] != UNSET {
            continue;
        }
        labels[seed] = next;
        queue.push_back(seed as u32);
        while let Some(u) = queue.pop_front() {
            for &v in &kept[u as usize] {
                if labels[v as usize] == UNSET {
                    labels[v as usize] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }

    Ok(SegmentationResult {
        width: img.width(),
        height: img.height(),
        labels,
        cluster_count: next as usize,
    })
}

impl SegmentationResult {
    /// Colors each label from a seeded palette.
    pub fn render(&self, palette_seed: u64) -> PixelImage {
        let mut rng = SeededRng::new(palette_seed);
        let palette: Vec<[u8; 3]> = (0..self.cluster_count)
            .map(|_| {
                let x = rng.next_u64().to_le_bytes();
                [x[0], x[1], x[2]]
            })
            .collect();
        let pixels = self.labels.iter().map(|&l| palette[l as usize]).collect();
        PixelImage::new(self.width, self.height, pixels)
            .expect("labels cover the image dimensions")
    }

    /// Writes the rendered label image as P6.
    pub fn write_label_image<W: Write>(&self, out: W, palette_seed: u64) -> Result<()> {
        self.render(palette_seed).write_ppm(out)
    }

    /// Writes the sidecar summary line `label_count=<k>`.
    pub fn write_label_count<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "label_count={}", self.cluster_count)?;
        out.flush()?;
        Ok(())
    }
}

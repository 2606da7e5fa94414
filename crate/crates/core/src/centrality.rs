//! Classical centrality measures on the binary graph: degree, closeness,
//! and shortest-path betweenness.
//!
//! Scores are computed for every node at once. Closeness requires a
//! connected graph; the caller decides whether to restrict to a
//! component first. Betweenness parallelizes over sources but keeps a
//! fixed accumulation order, so results are bit-identical across runs
//! and thread counts.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netmodel::Graph;
use crate::topology::{bfs_distances, UNREACHED};
use crate::NodeId;

/// Degree of every node.
pub fn degrees(g: &Graph) -> Vec<usize> {
    (0..g.n()).map(|v| g.degree(v)).collect()
}

/// Closeness centrality `(n - 1) / sum of distances` for every node.
/// Defined only on connected graphs with at least two nodes.
pub fn closeness(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall {
            what: "closeness centrality",
            min: 2,
            got: n,
        });
    }
    let scores: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let dist = bfs_distances(g, v);
            let mut sum: u64 = 0;
            for &d in &dist {
                if d == UNREACHED {
                    return Err(Error::Disconnected);
                }
                sum += d as u64;
            }
            Ok((n as f64 - 1.0) / sum as f64)
        })
        .collect();
    scores.into_iter().collect()
}

/// Per-source contribution pass of the shortest-path betweenness
/// algorithm: BFS out from `s`, then dependency accumulation back down
/// the BFS dag.
fn accumulate_from_source(g: &Graph, s: NodeId, bc: &mut [f64]) {
    let n = g.n();
    let mut dist: Vec<u32> = vec![UNREACHED; n];
    let mut sigma: Vec<f64> = vec![0.0; n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut order: Vec<NodeId> = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();

    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in g.neighbors(v) {
            if dist[u] == UNREACHED {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
            if dist[u] == dist[v] + 1 {
                sigma[u] += sigma[v];
                preds[u].push(v);
            }
        }
    }

    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if w != s {
            bc[w] += delta[w];
        }
    }
}

/// Shortest-path betweenness: for every unordered pair of other nodes,
/// the fraction of their geodesics passing through the node, summed.
///
/// Sources run in parallel in fixed chunks; each chunk accumulates
/// sequentially in ascending source order and chunks are combined in
/// order, so float rounding never depends on scheduling.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let chunk = std::cmp::max(64, n.div_ceil(128));
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk)
        .map(|chunk_sources| {
            let mut bc = vec![0.0; n];
            for &s in chunk_sources {
                accumulate_from_source(g, s, &mut bc);
            }
            bc
        })
        .collect();

    let mut bc = vec![0.0; n];
    for partial in &partials {
        for (acc, &x) in bc.iter_mut().zip(partial) {
            *acc += x;
        }
    }
    // Each pair was credited from both endpoints.
    for x in &mut bc {
        *x /= 2.0;
    }
    bc
}

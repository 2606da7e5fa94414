//! Connectivity and small-world structure: components, clustering
//! coefficient, characteristic path length, and the random-graph
//! baseline used to judge whether a network is more clustered and more
//! tightly knit than chance.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::netmodel::Graph;
use crate::NodeId;

/// Sentinel distance for nodes a BFS never reached.
pub const UNREACHED: u32 = u32::MAX;

/// Hop distances from `src` to every node, [`UNREACHED`] where there is
/// no path.
pub fn bfs_distances(g: &Graph, src: NodeId) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::with_capacity(g.n());
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v];
        for &u in g.neighbors(v) {
            if dist[u] == UNREACHED {
                dist[u] = dv + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Connected components, each sorted ascending, ordered by size
/// descending and then by smallest member. Isolated nodes are
/// singleton components.
pub fn components(g: &Graph) -> Vec<Vec<NodeId>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    // Discovery order already breaks size ties by smallest member, but
    // sort explicitly so the contract does not hinge on that.
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

/// Nodes of the largest component (ties broken toward the smallest
/// member), sorted ascending. Empty for an empty graph.
pub fn largest_component(g: &Graph) -> Vec<NodeId> {
    components(g).into_iter().next().unwrap_or_default()
}

/// degree -> node count, every degree that occurs.
pub fn degree_histogram(g: &Graph) -> std::collections::BTreeMap<usize, usize> {
    let mut hist = std::collections::BTreeMap::new();
    for v in 0..g.n() {
        *hist.entry(g.degree(v)).or_insert(0) += 1;
    }
    hist
}

/// Per-node clustering coefficient: realized links among neighbors over
/// possible links. Nodes of degree below two score 0.
pub fn clustering_coefficients(g: &Graph) -> Vec<f64> {
    (0..g.n())
        .map(|v| {
            let nbrs = g.neighbors(v);
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if g.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        })
        .collect()
}

/// Mean of the per-node coefficients over every node, zeros included.
/// 0 for the empty graph.
pub fn mean_clustering(g: &Graph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    clustering_coefficients(g).iter().sum::<f64>() / g.n() as f64
}

/// Checked clustering coefficient for the small-world report: demands a
/// connected graph on at least three nodes, then averages the per-node
/// coefficients.
pub fn clustering_coefficient(g: &Graph) -> Result<f64> {
    if g.n() < 3 {
        return Err(Error::TooSmall {
            what: "clustering coefficient",
            min: 3,
            got: g.n(),
        });
    }
    if bfs_distances(g, 0).contains(&UNREACHED) {
        return Err(Error::Disconnected);
    }
    Ok(mean_clustering(g))
}

/// Induced subgraph of the component at `index` in the ordering of
/// [`components`], with its back-map from new to original ids.
pub fn extract_component(
    g: &Graph,
    comps: &[Vec<NodeId>],
    index: usize,
) -> Result<(Graph, Vec<NodeId>)> {
    match comps.get(index) {
        Some(comp) => Ok(g.induced(comp)),
        None => Err(Error::UnknownComponent(index)),
    }
}

/// Mean shortest-path length over all distinct node pairs. Requires a
/// connected graph on at least two nodes. Distance sums are integer, so
/// the only rounding is the final division.
pub fn characteristic_path_length(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall {
            what: "characteristic path length",
            min: 2,
            got: n,
        });
    }
    let mut total: u64 = 0;
    for src in 0..n {
        let dist = bfs_distances(g, src);
        for &d in &dist {
            if d == UNREACHED {
                return Err(Error::Disconnected);
            }
            total += d as u64;
        }
    }
    // Every unordered pair was counted twice; so was the denominator.
    Ok(total as f64 / (n as f64 * (n - 1) as f64))
}

/// Uniform random graph with exactly `m` distinct edges on `n` nodes.
/// `m` may range from 0 to n choose 2.
pub fn random_graph(n: usize, m: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "random graph",
            min: 2,
            got: n,
        });
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m,
            min: 0,
            max,
        });
    }
    let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    while edges.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// One random-graph draw reduced to its largest component.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineSample {
    pub seed: u64,
    pub largest_n: usize,
    pub largest_m: usize,
    pub clustering: f64,
    pub path_length: f64,
}

/// Averaged random baseline for small-world comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomBaseline {
    pub samples: Vec<BaselineSample>,
    pub mean_clustering: f64,
    pub mean_path_length: f64,
}

/// Draw `samples` uniform graphs with the observed `n` and `m`, reduce
/// each to its largest component, and average clustering and path
/// length. Seeds are `base_seed, base_seed + 1, ..` so a run is fully
/// reproducible. Requires `n - 1 <= m <= n(n-1)/2`, keeping every
/// largest component big enough to measure.
pub fn random_baseline(
    n: usize,
    m: usize,
    samples: usize,
    base_seed: u64,
) -> Result<RandomBaseline> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "random baseline",
            min: 2,
            got: n,
        });
    }
    let max = n * (n - 1) / 2;
    if m < n - 1 || m > max {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m,
            min: n - 1,
            max,
        });
    }
    if samples == 0 {
        return Err(Error::TooSmall {
            what: "baseline sample count",
            min: 1,
            got: 0,
        });
    }
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let seed = base_seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, m, &mut rng)?;
        let comp = largest_component(&g);
        let (sub, _) = g.induced(&comp);
        out.push(BaselineSample {
            seed,
            largest_n: sub.n(),
            largest_m: sub.m(),
            clustering: mean_clustering(&sub),
            path_length: characteristic_path_length(&sub)?,
        });
    }
    let mean_clustering = out.iter().map(|s| s.clustering).sum::<f64>() / samples as f64;
    let mean_path_length = out.iter().map(|s| s.path_length).sum::<f64>() / samples as f64;
    Ok(RandomBaseline {
        samples: out,
        mean_clustering,
        mean_path_length,
    })
}

//! Collaboration-profile clustering: authors as rows of the weighted
//! digraph, cosine similarity between profiles, and average-linkage
//! agglomeration into a dendrogram.
//!
//! Profiles are taken as-is from the (possibly component-restricted)
//! weight matrix, without renormalizing, so an author's vector is their
//! endorsement distribution over the considered authors. The matrix of
//! pairwise similarities is dense; clustering is quadratic in memory and
//! cubic in time, suitable for components up to a few thousand authors.

use crate::error::{Error, Result};
use crate::netmodel::WeightedDigraph;

/// Cosine similarity. A zero vector has no direction, so any pair
/// involving one scores 0.
pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "cosine over mismatched dimensions");
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    dot / (nu * nv).sqrt()
}

/// Dense endorsement profiles: row `i` is author `i`'s out-weights over
/// all authors of `w`.
pub fn author_vectors(w: &WeightedDigraph) -> Vec<Vec<f64>> {
    let n = w.n();
    (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            for &(j, weight) in w.out_arcs(i) {
                row[j] = weight;
            }
            row
        })
        .collect()
}

/// Full symmetric cosine matrix over the given profiles. The diagonal is
/// set to 1 but never consulted by the clustering.
pub fn similarity_matrix(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = vectors.len();
    let mut sim = vec![vec![0.0; n]; n];
    for i in 0..n {
        sim[i][i] = 1.0;
        for j in i + 1..n {
            let s = cosine(&vectors[i], &vectors[j]);
            sim[i][j] = s;
            sim[j][i] = s;
        }
    }
    sim
}

/// One agglomeration step: clusters `a < b` fuse into cluster `id` at
/// the given similarity level.
#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub id: usize,
    pub similarity: f64,
    pub size: usize,
}

/// Agglomeration history over `n` leaves. Leaves are clusters `0..n`;
/// the merge at step `k` creates cluster `n + k`. With average linkage
/// the similarity levels never increase from one step to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub leaves: usize,
    pub merges: Vec<Merge>,
}

impl Dendrogram {
    /// Flat clustering: apply merges until `k` clusters remain, then
    /// label leaves `0..k-1` in order of each cluster's smallest leaf.
    pub fn assignments(&self, k: usize) -> Result<Vec<usize>> {
        let n = self.leaves;
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!(
                "cannot cut {n} leaves into {k} clusters"
            )));
        }
        let mut cluster_of: Vec<usize> = (0..n).collect();
        for merge in &self.merges[..n - k] {
            for c in cluster_of.iter_mut() {
                if *c == merge.a || *c == merge.b {
                    *c = merge.id;
                }
            }
        }
        let mut label: std::collections::BTreeMap<usize, usize> = Default::default();
        let mut out = vec![0usize; n];
        for (leaf, &c) in cluster_of.iter().enumerate() {
            let next = label.len();
            out[leaf] = *label.entry(c).or_insert(next);
        }
        Ok(out)
    }
}

/// Best-merge candidate: similarity, canonical id pair, matrix slots.
type Candidate = (f64, (usize, usize), (usize, usize));

/// Average-linkage agglomeration over a symmetric similarity matrix.
/// Each step fuses the most similar pair; exact ties go to the smallest
/// `(a, b)` cluster-id pair. Merged similarity to a bystander is the
/// size-weighted mean of the parts' similarities. Needs at least two
/// authors to have anything to merge.
pub fn average_linkage(sim: &[Vec<f64>]) -> Result<Dendrogram> {
    let n = sim.len();
    if n < 2 {
        return Err(Error::TooSmall {
            what: "agglomeration",
            min: 2,
            got: n,
        });
    }
    for row in sim {
        if row.len() != n {
            return Err(Error::DimensionMismatch(n, row.len()));
        }
    }

    struct Cluster {
        id: usize,
        size: usize,
    }
    let mut clusters: Vec<Cluster> = (0..n).map(|id| Cluster { id, size: 1 }).collect();
    let mut m: Vec<Vec<f64>> = sim.to_vec();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for step in 0..n.saturating_sub(1) {
        let mut best: Option<Candidate> = None;
        for p in 0..clusters.len() {
            for q in p + 1..clusters.len() {
                let s = m[p][q];
                let ids = (
                    clusters[p].id.min(clusters[q].id),
                    clusters[p].id.max(clusters[q].id),
                );
                let better = match &best {
                    None => true,
                    Some((bs, bids, _)) => s > *bs || (s == *bs && ids < *bids),
                };
                if better {
                    best = Some((s, ids, (p, q)));
                }
            }
        }
        let (similarity, (id_a, id_b), (p, q)) = best.unwrap();
        let (sa, sb) = (clusters[p].size as f64, clusters[q].size as f64);
        let new_id = n + step;
        let new_size = clusters[p].size + clusters[q].size;
        merges.push(Merge {
            a: id_a,
            b: id_b,
            id: new_id,
            similarity,
            size: new_size,
        });

        // Fuse into slot p, then drop slot q.
        #[allow(clippy::needless_range_loop)]
        for k in 0..clusters.len() {
            if k == p || k == q {
                continue;
            }
            let merged = (sa * m[p][k] + sb * m[q][k]) / (sa + sb);
            m[p][k] = merged;
            m[k][p] = merged;
        }
        clusters[p] = Cluster {
            id: new_id,
            size: new_size,
        };
        clusters.swap_remove(q);
        m.swap_remove(q);
        for row in &mut m {
            row.swap_remove(q);
        }
    }
    Ok(Dendrogram { leaves: n, merges })
}

/// Convenience: profiles, similarities, and agglomeration in one call.
pub fn cluster_authors(w: &WeightedDigraph) -> Result<Dendrogram> {
    average_linkage(&similarity_matrix(&author_vectors(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Publication;
    use crate::netmodel::Cofrequency;
    use proptest::prelude::*;

    #[test]
    fn cosine_of_known_vectors() {
        assert!((cosine(&[0.75, 0.25], &[0.5, 0.5]) - 0.8944271909999159).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]), 0.0);
        assert!((cosine(&[2.0, 1.0], &[4.0, 2.0]) - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 1.0]), 0.0);
    }

    fn two_article_digraph() -> WeightedDigraph {
        let pubs = vec![
            Publication {
                pub_id: "p1".into(),
                year: 2000,
                venue: "v".into(),
                authors: vec![0, 1, 2],
            },
            Publication {
                pub_id: "p2".into(),
                year: 2001,
                venue: "v".into(),
                authors: vec![0, 1],
            },
        ];
        WeightedDigraph::from_publications(3, &pubs)
    }

    #[test]
    fn profiles_mirror_out_weights() {
        let vectors = author_vectors(&two_article_digraph());
        assert_eq!(vectors[0], vec![0.0, 0.75, 0.25]);
        assert_eq!(vectors[1], vec![0.75, 0.0, 0.25]);
        assert_eq!(vectors[2], vec![0.5, 0.5, 0.0]);
    }

    #[test]
    fn profile_similarities_of_the_two_article_corpus() {
        let sim = similarity_matrix(&author_vectors(&two_article_digraph()));
        // The strong pair endorse different people, so their profiles
        // barely align; each aligns far better with the third author.
        assert!((sim[0][1] - 0.1).abs() < 1e-12);
        let expected = 0.375 / (0.625f64 * 0.5).sqrt();
        assert!((sim[0][2] - expected).abs() < 1e-12);
        assert!((sim[1][2] - expected).abs() < 1e-12);
    }

    #[test]
    fn upgma_merges_match_hand_computation() {
        let sim = vec![
            vec![1.0, 0.9, 0.1],
            vec![0.9, 1.0, 0.5],
            vec![0.1, 0.5, 1.0],
        ];
        let d = average_linkage(&sim).unwrap();
        assert_eq!(d.leaves, 3);
        assert_eq!(
            d.merges,
            vec![
                Merge { a: 0, b: 1, id: 3, similarity: 0.9, size: 2 },
                Merge { a: 2, b: 3, id: 4, similarity: 0.3, size: 3 },
            ]
        );
    }

    #[test]
    fn exact_ties_take_the_smallest_id_pair() {
        let sim = vec![vec![0.5; 4]; 4];
        let d = average_linkage(&sim).unwrap();
        let pairs: Vec<(usize, usize)> = d.merges.iter().map(|m| (m.a, m.b)).collect();
        assert_eq!(pairs, vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn assignments_cut_the_tree() {
        let sim = vec![
            vec![1.0, 0.9, 0.1],
            vec![0.9, 1.0, 0.5],
            vec![0.1, 0.5, 1.0],
        ];
        let d = average_linkage(&sim).unwrap();
        assert_eq!(d.assignments(2).unwrap(), vec![0, 0, 1]);
        assert_eq!(d.assignments(3).unwrap(), vec![0, 1, 2]);
        assert_eq!(d.assignments(1).unwrap(), vec![0, 0, 0]);
        assert!(d.assignments(0).is_err());
        assert!(d.assignments(4).is_err());
    }

    #[test]
    fn too_few_authors_is_an_error() {
        assert!(matches!(
            average_linkage(&[]),
            Err(crate::Error::TooSmall { got: 0, .. })
        ));
        assert!(matches!(
            average_linkage(&[vec![1.0]]),
            Err(crate::Error::TooSmall { got: 1, .. })
        ));
    }

    #[test]
    fn two_authors_merge_at_their_similarity() {
        let d = average_linkage(&[vec![1.0, 0.4], vec![0.4, 1.0]]).unwrap();
        assert_eq!(
            d.merges,
            vec![Merge { a: 0, b: 1, id: 2, similarity: 0.4, size: 2 }]
        );
    }

    #[test]
    fn identical_vectors_merge_at_unit_similarity() {
        let vectors = vec![vec![0.5, 0.5, 0.0]; 4];
        let d = average_linkage(&similarity_matrix(&vectors)).unwrap();
        for m in &d.merges {
            assert!((m.similarity - 1.0).abs() < 1e-12);
        }
    }

    /// Brute-force average linkage: cluster similarity recomputed each
    /// step as the mean over all original leaf pairs, no recursion.
    fn brute_force_linkage(sim: &[Vec<f64>]) -> Vec<Merge> {
        let n = sim.len();
        let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
        let mut merges = Vec::new();
        for step in 0..n - 1 {
            let mut best: Option<Candidate> = None;
            for p in 0..clusters.len() {
                for q in p + 1..clusters.len() {
                    let mut total = 0.0;
                    for &x in &clusters[p].1 {
                        for &y in &clusters[q].1 {
                            total += sim[x][y];
                        }
                    }
                    let s = total / (clusters[p].1.len() * clusters[q].1.len()) as f64;
                    let ids = (
                        clusters[p].0.min(clusters[q].0),
                        clusters[p].0.max(clusters[q].0),
                    );
                    let better = match &best {
                        None => true,
                        Some((bs, bids, _)) => {
                            s > *bs + 1e-12 || ((s - *bs).abs() <= 1e-12 && ids < *bids)
                        }
                    };
                    if better {
                        best = Some((s, ids, (p, q)));
                    }
                }
            }
            let (s, (ia, ib), (p, q)) = best.unwrap();
            let mut leaves = clusters[p].1.clone();
            leaves.extend(&clusters[q].1);
            merges.push(Merge {
                a: ia,
                b: ib,
                id: n + step,
                similarity: s,
                size: leaves.len(),
            });
            clusters[p] = (n + step, leaves);
            clusters.swap_remove(q);
        }
        merges
    }

    #[test]
    fn heavy_exclusive_pairs_cluster_by_shared_company() {
        // Two heavy two-author pairs bridged by one weak tie. Profile
        // cosine aligns authors who endorse the same people, so each
        // member of a heavy pair is most similar to the opposite pair's
        // member, never to its own partner (their mass sits on each
        // other's zeroed self-coordinate).
        let pubs: Vec<Publication> = [
            vec![0, 1], vec![0, 1], vec![0, 1],
            vec![2, 3], vec![2, 3], vec![2, 3],
            vec![0, 2],
        ]
        .into_iter()
        .enumerate()
        .map(|(i, authors)| Publication {
            pub_id: format!("p{i}"),
            year: 2000,
            venue: "v".into(),
            authors,
        })
        .collect();
        let w = WeightedDigraph::from_publications(4, &pubs);
        let sim = similarity_matrix(&author_vectors(&w));
        let d = average_linkage(&sim).unwrap();

        let oracle = brute_force_linkage(&sim);
        assert_eq!(d.merges.len(), oracle.len());
        for (got, want) in d.merges.iter().zip(&oracle) {
            assert_eq!((got.a, got.b, got.id, got.size), (want.a, want.b, want.id, want.size));
            assert!((got.similarity - want.similarity).abs() < 1e-9);
        }
        let pairs: Vec<(usize, usize)> = d.merges.iter().map(|m| (m.a, m.b)).collect();
        assert_eq!(pairs, vec![(0, 3), (1, 2), (4, 5)]);
    }

    fn sim_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec(0.0f64..1.0, n * n).prop_map(move |cells| {
                let mut m = vec![vec![0.0; n]; n];
                for i in 0..n {
                    m[i][i] = 1.0;
                    for j in i + 1..n {
                        let s = cells[i * n + j];
                        m[i][j] = s;
                        m[j][i] = s;
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn recursive_update_matches_brute_force_linkage(sim in sim_strategy()) {
            let d = average_linkage(&sim).unwrap();
            let oracle = brute_force_linkage(&sim);
            prop_assert_eq!(d.merges.len(), oracle.len());
            for (got, want) in d.merges.iter().zip(&oracle) {
                prop_assert_eq!((got.a, got.b, got.id, got.size), (want.a, want.b, want.id, want.size));
                prop_assert!((got.similarity - want.similarity).abs() < 1e-9);
            }
        }

        #[test]
        fn merge_levels_never_increase(sim in sim_strategy()) {
            let d = average_linkage(&sim).unwrap();
            prop_assert_eq!(d.merges.len(), d.leaves - 1);
            for w in d.merges.windows(2) {
                prop_assert!(w[1].similarity <= w[0].similarity + 1e-12);
            }
            // The final merge swallows every leaf.
            prop_assert_eq!(d.merges.last().unwrap().size, d.leaves);
        }

        #[test]
        fn merge_ids_are_dense_and_fresh(sim in sim_strategy()) {
            let d = average_linkage(&sim).unwrap();
            for (k, m) in d.merges.iter().enumerate() {
                prop_assert_eq!(m.id, d.leaves + k);
                prop_assert!(m.a < m.b);
                prop_assert!(m.b < m.id);
            }
        }

        #[test]
        fn pair_weights_rise_with_cofrequency(
            base in proptest::collection::vec((0usize..5, 0usize..5, 0.2f64..3.0), 1..8),
            bump in 0.1f64..5.0,
        ) {
            let base: Vec<(usize, usize, f64)> = base
                .into_iter()
                .filter(|&(a, b, _)| a != b)
                .collect();
            prop_assume!(!base.is_empty());
            let (i, j, _) = base[0];
            let w_before =
                WeightedDigraph::from_cofrequency(&Cofrequency::from_entries(5, &base));
            let mut bumped = base.clone();
            bumped.push((i, j, bump));
            let w_after =
                WeightedDigraph::from_cofrequency(&Cofrequency::from_entries(5, &bumped));
            // Strengthening one tie never weakens its own coordinates.
            prop_assert!(w_after.weight(i, j) >= w_before.weight(i, j) - 1e-12);
            prop_assert!(w_after.weight(j, i) >= w_before.weight(j, i) - 1e-12);
        }
    }
}

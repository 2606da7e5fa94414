//! Validation instruments: rank correlation between metrics, overlap
//! against an external committee roster, and country-level collaboration
//! bookkeeping.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use crate::corpus::{normalize_name, AuthorTable, Publication};
use crate::error::{Error, Result};
use crate::rank::mean_ranks;

/// Pearson product-moment correlation. Errors on length mismatch, short
/// input, or a constant vector (undefined correlation).
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::TooSmall {
            what: "correlation",
            min: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::InvalidInput(
            "correlation is undefined for a constant vector".into(),
        ));
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Spearman rank correlation: Pearson over mean ranks, so ties are
/// averaged rather than broken arbitrarily.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    pearson(&mean_ranks(x), &mean_ranks(y))
}

/// Spearman over the indices where both metrics are defined. Metrics
/// with partial support (closeness restricted to a component) align on
/// author id and leave holes as `None`.
pub fn spearman_overlap(x: &[Option<f64>], y: &[Option<f64>]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (a, b) in x.iter().zip(y) {
        if let (Some(a), Some(b)) = (a, b) {
            xs.push(*a);
            ys.push(*b);
        }
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientOverlap);
    }
    spearman(&xs, &ys)
}

/// Parse a plain-text roster: one name per line, `#` lines are comments,
/// blanks skipped. Names are normalized and deduplicated
/// case-insensitively, first spelling wins, order preserved.
pub fn parse_roster<R: BufRead>(reader: R) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let canonical = normalize_name(trimmed);
        if canonical.is_empty() {
            continue;
        }
        if seen.insert(canonical.to_lowercase()) {
            out.push(canonical);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyRoster);
    }
    Ok(out)
}

/// Cumulative overlap curve: `points[i] = (k, matches)` counts how many
/// of the top `k` ranked names appear on the roster, case-insensitively.
/// `k` runs from 1 to `min(max_k, ranked.len())`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapCurve {
    pub points: Vec<(usize, usize)>,
    pub roster_size: usize,
}

pub fn overlap_curve(ranked: &[&str], roster: &[String], max_k: usize) -> OverlapCurve {
    let roster_set: BTreeSet<String> = roster.iter().map(|r| r.to_lowercase()).collect();
    let limit = max_k.min(ranked.len());
    let mut points = Vec::with_capacity(limit);
    let mut matches = 0usize;
    for (i, name) in ranked.iter().take(limit).enumerate() {
        if roster_set.contains(&name.to_lowercase()) {
            matches += 1;
        }
        points.push((i + 1, matches));
    }
    OverlapCurve {
        points,
        roster_size: roster.len(),
    }
}

/// Roster entries that match no author name, case-insensitively. These
/// usually flag spelling drift between the roster and the bibliography.
pub fn unmatched_roster(author_names: &[String], roster: &[String]) -> Vec<String> {
    let known: BTreeSet<String> = author_names.iter().map(|n| n.to_lowercase()).collect();
    roster
        .iter()
        .filter(|r| !known.contains(&r.to_lowercase()))
        .cloned()
        .collect()
}

/// Country collaboration network, accumulated per publication: every
/// unordered author pair on a byline counts once per publication it
/// shares. Pairs with two known, distinct countries become edge weight;
/// known-equal pairs and pairs with a missing country are tallied
/// separately, so the three buckets add up to the total pair count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountryGraph {
    /// Known country -> authors in the table with that country.
    pub author_counts: BTreeMap<String, usize>,
    /// Authors without country metadata.
    pub unknown_authors: usize,
    /// (a, b) with a < b lexicographically -> cross-country pair count.
    /// Never contains self-loops.
    pub edges: BTreeMap<(String, String), usize>,
    /// Total cross-country pairs, the sum over `edges`.
    pub cross_pairs: usize,
    /// Pairs whose known countries coincide.
    pub same_pairs: usize,
    /// Pairs with at least one unknown country.
    pub skipped_pairs: usize,
}

impl CountryGraph {
    /// Cross-country pairs over all pairs with both countries known.
    /// 0 when nothing crosses a border (including the empty case).
    pub fn cross_share(&self) -> f64 {
        if self.cross_pairs == 0 {
            return 0.0;
        }
        self.cross_pairs as f64 / (self.cross_pairs + self.same_pairs) as f64
    }
}

pub fn country_network(pubs: &[Publication], table: &AuthorTable) -> CountryGraph {
    let mut out = CountryGraph::default();
    for v in 0..table.len() {
        match table.country_of(v) {
            Some(c) => *out.author_counts.entry(c.to_string()).or_insert(0) += 1,
            None => out.unknown_authors += 1,
        }
    }
    for p in pubs {
        for (i, &a) in p.authors.iter().enumerate() {
            for &b in &p.authors[i + 1..] {
                match (table.country_of(a), table.country_of(b)) {
                    (Some(ca), Some(cb)) if ca != cb => {
                        let key = if ca < cb {
                            (ca.to_string(), cb.to_string())
                        } else {
                            (cb.to_string(), ca.to_string())
                        };
                        *out.edges.entry(key).or_insert(0) += 1;
                        out.cross_pairs += 1;
                    }
                    (Some(_), Some(_)) => out.same_pairs += 1,
                    _ => out.skipped_pairs += 1,
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Cursor;

    #[test]
    fn spearman_recovers_known_values() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let rev = [4.0, 3.0, 2.0, 1.0];
        assert!((spearman(&a, &rev).unwrap() + 1.0).abs() < 1e-12);
        let b = [1.0, 2.0, 4.0, 3.0];
        assert!((spearman(&a, &b).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn spearman_averages_ties() {
        let x = [1.0, 2.0, 2.0, 3.0];
        let y = [1.0, 2.0, 3.0, 4.0];
        let expected = 0.9f64.sqrt();
        assert!((spearman(&x, &y).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn correlation_rejects_degenerate_input() {
        assert!(matches!(
            spearman(&[1.0, 2.0], &[1.0]),
            Err(Error::DimensionMismatch(2, 1))
        ));
        assert!(matches!(
            spearman(&[1.0], &[1.0]),
            Err(Error::TooSmall { got: 1, .. })
        ));
        assert!(matches!(
            spearman(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn overlap_intersects_on_shared_support() {
        let x = [Some(1.0), None, Some(3.0), Some(4.0)];
        let y = [Some(2.0), Some(9.0), None, Some(8.0)];
        // Shared support is indices 0 and 3, perfectly concordant.
        assert!((spearman_overlap(&x, &y).unwrap() - 1.0).abs() < 1e-12);

        let thin = [Some(1.0), None];
        let other = [Some(2.0), Some(3.0)];
        assert!(matches!(
            spearman_overlap(&thin, &other),
            Err(Error::InsufficientOverlap)
        ));
    }

    #[test]
    fn roster_parsing_skips_comments_and_dedups() {
        let roster = parse_roster(Cursor::new(
            "# committee\nAlice  Smith\n\nbob jones\nALICE SMITH\n  # trailing note\n",
        ))
        .unwrap();
        assert_eq!(roster, vec!["Alice Smith".to_string(), "bob jones".to_string()]);
        assert!(matches!(
            parse_roster(Cursor::new("# only comments\n")),
            Err(Error::EmptyRoster)
        ));
    }

    #[test]
    fn overlap_curve_counts_case_insensitively() {
        let roster = vec!["Alice".to_string(), "Carol".to_string()];
        let curve = overlap_curve(&["ALICE", "Bob", "carol", "Dan"], &roster, 10);
        assert_eq!(curve.points, vec![(1, 1), (2, 1), (3, 2), (4, 2)]);
        assert_eq!(curve.roster_size, 2);

        let truncated = overlap_curve(&["ALICE", "Bob", "carol"], &roster, 2);
        assert_eq!(truncated.points, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn unmatched_roster_reports_spelling_drift() {
        let authors = vec!["Alice Smith".to_string(), "Bob Jones".to_string()];
        let roster = vec!["alice smith".to_string(), "Carol White".to_string()];
        assert_eq!(unmatched_roster(&authors, &roster), vec!["Carol White"]);
    }

    fn publication(id: &str, authors: &[usize]) -> Publication {
        Publication {
            pub_id: id.into(),
            year: 2000,
            venue: "v".into(),
            authors: authors.to_vec(),
        }
    }

    #[test]
    fn country_network_accumulates_per_publication_pairs() {
        let mut table = AuthorTable::new();
        for name in ["A", "B", "C", "D"] {
            table.intern(name);
        }
        table.set_country(0, "US");
        table.set_country(1, "us");
        table.set_country(2, "de");
        // Author 3 has no country. The pair (0,2) recurs in two
        // publications and must count twice.
        let pubs = vec![
            publication("p1", &[0, 1, 2]),
            publication("p2", &[0, 2]),
            publication("p3", &[1, 3]),
        ];
        let cg = country_network(&pubs, &table);
        assert_eq!(cg.same_pairs, 1);
        assert_eq!(cg.cross_pairs, 3);
        assert_eq!(cg.skipped_pairs, 1);
        assert_eq!(cg.unknown_authors, 1);
        assert_eq!(
            cg.author_counts,
            BTreeMap::from([("us".into(), 2), ("de".into(), 1)])
        );
        assert_eq!(cg.edges, BTreeMap::from([(("de".into(), "us".into()), 3)]));
        assert!((cg.cross_share() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn single_country_corpus_has_no_edges() {
        let mut table = AuthorTable::new();
        table.intern("A");
        table.intern("B");
        table.set_country(0, "us");
        table.set_country(1, "us");
        let cg = country_network(&[publication("p", &[0, 1])], &table);
        assert!(cg.edges.is_empty());
        assert_eq!(cg.cross_share(), 0.0);
        assert_eq!(cg.same_pairs, 1);
    }

    proptest! {
        #[test]
        fn spearman_is_symmetric_and_bounded(
            pairs in proptest::collection::vec((-100i32..100, -100i32..100), 3..40),
        ) {
            let x: Vec<f64> = pairs.iter().map(|&(a, _)| f64::from(a)).collect();
            let y: Vec<f64> = pairs.iter().map(|&(_, b)| f64::from(b)).collect();
            prop_assume!(x.iter().any(|&v| v != x[0]));
            prop_assume!(y.iter().any(|&v| v != y[0]));
            let xy = spearman(&x, &y).unwrap();
            let yx = spearman(&y, &x).unwrap();
            prop_assert!((xy - yx).abs() < 1e-12);
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&xy));
        }

        #[test]
        fn spearman_ignores_monotone_transforms(
            values in proptest::collection::vec((-50i32..50, -50i32..50), 3..30),
        ) {
            let x: Vec<f64> = values.iter().map(|&(a, _)| f64::from(a)).collect();
            let y: Vec<f64> = values.iter().map(|&(_, b)| f64::from(b)).collect();
            prop_assume!(x.iter().any(|&v| v != x[0]));
            prop_assume!(y.iter().any(|&v| v != y[0]));
            let transformed: Vec<f64> = x.iter().map(|&v| 2.0 * v.powi(3) + 7.0).collect();
            let base = spearman(&x, &y).unwrap();
            let moved = spearman(&transformed, &y).unwrap();
            prop_assert!((base - moved).abs() < 1e-12);
        }

        #[test]
        fn overlap_curves_rise_one_step_at_a_time(
            ranked_ids in proptest::collection::btree_set(0usize..30, 1..20),
            roster_ids in proptest::collection::btree_set(0usize..30, 1..10),
            max_k in 1usize..25,
        ) {
            let ranked_names: Vec<String> = ranked_ids.iter().map(|i| format!("Name {i}")).collect();
            let ranked: Vec<&str> = ranked_names.iter().map(String::as_str).collect();
            let roster: Vec<String> = roster_ids.iter().map(|i| format!("name {i}")).collect();
            let curve = overlap_curve(&ranked, &roster, max_k);
            prop_assert_eq!(curve.points.len(), max_k.min(ranked.len()));
            let mut prev = 0usize;
            for &(k, m) in &curve.points {
                prop_assert!(m <= k);
                prop_assert!(m <= roster.len());
                prop_assert!(m == prev || m == prev + 1);
                prev = m;
            }
        }

        #[test]
        fn every_byline_pair_lands_in_one_country_bucket(
            bylines in proptest::collection::vec(proptest::collection::btree_set(0usize..10, 1..5), 0..12),
            countries in proptest::collection::vec(proptest::option::of(0u8..3), 10),
        ) {
            let pubs: Vec<Publication> = bylines
                .iter()
                .enumerate()
                .map(|(i, set)| Publication {
                    pub_id: format!("p{i}"),
                    year: 2000,
                    venue: "v".into(),
                    authors: set.iter().copied().collect(),
                })
                .collect();
            let mut table = AuthorTable::new();
            for i in 0..10 {
                table.intern(&format!("A{i}"));
            }
            for (i, c) in countries.iter().enumerate() {
                if let Some(c) = c {
                    table.set_country(i, &format!("c{c}"));
                }
            }
            let cg = country_network(&pubs, &table);
            let total_pairs: usize = pubs
                .iter()
                .map(|p| p.author_count() * (p.author_count() - 1) / 2)
                .sum();
            prop_assert_eq!(cg.cross_pairs + cg.same_pairs + cg.skipped_pairs, total_pairs);
            let weight: usize = cg.edges.values().sum();
            prop_assert_eq!(weight, cg.cross_pairs);
            for ((a, b), w) in &cg.edges {
                prop_assert!(a < b);
                prop_assert!(*w > 0);
            }
            let known: usize = cg.author_counts.values().sum();
            prop_assert_eq!(known + cg.unknown_authors, 10);
        }
    }
}

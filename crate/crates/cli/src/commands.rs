//! The six subcommands. Each one loads the corpus, derives whatever
//! graphs it needs, and writes CSV/DOT files into the output directory.
//! Progress notes and degradations (restricted metrics, skipped reports)
//! go to stderr; file contents are byte-stable across reruns.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use coauthornet::clustering::{cluster_authors, Dendrogram};
use coauthornet::corpus::{self, Corpus};
use coauthornet::dot;
use coauthornet::evaluation::{
    country_network, overlap_curve, parse_roster, spearman_overlap, unmatched_roster,
};
use coauthornet::netmodel::{Graph, WeightedDigraph};
use coauthornet::prestige::{authorrank, pagerank};
use coauthornet::report::{csv_line, score};
use coauthornet::topology::{
    characteristic_path_length, clustering_coefficient, components, degree_histogram,
    random_baseline,
};
use coauthornet::{centrality, Error, NodeId, Result};

use crate::config::{Metric, RunConfig};

fn notice(msg: impl std::fmt::Display) {
    eprintln!("notice: {msg}");
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::InputFile {
            path: path.to_path_buf(),
            source: e,
        })
}

fn load_corpus(cfg: &RunConfig) -> Result<Corpus> {
    let mut corpus = corpus::parse_publications(open(&cfg.input)?)?;
    if let Some(path) = &cfg.affiliations {
        let report = corpus::apply_affiliations(open(path)?, &mut corpus.authors)?;
        if report.unknown_authors > 0 {
            notice(format!(
                "affiliation rows for authors absent from the bibliography: {}",
                report.unknown_authors
            ));
        }
    }
    Ok(corpus)
}

fn write_out(cfg: &RunConfig, name: &str, content: &str) -> Result<()> {
    std::fs::create_dir_all(&cfg.out)?;
    std::fs::write(cfg.out.join(name), content)?;
    Ok(())
}

/// Ids with a score, ordered score descending, then name, then id.
fn ranked_ids(scores: &[Option<f64>], names: &[String]) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (0..scores.len()).filter(|&i| scores[i].is_some()).collect();
    ids.sort_by(|&a, &b| {
        scores[b]
            .unwrap()
            .partial_cmp(&scores[a].unwrap())
            .unwrap()
            .then_with(|| names[a].cmp(&names[b]))
            .then(a.cmp(&b))
    });
    ids
}

/// Scores for one metric over the full author-id space; `None` marks
/// authors outside the metric's support (closeness off the largest
/// component).
fn metric_scores(
    metric: Metric,
    cfg: &RunConfig,
    graph: &Graph,
    weighted: &WeightedDigraph,
) -> Result<Vec<Option<f64>>> {
    let full = |v: Vec<f64>| v.into_iter().map(Some).collect::<Vec<Option<f64>>>();
    match metric {
        Metric::Degree => Ok(full(
            centrality::degrees(graph).into_iter().map(|d| d as f64).collect(),
        )),
        Metric::Betweenness => Ok(full(centrality::betweenness(graph))),
        Metric::Closeness => {
            let comps = components(graph);
            if comps.len() <= 1 {
                return Ok(full(centrality::closeness(graph)?));
            }
            let comp = &comps[0];
            notice(format!(
                "closeness restricted to the largest component ({} of {} authors)",
                comp.len(),
                graph.n()
            ));
            let (sub, back) = graph.induced(comp);
            let sub_scores = centrality::closeness(&sub)?;
            let mut out = vec![None; graph.n()];
            for (local, &original) in back.iter().enumerate() {
                out[original] = Some(sub_scores[local]);
            }
            Ok(out)
        }
        Metric::Pagerank | Metric::Authorrank => {
            let result = if metric == Metric::Pagerank {
                pagerank(graph, &cfg.rank)?
            } else {
                authorrank(weighted, &cfg.rank)?
            };
            if !result.converged {
                notice(format!(
                    "{} did not converge within {} iterations (last change {:e})",
                    metric.label(),
                    result.iterations,
                    result.deltas.last().copied().unwrap_or(0.0)
                ));
            }
            let mut scores = result.scores;
            if cfg.normalize {
                let total: f64 = scores.iter().sum();
                if total > 0.0 {
                    for s in &mut scores {
                        *s /= total;
                    }
                }
            }
            Ok(full(scores))
        }
    }
}

/// Compute each distinct metric once, preserving first-mention order.
fn metric_cache(
    cfg: &RunConfig,
    graph: &Graph,
    weighted: &WeightedDigraph,
) -> Result<Vec<(Metric, Vec<Option<f64>>)>> {
    let mut cache: Vec<(Metric, Vec<Option<f64>>)> = Vec::new();
    for &m in &cfg.metrics {
        if cache.iter().all(|(seen, _)| *seen != m) {
            cache.push((m, metric_scores(m, cfg, graph, weighted)?));
        }
    }
    Ok(cache)
}

fn cached(cache: &[(Metric, Vec<Option<f64>>)], metric: Metric) -> &[Option<f64>] {
    &cache
        .iter()
        .find(|(m, _)| *m == metric)
        .expect("metric computed above")
        .1
}

pub fn stats(cfg: RunConfig) -> Result<()> {
    let corpus = load_corpus(&cfg)?;
    let stats = corpus::corpus_stats(&corpus.publications, &corpus.authors);

    let mut text = String::from("# totals\nmetric,value\n");
    text += &csv_line(["publications", &stats.total_publications.to_string()]);
    text += &csv_line(["authors", &stats.total_authors.to_string()]);
    text += &csv_line(["mean_authors_per_paper", &score(stats.mean_authors_per_paper)]);
    text += &csv_line([
        "duplicate_author_warnings",
        &corpus.report.duplicate_author_warnings.to_string(),
    ]);
    text += &csv_line(["rejected_records", &corpus.report.rejected_records.to_string()]);
    text += &csv_line([
        "blank_author_entries",
        &corpus.report.blank_author_entries.to_string(),
    ]);

    text += "\n# yearly\nyear,publications,authors,new_authors,international_authors,unknown_country_authors\n";
    for row in &stats.yearly {
        text += &csv_line([
            row.year.to_string(),
            row.publications.to_string(),
            row.authors.to_string(),
            row.new_authors.to_string(),
            row.international_authors.to_string(),
            row.unknown_country_authors.to_string(),
        ]);
    }

    text += "\n# publications_per_author\npublications,authors\n";
    for (pubs, authors) in &stats.pubs_per_author_hist {
        text += &csv_line([pubs.to_string(), authors.to_string()]);
    }

    text += "\n# authors_per_paper\nauthors,publications\n";
    for (authors, papers) in &stats.authors_per_paper_hist {
        text += &csv_line([authors.to_string(), papers.to_string()]);
    }

    write_out(&cfg, "stats.csv", &text)
}

pub fn rank(cfg: RunConfig) -> Result<()> {
    let corpus = load_corpus(&cfg)?;
    let graph = Graph::from_publications(corpus.authors.len(), &corpus.publications);
    let weighted = WeightedDigraph::from_publications(corpus.authors.len(), &corpus.publications);
    let names = corpus.authors.names();

    let cache = metric_cache(&cfg, &graph, &weighted)?;
    for (metric, scores) in &cache {
        let order = ranked_ids(scores, names);
        let limit = cfg.top.unwrap_or(order.len());
        let mut text = String::from("rank,author,score\n");
        for (pos, &id) in order.iter().take(limit).enumerate() {
            text += &csv_line([
                (pos + 1).to_string(),
                names[id].clone(),
                score(scores[id].unwrap()),
            ]);
        }
        write_out(&cfg, &format!("rank_{}.csv", metric.label()), &text)?;
    }
    Ok(())
}

pub fn analyze(cfg: RunConfig) -> Result<()> {
    let corpus = load_corpus(&cfg)?;
    let graph = Graph::from_publications(corpus.authors.len(), &corpus.publications);

    let comps = components(&graph);
    let mut text = String::from("rank,size\n");
    for (i, comp) in comps.iter().enumerate() {
        text += &csv_line([(i + 1).to_string(), comp.len().to_string()]);
    }
    write_out(&cfg, "components.csv", &text)?;

    let mut text = String::from("degree,count\n");
    for (degree, count) in degree_histogram(&graph) {
        text += &csv_line([degree.to_string(), count.to_string()]);
    }
    write_out(&cfg, "degree_histogram.csv", &text)?;

    match comps.first() {
        Some(comp) => {
            notice(format!(
                "largest component has {} of {} authors",
                comp.len(),
                graph.n()
            ));
            if comp.len() < 3 {
                notice("small-world metrics skipped (largest component is smaller than 3)");
            } else {
                let (sub, _) = graph.induced(comp);
                let cc = clustering_coefficient(&sub)?;
                let cpl = characteristic_path_length(&sub)?;
                let baseline =
                    random_baseline(sub.n(), sub.m(), cfg.baseline_samples, cfg.seed)?;
                let mut text = String::from("metric,value,baseline_mean,seeds\n");
                text += &csv_line([
                    "clustering_coefficient".to_string(),
                    score(cc),
                    score(baseline.mean_clustering),
                    cfg.baseline_samples.to_string(),
                ]);
                text += &csv_line([
                    "characteristic_path_length".to_string(),
                    score(cpl),
                    score(baseline.mean_path_length),
                    cfg.baseline_samples.to_string(),
                ]);
                write_out(&cfg, "small_world.csv", &text)?;
            }
        }
        None => notice("empty graph; small-world metrics skipped"),
    }

    if cfg.affiliations.is_some() {
        let cg = country_network(&corpus.publications, &corpus.authors);

        let mut text = String::from("country_a,country_b,pairs\n");
        for ((a, b), pairs) in &cg.edges {
            text += &csv_line([a.clone(), b.clone(), pairs.to_string()]);
        }
        write_out(&cfg, "country_edges.csv", &text)?;

        let mut text = String::from("country,authors\n");
        for (country, authors) in &cg.author_counts {
            text += &csv_line([country.clone(), authors.to_string()]);
        }
        write_out(&cfg, "country_authors.csv", &text)?;

        let mut text = String::from("metric,value\n");
        text += &csv_line(["cross_pairs", &cg.cross_pairs.to_string()]);
        text += &csv_line(["same_pairs", &cg.same_pairs.to_string()]);
        text += &csv_line(["skipped_pairs", &cg.skipped_pairs.to_string()]);
        text += &csv_line(["cross_share", &score(cg.cross_share())]);
        text += &csv_line(["unknown_authors", &cg.unknown_authors.to_string()]);
        write_out(&cfg, "country_summary.csv", &text)?;
    } else {
        notice("no affiliations file given; country reports skipped");
    }
    Ok(())
}

fn largest_component_digraph(
    corpus: &Corpus,
) -> Result<(WeightedDigraph, Vec<NodeId>)> {
    let graph = Graph::from_publications(corpus.authors.len(), &corpus.publications);
    let weighted = WeightedDigraph::from_publications(corpus.authors.len(), &corpus.publications);
    let comps = components(&graph);
    let comp = comps.first().cloned().unwrap_or_default();
    notice(format!(
        "largest component has {} of {} authors",
        comp.len(),
        graph.n()
    ));
    Ok(weighted.restrict(&comp))
}

fn dendrogram_csv(d: &Dendrogram) -> String {
    let mut text = String::from("step,cluster_a,cluster_b,level,size\n");
    for (i, m) in d.merges.iter().enumerate() {
        text += &csv_line([
            (i + 1).to_string(),
            m.a.to_string(),
            m.b.to_string(),
            score(m.similarity),
            m.size.to_string(),
        ]);
    }
    text
}

pub fn cluster(cfg: RunConfig) -> Result<()> {
    let corpus = load_corpus(&cfg)?;
    let (restricted, back) = largest_component_digraph(&corpus)?;
    let dendrogram = cluster_authors(&restricted)?;

    let mut text = String::from("leaf,author\n");
    for (leaf, &original) in back.iter().enumerate() {
        text += &csv_line([leaf.to_string(), corpus.authors.name_of(original).to_string()]);
    }
    write_out(&cfg, "dendrogram_leaves.csv", &text)?;

    write_out(&cfg, "dendrogram.csv", &dendrogram_csv(&dendrogram))?;

    let names: Vec<String> = back
        .iter()
        .map(|&id| corpus.authors.name_of(id).to_string())
        .collect();
    write_out(&cfg, "dendrogram.dot", &dot::dendrogram_dot(&dendrogram, &names))
}

pub fn validate(cfg: RunConfig) -> Result<()> {
    if cfg.metrics.len() < 2 {
        return Err(Error::InvalidInput(
            "validate needs at least two --metrics entries to correlate".into(),
        ));
    }
    let corpus = load_corpus(&cfg)?;
    let graph = Graph::from_publications(corpus.authors.len(), &corpus.publications);
    let weighted = WeightedDigraph::from_publications(corpus.authors.len(), &corpus.publications);
    let names = corpus.authors.names();
    let cache = metric_cache(&cfg, &graph, &weighted)?;

    let mut text = String::from("metric");
    for &m in &cfg.metrics {
        let _ = write!(text, ",{}", m.label());
    }
    text.push('\n');
    for &a in &cfg.metrics {
        let mut fields = vec![a.label().to_string()];
        for &b in &cfg.metrics {
            let rho = spearman_overlap(cached(&cache, a), cached(&cache, b))?;
            fields.push(score(rho));
        }
        text += &csv_line(fields);
    }
    write_out(&cfg, "spearman_matrix.csv", &text)?;

    match &cfg.roster {
        Some(path) => {
            let roster = parse_roster(open(path)?)?;
            let k = cfg.top.unwrap_or(50);
            let mut text = String::from("k,matches,metric\n");
            for (metric, scores) in &cache {
                let order = ranked_ids(scores, names);
                let ranked: Vec<&str> = order.iter().map(|&id| names[id].as_str()).collect();
                let curve = overlap_curve(&ranked, &roster, k);
                for &(k, matches) in &curve.points {
                    text += &csv_line([
                        k.to_string(),
                        matches.to_string(),
                        metric.label().to_string(),
                    ]);
                }
            }
            write_out(&cfg, "overlap_curves.csv", &text)?;

            let mut text = String::from("name\n");
            for name in unmatched_roster(names, &roster) {
                text += &csv_line([name]);
            }
            write_out(&cfg, "unmatched_roster.csv", &text)?;
        }
        None => notice("no roster given; overlap curves skipped"),
    }
    Ok(())
}

pub fn export(cfg: RunConfig) -> Result<()> {
    let corpus = load_corpus(&cfg)?;
    let graph = Graph::from_publications(corpus.authors.len(), &corpus.publications);
    let weighted = WeightedDigraph::from_publications(corpus.authors.len(), &corpus.publications);
    let names = corpus.authors.names();

    write_out(&cfg, "author_graph.dot", &dot::undirected_dot(&graph, names))?;
    write_out(
        &cfg,
        "weighted_graph.dot",
        &dot::weighted_dot(&weighted, names, cfg.min_weight),
    )?;

    if cfg.affiliations.is_some() {
        let cg = country_network(&corpus.publications, &corpus.authors);
        write_out(&cfg, "country_graph.dot", &dot::country_dot(&cg))?;
    } else {
        notice("no affiliations file given; country graph skipped");
    }

    let comps = components(&graph);
    match comps.first() {
        Some(comp) if comp.len() >= 2 => {
            let (restricted, back) = weighted.restrict(comp);
            let dendrogram = cluster_authors(&restricted)?;
            let local_names: Vec<String> = back
                .iter()
                .map(|&id| corpus.authors.name_of(id).to_string())
                .collect();
            write_out(
                &cfg,
                "dendrogram.dot",
                &dot::dendrogram_dot(&dendrogram, &local_names),
            )?;
        }
        _ => notice("dendrogram skipped (largest component is smaller than 2)"),
    }
    Ok(())
}

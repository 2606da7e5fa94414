//! Prestige scores by iterated endorsement: AuthorRank on the weighted
//! digraph and ordinary PageRank on the binary graph.
//!
//! Both solve `x(i) = (1 - d) + d * sum over in-neighbors j of x(j) *
//! w(j, i)` by synchronous fixed-point iteration from an all-ones start.
//! AuthorRank takes `w` from normalized co-frequency, so endorsement is
//! split by collaboration intensity; PageRank splits it uniformly,
//! `1 / degree(j)`. The two code paths are deliberately separate so one
//! can check the other on uniform input.
//!
//! Authors with no out-arcs simply endorse nobody. Their score settles
//! at `1 - d` and total mass shrinks accordingly; nothing is
//! redistributed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netmodel::{Graph, WeightedDigraph};

/// Iteration controls shared by both scores.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOptions {
    /// Damping factor `d`, strictly between 0 and 1.
    pub damping: f64,
    /// Convergence threshold on the largest per-node change per sweep.
    pub tol: f64,
    /// Sweep budget before giving up.
    pub max_iter: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

impl RankOptions {
    fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidInput(format!(
                "damping must lie strictly between 0 and 1, got {}",
                self.damping
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidInput(
                "iteration budget must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Scores plus how the iteration ended. A non-converged result still
/// carries the last iterate; the flag lets callers decide whether to
/// trust it. `deltas[k]` is the largest per-node change of sweep `k+1`,
/// kept as a convergence diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub deltas: Vec<f64>,
}

impl RankResult {
    /// Diagnostic: whether the recorded deltas stop growing once the
    /// first `skip` sweeps are past. A false answer signals an input the
    /// iteration struggled on, not a hard failure.
    pub fn deltas_nonincreasing_after(&self, skip: usize) -> bool {
        self.deltas
            .windows(2)
            .skip(skip.saturating_sub(1))
            .all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15)
    }
}

fn iterate<F>(n: usize, opts: &RankOptions, sweep: F) -> Result<RankResult>
where
    F: Fn(&[f64], &mut [f64]),
{
    opts.validate()?;
    if n == 0 {
        return Ok(RankResult {
            scores: Vec::new(),
            iterations: 0,
            converged: true,
            deltas: Vec::new(),
        });
    }
    let mut current = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut deltas = Vec::new();
    for iteration in 1..=opts.max_iter {
        sweep(&current, &mut next);
        let mut change: f64 = 0.0;
        for (a, b) in current.iter().zip(&next) {
            change = change.max((a - b).abs());
        }
        deltas.push(change);
        std::mem::swap(&mut current, &mut next);
        if change < opts.tol {
            return Ok(RankResult {
                scores: current,
                iterations: iteration,
                converged: true,
                deltas,
            });
        }
    }
    Ok(RankResult {
        scores: current,
        iterations: opts.max_iter,
        converged: false,
        deltas,
    })
}

/// AuthorRank over a row-stochastic weighted digraph.
pub fn authorrank(w: &WeightedDigraph, opts: &RankOptions) -> Result<RankResult> {
    let incoming = w.transpose();
    let base = 1.0 - opts.damping;
    let d = opts.damping;
    iterate(w.n(), opts, |current, next| {
        next.par_iter_mut().enumerate().for_each(|(i, slot)| {
            let inflow: f64 = incoming[i]
                .iter()
                .map(|&(j, weight)| current[j] * weight)
                .sum();
            *slot = base + d * inflow;
        });
    })
}

/// PageRank on the symmetric orientation of the binary graph, splitting
/// endorsement `1 / degree` at each step.
pub fn pagerank(g: &Graph, opts: &RankOptions) -> Result<RankResult> {
    let inv_degree: Vec<f64> = (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            if d == 0 {
                0.0
            } else {
                1.0 / d as f64
            }
        })
        .collect();
    let base = 1.0 - opts.damping;
    let d = opts.damping;
    iterate(g.n(), opts, |current, next| {
        next.par_iter_mut().enumerate().for_each(|(i, slot)| {
            let inflow: f64 = g
                .neighbors(i)
                .iter()
                .map(|&j| current[j] * inv_degree[j])
                .sum();
            *slot = base + d * inflow;
        });
    })
}

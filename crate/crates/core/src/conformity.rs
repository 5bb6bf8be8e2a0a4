//! Node-level Conformity and its network average.
//!
//! For a node `u` the score walks every breadth-first shell around `u`. Each
//! node `v` in a shell contributes `±1` (agreement of labels) weighted by how
//! homophilic `v` is towards its own neighbors. Shell averages are damped by
//! `d^-alpha` and the total is normalized by the sum of the same weights, so
//! every defined score lies in `[-1, 1]`.
//!
//! Only distances that actually occur around `u` enter the sums. Isolated
//! nodes have no shells and get no score.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, ShellWalker};
use crate::labels::{Label, LabelView};

/// `+1` for equal labels, `-1` otherwise.
pub fn indicator(a: Label, b: Label) -> f64 {
    if a == b {
        1.0
    } else {
        -1.0
    }
}

/// Share of `v`'s neighbors carrying `v`'s label, or `1` when none do.
pub fn neighbor_label_fraction(g: &AttributedGraph, view: &LabelView, v: usize) -> Result<f64> {
    check_view(g, view)?;
    if v >= g.node_count() {
        return Err(Error::UnknownNode {
            index: v,
            len: g.node_count(),
        });
    }
    fraction(g, view, v).ok_or(Error::IsolatedNode(v))
}

fn fraction(g: &AttributedGraph, view: &LabelView, v: usize) -> Option<f64> {
    let neighbors = g.neighbors(v);
    if neighbors.is_empty() {
        return None;
    }
    let own = view.label(v);
    let same = neighbors.iter().filter(|&&w| view.label(w) == own).count();
    if same == 0 {
        Some(1.0)
    } else {
        Some(same as f64 / neighbors.len() as f64)
    }
}

fn check_view(g: &AttributedGraph, view: &LabelView) -> Result<()> {
    if view.labels().len() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "label view covers {} nodes, graph has {}",
            view.labels().len(),
            g.node_count()
        )));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha must be a finite non-negative number, got {alpha}"
        )))
    }
}

/// Mean of `I(u, v) * f(v)` over each non-empty shell around one source.
#[derive(Debug, Clone, PartialEq)]
struct ShellProfile {
    means: Vec<(u32, f64)>,
}

impl ShellProfile {
    fn compute(
        g: &AttributedGraph,
        view: &LabelView,
        fractions: &[f64],
        walker: &mut ShellWalker,
        u: usize,
    ) -> Self {
        walker.run(g, u);
        let lu = view.label(u);
        let means = walker
            .shells()
            .map(|(d, nodes)| {
                let sum: f64 = nodes
                    .iter()
                    .map(|&v| indicator(lu, view.label(v)) * fractions[v])
                    .sum();
                (d, sum / nodes.len() as f64)
            })
            .collect();
        ShellProfile { means }
    }

    fn score(&self, alpha: f64) -> Option<f64> {
        if self.means.is_empty() {
            return None;
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for &(d, mean) in &self.means {
            let w = f64::from(d).powf(-alpha);
            num += mean * w;
            den += w;
        }
        Some(num / den)
    }
}

/// Per-node fraction table; isolated nodes hold a placeholder that is never read.
fn fraction_table(g: &AttributedGraph, view: &LabelView) -> Vec<f64> {
    (0..g.node_count())
        .map(|v| fraction(g, view, v).unwrap_or(f64::NAN))
        .collect()
}

/// Conformity of one node; `None` when the node is isolated.
pub fn node_conformity(
    g: &AttributedGraph,
    view: &LabelView,
    u: usize,
    alpha: f64,
) -> Result<Option<f64>> {
    check_view(g, view)?;
    check_alpha(alpha)?;
    if u >= g.node_count() {
        return Err(Error::UnknownNode {
            index: u,
            len: g.node_count(),
        });
    }
    let fractions = fraction_table(g, view);
    let mut walker = ShellWalker::new(g.node_count());
    Ok(ShellProfile::compute(g, view, &fractions, &mut walker, u).score(alpha))
}

/// Scores of every node for one alpha, with the network average.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformityResult {
    pub alpha: f64,
    pub attributes: Vec<String>,
    /// Indexed by node; `None` for isolated nodes.
    pub psi: Vec<Option<f64>>,
    /// Mean over defined scores; `None` when no node has a score.
    pub network_psi: Option<f64>,
    pub undefined_nodes: Vec<usize>,
}

impl ConformityResult {
    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.psi.iter().filter_map(|p| *p)
    }
}

/// Scores every node for each alpha on the current rayon pool.
///
/// One breadth-first decomposition per source is shared by all alphas. Each
/// node is evaluated sequentially inside its own task, so results do not
/// depend on the number of threads.
pub fn all_conformity(
    g: &AttributedGraph,
    view: &LabelView,
    alphas: &[f64],
) -> Result<Vec<ConformityResult>> {
    check_view(g, view)?;
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("no alpha values given".to_string()));
    }
    for &a in alphas {
        check_alpha(a)?;
    }

    let fractions = fraction_table(g, view);
    let n = g.node_count();
    let per_node: Vec<Vec<Option<f64>>> = (0..n)
        .into_par_iter()
        .map_init(
            || ShellWalker::new(n),
            |walker, u| {
                let profile = ShellProfile::compute(g, view, &fractions, walker, u);
                alphas.iter().map(|&a| profile.score(a)).collect()
            },
        )
        .collect();

    Ok(alphas
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let psi: Vec<Option<f64>> = per_node.iter().map(|scores| scores[k]).collect();
            let undefined_nodes = psi
                .iter()
                .enumerate()
                .filter(|(_, p)| p.is_none())
                .map(|(i, _)| i)
                .collect();
            let (sum, count) = psi
                .iter()
                .flatten()
                .fold((0.0, 0usize), |(s, c), &p| (s + p, c + 1));
            ConformityResult {
                alpha,
                attributes: view.attributes().to_vec(),
                psi,
                network_psi: (count > 0).then(|| sum / count as f64),
                undefined_nodes,
            }
        })
        .collect())
}

/// [`all_conformity`] on a dedicated pool of `workers` threads (0 = rayon default).
pub fn all_conformity_with_workers(
    g: &AttributedGraph,
    view: &LabelView,
    alphas: &[f64],
    workers: usize,
) -> Result<Vec<ConformityResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    pool.install(|| all_conformity(g, view, alphas))
}

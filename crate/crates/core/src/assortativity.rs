//! Newman's attribute assortativity coefficient.

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::labels::{Label, LabelView};

/// Mixing-matrix summary for one label view.
///
/// `e[g]` is the fraction of edges with both endpoints in category `g`;
/// `a[g]` is the share of total degree held by category `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssortativityReport {
    /// Display form of each category, in the view's label order.
    pub categories: Vec<String>,
    pub e: Vec<f64>,
    pub a: Vec<f64>,
    /// `None` when a single category holds all degree mass (the normalizer vanishes).
    pub r_global: Option<f64>,
}

impl AssortativityReport {
    pub fn trace_e(&self) -> f64 {
        self.e.iter().sum()
    }

    pub fn sum_a_squared(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.r_global.is_none()
    }
}

pub fn newman_assortativity(g: &AttributedGraph, view: &LabelView) -> Result<AssortativityReport> {
    if view.labels().len() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "label view covers {} nodes, graph has {}",
            view.labels().len(),
            g.node_count()
        )));
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::InvalidGraph(
            "assortativity is undefined on a graph without edges".to_string(),
        ));
    }

    let k = view.category_count();
    let mut within = vec![0usize; k];
    for (u, v) in g.edges() {
        let (lu, lv) = (view.label(u), view.label(v));
        if lu == lv {
            within[lu.0 as usize] += 1;
        }
    }
    let mut degree_mass = vec![0usize; k];
    for node in 0..g.node_count() {
        degree_mass[view.label(node).0 as usize] += g.degree(node);
    }

    let m = m as f64;
    let e: Vec<f64> = within.iter().map(|&c| c as f64 / m).collect();
    let a: Vec<f64> = degree_mass.iter().map(|&s| s as f64 / (2.0 * m)).collect();
    let trace: f64 = e.iter().sum();
    let expected: f64 = a.iter().map(|x| x * x).sum();

    // Sum of squares of a distribution is 1 only when one entry carries all mass.
    let degenerate = degree_mass.iter().filter(|&&s| s > 0).count() <= 1;
    let r_global = (!degenerate).then(|| (trace - expected) / (1.0 - expected));

    Ok(AssortativityReport {
        categories: (0..k).map(|i| view.display(Label(i as u32))).collect(),
        e,
        a,
        r_global,
    })
}

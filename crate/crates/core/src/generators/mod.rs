//! Deterministic constructors for small diagnostic graphs.

mod quintet;

pub use quintet::{
    generate_quintet, generate_quintet_with, Quintet, QuintetOptions, QuintetVariant,
    COLOR_ATTRIBUTE, QUINTET_DEGREE, QUINTET_EDGES, QUINTET_NODES,
};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::io::{build_graph, read_attributes, read_edge_list, EdgeListOptions};

pub const LABEL_ATTRIBUTE: &str = "label";
pub const LAYER_ATTRIBUTE: &str = "layer";
pub const FACTION_ATTRIBUTE: &str = "faction";

const KARATE_EDGES: &str = include_str!("../../data/karate_edges.csv");
const KARATE_ATTRIBUTES: &str = include_str!("../../data/karate_attributes.csv");

/// What to build. Every kind is a pure function of its fields.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Quintet {
        variant: QuintetVariant,
        seed: u64,
        options: QuintetOptions,
    },
    CompleteDistinct {
        n: usize,
    },
    ConcentricRings {
        core: usize,
        rings: Vec<usize>,
        core_label: String,
        outer_label: String,
    },
    Karate,
}

pub fn generate(spec: &GeneratorSpec) -> Result<AttributedGraph> {
    match spec {
        GeneratorSpec::Quintet {
            variant,
            seed,
            options,
        } => generate_quintet_with(*variant, *seed, options).map(|q| q.graph),
        GeneratorSpec::CompleteDistinct { n } => generate_complete_distinct(*n),
        GeneratorSpec::ConcentricRings {
            core,
            rings,
            core_label,
            outer_label,
        } => generate_concentric_rings(*core, rings, core_label, outer_label),
        GeneratorSpec::Karate => Ok(karate_fixture()),
    }
}

fn padded(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("{i:0width$}")
}

/// `K_n` where every node carries its own category.
pub fn generate_complete_distinct(n: usize) -> Result<AttributedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "complete-distinct needs at least 2 nodes, got {n}"
        )));
    }
    let ids = (0..n).map(|i| padded(i, n)).collect();
    let values = (0..n).map(|i| vec![format!("c{}", padded(i, n))]).collect();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    AttributedGraph::from_parts(ids, vec![LABEL_ATTRIBUTE.to_string()], values, edges)
}

/// A clique core wrapped in tree-like rings.
///
/// Node `j` of each ring hangs off node `j mod len` of the previous layer.
/// Labels alternate by layer: the core and even rings carry `core_label`,
/// odd rings `outer_label`, so every ring edge joins opposite labels. A
/// `layer` attribute records `0` for the core and `i` for the `i`-th ring.
pub fn generate_concentric_rings(
    core: usize,
    rings: &[usize],
    core_label: &str,
    outer_label: &str,
) -> Result<AttributedGraph> {
    if rings.is_empty() {
        return Err(Error::InvalidParameter("at least one ring is required".to_string()));
    }
    if core == 0 || rings.contains(&0) {
        return Err(Error::InvalidParameter("core and ring sizes must be at least 1".to_string()));
    }

    let total: usize = core + rings.iter().sum::<usize>();
    let width = total.saturating_sub(1).to_string().len();
    let mut ids = Vec::with_capacity(total);
    let mut values = Vec::with_capacity(total);
    let mut edges = Vec::new();

    for i in 0..core {
        ids.push(format!("{:0width$}", ids.len()));
        values.push(vec![core_label.to_string(), "0".to_string()]);
        for j in 0..i {
            edges.push((j, i));
        }
    }
    let mut previous = 0..core;
    for (layer, &size) in rings.iter().enumerate() {
        let start = ids.len();
        for j in 0..size {
            let node = ids.len();
            ids.push(format!("{node:0width$}"));
            let label = if layer % 2 == 0 { outer_label } else { core_label };
            values.push(vec![label.to_string(), (layer + 1).to_string()]);
            edges.push((previous.start + j % previous.len(), node));
        }
        previous = start..start + size;
    }

    AttributedGraph::from_parts(
        ids,
        vec![LABEL_ATTRIBUTE.to_string(), LAYER_ATTRIBUTE.to_string()],
        values,
        edges,
    )
}

/// Zachary's karate club: 34 members, 78 ties, and a `faction` attribute
/// (`Mr. Hi` or `Officer`). Node ids are `0`..`33` as in the bundled files.
pub fn karate_fixture() -> AttributedGraph {
    let opts = EdgeListOptions {
        has_header: true,
        ..Default::default()
    };
    let edges = read_edge_list(KARATE_EDGES.as_bytes(), &opts).expect("bundled karate edges parse");
    let table =
        read_attributes(KARATE_ATTRIBUTES.as_bytes(), "id", &[]).expect("bundled karate table parses");
    build_graph(&edges, &table, &[]).expect("bundled karate graph is valid")
}

//! Planted-mixing graphs with zero global assortativity.
//!
//! Every variant has 40 nodes (20 `red`, 20 `green`), 160 edges and degree 8
//! everywhere. Each color is split into a homophilic half and a heterophilic
//! half. Variant `k` reserves a number of stubs per node for planted edges:
//! homophilic nodes pair those stubs with same-color homophilic nodes, and
//! heterophilic nodes pair them across colors with heterophilic nodes. The
//! remaining stubs are matched uniformly at random. Half the planted edges
//! are same-color and half cross-color, which keeps the global coefficient
//! near zero; candidates are resampled until it is within tolerance and the
//! graph is connected.
//!
//! Variant `e` plants every stub. That alone would leave three components,
//! so two homophilic edges and two heterophilic edges are swapped into four
//! bridges that join homophilic nodes to heterophilic nodes of the other color.
//! Degrees are unchanged and the heterophilic half stays perfectly heterophilic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assortativity::newman_assortativity;
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::labels::compose_labels;

pub const QUINTET_NODES: usize = 40;
pub const QUINTET_EDGES: usize = 160;
pub const QUINTET_DEGREE: usize = 8;
pub const COLOR_ATTRIBUTE: &str = "color";

const GROUP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuintetVariant {
    A,
    B,
    C,
    D,
    E,
}

impl QuintetVariant {
    pub const ALL: [QuintetVariant; 5] = [
        QuintetVariant::A,
        QuintetVariant::B,
        QuintetVariant::C,
        QuintetVariant::D,
        QuintetVariant::E,
    ];

    /// Stubs per node reserved for planted edges.
    pub fn planted_stubs(self) -> usize {
        match self {
            QuintetVariant::A => 0,
            QuintetVariant::B => 2,
            QuintetVariant::C => 4,
            QuintetVariant::D => 6,
            QuintetVariant::E => 8,
        }
    }
}

impl fmt::Display for QuintetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            QuintetVariant::A => "a",
            QuintetVariant::B => "b",
            QuintetVariant::C => "c",
            QuintetVariant::D => "d",
            QuintetVariant::E => "e",
        };
        f.write_str(c)
    }
}

impl FromStr for QuintetVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(QuintetVariant::A),
            "b" => Ok(QuintetVariant::B),
            "c" => Ok(QuintetVariant::C),
            "d" => Ok(QuintetVariant::D),
            "e" => Ok(QuintetVariant::E),
            other => Err(Error::InvalidParameter(format!(
                "unknown quintet variant `{other}` (expected a..e)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuintetOptions {
    pub max_abs_r: f64,
    pub max_attempts: usize,
}

impl Default for QuintetOptions {
    fn default() -> Self {
        QuintetOptions {
            max_abs_r: 0.05,
            max_attempts: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Quintet {
    pub graph: AttributedGraph,
    pub r_global: f64,
    /// Candidates drawn, including the accepted one.
    pub attempts: usize,
}

pub fn generate_quintet(variant: QuintetVariant, seed: u64) -> Result<AttributedGraph> {
    generate_quintet_with(variant, seed, &QuintetOptions::default()).map(|q| q.graph)
}

pub fn generate_quintet_with(
    variant: QuintetVariant,
    seed: u64,
    options: &QuintetOptions,
) -> Result<Quintet> {
    if options.max_attempts == 0 {
        return Err(Error::InvalidParameter("max_attempts must be at least 1".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<f64> = None;

    for attempt in 1..=options.max_attempts {
        let Some(edges) = wire(variant, &mut rng) else {
            continue;
        };
        let graph = assemble(&edges)?;
        if !graph.is_connected() {
            continue;
        }
        let view = compose_labels(&graph, &[COLOR_ATTRIBUTE])?;
        let Some(r) = newman_assortativity(&graph, &view)?.r_global else {
            continue;
        };
        best = Some(best.map_or(r.abs(), |b: f64| b.min(r.abs())));
        if r.abs() <= options.max_abs_r {
            return Ok(Quintet {
                graph,
                r_global: r,
                attempts: attempt,
            });
        }
    }
    Err(Error::GenerationFailed {
        attempts: options.max_attempts,
        best_abs_r: best,
        max_abs_r: options.max_abs_r,
    })
}

// Node layout: 0..10 homophilic red, 10..20 heterophilic red,
// 20..30 homophilic green, 30..40 heterophilic green.
fn homophilic_red() -> std::ops::Range<usize> {
    0..GROUP
}
fn heterophilic_red() -> std::ops::Range<usize> {
    GROUP..2 * GROUP
}
fn homophilic_green() -> std::ops::Range<usize> {
    2 * GROUP..3 * GROUP
}
fn heterophilic_green() -> std::ops::Range<usize> {
    3 * GROUP..4 * GROUP
}

fn stubs(nodes: std::ops::Range<usize>, per_node: usize) -> Vec<usize> {
    nodes.flat_map(|n| std::iter::repeat_n(n, per_node)).collect()
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Sequential random matching of `pool` into simple edges; `false` if it gets stuck.
fn pair_pool(rng: &mut ChaCha8Rng, mut pool: Vec<usize>, edges: &mut BTreeSet<(usize, usize)>) -> bool {
    let mut candidates = Vec::new();
    while !pool.is_empty() {
        let a = pool.swap_remove(rng.gen_range(0..pool.len()));
        candidates.clear();
        candidates.extend(
            pool.iter()
                .enumerate()
                .filter(|&(_, &b)| b != a && !edges.contains(&key(a, b)))
                .map(|(j, _)| j),
        );
        let Some(&j) = candidates.choose(rng) else {
            return false;
        };
        let b = pool.swap_remove(j);
        edges.insert(key(a, b));
    }
    true
}

/// Like [`pair_pool`] but every edge joins `left` to `right`.
fn pair_across(
    rng: &mut ChaCha8Rng,
    mut left: Vec<usize>,
    mut right: Vec<usize>,
    edges: &mut BTreeSet<(usize, usize)>,
) -> bool {
    let mut candidates = Vec::new();
    while !left.is_empty() {
        let a = left.swap_remove(rng.gen_range(0..left.len()));
        candidates.clear();
        candidates.extend(
            right
                .iter()
                .enumerate()
                .filter(|&(_, &b)| !edges.contains(&key(a, b)))
                .map(|(j, _)| j),
        );
        let Some(&j) = candidates.choose(rng) else {
            return false;
        };
        let b = right.swap_remove(j);
        edges.insert(key(a, b));
    }
    true
}

fn wire(variant: QuintetVariant, rng: &mut ChaCha8Rng) -> Option<BTreeSet<(usize, usize)>> {
    let k = variant.planted_stubs();
    let mut edges = BTreeSet::new();
    if k > 0 {
        let ok = pair_pool(rng, stubs(homophilic_red(), k), &mut edges)
            && pair_pool(rng, stubs(homophilic_green(), k), &mut edges)
            && pair_across(
                rng,
                stubs(heterophilic_red(), k),
                stubs(heterophilic_green(), k),
                &mut edges,
            );
        if !ok {
            return None;
        }
    }
    if k < QUINTET_DEGREE {
        if !pair_pool(rng, stubs(0..QUINTET_NODES, QUINTET_DEGREE - k), &mut edges) {
            return None;
        }
    } else {
        bridge(rng, &mut edges);
    }
    Some(edges)
}

/// Degree-preserving swap that links the homophilic cliques to the heterophilic core.
fn bridge(rng: &mut ChaCha8Rng, edges: &mut BTreeSet<(usize, usize)>) {
    let within = |range: std::ops::Range<usize>| -> Vec<(usize, usize)> {
        edges
            .iter()
            .copied()
            .filter(|(a, b)| range.contains(a) && range.contains(b))
            .collect()
    };
    let red = within(homophilic_red());
    let green = within(homophilic_green());
    let across: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|(a, _)| heterophilic_red().contains(a))
        .collect();

    let &(a, b) = red.choose(rng).expect("planted red clique has edges");
    let &(c, d) = green.choose(rng).expect("planted green clique has edges");
    let picked: Vec<&(usize, usize)> = across.choose_multiple(rng, 2).collect();
    let (xr1, xg1) = *picked[0];
    let (xr2, xg2) = *picked[1];

    for e in [(a, b), (c, d), (xr1, xg1), (xr2, xg2)] {
        edges.remove(&e);
    }
    for (u, v) in [(a, xg1), (b, xg2), (c, xr1), (d, xr2)] {
        edges.insert(key(u, v));
    }
}

fn assemble(edges: &BTreeSet<(usize, usize)>) -> Result<AttributedGraph> {
    let ids = (0..QUINTET_NODES).map(|i| format!("{i:02}")).collect();
    let values = (0..QUINTET_NODES)
        .map(|i| vec![if i < 2 * GROUP { "red" } else { "green" }.to_string()])
        .collect();
    AttributedGraph::from_parts(
        ids,
        vec![COLOR_ATTRIBUTE.to_string()],
        values,
        edges.iter().copied(),
    )
}

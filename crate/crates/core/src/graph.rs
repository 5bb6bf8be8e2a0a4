//! Attributed undirected graph and breadth-first distance shells.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Immutable, simple, undirected graph whose nodes carry categorical attributes.
///
/// Node ids are opaque strings. Dense indices follow the lexicographic order
/// of the ids, so the same inputs always produce the same indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributedGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    attribute_names: Vec<String>,
    /// `values[node][attribute]`
    values: Vec<Vec<String>>,
    edge_count: usize,
}

impl AttributedGraph {
    /// Assembles a graph from node records and index-based edges.
    ///
    /// `edges` refer to positions in `ids`. Nodes are re-indexed into
    /// lexicographic id order. Self-loops, duplicate edges, duplicate ids and
    /// records with the wrong number of attribute values are rejected.
    pub fn from_parts<I>(
        ids: Vec<String>,
        attribute_names: Vec<String>,
        values: Vec<Vec<String>>,
        edges: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = ids.len();
        if values.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} attribute records for {} nodes",
                values.len(),
                n
            )));
        }
        for (id, record) in ids.iter().zip(&values) {
            if record.len() != attribute_names.len() {
                return Err(Error::InvalidGraph(format!(
                    "node `{id}` has {} attribute values, expected {}",
                    record.len(),
                    attribute_names.len()
                )));
            }
        }
        for (i, name) in attribute_names.iter().enumerate() {
            if attribute_names[..i].contains(name) {
                return Err(Error::InvalidGraph(format!("attribute `{name}` declared twice")));
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let mut rank = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        for w in order.windows(2) {
            if ids[w[0]] == ids[w[1]] {
                return Err(Error::InvalidGraph(format!("duplicate node id `{}`", ids[w[0]])));
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownNode {
                    index: a.max(b),
                    len: n,
                });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node `{}`", ids[a])));
            }
            let (a, b) = (rank[a], rank[b]);
            adjacency[a].push(b);
            adjacency[b].push(a);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge at node `{}`",
                    ids[order[u]]
                )));
            }
        }

        let mut sorted_ids = Vec::with_capacity(n);
        let mut sorted_values = Vec::with_capacity(n);
        let mut ids: Vec<Option<String>> = ids.into_iter().map(Some).collect();
        let mut values: Vec<Option<Vec<String>>> = values.into_iter().map(Some).collect();
        for &old in &order {
            sorted_ids.push(ids[old].take().expect("each node moved once"));
            sorted_values.push(values[old].take().expect("each node moved once"));
        }
        let index = sorted_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        Ok(AttributedGraph {
            ids: sorted_ids,
            index,
            adjacency,
            attribute_names,
            values: sorted_values,
            edge_count,
        })
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, node: usize) -> &str {
        &self.ids[node]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Sorted neighbor indices of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(low, high)` index pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attribute_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAttribute {
                name: name.to_string(),
                declared: self.attribute_names.clone(),
            })
    }

    /// Value of attribute number `attribute` on `node`.
    pub fn value(&self, node: usize, attribute: usize) -> &str {
        &self.values[node][attribute]
    }

    pub fn record(&self, node: usize) -> &[String] {
        &self.values[node]
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        let mut walker = ShellWalker::new(self.node_count());
        walker.run(self, 0);
        walker.reached() + 1 == self.node_count()
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                index: node,
                len: self.node_count(),
            })
        }
    }
}

/// Nodes at one exact shortest-path distance from a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shell {
    pub distance: u32,
    /// Sorted node indices.
    pub nodes: Vec<usize>,
}

/// Breadth-first decomposition of everything reachable from `source`.
///
/// Shells appear in strictly increasing distance, none of them empty, and the
/// source itself is never listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceShells {
    pub source: usize,
    pub shells: Vec<Shell>,
}

impl DistanceShells {
    pub fn reachable(&self) -> usize {
        self.shells.iter().map(|s| s.nodes.len()).sum()
    }

    pub fn distance_to(&self, node: usize) -> Option<u32> {
        self.shells
            .iter()
            .find(|s| s.nodes.binary_search(&node).is_ok())
            .map(|s| s.distance)
    }
}

pub fn distance_shells(g: &AttributedGraph, source: usize) -> Result<DistanceShells> {
    g.check_node(source)?;
    let mut walker = ShellWalker::new(g.node_count());
    walker.run(g, source);
    let shells = walker
        .shells()
        .map(|(distance, nodes)| {
            let mut nodes = nodes.to_vec();
            nodes.sort_unstable();
            Shell { distance, nodes }
        })
        .collect();
    Ok(DistanceShells { source, shells })
}

/// Reusable breadth-first search state.
///
/// After [`ShellWalker::run`], `order` holds every reached node except the
/// source in non-decreasing distance, and `bounds[k]..bounds[k + 1]` is the
/// slice at distance `k + 1`.
pub(crate) struct ShellWalker {
    seen: Vec<bool>,
    order: Vec<usize>,
    bounds: Vec<usize>,
}

impl ShellWalker {
    pub(crate) fn new(n: usize) -> Self {
        ShellWalker {
            seen: vec![false; n],
            order: Vec::with_capacity(n),
            bounds: Vec::new(),
        }
    }

    pub(crate) fn run(&mut self, g: &AttributedGraph, source: usize) {
        for &v in &self.order {
            self.seen[v] = false;
        }
        self.order.clear();
        self.bounds.clear();

        self.seen[source] = true;
        self.bounds.push(0);
        for &v in g.neighbors(source) {
            self.seen[v] = true;
            self.order.push(v);
        }
        let mut start = 0;
        while start < self.order.len() {
            let end = self.order.len();
            self.bounds.push(end);
            for i in start..end {
                let u = self.order[i];
                for &v in g.neighbors(u) {
                    if !self.seen[v] {
                        self.seen[v] = true;
                        self.order.push(v);
                    }
                }
            }
            start = end;
        }
        self.seen[source] = false;
    }

    pub(crate) fn reached(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn shells(&self) -> impl Iterator<Item = (u32, &[usize])> + '_ {
        self.bounds
            .windows(2)
            .enumerate()
            .map(move |(k, w)| (k as u32 + 1, &self.order[w[0]..w[1]]))
    }
}

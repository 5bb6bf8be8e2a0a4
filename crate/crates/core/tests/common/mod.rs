#![allow(dead_code)]

use conformity::AttributedGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A graph in raw form: node `i` has id `format!("{i:03}")`, so graph indices equal positions.
#[derive(Debug, Clone)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// `labels[node][attribute]`
    pub labels: Vec<Vec<String>>,
}

impl RawGraph {
    pub fn attribute_names(&self) -> Vec<String> {
        let k = self.labels.first().map_or(1, Vec::len);
        (0..k).map(|i| format!("a{i}")).collect()
    }

    pub fn build(&self) -> AttributedGraph {
        let ids = (0..self.n).map(|i| format!("{i:03}")).collect();
        let g = AttributedGraph::from_parts(
            ids,
            self.attribute_names(),
            self.labels.clone(),
            self.edges.iter().copied(),
        )
        .expect("raw graph is simple");
        for i in 0..self.n {
            assert_eq!(g.index_of(&format!("{i:03}")), Some(i));
        }
        g
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Joint label of each node over the first `k` attributes.
    pub fn joint(&self, k: usize) -> Vec<Vec<String>> {
        self.labels.iter().map(|r| r[..k].to_vec()).collect()
    }
}

/// Erdős-Rényi style graph with uniformly drawn categories per attribute.
pub fn random_raw(rng: &mut ChaCha8Rng, n: usize, p: f64, categories: usize, attributes: usize) -> RawGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let labels = (0..n)
        .map(|_| {
            (0..attributes)
                .map(|_| format!("c{}", rng.gen_range(0..categories)))
                .collect()
        })
        .collect();
    RawGraph { n, edges, labels }
}

/// Random connected graph: a random spanning tree plus extra edges with probability `p`.
pub fn random_connected_raw(rng: &mut ChaCha8Rng, n: usize, p: f64) -> RawGraph {
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.insert((parent, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    RawGraph {
        n,
        edges: edges.into_iter().collect(),
        labels: vec![vec!["same".to_string()]; n],
    }
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
pub fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<Option<u32>>> {
    let n = adj.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Share of `v`'s neighbors carrying `v`'s label, with 0 replaced by 1.
pub fn oracle_fraction<L: PartialEq>(adj: &[Vec<bool>], labels: &[L], v: usize) -> Option<f64> {
    let neighbors: Vec<usize> = (0..adj.len()).filter(|&w| adj[v][w]).collect();
    if neighbors.is_empty() {
        return None;
    }
    let same = neighbors.iter().filter(|&&w| labels[w] == labels[v]).count();
    let share = same as f64 / neighbors.len() as f64;
    Some(if share == 0.0 { 1.0 } else { share })
}

/// Conformity of every node, written straight from the definition.
///
/// Distances come from Floyd-Warshall rather than breadth-first search, and
/// each distance shell is collected by scanning all nodes.
pub fn oracle_psi<L: PartialEq>(adj: &[Vec<bool>], labels: &[L], alpha: f64) -> Vec<Option<f64>> {
    let n = adj.len();
    let dist = floyd_warshall(adj);
    (0..n)
        .map(|u| {
            let max_d = (0..n).filter_map(|v| dist[u][v]).max().unwrap_or(0);
            if max_d == 0 {
                return None;
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for d in 1..=max_d {
                let shell: Vec<usize> = (0..n).filter(|&v| dist[u][v] == Some(d)).collect();
                if shell.is_empty() {
                    continue;
                }
                let total: f64 = shell
                    .iter()
                    .map(|&v| {
                        let i = if labels[u] == labels[v] { 1.0 } else { -1.0 };
                        i * oracle_fraction(adj, labels, v).expect("reachable node has a neighbor")
                    })
                    .sum();
                let w = (d as f64).powf(-alpha);
                num += total / shell.len() as f64 * w;
                den += w;
            }
            Some(num / den)
        })
        .collect()
}

/// Assortativity from an explicit category mixing matrix.
pub fn oracle_assortativity<L: PartialEq + Clone>(edges: &[(usize, usize)], labels: &[L]) -> Option<f64> {
    let mut cats: Vec<L> = Vec::new();
    for l in labels {
        if !cats.contains(l) {
            cats.push(l.clone());
        }
    }
    let k = cats.len();
    let pos = |l: &L| cats.iter().position(|c| c == l).unwrap();
    let mut e = vec![vec![0.0; k]; k];
    for &(a, b) in edges {
        let (i, j) = (pos(&labels[a]), pos(&labels[b]));
        e[i][j] += 1.0;
        e[j][i] += 1.0;
    }
    let total: f64 = e.iter().flatten().sum();
    if total == 0.0 {
        return None;
    }
    for row in &mut e {
        for x in row.iter_mut() {
            *x /= total;
        }
    }
    let trace: f64 = (0..k).map(|i| e[i][i]).sum();
    let a: Vec<f64> = e.iter().map(|row| row.iter().sum()).collect();
    let b: Vec<f64> = (0..k).map(|j| (0..k).map(|i| e[i][j]).sum()).collect();
    let ab: f64 = (0..k).map(|i| a[i] * b[i]).sum();
    if (1.0 - ab).abs() < 1e-15 {
        return None;
    }
    Some((trace - ab) / (1.0 - ab))
}

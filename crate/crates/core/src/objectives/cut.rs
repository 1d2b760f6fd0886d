use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Element, Objective};

/// Undirected graph with non-negative edge weights, no self-loops and at
/// most one edge per unordered pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v, w) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { element: x, n });
                }
            }
            if u == v {
                return Err(Error::Spec(format!("self-loop on vertex {u}")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::Spec(format!("edge ({u}, {v}) has weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Spec(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Number of incident edges per vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Edge-list text: a header `n <int>` then one `u v weight` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v, w) in &self.edges {
            writeln!(out, "{u} {v} {w}").unwrap();
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (row, header) = lines.next().ok_or(Error::Ingest {
            row: 1,
            message: "missing `n <int>` header".into(),
        })?;
        let n = header
            .strip_prefix("n ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Ingest {
                row,
                message: format!("expected `n <int>`, found {header:?}"),
            })?;
        let mut edges = Vec::new();
        for (row, line) in lines {
            let bad = || Error::Ingest {
                row,
                message: format!("expected `u v weight`, found {line:?}"),
            };
            let mut it = line.split_whitespace();
            let u = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let v = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let w = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            edges.push((u, v, w));
        }
        Self::new(n, edges)
    }
}

/// `f(S) = Σ_{u∈S} Σ_{v∉S} w(u, v)`.
#[derive(Debug, Clone)]
pub struct WeightedCut {
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedCut {
    pub fn new(graph: &WeightedGraph) -> Self {
        let mut adjacency = vec![Vec::new(); graph.n()];
        for &(u, v, w) in graph.edges() {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Self { adjacency }
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|(_, w)| w).sum()
    }
}

impl Objective for WeightedCut {
    fn ground_size(&self) -> usize {
        self.adjacency.len()
    }

    fn value(&self, set: &[Element]) -> f64 {
        if set.len() <= 32 {
            let mut total = 0.0;
            for &u in set {
                for &(v, w) in &self.adjacency[u] {
                    if !set.contains(&v) {
                        total += w;
                    }
                }
            }
            return total;
        }
        let mut inside = vec![false; self.adjacency.len()];
        for &u in set {
            inside[u] = true;
        }
        let mut total = 0.0;
        for &u in set {
            for &(v, w) in &self.adjacency[u] {
                if !inside[v] {
                    total += w;
                }
            }
        }
        total
    }

    fn kind(&self) -> &'static str {
        "cut"
    }
}

pub fn weighted_cut(set: &[Element], graph: &WeightedGraph) -> f64 {
    WeightedCut::new(graph).value(set)
}

//! Undirected graphs and the line graph of `K_n`.
//!
//! The line graph's vertices are the edge ids of `K_n` (see [`crate::kn`]);
//! two of them are adjacent iff the underlying edges share an endpoint.
//! The result is `2(n-2)`-regular on `n(n-1)/2` vertices — the triangular
//! Johnson graph J(n,2). Its edges are kept in canonical order: sorted
//! endpoint pairs, lexicographically.

use crate::error::Result;
use crate::kn::CompleteGraph;

/// A simple undirected graph with a fixed edge order.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    vcount: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Build from an edge list; edges are deduplicated and stored sorted.
    pub fn new(vcount: usize, mut edge_list: Vec<(usize, usize)>) -> Self {
        for e in edge_list.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            assert!(e.0 < e.1 && e.1 < vcount, "bad edge {e:?}");
        }
        edge_list.sort_unstable();
        edge_list.dedup();
        let mut adj = vec![Vec::new(); vcount];
        for &(a, b) in &edge_list {
            adj[a].push(b);
            adj[b].push(a);
        }
        SimpleGraph {
            vcount,
            adj,
            edges: edge_list,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vcount
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vcount == 0 {
            return true;
        }
        let mut seen = vec![false; self.vcount];
        let mut stack = vec![0];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == self.vcount
    }

    /// Vertices outside `set` adjacent to at least one vertex in it.
    pub fn neighborhood_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.vcount];
        for &v in set {
            in_set[v] = true;
        }
        let mut out = vec![false; self.vcount];
        for &v in set {
            for &w in &self.adj[v] {
                if !in_set[w] {
                    out[w] = true;
                }
            }
        }
        (0..self.vcount).filter(|&v| out[v]).collect()
    }
}

/// The line graph of `K_n`, with its base graph remembered.
#[derive(Clone, Debug)]
pub struct LineGraph {
    base_n: usize,
    graph: SimpleGraph,
}

impl LineGraph {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Display name, e.g. `J(5,2)`.
    pub fn id(&self) -> String {
        format!("J({},2)", self.base_n)
    }
}

/// Build the line graph of `K_n`. Line-graph vertices are `K_n` edge ids.
pub fn build_line_graph(n: usize) -> Result<LineGraph> {
    let kn = CompleteGraph::new(n)?;
    let m = kn.edge_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::with_capacity(n - 1); n];
    for (e, (u, v)) in kn.edges().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    // Two K_n edges share at most one endpoint, so emitting the clique of
    // every vertex's incident edges produces each line-graph edge once.
    let mut edges = Vec::new();
    for ids in &incident {
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                edges.push((ids[i].min(ids[j]), ids[i].max(ids[j])));
            }
        }
    }
    Ok(LineGraph {
        base_n: n,
        graph: SimpleGraph::new(m, edges),
    })
}

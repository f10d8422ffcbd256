use std::collections::HashSet;

use crate::{Error, Result};

fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        return Err(Error::Input(format!("vertex {} outside 1..={n}", v + 1)));
    }
    Ok(())
}

/// Directed graph; self-loops allowed, duplicate edges not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            check_vertex(n, u)?;
            check_vertex(n, v)?;
            if !seen.insert((u, v)) {
                return Err(Error::Input(format!(
                    "duplicate edge {} -> {}",
                    u + 1,
                    v + 1
                )));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Simple undirected graph whose edges carry an orientation: `(u, v)` is
/// oriented `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            check_vertex(n, u)?;
            check_vertex(n, v)?;
            if u == v {
                return Err(Error::Input(format!("self-loop at {}", u + 1)));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Input(format!(
                    "duplicate edge {{{}, {}}}",
                    u + 1,
                    v + 1
                )));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Same graph with edge `e` reversed wherever bit `e` of `flips` is set.
    pub fn reoriented(&self, flips: u64) -> OrientedGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| if flips >> e & 1 == 1 { (v, u) } else { (u, v) })
            .collect();
        OrientedGraph { n: self.n, edges }
    }
}

/// 3-uniform hypergraph; each edge is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl Hypergraph3 {
    pub fn new(n: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut sorted = Vec::with_capacity(edges.len());
        for mut e in edges {
            for &v in &e {
                check_vertex(n, v)?;
            }
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::Input(format!(
                    "hyperedge {{{}, {}, {}}} repeats a vertex",
                    e[0] + 1,
                    e[1] + 1,
                    e[2] + 1
                )));
            }
            if !seen.insert(e) {
                return Err(Error::Input(format!(
                    "duplicate hyperedge {{{}, {}, {}}}",
                    e[0] + 1,
                    e[1] + 1,
                    e[2] + 1
                )));
            }
            sorted.push(e);
        }
        Ok(Self { n, edges: sorted })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }
}

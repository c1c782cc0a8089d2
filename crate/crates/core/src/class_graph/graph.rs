use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ClassData;

/// DOT attributes attached to cut vertices.
pub const CUT_VERTEX_STYLE: &str = "penwidth=3, style=bold";

/// A simple undirected graph on sorted `u64` labels. For `Δ(G)` the labels
/// are primes; the realizer also uses it for abstract target graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    vertices: Vec<u64>,
    adjacency: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u64>,
    edges: Vec<[u64; 2]>,
}

impl Serialize for PrimeGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PrimeGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let edges: Vec<(u64, u64)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        PrimeGraph::new(raw.vertices, &edges).map_err(serde::de::Error::custom)
    }
}

impl PrimeGraph {
    /// Builds a graph; rejects loops and edges with unknown endpoints.
    /// Duplicate vertices and edges are merged.
    pub fn new(mut vertices: Vec<u64>, edges: &[(u64, u64)]) -> Result<PrimeGraph, String> {
        vertices.sort_unstable();
        vertices.dedup();
        let n = vertices.len();
        let mut g = PrimeGraph {
            vertices,
            adjacency: vec![vec![false; n]; n],
        };
        for &(u, v) in edges {
            if u == v {
                return Err(format!("self-loop at {u}"));
            }
            let (Some(i), Some(j)) = (g.index_of(u), g.index_of(v)) else {
                return Err(format!(
                    "edge {u}-{v} has an endpoint outside the vertex set"
                ));
            };
            g.adjacency[i][j] = true;
            g.adjacency[j][i] = true;
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: u64) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.index_of(v).is_some()
    }

    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacency[i][j],
            _ => false,
        }
    }

    pub fn neighbors(&self, v: u64) -> Vec<u64> {
        let Some(i) = self.index_of(v) else {
            return Vec::new();
        };
        self.vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| self.adjacency[i][j])
            .map(|(_, &w)| w)
            .collect()
    }

    pub fn degree(&self, v: u64) -> usize {
        self.neighbors(v).len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    out.push((self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Subgraph induced on `keep` (labels outside the graph are ignored).
    pub fn induced(&self, keep: &[u64]) -> PrimeGraph {
        let vertices: Vec<u64> = keep.iter().copied().filter(|&v| self.contains(v)).collect();
        let edges: Vec<(u64, u64)> = self
            .edges()
            .into_iter()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .collect();
        PrimeGraph::new(vertices, &edges).expect("induced subgraph is well formed")
    }

    pub fn without(&self, v: u64) -> PrimeGraph {
        let keep: Vec<u64> = self.vertices.iter().copied().filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    pub fn complement(&self) -> PrimeGraph {
        let n = self.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (i, row) in adjacency.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = i != j && !self.adjacency[i][j];
            }
        }
        PrimeGraph {
            vertices: self.vertices.clone(),
            adjacency,
        }
    }

    /// Every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: &[u64]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let i = comp[head];
                head += 1;
                for j in 0..n {
                    if self.adjacency[i][j] && !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|i| self.vertices[i]).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn distances_from(&self, s: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap();
            for j in 0..self.len() {
                if self.adjacency[i][j] && dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// Graph distance, `None` across components.
    pub fn distance(&self, u: u64, v: u64) -> Option<u32> {
        let (i, j) = (self.index_of(u)?, self.index_of(v)?);
        self.distances_from(i)[j]
    }

    /// DOT rendering; vertices in `highlight` get [`CUT_VERTEX_STYLE`].
    /// Only isolated or highlighted vertices get their own statement.
    pub fn to_dot(&self, highlight: &[u64]) -> String {
        let mut out = String::from("graph {\n");
        for &v in &self.vertices {
            if highlight.contains(&v) {
                let _ = writeln!(out, "  {v} [{CUT_VERTEX_STYLE}];");
            } else if self.degree(v) == 0 {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Applies a vertex relabelling; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(u64) -> u64) -> PrimeGraph {
        let vertices = self.vertices.iter().map(|&v| map(v)).collect();
        let edges: Vec<(u64, u64)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (map(u), map(v)))
            .collect();
        PrimeGraph::new(vertices, &edges).expect("relabelling keeps the graph simple")
    }
}

/// `Δ(G)`: vertices are the primes dividing some class size; `p ~ q` iff
/// `pq` divides some class size.
pub fn prime_graph(cd: &ClassData) -> PrimeGraph {
    let mut vertices: Vec<u64> = cd.pi_of_class.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges = Vec::new();
    for pi in &cd.pi_of_class {
        for (i, &p) in pi.iter().enumerate() {
            for &q in &pi[i + 1..] {
                edges.push((p, q));
            }
        }
    }
    PrimeGraph::new(vertices, &edges).expect("class primes form a simple graph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Diameter {
    Infinite,
    #[serde(untagged)]
    Finite(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphAnalysis {
    pub components: Vec<Vec<u64>>,
    pub articulation_points: Vec<u64>,
    pub diameter: Diameter,
    pub complete_vertices: Vec<u64>,
    /// Parallel to `components`.
    pub clique_flags: Vec<bool>,
}

/// Articulation points by depth-first low-link values.
pub fn articulation_points_lowlink(g: &PrimeGraph) -> Vec<u64> {
    let n = g.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour to scan)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < n {
                let w = *next;
                *next += 1;
                if !g.adjacency[v][w] || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        is_cut[root] = root_children > 1;
    }
    (0..n)
        .filter(|&i| is_cut[i])
        .map(|i| g.vertices[i])
        .collect()
}

/// Articulation points by deleting each vertex and recounting components.
pub fn articulation_points_bruteforce(g: &PrimeGraph) -> Vec<u64> {
    let base = g.components().len();
    g.vertices
        .iter()
        .copied()
        .filter(|&v| g.without(v).components().len() > base)
        .collect()
}

pub fn graph_analysis(g: &PrimeGraph) -> GraphAnalysis {
    let components = g.components();
    let articulation_points = articulation_points_lowlink(g);
    assert_eq!(
        articulation_points,
        articulation_points_bruteforce(g),
        "low-link and removal recount disagree"
    );
    let diameter = if components.len() > 1 {
        Diameter::Infinite
    } else {
        let d = (0..g.len())
            .flat_map(|i| g.distances_from(i).into_iter().flatten())
            .max()
            .unwrap_or(0);
        Diameter::Finite(d)
    };
    let complete_vertices = g
        .vertices
        .iter()
        .copied()
        .filter(|&v| g.degree(v) + 1 == g.len())
        .collect();
    let clique_flags = components.iter().map(|c| g.is_clique(c)).collect();
    GraphAnalysis {
        components,
        articulation_points,
        diameter,
        complete_vertices,
        clique_flags,
    }
}

/// Partition into two cliques from the canonical 2-colouring of the
/// complement: each complement component is coloured from its least vertex,
/// which goes in the first part. `None` when the complement has an odd cycle.
pub fn two_clique_cover(g: &PrimeGraph) -> Option<(Vec<u64>, Vec<u64>)> {
    let c = g.complement();
    let n = c.len();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let ci = colour[i].unwrap();
            for j in 0..n {
                if !c.adjacency[i][j] {
                    continue;
                }
                match colour[j] {
                    None => {
                        colour[j] = Some(!ci);
                        queue.push_back(j);
                    }
                    Some(cj) if cj == ci => return None,
                    _ => {}
                }
            }
        }
    }
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (i, &v) in g.vertices.iter().enumerate() {
        if colour[i] == Some(false) {
            first.push(v);
        } else {
            second.push(v);
        }
    }
    Some((first, second))
}

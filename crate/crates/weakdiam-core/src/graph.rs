//! Unweighted graphs: intersection graphs, powers, BFS metrics, greedy
//! independent sets and monochromatic-diameter measurement.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::spacefill::ObjectSystem;

/// Hop-distance sentinel for unreachable vertices.
pub const UNREACHABLE: usize = usize::MAX;

/// Simple undirected graph with sorted adjacency lists and no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g.normalize();
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn normalize(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }
}

/// Vertices are objects; `i ~ j` iff the objects share a point.
pub fn intersection_graph(system: &ObjectSystem) -> Graph {
    let m = system.len();
    let mut g = Graph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if system.object(i).intersects(system.object(j)) {
                g.add_edge(i, j);
            }
        }
    }
    g.normalize();
    g
}

/// `u ~ v` in the result iff `1 <= d_G(u,v) <= r`.
pub fn graph_power(g: &Graph, r: usize) -> Graph {
    assert!(r >= 1, "graph power exponent must be positive");
    let n = g.vertex_count();
    let mut out = Graph::new(n);
    for u in 0..n {
        let dist = bfs_distances(g, &[u]);
        for (v, &d) in dist.iter().enumerate() {
            if v > u && d >= 1 && d <= r {
                out.add_edge(u, v);
            }
        }
    }
    out.normalize();
    out
}

/// Multi-source BFS; returns per-vertex hop distance to the nearest source
/// ([`UNREACHABLE`] where there is none).
pub fn bfs_distances(g: &Graph, sources: &[usize]) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Multi-source BFS restricted to the subgraph induced by `within` (sorted).
/// Sources outside `within` are ignored.
pub fn bfs_distances_within(g: &Graph, within: &[usize], sources: &[usize]) -> Vec<usize> {
    let mut allowed = vec![false; g.vertex_count()];
    for &v in within {
        allowed[v] = true;
    }
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allowed[s] && dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if allowed[v] && dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Lowest-index-first greedy maximal independent set in `G[within]`.
pub fn greedy_max_independent_set(g: &Graph, within: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut blocked = vec![false; g.vertex_count()];
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut member = vec![false; g.vertex_count()];
    for &v in &sorted {
        member[v] = true;
    }
    for &v in &sorted {
        if blocked[v] {
            continue;
        }
        chosen.push(v);
        for &u in g.neighbors(v) {
            if member[u] {
                blocked[u] = true;
            }
        }
    }
    chosen
}

/// A total coloring with colors `1..=palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, palette: u32) -> Self {
        assert!(
            colors.iter().all(|&c| c >= 1 && c <= palette),
            "color out of declared palette"
        );
        Coloring { colors, palette }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Connected components of the subgraph induced by `within` (sorted slices).
pub fn components_within(g: &Graph, within: &[usize]) -> Vec<Vec<usize>> {
    let mut member = vec![false; g.vertex_count()];
    for &v in within {
        member[v] = true;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for &start in within {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if member[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Max G-diameter over connected monochromatic subgraphs of `G[on]`,
/// together with a worst witness component.  Distances are measured in the
/// full graph `g`, not in the induced subgraph.
pub fn coloring_diameter_witness(g: &Graph, coloring: &Coloring, on: &[usize]) -> (usize, Vec<usize>) {
    let mut best = 0usize;
    let mut witness = Vec::new();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); coloring.palette() as usize + 1];
    for &v in on {
        classes[coloring.color(v) as usize].push(v);
    }
    for class in &classes {
        if class.is_empty() {
            continue;
        }
        for comp in components_within(g, class) {
            if comp.len() < 2 {
                continue;
            }
            let mut diam = 0usize;
            for &u in &comp {
                let dist = bfs_distances(g, &[u]);
                for &v in &comp {
                    debug_assert!(dist[v] != UNREACHABLE);
                    diam = diam.max(dist[v]);
                }
            }
            if diam > best {
                best = diam;
                witness = comp.clone();
            }
        }
    }
    (best, witness)
}

/// See [`coloring_diameter_witness`]; 0 when every component is a singleton.
pub fn coloring_diameter(g: &Graph, coloring: &Coloring, on: &[usize]) -> usize {
    coloring_diameter_witness(g, coloring, on).0
}

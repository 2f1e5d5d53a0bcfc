//! Recursive 2-coloring of graphs with k-dominated tree decompositions,
//! with monochromatic components of bounded ambient-graph diameter.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::decomp::TreeDecomposition;
use crate::graph::{
    bfs_distances, bfs_distances_within, coloring_diameter_witness, Coloring, Graph, UNREACHABLE,
};

/// The diameter bound w(k): w(0)=0 and w(k)=k(2(5k+1)(w(k-1)+2)+13).
/// Grows super-exponentially, hence the big-integer result.
pub fn w_bound(k: u32) -> BigUint {
    let mut w = BigUint::from(0u32);
    for j in 1..=k {
        let j_big = BigUint::from(j);
        let five = BigUint::from(5u32 * j + 1);
        w = &j_big * (BigUint::from(2u32) * &five * (&w + 2u32) + 13u32);
    }
    w
}

/// Diameter bounds for (k,a)-narrow sets: components of the induced
/// subgraph have ambient diameter at most `2ak+k-1`, and 1-colored
/// interfaces around them at most `k(2a+2l+3)`.
pub fn narrow_diameter_bounds(k: u64, a: u64, l: u64) -> (u64, u64) {
    assert!(k >= 1, "narrowness parameter must be positive");
    (2 * a * k + k - 1, k * (2 * a + 2 * l + 3))
}

/// One level of the recursion: a vertex subset `h` of the ambient graph,
/// a connected node subset of the tree rooted at `root`, and a partial
/// coloring `psi` on `z`, the vertices of `h` within `h`-distance two of
/// the root bag.
#[derive(Clone, Debug)]
pub struct RecursionFrame {
    pub h: Vec<usize>,
    pub nodes: Vec<usize>,
    pub root: usize,
    pub z: Vec<usize>,
    pub psi: BTreeMap<usize, u32>,
    pub k: u32,
}

/// 2-colors `g` given a tree decomposition whose bags each have a
/// dominating set of size at most `k`.  Colors are {1, 2}; the measured
/// diameter of the result is at most [`w_bound`]`(k)` whenever the
/// domination bound genuinely holds (the verifier confirms).
pub fn two_color(g: &Graph, td: &TreeDecomposition, k: u32) -> Coloring {
    let frame = RecursionFrame {
        h: (0..g.vertex_count()).collect(),
        nodes: (0..td.nodes.len()).collect(),
        root: td.root,
        z: Vec::new(),
        psi: BTreeMap::new(),
        k,
    };
    let map = extend_two_coloring(&frame, g, td);
    let mut colors = alloc::vec![1u32; g.vertex_count()];
    for (v, c) in map {
        colors[v] = c;
    }
    Coloring::new(colors, 2)
}

/// Extends the frame's partial coloring to all of `frame.h` with colors
/// {1, 2}, agreeing with `psi` on `z`.
pub fn extend_two_coloring(
    frame: &RecursionFrame,
    g: &Graph,
    td: &TreeDecomposition,
) -> BTreeMap<usize, u32> {
    extend_inner(frame, g, td, None)
}

type Measure = (u32, usize, usize);

fn extend_inner(
    frame: &RecursionFrame,
    g: &Graph,
    td: &TreeDecomposition,
    above: Option<Measure>,
) -> BTreeMap<usize, u32> {
    // termination measure: (k, |h|, |nodes|) lexicographic; the subtree
    // split branch keeps h but drops the root node
    let measure: Measure = (frame.k, frame.h.len(), frame.nodes.len());
    if let Some(m) = above {
        assert!(measure < m, "recursion measure failed to decrease: {measure:?} vs {m:?}");
    }

    if frame.h.is_empty() {
        return BTreeMap::new();
    }

    let in_h = membership(g.vertex_count(), &frame.h);
    let bag_in_h = |x: usize| -> Vec<usize> {
        td.nodes[x].bag.iter().copied().filter(|&v| in_h[v]).collect()
    };

    let root_bag = bag_in_h(frame.root);
    if root_bag.is_empty() {
        // nothing to anchor at the root: split into the subtrees hanging
        // off it and recurse with fresh (empty) precolorings
        debug_assert!(frame.psi.is_empty(), "precolored vertices with an empty root bag");
        let mut exclude = BTreeSet::new();
        exclude.insert(frame.root);
        let mut out = BTreeMap::new();
        for comp in tree_components(td, &frame.nodes, &exclude) {
            let mut hj: Vec<usize> = Vec::new();
            for &x in &comp {
                hj.extend(bag_in_h(x));
            }
            hj.sort_unstable();
            hj.dedup();
            let child = RecursionFrame {
                h: hj,
                nodes: comp.clone(),
                root: comp[0],
                z: Vec::new(),
                psi: BTreeMap::new(),
                k: frame.k,
            };
            for (v, c) in extend_inner(&child, g, td, Some(measure)) {
                let prev = out.insert(v, c);
                debug_assert!(prev.is_none(), "subtree splits overlap on vertex {v}");
            }
        }
        return out;
    }

    let k = frame.k.max(1);

    // complete Z: everything within h-distance two of the root bag gets
    // color 1 unless already precolored
    let dist_h = bfs_distances_within(g, &frame.h, &root_bag);
    let mut phi: BTreeMap<usize, u32> = BTreeMap::new();
    for &v in &frame.h {
        if dist_h[v] <= 2 {
            phi.insert(v, frame.psi.get(&v).copied().unwrap_or(1));
        }
    }
    for (&v, &c) in &frame.psi {
        debug_assert!(
            phi.contains_key(&v),
            "precolored vertex {v} outside the distance-2 neighborhood of the root bag"
        );
        phi.insert(v, c);
    }
    let z: Vec<usize> = phi.keys().copied().collect();

    // S: nodes whose bag meets Z; a connected subtree through the root
    let zset = membership(g.vertex_count(), &z);
    let s_nodes: Vec<usize> = frame
        .nodes
        .iter()
        .copied()
        .filter(|&x| td.nodes[x].bag.iter().any(|&v| zset[v]))
        .collect();
    debug_assert!(s_nodes.contains(&frame.root));
    debug_assert!(subtree_connected(td, &frame.nodes, &s_nodes, frame.root));

    let mut v_prime: Vec<usize> = Vec::new();
    for &x in &s_nodes {
        v_prime.extend(bag_in_h(x));
    }
    v_prime.sort_unstable();
    v_prime.dedup();

    // V1: the part of V' near Z in the ambient graph; new vertices get
    // color 1 (any extension of psi works, this one is deterministic)
    let dist_g_z = bfs_distances(g, &z);
    for &v in &v_prime {
        if dist_g_z[v] <= 2 {
            phi.entry(v).or_insert(1);
        }
    }
    let v2: Vec<usize> = v_prime.iter().copied().filter(|&v| dist_g_z[v] > 2).collect();

    if !v2.is_empty() {
        // ambient graph for the inner recursion: induced on the union of
        // the S bags, plus an edge for every V2 pair sharing a bag at
        // ambient distance <= 5k+1
        let limit = (5 * k + 1) as usize;
        let mut big_bag: Vec<usize> = Vec::new();
        for &x in &s_nodes {
            big_bag.extend(td.nodes[x].bag.iter().copied());
        }
        big_bag.sort_unstable();
        big_bag.dedup();
        let in_big = membership(g.vertex_count(), &big_bag);
        let mut g2 = Graph::new(g.vertex_count());
        for &u in &big_bag {
            for &v in g.neighbors(u) {
                if u < v && in_big[v] {
                    g2.add_edge(u, v);
                }
            }
        }
        let in_v2 = membership(g.vertex_count(), &v2);
        let mut partners: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &x in &s_nodes {
            let w: Vec<usize> =
                td.nodes[x].bag.iter().copied().filter(|&v| in_v2[v]).collect();
            for (i, &u) in w.iter().enumerate() {
                for &v in &w[i + 1..] {
                    partners.entry(u).or_default().insert(v);
                }
            }
        }
        for (&u, vs) in &partners {
            let dist = bfs_bounded(g, u, limit);
            for &v in vs {
                if dist[v] <= limit {
                    g2.add_edge(u, v);
                }
            }
        }
        g2 = Graph::from_edges(g.vertex_count(), &g2.edges());

        let inner = RecursionFrame {
            h: v2.clone(),
            nodes: s_nodes.clone(),
            root: frame.root,
            z: Vec::new(),
            psi: BTreeMap::new(),
            k: frame.k.saturating_sub(1),
        };
        for (v, c) in extend_inner(&inner, &g2, td, Some(measure)) {
            let prev = phi.insert(v, c);
            debug_assert!(prev.is_none());
        }
    }

    // V3 (h-distance one from V') gets color 1; V4 (distance two) is
    // precolored 2 inside the child frames below
    let dist_h_vp = bfs_distances_within(g, &frame.h, &v_prime);
    for &v in &frame.h {
        if dist_h_vp[v] == 1 {
            let prev = phi.insert(v, 1);
            debug_assert!(prev.is_none());
        }
    }

    // the rest of h lives in the subtrees hanging off S
    let s_set: BTreeSet<usize> = s_nodes.iter().copied().collect();
    for comp in tree_components(td, &frame.nodes, &s_set) {
        // the unique attachment point of this component to S
        let mut attach: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&x| {
                tree_neighbors(td, &frame.nodes, x)
                    .into_iter()
                    .any(|y| s_set.contains(&y))
            })
            .collect();
        attach.dedup();
        debug_assert_eq!(attach.len(), 1, "component attaches to S more than once");
        let r_i = attach[0];

        let mut hi: Vec<usize> = Vec::new();
        for &x in &comp {
            hi.extend(bag_in_h(x));
        }
        hi.sort_unstable();
        hi.dedup();
        assert!(hi.len() < frame.h.len(), "child subgraph failed to shrink");

        let mut psi_i: BTreeMap<usize, u32> = BTreeMap::new();
        let mut zi: Vec<usize> = Vec::new();
        for &v in &hi {
            if let Some(&c) = phi.get(&v) {
                psi_i.insert(v, c);
                zi.push(v);
            } else if dist_h_vp[v] == 2 {
                psi_i.insert(v, 2);
                zi.push(v);
            }
        }
        let child = RecursionFrame {
            h: hi,
            nodes: comp,
            root: r_i,
            z: zi,
            psi: psi_i,
            k: frame.k,
        };
        for (v, c) in extend_inner(&child, g, td, Some(measure)) {
            if let Some(&prev) = phi.get(&v) {
                debug_assert_eq!(prev, c, "child recoloring disagrees on vertex {v}");
            } else {
                phi.insert(v, c);
            }
        }
    }

    // coverage: every h vertex is in V' + V3, or hangs off S in a child
    for &v in &frame.h {
        debug_assert!(phi.contains_key(&v), "vertex {v} left uncolored");
        phi.entry(v).or_insert(1);
    }
    phi
}

fn membership(n: usize, items: &[usize]) -> Vec<bool> {
    let mut m = alloc::vec![false; n];
    for &i in items {
        m[i] = true;
    }
    m
}

/// Single-source BFS cut off beyond `limit` hops.
fn bfs_bounded(g: &Graph, source: usize, limit: usize) -> Vec<usize> {
    let mut dist = alloc::vec![UNREACHABLE; g.vertex_count()];
    dist[source] = 0;
    let mut frontier = alloc::vec![source];
    let mut d = 0;
    while !frontier.is_empty() && d < limit {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if dist[v] == UNREACHABLE {
                    dist[v] = d + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
        d += 1;
    }
    dist
}

fn tree_neighbors(td: &TreeDecomposition, nodes: &[usize], x: usize) -> Vec<usize> {
    let allowed = membership(td.nodes.len(), nodes);
    let mut out = Vec::new();
    if let Some(p) = td.nodes[x].parent {
        if allowed[p] {
            out.push(p);
        }
    }
    for &ch in &td.nodes[x].children {
        if allowed[ch] {
            out.push(ch);
        }
    }
    out
}

/// Connected components of the tree restricted to `nodes` minus
/// `exclude`, each sorted ascending, ordered by smallest member.
fn tree_components(
    td: &TreeDecomposition,
    nodes: &[usize],
    exclude: &BTreeSet<usize>,
) -> Vec<Vec<usize>> {
    let mut remaining: BTreeSet<usize> =
        nodes.iter().copied().filter(|x| !exclude.contains(x)).collect();
    let mut out = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut comp = Vec::new();
        let mut stack = alloc::vec![start];
        remaining.remove(&start);
        while let Some(x) = stack.pop() {
            comp.push(x);
            for y in tree_neighbors(td, nodes, x) {
                if remaining.remove(&y) {
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn subtree_connected(
    td: &TreeDecomposition,
    nodes: &[usize],
    subset: &[usize],
    root: usize,
) -> bool {
    let in_subset: BTreeSet<usize> = subset.iter().copied().collect();
    if !in_subset.contains(&root) {
        return false;
    }
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![root];
    seen.insert(root);
    while let Some(x) = stack.pop() {
        for y in tree_neighbors(td, nodes, x) {
            if in_subset.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == subset.len()
}

#[derive(Clone, Debug)]
pub struct WeakDiameterReport {
    pub measured: usize,
    pub bound: BigUint,
    /// Worst monochromatic component when the bound fails (or just the
    /// worst one overall when it holds).
    pub worst_component: Vec<usize>,
}

impl WeakDiameterReport {
    pub fn is_valid(&self) -> bool {
        BigUint::from(self.measured) <= self.bound
    }
}

/// Measures the largest ambient-graph diameter over monochromatic
/// connected subgraphs and compares it to `bound`.
pub fn verify_weak_diameter(g: &Graph, phi: &Coloring, bound: &BigUint) -> WeakDiameterReport {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let (measured, worst_component) = coloring_diameter_witness(g, phi, &all);
    WeakDiameterReport { measured, bound: bound.clone(), worst_component }
}

//! Tree decompositions with dominated bags, built from caught web
//! elements of a single family.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::graph::{greedy_max_independent_set, Graph};
use crate::metric::{PointSet, Space};
use crate::web::{catch_in_family, ElemId, Web};

#[derive(Clone, Debug)]
pub struct DecompNode {
    /// Trimmed point set of the node; the whole space at the root.
    pub set: PointSet,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Vertices of the decomposed graph whose bag this is, ascending.
    pub bag: Vec<usize>,
    /// Backing web element, absent for the synthetic root.
    pub element: Option<ElemId>,
}

#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    pub nodes: Vec<DecompNode>,
    pub root: usize,
    /// Per vertex, the deepest node whose set contains the vertex's
    /// object; the topmost bag holding that vertex.
    pub home: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompError {
    /// No element of the chosen family catches this vertex's object.
    Uncaught { vertex: usize },
    EmptyObject { vertex: usize },
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::Uncaught { vertex } => {
                write!(f, "family does not catch the object of vertex {vertex}")
            }
            DecompError::EmptyObject { vertex } => {
                write!(f, "object of vertex {vertex} is empty")
            }
        }
    }
}

/// Builds the decomposition for one part of the object system: every
/// object is caught in `family` with ratio `c`, the distinct trimmed sets
/// (plus a root covering the whole space) form the tree by containment,
/// and each object lands in the bags of the subtree below its catch where
/// the node set still meets the object.
pub fn build_tree_decomposition(
    space: &Space,
    web: &Web,
    family: usize,
    objects: &[PointSet],
    c: f64,
) -> Result<TreeDecomposition, DecompError> {
    let mut caught: Vec<ElemId> = Vec::with_capacity(objects.len());
    for (v, s) in objects.iter().enumerate() {
        if s.is_empty() {
            return Err(DecompError::EmptyObject { vertex: v });
        }
        let id = catch_in_family(web, space, family, s, c)
            .ok_or(DecompError::Uncaught { vertex: v })?;
        caught.push(id);
    }

    // node sets: deduped trimmed sets of the caught elements, plus the
    // whole space as root (kept even when some trimmed set equals it, so
    // the root is always element-free and unique)
    let whole: PointSet = (0..space.len()).collect();
    let mut set_to_node: BTreeMap<PointSet, usize> = BTreeMap::new();
    let mut nodes: Vec<DecompNode> = Vec::new();
    nodes.push(DecompNode {
        set: whole.clone(),
        parent: None,
        children: Vec::new(),
        bag: Vec::new(),
        element: None,
    });
    set_to_node.insert(whole, 0);
    for &id in &caught {
        let t = web.element(id).trimmed.clone();
        set_to_node.entry(t.clone()).or_insert_with(|| {
            nodes.push(DecompNode {
                set: t,
                parent: None,
                children: Vec::new(),
                bag: Vec::new(),
                element: Some(id),
            });
            nodes.len() - 1
        });
    }

    // parent = minimal strict superset; unique because the sets are
    // laminar, so all strict supersets of a set form a chain
    for i in 1..nodes.len() {
        let mut best: Option<usize> = None;
        for j in 0..nodes.len() {
            if i == j || nodes[j].set.len() <= nodes[i].set.len() {
                continue;
            }
            if nodes[i].set.is_subset(&nodes[j].set) {
                match best {
                    Some(b) if nodes[b].set.len() <= nodes[j].set.len() => {}
                    _ => best = Some(j),
                }
            }
        }
        let p = best.expect("root contains every node set");
        nodes[i].parent = Some(p);
    }
    for i in 1..nodes.len() {
        let p = nodes[i].parent.unwrap();
        nodes[p].children.push(i);
    }
    for n in nodes.iter_mut() {
        n.children.sort_unstable();
    }

    // home of v: the deepest node set containing the object; the nodes
    // containing it form a root chain, so minimal size is well defined
    let mut home = Vec::with_capacity(objects.len());
    for (v, s) in objects.iter().enumerate() {
        let mut best = 0usize;
        for (i, n) in nodes.iter().enumerate() {
            if s.is_subset(&n.set) && n.set.len() < nodes[best].set.len() {
                best = i;
            }
        }
        debug_assert!(s.is_subset(&nodes[caught_node(&set_to_node, web, caught[v])].set));
        home.push(best);
        let _ = v;
    }

    // bags: descend from home[v] while the node set still meets the
    // object; child sets are contained in the parent's, so this region
    // is upward closed inside the subtree and therefore connected
    for (v, s) in objects.iter().enumerate() {
        let mut stack = alloc::vec![home[v]];
        while let Some(i) = stack.pop() {
            nodes[i].bag.push(v);
            for &ch in &nodes[i].children {
                if nodes[ch].set.intersects(s) {
                    stack.push(ch);
                }
            }
        }
    }
    for n in nodes.iter_mut() {
        n.bag.sort_unstable();
        n.bag.dedup();
    }

    Ok(TreeDecomposition { nodes, root: 0, home })
}

fn caught_node(map: &BTreeMap<PointSet, usize>, web: &Web, id: ElemId) -> usize {
    map[&web.element(id).trimmed]
}

/// Per-bag greedy maximal independent sets and the domination number k:
/// the largest independent set any bag needs to dominate itself.
pub fn bag_domination(g: &Graph, decomp: &TreeDecomposition) -> (Vec<Vec<usize>>, usize) {
    let mut dominators = Vec::with_capacity(decomp.nodes.len());
    let mut k = 0;
    for n in &decomp.nodes {
        let d = greedy_max_independent_set(g, &n.bag);
        k = k.max(d.len());
        dominators.push(d);
    }
    (dominators, k)
}

#[derive(Clone, Debug, Default)]
pub struct DecompReport {
    /// Vertex appearing in no bag.
    pub missing_vertex: Option<usize>,
    /// Edge contained in no bag.
    pub missing_edge: Option<(usize, usize)>,
    /// Vertex whose bag nodes do not form a connected subtree.
    pub disconnected_vertex: Option<usize>,
    /// Structural fault in the parent/children links.
    pub broken_tree: bool,
}

impl DecompReport {
    pub fn is_valid(&self) -> bool {
        self.missing_vertex.is_none()
            && self.missing_edge.is_none()
            && self.disconnected_vertex.is_none()
            && !self.broken_tree
    }
}

/// Checks the three tree-decomposition axioms and the tree structure
/// itself, reporting the first violation of each kind.
pub fn verify_tree_decomposition(g: &Graph, decomp: &TreeDecomposition) -> DecompReport {
    let mut report = DecompReport::default();
    let n = decomp.nodes.len();

    // tree structure: one root, consistent links, acyclic by rank
    let mut roots = 0;
    for (i, node) in decomp.nodes.iter().enumerate() {
        match node.parent {
            None => {
                roots += 1;
                if i != decomp.root {
                    report.broken_tree = true;
                }
            }
            Some(p) => {
                if p >= n || !decomp.nodes[p].children.contains(&i) {
                    report.broken_tree = true;
                }
            }
        }
        for &ch in &node.children {
            if ch >= n || decomp.nodes[ch].parent != Some(i) {
                report.broken_tree = true;
            }
        }
    }
    if roots != 1 {
        report.broken_tree = true;
    }
    let mut depth = alloc::vec![usize::MAX; n];
    let mut stack = alloc::vec![(decomp.root, 0usize)];
    while let Some((i, d)) = stack.pop() {
        if depth[i] != usize::MAX {
            report.broken_tree = true;
            break;
        }
        depth[i] = d;
        for &ch in &decomp.nodes[i].children {
            stack.push((ch, d + 1));
        }
    }
    if depth.iter().any(|&d| d == usize::MAX) {
        report.broken_tree = true;
    }
    if report.broken_tree {
        return report;
    }

    let mut appears = alloc::vec![false; g.vertex_count()];
    for node in &decomp.nodes {
        for &v in &node.bag {
            if v < appears.len() {
                appears[v] = true;
            }
        }
    }
    report.missing_vertex = appears.iter().position(|&a| !a);

    'edges: for (u, v) in g.edges() {
        for node in &decomp.nodes {
            if node.bag.binary_search(&u).is_ok() && node.bag.binary_search(&v).is_ok() {
                continue 'edges;
            }
        }
        report.missing_edge = Some((u, v));
        break;
    }

    // connectivity: the nodes holding v must form one subtree, i.e. all
    // of them except the shallowest have their parent holding v too
    'verts: for v in 0..g.vertex_count() {
        let holding: Vec<usize> = (0..n)
            .filter(|&i| decomp.nodes[i].bag.binary_search(&v).is_ok())
            .collect();
        if holding.is_empty() {
            continue;
        }
        let top = *holding.iter().min_by_key(|&&i| depth[i]).unwrap();
        for &i in &holding {
            if i == top {
                continue;
            }
            let p = decomp.nodes[i].parent.unwrap();
            if decomp.nodes[p].bag.binary_search(&v).is_err() {
                report.disconnected_vertex = Some(v);
                break 'verts;
            }
        }
    }

    report
}

/// Indented plain-text rendering of the tree, bag sizes included.
pub fn render_tree(decomp: &TreeDecomposition) -> String {
    let mut out = String::new();
    let mut stack = alloc::vec![(decomp.root, 0usize)];
    while let Some((i, indent)) = stack.pop() {
        let n = &decomp.nodes[i];
        for _ in 0..indent {
            out.push_str("  ");
        }
        let _ = writeln!(
            out,
            "node {i}: |set|={} |bag|={} bag={:?}",
            n.set.len(),
            n.bag.len(),
            n.bag
        );
        for &ch in n.children.iter().rev() {
            stack.push((ch, indent + 1));
        }
    }
    out
}

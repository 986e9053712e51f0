//! Edge-moving operations that increase `rho(A_f)` for restricted `f`.
//!
//! * [`kelmans`]: move every private neighbor of `v1` over to `v2`.
//! * [`star_collapse`]: flatten a pendant tree hanging at `u` into a star at
//!   `u`, one Kelmans step at a time.
//! * [`move_pendant`]: shift one pendant vertex from the lighter center of an
//!   adjacent pair to the heavier one.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("the two vertices must differ (got {0} twice)")]
    SameVertex(usize),
    #[error("vertex {vertex} has no pendant tree side to collapse")]
    NoPendantTree { vertex: usize },
    #[error("pendant tree at {vertex} is already a star centered there")]
    AlreadyStar { vertex: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("private neighbor {0} is not a pendant vertex")]
    PrivateNeighborNotPendant(usize),
    #[error("vertex {0} has no private pendant neighbor to move")]
    NothingToMove(usize),
    #[error("need n1 <= n2, got n1 = {n1}, n2 = {n2}")]
    Unbalanced { n1: usize, n2: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Neighborhood split used by the Kelmans operation:
/// `n1 = N(v1) - N[v2]`, `n2 = N(v2) - N[v1]`, `common = N(v1) ∩ N(v2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KelmansContext {
    pub v1: usize,
    pub v2: usize,
    pub n1: Vec<usize>,
    pub n2: Vec<usize>,
    pub common: Vec<usize>,
    pub adjacent: bool,
}

impl KelmansContext {
    pub fn new(g: &Graph, v1: usize, v2: usize) -> Result<Self, TransformError> {
        if v1 == v2 {
            return Err(TransformError::SameVertex(v1));
        }
        g.degree(v1)?;
        g.degree(v2)?;
        let a: BTreeSet<usize> = g.neighbors(v1).iter().copied().collect();
        let b: BTreeSet<usize> = g.neighbors(v2).iter().copied().collect();
        Ok(Self {
            v1,
            v2,
            n1: a
                .iter()
                .copied()
                .filter(|&w| w != v2 && !b.contains(&w))
                .collect(),
            n2: b
                .iter()
                .copied()
                .filter(|&w| w != v1 && !a.contains(&w))
                .collect(),
            common: a.intersection(&b).copied().collect(),
            adjacent: a.contains(&v2),
        })
    }

    /// The result is isomorphic to the input exactly when one private side is
    /// empty.
    pub fn is_trivial(&self) -> bool {
        self.n1.is_empty() || self.n2.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KelmansOutput {
    pub graph: Graph,
    pub context: KelmansContext,
    /// `false` when the move stranded `v1` (no common neighbors, `v1v2`
    /// not an edge).
    pub connected: bool,
}

/// Replaces `v1 w` by `v2 w` for every `w` in `N(v1) - N[v2]`. Vertex and
/// edge counts are preserved; the result may be disconnected.
pub fn kelmans(g: &Graph, v1: usize, v2: usize) -> Result<KelmansOutput, TransformError> {
    let context = KelmansContext::new(g, v1, v2)?;
    let remove: Vec<_> = context.n1.iter().map(|&w| (v1, w)).collect();
    let add: Vec<_> = context.n1.iter().map(|&w| (v2, w)).collect();
    let graph = g.rewired(&remove, &add)?;
    let connected = graph.is_connected();
    Ok(KelmansOutput {
        graph,
        context,
        connected,
    })
}

pub fn is_kelmans_trivial(g: &Graph, v1: usize, v2: usize) -> Result<bool, TransformError> {
    Ok(KelmansContext::new(g, v1, v2)?.is_trivial())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCollapse {
    pub graph: Graph,
    /// Kelmans steps `(w, x)` applied in order, each moving the children of
    /// `w` up to its parent `x`.
    pub steps: Vec<(usize, usize)>,
    /// Graph after each step; the last entry equals `graph`.
    pub intermediates: Vec<Graph>,
    /// Vertices of the pendant tree other than `u`.
    pub tree_vertices: Vec<usize>,
}

/// Pendant tree at `u`: the union of components `C` of `g - u` that are trees
/// joined to `u` by exactly one edge. Returns the vertices of those
/// components and a parent map rooted at `u`.
fn pendant_tree(g: &Graph, u: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = g.order();
    let mut parent = vec![None; n];
    let mut vertices = Vec::new();
    let mut seen = vec![false; n];
    seen[u] = true;
    for &start in g.neighbors(u) {
        if seen[start] {
            continue;
        }
        // collect the component of g - u containing start
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let inner_edges = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| w != u).count())
            .sum::<usize>()
            / 2;
        let links = comp.iter().filter(|&&v| g.has_edge(u, v)).count();
        if links == 1 && inner_edges + 1 == comp.len() {
            // BFS order from start gives parents inside the component
            parent[start] = Some(u);
            let mut order = vec![start];
            let mut j = 0;
            while j < order.len() {
                let v = order[j];
                for &w in g.neighbors(v) {
                    if w != u && parent[w].is_none() && w != start {
                        parent[w] = Some(v);
                        order.push(w);
                    }
                }
                j += 1;
            }
            vertices.extend(order);
        }
    }
    (vertices, parent)
}

/// Turns the pendant tree hanging at `u` into a star centered at `u`.
///
/// Each step takes the non-pendant tree vertex `w` farthest from `u` (ties
/// broken by smallest index) and applies `kelmans(w, parent(w))`.
pub fn star_collapse(g: &Graph, u: usize) -> Result<StarCollapse, TransformError> {
    g.degree(u)?;
    let (tree_vertices, parent) = pendant_tree(g, u);
    if tree_vertices.is_empty() {
        return Err(TransformError::NoPendantTree { vertex: u });
    }
    let depth_of = |v: usize, parent: &[Option<usize>]| {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = parent[cur] {
            d += 1;
            cur = p;
        }
        d
    };

    let mut graph = g.clone();
    let mut parent = parent;
    let mut steps = Vec::new();
    let mut intermediates = Vec::new();
    loop {
        let deepest = tree_vertices
            .iter()
            .copied()
            .filter(|&v| graph.neighbors(v).len() > 1)
            .map(|v| (depth_of(v, &parent), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, w)) = deepest else { break };
        let x = parent[w].expect("tree vertex has a parent");
        let out = kelmans(&graph, w, x)?;
        for &c in &out.context.n1 {
            parent[c] = Some(x);
        }
        graph = out.graph;
        steps.push((w, x));
        intermediates.push(graph.clone());
    }
    if steps.is_empty() {
        return Err(TransformError::AlreadyStar { vertex: u });
    }
    Ok(StarCollapse {
        graph,
        steps,
        intermediates,
        tree_vertices,
    })
}

/// Moves one pendant neighbor (the smallest-indexed) of `v1` to `v2`.
///
/// Requires `v1 v2` to be an edge, every private neighbor of either vertex to
/// be pendant, and `1 <= |N(v1) - N[v2]| <= |N(v2) - N[v1]|`. Common
/// neighbors may lead anywhere.
pub fn move_pendant(g: &Graph, v1: usize, v2: usize) -> Result<Graph, TransformError> {
    let ctx = KelmansContext::new(g, v1, v2)?;
    if !ctx.adjacent {
        return Err(TransformError::NotAdjacent(v1, v2));
    }
    if let Some(&w) = ctx
        .n1
        .iter()
        .chain(&ctx.n2)
        .find(|&&w| g.neighbors(w).len() != 1)
    {
        return Err(TransformError::PrivateNeighborNotPendant(w));
    }
    let (n1, n2) = (ctx.n1.len(), ctx.n2.len());
    if n1 == 0 {
        return Err(TransformError::NothingToMove(v1));
    }
    if n1 > n2 {
        return Err(TransformError::Unbalanced { n1, n2 });
    }
    let w = ctx.n1[0];
    Ok(g.rewired(&[(v1, w)], &[(v2, w)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{double_star, path, spider_t1, star};

    fn canon(g: &Graph) -> String {
        g.tree_canonical_form().unwrap().0
    }

    #[test]
    fn kelmans_on_p4_gives_star() {
        let p4 = path(4).unwrap();
        let out = kelmans(&p4, 1, 2).unwrap();
        assert_eq!(out.context.n1, vec![0]);
        assert_eq!(out.graph.degree(2).unwrap(), 3);
        assert!(out.graph.is_tree() && out.connected);
        assert_eq!(canon(&out.graph), canon(&star(4).unwrap()));
        assert!(!is_kelmans_trivial(&p4, 1, 2).unwrap());
    }

    #[test]
    fn kelmans_empty_private_side_is_identity() {
        let s = star(6).unwrap();
        // leaf 3 has only the center, which is v2 itself
        let out = kelmans(&s, 3, 0).unwrap();
        assert_eq!(out.graph, s);
        assert!(is_kelmans_trivial(&s, 3, 0).unwrap());
    }

    #[test]
    fn kelmans_center_to_leaf_recenters() {
        let s = star(6).unwrap();
        let out = kelmans(&s, 0, 4).unwrap();
        assert!(out.context.n2.is_empty());
        assert_eq!(out.graph.degree(4).unwrap(), 5);
        assert_eq!(canon(&out.graph), canon(&s));
        assert!(is_kelmans_trivial(&s, 0, 4).unwrap());
    }

    #[test]
    fn kelmans_may_disconnect() {
        let p4 = path(4).unwrap();
        let out = kelmans(&p4, 0, 2).unwrap();
        assert_eq!(out.context.common, vec![1]);
        assert!(out.context.n1.is_empty());
        let p5 = path(5).unwrap();
        assert!(!is_kelmans_trivial(&p5, 0, 4).unwrap());
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let out = kelmans(&g, 1, 3).unwrap();
        // N1 = {0}, N2 = {4}, common = {2}: stays connected
        assert!(out.connected);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = kelmans(&g, 0, 3).unwrap();
        assert_eq!(out.context.n1, vec![1]);
        assert!(!out.connected);
        assert_eq!(out.graph.degree(0).unwrap(), 0);
    }

    #[test]
    fn kelmans_errors() {
        assert_eq!(
            kelmans(&path(3).unwrap(), 1, 1).unwrap_err(),
            TransformError::SameVertex(1)
        );
        assert!(kelmans(&path(3).unwrap(), 1, 7).is_err());
    }

    #[test]
    fn broom_collapses_to_star() {
        // H = edge 3-0, T = 0 - 1 - 2 hanging at u = 0
        let g = Graph::from_edges(4, &[(0, 3), (0, 1), (1, 2)]).unwrap();
        let c = star_collapse(&g, 0).unwrap();
        assert_eq!(c.steps, vec![(1, 0)]);
        assert_eq!(c.graph.degree(0).unwrap(), 3);
        assert_eq!(canon(&c.graph), canon(&star(4).unwrap()));
    }

    #[test]
    fn spider_collapses_to_s7() {
        let c = star_collapse(&spider_t1(), 0).unwrap();
        assert_eq!(c.steps.len(), 3);
        assert_eq!(c.graph.degree(0).unwrap(), 6);
        assert_eq!(c.intermediates.last(), Some(&c.graph));
    }

    #[test]
    fn star_collapse_noop_and_missing() {
        assert_eq!(
            star_collapse(&star(5).unwrap(), 0).unwrap_err(),
            TransformError::AlreadyStar { vertex: 0 }
        );
        // every neighbor of 0 lies on a cycle
        let cyc = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            star_collapse(&cyc, 0).unwrap_err(),
            TransformError::NoPendantTree { vertex: 0 }
        );
    }

    #[test]
    fn star_collapse_leaves_cyclic_part() {
        // triangle 0-1-2 with path 0-3-4-5 hanging off 0
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)]).unwrap();
        let c = star_collapse(&g, 0).unwrap();
        assert_eq!(c.tree_vertices, vec![3, 4, 5]);
        assert!(c.graph.has_edge(1, 2) && c.graph.has_edge(0, 1) && c.graph.has_edge(0, 2));
        assert!([3, 4, 5].iter().all(|&v| c.graph.has_edge(0, v)));
        assert_eq!(c.graph.size(), g.size());
    }

    #[test]
    fn move_pendant_along_double_stars() {
        // S_{7,8}: center 0 has degree 7, center 1 degree 8
        let g = double_star(7, 15).unwrap();
        let moved = move_pendant(&g, 0, 1).unwrap();
        assert_eq!(canon(&moved), canon(&double_star(6, 15).unwrap()));
        assert_eq!((moved.degree(0).unwrap(), moved.degree(1).unwrap()), (6, 9));

        let s22 = double_star(2, 4).unwrap();
        let out = move_pendant(&s22, 0, 1).unwrap();
        assert_eq!(canon(&out), canon(&star(4).unwrap()));
        assert!(out.is_connected());
    }

    #[test]
    fn move_pendant_balanced_case() {
        let g = double_star(5, 10).unwrap();
        let out = move_pendant(&g, 0, 1).unwrap();
        let mut d = [out.degree(0).unwrap(), out.degree(1).unwrap()];
        d.sort();
        assert_eq!(d, [4, 6]);
    }

    #[test]
    fn move_pendant_preconditions() {
        let p5 = path(5).unwrap();
        assert_eq!(
            move_pendant(&p5, 1, 2).unwrap_err(),
            TransformError::PrivateNeighborNotPendant(3)
        );
        assert_eq!(
            move_pendant(&p5, 0, 2).unwrap_err(),
            TransformError::NotAdjacent(0, 2)
        );
        let g = double_star(3, 8).unwrap();
        assert_eq!(
            move_pendant(&g, 1, 0).unwrap_err(),
            TransformError::Unbalanced { n1: 4, n2: 2 }
        );
        let s = star(4).unwrap();
        assert_eq!(
            move_pendant(&s, 1, 0).unwrap_err(),
            TransformError::NothingToMove(1)
        );
    }

    #[test]
    fn move_pendant_with_common_neighbors() {
        // v1 = 0, v2 = 1 adjacent, common neighbor 2 attached to H = {2-3}
        // pendants: 4 on v1, 5 and 6 on v2
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (0, 4), (1, 5), (1, 6)])
            .unwrap();
        let out = move_pendant(&g, 0, 1).unwrap();
        // degrees (n1+n3+1, n2+n3+1) = (3, 4) become (2, 5)
        assert_eq!(out.degree(0).unwrap(), 2);
        assert_eq!(out.degree(1).unwrap(), 5);
        assert!(out.is_connected());
    }
}

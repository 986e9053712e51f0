//! Simple undirected graphs on dense `0..n` vertex indices.
//!
//! A [`Graph`] is an immutable value: every edit returns a new graph, so a
//! transformed graph can always be compared against its original. Named tree
//! constructors and a centroid-rooted canonical form for trees live here too.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("invalid parameters for {family}: {reason}")]
    BadParameters {
        family: &'static str,
        reason: String,
    },
    #[error("graph is not a tree")]
    NotATree,
    #[error("relabeling is not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Simple undirected graph. Adjacency lists are kept sorted and always
/// describe the same relation as the edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            n,
            edges: BTreeSet::new(),
            adjacency: vec![Vec::new(); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::OutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = ordered(u, v);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[a];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        Ok(())
    }

    fn delete_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = ordered(u, v);
        if !self.edges.remove(&e) {
            return Err(GraphError::MissingEdge(e.0, e.1));
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[a];
            let pos = list.binary_search(&b).expect("adjacency out of sync");
            list.remove(pos);
        }
        Ok(())
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.delete_edge(u, v)?;
        Ok(g)
    }

    /// Applies a batch of removals followed by a batch of insertions.
    pub(crate) fn rewired(
        &self,
        remove: &[(usize, usize)],
        add: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut g = self.clone();
        for &(u, v) in remove {
            g.delete_edge(u, v)?;
        }
        for &(u, v) in add {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&ordered(u, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Connected component label per vertex, labels numbered in order of
    /// their smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.size() + 1 == self.n && self.is_connected()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation(self.n));
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadPermutation(self.n));
            }
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(self.n, &edges)
    }

    /// Graph with vertex `v` and its incident edges deleted; remaining
    /// vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (shift(a), shift(b)))
            .collect();
        Self::from_edges(self.n - 1, &edges)
    }

    /// Text form: `n m` then one `u v` line per edge (u < v).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.size());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let parse_err = |line: usize, reason: &str| GraphError::Parse {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let pair = |idx: usize, s: &str| -> Result<(usize, usize), GraphError> {
            let mut it = s.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(parse_err(idx + 1, "expected two non-negative integers")),
            }
        };
        let (n, m) = pair(hl, header)?;
        let mut g = Self::new(n).map_err(|e| parse_err(hl + 1, &e.to_string()))?;
        let mut count = 0;
        for (idx, line) in lines {
            let (u, v) = pair(idx, line)?;
            g.insert_edge(u, v)
                .map_err(|e| parse_err(idx + 1, &e.to_string()))?;
            count += 1;
        }
        if count != m {
            return Err(parse_err(
                hl + 1,
                &format!("header announces {m} edges, found {count}"),
            ));
        }
        Ok(g)
    }

    /// Centroid vertices of a tree: one or two adjacent vertices whose removal
    /// leaves components of at most `n / 2` vertices.
    pub fn tree_centroids(&self) -> Result<Vec<usize>, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let (order, parent) = self.bfs_tree(0);
        let mut size = vec![1usize; self.n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let mut centroids = Vec::with_capacity(2);
        for v in 0..self.n {
            let mut largest = self.n - size[v];
            for &w in &self.adjacency[v] {
                if parent[v] != Some(w) {
                    largest = largest.max(size[w]);
                }
            }
            if 2 * largest <= self.n {
                centroids.push(v);
            }
        }
        Ok(centroids)
    }

    /// BFS visiting order and parent pointers from `root`.
    pub(crate) fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        (order, parent)
    }

    fn rooted_encoding(&self, root: usize) -> String {
        let (order, parent) = self.bfs_tree(root);
        let mut codes: Vec<Option<String>> = vec![None; self.n];
        for &v in order.iter().rev() {
            let mut children: Vec<String> = self.adjacency[v]
                .iter()
                .filter(|&&w| parent[v] != Some(w))
                .map(|&w| codes[w].take().expect("child encoded before parent"))
                .collect();
            children.sort_unstable();
            let mut code =
                String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            code.push('(');
            children.iter().for_each(|c| code.push_str(c));
            code.push(')');
            codes[v] = Some(code);
        }
        codes[root].take().expect("root encoded")
    }

    /// Isomorphism-invariant encoding of a tree: AHU parenthesis code rooted
    /// at the centroid, taking the smaller code when there are two centroids.
    pub fn tree_canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        let centroids = self.tree_centroids()?;
        let code = centroids
            .iter()
            .map(|&c| self.rooted_encoding(c))
            .min()
            .expect("a tree has at least one centroid");
        Ok(CanonicalForm(code))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

/// Canonical form of a free tree; equal iff the trees are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(family: &'static str, reason: impl Into<String>) -> GraphError {
    GraphError::BadParameters {
        family,
        reason: reason.into(),
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(bad("path", "n must be at least 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Star with center 0 and leaves `1..n`.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(bad("star", "n must be at least 2"));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Double star `S_{d,n-d}`: adjacent centers 0 (degree `min(d, n-d)`) and 1
/// (degree `max(d, n-d)`), leaves of center 0 first.
pub fn double_star(d: usize, n: usize) -> Result<Graph, GraphError> {
    if n < 4 || d < 2 || d + 2 > n {
        return Err(bad(
            "double_star",
            format!("need 2 <= d <= n-2, got d={d}, n={n}"),
        ));
    }
    let d = d.min(n - d);
    let mut edges = vec![(0, 1)];
    edges.extend((2..d + 1).map(|i| (0, i)));
    edges.extend((d + 1..n).map(|i| (1, i)));
    Graph::from_edges(n, &edges)
}

/// Caterpillar whose spine is `0..spine_len`, with `leaf_counts[i]` pendant
/// vertices attached to spine vertex `i`.
pub fn caterpillar(spine_len: usize, leaf_counts: &[usize]) -> Result<Graph, GraphError> {
    if spine_len == 0 {
        return Err(bad("caterpillar", "spine must have at least one vertex"));
    }
    if leaf_counts.len() != spine_len {
        return Err(bad(
            "caterpillar",
            format!(
                "{} leaf counts for a spine of {spine_len}",
                leaf_counts.len()
            ),
        ));
    }
    let n = spine_len + leaf_counts.iter().sum::<usize>();
    let mut edges: Vec<_> = (1..spine_len).map(|i| (i - 1, i)).collect();
    let mut next = spine_len;
    for (i, &k) in leaf_counts.iter().enumerate() {
        for _ in 0..k {
            edges.push((i, next));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Seven-vertex spider with three legs of length two: center 0, middles
/// 1..=3, leaves 4..=6 (leaf `i + 3` hangs off middle `i`).
pub fn spider_t1() -> Graph {
    Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
        .expect("fixed spider is valid")
}

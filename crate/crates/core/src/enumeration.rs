//! Exhaustive generation of non-isomorphic free trees.
//!
//! Rooted trees are produced as canonical level sequences by the
//! Beyer–Hedetniemi successor rule (reverse lexicographic order). A rooted
//! tree is kept only when its root is a centroid; for trees with two
//! centroids, only the rooting whose root half compares greater than or
//! equal to the other half survives. Every free tree is thus emitted exactly
//! once, in constant memory.

use std::fmt;

use thiserror::Error;

use crate::graph::{double_star, star, Graph};

/// Largest order accepted for exhaustive enumeration.
pub const MAX_ENUMERATION_ORDER: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("tree order {0} outside 1..={MAX_ENUMERATION_ORDER}")]
    OrderOutOfRange(usize),
    #[error("double-star chain needs n >= 4, got {0}")]
    ChainTooShort(usize),
}

/// Streaming iterator over all free trees of one order.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    n: usize,
    levels: Option<Vec<usize>>,
}

pub fn free_trees(n: usize) -> Result<FreeTrees, EnumerationError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerationError::OrderOutOfRange(n));
    }
    Ok(FreeTrees {
        n,
        levels: Some((0..n).collect()),
    })
}

pub fn count_free_trees(n: usize) -> Result<u64, EnumerationError> {
    let mut it = free_trees(n)?;
    let mut count = 0;
    while it.advance().is_some() {
        count += 1;
    }
    Ok(count)
}

impl FreeTrees {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Next accepted level sequence.
    fn advance(&mut self) -> Option<Vec<usize>> {
        loop {
            let current = self.levels.take()?;
            self.levels = successor(&current);
            if centroid_rooted(&current) {
                return Some(current);
            }
        }
    }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.advance().map(|l| level_sequence_to_graph(&l))
    }
}

/// Beyer–Hedetniemi successor of a canonical level sequence, `None` after
/// the star.
fn successor(levels: &[usize]) -> Option<Vec<usize>> {
    let p = levels.iter().rposition(|&l| l > 1)?;
    let q = levels[..p]
        .iter()
        .rposition(|&l| l == levels[p] - 1)
        .expect("a vertex at depth > 1 has a parent level before it");
    let mut next = levels.to_vec();
    for i in p..next.len() {
        next[i] = next[i - (p - q)];
    }
    Some(next)
}

/// Root is a centroid, and for a central edge the root side is the larger
/// half in level-sequence order.
fn centroid_rooted(levels: &[usize]) -> bool {
    let n = levels.len();
    let mut i = 1;
    while i < n {
        let j = levels[i + 1..]
            .iter()
            .position(|&l| l == 1)
            .map_or(n, |k| i + 1 + k);
        let size = j - i;
        if 2 * size > n {
            return false;
        }
        if 2 * size == n {
            let other: Vec<usize> = levels[i..j].iter().map(|l| l - 1).collect();
            let root_side: Vec<usize> = levels[..i].iter().chain(&levels[j..]).copied().collect();
            return root_side >= other;
        }
        i = j;
    }
    true
}

fn level_sequence_to_graph(levels: &[usize]) -> Graph {
    let mut last_at_level = vec![0usize; levels.len()];
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (v, &l) in levels.iter().enumerate() {
        if l > 0 {
            edges.push((last_at_level[l - 1], v));
        }
        last_at_level[l] = v;
    }
    Graph::from_edges(levels.len(), &edges).expect("level sequence describes a tree")
}

/// Member of the double-star chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainShape {
    DoubleStar { d: usize, n: usize },
    Star { n: usize },
}

impl ChainShape {
    pub fn graph(&self) -> Graph {
        match *self {
            ChainShape::DoubleStar { d, n } => double_star(d, n).expect("chain parameters valid"),
            ChainShape::Star { n } => star(n).expect("chain parameters valid"),
        }
    }
}

impl fmt::Display for ChainShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainShape::DoubleStar { d, n } => write!(f, "S_{{{d},{}}}", n - d),
            ChainShape::Star { n } => write!(f, "S_{n}"),
        }
    }
}

/// `S_{⌊n/2⌋, n-⌊n/2⌋}, ..., S_{2,n-2}, S_n`: the order in which `rho`
/// increases for restricted weights.
pub fn double_star_chain(n: usize) -> Result<Vec<(ChainShape, Graph)>, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::ChainTooShort(n));
    }
    let mut shapes: Vec<ChainShape> = (2..=n / 2)
        .rev()
        .map(|d| ChainShape::DoubleStar { d, n })
        .collect();
    shapes.push(ChainShape::Star { n });
    Ok(shapes.into_iter().map(|s| (s, s.graph())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use std::collections::HashSet;

    #[test]
    fn order_four() {
        let trees: Vec<_> = free_trees(4).unwrap().collect();
        assert_eq!(trees.len(), 2);
        let forms: HashSet<_> = trees
            .iter()
            .map(|t| t.tree_canonical_form().unwrap())
            .collect();
        assert!(forms.contains(&path(4).unwrap().tree_canonical_form().unwrap()));
        assert!(forms.contains(&star(4).unwrap().tree_canonical_form().unwrap()));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<u64> = (1..=6).map(|n| count_free_trees(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6]);
        assert_eq!(count_free_trees(2).unwrap(), 1);
    }

    #[test]
    fn range_errors() {
        assert!(free_trees(0).is_err());
        assert!(free_trees(MAX_ENUMERATION_ORDER + 1).is_err());
        assert_eq!(
            double_star_chain(3).unwrap_err(),
            EnumerationError::ChainTooShort(3)
        );
    }

    #[test]
    fn successor_walks_to_star() {
        assert_eq!(successor(&[0, 1, 2, 3]), Some(vec![0, 1, 2, 2]));
        assert_eq!(successor(&[0, 1, 2, 2]), Some(vec![0, 1, 2, 1]));
        assert_eq!(successor(&[0, 1, 2, 1]), Some(vec![0, 1, 1, 1]));
        assert_eq!(successor(&[0, 1, 1, 1]), None);
    }

    #[test]
    fn chains() {
        let labels = |n| -> Vec<String> {
            double_star_chain(n)
                .unwrap()
                .iter()
                .map(|(s, _)| s.to_string())
                .collect()
        };
        assert_eq!(
            labels(15),
            ["S_{7,8}", "S_{6,9}", "S_{5,10}", "S_{4,11}", "S_{3,12}", "S_{2,13}", "S_15"]
        );
        assert_eq!(labels(4), ["S_{2,2}", "S_4"]);
        assert_eq!(labels(5), ["S_{2,3}", "S_5"]);
        for (_, g) in double_star_chain(12).unwrap() {
            assert!(g.is_tree() && g.order() == 12);
        }
    }
}

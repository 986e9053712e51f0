//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own tree machinery.

#![allow(dead_code)]

use std::collections::BTreeMap;

use wspec_core::graph::Graph;

pub type Adjacency = Vec<Vec<usize>>;

/// Standard Prüfer decoding with a linear scan for the smallest leaf.
pub fn prufer_decode(code: &[usize]) -> Adjacency {
    let n = code.len() + 2;
    let mut deg = vec![1usize; n];
    for &c in code {
        deg[c] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    let link = |adj: &mut Adjacency, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for &c in code {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        link(&mut adj, leaf, c);
        deg[leaf] = 0;
        deg[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    link(&mut adj, rest[0], rest[1]);
    adj
}

fn rooted_string(adj: &Adjacency, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_string(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Center vertices (one or two) found by peeling leaves layer by layer.
fn centers(adj: &Adjacency) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Smallest rooted AHU string over the tree's centers.
pub fn oracle_form(adj: &Adjacency) -> String {
    centers(adj)
        .into_iter()
        .map(|r| rooted_string(adj, r, usize::MAX))
        .min()
        .unwrap()
}

pub fn adjacency(g: &Graph) -> Adjacency {
    (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// All free trees of order `n`, keyed by oracle form, from every labeled
/// tree via Prüfer sequences.
pub fn brute_force_trees(n: usize) -> BTreeMap<String, Adjacency> {
    let mut out = BTreeMap::new();
    match n {
        0 => return out,
        1 => {
            out.insert(oracle_form(&vec![vec![]]), vec![vec![]]);
            return out;
        }
        2 => {
            let adj = vec![vec![1], vec![0]];
            out.insert(oracle_form(&adj), adj);
            return out;
        }
        _ => {}
    }
    let len = n - 2;
    let mut code = vec![0usize; len];
    loop {
        let adj = prufer_decode(&code);
        out.entry(oracle_form(&adj)).or_insert(adj);
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

/// Trees of order `k + 1` obtained by hanging a leaf on every vertex of every
/// tree of order `k`.
pub fn leaf_extension(trees: &BTreeMap<String, Adjacency>) -> BTreeMap<String, Adjacency> {
    let mut out = BTreeMap::new();
    for adj in trees.values() {
        let n = adj.len();
        for v in 0..n {
            let mut next = adj.clone();
            next.push(vec![v]);
            next[v].push(n);
            out.entry(oracle_form(&next)).or_insert(next);
        }
    }
    out
}

/// Oracle forms for orders `1..=hi`: brute force up to 8, leaf extension
/// beyond.
pub fn oracle_forms_up_to(hi: usize) -> Vec<BTreeMap<String, Adjacency>> {
    let mut all = vec![BTreeMap::new()];
    for n in 1..=hi {
        let next = if n <= 8 {
            brute_force_trees(n)
        } else {
            leaf_extension(&all[n - 1])
        };
        all.push(next);
    }
    all
}

//! Labeled trees on `{1, …, n}` and chains of trees, one per elimination level.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_TREE_SIZE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    n: usize,
    /// Sorted pairs `(a, b)` with `a < b`.
    edges: Vec<(usize, usize)>,
    prufer: Vec<usize>,
}

impl Tree {
    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    pub fn from_prufer(n: usize, code: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::TreeSize(n));
        }
        if code.len() != n - 2 || code.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::InvalidTree(format!("bad Prüfer code {code:?} for n = {n}")));
        }
        let mut degree = vec![1usize; n + 1];
        for &v in code {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &v in code {
            let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf exists");
            edges.push((leaf.min(v), leaf.max(v)));
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
        edges.push((rest[0], rest[1]));
        edges.sort_unstable();
        Ok(Tree { n, edges, prufer: code.to_vec() })
    }

    /// Validates an edge list (connected, acyclic) and computes its code.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::TreeSize(n));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!("{} edges for {n} vertices", edges.len())));
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::InvalidTree(format!("bad edge ({a}, {b})")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::InvalidTree(format!("edge ({a}, {b}) closes a cycle")));
            }
            parent[ra] = rb;
        }
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut code = Vec::with_capacity(n.saturating_sub(2));
        for _ in 0..n.saturating_sub(2) {
            let leaf = (1..=n).find(|&u| adj[u].len() == 1).expect("a leaf exists");
            let v = *adj[leaf].iter().next().unwrap();
            code.push(v);
            adj[leaf].clear();
            adj[v].remove(&leaf);
        }
        Tree::from_prufer(n, &code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn prufer(&self) -> &[usize] {
        &self.prufer
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    /// Vertices of degree at least two.
    pub fn multiple_vertices(&self) -> BTreeSet<usize> {
        (1..=self.n).filter(|&v| self.degree(v) >= 2).collect()
    }

    /// Whether the subgraph induced on `vertices` is connected.
    pub fn induces_connected(&self, vertices: &BTreeSet<usize>) -> bool {
        let Some(&start) = vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if vertices.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == vertices.len()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All labeled trees on `n` vertices in Prüfer-code order.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if !(2..=MAX_TREE_SIZE).contains(&n) {
        return Err(Error::TreeSize(n));
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut code = vec![0; len];
            for slot in code.iter_mut().rev() {
                *slot = idx % n + 1;
                idx /= n;
            }
            Tree::from_prufer(n, &code)
        })
        .collect()
}

pub fn multiple_vertices(tree: &Tree) -> BTreeSet<usize> {
    tree.multiple_vertices()
}

/// Trees `(D_n, D_{n-1}, …, D_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeChain {
    n: usize,
    trees: Vec<Tree>,
}

impl TreeChain {
    pub fn new(trees: Vec<Tree>) -> Result<Self> {
        let n = trees.first().map(Tree::n).ok_or_else(|| Error::InvalidTree("empty chain".into()))?;
        if trees.len() != n - 1 || trees.iter().enumerate().any(|(i, t)| t.n() != n - i) {
            return Err(Error::InvalidTree("chain sizes must descend from n to 2".into()));
        }
        Ok(TreeChain { n, trees })
    }

    /// The empty chain of a single-unknown system.
    pub fn trivial() -> Self {
        TreeChain { n: 1, trees: Vec::new() }
    }

    /// Builds a chain from one Prüfer code per level, top level first.
    pub fn from_codes(n: usize, codes: &[Vec<usize>]) -> Result<Self> {
        if n == 1 && codes.is_empty() {
            return Ok(TreeChain::trivial());
        }
        if codes.len() != n.saturating_sub(1) {
            return Err(Error::InvalidTree(format!(
                "{} codes given, {} levels needed",
                codes.len(),
                n.saturating_sub(1)
            )));
        }
        let trees = codes
            .iter()
            .enumerate()
            .map(|(i, c)| Tree::from_prufer(n - i, c))
            .collect::<Result<Vec<_>>>()?;
        TreeChain::new(trees)
    }

    /// The chain using the first tree of every level.
    pub fn first(n: usize) -> Result<Self> {
        if n == 1 {
            return Ok(TreeChain::trivial());
        }
        if !(2..=MAX_TREE_SIZE).contains(&n) {
            return Err(Error::TreeSize(n));
        }
        TreeChain::new((2..=n).rev().map(|k| Tree::from_prufer(k, &vec![1; k - 2])).collect::<Result<_>>()?)
    }

    /// Every chain, in lexicographic order of the levels' Prüfer codes.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n == 1 {
            return Ok(vec![TreeChain::trivial()]);
        }
        let levels = (2..=n).rev().map(enumerate_trees).collect::<Result<Vec<_>>>()?;
        let mut out: Vec<Vec<Tree>> = vec![Vec::new()];
        for level in &levels {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    level.iter().map(move |t| {
                        let mut p = prefix.clone();
                        p.push(t.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(TreeChain::new).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// The tree used to eliminate `x_k` (`2 ≤ k ≤ n`).
    pub fn at_level(&self, k: usize) -> &Tree {
        &self.trees[self.n() - k]
    }

    pub fn codes(&self) -> Vec<Vec<usize>> {
        self.trees.iter().map(|t| t.prufer().to_vec()).collect()
    }
}

impl fmt::Display for TreeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.trees.iter().map(|t| format!("[{t}]")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        for (n, count) in [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            let trees = enumerate_trees(n).unwrap();
            assert_eq!(trees.len(), count);
            let distinct: BTreeSet<_> = trees.iter().map(|t| t.edges().to_vec()).collect();
            assert_eq!(distinct.len(), count);
        }
        assert_eq!(enumerate_trees(1), Err(Error::TreeSize(1)));
        assert_eq!(enumerate_trees(9), Err(Error::TreeSize(9)));
    }

    #[test]
    fn mu_examples() {
        let path = Tree::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.multiple_vertices(), BTreeSet::from([2]));
        let star = Tree::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(star.multiple_vertices(), BTreeSet::from([1]));
        let edge = Tree::from_edges(2, &[(1, 2)]).unwrap();
        assert!(edge.multiple_vertices().is_empty());
    }

    #[test]
    fn mu_is_connected_and_codes_round_trip() {
        for n in 2..=6 {
            for t in enumerate_trees(n).unwrap() {
                assert!(t.induces_connected(&t.multiple_vertices()));
                assert_eq!(Tree::from_edges(n, t.edges()).unwrap(), t);
            }
        }
    }

    #[test]
    fn invalid_edges_rejected() {
        assert!(Tree::from_edges(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Tree::from_edges(4, &[(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(Tree::from_prufer(4, &[5, 1]).is_err());
    }

    #[test]
    fn chains() {
        assert_eq!(TreeChain::all(4).unwrap().len(), 16 * 3);
        let c = TreeChain::first(4).unwrap();
        assert_eq!(c.at_level(4).n(), 4);
        assert_eq!(c.at_level(2).edges(), &[(1, 2)]);
        assert_eq!(TreeChain::from_codes(4, &c.codes()).unwrap(), c);
    }
}

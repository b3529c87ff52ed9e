//! Planar rooted trees of height ≤ 2 and their globular realizations.
//!
//! A tree with root children c_1..c_m, where child i carries k_i children of
//! its own, realizes to the pasting diagram with m+1 vertices and, between
//! consecutive vertices, either a single edge (k_i = 0) or k_i+1 parallel
//! edges joined by a vertical chain of k_i faces.

use crate::error::{Error, Result};
use crate::glob::GlobSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BataninTree {
    pub children: Vec<BataninTree>,
}

impl BataninTree {
    pub fn leaf() -> Self {
        BataninTree { children: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Grandchild counts per root child; only meaningful at height ≤ 2.
    pub fn profile(&self) -> Vec<usize> {
        self.children.iter().map(|c| c.children.len()).collect()
    }

    pub fn from_profile(profile: &[usize]) -> Self {
        BataninTree {
            children: profile
                .iter()
                .map(|&k| BataninTree {
                    children: vec![BataninTree::leaf(); k],
                })
                .collect(),
        }
    }

    /// Nested-parenthesis encoding; the root's parentheses included.
    pub fn encode(&self) -> String {
        let mut s = String::from("(");
        for c in &self.children {
            s.push_str(&c.encode());
        }
        s.push(')');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.trim().as_bytes();
        fn node(bytes: &[u8], pos: &mut usize) -> Result<BataninTree> {
            if bytes.get(*pos) != Some(&b'(') {
                return Err(Error::malformed("expected `(` in tree encoding"));
            }
            *pos += 1;
            let mut children = Vec::new();
            while bytes.get(*pos) == Some(&b'(') {
                children.push(node(bytes, pos)?);
            }
            if bytes.get(*pos) != Some(&b')') {
                return Err(Error::malformed("expected `)` in tree encoding"));
            }
            *pos += 1;
            Ok(BataninTree { children })
        }
        let mut pos = 0;
        let t = node(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::malformed("trailing characters after tree encoding"));
        }
        Ok(t)
    }

    /// The globular pasting diagram of the tree, truncated at `dim`.
    pub fn realization(&self, dim: usize) -> Result<GlobSet> {
        if self.height() > dim || self.height() > 2 {
            return Err(Error::malformed(format!(
                "tree of height {} does not realize at dimension {dim}",
                self.height()
            )));
        }
        let profile = self.profile();
        let m = profile.len();
        let mut g = GlobSet::empty(dim);
        g.sizes[0] = m + 1;
        if dim == 0 {
            return Ok(g);
        }
        for (i, &k) in profile.iter().enumerate() {
            let parallel = if k == 0 { 1 } else { k + 1 };
            let first_edge = g.sizes[1];
            for _ in 0..parallel {
                g.src[0].push(i);
                g.tgt[0].push(i + 1);
                g.sizes[1] += 1;
            }
            if dim >= 2 {
                for j in 0..k {
                    g.src[1].push(first_edge + j);
                    g.tgt[1].push(first_edge + j + 1);
                    g.sizes[2] += 1;
                }
            }
        }
        debug_assert!(g.validate().is_clean());
        Ok(g)
    }
}

/// All trees of height ≤ `height` with at most `max_nodes` nodes, ordered by
/// node count and then by encoding.
pub fn enumerate_trees(height: usize, max_nodes: usize) -> Vec<BataninTree> {
    fn gen(height: usize, budget: usize) -> Vec<BataninTree> {
        // all trees with *exactly* the root plus up to budget-1 descendants
        let mut out = vec![BataninTree::leaf()];
        if height == 0 || budget <= 1 {
            return out;
        }
        // choose an ordered forest of children within the budget
        fn forests(height: usize, budget: usize) -> Vec<Vec<BataninTree>> {
            let mut out = vec![Vec::new()];
            if budget == 0 {
                return out;
            }
            for first_size in 1..=budget {
                for first in gen(height, first_size)
                    .into_iter()
                    .filter(|t| t.node_count() == first_size)
                {
                    for rest in forests(height, budget - first_size) {
                        let mut f = vec![first.clone()];
                        f.extend(rest);
                        out.push(f);
                    }
                }
            }
            out
        }
        for f in forests(height - 1, budget - 1) {
            if !f.is_empty() {
                out.push(BataninTree { children: f });
            }
        }
        out.sort_by_key(|t| (t.node_count(), t.encode()));
        out.dedup();
        out
    }
    let mut all = gen(height, max_nodes);
    all.sort_by_key(|t| (t.node_count(), t.encode()));
    all.dedup();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_trees_of_height_two_with_three_nodes() {
        let trees = enumerate_trees(2, 3);
        let codes: Vec<String> = trees.iter().map(|t| t.encode()).collect();
        assert_eq!(codes, vec!["()", "(())", "((()))", "(()())"]);
    }

    #[test]
    fn height_one_trees_are_linear() {
        let trees = enumerate_trees(1, 4);
        // root, root+1, root+2, root+3 children
        assert_eq!(trees.len(), 4);
        for (k, t) in trees.iter().enumerate() {
            assert_eq!(t.children.len(), k);
            assert!(t.height() <= 1);
        }
    }

    #[test]
    fn max_nodes_one_gives_only_the_root() {
        let trees = enumerate_trees(2, 1);
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0], BataninTree::leaf());
    }

    #[test]
    fn realizations_have_the_expected_cells() {
        // root only: a single vertex
        let root = BataninTree::leaf().realization(2).unwrap();
        assert_eq!(root.sizes, vec![1, 0, 0]);
        // root with n children: a linear graph
        let lin = BataninTree::from_profile(&[0, 0, 0]).realization(2).unwrap();
        assert_eq!(lin.sizes, vec![4, 3, 0]);
        // root-child-grandchild: the 2-globe
        let globe = BataninTree::from_profile(&[1]).realization(2).unwrap();
        assert_eq!(globe.sizes, vec![2, 2, 1]);
        // root-child with two grandchildren: vertical pair classifier
        let vp = BataninTree::from_profile(&[2]).realization(2).unwrap();
        assert_eq!(vp.sizes, vec![2, 3, 2]);
        assert_eq!(vp, GlobSet::vertical_pair());
    }

    #[test]
    fn parse_round_trips() {
        for code in ["()", "(())", "(()())", "((())())"] {
            let t = BataninTree::parse(code).unwrap();
            assert_eq!(t.encode(), code);
        }
        assert!(BataninTree::parse("(()").is_err());
        assert!(BataninTree::parse("()x").is_err());
    }

    #[test]
    fn realizations_are_pairwise_distinct_within_bound() {
        let trees = enumerate_trees(2, 4);
        let mut seen = Vec::new();
        for t in &trees {
            let r = t.realization(2).unwrap();
            assert!(r.validate().is_clean());
            assert!(!seen.contains(&r), "duplicate realization for {}", t.encode());
            seen.push(r);
        }
    }
}

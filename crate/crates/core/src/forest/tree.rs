use std::fmt;

use super::{Arity, Forest, ForestError};

/// A finite rooted planar tree. Every internal node of a tree used in a
/// given context has exactly `arity` children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// # Panics
    /// If fewer than two children are given.
    pub fn node(children: Vec<Tree>) -> Tree {
        assert!(children.len() >= 2, "a node needs at least two children");
        Tree::Node(children)
    }

    /// The single node whose children are all leaves.
    pub fn caret(arity: Arity) -> Tree {
        Tree::Node(vec![Tree::Leaf; arity.get()])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn is_caret(&self) -> bool {
        match self {
            Tree::Leaf => false,
            Tree::Node(cs) => cs.iter().all(Tree::is_leaf),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(cs) => cs.iter().map(Tree::leaf_count).sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::node_count).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    /// The branching arity of the root, if the tree is not a leaf.
    pub fn root_arity(&self) -> Option<usize> {
        match self {
            Tree::Leaf => None,
            Tree::Node(cs) => Some(cs.len()),
        }
    }

    pub fn check_arity(&self, arity: Arity) -> Result<(), ForestError> {
        match self {
            Tree::Leaf => Ok(()),
            Tree::Node(cs) => {
                if cs.len() != arity.get() {
                    return Err(ForestError::ArityMismatch {
                        expected: arity.get(),
                        found: cs.len(),
                    });
                }
                cs.iter().try_for_each(|c| c.check_arity(arity))
            }
        }
    }

    /// `ω^n_i`: grafts a caret onto leaf `i` (1-based).
    pub fn omega(&self, i: usize, arity: Arity) -> Result<Tree, ForestError> {
        let leaves = self.leaf_count();
        if i == 0 || i > leaves {
            return Err(ForestError::IndexOutOfRange { index: i, leaves });
        }
        Ok(self.omega_unchecked(i - 1, arity))
    }

    fn omega_unchecked(&self, pos: usize, arity: Arity) -> Tree {
        match self {
            Tree::Leaf => Tree::caret(arity),
            Tree::Node(cs) => {
                let mut pos = pos;
                let mut out = cs.clone();
                for c in out.iter_mut() {
                    let n = c.leaf_count();
                    if pos < n {
                        *c = c.omega_unchecked(pos, arity);
                        break;
                    }
                    pos -= n;
                }
                Tree::Node(out)
            }
        }
    }

    /// Whether `self` is a subtree of `other` sharing its root, i.e. `other`
    /// is obtained from `self` by grafting trees onto its leaves.
    pub fn is_subtree_of(&self, other: &Tree) -> bool {
        match (self, other) {
            (Tree::Leaf, _) => true,
            (Tree::Node(_), Tree::Leaf) => false,
            (Tree::Node(a), Tree::Node(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_subtree_of(y))
            }
        }
    }

    /// Smallest tree having both `self` and `other` as subtrees, obtained by
    /// superimposing the two shapes.
    pub fn join(&self, other: &Tree) -> Result<Tree, ForestError> {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => Ok(t.clone()),
            (Tree::Node(a), Tree::Node(b)) => {
                if a.len() != b.len() {
                    return Err(ForestError::ArityMismatch {
                        expected: a.len(),
                        found: b.len(),
                    });
                }
                let cs = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.join(y))
                    .collect::<Result<_, _>>()?;
                Ok(Tree::Node(cs))
            }
        }
    }

    /// The unique forest `F` with `(self) ∘ F = (r)`.
    pub fn cofactors(&self, r: &Tree, arity: Arity) -> Result<Forest, ForestError> {
        r.check_arity(arity)?;
        self.check_arity(arity)?;
        let mut out = Vec::with_capacity(self.leaf_count());
        if !self.collect_cofactors(r, &mut out) {
            return Err(ForestError::NotASubtree(self.clone(), r.clone()));
        }
        Ok(Forest::from_trees_unchecked(arity, out))
    }

    fn collect_cofactors(&self, r: &Tree, out: &mut Vec<Tree>) -> bool {
        match (self, r) {
            (Tree::Leaf, r) => {
                out.push(r.clone());
                true
            }
            (Tree::Node(_), Tree::Leaf) => false,
            (Tree::Node(a), Tree::Node(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.collect_cofactors(y, out))
            }
        }
    }

    /// A sequence of `(n_j, i_j)` such that applying `ω^{n_1}_{i_1}`, then
    /// `ω^{n_2}_{i_2}`, ... to `self` yields `r`. Carets are added at the
    /// leftmost leaf where the current tree still differs from `r`.
    pub fn omega_factorization(
        &self,
        r: &Tree,
        arity: Arity,
    ) -> Result<Vec<(usize, usize)>, ForestError> {
        if !self.is_subtree_of(r) {
            return Err(ForestError::NotASubtree(self.clone(), r.clone()));
        }
        r.check_arity(arity)?;
        let mut current = self.clone();
        let mut steps = Vec::new();
        while let Some(pos) = current.first_growing_leaf(r) {
            steps.push((current.leaf_count(), pos + 1));
            current = current.omega_unchecked(pos, arity);
        }
        Ok(steps)
    }

    /// 0-based index of the leftmost leaf of `self` sitting where `target`
    /// has an internal node.
    fn first_growing_leaf(&self, target: &Tree) -> Option<usize> {
        match (self, target) {
            (Tree::Leaf, Tree::Node(_)) => Some(0),
            (Tree::Leaf, Tree::Leaf) | (Tree::Node(_), Tree::Leaf) => None,
            (Tree::Node(a), Tree::Node(b)) => {
                let mut offset = 0;
                for (x, y) in a.iter().zip(b) {
                    if let Some(p) = x.first_growing_leaf(y) {
                        return Some(offset + p);
                    }
                    offset += x.leaf_count();
                }
                None
            }
        }
    }

    /// Replaces each leaf, left to right, with the next tree from `supply`.
    pub(crate) fn graft(&self, supply: &mut impl Iterator<Item = Tree>) -> Tree {
        match self {
            Tree::Leaf => supply.next().expect("graft supply exhausted"),
            Tree::Node(cs) => Tree::Node(cs.iter().map(|c| c.graft(supply)).collect()),
        }
    }

    pub(crate) fn collect_carets(&self, offset: usize, out: &mut Vec<usize>) {
        if let Tree::Node(cs) = self {
            if self.is_caret() {
                out.push(offset);
                return;
            }
            let mut off = offset;
            for c in cs {
                c.collect_carets(off, out);
                off += c.leaf_count();
            }
        }
    }

    pub(crate) fn contract_caret_at(&self, pos: usize) -> Option<Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Node(cs) => {
                if self.is_caret() {
                    return (pos == 0).then_some(Tree::Leaf);
                }
                let mut off = 0;
                for (idx, c) in cs.iter().enumerate() {
                    let n = c.leaf_count();
                    if pos < off + n {
                        let replaced = c.contract_caret_at(pos - off)?;
                        let mut out = cs.clone();
                        out[idx] = replaced;
                        return Some(Tree::Node(out));
                    }
                    off += n;
                }
                None
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("l"),
            Tree::Node(cs) => {
                f.write_str("(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::enumerate_trees;

    const B: Arity = Arity::BINARY;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn leaf_counts() {
        assert_eq!(t("l").leaf_count(), 1);
        assert_eq!(t("(l l)").leaf_count(), 2);
        assert_eq!(t("((l l) (l l))").leaf_count(), 4);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(t("l").omega(1, B).unwrap(), t("(l l)"));
        assert_eq!(t("(l l)").omega(1, B).unwrap(), t("((l l) l)"));
        assert_eq!(t("((l l) l)").omega(3, B).unwrap(), t("((l l) (l l))"));
        assert_eq!(
            t("(l l)").omega(3, B),
            Err(ForestError::IndexOutOfRange {
                index: 3,
                leaves: 2
            })
        );
        assert!(t("(l l)").omega(0, B).is_err());
        let ternary = Arity::new(3).unwrap();
        assert_eq!(t("l").omega(1, ternary).unwrap(), t("(l l l)"));
    }

    #[test]
    fn subtree_examples() {
        for n in 1..=5 {
            for r in enumerate_trees(n, B) {
                assert!(t("l").is_subtree_of(&r));
                assert!(r.is_subtree_of(&r));
            }
        }
        assert!(t("(l l)").is_subtree_of(&t("((l l) l)")));
        assert!(!t("((l l) l)").is_subtree_of(&t("(l (l l))")));
        // the 3-leafed tree has exactly three subtrees
        let three = t("((l l) l)");
        let subs = (1..=3)
            .flat_map(|n| enumerate_trees(n, B))
            .filter(|s| s.is_subtree_of(&three))
            .count();
        assert_eq!(subs, 3);
    }

    #[test]
    fn join_examples() {
        let x = t("((l l) (l l))");
        assert_eq!(x.join(&t("l")).unwrap(), x);
        assert_eq!(x.join(&x).unwrap(), x);
        // oracle: among all 4-leaf trees, the unique one containing both
        let (a, b) = (t("((l l) l)"), t("(l (l l))"));
        let supers: Vec<_> = (1..=4)
            .flat_map(|n| enumerate_trees(n, B))
            .filter(|u| a.is_subtree_of(u) && b.is_subtree_of(u))
            .collect();
        assert_eq!(supers, vec![t("((l l) (l l))")]);
        assert_eq!(a.join(&b).unwrap(), supers[0]);
    }

    #[test]
    fn cofactor_examples() {
        let r = t("((l l) (l (l l)))");
        assert_eq!(
            t("l").cofactors(&r, B).unwrap(),
            Forest::single(B, r.clone()).unwrap()
        );
        assert_eq!(
            t("(l l)")
                .cofactors(&t("((l l) l)"), B)
                .unwrap()
                .to_string(),
            "[(l l) l]"
        );
        assert_eq!(
            t("((l l) l)")
                .cofactors(&t("((l l) (l l))"), B)
                .unwrap()
                .to_string(),
            "[l l (l l)]"
        );
        assert!(matches!(
            t("((l l) l)").cofactors(&t("(l (l l))"), B),
            Err(ForestError::NotASubtree(..))
        ));
    }

    #[test]
    fn cofactors_agree_with_brute_force_solver() {
        use crate::forest::enumerate_forests;
        let s = t("((l l) l)");
        let r = t("((l l) (l l))");
        let outer = Forest::single(B, s.clone()).unwrap();
        let target = Forest::single(B, r.clone()).unwrap();
        let solutions: Vec<_> = enumerate_forests(4, 3, B)
            .into_iter()
            .filter(|f| outer.compose(f).unwrap() == target)
            .collect();
        assert_eq!(solutions.len(), 1);
        assert_eq!(solutions[0], s.cofactors(&r, B).unwrap());
    }

    #[test]
    fn omega_factorization_examples() {
        let x = t("((l l) l)");
        assert!(x.omega_factorization(&x, B).unwrap().is_empty());
        assert_eq!(
            t("l").omega_factorization(&t("(l l)"), B).unwrap(),
            vec![(2 - 1, 1)]
        );
        let steps = t("(l l)")
            .omega_factorization(&t("((l l) (l l))"), B)
            .unwrap();
        assert_eq!(steps, vec![(2, 1), (3, 3)]);
        let mut replay = t("(l l)");
        for (n, i) in steps {
            assert_eq!(replay.leaf_count(), n);
            replay = replay.omega(i, B).unwrap();
        }
        assert_eq!(replay, t("((l l) (l l))"));
        assert!(t("((l l) l)")
            .omega_factorization(&t("(l (l l))"), B)
            .is_err());
    }

    #[test]
    fn display() {
        assert_eq!(t(" ( l  ( l l ) ) ").to_string(), "(l (l l))");
        assert_eq!(Tree::caret(Arity::new(3).unwrap()).to_string(), "(l l l)");
    }
}

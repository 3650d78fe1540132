//! Planar rooted trees of fixed branching arity and the forest category `D`.
//!
//! Objects of `D` are natural numbers. A morphism `n -> k` is a [`Forest`]
//! of `k` trees with `n` leaves in total. Composition grafts the trees of
//! the inner forest onto the leaves of the outer one; the tensor product is
//! juxtaposition.

mod enumerate;
pub(crate) mod parse;
mod pullback;
mod tree;

pub use enumerate::{count_trees, enumerate_forests, enumerate_trees};
pub use pullback::Pullback;
pub use tree::Tree;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("leaf index {index} out of range 1..={leaves}")]
    IndexOutOfRange { index: usize, leaves: usize },
    #[error("{0} is not a subtree of {1}")]
    NotASubtree(Tree, Tree),
    #[error("cannot compose: outer forest has {leaves} leaves but inner forest has {roots} roots")]
    ShapeMismatch { leaves: usize, roots: usize },
    #[error("cospan legs have different codomains ({0} and {1})")]
    CodomainMismatch(usize, usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Branching arity shared by every tree in a given context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arity(usize);

impl Arity {
    pub const BINARY: Arity = Arity(2);

    pub fn new(k: usize) -> Result<Self, ForestError> {
        if k < 2 {
            return Err(ForestError::InvalidArity(k));
        }
        Ok(Arity(k))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn expect(self, other: Arity) -> Result<(), ForestError> {
        if self == other {
            Ok(())
        } else {
            Err(ForestError::ArityMismatch {
                expected: self.0,
                found: other.0,
            })
        }
    }
}

impl Default for Arity {
    fn default() -> Self {
        Arity::BINARY
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A morphism `leaves -> roots` in the forest category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    arity: Arity,
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(arity: Arity, trees: Vec<Tree>) -> Result<Self, ForestError> {
        for t in &trees {
            t.check_arity(arity)?;
        }
        Ok(Forest { arity, trees })
    }

    pub(crate) fn from_trees_unchecked(arity: Arity, trees: Vec<Tree>) -> Self {
        Forest { arity, trees }
    }

    pub fn single(arity: Arity, tree: Tree) -> Result<Self, ForestError> {
        Forest::new(arity, vec![tree])
    }

    pub fn identity(k: usize, arity: Arity) -> Self {
        Forest {
            arity,
            trees: vec![Tree::Leaf; k],
        }
    }

    pub fn empty(arity: Arity) -> Self {
        Forest::identity(0, arity)
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn is_identity(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    /// `self ∘ inner`: grafts the trees of `inner`, in order, onto the leaves
    /// of `self`.
    pub fn compose(&self, inner: &Forest) -> Result<Forest, ForestError> {
        self.arity.expect(inner.arity)?;
        let leaves = self.leaves();
        if leaves != inner.roots() {
            return Err(ForestError::ShapeMismatch {
                leaves,
                roots: inner.roots(),
            });
        }
        let mut supply = inner.trees.iter().cloned();
        let trees = self.trees.iter().map(|t| t.graft(&mut supply)).collect();
        Ok(Forest {
            arity: self.arity,
            trees,
        })
    }

    /// Juxtaposition.
    pub fn tensor(&self, other: &Forest) -> Result<Forest, ForestError> {
        self.arity.expect(other.arity)?;
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Ok(Forest {
            arity: self.arity,
            trees,
        })
    }

    /// Splits `inner` (with `roots == self.leaves()`) into consecutive runs,
    /// one per tree of `self`, so that `self ∘ inner` is the tensor of
    /// `(τ_i) ∘ run_i`.
    pub fn split_over(&self, inner: &Forest) -> Result<Vec<Forest>, ForestError> {
        self.arity.expect(inner.arity)?;
        if self.leaves() != inner.roots() {
            return Err(ForestError::ShapeMismatch {
                leaves: self.leaves(),
                roots: inner.roots(),
            });
        }
        let mut rest = inner.trees.as_slice();
        let mut out = Vec::with_capacity(self.trees.len());
        for t in &self.trees {
            let (head, tail) = rest.split_at(t.leaf_count());
            out.push(Forest {
                arity: self.arity,
                trees: head.to_vec(),
            });
            rest = tail;
        }
        Ok(out)
    }

    /// Global (0-based) leaf offsets at which a caret sits.
    pub fn caret_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut offset = 0;
        for t in &self.trees {
            t.collect_carets(offset, &mut out);
            offset += t.leaf_count();
        }
        out
    }

    /// Replaces the caret whose leaves start at global offset `pos` by a
    /// single leaf. Returns `None` if there is no caret there.
    pub fn contract_caret(&self, pos: usize) -> Option<Forest> {
        let mut offset = 0;
        for (idx, t) in self.trees.iter().enumerate() {
            let n = t.leaf_count();
            if pos < offset + n {
                let replaced = t.contract_caret_at(pos - offset)?;
                let mut trees = self.trees.clone();
                trees[idx] = replaced;
                return Some(Forest {
                    arity: self.arity,
                    trees,
                });
            }
            offset += n;
        }
        None
    }

    /// Grafts a caret onto global leaf `i` (1-based).
    pub fn omega(&self, i: usize) -> Result<Forest, ForestError> {
        let leaves = self.leaves();
        if i == 0 || i > leaves {
            return Err(ForestError::IndexOutOfRange { index: i, leaves });
        }
        let mut offset = 0;
        let mut trees = self.trees.clone();
        for t in trees.iter_mut() {
            let n = t.leaf_count();
            if i <= offset + n {
                *t = t.omega(i - offset, self.arity)?;
                break;
            }
            offset += n;
        }
        Ok(Forest {
            arity: self.arity,
            trees,
        })
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl Forest {
    /// A random forest `leaves -> roots`, grown from the identity by grafting
    /// carets onto uniformly chosen leaves. `None` when no such forest exists.
    pub fn random<R: rand::Rng + ?Sized>(
        arity: Arity,
        roots: usize,
        leaves: usize,
        rng: &mut R,
    ) -> Option<Forest> {
        let step = arity.get() - 1;
        if leaves < roots || !(leaves - roots).is_multiple_of(step) || (roots == 0 && leaves > 0) {
            return None;
        }
        let mut f = Forest::identity(roots, arity);
        for _ in 0..(leaves - roots) / step {
            let i = rng.gen_range(1..=f.leaves());
            f = f.omega(i).expect("index in range");
        }
        Some(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(s: &str) -> Forest {
        s.parse().unwrap()
    }

    #[test]
    fn identity_forests() {
        let b = Arity::BINARY;
        assert_eq!(Forest::identity(0, b).to_string(), "[]");
        assert_eq!(Forest::identity(1, b).to_string(), "[l]");
        assert_eq!(Forest::identity(3, b).to_string(), "[l l l]");
        let f = forest("[(l l) l (l (l l))]");
        assert_eq!(Forest::identity(3, b).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&Forest::identity(6, b)).unwrap(), f);
    }

    #[test]
    fn compose_examples() {
        let g = forest("[(l l)]");
        let f = forest("[(l l) l]");
        assert_eq!(g.compose(&f).unwrap(), forest("[((l l) l)]"));

        let g = forest("[(l l) l]");
        let f = forest("[l (l l) l]");
        let c = g.compose(&f).unwrap();
        assert_eq!(c, forest("[(l (l l)) l]"));
        assert_eq!((c.leaves(), c.roots()), (4, 2));
    }

    #[test]
    fn compose_rejects_shape_mismatch() {
        let g = forest("[(l l)]");
        let f = forest("[l]");
        assert_eq!(
            g.compose(&f),
            Err(ForestError::ShapeMismatch {
                leaves: 2,
                roots: 1
            })
        );
        let t3: Forest = Forest::parse_with_arity("[l l]", Arity::new(3).unwrap()).unwrap();
        assert!(matches!(
            g.compose(&t3),
            Err(ForestError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let f = forest("[(l l) l]");
        assert_eq!(f.tensor(&Forest::empty(Arity::BINARY)).unwrap(), f);
        let t = forest("[l]").tensor(&forest("[(l l)]")).unwrap();
        assert_eq!(t, forest("[l (l l)]"));
        assert_eq!((t.leaves(), t.roots()), (3, 2));
        let t = forest("[(l l)]").tensor(&forest("[(l l)]")).unwrap();
        assert_eq!(t, forest("[(l l) (l l)]"));
        assert_eq!((t.leaves(), t.roots()), (4, 2));
    }

    #[test]
    fn carets_and_contraction() {
        let f = forest("[((l l) l) (l l)]");
        assert_eq!(f.caret_positions(), vec![0, 3]);
        assert_eq!(f.contract_caret(0).unwrap(), forest("[(l l) (l l)]"));
        assert_eq!(f.contract_caret(3).unwrap(), forest("[((l l) l) l]"));
        assert!(f.contract_caret(1).is_none());
        assert_eq!(forest("[l l]").omega(2).unwrap(), forest("[l (l l)]"));
        assert!(forest("[l l]").omega(3).is_err());
    }

    #[test]
    fn invalid_arity() {
        assert_eq!(Arity::new(1), Err(ForestError::InvalidArity(1)));
        assert!(Arity::new(3).is_ok());
    }
}

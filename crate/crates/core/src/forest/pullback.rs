use super::{Forest, ForestError};

/// A pullback square over a cospan `m --f--> k <--g-- m'`:
/// `f ∘ left = g ∘ right`, with `left: apex -> m` and `right: apex -> m'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub apex: usize,
    pub left: Forest,
    pub right: Forest,
}

impl Forest {
    /// Pullback of the cospan `(self, other)`.
    ///
    /// Both legs split uniquely into single trees over each root, so the
    /// square is assembled root by root: over root `i` with trees `τ` and
    /// `τ'`, the apex is the join `ρ = τ ∨ τ'` and the legs are the cofactors
    /// of `τ` and `τ'` in `ρ`.
    pub fn pullback(&self, other: &Forest) -> Result<Pullback, ForestError> {
        self.arity.expect(other.arity)?;
        if self.roots() != other.roots() {
            return Err(ForestError::CodomainMismatch(self.roots(), other.roots()));
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut apex = 0;
        for (t, u) in self.trees.iter().zip(&other.trees) {
            let joined = t.join(u)?;
            apex += joined.leaf_count();
            left.extend(t.cofactors(&joined, self.arity)?.into_trees());
            right.extend(u.cofactors(&joined, self.arity)?.into_trees());
        }
        Ok(Pullback {
            apex,
            left: Forest::from_trees_unchecked(self.arity, left),
            right: Forest::from_trees_unchecked(self.arity, right),
        })
    }
}

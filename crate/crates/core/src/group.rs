//! Automorphism groups of the span groupoid: `F = Aut(1)` at arity 2 and
//! Brown's `F_{n,r} = Aut(r)` at arity `n`.
//!
//! Products follow the convention of words read left to right: `a · b`
//! applies `a` first, then `b`, so as maps `a · b = b ∘ a`. The generators
//! are pinned as
//!
//! - `x0 = <[(l (l l))] | [((l l) l)]>`, the PL map through
//!   `(0,0) (1/4,1/2) (1/2,3/4) (1,1)`;
//! - `x1 = <[(l (l (l l)))] | [(l ((l l) l))]>`, its half-scale copy on
//!   `[1/2, 1]`.
//!
//! With these choices the relations `[x0 x1⁻¹, x0⁻¹ x1 x0] = 1` and
//! `[x0 x1⁻¹, x0⁻² x1 x0²] = 1` hold.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forest::{Arity, Forest, ForestError};
use crate::span::{SpanError, SpanMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(Context, Context),
    #[error("{0} is not an automorphism of object {1}")]
    NotAnAutomorphism(SpanMap, usize),
    #[error("generator x{0} is not available in context {1}")]
    UnsupportedGenerator(usize, Context),
    #[error("unknown word symbol `{0}`")]
    UnknownSymbol(String),
    #[error("a group context needs at least one root")]
    NoRoots,
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Arity `n` and object `r`: the group `F_{n,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    arity: Arity,
    roots: usize,
}

impl Context {
    /// Thompson's group `F` itself.
    pub const F: Context = Context {
        arity: Arity::BINARY,
        roots: 1,
    };

    pub fn new(arity: usize, roots: usize) -> Result<Context, GroupError> {
        let arity = Arity::new(arity)?;
        if roots == 0 {
            return Err(GroupError::NoRoots);
        }
        Ok(Context { arity, roots })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn roots(&self) -> usize {
        self.roots
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{})", self.arity, self.roots)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    ctx: Context,
    rep: SpanMap,
}

impl GroupElement {
    pub fn identity(ctx: Context) -> GroupElement {
        GroupElement {
            ctx,
            rep: SpanMap::identity(ctx.roots, ctx.arity),
        }
    }

    pub fn from_span(ctx: Context, rep: SpanMap) -> Result<GroupElement, GroupError> {
        ctx.arity.expect(rep.arity())?;
        if rep.src() != ctx.roots || rep.dst() != ctx.roots {
            return Err(GroupError::NotAnAutomorphism(rep, ctx.roots));
        }
        Ok(GroupElement { ctx, rep })
    }

    pub fn generator(i: usize) -> Result<GroupElement, GroupError> {
        let rep = match i {
            0 => "<[(l (l l))] | [((l l) l)]>",
            1 => "<[(l (l (l l)))] | [(l ((l l) l))]>",
            _ => return Err(GroupError::UnsupportedGenerator(i, Context::F)),
        };
        GroupElement::from_span(Context::F, rep.parse()?)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn span(&self) -> &SpanMap {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }

    /// `self · other`: first `self`, then `other`.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.ctx != other.ctx {
            return Err(GroupError::ContextMismatch(self.ctx, other.ctx));
        }
        Ok(GroupElement {
            ctx: self.ctx,
            rep: other.rep.compose(&self.rep)?,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            ctx: self.ctx,
            rep: self.rep.inverse(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity(self.ctx);
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base).expect("same context");
        }
        acc
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        a.multiply(b)?
            .multiply(&a.inverse())?
            .multiply(&b.inverse())
    }

    /// The left-to-right product of the letters of `w` in `F`.
    pub fn from_word(w: &Word) -> Result<GroupElement, GroupError> {
        let gens = [GroupElement::generator(0)?, GroupElement::generator(1)?];
        let mut acc = GroupElement::identity(Context::F);
        for letter in &w.0 {
            let g = &gens[letter.generator];
            let g = if letter.inverse {
                g.inverse()
            } else {
                g.clone()
            };
            acc = acc.multiply(&g)?;
        }
        Ok(acc)
    }

    /// Deterministic in `(ctx, seed, size)`.
    pub fn random(ctx: Context, seed: u64, size: usize) -> GroupElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GroupElement::random_with(ctx, &mut rng, size)
    }

    /// A random tree pair with apex at most `size`, reduced. The apex is
    /// drawn uniformly from the admissible values `r, r + (n-1), ...`.
    pub fn random_with<R: Rng + ?Sized>(ctx: Context, rng: &mut R, size: usize) -> GroupElement {
        let step = ctx.arity.get() - 1;
        if size < ctx.roots {
            return GroupElement::identity(ctx);
        }
        let choices = (size - ctx.roots) / step + 1;
        let apex = ctx.roots + step * rng.gen_range(0..choices);
        let dst = Forest::random(ctx.arity, ctx.roots, apex, rng).expect("admissible apex");
        let src = Forest::random(ctx.arity, ctx.roots, apex, rng).expect("admissible apex");
        let rep = SpanMap::new(dst, src).expect("equal leaf counts");
        GroupElement { ctx, rep }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in `x0`, `x1` and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letter(generator: usize, inverse: bool) -> Word {
        Word(vec![Letter { generator, inverse }])
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a b a⁻¹ b⁻¹`, without free cancellation.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.then(b).then(&a.inverse()).then(&b.inverse())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Letters `x0`, `x1`, optionally raised to an integer power: `x1^-1`,
/// `x0^2`.
impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || GroupError::UnknownSymbol(tok.to_string());
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let generator = match base {
                "x0" => 0,
                "x1" => 1,
                _ => return Err(bad()),
            };
            let letter = Letter {
                generator,
                inverse: power < 0,
            };
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> GroupElement {
        GroupElement::from_word(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(
            GroupElement::identity(Context::F).to_string(),
            "<[l] | [l]>"
        );
        let c22 = Context::new(2, 2).unwrap();
        assert_eq!(GroupElement::identity(c22).to_string(), "<[l l] | [l l]>");
        let c31 = Context::new(3, 1).unwrap();
        let id = GroupElement::identity(c31);
        assert_eq!(id.to_string(), "<[l] | [l]>");
        assert_eq!(id.span().arity().get(), 3);
        assert!(Context::new(2, 0).is_err());
        assert!(Context::new(1, 1).is_err());
    }

    #[test]
    fn generators() {
        let x0 = GroupElement::generator(0).unwrap();
        assert_eq!(x0.to_string(), "<[(l (l l))] | [((l l) l)]>");
        assert!(x0.multiply(&x0.inverse()).unwrap().is_identity());
        assert!(x0.inverse().multiply(&x0).unwrap().is_identity());
        assert!(matches!(
            GroupElement::generator(2),
            Err(GroupError::UnsupportedGenerator(2, _))
        ));
    }

    #[test]
    fn multiply_examples() {
        let x0 = GroupElement::generator(0).unwrap();
        let id = GroupElement::identity(Context::F);
        assert_eq!(x0.multiply(&id).unwrap(), x0);
        assert_eq!(
            x0.multiply(&x0).unwrap().to_string(),
            "<[(l (l (l l)))] | [(((l l) l) l)]>"
        );
        let other = GroupElement::identity(Context::new(2, 2).unwrap());
        assert!(matches!(
            x0.multiply(&other),
            Err(GroupError::ContextMismatch(..))
        ));
    }

    #[test]
    fn inverse_of_product() {
        let x0 = GroupElement::generator(0).unwrap();
        let x1 = GroupElement::generator(1).unwrap();
        assert_eq!(
            x0.multiply(&x1).unwrap().inverse(),
            x1.inverse().multiply(&x0.inverse()).unwrap()
        );
    }

    #[test]
    fn words() {
        assert!(word("").is_identity());
        assert!(word("x0 x0^-1").is_identity());
        let a: Word = "x0 x1^-1".parse().unwrap();
        let b: Word = "x0^-1 x1 x0".parse().unwrap();
        let c = Word::commutator(&a, &b);
        assert_eq!(
            c.to_string(),
            "x0 x1^-1 x0^-1 x1 x0 x1 x0^-1 x0^-1 x1^-1 x0"
        );
        assert!(GroupElement::from_word(&c).unwrap().is_identity());
        // the 13-letter word is not a free expansion of that commutator
        assert!(!word("x0 x1^-1 x0^-1 x1 x0 x1^-1 x0^-1 x1^-1 x0 x1 x0^-1 x1 x0").is_identity());
        assert!(matches!(
            "x0 y".parse::<Word>(),
            Err(GroupError::UnknownSymbol(s)) if s == "y"
        ));
        assert!("x2".parse::<Word>().is_err());
        let w: Word = "x0^2 x1^-2 x0^0".parse().unwrap();
        assert_eq!(w.to_string(), "x0 x0 x1^-1 x1^-1");
        assert!("x0^a".parse::<Word>().is_err());
    }

    #[test]
    fn x0_and_x1_do_not_commute() {
        let x0 = GroupElement::generator(0).unwrap();
        let x1 = GroupElement::generator(1).unwrap();
        assert!(!GroupElement::commutator(&x0, &x1).unwrap().is_identity());
    }

    #[test]
    fn random_elements() {
        assert!(GroupElement::random(Context::F, 7, 0).is_identity());
        let a = GroupElement::random(Context::F, 42, 8);
        let b = GroupElement::random(Context::F, 42, 8);
        assert_eq!(a, b);
        assert!(a.span().apex() <= 8);
        let c31 = Context::new(3, 2).unwrap();
        for seed in 0..50 {
            let g = GroupElement::random(c31, seed, 12);
            assert_eq!(g.span().apex() % 2, 0);
            assert!(g.span().span().is_reduced());
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x0 = GroupElement::generator(0).unwrap();
        assert_eq!(x0.pow(2), x0.multiply(&x0).unwrap());
        assert!(x0.pow(3).multiply(&x0.pow(-3)).unwrap().is_identity());
    }
}

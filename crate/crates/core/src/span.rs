//! The free groupoid `E` on the forest category.
//!
//! A morphism `k' -> k` is an equivalence class of spans
//! `k' <--S-- n --T--> k` of forests, written `[T, S]` (codomain leg first).
//! Two spans are equivalent when one is obtained from the other by grafting
//! the same forest onto the apex of both legs. Each class has a unique
//! *reduced* representative, in which no caret sits at the same leaf
//! positions in both legs; [`SpanMap`] always stores that representative, so
//! equality of classes is structural equality.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::forest::{Arity, Forest, ForestError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanError {
    #[error("span legs have different leaf counts ({dst} and {src})")]
    LeafCountMismatch { dst: usize, src: usize },
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// A span representative, not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    leg_dst: Forest,
    leg_src: Forest,
}

impl Span {
    pub fn new(leg_dst: Forest, leg_src: Forest) -> Result<Span, SpanError> {
        leg_dst.arity().expect(leg_src.arity())?;
        let (dst, src) = (leg_dst.leaves(), leg_src.leaves());
        if dst != src {
            return Err(SpanError::LeafCountMismatch { dst, src });
        }
        Ok(Span { leg_dst, leg_src })
    }

    pub fn leg_dst(&self) -> &Forest {
        &self.leg_dst
    }

    pub fn leg_src(&self) -> &Forest {
        &self.leg_src
    }

    pub fn arity(&self) -> Arity {
        self.leg_dst.arity()
    }

    pub fn src(&self) -> usize {
        self.leg_src.roots()
    }

    pub fn dst(&self) -> usize {
        self.leg_dst.roots()
    }

    pub fn apex(&self) -> usize {
        self.leg_dst.leaves()
    }

    /// Leaf offsets (0-based) where both legs carry a caret.
    pub fn cancellable_carets(&self) -> Vec<usize> {
        let src = self.leg_src.caret_positions();
        self.leg_dst
            .caret_positions()
            .into_iter()
            .filter(|p| src.binary_search(p).is_ok())
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.cancellable_carets().is_empty()
    }

    /// Contracts the common caret starting at leaf offset `pos`.
    pub fn cancel(&self, pos: usize) -> Option<Span> {
        Some(Span {
            leg_dst: self.leg_dst.contract_caret(pos)?,
            leg_src: self.leg_src.contract_caret(pos)?,
        })
    }

    /// Grafts a caret onto apex leaf `i` (1-based) of both legs.
    pub fn expand(&self, i: usize) -> Result<Span, SpanError> {
        Ok(Span {
            leg_dst: self.leg_dst.omega(i)?,
            leg_src: self.leg_src.omega(i)?,
        })
    }

    /// Grafts `rho` onto the apex of both legs.
    pub fn expand_by(&self, rho: &Forest) -> Result<Span, SpanError> {
        Ok(Span {
            leg_dst: self.leg_dst.compose(rho)?,
            leg_src: self.leg_src.compose(rho)?,
        })
    }

    /// Cancels the leftmost common caret until none remain. Returns the
    /// reduced class and the number of carets cancelled.
    pub fn reduce_counting(&self) -> (SpanMap, usize) {
        let mut current = self.clone();
        let mut cancelled = 0;
        while let Some(&pos) = current.cancellable_carets().first() {
            current = current.cancel(pos).expect("caret present in both legs");
            cancelled += 1;
        }
        (SpanMap(current), cancelled)
    }

    pub fn reduce(&self) -> SpanMap {
        self.reduce_counting().0
    }
}

/// A morphism of `E`, held as its reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanMap(Span);

impl SpanMap {
    /// The class `[leg_dst, leg_src]`.
    pub fn new(leg_dst: Forest, leg_src: Forest) -> Result<SpanMap, SpanError> {
        Ok(Span::new(leg_dst, leg_src)?.reduce())
    }

    pub fn identity(k: usize, arity: Arity) -> SpanMap {
        let id = Forest::identity(k, arity);
        SpanMap(Span {
            leg_dst: id.clone(),
            leg_src: id,
        })
    }

    /// The generating isomorphism `α = [Y, id_2]: 2 -> 1` (for arity `k`,
    /// `k -> 1`).
    pub fn alpha(arity: Arity) -> SpanMap {
        SpanMap::eta(&Forest::single(arity, crate::forest::Tree::caret(arity)).unwrap())
    }

    /// The free-groupoid unit `D -> E`: a forest `θ` goes to `[θ, id]`.
    pub fn eta(f: &Forest) -> SpanMap {
        Span {
            leg_dst: f.clone(),
            leg_src: Forest::identity(f.leaves(), f.arity()),
        }
        .reduce()
    }

    pub fn span(&self) -> &Span {
        &self.0
    }

    pub fn leg_dst(&self) -> &Forest {
        &self.0.leg_dst
    }

    pub fn leg_src(&self) -> &Forest {
        &self.0.leg_src
    }

    pub fn arity(&self) -> Arity {
        self.0.arity()
    }

    pub fn src(&self) -> usize {
        self.0.src()
    }

    pub fn dst(&self) -> usize {
        self.0.dst()
    }

    pub fn apex(&self) -> usize {
        self.0.apex()
    }

    pub fn is_identity(&self) -> bool {
        self.0.leg_dst.is_identity() && self.0.leg_src.is_identity()
    }

    /// `self ∘ f`, computed by pulling back `f`'s codomain leg against
    /// `self`'s domain leg and pasting.
    pub fn compose(&self, f: &SpanMap) -> Result<SpanMap, SpanError> {
        self.arity().expect(f.arity())?;
        if f.dst() != self.src() {
            return Err(SpanError::ObjectMismatch {
                expected: self.src(),
                found: f.dst(),
            });
        }
        let pb = f.leg_dst().pullback(self.leg_src())?;
        let leg_dst = self.leg_dst().compose(&pb.right)?;
        let leg_src = f.leg_src().compose(&pb.left)?;
        Ok(Span { leg_dst, leg_src }.reduce())
    }

    /// `[T, S]^{-1} = [S, T]`.
    pub fn inverse(&self) -> SpanMap {
        SpanMap(Span {
            leg_dst: self.0.leg_src.clone(),
            leg_src: self.0.leg_dst.clone(),
        })
    }

    pub fn tensor(&self, other: &SpanMap) -> Result<SpanMap, SpanError> {
        Ok(Span {
            leg_dst: self.leg_dst().tensor(other.leg_dst())?,
            leg_src: self.leg_src().tensor(other.leg_src())?,
        }
        .reduce())
    }

    /// Parses a span, reporting how many common carets had to be cancelled
    /// to reach the reduced form.
    pub fn parse_reporting(s: &str) -> Result<(SpanMap, usize), SpanError> {
        Ok(parse_span(s, None)?.reduce_counting())
    }

    pub fn parse_with_arity(s: &str, arity: Arity) -> Result<SpanMap, SpanError> {
        Ok(parse_span(s, Some(arity))?.reduce())
    }
}

fn parse_span(s: &str, arity: Option<Arity>) -> Result<Span, SpanError> {
    use crate::forest::parse::{infer_arity, Cursor};
    let mut c = Cursor::new(s);
    c.expect('<')?;
    let dst = c.forest_trees()?;
    c.expect('|')?;
    let src = c.forest_trees()?;
    c.expect('>')?;
    c.finish()?;
    let arity = match arity {
        Some(a) => a,
        None => infer_arity(dst.iter().chain(&src))?.unwrap_or_default(),
    };
    Span::new(Forest::new(arity, dst)?, Forest::new(arity, src)?)
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {}>", self.leg_dst, self.leg_src)
    }
}

impl fmt::Display for SpanMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Span {
    type Err = SpanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_span(s, None)
    }
}

impl FromStr for SpanMap {
    type Err = SpanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(parse_span(s, None)?.reduce())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Arity = Arity::BINARY;

    fn sm(s: &str) -> SpanMap {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Forest {
        s.parse().unwrap()
    }

    fn x0() -> SpanMap {
        sm("<[(l (l l))] | [((l l) l)]>")
    }

    #[test]
    fn make_examples() {
        assert_eq!(
            SpanMap::new(f("[l]"), f("[l]")).unwrap(),
            SpanMap::identity(1, B)
        );
        let alpha = SpanMap::new(f("[(l l)]"), Forest::identity(2, B)).unwrap();
        assert_eq!(alpha, SpanMap::alpha(B));
        assert_eq!((alpha.src(), alpha.dst(), alpha.apex()), (2, 1, 2));
        // the figure pair expanded at leaf 1 of both legs reduces back
        let big = SpanMap::new(f("[((l l) (l l))]"), f("[(((l l) l) l)]")).unwrap();
        assert_eq!(big, x0());
        assert!(matches!(
            SpanMap::new(f("[(l l)]"), f("[l]")),
            Err(SpanError::LeafCountMismatch { dst: 2, src: 1 })
        ));
    }

    #[test]
    fn reduce_examples() {
        let s: Span = "<[((l l) l)] | [((l l) l)]>".parse().unwrap();
        assert_eq!(s.reduce(), SpanMap::identity(1, B));
        let s: Span = "<[(l (l l))] | [((l l) l)]>".parse().unwrap();
        assert!(s.is_reduced());
        assert_eq!(s.reduce().span(), &s);
        let s: Span = "<[((l l) (l l))] | [(((l l) l) l)]>".parse().unwrap();
        assert_eq!(s.cancellable_carets(), vec![0]);
        let (r, n) = s.reduce_counting();
        assert_eq!(r, x0());
        assert_eq!(n, 1);
        let (r2, n2) = r.span().reduce_counting();
        assert_eq!((r2, n2), (r, 0));
    }

    #[test]
    fn compose_examples() {
        let x = x0();
        assert_eq!(SpanMap::identity(1, B).compose(&x).unwrap(), x);
        assert_eq!(x.compose(&SpanMap::identity(1, B)).unwrap(), x);
        assert_eq!(x.inverse().compose(&x).unwrap(), SpanMap::identity(1, B));
        assert_eq!(x.compose(&x.inverse()).unwrap(), SpanMap::identity(1, B));
        assert_eq!(
            x.compose(&x).unwrap(),
            sm("<[(l (l (l l)))] | [(((l l) l) l)]>")
        );
        assert_eq!(
            SpanMap::alpha(B).compose(&SpanMap::alpha(B)),
            Err(SpanError::ObjectMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(SpanMap::identity(1, B).inverse(), SpanMap::identity(1, B));
        assert_eq!(x0().inverse(), sm("<[((l l) l)] | [(l (l l))]>"));
        let ai = SpanMap::alpha(B).inverse();
        assert_eq!((ai.src(), ai.dst()), (1, 2));
        assert_eq!(ai.to_string(), "<[l l] | [(l l)]>");
    }

    #[test]
    fn tensor_examples() {
        let x = x0();
        assert_eq!(x.tensor(&SpanMap::identity(0, B)).unwrap(), x);
        let a = SpanMap::alpha(B);
        let aa = a.tensor(&a).unwrap();
        assert_eq!(aa.to_string(), "<[(l l) (l l)] | [l l l l]>");
        let xa = x.tensor(&a).unwrap();
        assert_eq!((xa.src(), xa.dst(), xa.apex()), (3, 2, 5));
        assert_eq!(xa.to_string(), "<[(l (l l)) (l l)] | [((l l) l) l l]>");
    }

    #[test]
    fn equality_examples() {
        let x = x0();
        for i in 1..=3 {
            let expanded = x.span().expand(i).unwrap().reduce();
            assert_eq!(expanded, x);
        }
        assert_ne!(x, SpanMap::identity(1, B));
        let x1 = sm("<[(l (l (l l)))] | [(l ((l l) l))]>");
        assert_ne!(x, x1);
    }

    #[test]
    fn eta_examples() {
        for k in 0..4 {
            assert_eq!(
                SpanMap::eta(&Forest::identity(k, B)),
                SpanMap::identity(k, B)
            );
        }
        assert_eq!(SpanMap::eta(&f("[(l l)]")), SpanMap::alpha(B));
        let g = f("[(l l) l]");
        let h = f("[l (l l) l]");
        assert_eq!(
            SpanMap::eta(&g.compose(&h).unwrap()),
            SpanMap::eta(&g).compose(&SpanMap::eta(&h)).unwrap()
        );
    }

    #[test]
    fn parse_reporting() {
        let (m, n) = SpanMap::parse_reporting("<[((l l) l)] | [((l l) l)]>").unwrap();
        assert!(m.is_identity());
        assert_eq!(n, 2);
        assert!("<[l] | [l l]>".parse::<SpanMap>().is_err());
        assert!("<[l] [l]>".parse::<SpanMap>().is_err());
        assert!("<[(l l l)] | [(l l)]>".parse::<SpanMap>().is_err());
        let t = SpanMap::parse_with_arity("<[l] | [l]>", Arity::new(3).unwrap()).unwrap();
        assert_eq!(t.arity().get(), 3);
    }
}

use std::collections::BTreeSet;

use super::{PlError, PlMap};
use crate::dyadic::Dyadic;
use crate::forest::{Arity, Forest, Tree};
use crate::span::SpanMap;

/// Left endpoints of the standard dyadic intervals cut out by the leaves of
/// `t` inside `[base, base + width]`.
fn leaf_starts(t: &Tree, base: Dyadic, width_log: i64, out: &mut Vec<(Dyadic, i64)>) {
    match t {
        Tree::Leaf => out.push((base, width_log)),
        Tree::Node(ch) => {
            let half = width_log - 1;
            let right = &base + &Dyadic::pow2(half);
            leaf_starts(&ch[0], base, half, out);
            leaf_starts(&ch[1], right, half, out);
        }
    }
}

/// The image of a binary forest `n -> k` under the PL functor: leaf `j` of
/// the `i`-th tree is sent affinely onto its standard dyadic subinterval of
/// `[i, i + 1]`.
pub fn mu_forest(f: &Forest) -> Result<PlMap, PlError> {
    if f.arity() != Arity::BINARY {
        return Err(PlError::UnsupportedArity(f.arity().get()));
    }
    let mut starts = Vec::with_capacity(f.leaves());
    for (i, t) in f.trees().iter().enumerate() {
        leaf_starts(t, Dyadic::from(i), 0, &mut starts);
    }
    let mut points: Vec<(Dyadic, Dyadic)> = starts
        .into_iter()
        .enumerate()
        .map(|(j, (y, _))| (Dyadic::from(j), y))
        .collect();
    points.push((Dyadic::from(f.leaves()), Dyadic::from(f.roots())));
    Ok(PlMap::from_trusted(f.leaves(), f.roots(), points))
}

/// The binary tree whose leaves cut `[lo, hi]` at exactly the given points,
/// each reached by repeated bisection.
fn tree_from_cuts(lo: &Dyadic, hi: &Dyadic, cuts: &BTreeSet<Dyadic>) -> Tree {
    if cuts.range(lo..hi).nth(1).is_none() {
        return Tree::Leaf;
    }
    let mid = Dyadic::midpoint(lo, hi);
    debug_assert!(cuts.contains(&mid), "cut points come from bisection");
    Tree::node(vec![
        tree_from_cuts(lo, &mid, cuts),
        tree_from_cuts(&mid, hi, cuts),
    ])
}

fn forest_from_cuts(k: usize, cuts: &BTreeSet<Dyadic>) -> Forest {
    let trees = (0..k)
        .map(|i| tree_from_cuts(&Dyadic::from(i), &Dyadic::from(i + 1), cuts))
        .collect();
    Forest::new(Arity::BINARY, trees).expect("binary trees")
}

impl PlMap {
    /// `μ_T ∘ μ_S⁻¹` for the span `[T, S]`.
    pub fn from_span(s: &SpanMap) -> Result<PlMap, PlError> {
        PlMap::from_legs(s.leg_dst(), s.leg_src())
    }

    /// `μ_T ∘ μ_S⁻¹` for any representative, reduced or not.
    pub fn from_legs(leg_dst: &Forest, leg_src: &Forest) -> Result<PlMap, PlError> {
        let dst = mu_forest(leg_dst)?;
        let src = mu_forest(leg_src)?;
        dst.compose(&src.inverse())
    }

    /// Forests `(S, T)` with `self = μ_T ∘ μ_S⁻¹` and `[T, S]` reduced.
    ///
    /// Each unit interval of the domain is bisected, leftmost first, until
    /// every piece is mapped linearly onto a standard dyadic interval of
    /// length at most one. The domain pieces give `S`, their images `T`.
    pub fn factorize(&self) -> (Forest, Forest) {
        let mut src_cuts = BTreeSet::new();
        let mut dst_cuts = BTreeSet::new();
        let mut stack: Vec<(Dyadic, Dyadic)> = (0..self.src)
            .rev()
            .map(|i| (Dyadic::from(i), Dyadic::from(i + 1)))
            .collect();
        while let Some((lo, hi)) = stack.pop() {
            let (ylo, yhi) = (self.apply(&lo), self.apply(&hi));
            if !self.has_break_inside(&lo, &hi) && is_standard(&ylo, &yhi) {
                src_cuts.insert(lo);
                dst_cuts.insert(ylo);
            } else {
                let mid = Dyadic::midpoint(&lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
        src_cuts.insert(Dyadic::from(self.src));
        dst_cuts.insert(Dyadic::from(self.dst));
        let s = forest_from_cuts(self.src, &src_cuts);
        let t = forest_from_cuts(self.dst, &dst_cuts);
        (s, t)
    }

    /// The reduced span representing `self`.
    pub fn to_span(&self) -> SpanMap {
        let (s, t) = self.factorize();
        SpanMap::new(t, s).expect("legs share an apex")
    }
}

/// `[lo, hi]` is `[j 2^k, (j+1) 2^k]` for some `k <= 0`.
fn is_standard(lo: &Dyadic, hi: &Dyadic) -> bool {
    match (hi - lo).log2() {
        Some(k) if k <= 0 => (lo.exp() as i64) <= -k,
        _ => false,
    }
}

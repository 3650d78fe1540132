//! Independent rational-arithmetic oracle for PL values of tree pairs.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thompson_f::{Dyadic, Forest, SpanMap, Tree};

pub fn rat(d: &Dyadic) -> BigRational {
    BigRational::new(d.numerator().clone(), BigInt::one() << d.exp())
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn intervals(
    t: &Tree,
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    match t {
        Tree::Leaf => out.push((lo, hi)),
        Tree::Node(ch) => {
            let k = BigRational::from_integer(BigInt::from(ch.len()));
            let width = (&hi - &lo) / k;
            for (i, c) in ch.iter().enumerate() {
                let a = &lo + &width * BigRational::from_integer(BigInt::from(i));
                let b = &a + &width;
                intervals(c, a, b, out);
            }
        }
    }
}

/// The subinterval of `[i, i + 1]` cut out by each leaf, in leaf order.
pub fn leaf_intervals(f: &Forest) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    for (i, t) in f.trees().iter().enumerate() {
        let lo = BigRational::from_integer(BigInt::from(i));
        let hi = &lo + BigRational::one();
        intervals(t, lo, hi, &mut out);
    }
    out
}

/// Sends the `j`-th domain leaf interval affinely onto the `j`-th codomain
/// leaf interval.
pub fn eval_span(s: &SpanMap, x: &BigRational) -> BigRational {
    let src = leaf_intervals(s.leg_src());
    let dst = leaf_intervals(s.leg_dst());
    let j = src
        .iter()
        .position(|(a, b)| a <= x && x <= b)
        .expect("x in the domain");
    let (a, b) = &src[j];
    let (c, d) = &dst[j];
    c + (x - a) * (d - c) / (b - a)
}

/// Breakpoints of the map of `s`, collinear points removed.
pub fn breakpoints(s: &SpanMap) -> Vec<(BigRational, BigRational)> {
    let src = leaf_intervals(s.leg_src());
    let dst = leaf_intervals(s.leg_dst());
    let mut pts: Vec<(BigRational, BigRational)> = src
        .iter()
        .zip(&dst)
        .map(|((a, _), (c, _))| (a.clone(), c.clone()))
        .collect();
    if let (Some((_, b)), Some((_, d))) = (src.last(), dst.last()) {
        pts.push((b.clone(), d.clone()));
    } else {
        pts.push((BigRational::zero(), BigRational::zero()));
    }
    let slope = |p: &(BigRational, BigRational), r: &(BigRational, BigRational)| {
        (&r.1 - &p.1) / (&r.0 - &p.0)
    };
    let mut out: Vec<(BigRational, BigRational)> = Vec::new();
    for p in pts {
        if out.len() >= 2 {
            let n = out.len();
            if slope(&out[n - 2], &out[n - 1]) == slope(&out[n - 1], &p) {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

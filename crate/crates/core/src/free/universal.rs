use std::collections::HashSet;

use crate::forest::{enumerate_forests, enumerate_trees, Arity, Forest, Tree};
use crate::pl::PlMap;
use crate::span::{Span, SpanMap};
use crate::verify::Report;

/// The value any monoidal functor with `α ↦ halving` must take on the
/// forest `f`, computed from the decomposition of each tree into carets.
fn forced(f: &Forest) -> PlMap {
    fn tree(t: &Tree) -> PlMap {
        match t {
            Tree::Leaf => PlMap::identity(1),
            Tree::Node(ch) => PlMap::halving()
                .compose(&tree(&ch[0]).tensor(&tree(&ch[1])))
                .expect("2 -> 1 after 2 roots"),
        }
    }
    f.trees()
        .iter()
        .fold(PlMap::identity(0), |acc, t| acc.tensor(&tree(t)))
}

/// `η` of a tree rebuilt from `α`, identities, composition and tensor.
fn eta_generated(t: &Tree) -> SpanMap {
    let b = Arity::BINARY;
    match t {
        Tree::Leaf => SpanMap::identity(1, b),
        Tree::Node(ch) => {
            let inner = eta_generated(&ch[0])
                .tensor(&eta_generated(&ch[1]))
                .expect("binary");
            SpanMap::alpha(b)
                .compose(&inner)
                .expect("2 -> 1 after 2 roots")
        }
    }
}

/// Bounded check that the span-to-PL map is the unique monoidal functor out
/// of the span groupoid sending `α` to halving: every span with apex at most
/// `bound` is checked.
pub fn universal_property_check(bound: usize) -> Report {
    let b = Arity::BINARY;
    let mut report = Report::new(format!("universal property, apex <= {bound}"));

    let mut raw: Vec<Span> = Vec::new();
    for p in 0..=bound {
        let forests: Vec<Forest> = (0..=p).flat_map(|k| enumerate_forests(p, k, b)).collect();
        for t in &forests {
            for s in &forests {
                raw.push(Span::new(t.clone(), s.clone()).expect("same apex"));
            }
        }
    }
    let mut seen = HashSet::new();
    let reduced: Vec<SpanMap> = raw
        .iter()
        .map(Span::reduce)
        .filter(|s| seen.insert(s.clone()))
        .collect();
    let images: Vec<PlMap> = reduced
        .iter()
        .map(|s| PlMap::from_span(s).expect("binary"))
        .collect();

    let ids = (0..=bound)
        .all(|k| PlMap::from_span(&SpanMap::identity(k, b)).as_ref() == Ok(&PlMap::identity(k)));
    report.push("identities", ids, format!("objects 0..={bound}"));
    let alpha = SpanMap::alpha(b);
    let a_ok = PlMap::from_span(&alpha).as_ref() == Ok(&PlMap::halving());
    let doubling = PlMap::new(
        1,
        2,
        vec![(0i64.into(), 0i64.into()), (1i64.into(), 2i64.into())],
    );
    let ai_ok = PlMap::from_span(&alpha.inverse()).ok() == doubling.ok();
    report.push("alpha and its inverse", a_ok && ai_ok, "halving, doubling");

    let eta_ok = (1..=bound.max(1)).all(|n| {
        enumerate_trees(n, b).iter().all(|t| {
            let f = Forest::single(b, t.clone()).expect("binary");
            eta_generated(t) == SpanMap::eta(&f)
        })
    });
    report.push("eta generated by alpha", eta_ok, "every tree");

    let factor_ok = reduced.iter().all(|s| {
        let f = SpanMap::eta(s.leg_dst())
            .compose(&SpanMap::eta(s.leg_src()).inverse())
            .expect("same apex");
        &f == s
    });
    report.push(
        "factorization",
        factor_ok,
        format!("{} reduced spans", reduced.len()),
    );

    let forced_ok = reduced.iter().zip(&images).all(|(s, img)| {
        let g = forced(s.leg_dst())
            .compose(&forced(s.leg_src()).inverse())
            .expect("same apex");
        &g == img
    });
    report.push("forced image", forced_ok, "G([T,S]) = G(eta T) G(eta S)^-1");

    let indep = raw.iter().all(|r| {
        let via_reduced = PlMap::from_span(&r.reduce()).expect("binary");
        PlMap::from_legs(r.leg_dst(), r.leg_src()).as_ref() == Ok(&via_reduced)
    });
    report.push(
        "representative independence",
        indep,
        format!("{} representatives", raw.len()),
    );

    let round = reduced
        .iter()
        .zip(&images)
        .all(|(s, img)| &img.to_span() == s);
    let distinct: HashSet<&PlMap> = images.iter().collect();
    report.push(
        "inverse to factorization",
        round && distinct.len() == images.len(),
        "injective on reduced spans",
    );

    let small: Vec<(usize, &SpanMap, &PlMap)> = reduced
        .iter()
        .zip(&images)
        .filter(|(s, _)| s.apex() <= 3)
        .map(|(s, i)| (s.src(), s, i))
        .collect();
    let (mut comp_ok, mut tens_ok, mut pairs) = (true, true, 0usize);
    for (s, img) in reduced.iter().zip(&images) {
        for &(g_src, g, g_img) in &small {
            if g_src == s.dst() {
                let lhs = PlMap::from_span(&g.compose(s).expect("composable")).expect("binary");
                comp_ok &= g_img.compose(img).as_ref() == Ok(&lhs);
                pairs += 1;
            }
            let lhs = PlMap::from_span(&s.tensor(g).expect("binary")).expect("binary");
            tens_ok &= lhs == img.tensor(g_img);
        }
    }
    report.push("composition", comp_ok, format!("{pairs} composable pairs"));
    report.push("tensor", tens_ok, "monoidal");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_at_small_bounds() {
        for bound in [0, 1, 4] {
            let r = universal_property_check(bound);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn forced_agrees_with_mu() {
        let f: Forest = "[((l l) l) l (l l)]".parse().unwrap();
        assert_eq!(forced(&f), crate::pl::mu_forest(&f).unwrap());
    }
}

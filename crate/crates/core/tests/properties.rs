mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson_f::{Arity, Context, Dyadic, Forest, GroupElement, PlMap, SpanMap, Word};

use common::{breakpoints, eval_span, rat};

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-1_000_000i64..1_000_000, 0u64..40).prop_map(|(n, e)| Dyadic::new(n, e))
}

fn arity() -> impl Strategy<Value = Arity> {
    (2usize..=4).prop_map(|k| Arity::new(k).unwrap())
}

/// A random forest with `roots` roots and `carets` carets.
fn forest(a: Arity, roots: usize, carets: usize, seed: u64) -> Forest {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Forest::random(a, roots, roots + carets * (a.get() - 1), &mut rng).unwrap()
}

/// A random reduced automorphism of `k` with legs of `carets` carets.
fn span(a: Arity, k: usize, carets: usize, seed: u64) -> SpanMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let apex = k + carets * (a.get() - 1);
    let d = Forest::random(a, k, apex, &mut rng).unwrap();
    let s = Forest::random(a, k, apex, &mut rng).unwrap();
    SpanMap::new(d, s).unwrap()
}

fn element(ctx: Context, seed: u64, size: usize) -> GroupElement {
    GroupElement::random(ctx, seed, size)
}

fn context() -> impl Strategy<Value = Context> {
    prop_oneof![
        Just(Context::F),
        Just(Context::new(2, 2).unwrap()),
        Just(Context::new(3, 1).unwrap()),
        Just(Context::new(3, 2).unwrap()),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..2, any::<bool>()), 0..10).prop_map(|ls| {
        ls.into_iter().fold(Word(Vec::new()), |w, (g, inv)| {
            w.then(&Word::letter(g, inv))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dyadic_ring_matches_rationals(a in dyadic(), b in dyadic(), c in dyadic()) {
        prop_assert_eq!(rat(&(&a + &b)), rat(&a) + rat(&b));
        prop_assert_eq!(rat(&(&a - &b)), rat(&a) - rat(&b));
        prop_assert_eq!(rat(&(&a * &b)), rat(&a) * rat(&b));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        prop_assert_eq!(a.cmp(&b), rat(&a).cmp(&rat(&b)));
    }

    #[test]
    fn dyadic_is_normalized(n in -1_000_000i64..1_000_000, e in 0u64..40, shift in 0u64..10) {
        let d = Dyadic::new(BigInt::from(n) << shift, e + shift);
        prop_assert_eq!(&d, &Dyadic::new(n, e));
        prop_assert!(d.exp() == 0 || d.numerator() % 2 != BigInt::from(0));
        let back: Dyadic = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn forest_category_laws(a in arity(), k in 1usize..4, c1 in 0usize..4, c2 in 0usize..4, c3 in 0usize..4, seed: u64) {
        let f = forest(a, k, c1, seed);
        let g = forest(a, f.leaves(), c2, seed ^ 1);
        let h = forest(a, g.leaves(), c3, seed ^ 2);
        prop_assert_eq!(f.compose(&Forest::identity(f.leaves(), a)).unwrap(), f.clone());
        prop_assert_eq!(Forest::identity(k, a).compose(&f).unwrap(), f.clone());
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let t = f.tensor(&g).unwrap();
        prop_assert_eq!(t.roots(), f.roots() + g.roots());
        prop_assert_eq!(t.leaves(), f.leaves() + g.leaves());
    }

    #[test]
    fn pullback_commutes_and_is_symmetric(a in arity(), k in 1usize..4, c1 in 0usize..5, c2 in 0usize..5, seed: u64) {
        let f = forest(a, k, c1, seed);
        let g = forest(a, k, c2, seed.wrapping_add(7));
        let p = f.pullback(&g).unwrap();
        prop_assert_eq!(f.compose(&p.left).unwrap(), g.compose(&p.right).unwrap());
        // symmetric, and trivial on equal legs
        let q = g.pullback(&f).unwrap();
        prop_assert_eq!((&q.left, &q.right), (&p.right, &p.left));
        let r = f.pullback(&f).unwrap();
        prop_assert!(r.left.is_identity() && r.right.is_identity());
    }

    #[test]
    fn join_is_least_upper_bound(a in arity(), c1 in 0usize..5, c2 in 0usize..5, seed: u64) {
        let t = forest(a, 1, c1, seed).trees()[0].clone();
        let u = forest(a, 1, c2, seed ^ 3).trees()[0].clone();
        let j = t.join(&u).unwrap();
        prop_assert!(t.is_subtree_of(&j) && u.is_subtree_of(&j));
        prop_assert_eq!(t.join(&j).unwrap(), j.clone());
        prop_assert_eq!(u.join(&t).unwrap(), j);
    }

    #[test]
    fn span_groupoid_laws(a in arity(), k in 1usize..3, c in 0usize..5, seed: u64) {
        let f = span(a, k, c, seed);
        let g = span(a, k, c, seed ^ 5);
        let h = span(a, k, c, seed ^ 9);
        let id = SpanMap::identity(k, a);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert_eq!(
            f.compose(&g).unwrap().compose(&h).unwrap(),
            f.compose(&g.compose(&h).unwrap()).unwrap()
        );
        prop_assert!(f.span().is_reduced());
        prop_assert_eq!(f.span().reduce(), f.clone());
    }

    #[test]
    fn expansion_reduces_back(a in arity(), c in 0usize..4, picks in proptest::collection::vec(any::<u16>(), 0..4), seed: u64) {
        let f = span(a, 1, c, seed);
        let mut s = f.span().clone();
        for p in picks {
            let i = 1 + usize::from(p) % s.apex();
            s = s.expand(i).unwrap();
        }
        prop_assert_eq!(s.reduce(), f);
    }

    #[test]
    fn group_axioms(ctx in context(), s1: u64, s2: u64, s3: u64) {
        let (a, b, c) = (element(ctx, s1, 10), element(ctx, s2, 10), element(ctx, s3, 10));
        let e = GroupElement::identity(ctx);
        prop_assert_eq!(a.multiply(&e).unwrap(), a.clone());
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&b).unwrap().inverse(), b.inverse().multiply(&a.inverse()).unwrap());
    }

    #[test]
    fn pl_functor(s1: u64, s2: u64, x in 0u64..=1 << 24) {
        let (a, b) = (element(Context::F, s1, 12), element(Context::F, s2, 12));
        let ab = a.multiply(&b).unwrap();
        let pa = PlMap::from_span(a.span()).unwrap();
        let pb = PlMap::from_span(b.span()).unwrap();
        let pab = PlMap::from_span(ab.span()).unwrap();
        prop_assert_eq!(pb.compose(&pa).unwrap(), pab.clone());
        prop_assert_eq!(&pa.to_span(), a.span());
        prop_assert_eq!(pa.inverse(), PlMap::from_span(a.inverse().span()).unwrap());
        let x = Dyadic::new(x, 24);
        prop_assert_eq!(pa.apply_inverse(&pa.apply(&x)), x.clone());
        prop_assert_eq!(rat(&pab.apply(&x)), eval_span(b.span(), &eval_span(a.span(), &rat(&x))));
    }

    #[test]
    fn pl_breakpoints_match_oracle(k in 1usize..3, c in 0usize..6, seed: u64) {
        let f = span(Arity::BINARY, k, c, seed);
        let p = PlMap::from_span(&f).unwrap();
        let pts: Vec<(BigRational, BigRational)> =
            p.points().iter().map(|(x, y)| (rat(x), rat(y))).collect();
        prop_assert_eq!(pts, breakpoints(&f));
        prop_assert_eq!(p.to_span(), f);
    }

    #[test]
    fn printing_round_trips(ctx in context(), seed: u64, w in word()) {
        let g = element(ctx, seed, 12);
        let text = g.to_string();
        let back = SpanMap::parse_with_arity(&text, ctx.arity()).unwrap();
        prop_assert_eq!(&back, g.span());
        let f = g.span().leg_src();
        prop_assert_eq!(&Forest::parse_with_arity(&f.to_string(), ctx.arity()).unwrap(), f);
        if ctx == Context::F {
            let p = PlMap::from_span(g.span()).unwrap();
            prop_assert_eq!(p.to_string().parse::<PlMap>().unwrap(), p);
        }
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn words_evaluate_consistently(u in word(), v in word()) {
        let gu = GroupElement::from_word(&u).unwrap();
        let gv = GroupElement::from_word(&v).unwrap();
        prop_assert_eq!(GroupElement::from_word(&u.then(&v)).unwrap(), gu.multiply(&gv).unwrap());
        prop_assert_eq!(GroupElement::from_word(&u.inverse()).unwrap(), gu.inverse());
        let pl = thompson_f::verify::pl_word(&u);
        prop_assert_eq!(PlMap::from_span(gu.span()).unwrap(), pl);
    }
}

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::random_span;
use super::Report;
use crate::forest::{enumerate_trees, Arity, Forest};
use crate::group::{Context, GroupElement, Word};
use crate::pl::{mu_forest, PlMap};
use crate::span::{Span, SpanMap};

/// `x0` and `x1` written directly as PL maps, independently of any span.
pub fn pl_generator(i: usize) -> PlMap {
    let text = match i {
        0 => "0:0,1/4:1/2,1/2:3/4,1:1",
        1 => "0:0,1/2:1/2,5/8:3/4,3/4:7/8,1:1",
        _ => panic!("F is generated by x0 and x1"),
    };
    text.parse().expect("valid generator")
}

/// Evaluates a word in the PL model: letters act left to right.
pub fn pl_word(w: &Word) -> PlMap {
    let gens = [pl_generator(0), pl_generator(1)];
    w.0.iter().fold(PlMap::identity(1), |acc, l| {
        let g = &gens[l.generator];
        let g = if l.inverse { g.inverse() } else { g.clone() };
        g.compose(&acc).expect("maps 1 -> 1")
    })
}

fn pl_of(g: &GroupElement) -> PlMap {
    PlMap::from_span(g.span()).expect("binary")
}

/// Associativity, unit, inverses and the apex congruence in `F(n, r)`.
pub fn group_axioms(n: usize, r: usize, seed: u64, samples: usize, size: usize) -> Report {
    let ctx = Context::new(n, r).expect("valid context");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new(format!("group axioms in {ctx}, apex <= {size}"));
    let e = GroupElement::identity(ctx);
    let (mut assoc, mut unit, mut inv, mut cong) = (true, true, true, true);
    for _ in 0..samples {
        let a = GroupElement::random_with(ctx, &mut rng, size);
        let b = GroupElement::random_with(ctx, &mut rng, size);
        let c = GroupElement::random_with(ctx, &mut rng, size);
        let lhs = a.multiply(&b).and_then(|ab| ab.multiply(&c));
        let rhs = b.multiply(&c).and_then(|bc| a.multiply(&bc));
        assoc &= lhs.is_ok() && lhs == rhs;
        unit &= e.multiply(&a).as_ref() == Ok(&a) && a.multiply(&e).as_ref() == Ok(&a);
        inv &= a.multiply(&a.inverse()).is_ok_and(|x| x.is_identity());
        inv &= a.inverse().multiply(&a).is_ok_and(|x| x.is_identity());
        for x in [&a, &b, &c] {
            cong &= (x.span().apex() - r).is_multiple_of(n - 1);
        }
    }
    rep.push("associativity", assoc, format!("{samples} triples"));
    rep.push("unit", unit, format!("{samples} elements"));
    rep.push("inverses", inv, format!("{samples} elements"));
    rep.push("apex congruent to r mod n-1", cong, "");
    rep
}

/// The two relations of the finite presentation, evaluated separately by
/// the span engine and by the PL model, plus non-commutativity.
pub fn relations() -> Report {
    let mut rep = Report::new("presentation of F");
    let words = [
        ("[x0 x1^-1, x0^-1 x1 x0]", "x0 x1^-1", "x0^-1 x1 x0"),
        (
            "[x0 x1^-1, x0^-2 x1 x0^2]",
            "x0 x1^-1",
            "x0^-1 x0^-1 x1 x0 x0",
        ),
    ];
    for (name, a, b) in words {
        let a: Word = a.parse().expect("valid word");
        let b: Word = b.parse().expect("valid word");
        let w = Word::commutator(&a, &b);
        let span_ok = GroupElement::from_word(&w).is_ok_and(|g| g.is_identity());
        let pl_ok = pl_word(&w) == PlMap::identity(1);
        rep.push(format!("{name} (spans)"), span_ok, w.to_string());
        rep.push(format!("{name} (PL)"), pl_ok, "");
    }
    let x0 = GroupElement::generator(0).expect("generator");
    let x1 = GroupElement::generator(1).expect("generator");
    let c = GroupElement::commutator(&x0, &x1).expect("same context");
    rep.push("x0 x1 != x1 x0", !c.is_identity(), c.to_string());
    let pl_gens = pl_generator(0) == pl_of(&x0) && pl_generator(1) == pl_of(&x1);
    rep.push("generators agree", pl_gens, "");
    rep
}

/// `x0` against the breakpoints `(0,0), (1/4,1/2), (1/2,3/4), (1,1)`.
pub fn figure_correspondence() -> Report {
    let mut rep = Report::new("x0 as a tree pair and as a PL map");
    let span: SpanMap = "<[(l (l l))] | [((l l) l)]>".parse().expect("valid span");
    let pl: PlMap = "0:0,1/4:1/2,1/2:3/4,1:1".parse().expect("valid map");
    let to = PlMap::from_span(&span);
    rep.push(
        "to-pl",
        to.as_ref() == Ok(&pl),
        to.map(|p| p.to_string()).unwrap_or_default(),
    );
    let from = pl.to_span();
    rep.push("from-pl", from == span, from.to_string());
    rep
}

/// The span-to-PL map is a homomorphism on random pairs, and factorization
/// inverts it.
pub fn homomorphism(seed: u64, samples: usize, size: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new(format!("spans -> PL on F, apex <= {size}"));
    let (mut hom, mut back) = (true, true);
    for _ in 0..samples {
        let a = GroupElement::random_with(Context::F, &mut rng, size);
        let b = GroupElement::random_with(Context::F, &mut rng, size);
        let ab = a.multiply(&b).expect("same context");
        let (pa, pb) = (pl_of(&a), pl_of(&b));
        hom &= pb.compose(&pa).as_ref() == Ok(&pl_of(&ab));
        back &= &pa.to_span() == a.span() && &pb.to_span() == b.span();
    }
    rep.push("product", hom, format!("{samples} pairs"));
    rep.push("factorization inverts", back, "");
    rep
}

/// Distinct reduced tree pairs with apex at most `bound` have distinct PL
/// images.
pub fn injectivity(bound: usize) -> Report {
    let b = Arity::BINARY;
    let mut rep = Report::new(format!("injectivity on F, apex <= {bound}"));
    let mut seen = HashSet::new();
    let mut images = HashSet::new();
    for n in 1..=bound {
        let trees = enumerate_trees(n, b);
        for t in &trees {
            for s in &trees {
                let sp = Span::new(
                    Forest::single(b, t.clone()).expect("binary"),
                    Forest::single(b, s.clone()).expect("binary"),
                )
                .expect("same apex");
                if sp.is_reduced() && seen.insert(sp.clone()) {
                    images.insert(PlMap::from_legs(sp.leg_dst(), sp.leg_src()).expect("binary"));
                }
            }
        }
    }
    rep.push(
        "distinct images",
        images.len() == seen.len(),
        format!("{} reduced pairs", seen.len()),
    );
    rep
}

/// `μ` on forests preserves composition, identities and tensor.
pub fn mu_functoriality(seed: u64, samples: usize, size: usize) -> Report {
    let b = Arity::BINARY;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new("mu: forests -> PL");
    let (mut comp, mut ids, mut tens) = (true, true, true);
    for _ in 0..samples {
        let j = rng.gen_range(1..=3);
        let k = j + rng.gen_range(0..=size / 2);
        let n = k + rng.gen_range(0..=size / 2);
        let g = Forest::random(b, j, k, &mut rng).expect("k >= j");
        let f = Forest::random(b, k, n, &mut rng).expect("n >= k");
        let gf = g.compose(&f).expect("composable");
        let (mg, mf) = (
            mu_forest(&g).expect("binary"),
            mu_forest(&f).expect("binary"),
        );
        comp &= mg.compose(&mf).ok() == mu_forest(&gf).ok();
        ids &= mu_forest(&Forest::identity(n, b)).ok() == Some(PlMap::identity(n));
        tens &= mu_forest(&g.tensor(&f).expect("binary")).ok() == Some(mg.tensor(&mf));
    }
    rep.push("composition", comp, format!("{samples} pairs"));
    rep.push("identities", ids, "");
    rep.push("tensor", tens, "");
    rep
}

/// Factorization of PL maps built without spans, minimality of the result,
/// and independence of the chosen representative.
pub fn pl_round_trip(seed: u64, samples: usize, size: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new("PL -> spans -> PL");
    let (mut round, mut minimal, mut indep) = (true, true, true);
    for _ in 0..samples {
        let len = rng.gen_range(0..=size);
        let w = Word(
            (0..len)
                .map(|_| crate::group::Letter {
                    generator: rng.gen_range(0..2),
                    inverse: rng.gen_bool(0.5),
                })
                .collect(),
        );
        let phi = pl_word(&w).tensor(&PlMap::halving().inverse());
        let (s, t) = phi.factorize();
        minimal &= Span::new(t.clone(), s.clone()).is_ok_and(|sp| sp.is_reduced());
        round &= PlMap::from_span(&phi.to_span()).as_ref() == Ok(&phi);

        let objs = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let x = random_span(&mut rng, objs.0, objs.1, size);
        let mut raw = x.span().clone();
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(1..=raw.apex());
            raw = raw.expand(i).expect("leaf in range");
        }
        indep &= PlMap::from_legs(raw.leg_dst(), raw.leg_src()).ok() == PlMap::from_span(&x).ok();
    }
    rep.push("round trip", round, format!("{samples} maps"));
    rep.push("factorization is reduced", minimal, "");
    rep.push(
        "representative independence",
        indep,
        format!("{samples} expanded spans"),
    );
    rep
}

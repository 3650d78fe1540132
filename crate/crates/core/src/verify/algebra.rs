use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Report;
use crate::dyadic::Dyadic;
use crate::forest::{enumerate_forests, enumerate_trees, Arity, Forest, Tree};
use crate::span::{Span, SpanMap};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_dyadic<R: Rng>(rng: &mut R) -> Dyadic {
    let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
    Dyadic::new(
        BigInt::from(num) << rng.gen_range(0..8u32),
        rng.gen_range(0..40),
    )
}

/// Ring laws, normal-form uniqueness and `log2_ratio`.
pub fn dyadic_laws(seed: u64, samples: usize) -> Report {
    let mut rng = rng(seed);
    let mut r = Report::new("dyadic arithmetic");
    let (mut ring, mut normal, mut ratio) = (true, true, true);
    for _ in 0..samples {
        let (a, b, c) = (
            random_dyadic(&mut rng),
            random_dyadic(&mut rng),
            random_dyadic(&mut rng),
        );
        ring &= &a + &b == &b + &a && &a * &b == &b * &a;
        ring &= &(&a + &b) + &c == &a + &(&b + &c);
        ring &= &(&a * &b) * &c == &a * &(&b * &c);
        ring &= &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        ring &= &(&a - &b) + &b == a;

        // value equality by cross-multiplication
        let same_value = a.numerator() << b.exp() == b.numerator() << a.exp();
        normal &= same_value == (a == b);
        let shifted = Dyadic::new(a.numerator() << 5u32, a.exp() + 5);
        normal &= shifted == a;

        let k: i64 = rng.gen_range(-30..=30);
        let base = b.abs();
        if base.is_positive() {
            let scaled = base.scale_pow2(k);
            ratio &= Dyadic::log2_ratio(&scaled, &base) == Ok(k);
            ratio &= &base * &Dyadic::pow2(k) == scaled;
        }
    }
    r.push("ring laws", ring, format!("{samples} triples"));
    r.push("normal form", normal, "value-equal iff field-equal");
    r.push("log2 ratio", ratio, "a = b 2^k");
    r
}

/// Number of `arity`-ary trees with `n` leaves, from the recurrence
/// `t(1) = 1`, `t(n) = Σ t(a_1)...t(a_k)` over compositions of `n`.
fn recurrence_counts(max: usize, arity: usize) -> Vec<u128> {
    let mut t = vec![0u128; max + 1];
    if max >= 1 {
        t[1] = 1;
    }
    for n in 2..=max {
        // k-fold convolution of t restricted to parts < n
        let mut conv = vec![0u128; n + 1];
        conv[0] = 1;
        for _ in 0..arity {
            let mut next = vec![0u128; n + 1];
            for (s, &c) in conv.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a in 1..n {
                    if s + a <= n {
                        next[s + a] += c * t[a];
                    }
                }
            }
            conv = next;
        }
        t[n] = conv[n];
    }
    t
}

/// `enumerate_trees` against the recurrence.
pub fn tree_counts(max_binary: usize, max_ternary: usize) -> Report {
    let mut r = Report::new("tree counts");
    for (arity, max) in [(2, max_binary), (3, max_ternary)] {
        let want = recurrence_counts(max, arity);
        let a = Arity::new(arity).expect("arity >= 2");
        let got: Vec<u128> = (0..=max)
            .map(|n| {
                let mut ts = enumerate_trees(n, a);
                let len = ts.len();
                ts.sort();
                ts.dedup();
                if ts.len() == len && ts.iter().all(|t| t.leaf_count() == n) {
                    len as u128
                } else {
                    u128::MAX
                }
            })
            .collect();
        let shown: Vec<String> = got.iter().skip(1).map(u128::to_string).collect();
        r.push(
            format!("arity {arity}, n <= {max}"),
            got == want,
            shown.join(","),
        );
    }
    r
}

/// A composable chain `h: m -> n`, `f: n -> k`, `g: k -> j`.
fn random_chain<R: Rng>(rng: &mut R, size: usize) -> [Forest; 3] {
    let b = Arity::BINARY;
    let step = (size / 3).max(1);
    let j = rng.gen_range(1..=3);
    let k = j + rng.gen_range(0..=step);
    let n = k + rng.gen_range(0..=step);
    let m = n + rng.gen_range(0..=step);
    [
        Forest::random(b, n, m, rng).expect("m >= n"),
        Forest::random(b, k, n, rng).expect("n >= k"),
        Forest::random(b, j, k, rng).expect("k >= j"),
    ]
}

/// Category and monoidal laws in the forest category.
pub fn forest_laws(seed: u64, samples: usize, size: usize) -> Report {
    let mut rng = rng(seed);
    let b = Arity::BINARY;
    let mut r = Report::new("forest category");
    let (mut assoc, mut unit, mut interchange) = (true, true, true);
    for _ in 0..samples {
        let [h, f, g] = random_chain(&mut rng, size);
        let lhs = g.compose(&f).and_then(|gf| gf.compose(&h));
        let rhs = f.compose(&h).and_then(|fh| g.compose(&fh));
        assoc &= lhs.is_ok() && lhs == rhs;
        unit &= Forest::identity(f.roots(), b).compose(&f).as_ref() == Ok(&f);
        unit &= f.compose(&Forest::identity(f.leaves(), b)).as_ref() == Ok(&f);

        let [_, f2, g2] = random_chain(&mut rng, size);
        let lhs = g.tensor(&g2).and_then(|gg| gg.compose(&f.tensor(&f2)?));
        let rhs = g.compose(&f).and_then(|gf| gf.tensor(&g2.compose(&f2)?));
        interchange &= lhs.is_ok() && lhs == rhs;
    }
    r.push("associativity", assoc, format!("{samples} chains"));
    r.push("identities", unit, format!("{samples} forests"));
    r.push("interchange", interchange, format!("{samples} pairs"));
    r
}

/// Join is the least common supertree, checked over all trees with at most
/// `max_leaves` leaves.
pub fn join_laws(max_leaves: usize) -> Report {
    let b = Arity::BINARY;
    let trees: Vec<Tree> = (1..=max_leaves)
        .flat_map(|n| enumerate_trees(n, b))
        .collect();
    let mut r = Report::new(format!("join of trees, leaves <= {max_leaves}"));
    let (mut upper, mut comm, mut least) = (true, true, true);
    let mut pairs = 0usize;
    for s in &trees {
        for t in &trees {
            let j = s.join(t).expect("binary");
            upper &= s.is_subtree_of(&j) && t.is_subtree_of(&j);
            comm &= t.join(s).as_ref() == Ok(&j);
            for u in &trees {
                if s.is_subtree_of(u) && t.is_subtree_of(u) {
                    least &= j.is_subtree_of(u);
                }
            }
            pairs += 1;
        }
    }
    r.push("upper bound", upper, format!("{pairs} pairs"));
    r.push("commutative", comm, "");
    r.push("least", least, "against every common supertree");
    r
}

/// `s ∘ cofactors(s, r) = r`, and replaying the ω-factorization of `r`
/// over `s` rebuilds `r`.
pub fn cofactor_roundtrip(max_leaves: usize) -> Report {
    let b = Arity::BINARY;
    let trees: Vec<Tree> = (1..=max_leaves)
        .flat_map(|n| enumerate_trees(n, b))
        .collect();
    let mut r = Report::new(format!("cofactors, leaves <= {max_leaves}"));
    let (mut cof, mut omega, mut reject) = (true, true, true);
    let mut pairs = 0usize;
    for big in &trees {
        for small in &trees {
            if !small.is_subtree_of(big) {
                reject &= small.cofactors(big, b).is_err();
                continue;
            }
            pairs += 1;
            let single = Forest::single(b, small.clone()).expect("binary");
            let c = small.cofactors(big, b).expect("subtree");
            cof &= single.compose(&c).ok() == Forest::single(b, big.clone()).ok();
            let steps = small.omega_factorization(big, b).expect("subtree");
            let mut cur = small.clone();
            for (n, i) in steps {
                omega &= cur.leaf_count() == n;
                cur = cur.omega(i, b).expect("index in range");
            }
            omega &= &cur == big;
        }
    }
    r.push("cofactors recompose", cof, format!("{pairs} pairs"));
    r.push("omega factorization", omega, "");
    r.push("non-subtrees rejected", reject, "");
    r
}

/// Pullbacks of random cospans `m -> k <- m'` commute, and every commuting
/// cone with apex at most `max_apex` factors through the square by exactly
/// one forest (found by exhaustive search).
pub fn pullback_universality(seed: u64, cospans: usize, max_leg: usize, max_apex: usize) -> Report {
    let b = Arity::BINARY;
    let mut rng = rng(seed);
    let mut r = Report::new(format!(
        "pullbacks: {cospans} cospans, legs <= {max_leg}, cones <= {max_apex}"
    ));
    let mut homs: HashMap<(usize, usize), Vec<Forest>> = HashMap::new();
    let mut hom = |q: usize, m: usize| -> Vec<Forest> {
        homs.entry((q, m))
            .or_insert_with(|| enumerate_forests(q, m, b))
            .clone()
    };
    let (mut commute, mut universal) = (true, true);
    let mut cones = 0usize;
    for _ in 0..cospans {
        let k = rng.gen_range(1..=max_leg.clamp(1, 3));
        let m1 = rng.gen_range(k..=max_leg.max(k));
        let m2 = rng.gen_range(k..=max_leg.max(k));
        let f = Forest::random(b, k, m1, &mut rng).expect("m >= k");
        let g = Forest::random(b, k, m2, &mut rng).expect("m' >= k");
        let pb = f.pullback(&g).expect("same codomain");
        commute &= f.compose(&pb.left).ok() == g.compose(&pb.right).ok();

        for q in 0..=max_apex {
            let mut mediated: HashMap<(Forest, Forest), usize> = HashMap::new();
            for h in hom(q, pb.apex) {
                let key = (
                    pb.left.compose(&h).expect("composable"),
                    pb.right.compose(&h).expect("composable"),
                );
                *mediated.entry(key).or_default() += 1;
            }
            let mut by_composite: HashMap<Forest, Vec<Forest>> = HashMap::new();
            for a in hom(q, m1) {
                by_composite
                    .entry(f.compose(&a).expect("composable"))
                    .or_default()
                    .push(a);
            }
            let mut found = 0usize;
            for bb in hom(q, m2) {
                let c = g.compose(&bb).expect("composable");
                for a in by_composite.get(&c).into_iter().flatten() {
                    found += 1;
                    universal &= mediated.get(&(a.clone(), bb.clone())) == Some(&1);
                }
            }
            // every mediated pair is a cone, so the counts must agree too
            universal &= found == mediated.len();
            cones += found;
        }
    }
    r.push("square commutes", commute, "");
    r.push(
        "unique mediating forest",
        universal,
        format!("{cones} cones"),
    );
    r
}

/// A random span with apex at most `size` and given objects, reduced.
pub(crate) fn random_span<R: Rng>(rng: &mut R, src: usize, dst: usize, size: usize) -> SpanMap {
    let b = Arity::BINARY;
    let lo = src.max(dst).max(1);
    let apex = rng.gen_range(lo..=size.max(lo));
    SpanMap::new(
        Forest::random(b, dst, apex, rng).expect("apex >= dst"),
        Forest::random(b, src, apex, rng).expect("apex >= src"),
    )
    .expect("same apex")
}

/// Groupoid laws and monoidal interchange in the span groupoid.
pub fn span_laws(seed: u64, samples: usize, size: usize) -> Report {
    let b = Arity::BINARY;
    let mut rng = rng(seed);
    let mut r = Report::new("span groupoid");
    let (mut assoc, mut unit, mut inv, mut interchange) = (true, true, true, true);
    for _ in 0..samples {
        let objs: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
        let f = random_span(&mut rng, objs[0], objs[1], size);
        let g = random_span(&mut rng, objs[1], objs[2], size);
        let h = random_span(&mut rng, objs[2], objs[3], size);
        let lhs = h.compose(&g).and_then(|hg| hg.compose(&f));
        let rhs = g.compose(&f).and_then(|gf| h.compose(&gf));
        assoc &= lhs.is_ok() && lhs == rhs;
        unit &= SpanMap::identity(f.dst(), b).compose(&f).as_ref() == Ok(&f);
        unit &= f.compose(&SpanMap::identity(f.src(), b)).as_ref() == Ok(&f);
        inv &= f.inverse().compose(&f).ok() == Some(SpanMap::identity(f.src(), b));
        inv &= f.compose(&f.inverse()).ok() == Some(SpanMap::identity(f.dst(), b));

        let f2 = random_span(&mut rng, objs[3], objs[0], size);
        let g2 = random_span(&mut rng, objs[0], objs[2], size);
        let lhs = g.tensor(&g2).and_then(|gg| gg.compose(&f.tensor(&f2)?));
        let rhs = g.compose(&f).and_then(|gf| gf.tensor(&g2.compose(&f2)?));
        interchange &= lhs.is_ok() && lhs == rhs;
    }
    r.push(
        "associativity",
        assoc,
        format!("{samples} triples, apex <= {size}"),
    );
    r.push("identities", unit, "");
    r.push("inverses", inv, "");
    r.push("interchange", interchange, "");
    r
}

/// `η` preserves composition, identities and tensor.
pub fn eta_functor(seed: u64, samples: usize, size: usize) -> Report {
    let b = Arity::BINARY;
    let mut rng = rng(seed);
    let mut r = Report::new("eta: forests -> spans");
    let (mut comp, mut ids, mut tens) = (true, true, true);
    for _ in 0..samples {
        let [h, f, g] = random_chain(&mut rng, size);
        let gf = g.compose(&f).expect("composable");
        comp &= SpanMap::eta(&g).compose(&SpanMap::eta(&f)).as_ref() == Ok(&SpanMap::eta(&gf));
        let k = f.roots();
        ids &= SpanMap::eta(&Forest::identity(k, b)) == SpanMap::identity(k, b);
        let t = f.tensor(&h).expect("binary");
        tens &= SpanMap::eta(&f).tensor(&SpanMap::eta(&h)).as_ref() == Ok(&SpanMap::eta(&t));
    }
    r.push("composition", comp, format!("{samples} pairs"));
    r.push("identities", ids, "");
    r.push("tensor", tens, "");
    r
}

fn all_spans(apex: usize) -> impl Iterator<Item = Span> {
    let b = Arity::BINARY;
    let forests: Vec<Forest> = (0..=apex)
        .flat_map(|k| enumerate_forests(apex, k, b))
        .collect();
    let copy = forests.clone();
    forests.into_iter().flat_map(move |t| {
        copy.clone()
            .into_iter()
            .map(move |s| Span::new(t.clone(), s).expect("same apex"))
    })
}

/// Every order of cancelling common carets ends at the same reduced span,
/// for all representatives with apex at most `max_apex`.
pub fn confluence(max_apex: usize) -> Report {
    let mut r = Report::new(format!("reduction confluence, apex <= {max_apex}"));
    let (mut confluent, mut agrees, mut shrinks) = (true, true, true);
    let mut prev: HashMap<Span, SpanMap> = HashMap::new();
    let mut total = 0usize;
    for apex in 0..=max_apex {
        let mut level = HashMap::new();
        for s in all_spans(apex) {
            let carets = s.cancellable_carets();
            let normal = if carets.is_empty() {
                SpanMap::new(s.leg_dst().clone(), s.leg_src().clone()).expect("same apex")
            } else {
                let mut forms = carets.iter().map(|&p| {
                    let c = s.cancel(p).expect("common caret");
                    shrinks &= c.apex() + 1 == apex;
                    prev.get(&c).cloned().expect("previous level")
                });
                let first = forms.next().expect("non-empty");
                for other in forms {
                    confluent &= other == first;
                }
                first
            };
            agrees &= s.reduce() == normal;
            level.insert(s, normal);
            total += 1;
        }
        prev = level;
    }
    r.push(
        "single normal form",
        confluent,
        format!("{total} representatives"),
    );
    r.push("reduce agrees", agrees, "");
    r.push("each cancellation shrinks apex", shrinks, "");
    r
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Tree pairs `[τ, τ']` up to `max_apex` leaves, linked by single
/// ω-expansions. Every orbit meeting a pair with apex at most `root_apex`
/// must reduce to one canonical form, and distinct forms lie in distinct
/// orbits.
pub fn orbit_soundness(root_apex: usize, max_apex: usize) -> Report {
    let b = Arity::BINARY;
    let mut r = Report::new(format!(
        "reduced forms vs expansion orbits, apex <= {root_apex} within {max_apex}"
    ));
    let mut index: HashMap<Span, usize> = HashMap::new();
    let mut pairs: Vec<Span> = Vec::new();
    for n in 1..=max_apex {
        let trees: Vec<Forest> = enumerate_trees(n, b)
            .into_iter()
            .map(|t| Forest::single(b, t).expect("binary"))
            .collect();
        for t in &trees {
            for s in &trees {
                let sp = Span::new(t.clone(), s.clone()).expect("same apex");
                index.insert(sp.clone(), pairs.len());
                pairs.push(sp);
            }
        }
    }
    let mut uf = UnionFind((0..pairs.len()).collect());
    for (i, sp) in pairs.iter().enumerate() {
        if sp.apex() >= max_apex {
            continue;
        }
        for leaf in 1..=sp.apex() {
            let e = sp.expand(leaf).expect("leaf in range");
            uf.union(i, index[&e]);
        }
    }
    let mut form_of: HashMap<usize, SpanMap> = HashMap::new();
    let mut orbit_of: HashMap<SpanMap, usize> = HashMap::new();
    let (mut sound, mut separated) = (true, true);
    let mut orbits = 0usize;
    for (i, sp) in pairs.iter().enumerate() {
        let root = uf.find(i);
        let form = sp.reduce();
        match form_of.get(&root) {
            Some(f) => sound &= f == &form,
            None => {
                if let Some(&other) = orbit_of.get(&form) {
                    separated &= other == root;
                }
                orbit_of.insert(form.clone(), root);
                form_of.insert(root, form);
            }
        }
    }
    for (i, sp) in pairs.iter().enumerate() {
        if sp.apex() <= root_apex && form_of.contains_key(&uf.find(i)) {
            orbits += usize::from(sp.is_reduced());
        }
    }
    separated &= orbit_of.len() == form_of.len();
    r.push(
        "one form per orbit",
        sound,
        format!("{} pairs", pairs.len()),
    );
    r.push(
        "distinct forms, distinct orbits",
        separated,
        format!("{orbits} reduced pairs with apex <= {root_apex}"),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_oracle_values() {
        assert_eq!(
            recurrence_counts(8, 2),
            vec![0, 1, 1, 2, 5, 14, 42, 132, 429]
        );
        assert_eq!(
            recurrence_counts(9, 3),
            vec![0, 1, 0, 1, 0, 3, 0, 12, 0, 55]
        );
    }

    #[test]
    fn small_checks_pass() {
        let reports = [
            dyadic_laws(1, 50),
            tree_counts(8, 9),
            forest_laws(1, 50, 8),
            join_laws(5),
            cofactor_roundtrip(5),
            pullback_universality(1, 5, 4, 6),
            span_laws(1, 50, 8),
            eta_functor(1, 50, 8),
            confluence(5),
            orbit_soundness(4, 6),
        ];
        for r in reports {
            assert!(r.passed(), "{r}");
        }
    }
}

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::verify::Report;

/// An order-preserving map `{0..n-1} -> {0..k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinOrdMap {
    pub dst: usize,
    pub values: Vec<usize>,
}

impl FinOrdMap {
    pub fn src(&self) -> usize {
        self.values.len()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &FinOrdMap) -> FinOrdMap {
        FinOrdMap {
            dst: self.dst,
            values: f.values.iter().map(|&i| self.values[i]).collect(),
        }
    }

    /// The arrow of `L(1)` with the fibre sizes of this map.
    pub fn fibres(&self) -> Vec<usize> {
        let mut out = vec![0; self.dst];
        for &v in &self.values {
            out[v] += 1;
        }
        out
    }

    /// The monotone map whose `i`-th fibre has `parts[i]` elements.
    pub fn from_fibres(parts: &[usize]) -> FinOrdMap {
        FinOrdMap {
            dst: parts.len(),
            values: parts
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| std::iter::repeat_n(i, p))
                .collect(),
        }
    }
}

/// `L(1)(n, k)`: one `a`-ary operation per arity, so an arrow is a
/// sequence of `k` arities summing to `n`.
fn l1_arrows(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in l1_arrows(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Composition in `L(1)`: the `i`-th operation of `g` absorbs the run of
/// operations of `f` grafted onto its inputs.
fn l1_compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    let mut rest = f;
    g.iter()
        .map(|&b| {
            let (run, tail) = rest.split_at(b);
            rest = tail;
            run.iter().sum()
        })
        .collect()
}

/// Monotone maps found by filtering all `k^n` functions.
fn monotone_maps(n: usize, k: usize) -> Vec<FinOrdMap> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(FinOrdMap {
                dst: 0,
                values: Vec::new(),
            });
        }
        return out;
    }
    let mut values = vec![0; n];
    loop {
        if values.windows(2).all(|w| w[0] <= w[1]) {
            out.push(FinOrdMap {
                dst: k,
                values: values.clone(),
            });
        }
        // odometer
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < k {
                break;
            }
            values[i] = 0;
        }
    }
}

fn binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Stars and bars, with `hom(n, 0)` empty unless `n = 0`.
fn expected_count(n: usize, k: usize) -> u64 {
    if k == 0 {
        return u64::from(n == 0);
    }
    binomial((n + k - 1) as u64, (k - 1) as u64)
}

const PAIR_CAP: usize = 4096;

/// Compares `L(1)(n, k)` with order-preserving maps `n -> k`: counts,
/// the fibre bijection, and compatibility with composition against every
/// `g: k -> j`, `j <= k + 1` (sampled deterministically above a cap).
pub fn finord_check(n: usize, k: usize) -> Report {
    let mut report = Report::new(format!("L(1)({n},{k}) vs FinOrd({n},{k})"));
    let arrows = l1_arrows(n, k);
    let maps = monotone_maps(n, k);
    let want = expected_count(n, k);
    report.push(
        "hom counts",
        arrows.len() as u64 == want && maps.len() as u64 == want,
        format!(
            "L(1): {}, FinOrd: {}, C(n+k-1,k-1): {want}",
            arrows.len(),
            maps.len()
        ),
    );
    let mut images: Vec<FinOrdMap> = arrows.iter().map(|a| FinOrdMap::from_fibres(a)).collect();
    let round_trip = images.iter().zip(&arrows).all(|(m, a)| &m.fibres() == a);
    images.sort();
    images.dedup();
    let mut sorted_maps = maps.clone();
    sorted_maps.sort();
    report.push(
        "bijection",
        round_trip && images == sorted_maps,
        "fibre sizes <-> monotone maps",
    );

    let mut ok = true;
    let mut checked = 0usize;
    for j in 0..=k + 1 {
        let outer = l1_arrows(k, j);
        let mut pairs: Vec<(usize, usize)> = (0..outer.len())
            .flat_map(|g| (0..arrows.len()).map(move |f| (g, f)))
            .collect();
        if pairs.len() > PAIR_CAP {
            let seed = ((n as u64) << 32) | ((k as u64) << 16) | j as u64;
            pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            pairs.truncate(PAIR_CAP);
        }
        for (g, f) in pairs {
            let lhs = FinOrdMap::from_fibres(&l1_compose(&outer[g], &arrows[f]));
            let rhs =
                FinOrdMap::from_fibres(&outer[g]).compose(&FinOrdMap::from_fibres(&arrows[f]));
            ok &= lhs == rhs;
            checked += 1;
        }
    }
    report.push("composition", ok, format!("{checked} pairs"));
    report
}

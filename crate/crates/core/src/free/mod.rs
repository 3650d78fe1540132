//! Free operads on signatures, the free monoidal category on an operad,
//! `L(1) = FinOrd`, the endomorphism operad of the PL model, and a bounded
//! check of the universal property of the generic idempotent.

mod endo;
mod finord;
mod seq;
mod universal;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

pub use endo::{endo_operad_check, EndoOperad};
pub use finord::{finord_check, FinOrdMap};
pub use seq::{forest_isomorphism_check, SeqArrow};
pub use universal::universal_property_check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("malformed signature `{0}`")]
    Signature(String),
    #[error("label `{0}` does not occur in the signature")]
    UnknownLabel(String),
    #[error("label `{label}` has arity {arity} but the node has {children} children")]
    WrongChildCount {
        label: String,
        arity: usize,
        children: usize,
    },
    #[error("expected {expected} trees to graft, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("boundary mismatch: {0} and {1}")]
    Boundary(usize, usize),
    #[error("operations of the endomorphism operad have codomain 1, got {0}")]
    NotAnOperation(usize),
    #[error(transparent)]
    Pl(#[from] crate::pl::PlError),
}

/// Finite label sets indexed by arity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    labels: BTreeMap<usize, Vec<String>>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// The signature with one binary label `m`.
    pub fn binary() -> Signature {
        Signature::new().with(2, "m")
    }

    pub fn with(mut self, arity: usize, label: &str) -> Signature {
        let set = self.labels.entry(arity).or_default();
        if !set.iter().any(|l| l == label) {
            set.push(label.to_string());
        }
        self
    }

    pub fn labels(&self, arity: usize) -> &[String] {
        self.labels.get(&arity).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn arity_of(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, ls)| ls.iter().any(|l| l == label))
            .map(|(&k, _)| k)
    }

    /// `(arity, label)` for every label, arity ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> {
        self.labels
            .iter()
            .flat_map(|(&k, ls)| ls.iter().map(move |l| (k, l.as_str())))
    }

    pub fn is_empty(&self) -> bool {
        self.labels.values().all(Vec::is_empty)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .map(|(k, ls)| format!("{k}:{}", ls.join(",")))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// `arity:label,label;arity:label`.
impl FromStr for Signature {
    type Err = FreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FreeError::Signature(s.to_string());
        let mut sig = Signature::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, ls) = part.split_once(':').ok_or_else(bad)?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            sig.labels.entry(k).or_default();
            for l in ls.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                let ok = l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && l != "l";
                if !ok || sig.arity_of(l).is_some_and(|j| j != k) {
                    return Err(bad());
                }
                sig = sig.with(k, l);
            }
        }
        Ok(sig)
    }
}

/// A planar tree whose internal vertices carry labels from a signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelledTree {
    Leaf,
    Node(String, Vec<LabelledTree>),
}

impl LabelledTree {
    pub fn node(label: &str, children: Vec<LabelledTree>) -> LabelledTree {
        LabelledTree::Node(label.to_string(), children)
    }

    /// The corolla `label(l ... l)`.
    pub fn corolla(label: &str, arity: usize) -> LabelledTree {
        LabelledTree::node(label, vec![LabelledTree::Leaf; arity])
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            LabelledTree::Leaf => 1,
            LabelledTree::Node(_, ch) => ch.iter().map(LabelledTree::leaf_count).sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            LabelledTree::Leaf => 0,
            LabelledTree::Node(_, ch) => 1 + ch.iter().map(LabelledTree::node_count).sum::<usize>(),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<(), FreeError> {
        if let LabelledTree::Node(label, ch) = self {
            let arity = sig
                .arity_of(label)
                .ok_or_else(|| FreeError::UnknownLabel(label.clone()))?;
            if arity != ch.len() {
                return Err(FreeError::WrongChildCount {
                    label: label.clone(),
                    arity,
                    children: ch.len(),
                });
            }
            for c in ch {
                c.check(sig)?;
            }
        }
        Ok(())
    }

    pub(crate) fn graft(&self, supply: &mut impl Iterator<Item = LabelledTree>) -> LabelledTree {
        match self {
            LabelledTree::Leaf => supply.next().expect("enough trees to graft"),
            LabelledTree::Node(l, ch) => {
                LabelledTree::Node(l.clone(), ch.iter().map(|c| c.graft(supply)).collect())
            }
        }
    }

    /// A random tree grown from a leaf by `steps` replacements of a random
    /// leaf with a random corolla. Stops early if no leaves remain.
    pub fn random<R: Rng + ?Sized>(sig: &Signature, steps: usize, rng: &mut R) -> LabelledTree {
        let labels: Vec<(usize, &str)> = sig.iter().collect();
        let mut t = LabelledTree::Leaf;
        if labels.is_empty() {
            return t;
        }
        for _ in 0..steps {
            let n = t.leaf_count();
            if n == 0 {
                break;
            }
            let (k, l) = labels[rng.gen_range(0..labels.len())];
            let at = rng.gen_range(0..n);
            let supply = (0..n).map(|i| {
                if i == at {
                    LabelledTree::corolla(l, k)
                } else {
                    LabelledTree::Leaf
                }
            });
            t = t.graft(&mut supply.into_iter());
        }
        t
    }
}

impl fmt::Display for LabelledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelledTree::Leaf => f.write_str("l"),
            LabelledTree::Node(l, ch) => {
                write!(f, "{l}(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Operad composition `θ ∘ (θ_1, ..., θ_n)`: graft `θ_i` onto leaf `i`.
pub fn operad_compose(
    theta: &LabelledTree,
    thetas: &[LabelledTree],
) -> Result<LabelledTree, FreeError> {
    let n = theta.leaf_count();
    if n != thetas.len() {
        return Err(FreeError::LengthMismatch {
            expected: n,
            found: thetas.len(),
        });
    }
    Ok(theta.graft(&mut thetas.iter().cloned()))
}

/// All `n`-leafed trees over `sig` with at most `size_bound` nodes.
pub fn enumerate_operad(sig: &Signature, n: usize, size_bound: usize) -> Vec<LabelledTree> {
    let mut memo = HashMap::new();
    (0..=size_bound)
        .flat_map(|s| exact(sig, n, s, &mut memo))
        .collect()
}

type Memo = HashMap<(usize, usize), Vec<LabelledTree>>;

/// Trees with exactly `leaves` leaves and `nodes` nodes.
fn exact(sig: &Signature, leaves: usize, nodes: usize, memo: &mut Memo) -> Vec<LabelledTree> {
    if nodes == 0 {
        return if leaves == 1 {
            vec![LabelledTree::Leaf]
        } else {
            Vec::new()
        };
    }
    if let Some(v) = memo.get(&(leaves, nodes)) {
        return v.clone();
    }
    let mut out = Vec::new();
    let labels: Vec<(usize, String)> = sig.iter().map(|(k, l)| (k, l.to_string())).collect();
    for (k, label) in labels {
        for children in child_sequences(sig, k, leaves, nodes - 1, memo) {
            out.push(LabelledTree::Node(label.clone(), children));
        }
    }
    memo.insert((leaves, nodes), out.clone());
    out
}

/// Sequences of `k` trees with `leaves` leaves and `nodes` nodes in total.
fn child_sequences(
    sig: &Signature,
    k: usize,
    leaves: usize,
    nodes: usize,
    memo: &mut Memo,
) -> Vec<Vec<LabelledTree>> {
    if k == 0 {
        return if leaves == 0 && nodes == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for a in 0..=leaves {
        for s in 0..=nodes {
            let firsts = exact(sig, a, s, memo);
            if firsts.is_empty() {
                continue;
            }
            let rests = child_sequences(sig, k - 1, leaves - a, nodes - s, memo);
            for f in &firsts {
                for r in &rests {
                    let mut v = Vec::with_capacity(k);
                    v.push(f.clone());
                    v.extend(r.iter().cloned());
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Unit and associativity of grafting on `samples` random instances.
pub fn operad_law_check(sig: &Signature, seed: u64, samples: usize) -> crate::verify::Report {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = crate::verify::Report::new(format!("free operad on {sig}"));
    let (mut unit_ok, mut assoc_ok) = (true, true);
    for _ in 0..samples {
        let theta = LabelledTree::random(sig, rng.gen_range(0..5), &mut rng);
        let n = theta.leaf_count();
        let leaves = vec![LabelledTree::Leaf; n];
        unit_ok &= operad_compose(&theta, &leaves).as_ref() == Ok(&theta);
        unit_ok &= operad_compose(&LabelledTree::Leaf, std::slice::from_ref(&theta)).as_ref()
            == Ok(&theta);

        let mids: Vec<LabelledTree> = (0..n)
            .map(|_| LabelledTree::random(sig, rng.gen_range(0..4), &mut rng))
            .collect();
        let inner: Vec<Vec<LabelledTree>> = mids
            .iter()
            .map(|m| {
                (0..m.leaf_count())
                    .map(|_| LabelledTree::random(sig, rng.gen_range(0..3), &mut rng))
                    .collect()
            })
            .collect();
        let lhs = {
            let grafted: Vec<LabelledTree> = mids
                .iter()
                .zip(&inner)
                .map(|(m, i)| operad_compose(m, i).expect("lengths match"))
                .collect();
            operad_compose(&theta, &grafted).expect("lengths match")
        };
        let rhs = {
            let outer = operad_compose(&theta, &mids).expect("lengths match");
            let flat: Vec<LabelledTree> = inner.into_iter().flatten().collect();
            operad_compose(&outer, &flat).expect("lengths match")
        };
        assoc_ok &= lhs == rhs;
    }
    report.push("unit laws", unit_ok, format!("{samples} samples"));
    report.push("associativity", assoc_ok, format!("{samples} samples"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{count_trees, Arity};

    #[test]
    fn signature_format() {
        let s: Signature = "2:m;3:a,b".parse().unwrap();
        assert_eq!(s.labels(2), ["m"]);
        assert_eq!(s.labels(3), ["a", "b"]);
        assert_eq!(s.labels(1), [] as [String; 0]);
        assert_eq!(s.to_string(), "2:m;3:a,b");
        assert_eq!(s.arity_of("b"), Some(3));
        let e: Signature = "1:".parse().unwrap();
        assert!(e.is_empty());
        assert!("2".parse::<Signature>().is_err());
        assert!("x:m".parse::<Signature>().is_err());
        assert!("2:m;3:m".parse::<Signature>().is_err());
        assert!("2:l".parse::<Signature>().is_err());
    }

    #[test]
    fn compose_examples() {
        let m = LabelledTree::corolla("m", 2);
        assert_eq!(
            operad_compose(&m, &[LabelledTree::Leaf, LabelledTree::Leaf]).unwrap(),
            m
        );
        assert_eq!(
            operad_compose(&LabelledTree::Leaf, std::slice::from_ref(&m)).unwrap(),
            m
        );
        let c = operad_compose(&m, &[m.clone(), LabelledTree::Leaf]).unwrap();
        assert_eq!(c.to_string(), "m(m(l l) l)");
        assert_eq!(
            operad_compose(&m, &[LabelledTree::Leaf]),
            Err(FreeError::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn enumeration_examples() {
        let bin = Signature::binary();
        assert_eq!(enumerate_operad(&bin, 4, 10).len(), 5);
        assert_eq!(enumerate_operad(&bin, 1, 10), vec![LabelledTree::Leaf]);
        let unary: Signature = "1:u".parse().unwrap();
        assert_eq!(enumerate_operad(&unary, 1, 3).len(), 4);
        assert!(enumerate_operad(&unary, 2, 3).is_empty());
        for n in 1..=7 {
            assert_eq!(
                enumerate_operad(&bin, n, n).len() as u128,
                count_trees(n, Arity::BINARY)
            );
        }
        // two binary labels double the choices at every node
        let two: Signature = "2:a,b".parse().unwrap();
        assert_eq!(enumerate_operad(&two, 3, 5).len(), 2 * 4);
    }

    #[test]
    fn enumeration_with_nullary_labels() {
        // nullary e, binary m: trees with one leaf and at most 2 nodes are
        // l, m(e() l), m(l e())
        let s: Signature = "0:e;2:m".parse().unwrap();
        let got = enumerate_operad(&s, 1, 2);
        let names: Vec<String> = got.iter().map(ToString::to_string).collect();
        assert_eq!(names.len(), 3, "{names:?}");
        assert!(names.contains(&"m(e() l)".to_string()));
        assert_eq!(enumerate_operad(&s, 0, 1).len(), 1);
        for t in enumerate_operad(&s, 2, 5) {
            t.check(&s).unwrap();
            assert_eq!(t.leaf_count(), 2);
            assert!(t.node_count() <= 5);
        }
    }

    #[test]
    fn check_rejects_bad_trees() {
        let s = Signature::binary();
        assert!(matches!(
            LabelledTree::corolla("m", 3).check(&s),
            Err(FreeError::WrongChildCount { .. })
        ));
        assert!(matches!(
            LabelledTree::corolla("q", 2).check(&s),
            Err(FreeError::UnknownLabel(_))
        ));
    }

    #[test]
    fn laws_hold_on_random_grafts() {
        let sig: Signature = "0:e;1:u;2:m;3:t".parse().unwrap();
        assert!(operad_law_check(&sig, 7, 200).passed());
    }
}

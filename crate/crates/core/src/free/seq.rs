use std::fmt;

use super::{enumerate_operad, FreeError, LabelledTree, Signature};
use crate::forest::{enumerate_forests, Arity, Forest, Tree};
use crate::verify::Report;

/// An arrow `n -> k` of the free monoidal category on a free operad: `k`
/// labelled trees with `n` leaves in total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqArrow {
    src: usize,
    trees: Vec<LabelledTree>,
}

impl SeqArrow {
    pub fn new(trees: Vec<LabelledTree>) -> SeqArrow {
        let src = trees.iter().map(LabelledTree::leaf_count).sum();
        SeqArrow { src, trees }
    }

    pub fn identity(k: usize) -> SeqArrow {
        SeqArrow::new(vec![LabelledTree::Leaf; k])
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[LabelledTree] {
        &self.trees
    }

    /// `self ∘ f`, grafting the trees of `f` onto the leaves of `self`.
    pub fn compose(&self, f: &SeqArrow) -> Result<SeqArrow, FreeError> {
        if self.src != f.dst() {
            return Err(FreeError::Boundary(self.src, f.dst()));
        }
        let mut supply = f.trees.iter().cloned();
        let trees = self.trees.iter().map(|t| t.graft(&mut supply)).collect();
        Ok(SeqArrow { src: f.src, trees })
    }

    /// Concatenation.
    pub fn tensor(&self, other: &SeqArrow) -> SeqArrow {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        SeqArrow {
            src: self.src + other.src,
            trees,
        }
    }

    /// All arrows `n -> k` whose trees have at most `size_bound` nodes in
    /// total.
    pub fn enumerate(sig: &Signature, n: usize, k: usize, size_bound: usize) -> Vec<SeqArrow> {
        let per_leaf: Vec<Vec<LabelledTree>> = (0..=n)
            .map(|a| enumerate_operad(sig, a, size_bound))
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        fill(&per_leaf, k, n, size_bound, &mut current, &mut out);
        out
    }

    /// The underlying forest when every label is binary.
    pub fn to_forest(&self) -> Option<Forest> {
        let trees = self.trees.iter().map(unlabel).collect::<Option<Vec<_>>>()?;
        Forest::new(Arity::BINARY, trees).ok()
    }

    /// Labels every node of a binary forest with `label`.
    pub fn from_forest(f: &Forest, label: &str) -> SeqArrow {
        SeqArrow::new(f.trees().iter().map(|t| relabel(t, label)).collect())
    }
}

fn fill(
    per_leaf: &[Vec<LabelledTree>],
    k: usize,
    leaves: usize,
    nodes: usize,
    current: &mut Vec<LabelledTree>,
    out: &mut Vec<SeqArrow>,
) {
    if current.len() == k {
        if leaves == 0 {
            out.push(SeqArrow::new(current.clone()));
        }
        return;
    }
    for (a, trees) in per_leaf.iter().enumerate().take(leaves + 1) {
        for t in trees {
            let s = t.node_count();
            if s > nodes {
                continue;
            }
            current.push(t.clone());
            fill(per_leaf, k, leaves - a, nodes - s, current, out);
            current.pop();
        }
    }
}

fn unlabel(t: &LabelledTree) -> Option<Tree> {
    match t {
        LabelledTree::Leaf => Some(Tree::Leaf),
        LabelledTree::Node(_, ch) if ch.len() == 2 => Some(Tree::node(
            ch.iter().map(unlabel).collect::<Option<Vec<_>>>()?,
        )),
        LabelledTree::Node(..) => None,
    }
}

fn relabel(t: &Tree, label: &str) -> LabelledTree {
    match t {
        Tree::Leaf => LabelledTree::Leaf,
        Tree::Node(ch) => LabelledTree::node(label, ch.iter().map(|c| relabel(c, label)).collect()),
    }
}

impl fmt::Display for SeqArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// For the signature with a single binary label, arrows `n -> k` of the free
/// monoidal category are exactly the forests `n -> k`, compatibly with
/// composition and tensor. Checked exhaustively for `n <= max_leaves`.
pub fn forest_isomorphism_check(max_leaves: usize) -> Report {
    let sig = Signature::binary();
    let mut report = Report::new("single binary label: arrows vs forests");
    let mut homs: Vec<Vec<Vec<SeqArrow>>> = Vec::new();
    let (mut counts_ok, mut bijective) = (true, true);
    let mut total = 0usize;
    for n in 0..=max_leaves {
        let mut row = Vec::new();
        for k in 0..=n {
            let arrows = SeqArrow::enumerate(&sig, n, k, n);
            let forests = enumerate_forests(n, k, Arity::BINARY);
            counts_ok &= arrows.len() == forests.len();
            let mut images: Vec<Forest> = arrows.iter().filter_map(SeqArrow::to_forest).collect();
            bijective &= images.len() == arrows.len();
            images.sort();
            images.dedup();
            bijective &= images.len() == forests.len();
            bijective &= forests.iter().all(|f| {
                let back = SeqArrow::from_forest(f, "m");
                back.to_forest().as_ref() == Some(f) && arrows.contains(&back)
            });
            total += arrows.len();
            row.push(arrows);
        }
        homs.push(row);
    }
    report.push(
        "hom counts",
        counts_ok,
        format!("{total} arrows, n <= {max_leaves}"),
    );
    report.push(
        "bijection",
        bijective,
        "to_forest and from_forest are inverse",
    );

    let (mut compose_ok, mut tensor_ok, mut pairs) = (true, true, 0usize);
    for by_n in &homs {
        for (k, by_k) in by_n.iter().enumerate() {
            for g in homs[k].iter().take(k + 1).flatten() {
                let fg = g.to_forest().expect("binary");
                for f in by_k {
                    let ff = f.to_forest().expect("binary");
                    let lhs = g.compose(f).ok().and_then(|c| c.to_forest());
                    compose_ok &= lhs == fg.compose(&ff).ok();
                    pairs += 1;
                }
            }
        }
    }
    for a in homs.iter().flatten().flatten() {
        for b in homs.iter().take(3).flatten().flatten() {
            let lhs = a.tensor(b).to_forest();
            let rhs = a.to_forest().and_then(|x| x.tensor(&b.to_forest()?).ok());
            tensor_ok &= lhs == rhs;
        }
    }
    report.push(
        "composition",
        compose_ok,
        format!("{pairs} composable pairs"),
    );
    report.push("tensor", tensor_ok, "juxtaposition agrees");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> LabelledTree {
        LabelledTree::corolla("m", 2)
    }

    #[test]
    fn identity_and_tensor() {
        let f = SeqArrow::new(vec![m(), LabelledTree::Leaf]);
        assert_eq!((f.src(), f.dst()), (3, 2));
        assert_eq!(SeqArrow::identity(2).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&SeqArrow::identity(3)).unwrap(), f);
        let t = SeqArrow::new(vec![m()]).tensor(&SeqArrow::new(vec![m()]));
        assert_eq!((t.src(), t.dst()), (4, 2));
        assert_eq!(t.to_string(), "[m(l l) m(l l)]");
        assert_eq!(
            f.compose(&SeqArrow::identity(2)),
            Err(FreeError::Boundary(3, 2))
        );
    }

    #[test]
    fn compose_grafts_across_the_sequence() {
        let g = SeqArrow::new(vec![m(), LabelledTree::Leaf]);
        let f = SeqArrow::new(vec![LabelledTree::Leaf, m(), LabelledTree::Leaf]);
        assert_eq!(g.compose(&f).unwrap().to_string(), "[m(l m(l l)) l]");
    }

    #[test]
    fn enumeration_with_units() {
        // a nullary label gives arrows 0 -> k
        let s: Signature = "0:e;2:m".parse().unwrap();
        let arrows = SeqArrow::enumerate(&s, 0, 2, 2);
        let names: Vec<String> = arrows.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["[e() e()]"]);
        // plus m(e() e()) in either slot
        assert_eq!(SeqArrow::enumerate(&s, 0, 2, 4).len(), 3);
    }

    #[test]
    fn isomorphism_with_forests() {
        let r = forest_isomorphism_check(5);
        assert!(r.passed(), "{r}");
    }
}

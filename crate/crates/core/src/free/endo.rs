use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{operad_compose, FreeError, LabelledTree, SeqArrow, Signature};
use crate::forest::{Arity, Forest};
use crate::pl::{mu_forest, PlMap};
use crate::verify::Report;

/// The endomorphism operad of the object `1` in the PL model: `n`-ary
/// operations are PL maps `n -> 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EndoOperad;

impl EndoOperad {
    pub fn unit(&self) -> PlMap {
        PlMap::identity(1)
    }

    /// `θ ∘ (θ_1 ⊗ ... ⊗ θ_n)`.
    pub fn compose(&self, theta: &PlMap, thetas: &[PlMap]) -> Result<PlMap, FreeError> {
        for t in std::iter::once(theta).chain(thetas) {
            if t.dst() != 1 {
                return Err(FreeError::NotAnOperation(t.dst()));
            }
        }
        if theta.src() != thetas.len() {
            return Err(FreeError::LengthMismatch {
                expected: theta.src(),
                found: thetas.len(),
            });
        }
        let inner = thetas
            .iter()
            .fold(PlMap::identity(0), |acc, t| acc.tensor(t));
        Ok(theta.compose(&inner)?)
    }

    /// A random `n`-ary operation `μ_T ∘ μ_S⁻¹` with `n + extra` leaves.
    pub fn random<R: Rng + ?Sized>(&self, n: usize, extra: usize, rng: &mut R) -> PlMap {
        let p = n + extra;
        let s = Forest::random(Arity::BINARY, n, p, rng).expect("n >= 1");
        let t = Forest::random(Arity::BINARY, 1, p, rng).expect("p >= 1");
        let mt = mu_forest(&t).expect("binary");
        let ms = mu_forest(&s).expect("binary");
        mt.compose(&ms.inverse()).expect("objects match")
    }
}

/// Operad axioms for [`EndoOperad`] on random instances, and `μ` as a map
/// of operads out of the free operad on one binary label.
pub fn endo_operad_check(seed: u64, samples: usize) -> Report {
    let op = EndoOperad;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("endomorphism operad of 1 in the PL model");

    let a = PlMap::halving();
    let id = op.unit();
    let left = op.compose(&a, &[a.clone(), id.clone()]).expect("binary");
    let right = op.compose(&a, &[id.clone(), a.clone()]).expect("binary");
    report.push(
        "a(a,1) != a(1,a)",
        left != right && left.src() == 3 && right.src() == 3,
        format!("{left} vs {right}"),
    );
    let nested = op.compose(&a, &[left.clone(), a.clone()]).expect("arity 2");
    let flat = op
        .compose(
            &op.compose(&a, &[a.clone(), a.clone()]).expect("arity 2"),
            &[a.clone(), id.clone(), id.clone(), id.clone()],
        )
        .expect("arity 4");
    report.push(
        "associativity with three halvings",
        nested == flat,
        nested.to_string(),
    );

    let (mut unit_ok, mut assoc_ok) = (true, true);
    for _ in 0..samples {
        let n = rng.gen_range(1..=3);
        let theta = op.random(n, rng.gen_range(0..4), &mut rng);
        unit_ok &= op.compose(&theta, &vec![id.clone(); n]).as_ref() == Ok(&theta);
        unit_ok &= op.compose(&id, std::slice::from_ref(&theta)).as_ref() == Ok(&theta);

        let mids: Vec<PlMap> = (0..n)
            .map(|_| {
                let m = rng.gen_range(1..=3);
                op.random(m, rng.gen_range(0..3), &mut rng)
            })
            .collect();
        let inner: Vec<Vec<PlMap>> = mids
            .iter()
            .map(|m| {
                (0..m.src())
                    .map(|_| {
                        let k = rng.gen_range(1..=2);
                        op.random(k, rng.gen_range(0..3), &mut rng)
                    })
                    .collect()
            })
            .collect();
        let grafted: Vec<PlMap> = mids
            .iter()
            .zip(&inner)
            .map(|(m, i)| op.compose(m, i).expect("arities match"))
            .collect();
        let lhs = op.compose(&theta, &grafted).expect("arities match");
        let outer = op.compose(&theta, &mids).expect("arities match");
        let flat: Vec<PlMap> = inner.into_iter().flatten().collect();
        let rhs = op.compose(&outer, &flat).expect("arities match");
        assoc_ok &= lhs == rhs;
    }
    report.push("unit laws", unit_ok, format!("{samples} samples"));
    report.push("associativity", assoc_ok, format!("{samples} samples"));

    let sig = Signature::binary();
    let mu = |t: &LabelledTree| {
        let f = SeqArrow::new(vec![t.clone()]).to_forest().expect("binary");
        mu_forest(&f).expect("binary")
    };
    let mut hom_ok = true;
    for _ in 0..samples {
        let theta = LabelledTree::random(&sig, rng.gen_range(0..4), &mut rng);
        let thetas: Vec<LabelledTree> = (0..theta.leaf_count())
            .map(|_| LabelledTree::random(&sig, rng.gen_range(0..3), &mut rng))
            .collect();
        let free = operad_compose(&theta, &thetas).expect("lengths match");
        let images: Vec<PlMap> = thetas.iter().map(mu).collect();
        hom_ok &= op.compose(&mu(&theta), &images).as_ref() == Ok(&mu(&free));
    }
    report.push(
        "mu preserves grafting",
        hom_ok,
        format!("{samples} samples"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let op = EndoOperad;
        let a = PlMap::halving();
        let id = op.unit();
        let l = op.compose(&a, &[a.clone(), id.clone()]).unwrap();
        let r = op.compose(&a, &[id.clone(), a.clone()]).unwrap();
        assert_eq!(l.to_string(), "0:0,2:1/2^1,3:1");
        assert_eq!(r.to_string(), "0:0,1:1/2^1,3:1");
        assert_eq!(
            op.compose(&a, std::slice::from_ref(&id)),
            Err(FreeError::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            op.compose(&PlMap::identity(2), &[id.clone(), id]),
            Err(FreeError::NotAnOperation(2))
        );
    }

    #[test]
    fn axioms_hold() {
        let r = endo_operad_check(3, 100);
        assert!(r.passed(), "{r}");
    }
}

//! Property checks shared by the `check` subcommand and the test suites.
//!
//! Every check is exact and deterministic in its seed. A [`Report`] is a
//! named list of pass/fail lines.

mod algebra;
mod groups;

use std::fmt;
use std::str::FromStr;

pub use algebra::{
    cofactor_roundtrip, confluence, dyadic_laws, eta_functor, forest_laws, join_laws,
    orbit_soundness, pullback_universality, span_laws, tree_counts,
};
pub use groups::{
    figure_correspondence, group_axioms, homomorphism, injectivity, mu_functoriality, pl_generator,
    pl_round_trip, pl_word, relations,
};

use crate::free;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:width$}  {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Dyadic,
    Forest,
    Span,
    Group,
    Oracle,
    Appendix,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "all", "dyadic", "forest", "span", "group", "oracle", "appendix",
    ];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "dyadic" => Suite::Dyadic,
            "forest" => Suite::Forest,
            "span" => Suite::Span,
            "group" => Suite::Group,
            "oracle" => Suite::Oracle,
            "appendix" => Suite::Appendix,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::All => 0,
            Suite::Dyadic => 1,
            Suite::Forest => 2,
            Suite::Span => 3,
            Suite::Group => 4,
            Suite::Oracle => 5,
            Suite::Appendix => 6,
        };
        f.write_str(Suite::NAMES[i])
    }
}

/// Random samples per randomized check in [`run`].
const SAMPLES: usize = 200;

/// Runs a suite. `bound` caps exhaustive enumerations (apex or leaf count);
/// random samples use apex up to `2 * bound`.
pub fn run(suite: Suite, seed: u64, bound: usize) -> Vec<Report> {
    let all = suite == Suite::All;
    let mut out = Vec::new();
    let size = 2 * bound;
    if all || suite == Suite::Dyadic {
        out.push(dyadic_laws(seed, SAMPLES));
    }
    if all || suite == Suite::Forest {
        out.push(tree_counts(bound.max(8), 9));
        out.push(forest_laws(seed, SAMPLES, size));
        out.push(join_laws((bound + 1).min(7)));
        out.push(cofactor_roundtrip((bound + 1).min(7)));
        out.push(pullback_universality(seed, 20, bound.min(8), bound + 2));
    }
    if all || suite == Suite::Span {
        out.push(span_laws(seed, SAMPLES, size));
        out.push(eta_functor(seed, SAMPLES, size));
        out.push(confluence((bound + 1).min(7)));
        out.push(orbit_soundness(bound, bound + 2));
    }
    if all || suite == Suite::Group {
        for (n, r) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            out.push(group_axioms(n, r, seed, SAMPLES, size));
        }
        out.push(relations());
    }
    if all || suite == Suite::Oracle {
        out.push(figure_correspondence());
        out.push(homomorphism(seed, SAMPLES, size));
        out.push(injectivity(bound));
        out.push(mu_functoriality(seed, SAMPLES, size));
        out.push(pl_round_trip(seed, SAMPLES, size));
    }
    if all || suite == Suite::Appendix {
        let sig: free::Signature = "0:e;1:u;2:m;3:t".parse().expect("valid signature");
        out.push(free::operad_law_check(&sig, seed, SAMPLES));
        out.push(free::forest_isomorphism_check(bound.min(5)));
        let mut finord = Report::new(format!("L(1) = FinOrd, n, k <= {bound}"));
        for n in 0..=bound {
            for k in 0..=bound {
                let r = free::finord_check(n, k);
                let detail = r
                    .checks
                    .iter()
                    .map(|c| c.detail.as_str())
                    .collect::<Vec<_>>()
                    .join("; ");
                finord.push(format!("({n},{k})"), r.passed(), detail);
            }
        }
        out.push(finord);
        out.push(free::endo_operad_check(seed, SAMPLES));
        out.push(free::universal_property_check(bound));
    }
    out
}

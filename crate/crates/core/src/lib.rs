//! Thompson's group `F` as the automorphism group of the generic idempotent
//! object `A ≅ A ⊗ A`.
//!
//! The crate builds the free monoidal groupoid on one idempotent object
//! explicitly, as a chain of concrete constructions:
//!
//! - [`forest`]: trees and the forest category `D`, which has pullbacks;
//! - [`span`]: the groupoid `E` of spans of forests, composed by pullback;
//! - [`group`]: automorphisms of one object of `E`, i.e. `F` and the
//!   generalised groups `F_{n,r}`;
//! - [`pl`]: exact piecewise-linear bijections with dyadic breakpoints,
//!   an independent model used to cross-check the span engine;
//! - [`free`]: signatures, free operads, free monoidal categories,
//!   endomorphism operads and the universal-property harness.
//!
//! [`verify`] bundles the property checks run by the `thompson check` CLI.

pub mod cli;
pub mod dyadic;
pub mod forest;
pub mod free;
pub mod group;
pub mod pl;
pub mod span;
pub mod verify;

pub use dyadic::Dyadic;
pub use forest::{Arity, Forest, Tree};
pub use group::{Context, GroupElement, Word};
pub use pl::PlMap;
pub use span::{Span, SpanMap};

//! Exact computational category theory at desk scale.
//!
//! The crate provides four layers:
//!
//! * [`fincat`] — finite categories, functors, presheaves, natural
//!   transformations and finite colimits, all with exhaustive law checkers;
//! * [`glob`], [`effcat`], [`free`] — truncated globular sets, ambient
//!   effective categories and free structures (paths and pasting diagrams);
//! * [`monad`] — monads as computable data, monad morphisms, the Kleisli
//!   construction and the round trip through adjunctions;
//! * [`arities`], [`theory`], [`instances`] — arity assignments, theories as
//!   full subcategories of Kleisli categories, nerves, the generalized Segal
//!   condition and the concrete globular instances (trees, free category,
//!   free strict 2-category, the bicolored functor monad, the two-stage
//!   coglobular complex).
//!
//! Heavy enumeration loops run on rayon when the `parallel` feature (default)
//! is enabled and fall back to sequential iteration otherwise; results are
//! identical either way.

pub mod arities;
pub mod effcat;
pub mod error;
pub mod fincat;
pub mod free;
pub mod glob;
pub mod instances;
pub mod io;
pub mod monad;
pub mod par;
pub mod report;
pub mod theory;
pub mod trees;

pub use error::{Error, Result};
pub use free::Bound;
pub use report::{Report, Violation};

//! Exact invariants of one-dimensional curve singularities.
//!
//! A curve germ is presented by branch parametrizations: `r` branches, each a
//! map into `k[[t]]`, with the curve ring `R` generated as a `k`-algebra by the
//! coordinate functions inside the normalization `∏ k[[t_i]]`.  Everything here
//! is computed with exact arithmetic (arbitrary-precision rationals or a prime
//! field `F_p`, `p` odd) on truncated power series, with every truncation order
//! certified before a result is reported.
//!
//! The main entry points:
//!
//! * [`engine::CurveSpec`] / [`engine::Engine`] — the singularity engine:
//!   delta invariant, Milnor number, conductor, value semigroups, blow-ups,
//!   finite Cohen-Macaulay-type tests.
//! * [`ade::ADEClass`] — the A-D-E catalog of simple plane curve singularities
//!   with rational normal forms and closed-form value semigroups.
//! * [`verify`] — the self-check suite behind `curvemilnor verify-paper`.
//!
//! Invariants computed by the engine satisfy `mu = 2*delta - r + 1`; the
//! engine cross-checks this and related identities internally and refuses to
//! report values whose truncation window could not be certified.

pub mod ade;
pub mod document;
pub mod engine;
pub mod error;
pub mod numerical;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;
pub mod value_semigroup;
pub mod verify;

pub use ade::{catalog_classes, classify_engine, equisingular, ADEClass};
pub use document::CurveDocument;
pub use engine::{
    AlgebraModel, BlowupStep, CurveInvariants, CurveSpec, Engine, EngineConfig, LengthResult,
    LocalType, NoetherOutcome,
};
pub use error::{Error, Result};
pub use numerical::NumericalSemigroup;
pub use poly::PolyExpr;
pub use report::Report;
pub use scalar::{FieldSpec, Scalar};
pub use series::{BranchElement, OrderResult, Precision, TruncatedSeries};
pub use value_semigroup::ValueSemigroup;

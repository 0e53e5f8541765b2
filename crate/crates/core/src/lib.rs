//! Exact Zariski decompositions on projective surfaces and the finiteness of
//! section spaces on open complements `X ∖ E`, checked against lattice-point
//! counts on smooth toric surfaces.
//!
//! All arithmetic is over [`Rational`]; nothing here ever touches a float.

pub mod error;
pub mod finiteness;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod toric;
pub mod verify;
pub mod zariski;

pub use error::{Error, Result};
pub use finiteness::{
    classify_big, classify_pseff, growth_estimate, minimal_a_bplus, minimal_a_nsigma,
    rr_infiniteness_test, rr_lower_bound, BoundaryDivisor, Case, CaseEvaluation, CaseResult,
    FinitenessVerdict, GrowthEstimate, Status,
};
pub use lattice::{ConeCertificate, CurveGenerator, ModelFile, ModelSpec, NSClass, SurfaceModel, ValidationReport};
pub use linalg::Signature;
pub use rational::Rational;
pub use toric::{
    build_fan, count_h0, fan_to_surface_model, h0_limit_scan, oracle_volume, FanFile,
    GrowthEvidence, ScanOutcome, ScanParams, ScanReport, ScanRow, ToricDivisor, ToricFan,
    ToricSurface,
};
pub use verify::{verify_suite, CheckResult, Suite, VerificationReport};
pub use zariski::{
    augmented_contains_curve, decompose, diminished_divisorial, kappa_sigma, restricted_volume,
    volume, KappaSigma, NegativeTerm, ZariskiDecomposition,
};

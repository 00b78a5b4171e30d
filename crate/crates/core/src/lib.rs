//! Exact arithmetic for the singular functions `g_λ` defined by weighted
//! Farey mediants: continuants, the golden field, quadratic surds, sum
//! preserving variations, extremal continuants and a derivative classifier
//! for quadratic irrationals.

pub mod classify;
pub mod decimal;
pub mod error;
pub mod extremal;
pub mod geval;
pub mod golden;
pub mod kappa2;
pub mod periodic;
pub mod quotients;
pub mod surd;
pub mod variation;
pub mod verify;

pub use classify::{classify, envelope, growth_rate, kappa, Classification, ClassifyReport, EnvelopeSide, GrowthRate};
pub use decimal::DecimalDigits;
pub use error::{Error, Result};
pub use extremal::{
    balanced_max, brute_extrema, m3_parameters, max_construct, min_construct, normalize_m4, reduce_m3,
    ExtremalInstance, M3Case, M3Shape,
};
pub use geval::{
    g_finite_series, g_interval, g_mediant, question_mark, sample_farey, CertifiedInterval, GValue, LambdaKind,
};
pub use golden::GoldenScalar;
pub use kappa2::{kappa2_bracket, KappaBracket};
pub use periodic::PeriodicCF;
pub use quotients::{
    cf_of, continuant, parse_fraction, CfConvention, Fraction, Orientation, QuotientMatrix, QuotientSeq,
};
pub use surd::{surd_compare, CompareMethod, QuadraticSurd, SurdComparison, DEFAULT_PRECISION_CAP};
pub use verify::{verify_suite, VerifyOptions, VerifyReport};

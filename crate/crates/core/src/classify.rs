//! Derivative verdicts for `g_{φ⁻¹}` (and `g_τ`) at quadratic irrationals.
//!
//! Along a periodic expansion the denominators grow like `λ^t` per period,
//! while the weighted sum grows by `S` per period. Both envelopes of the
//! difference quotient behave like `(λ² / φ^S)^t`, so the verdict is the
//! exact sign of `λ² - φ^S`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::geval::CertifiedInterval;
use crate::golden::GoldenScalar;
use crate::periodic::PeriodicCF;
use crate::quotients::{Fraction, Orientation, QuotientSeq};
use crate::surd::{CompareMethod, QuadraticSurd, DEFAULT_PRECISION_CAP};

/// Derivative of `g` at the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    DerivInfinity,
    DerivZero,
    /// `λ² = φ^S` exactly; neither growth regime applies.
    Boundary,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::DerivInfinity => "DerivInfinity",
            Classification::DerivZero => "DerivZero",
            Classification::Boundary => "Boundary",
        })
    }
}

impl FromStr for Classification {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "DerivInfinity" => Ok(Classification::DerivInfinity),
            "DerivZero" => Ok(Classification::DerivZero),
            "Boundary" => Ok(Classification::Boundary),
            _ => Err(parse_err("classification", s)),
        }
    }
}

/// Per-period growth factor of the denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRate {
    /// Dominant root of `z² - T z + det`.
    pub value: QuadraticSurd,
    /// The period the rate refers to (doubled when given with odd length).
    pub period: QuotientSeq,
    pub trace: BigInt,
    pub det: BigInt,
}

fn even_period(period: &QuotientSeq) -> Result<QuotientSeq> {
    if period.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(if period.len() % 2 == 1 { period.repeat(2) } else { period.clone() })
}

/// `λ = ⟨A⟩ + ⟨A⁻⟩·[Ā]`, checked against the dominant eigenvalue of the
/// period matrix.
pub fn growth_rate(period: &QuotientSeq) -> Result<GrowthRate> {
    let a = even_period(period)?;
    let m = a.matrix()?;
    let y = PeriodicCF::purely(a.clone())?.value();
    let value =
        QuadraticSurd::from_integer(m.full.clone()).add(&y.mul(&QuadraticSurd::from_integer(m.drop_last.clone()))?)?;
    let trace = m.trace();
    let det = m.det();
    let disc = &trace * &trace - &det * 4;
    let root = QuadraticSurd::new(trace.clone(), BigInt::one(), disc, 2.into())?;
    if root != value {
        return Err(Error::Inconsistent(format!("growth rate of {a}: {value} differs from eigenvalue {root}")));
    }
    Ok(GrowthRate { value, period: a, trace, det })
}

/// `κ = 2·S/|A|`, the weighted sum per pair of quotients.
pub fn kappa(period: &QuotientSeq, o: Orientation) -> Result<Fraction> {
    if period.is_empty() {
        return Err(Error::EmptySequence);
    }
    if period.len() % 2 == 1 {
        return Err(Error::OutOfRange(format!("kappa needs an even period, got length {}", period.len())));
    }
    Ok(Fraction::new((2 * period.weighted_sum(o)).into(), period.len().into()))
}

/// Exact sign of `λ² - φ^S` and how it was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub lambda_squared: String,
    pub phi_exponent: u64,
    pub ordering: String,
    pub method: CompareMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyReport {
    pub classification: Classification,
    pub kappa: Fraction,
    pub growth: GrowthRate,
    pub weighted_sum: u64,
    pub certificate: Certificate,
}

/// Verdict for `x` with default comparison precision. The preperiod does not
/// affect it.
pub fn classify(x: &PeriodicCF, o: Orientation) -> Result<ClassifyReport> {
    classify_with_cap(x, o, DEFAULT_PRECISION_CAP)
}

pub fn classify_with_cap(x: &PeriodicCF, o: Orientation, max_bits: u32) -> Result<ClassifyReport> {
    let growth = growth_rate(x.period())?;
    let s = growth.period.weighted_sum(o);
    let lambda_sq = growth.value.mul(&growth.value)?;
    let exponent = i64::try_from(s).map_err(|_| Error::Overflow)?;
    let phi_s = GoldenScalar::phi_pow(exponent).to_surd();
    let cmp = lambda_sq.compare_with(&phi_s, max_bits);
    let classification = match cmp.ordering {
        Ordering::Greater => Classification::DerivInfinity,
        Ordering::Less => Classification::DerivZero,
        Ordering::Equal => Classification::Boundary,
    };
    let ordering = match cmp.ordering {
        Ordering::Greater => "greater",
        Ordering::Less => "less",
        Ordering::Equal => "equal",
    };
    let certificate = Certificate {
        lambda_squared: lambda_sq.to_string(),
        phi_exponent: s,
        ordering: ordering.into(),
        method: cmp.method,
    };
    Ok(ClassifyReport { classification, kappa: kappa(&growth.period, o)?, growth, weighted_sum: s, certificate })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnvelopeSide {
    /// `q_t q_{t-1} / φ^(S+7)` (`S+9` for the τ weights).
    Lower,
    /// `q_t² / φ^(S-5)`.
    Upper,
}

impl FromStr for EnvelopeSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(EnvelopeSide::Lower),
            "upper" => Ok(EnvelopeSide::Upper),
            _ => Err(parse_err("envelope side", s)),
        }
    }
}

/// Exact envelope value in `Q(φ)` with a rational enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub exact: GoldenScalar,
    pub enclosure: CertifiedInterval,
}

/// Envelope of the difference quotient after the prefix `a_1..a_t`.
pub fn envelope(prefix: &QuotientSeq, o: Orientation, side: EnvelopeSide) -> Result<Envelope> {
    if prefix.is_empty() {
        return Err(Error::EmptySequence);
    }
    let s = i64::try_from(prefix.weighted_sum(o)).map_err(|_| Error::Overflow)?;
    let q = prefix.continuant();
    let (numerator, exponent) = match side {
        EnvelopeSide::Lower => {
            let offset = if o == Orientation::Phi { 7 } else { 9 };
            (&q * prefix.without_last().continuant(), s + offset)
        }
        EnvelopeSide::Upper => (&q * &q, s - 5),
    };
    let exact = GoldenScalar::phi_pow(-exponent).scale(&Fraction::from_integer(numerator));
    let (lo, hi) = exact.interval(128);
    Ok(Envelope { exact, enclosure: CertifiedInterval { lo, hi } })
}

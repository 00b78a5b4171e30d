//! Quotient sequences, continuants and the weight schemas S^phi / S^tau.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Fraction = BigRational;

/// Parses `p/q`, an integer, or a finite decimal such as `0.002`.
pub fn parse_fraction(s: &str) -> Result<Fraction> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(parse_err("fraction", s));
        }
        let num: BigInt = digits.parse().map_err(|_| parse_err("fraction", s))?;
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        let v = Fraction::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| parse_err("fraction", s))?;
        let d: BigInt = d.trim().parse().map_err(|_| parse_err("fraction", s))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Fraction::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| parse_err("fraction", s))?;
    Ok(Fraction::from_integer(n))
}

/// Which of the two weight vectors is used for weighted sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Weights (1, 2, 1, 2, ...).
    Phi,
    /// Weights (2, 1, 2, 1, ...).
    Tau,
}

impl Orientation {
    /// Weight of the 0-based position `i`.
    pub fn weight(self, i: usize) -> u64 {
        match (self, i % 2) {
            (Orientation::Phi, 0) | (Orientation::Tau, 1) => 1,
            _ => 2,
        }
    }

    /// True when the 0-based position `i` carries weight 2.
    pub fn is_heavy(self, i: usize) -> bool {
        self.weight(i) == 2
    }

    pub fn dual(self) -> Self {
        match self {
            Orientation::Phi => Orientation::Tau,
            Orientation::Tau => Orientation::Phi,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Phi => "phi",
            Orientation::Tau => "tau",
        })
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "phi" => Ok(Orientation::Phi),
            "tau" => Ok(Orientation::Tau),
            _ => Err(parse_err("orientation", s)),
        }
    }
}

/// Convention for the last partial quotient of a rational number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfConvention {
    /// Final quotient at least 2 (the canonical form).
    LastAtLeastTwo,
    /// Final quotient equal to 1.
    LastIsOne,
}

/// A finite sequence of positive partial quotients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientSeq(Vec<u64>);

impl QuotientSeq {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.contains(&0) {
            return Err(Error::NonPositiveQuotient);
        }
        Ok(QuotientSeq(items))
    }

    pub fn empty() -> Self {
        QuotientSeq(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(items: Vec<u64>) -> Self {
        debug_assert!(!items.contains(&0));
        QuotientSeq(items)
    }

    pub fn items(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn reversed(&self) -> Self {
        QuotientSeq(self.0.iter().rev().copied().collect())
    }

    /// `A⁻`: the sequence without its last quotient.
    pub fn without_last(&self) -> Self {
        let n = self.0.len().saturating_sub(1);
        QuotientSeq(self.0[..n].to_vec())
    }

    /// `A₋`: the sequence without its first quotient.
    pub fn without_first(&self) -> Self {
        QuotientSeq(self.0.iter().skip(1).copied().collect())
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a QuotientSeq>) -> Self {
        QuotientSeq(parts.into_iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// The sequence repeated `m` times.
    pub fn repeat(&self, m: usize) -> Self {
        QuotientSeq(self.0.repeat(m))
    }

    pub fn continuant(&self) -> BigInt {
        continuant(&self.0)
    }

    pub fn matrix(&self) -> Result<QuotientMatrix> {
        QuotientMatrix::of(&self.0)
    }

    /// `[0; a1, ..., an]`.
    pub fn value(&self) -> Result<Fraction> {
        if self.0.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(self.cf_value())
    }

    /// `[A] = ⟨A₋⟩/⟨A⟩`, with the empty sequence evaluating to 0.
    pub fn cf_value(&self) -> Fraction {
        if self.0.is_empty() {
            return Fraction::zero();
        }
        Fraction::new(continuant(&self.0[1..]), continuant(&self.0))
    }

    pub fn weighted_sum(&self, o: Orientation) -> u64 {
        weighted_sum(&self.0, o)
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Rewrites a trailing `..., a, 1` as `..., a + 1`.
    pub fn canonical(&self) -> Self {
        let mut v = self.0.clone();
        if v.len() >= 2 && v[v.len() - 1] == 1 {
            v.pop();
            *v.last_mut().unwrap() += 1;
        }
        QuotientSeq(v)
    }

    pub fn with_convention(&self, convention: CfConvention) -> Self {
        let canon = self.canonical();
        match convention {
            CfConvention::LastAtLeastTwo => canon,
            CfConvention::LastIsOne => {
                let mut v = canon.0;
                match v.last_mut() {
                    Some(last) if *last >= 2 => {
                        *last -= 1;
                        v.push(1);
                    }
                    _ => {}
                }
                QuotientSeq(v)
            }
        }
    }
}

impl Deref for QuotientSeq {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for QuotientSeq {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        QuotientSeq::new(v)
    }
}

impl fmt::Display for QuotientSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for QuotientSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(QuotientSeq::empty());
        }
        let items = t
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| parse_err("quotient sequence", s)))
            .collect::<Result<Vec<_>>>()?;
        QuotientSeq::new(items)
    }
}

impl Serialize for QuotientSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `⟨a1, ..., an⟩` with `⟨⟩ = 1`.
pub fn continuant(a: &[u64]) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &x in a {
        let next = &cur * x + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Continuant in `u128`, or `None` on overflow.
pub fn continuant_u128(a: &[u64]) -> Option<u128> {
    let (mut prev, mut cur) = (0u128, 1u128);
    for &x in a {
        let next = cur.checked_mul(x as u128)?.checked_add(prev)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

pub fn weighted_sum(a: &[u64], o: Orientation) -> u64 {
    a.iter().enumerate().map(|(i, &x)| x * o.weight(i)).sum()
}

/// Product of the matrices `[[a_i, 1], [1, 0]]`, i.e.
/// `[[⟨A⟩, ⟨A⁻⟩], [⟨A₋⟩, ⟨A₋⁻⟩]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub full: BigInt,
    pub drop_last: BigInt,
    pub drop_first: BigInt,
    pub drop_both: BigInt,
    len: usize,
}

impl QuotientMatrix {
    pub fn of(a: &[u64]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySequence);
        }
        let (mut m00, mut m01) = (BigInt::one(), BigInt::zero());
        let (mut m10, mut m11) = (BigInt::zero(), BigInt::one());
        for &x in a {
            let n00 = &m00 * x + &m01;
            let n10 = &m10 * x + &m11;
            m01 = std::mem::replace(&mut m00, n00);
            m11 = std::mem::replace(&mut m10, n10);
        }
        Ok(QuotientMatrix { full: m00, drop_last: m01, drop_first: m10, drop_both: m11, len: a.len() })
    }

    pub fn entries(&self) -> [[BigInt; 2]; 2] {
        [[self.full.clone(), self.drop_last.clone()], [self.drop_first.clone(), self.drop_both.clone()]]
    }

    pub fn trace(&self) -> BigInt {
        &self.full + &self.drop_both
    }

    /// `(-1)^n`.
    pub fn det(&self) -> BigInt {
        if self.len % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }
}

/// Regular continued fraction of `x` in `(0, 1)`.
pub fn cf_of(x: &Fraction, convention: CfConvention) -> Result<QuotientSeq> {
    if !x.is_positive() || *x >= Fraction::one() {
        return Err(Error::OutOfRange(format!("{x} is not strictly between 0 and 1")));
    }
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut items = Vec::new();
    while !p.is_zero() {
        let (a, r) = q.div_rem(&p);
        items.push(a.to_u64().ok_or(Error::Overflow)?);
        q = std::mem::replace(&mut p, r);
    }
    Ok(QuotientSeq(items).with_convention(convention))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> QuotientSeq {
        QuotientSeq::new(v.to_vec()).unwrap()
    }

    fn frac(n: i64, d: i64) -> Fraction {
        Fraction::new(n.into(), d.into())
    }

    #[test]
    fn continuant_examples() {
        assert_eq!(continuant(&[]), BigInt::one());
        assert_eq!(continuant(&[1, 2, 3, 4]), BigInt::from(43));
        assert_eq!(continuant(&[1, 3, 2, 4]), BigInt::from(40));
        assert_eq!(continuant_u128(&[1, 2, 3, 4]), Some(43));
    }

    #[test]
    fn zero_quotient_rejected() {
        assert_eq!(QuotientSeq::new(vec![1, 0]), Err(Error::NonPositiveQuotient));
        assert!("1,0,2".parse::<QuotientSeq>().is_err());
    }

    #[test]
    fn matrix_examples() {
        let m = seq(&[7, 4]).matrix().unwrap();
        assert_eq!(m.entries(), [[29.into(), 7.into()], [4.into(), 1.into()]]);
        let m = seq(&[5]).matrix().unwrap();
        assert_eq!(m.entries(), [[5.into(), 1.into()], [1.into(), 0.into()]]);
        let m = seq(&[1, 2, 3, 4]).matrix().unwrap();
        assert_eq!(m.entries(), [[43.into(), 10.into()], [30.into(), 7.into()]]);
        assert_eq!(m.det(), BigInt::one());
        assert!(QuotientSeq::empty().matrix().is_err());
    }

    #[test]
    fn values() {
        assert_eq!(seq(&[2]).value().unwrap(), frac(1, 2));
        assert_eq!(seq(&[1, 2]).value().unwrap(), frac(2, 3));
        assert_eq!(seq(&[3, 2, 3]).value().unwrap(), frac(7, 24));
        assert!(QuotientSeq::empty().value().is_err());
    }

    #[test]
    fn cf_expansion() {
        let half = frac(1, 2);
        assert_eq!(cf_of(&half, CfConvention::LastAtLeastTwo).unwrap(), seq(&[2]));
        assert_eq!(cf_of(&half, CfConvention::LastIsOne).unwrap(), seq(&[1, 1]));
        assert_eq!(cf_of(&frac(2, 5), CfConvention::LastAtLeastTwo).unwrap(), seq(&[2, 2]));
        assert_eq!(cf_of(&frac(7, 24), CfConvention::LastAtLeastTwo).unwrap(), seq(&[3, 2, 3]));
        assert!(cf_of(&frac(1, 1), CfConvention::LastAtLeastTwo).is_err());
        assert!(cf_of(&frac(0, 1), CfConvention::LastAtLeastTwo).is_err());
    }

    #[test]
    fn weighted_sums() {
        assert_eq!(seq(&[7, 4]).weighted_sum(Orientation::Phi), 15);
        assert_eq!(seq(&[7, 4]).weighted_sum(Orientation::Tau), 18);
        assert_eq!(seq(&[1, 2, 3, 4]).weighted_sum(Orientation::Phi), 16);
    }

    #[test]
    fn reverse_and_parse() {
        let a = seq(&[1, 2, 3, 4]);
        assert_eq!(a.reversed(), seq(&[4, 3, 2, 1]));
        assert_eq!(a.reversed().continuant(), a.continuant());
        assert_eq!(QuotientSeq::empty().reversed(), QuotientSeq::empty());
        assert_eq!(a.to_string().parse::<QuotientSeq>().unwrap(), a);
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(parse_fraction("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_fraction("0.002").unwrap(), frac(1, 500));
        assert_eq!(parse_fraction("-13.05").unwrap(), frac(-261, 20));
        assert_eq!(parse_fraction("7").unwrap(), frac(7, 1));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }
}

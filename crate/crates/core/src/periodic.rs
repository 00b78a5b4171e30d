//! Eventually periodic continued fractions `[0; B, A, A, A, ...]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::quotients::QuotientSeq;
use crate::surd::QuadraticSurd;

/// The quadratic irrational `[0; preperiod, period, period, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCF {
    preperiod: QuotientSeq,
    period: QuotientSeq,
}

impl PeriodicCF {
    pub fn new(preperiod: QuotientSeq, period: QuotientSeq) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(PeriodicCF { preperiod, period })
    }

    pub fn purely(period: QuotientSeq) -> Result<Self> {
        PeriodicCF::new(QuotientSeq::empty(), period)
    }

    pub fn preperiod(&self) -> &QuotientSeq {
        &self.preperiod
    }

    pub fn period(&self) -> &QuotientSeq {
        &self.period
    }

    /// Partial quotients `a1, a2, ...` without end.
    pub fn quotients(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod.iter().copied().chain(self.period.iter().copied().cycle())
    }

    /// Exact value as a quadratic surd in `(0, 1)`.
    pub fn value(&self) -> QuadraticSurd {
        let y = purely_periodic_value(&self.period);
        if self.preperiod.is_empty() {
            return y;
        }
        apply_prefix(&self.preperiod, &y).expect("denominator of a convergent map is positive")
    }

    /// The expansion of `1 - x`.
    pub fn one_minus(&self) -> PeriodicCF {
        let mut head: Vec<u64> = self.preperiod.to_vec();
        let mut period: Vec<u64> = self.period.to_vec();
        if head.is_empty() {
            head.push(period[0]);
            period.rotate_left(1);
        }
        let mut out = Vec::with_capacity(head.len() + 1);
        if head[0] == 1 {
            // [0; 1, a2, a3, ...] -> [0; a2 + 1, a3, ...]
            if head.len() == 1 {
                head.push(period[0]);
                period.rotate_left(1);
            }
            out.push(head[1] + 1);
            out.extend_from_slice(&head[2..]);
        } else {
            out.push(1);
            out.push(head[0] - 1);
            out.extend_from_slice(&head[1..]);
        }
        PeriodicCF { preperiod: QuotientSeq::from_vec_unchecked(out), period: QuotientSeq::from_vec_unchecked(period) }
    }
}

/// Positive root of `⟨A⁻⟩y² + (⟨A⟩ - ⟨A₋⁻⟩)y - ⟨A₋⟩ = 0`.
fn purely_periodic_value(period: &QuotientSeq) -> QuadraticSurd {
    let m = period.matrix().expect("period is nonempty");
    let a = &m.drop_last;
    let b = &m.full - &m.drop_both;
    let c = &m.drop_first;
    let disc = &b * &b + a * c * 4;
    QuadraticSurd::new(-b, 1.into(), disc, a * 2).expect("discriminant is positive")
}

/// `[0; prefix + y]`, the prefix followed by a tail of value `y = [0; ...]`.
pub fn apply_prefix(prefix: &QuotientSeq, y: &QuadraticSurd) -> Result<QuadraticSurd> {
    let m = prefix.matrix()?;
    let num = QuadraticSurd::from_integer(m.drop_first.clone())
        .add(&y.mul(&QuadraticSurd::from_integer(m.drop_both.clone()))?)?;
    let den =
        QuadraticSurd::from_integer(m.full.clone()).add(&y.mul(&QuadraticSurd::from_integer(m.drop_last.clone()))?)?;
    num.div(&den)
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() {
            write!(f, "[overline{{{}}}]", self.period)
        } else {
            write!(f, "[{},overline{{{}}}]", self.preperiod, self.period)
        }
    }
}

impl FromStr for PeriodicCF {
    type Err = Error;
    /// Accepts `[overline{7,4}]`, `[1,2,overline{7,4}]` or a bare period `7,4`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || parse_err("periodic continued fraction", s);
        let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) else {
            return PeriodicCF::purely(t.parse()?);
        };
        let (pre, per) = inner.split_once("overline{").ok_or_else(bad)?;
        let per = per.strip_suffix('}').ok_or_else(bad)?;
        let pre = pre.strip_suffix(',').unwrap_or(pre);
        PeriodicCF::new(pre.parse()?, per.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> PeriodicCF {
        s.parse().unwrap()
    }

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(cf("[overline{1}]").value(), surd(-1, 1, 5, 2));
        assert_eq!(cf("[overline{1,2}]").value(), surd(-1, 1, 3, 1));
        assert_eq!(cf("[overline{7,4}]").value(), surd(-14, 4, 14, 7));
    }

    #[test]
    fn preperiod_shifts_value() {
        // [0; 2, 1, 1, ...] = 1/(2 + (√5-1)/2)
        let x = cf("[2,overline{1}]").value();
        let y = surd(-1, 1, 5, 2);
        let expected =
            QuadraticSurd::from_integer(1.into()).div(&QuadraticSurd::from_integer(2.into()).add(&y).unwrap()).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn complement() {
        let one = QuadraticSurd::from_integer(1.into());
        for s in ["[overline{1}]", "[overline{2}]", "[overline{1,2}]", "[3,overline{7,4}]", "[1,overline{1,5}]"] {
            let x = cf(s);
            let y = x.one_minus();
            assert_eq!(y.value(), one.sub(&x.value()).unwrap(), "{s}");
        }
    }

    #[test]
    fn text() {
        for s in ["[overline{7,4}]", "[1,2,overline{3}]"] {
            assert_eq!(cf(s).to_string(), s);
        }
        assert_eq!(cf("7,4"), cf("[overline{7,4}]"));
        assert!("[overline{}]".parse::<PeriodicCF>().is_err());
    }
}

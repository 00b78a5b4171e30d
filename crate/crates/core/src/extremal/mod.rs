//! Extremal continuants over `M(n, S)`: all sequences of length `n` whose
//! weighted sum is `S`.

mod blocks;
mod brute;
mod construct;

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotients::{Fraction, Orientation, QuotientSeq};

pub use blocks::BlockLevel;
pub use brute::{brute_extrema, Extrema, DEFAULT_BRUTE_CAP};
pub use construct::{balanced_max, max_construct, min_construct, normalize_m4, reduce_m3, Construction};

/// The class `M(n, S)` under a weight orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalInstance {
    pub n: usize,
    pub s: u64,
    pub orientation: Orientation,
}

impl ExtremalInstance {
    /// Requires an even positive `n` and `S ≥ 3n/2`, the all-ones sum.
    pub fn new(n: usize, s: u64, orientation: Orientation) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OutOfRange(format!("length must be even and positive, got {n}")));
        }
        let floor = 3 * n as u64 / 2;
        if s < floor {
            return Err(Error::Infeasible(format!("weighted sum {s} below the all-ones sum {floor} for n={n}")));
        }
        Ok(ExtremalInstance { n, s, orientation })
    }

    pub fn pairs(&self) -> u64 {
        self.n as u64 / 2
    }

    /// `S / (n/2)`, the weighted sum per light/heavy pair.
    pub fn per_pair(&self) -> Fraction {
        Fraction::new(self.s.into(), self.pairs().into())
    }

    /// True when `a` belongs to the class.
    pub fn contains(&self, a: &[u64]) -> bool {
        a.len() == self.n && a.iter().all(|&x| x > 0) && crate::quotients::weighted_sum(a, self.orientation) == self.s
    }

    pub(crate) fn check(&self, a: &QuotientSeq) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("construction {a} left the class n={}, S={}", self.n, self.s)))
        }
    }
}

/// Which of the three reduced forms a per-pair sum falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum M3Case {
    /// Heavy `{a}`, light `{2a-1, 2a}`, per pair `[4a-1, 4a]`.
    Low,
    /// Heavy `{a}`, light `{2a, 2a+1}`, per pair `[4a, 4a+1]`.
    Mid,
    /// Heavy `{a, a+1}`, light `{2a+1}`, per pair `[4a+1, 4a+3]`.
    High,
}

impl fmt::Display for M3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            M3Case::Low => "low",
            M3Case::Mid => "mid",
            M3Case::High => "high",
        })
    }
}

/// A reduced form with its value sets at heavy and light positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M3Shape {
    pub a: u64,
    pub case: M3Case,
    pub heavy_set: Vec<u64>,
    pub light_set: Vec<u64>,
}

impl M3Shape {
    pub fn new(a: u64, case: M3Case) -> Self {
        let (heavy_set, light_set) = match case {
            M3Case::Low => (vec![a], vec![2 * a - 1, 2 * a]),
            M3Case::Mid => (vec![a], vec![2 * a, 2 * a + 1]),
            M3Case::High => (vec![a, a + 1], vec![2 * a + 1]),
        };
        M3Shape { a, case, heavy_set, light_set }
    }

    /// Closed per-pair range of the form.
    pub fn per_pair_range(&self) -> (u64, u64) {
        let a = self.a;
        match self.case {
            M3Case::Low => (4 * a - 1, 4 * a),
            M3Case::Mid => (4 * a, 4 * a + 1),
            M3Case::High => (4 * a + 1, 4 * a + 3),
        }
    }

    /// True when every heavy and light value of `seq` lies in the form's sets.
    /// In the high form a single light `2a` or `2a + 2` is also allowed: one
    /// of them is forced when `S` and the pair count differ in parity.
    pub fn admits(&self, seq: &[u64], o: Orientation) -> bool {
        let mut off_by_one = 0;
        for (i, &x) in seq.iter().enumerate() {
            let set = if o.is_heavy(i) { &self.heavy_set } else { &self.light_set };
            if set.contains(&x) {
                continue;
            }
            if self.case == M3Case::High && !o.is_heavy(i) && (x == 2 * self.a || x == 2 * self.a + 2) {
                off_by_one += 1;
                continue;
            }
            return false;
        }
        off_by_one <= 1
    }
}

/// The reduced form for a per-pair sum `p ≥ 7`: `a = ⌈(p - 3)/4⌉`, with
/// boundary values assigned to the lower form.
pub fn m3_parameters(per_pair: &Fraction) -> Result<M3Shape> {
    if *per_pair < Fraction::from_integer(7.into()) {
        return Err(Error::OutOfRange(format!("per-pair sum {per_pair} is below 7")));
    }
    let shifted = (per_pair - Fraction::from_integer(3.into())) / Fraction::from_integer(4.into());
    let a = shifted.ceil().to_integer().to_u64().ok_or(Error::Overflow)?;
    let four_a = Fraction::from_integer((4 * a).into());
    let case = if *per_pair <= four_a {
        M3Case::Low
    } else if *per_pair <= four_a + Fraction::from_integer(1.into()) {
        M3Case::Mid
    } else {
        M3Case::High
    };
    Ok(M3Shape::new(a, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::parse_fraction;

    fn shape(s: &str) -> M3Shape {
        m3_parameters(&parse_fraction(s).unwrap()).unwrap()
    }

    #[test]
    fn parameters() {
        let s = shape("13.05");
        assert_eq!((s.a, s.case), (3, M3Case::High));
        assert_eq!((s.light_set.clone(), s.heavy_set.clone()), (vec![7], vec![3, 4]));
        let s = shape("8");
        assert_eq!((s.a, s.case), (2, M3Case::Low));
        assert_eq!(shape("15").case, M3Case::High);
        assert_eq!(shape("15").a, 3);
        assert_eq!(shape("7").a, 1);
        assert_eq!(shape("17/2").case, M3Case::Mid);
        assert!(m3_parameters(&parse_fraction("6.9").unwrap()).is_err());
    }

    #[test]
    fn instances() {
        assert!(ExtremalInstance::new(3, 10, Orientation::Phi).is_err());
        assert!(ExtremalInstance::new(4, 5, Orientation::Phi).is_err());
        let i = ExtremalInstance::new(4, 16, Orientation::Phi).unwrap();
        assert_eq!(i.per_pair(), Fraction::from_integer(8.into()));
        assert!(i.contains(&[4, 2, 4, 2]));
        assert!(!i.contains(&[4, 2, 4, 3]));
    }
}

//! Bracketing the threshold `κ₂` inside the family of block words with light
//! quotients 7 and heavy quotients 3 or 4.
//!
//! A density `p/q` stands for the balanced word of `q` pairs, `p` of them
//! `(7, 4)` and the rest `(7, 3)`, so `κ = 13 + 2p/q`. The verdict switches
//! once from `DerivInfinity` to `DerivZero` as the density grows, and the
//! switching point is located by a Stern–Brocot descent: from a bracket of
//! adjacent fractions `L < R` the mediant is probed, then `kL + R` (or
//! `L + kR`) for `k = 2, 4, 8, ...` until the verdict flips, then the last
//! doubling gap is bisected.

use serde::Serialize;

use crate::classify::{classify, Classification};
use crate::error::{Error, Result};
use crate::extremal::{balanced_max, ExtremalInstance};
use crate::periodic::PeriodicCF;
use crate::quotients::{Fraction, Orientation};

const MAX_PROBES: usize = 256;

/// Number `p` of `(7, 4)` pairs among `q` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Density {
    pub p: u64,
    pub q: u64,
}

impl Density {
    fn combine(self, k: u64, other: Density) -> Density {
        Density { p: k * self.p + other.p, q: k * self.q + other.q }
    }

    pub fn value(&self) -> Fraction {
        Fraction::new(self.p.into(), self.q.into())
    }

    /// `13 + 2p/q`.
    pub fn kappa(&self) -> Fraction {
        Fraction::new((13 * self.q + 2 * self.p).into(), self.q.into())
    }

    /// `κ` written over the pair count, such as `496/38`.
    pub fn kappa_text(&self) -> String {
        format!("{}/{}", 13 * self.q + 2 * self.p, self.q)
    }

    /// The balanced block word of this density.
    pub fn word(&self) -> Result<PeriodicCF> {
        let n = usize::try_from(2 * self.q).map_err(|_| Error::Overflow)?;
        let inst = ExtremalInstance::new(n, 13 * self.q + 2 * self.p, Orientation::Phi)?;
        PeriodicCF::purely(balanced_max(&inst)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub density: String,
    pub period_length: usize,
    pub kappa: String,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaBracket {
    /// Largest density seen with verdict `DerivInfinity`.
    pub lo: Density,
    /// Smallest density seen with verdict `DerivZero`.
    pub hi: Density,
    pub witness_lo: PeriodicCF,
    pub witness_hi: PeriodicCF,
    pub trace: Vec<TraceStep>,
}

impl KappaBracket {
    pub fn width(&self) -> Fraction {
        self.hi.kappa() - self.lo.kappa()
    }
}

struct Search {
    lo: Density,
    hi: Density,
    trace: Vec<TraceStep>,
    eps: Fraction,
}

impl Search {
    fn done(&self) -> bool {
        self.hi.kappa() - self.lo.kappa() <= self.eps
    }

    /// Classifies `d` and tightens the bracket; true for `DerivZero`.
    fn probe(&mut self, d: Density) -> Result<bool> {
        if self.trace.len() >= MAX_PROBES {
            return Err(Error::CapExceeded { cap: MAX_PROBES as u64 });
        }
        let word = d.word()?;
        let verdict = classify(&word, Orientation::Phi)?.classification;
        self.trace.push(TraceStep {
            step: self.trace.len() + 1,
            density: format!("{}/{}", d.p, d.q),
            period_length: word.period().len(),
            kappa: d.kappa_text(),
            classification: verdict,
        });
        match verdict {
            Classification::DerivZero => {
                self.hi = d;
                Ok(true)
            }
            Classification::DerivInfinity => {
                self.lo = d;
                Ok(false)
            }
            Classification::Boundary => Err(Error::Inconsistent(format!("density {}/{} is a boundary word", d.p, d.q))),
        }
    }

    /// Continues from the adjacent pair `(l, r)` after its mediant was
    /// probed. `toward_lo` probes `k·l + r`, otherwise `l + k·r`.
    fn gallop(&mut self, l: Density, r: Density, toward_lo: bool) -> Result<()> {
        let at = |k: u64| if toward_lo { l.combine(k, r) } else { r.combine(k, l) };
        let moved = |zero: bool| zero == toward_lo;
        let mut good = 1;
        let mut k = 2;
        loop {
            if self.done() {
                return Ok(());
            }
            let zero = self.probe(at(k))?;
            if !moved(zero) {
                break;
            }
            good = k;
            k *= 2;
        }
        let (mut a, mut b) = (good, k);
        while b - a > 1 {
            if self.done() {
                return Ok(());
            }
            let mid = a + (b - a) / 2;
            if moved(self.probe(at(mid))?) {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(())
    }
}

/// Encloses `κ₂` to width `eps` by classifying balanced words of
/// Stern–Brocot densities. The endpoint words `(7,3)` and `(7,4)` are
/// checked first and are not part of the trace.
pub fn kappa2_bracket(eps: &Fraction) -> Result<KappaBracket> {
    if *eps <= Fraction::from_integer(0.into()) {
        return Err(Error::OutOfRange(format!("epsilon must be positive, got {eps}")));
    }
    let zero = Density { p: 0, q: 1 };
    let one = Density { p: 1, q: 1 };
    let ends = [(zero, Classification::DerivInfinity), (one, Classification::DerivZero)];
    for (d, expected) in ends {
        let got = classify(&d.word()?, Orientation::Phi)?.classification;
        if got != expected {
            return Err(Error::Inconsistent(format!(
                "endpoint density {}/{}: expected {expected}, got {got}",
                d.p, d.q
            )));
        }
    }
    let mut s = Search { lo: zero, hi: one, trace: Vec::new(), eps: eps.clone() };
    while !s.done() {
        let (l, r) = (s.lo, s.hi);
        let zero_side = s.probe(l.combine(1, r))?;
        s.gallop(l, r, zero_side)?;
    }
    Ok(KappaBracket { witness_lo: s.lo.word()?, witness_hi: s.hi.word()?, lo: s.lo, hi: s.hi, trace: s.trace })
}

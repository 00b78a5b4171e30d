//! Quadratic surds `(p + q√d)/r` with exact ordering.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::decimal::DecimalDigits;
use crate::error::{parse_err, Error, Result};
use crate::quotients::Fraction;

/// Default cap on interval-refinement precision, in bits.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
const START_BITS: u32 = 64;

/// Square factors `k²` with `k` below this bound are pulled out of radicands.
/// A radicand that is itself a perfect square is always folded away.
const SQUARE_TRIAL_BOUND: u64 = 1000;

/// The real number `(p + q√d)/r` with `r > 0`, `d > 0`.
///
/// Canonical form: `gcd(p, q, r) = 1`, `q = 0` iff `d = 1`, and `d` carries
/// no square factor below the trial bound. Equality is decided algebraically,
/// so two surds compare equal whenever their values agree.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

/// How an ordering was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CompareMethod {
    /// Disjoint dyadic enclosures at the given precision.
    Interval { bits: u32 },
    /// Exact sign computation on squared rational quantities.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurdComparison {
    pub ordering: Ordering,
    pub method: CompareMethod,
}

fn small_primes() -> Vec<u64> {
    let mut sieve = vec![true; SQUARE_TRIAL_BOUND as usize];
    let mut primes = Vec::new();
    for i in 2..SQUARE_TRIAL_BOUND as usize {
        if sieve[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < sieve.len() {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// Splits `d` into `(k, d')` with `d = k²·d'`.
fn extract_squares(d: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut rest = d.clone();
    for p in small_primes() {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            k *= p;
        }
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        k *= s;
        rest = BigInt::one();
    }
    (k, rest)
}

/// Sign of `x + y√d` for rationals `x`, `y` and `d > 0`.
fn sign_of(x: &Fraction, y: &Fraction, d: &BigInt) -> Ordering {
    let sx = x.cmp(&Fraction::zero());
    let sy = y.cmp(&Fraction::zero());
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = y * y * Fraction::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::OutOfRange(format!("radicand {d}")));
        }
        let (k, d) = if d.is_zero() { (BigInt::zero(), BigInt::one()) } else { extract_squares(&d) };
        Ok(Self::reduced(p, q * k, d, r))
    }

    /// Normalizes signs, folds `d = 1` and divides out the common gcd.
    /// The radicand must already be free of the extracted squares.
    fn reduced(mut p: BigInt, mut q: BigInt, mut d: BigInt, mut r: BigInt) -> Self {
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadraticSurd { p, q, d, r }
    }

    /// `alpha + beta√d` with rational coefficients over an already-canonical `d`.
    fn from_coeffs(alpha: &Fraction, beta: &Fraction, d: &BigInt) -> Self {
        let r = alpha.denom().lcm(beta.denom());
        let p = alpha.numer() * (&r / alpha.denom());
        let q = beta.numer() * (&r / beta.denom());
        Self::reduced(p, q, d.clone(), r)
    }

    pub fn from_fraction(x: &Fraction) -> Self {
        Self::reduced(x.numer().clone(), BigInt::zero(), BigInt::one(), x.denom().clone())
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::reduced(n, BigInt::zero(), BigInt::one(), BigInt::one())
    }

    /// `x + y√d` for rationals `x`, `y`.
    pub fn from_parts(x: &Fraction, y: &Fraction, d: &BigInt) -> Result<Self> {
        if d.is_zero() || y.is_zero() {
            return Ok(Self::from_fraction(x));
        }
        let (k, d) = extract_squares(d);
        Ok(Self::from_coeffs(x, &(y * Fraction::from_integer(k)), &d))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// `p/r`.
    pub fn rational_part(&self) -> Fraction {
        Fraction::new(self.p.clone(), self.r.clone())
    }

    /// `q/r`.
    pub fn surd_coeff(&self) -> Fraction {
        Fraction::new(self.q.clone(), self.r.clone())
    }

    pub fn conj(&self) -> Self {
        Self::reduced(self.p.clone(), -&self.q, self.d.clone(), self.r.clone())
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::IncompatibleRadicands(self.d.to_string(), other.d.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::from_coeffs(
            &(self.rational_part() + other.rational_part()),
            &(self.surd_coeff() + other.surd_coeff()),
            &d,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::reduced(-&self.p, -&self.q, self.d.clone(), self.r.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let (a, b) = (self.rational_part(), self.surd_coeff());
        let (c, e) = (other.rational_part(), other.surd_coeff());
        let dd = Fraction::from_integer(d.clone());
        Ok(Self::from_coeffs(&(&a * &c + &b * &e * dd), &(&a * &e + &b * &c), &d))
    }

    pub fn recip(&self) -> Result<Self> {
        let (a, b) = (self.rational_part(), self.surd_coeff());
        let norm = &a * &a - &b * &b * Fraction::from_integer(self.d.clone());
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coeffs(&(&a / &norm), &(-&b / &norm), &self.d))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn mul_fraction(&self, x: &Fraction) -> Self {
        Self::from_coeffs(&(self.rational_part() * x), &(self.surd_coeff() * x), &self.d)
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.rational_part(), &self.surd_coeff(), &self.d)
    }

    /// Integers `(lo, hi)` with `lo/2^bits ≤ self ≤ hi/2^bits`.
    pub fn enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let scale = BigInt::one() << bits;
        let s = (&self.d << (2 * bits)).sqrt();
        let exact = &s * &s == (&self.d << (2 * bits));
        let s_hi = if exact { s.clone() } else { &s + 1 };
        let base = &self.p * &scale;
        let (lo, hi) = if self.q.is_negative() {
            (&base + &self.q * &s_hi, &base + &self.q * &s)
        } else {
            (&base + &self.q * &s, &base + &self.q * &s_hi)
        };
        (lo.div_floor(&self.r), hi.div_ceil(&self.r))
    }

    /// Rational enclosure of width at most about `2^(1-bits)`.
    pub fn interval(&self, bits: u32) -> (Fraction, Fraction) {
        let (lo, hi) = self.enclosure(bits);
        let den = BigInt::one() << bits;
        (Fraction::new(lo, den.clone()), Fraction::new(hi, den))
    }

    /// Exact comparison, trying interval refinement from 64 bits up to
    /// `max_bits` before the exact sign computation.
    pub fn compare_with(&self, other: &Self, max_bits: u32) -> SurdComparison {
        let mut bits = START_BITS;
        while bits <= max_bits.max(START_BITS) {
            let (alo, ahi) = self.enclosure(bits);
            let (blo, bhi) = other.enclosure(bits);
            if ahi < blo {
                return SurdComparison { ordering: Ordering::Less, method: CompareMethod::Interval { bits } };
            }
            if bhi < alo {
                return SurdComparison { ordering: Ordering::Greater, method: CompareMethod::Interval { bits } };
            }
            bits *= 2;
        }
        SurdComparison { ordering: self.exact_cmp(other), method: CompareMethod::Exact }
    }

    /// Sign of `self - other` via squaring; works for any pair of radicands.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        let c = self.rational_part() - other.rational_part();
        let (b1, d1) = (self.surd_coeff(), &self.d);
        let (b2, d2) = (other.surd_coeff(), &other.d);
        if d1 == d2 || self.is_rational() || other.is_rational() {
            let d = if self.is_rational() { d2 } else { d1 };
            return sign_of(&c, &(b1 - b2), d);
        }
        // self - other = u - w with u = c + b1√d1, w = b2√d2.
        let su = sign_of(&c, &b1, d1);
        let sw = b2.cmp(&Fraction::zero());
        match (su, sw) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Greater | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Greater,
            (Ordering::Less | Ordering::Equal, Ordering::Greater | Ordering::Equal) => Ordering::Less,
            (s, _) => {
                // u and w share the sign s; compare u² with w².
                let d1f = Fraction::from_integer(d1.clone());
                let d2f = Fraction::from_integer(d2.clone());
                let x = &c * &c + &b1 * &b1 * d1f - &b2 * &b2 * d2f;
                let y = Fraction::from_integer(2.into()) * &c * &b1;
                let sq = sign_of(&x, &y, d1);
                if s == Ordering::Greater {
                    sq
                } else {
                    sq.reverse()
                }
            }
        }
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        if self.rational_part() != other.rational_part() {
            return false;
        }
        let b1 = self.surd_coeff();
        let b2 = other.surd_coeff();
        b1.cmp(&Fraction::zero()) == b2.cmp(&Fraction::zero())
            && &b1 * &b1 * Fraction::from_integer(self.d.clone()) == &b2 * &b2 * Fraction::from_integer(other.d.clone())
    }
}

impl Eq for QuadraticSurd {}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare_with(other, DEFAULT_PRECISION_CAP).ordering
    }
}

/// Exact comparison of two surds with the given precision cap.
pub fn surd_compare(u: &QuadraticSurd, v: &QuadraticSurd, max_bits: u32) -> SurdComparison {
    u.compare_with(v, max_bits)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational_part());
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.abs(), self.d, self.r)
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || parse_err("quadratic surd", s);
        if !t.contains("sqrt") {
            return Ok(Self::from_fraction(&crate::quotients::parse_fraction(&t)?));
        }
        let (inner, r) = match t.strip_prefix('(').and_then(|x| x.rsplit_once(")/")) {
            Some((inner, r)) => (inner.to_string(), r.parse::<BigInt>().map_err(|_| bad())?),
            None => (t.clone(), BigInt::one()),
        };
        let (head, d) = inner.strip_suffix(')').and_then(|x| x.rsplit_once("sqrt(")).ok_or_else(bad)?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (p, q) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let q = match q {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            q => q.parse().map_err(|_| bad())?,
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        QuadraticSurd::new(p, q, d, r)
    }
}

impl DecimalDigits for QuadraticSurd {
    fn is_negative_value(&self) -> bool {
        self.signum() == Ordering::Less
    }
    fn is_zero_value(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn floor_abs_scaled(&self, k: u32) -> BigInt {
        let (p, q) = if self.is_negative_value() { (-&self.p, -&self.q) } else { (self.p.clone(), self.q.clone()) };
        let t = num_traits::pow(BigInt::from(10u32), k as usize);
        let x = &p * &t;
        let n = &q * &q * &self.d * &t * &t;
        let s = n.sqrt();
        let floor_num = if q.is_negative() {
            let exact = &s * &s == n;
            x - &s - if exact { 0 } else { 1 }
        } else {
            x + &s
        };
        floor_num.div_floor(&self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let s = surd(2, 2, 12, 4);
        assert_eq!((s.p(), s.q(), s.d(), s.r()), (&1.into(), &2.into(), &3.into(), &2.into()));
        let t = surd(3, 1, 4, -1);
        assert!(t.is_rational());
        assert_eq!(t.rational_part(), Fraction::from_integer((-5).into()));
        assert_eq!(t.d(), &BigInt::one());
    }

    #[test]
    fn ordering_examples() {
        let a = surd(-1, 1, 3, 1);
        let b = surd(-1, 1, 5, 2);
        assert_eq!(a.cmp(&b), Ordering::Greater);
        assert_eq!(surd(2, 1, 3, 1).cmp(&surd(2, 1, 3, 1)), Ordering::Equal);
        let lam = surd(15, 4, 14, 1);
        let lam2 = lam.mul(&lam).unwrap();
        let phi15 = crate::golden::GoldenScalar::phi_pow(15).to_surd();
        assert_eq!(lam2.cmp(&phi15), Ordering::Less);
    }

    #[test]
    fn exact_path_matches_intervals() {
        let a = surd(-1, 1, 3, 1);
        let b = surd(-1, 1, 5, 2);
        assert_eq!(a.exact_cmp(&b), Ordering::Greater);
        assert_eq!(b.exact_cmp(&a), Ordering::Less);
        assert_eq!(a.exact_cmp(&a.clone()), Ordering::Equal);
        let c = surd(0, 2, 2, 1);
        assert_eq!(surd(0, 1, 8, 1).exact_cmp(&c), Ordering::Equal);
    }

    #[test]
    fn arithmetic() {
        let x = surd(-1, 1, 5, 2);
        let sq = x.mul(&x).unwrap();
        let one_minus = QuadraticSurd::from_integer(1.into()).sub(&x).unwrap();
        assert_eq!(sq, one_minus);
        let inv = x.recip().unwrap();
        assert_eq!(inv, surd(1, 1, 5, 2));
        assert!(x.add(&surd(0, 1, 3, 1)).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in [surd(-14, 4, 14, 7), surd(2, -3, 7, 5), surd(3, 0, 1, 4)] {
            assert_eq!(s.to_string().parse::<QuadraticSurd>().unwrap(), s);
        }
        assert_eq!("(-14+4*sqrt(14))/7".parse::<QuadraticSurd>().unwrap(), surd(-14, 4, 14, 7));
    }

    #[test]
    fn decimals() {
        let x = surd(-1, 1, 5, 2);
        assert_eq!(x.to_decimal(12), "0.618033988749");
        assert_eq!(x.conj().to_decimal(12), "-1.618033988749");
    }
}

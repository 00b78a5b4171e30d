//! Exact arithmetic in the golden field `Q(φ)`, `φ² = φ + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::decimal::DecimalDigits;
use crate::error::{parse_err, Error, Result};
use crate::quotients::{parse_fraction, Fraction};
use crate::surd::QuadraticSurd;

/// The number `a + b·φ` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenScalar {
    a: Fraction,
    b: Fraction,
}

/// `(F(n), F(n+1))` by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (f, g) = fib_pair(n / 2);
    let c = &f * (&g * 2 - &f);
    let d = &f * &f + &g * &g;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

impl GoldenScalar {
    pub fn new(a: Fraction, b: Fraction) -> Self {
        GoldenScalar { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenScalar::new(Fraction::from_integer(a.into()), Fraction::from_integer(b.into()))
    }

    pub fn from_fraction(a: Fraction) -> Self {
        GoldenScalar::new(a, Fraction::zero())
    }

    pub fn zero() -> Self {
        GoldenScalar::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenScalar::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        GoldenScalar::from_ints(0, 1)
    }

    /// `φ⁻¹ = φ - 1`.
    pub fn phi_inv() -> Self {
        GoldenScalar::from_ints(-1, 1)
    }

    /// `τ = φ⁻² = 2 - φ`.
    pub fn tau() -> Self {
        GoldenScalar::from_ints(2, -1)
    }

    /// Rational part `a`.
    pub fn a(&self) -> &Fraction {
        &self.a
    }

    /// Coefficient `b` of `φ`.
    pub fn b(&self) -> &Fraction {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `φ^k` via `φ^k = F(k-1) + F(k)φ` and
    /// `φ^-k = (-1)^k (F(k+1) - F(k)φ)`.
    pub fn phi_pow(k: i64) -> Self {
        let n = k.unsigned_abs();
        let (f, g) = fib_pair(n);
        if k >= 0 {
            // F(n-1) = F(n+1) - F(n)
            let prev = &g - &f;
            GoldenScalar::new(Fraction::from_integer(prev), Fraction::from_integer(f))
        } else {
            let s = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            GoldenScalar::new(Fraction::from_integer(&s * g), Fraction::from_integer(-s * f))
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate `a + b(1 - φ)`.
    pub fn conj(&self) -> Self {
        GoldenScalar::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `a² + ab - b²`.
    pub fn norm(&self) -> Fraction {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(GoldenScalar::new(c.a / &n, c.b / n))
    }

    pub fn scale(&self, x: &Fraction) -> Self {
        GoldenScalar::new(&self.a * x, &self.b * x)
    }

    /// Sign of `a + bφ = ((2a + b) + b√5)/2`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let x = Fraction::from_integer(2.into()) * &self.a + &self.b;
        let y = &self.b;
        let zero = Fraction::zero();
        let (sx, sy) = (x.cmp(&zero), y.cmp(&zero));
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        if &x * &x > y * y * Fraction::from_integer(5.into()) {
            sx
        } else {
            sy
        }
    }

    pub fn cmp_fraction(&self, x: &Fraction) -> Ordering {
        (self - &GoldenScalar::from_fraction(x.clone())).signum()
    }

    /// The same number as `((2a + b) + b√5)/2`.
    pub fn to_surd(&self) -> QuadraticSurd {
        let two = Fraction::from_integer(2.into());
        QuadraticSurd::from_parts(&(&self.a + &self.b / &two), &(&self.b / two), &5.into())
            .expect("5 is a valid radicand")
    }

    /// Rational enclosure `[lo, hi]` of width at most `2^(1-bits)`.
    pub fn interval(&self, bits: u32) -> (Fraction, Fraction) {
        self.to_surd().interval(bits)
    }
}

impl Add for &GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, o: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, o: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, o: &GoldenScalar) -> GoldenScalar {
        let bd = &self.b * &o.b;
        GoldenScalar::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, o: GoldenScalar) -> GoldenScalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        -&self
    }
}

impl PartialOrd for GoldenScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_positive() {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*phi", self.b)
    }
}

impl FromStr for GoldenScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("phi") else {
            return Ok(GoldenScalar::from_fraction(parse_fraction(&t)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (a, b) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let b = match b {
            "" | "+" => Fraction::one(),
            "-" => -Fraction::one(),
            b => parse_fraction(b.trim_start_matches('+')).map_err(|_| parse_err("golden scalar", s))?,
        };
        let a = parse_fraction(a).map_err(|_| parse_err("golden scalar", s))?;
        Ok(GoldenScalar::new(a, b))
    }
}

impl DecimalDigits for GoldenScalar {
    fn is_negative_value(&self) -> bool {
        self.signum() == Ordering::Less
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn floor_abs_scaled(&self, k: u32) -> BigInt {
        self.to_surd().floor_abs_scaled(k)
    }
}

//! Evaluation of `g_λ` by mediant descent and by the finite alternating series.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::decimal::DecimalDigits;
use crate::error::{parse_err, Error, Result};
use crate::golden::GoldenScalar;
use crate::periodic::PeriodicCF;
use crate::quotients::{cf_of, parse_fraction, CfConvention, Fraction, Orientation, QuotientSeq};

/// Default cap on the Farey order accepted by [`sample_farey`].
pub const DEFAULT_FAREY_CAP: u64 = 2048;

/// The parameter `λ` of `g_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaKind {
    /// `λ = 1/2`, Minkowski's question-mark function.
    Half,
    /// `λ = φ⁻¹`.
    PhiInv,
    /// `λ = τ = φ⁻²`.
    Tau,
    /// Any rational strictly inside `(0, 1)`.
    Rational(Fraction),
}

impl LambdaKind {
    pub fn rational(x: Fraction) -> Result<Self> {
        if !x.is_positive() || x >= Fraction::one() {
            return Err(Error::OutOfRange(format!("lambda {x} is not strictly between 0 and 1")));
        }
        Ok(LambdaKind::Rational(x))
    }

    fn is_golden(&self) -> bool {
        matches!(self, LambdaKind::PhiInv | LambdaKind::Tau)
    }

    fn as_fraction(&self) -> Option<Fraction> {
        match self {
            LambdaKind::Half => Some(Fraction::new(1.into(), 2.into())),
            LambdaKind::Rational(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for LambdaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaKind::Half => f.write_str("half"),
            LambdaKind::PhiInv => f.write_str("phi-inv"),
            LambdaKind::Tau => f.write_str("tau"),
            LambdaKind::Rational(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for LambdaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "half" | "1/2" => Ok(LambdaKind::Half),
            "phi-inv" | "phi_inv" | "phiinv" => Ok(LambdaKind::PhiInv),
            "tau" => Ok(LambdaKind::Tau),
            other => LambdaKind::rational(parse_fraction(other).map_err(|_| parse_err("lambda", s))?),
        }
    }
}

/// An exact value of `g_λ`: rational for rational `λ`, golden otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GValue {
    Rational(Fraction),
    Golden(GoldenScalar),
}

impl GValue {
    /// Embeds into the golden field, where both kinds can be compared.
    pub fn to_golden(&self) -> GoldenScalar {
        match self {
            GValue::Rational(x) => GoldenScalar::from_fraction(x.clone()),
            GValue::Golden(g) => g.clone(),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            GValue::Rational(x) => x.to_decimal(digits),
            GValue::Golden(g) => g.to_decimal(digits),
        }
    }
}

impl fmt::Display for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GValue::Rational(x) => write!(f, "{x}"),
            GValue::Golden(g) => write!(f, "{g}"),
        }
    }
}

/// Closed interval `[lo, hi]` known to contain an exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lo: Fraction,
    pub hi: Fraction,
}

impl CertifiedInterval {
    pub fn width(&self) -> Fraction {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_golden(&self, x: &GoldenScalar) -> bool {
        x.cmp_fraction(&self.lo).is_ge() && x.cmp_fraction(&self.hi).is_le()
    }
}

/// Minimal field interface shared by rationals and the golden field.
trait Scalar: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::ring_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Fraction {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// `a + bφ` with integer coefficients. Both golden parameters lie in `Z[φ]`,
/// so the descent never leaves it and avoids rational normalization.
#[derive(Clone)]
struct ZPhi(BigInt, BigInt);

impl ZPhi {
    fn phi_inv() -> Self {
        ZPhi(-BigInt::one(), BigInt::one())
    }

    fn tau() -> Self {
        ZPhi(BigInt::from(2), -BigInt::one())
    }

    fn into_golden(self) -> GoldenScalar {
        GoldenScalar::new(Fraction::from_integer(self.0), Fraction::from_integer(self.1))
    }
}

impl Scalar for ZPhi {
    fn ring_zero() -> Self {
        ZPhi(BigInt::zero(), BigInt::zero())
    }
    fn ring_one() -> Self {
        ZPhi(BigInt::one(), BigInt::zero())
    }
    fn add(&self, o: &Self) -> Self {
        ZPhi(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Self) -> Self {
        ZPhi(&self.0 - &o.0, &self.1 - &o.1)
    }
    // φ² = φ + 1
    fn mul(&self, o: &Self) -> Self {
        let bd = &self.1 * &o.1;
        ZPhi(&self.0 * &o.0 + &bd, &self.0 * &o.1 + &self.1 * &o.0 + bd)
    }
}

fn check_unit(x: &Fraction) -> Result<()> {
    if x.is_negative() || *x > Fraction::one() {
        return Err(Error::OutOfRange(format!("{x} is not in [0, 1]")));
    }
    Ok(())
}

fn mediant_descent<T: Scalar>(lambda: &T, x: &Fraction) -> T {
    let one_minus = T::ring_one().sub(lambda);
    let (mut l, mut r) = ((BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::one()));
    let (mut gl, mut gr) = (T::ring_zero(), T::ring_one());
    if x.is_zero() {
        return gl;
    }
    if x.is_one() {
        return gr;
    }
    loop {
        let m = (&l.0 + &r.0, &l.1 + &r.1);
        let gm = one_minus.mul(&gl).add(&lambda.mul(&gr));
        match (x.numer() * &m.1).cmp(&(&m.0 * x.denom())) {
            Ordering::Equal => return gm,
            Ordering::Less => {
                r = m;
                gr = gm;
            }
            Ordering::Greater => {
                l = m;
                gl = gm;
            }
        }
    }
}

/// `g_λ(x)` by descending the Stern–Brocot tree from `(0/1, 1/1)` and applying
/// `g(m) = (1 - λ)g(left) + λ g(right)` at every mediant `m`.
///
/// The cost is proportional to the sum of the partial quotients of `x`.
pub fn g_mediant(lambda: &LambdaKind, x: &Fraction) -> Result<GValue> {
    check_unit(x)?;
    Ok(match lambda {
        LambdaKind::PhiInv => GValue::Golden(mediant_descent(&ZPhi::phi_inv(), x).into_golden()),
        LambdaKind::Tau => GValue::Golden(mediant_descent(&ZPhi::tau(), x).into_golden()),
        _ => GValue::Rational(mediant_descent(&lambda.as_fraction().expect("rational kind"), x)),
    })
}

/// Sum of `(-1)^(i-1) λ^(odd_i - 1) (1-λ)^(even_i)` over the `t = |A|` terms,
/// where `odd_i` and `even_i` are the sums of odd- and even-indexed quotients
/// among the first `i`.
fn series_generic<T: Scalar>(lambda: &T, a: &[u64]) -> T {
    let one_minus = T::ring_one().sub(lambda);
    let (mut odd, mut even) = (0u64, 0u64);
    let mut acc = T::ring_zero();
    for (i, &x) in a.iter().enumerate() {
        if i % 2 == 0 {
            odd += x;
        } else {
            even += x;
        }
        let term = lambda.pow(odd - 1).mul(&one_minus.pow(even));
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Exponent offset `c` such that the golden series terms are `±φ^-(S_i - c)`.
fn golden_offset(lambda: &LambdaKind) -> (Orientation, i64) {
    match lambda {
        LambdaKind::PhiInv => (Orientation::Phi, 1),
        LambdaKind::Tau => (Orientation::Tau, 2),
        _ => unreachable!("golden kinds only"),
    }
}

fn golden_series(lambda: &LambdaKind, a: &[u64]) -> GoldenScalar {
    let (o, c) = golden_offset(lambda);
    let mut s = 0i64;
    let mut acc = GoldenScalar::zero();
    for (i, &x) in a.iter().enumerate() {
        s += (x * o.weight(i)) as i64;
        let term = GoldenScalar::phi_pow(c - s);
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `g_λ([0; a1, ..., at])` by the finite alternating series. Sequences ending
/// in 1 are first rewritten to end in a quotient of at least 2.
pub fn g_finite_series(lambda: &LambdaKind, a: &QuotientSeq) -> Result<GValue> {
    if a.is_empty() {
        return Err(Error::EmptySequence);
    }
    let a = a.canonical();
    Ok(if lambda.is_golden() {
        GValue::Golden(golden_series(lambda, &a))
    } else {
        GValue::Rational(series_generic(&lambda.as_fraction().expect("rational kind"), &a))
    })
}

/// Minkowski's `?(x) = Σ (-1)^(i-1) / 2^(a1 + ... + ai - 1)`.
pub fn question_mark(x: &Fraction) -> Result<Fraction> {
    check_unit(x)?;
    if x.is_zero() || x.is_one() {
        return Ok(x.clone());
    }
    let a = cf_of(x, CfConvention::LastAtLeastTwo)?;
    let mut acc = Fraction::zero();
    let mut s = 0u64;
    for (i, &q) in a.iter().enumerate() {
        s += q;
        let term = Fraction::new(1.into(), num_traits::pow(BigInt::from(2u32), (s - 1) as usize));
        acc = if i % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Certified enclosure of `g_λ(x)` for `λ ∈ {φ⁻¹, τ}` and a quadratic irrational
/// `x`, of width at most `tol`.
///
/// The alternating series is truncated once the next term drops below `tol/2`;
/// the omitted tail lies between zero and that term.
pub fn g_interval(lambda: &LambdaKind, x: &PeriodicCF, tol: &Fraction) -> Result<CertifiedInterval> {
    if !tol.is_positive() {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tol}")));
    }
    if !lambda.is_golden() {
        return Err(Error::InvalidTransform(format!("interval evaluation needs a golden λ, got {lambda}")));
    }
    let (o, c) = golden_offset(lambda);
    let half_tol = tol / Fraction::from_integer(2.into());
    let mut s = 0i64;
    let mut acc = GoldenScalar::zero();
    let mut quotients = x.quotients().enumerate();
    let next_term = loop {
        let (i, q) = quotients.next().expect("periodic expansion is infinite");
        s += (q * o.weight(i)) as i64;
        let term = GoldenScalar::phi_pow(c - s);
        let signed = if i % 2 == 0 { term.clone() } else { -&term };
        if term.cmp_fraction(&half_tol).is_lt() {
            break signed;
        }
        acc = &acc + &signed;
    };
    let other = &acc + &next_term;
    let (lo_g, hi_g) = if acc <= other { (acc, other) } else { (other, acc) };
    // Outward rounding; the coefficients grow with the truncation point, so
    // refine until the rounded interval fits the tolerance.
    let mut bits = 64u32;
    loop {
        let (lo, _) = lo_g.interval(bits);
        let (_, hi) = hi_g.interval(bits);
        if &hi - &lo <= *tol {
            return Ok(CertifiedInterval { lo, hi });
        }
        bits *= 2;
    }
}

/// Every Farey fraction of order at most `depth` in `[0, 1]`, increasing, with
/// the exact value of `g_λ`, produced by one in-order walk of the
/// Stern–Brocot tree.
pub fn sample_farey(lambda: &LambdaKind, depth: u64, cap: u64) -> Result<Vec<(Fraction, GValue)>> {
    if depth == 0 {
        return Err(Error::OutOfRange("Farey order 0".into()));
    }
    if depth > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(match lambda {
        LambdaKind::PhiInv => wrap(farey_walk(&ZPhi::phi_inv(), depth), |g| GValue::Golden(g.into_golden())),
        LambdaKind::Tau => wrap(farey_walk(&ZPhi::tau(), depth), |g| GValue::Golden(g.into_golden())),
        _ => wrap(farey_walk(&lambda.as_fraction().expect("rational kind"), depth), GValue::Rational),
    })
}

fn wrap<T>(v: Vec<(Fraction, T)>, f: impl Fn(T) -> GValue) -> Vec<(Fraction, GValue)> {
    v.into_iter().map(|(x, g)| (x, f(g))).collect()
}

fn farey_walk<T: Scalar>(lambda: &T, depth: u64) -> Vec<(Fraction, T)> {
    let one_minus = T::ring_one().sub(lambda);
    let frac = |p: u64, q: u64| Fraction::new(p.into(), q.into());
    let mut out = vec![(frac(0, 1), T::ring_zero())];
    // Explicit stack of pending intervals; `Emit` records a node between its subtrees.
    enum Job<T> {
        Split((u64, u64), T, (u64, u64), T),
        Emit((u64, u64), T),
    }
    let mut stack = vec![Job::Split((0, 1), T::ring_zero(), (1, 1), T::ring_one())];
    while let Some(job) = stack.pop() {
        match job {
            Job::Emit(m, g) => out.push((frac(m.0, m.1), g)),
            Job::Split(l, gl, r, gr) => {
                let m = (l.0 + r.0, l.1 + r.1);
                if m.1 > depth {
                    continue;
                }
                let gm = one_minus.mul(&gl).add(&lambda.mul(&gr));
                stack.push(Job::Split(m, gm.clone(), r, gr));
                stack.push(Job::Emit(m, gm.clone()));
                stack.push(Job::Split(l, gl, m, gm));
            }
        }
    }
    out.push((frac(1, 1), T::ring_one()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> Fraction {
        Fraction::new(n.into(), d.into())
    }

    fn seq(v: &[u64]) -> QuotientSeq {
        QuotientSeq::new(v.to_vec()).unwrap()
    }

    fn golden(a: i64, b: i64) -> GValue {
        GValue::Golden(GoldenScalar::from_ints(a, b))
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(g_mediant(&LambdaKind::PhiInv, &frac(1, 2)).unwrap(), golden(-1, 1));
        assert_eq!(g_mediant(&LambdaKind::Half, &frac(1, 3)).unwrap(), GValue::Rational(frac(1, 4)));
        assert_eq!(g_mediant(&LambdaKind::PhiInv, &frac(2, 5)).unwrap(), golden(7, -4));
        assert!(g_mediant(&LambdaKind::Half, &frac(3, 2)).is_err());
    }

    #[test]
    fn series_examples() {
        assert_eq!(g_finite_series(&LambdaKind::PhiInv, &seq(&[2])).unwrap(), golden(-1, 1));
        assert_eq!(g_finite_series(&LambdaKind::PhiInv, &seq(&[2, 2])).unwrap(), golden(7, -4));
        assert_eq!(g_finite_series(&LambdaKind::Tau, &seq(&[2])).unwrap(), golden(2, -1));
        assert!(g_finite_series(&LambdaKind::Tau, &QuotientSeq::empty()).is_err());
    }

    #[test]
    fn small_mediant_values() {
        let lam = frac(2, 7);
        let l = LambdaKind::rational(lam.clone()).unwrap();
        let g = |x| match g_mediant(&l, &x).unwrap() {
            GValue::Rational(v) => v,
            _ => unreachable!(),
        };
        assert_eq!(g(frac(1, 2)), lam);
        assert_eq!(g(frac(1, 3)), &lam * &lam);
        assert_eq!(g(frac(2, 3)), &lam * (frac(2, 1) - &lam));
    }

    #[test]
    fn question_mark_examples() {
        assert_eq!(question_mark(&frac(1, 3)).unwrap(), frac(1, 4));
        assert_eq!(question_mark(&frac(1, 2)).unwrap(), frac(1, 2));
        assert_eq!(question_mark(&frac(2, 5)).unwrap(), frac(3, 8));
    }

    #[test]
    fn farey_tables() {
        let t = sample_farey(&LambdaKind::Half, 2, 10).unwrap();
        let xs: Vec<_> = t.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(xs, vec![frac(0, 1), frac(1, 2), frac(1, 1)]);
        assert_eq!(t[1].1, GValue::Rational(frac(1, 2)));
        let t = sample_farey(&LambdaKind::PhiInv, 3, 10).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t[1], (frac(1, 3), golden(2, -1)));
        let expected = &(&GoldenScalar::tau() * &GoldenScalar::phi_inv()) + &GoldenScalar::phi_inv();
        assert_eq!(t[3], (frac(2, 3), GValue::Golden(expected)));
        assert!(sample_farey(&LambdaKind::Half, 11, 10).is_err());
    }

    #[test]
    fn interval_for_golden_point() {
        let x: PeriodicCF = "[overline{1}]".parse().unwrap();
        let tol = frac(1, 1_000_000);
        let iv = g_interval(&LambdaKind::PhiInv, &x, &tol).unwrap();
        assert!(iv.width() <= tol);
        // Every rational prefix value sits within the tolerance of the enclosure.
        let prefix = seq(&[1; 40]);
        let approx = g_finite_series(&LambdaKind::PhiInv, &prefix.without_last()).unwrap().to_golden();
        assert!(approx.cmp_fraction(&(&iv.lo - &tol)).is_ge());
        assert!(approx.cmp_fraction(&(&iv.hi + &tol)).is_le());
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!("phi-inv".parse::<LambdaKind>().unwrap(), LambdaKind::PhiInv);
        assert_eq!("1/2".parse::<LambdaKind>().unwrap(), LambdaKind::Half);
        assert_eq!("1/3".parse::<LambdaKind>().unwrap(), LambdaKind::Rational(frac(1, 3)));
        assert!("3/2".parse::<LambdaKind>().is_err());
    }
}

//! Sum-preserving transformations of quotient sequences and the exact
//! comparison tools behind them: reflections (with the exact difference
//! formula), unit variations (with the parabola vertex) and (1,2)-variations
//! (with the `c_l`/`c_r` ratio bounds).
//!
//! Positions are 1-based throughout this module.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotients::{Fraction, Orientation, QuotientSeq};

fn frac(n: u64) -> Fraction {
    Fraction::from_integer(n.into())
}

fn cf(items: &[u64]) -> Fraction {
    QuotientSeq::from_vec_unchecked(items.to_vec()).cf_value()
}

/// `⟨P,Q,R⟩ - ⟨P,Q̄,R⟩`, computed by direct subtraction and checked against
/// `⟨P⟩⟨Q⟩⟨R⟩([P̄] - [R])([Q] - [Q̄])`, where the value of an empty sequence is 0.
pub fn kan_delta(p: &QuotientSeq, q: &QuotientSeq, r: &QuotientSeq) -> Result<BigInt> {
    if q.is_empty() {
        return Err(Error::EmptySequence);
    }
    let (direct, formula) = match kan_small(p, q, r) {
        Some((d, f)) => (BigInt::from(d), Fraction::from_integer(f.into())),
        None => {
            let qr = q.reversed();
            let direct = QuotientSeq::concat([p, q, r]).continuant() - QuotientSeq::concat([p, &qr, r]).continuant();
            let scale = Fraction::from_integer(p.continuant() * q.continuant() * r.continuant());
            (direct, scale * (p.reversed().cf_value() - r.cf_value()) * (q.cf_value() - qr.cf_value()))
        }
    };
    if !formula.is_integer() || formula.to_integer() != direct {
        return Err(Error::Inconsistent(format!(
            "reflection difference for P={p}, Q={q}, R={r}: direct {direct}, formula {formula}"
        )));
    }
    Ok(direct)
}

fn continuant_of_iter(items: impl Iterator<Item = u64>) -> Option<i128> {
    let (mut cur, mut prev) = (1i128, 0i128);
    for a in items {
        let next = i128::from(a).checked_mul(cur)?.checked_add(prev)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// Both sides in `i128` when nothing overflows. Multiplying the brackets
/// through, the formula becomes `(⟨P⁻⟩⟨R⟩ - ⟨P⟩⟨R₋⟩)(⟨Q₋⟩ - ⟨Q⁻⟩)`.
fn kan_small(p: &[u64], q: &[u64], r: &[u64]) -> Option<(i128, i128)> {
    let k = |s: &[u64]| continuant_of_iter(s.iter().copied());
    let forward = continuant_of_iter(p.iter().chain(q).chain(r).copied())?;
    let backward = continuant_of_iter(p.iter().chain(q.iter().rev()).chain(r).copied())?;
    let p_drop_last = if p.is_empty() { Some(0) } else { k(&p[..p.len() - 1]) }?;
    let r_drop_first = if r.is_empty() { Some(0) } else { k(&r[1..]) }?;
    let outer = p_drop_last.checked_mul(k(r)?)?.checked_sub(k(p)?.checked_mul(r_drop_first)?)?;
    let inner = k(&q[1..])? - k(&q[..q.len() - 1])?;
    Some((forward - backward, outer.checked_mul(inner)?))
}

/// Reverses the segment `first..=last`; both ends must have the same parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reflection {
    pub first: usize,
    pub last: usize,
}

pub fn reflect(a: &QuotientSeq, r: Reflection) -> Result<QuotientSeq> {
    if r.first < 1 || r.first > r.last || r.last > a.len() {
        return Err(Error::InvalidTransform(format!("segment {}..{} out of range", r.first, r.last)));
    }
    if (r.last - r.first) % 2 != 0 {
        return Err(Error::InvalidTransform("segment ends differ in parity".into()));
    }
    let mut v = a.to_vec();
    v[r.first - 1..r.last].reverse();
    Ok(QuotientSeq::from_vec_unchecked(v))
}

/// Vertex `x_m = ([Q̄] - [Q] + [R] - [P̄]) / 2` of the parabola
/// `x ↦ ⟨P, c + x, Q, c - x, R⟩`.
pub fn vertex(p: &QuotientSeq, q: &QuotientSeq, r: &QuotientSeq) -> Fraction {
    (q.reversed().cf_value() - q.cf_value() + r.cf_value() - p.reversed().cf_value()) / frac(2)
}

/// Continuant of a sequence with rational entries.
pub fn rational_continuant(items: &[Fraction]) -> Fraction {
    let mut prev = Fraction::zero();
    let mut cur = Fraction::one();
    for x in items {
        let next = x * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `⟨P, c + x, Q, c - x, R⟩` for rational `c` and `x`.
pub fn parabola_value(p: &QuotientSeq, q: &QuotientSeq, r: &QuotientSeq, c: &Fraction, x: &Fraction) -> Fraction {
    let mut items: Vec<Fraction> = p.iter().map(|&v| frac(v)).collect();
    items.push(c + x);
    items.extend(q.iter().map(|&v| frac(v)));
    items.push(c - x);
    items.extend(r.iter().map(|&v| frac(v)));
    rational_continuant(&items)
}

/// `a_i ↦ a_i - shift`, `a_j ↦ a_j + shift` for positions of equal parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitVariation {
    pub i: usize,
    pub j: usize,
    pub shift: i64,
}

fn shifted(v: u64, by: i64) -> Result<u64> {
    let out = v as i128 + by as i128;
    if out < 1 {
        return Err(Error::NonPositiveQuotient);
    }
    u64::try_from(out).map_err(|_| Error::Overflow)
}

fn check_position(a: &QuotientSeq, i: usize) -> Result<()> {
    if i < 1 || i > a.len() {
        return Err(Error::InvalidTransform(format!("position {i} out of range 1..={}", a.len())));
    }
    Ok(())
}

pub fn apply_unit_variation(a: &QuotientSeq, v: UnitVariation) -> Result<QuotientSeq> {
    check_position(a, v.i)?;
    check_position(a, v.j)?;
    if v.i % 2 != v.j % 2 {
        return Err(Error::InvalidTransform("unit variation positions differ in parity".into()));
    }
    let mut items = a.to_vec();
    if v.i != v.j {
        items[v.i - 1] = shifted(items[v.i - 1], -v.shift)?;
        items[v.j - 1] = shifted(items[v.j - 1], v.shift)?;
    }
    Ok(QuotientSeq::from_vec_unchecked(items))
}

/// True when the parabola criterion guarantees `⟨A'⟩ ≥ ⟨A⟩`: the new offset
/// from the vertex is no larger than the old one.
pub fn is_increasing_unit(a: &QuotientSeq, v: UnitVariation) -> Result<bool> {
    let after = apply_unit_variation(a, v)?;
    if v.i == v.j || v.shift == 0 {
        return Ok(true);
    }
    let (l, r) = (v.i.min(v.j), v.i.max(v.j));
    let p = QuotientSeq::from_vec_unchecked(a[..l - 1].to_vec());
    let q = QuotientSeq::from_vec_unchecked(a[l..r - 1].to_vec());
    let rr = QuotientSeq::from_vec_unchecked(a[r..].to_vec());
    let xm = vertex(&p, &q, &rr);
    let c = (frac(a[l - 1]) + frac(a[r - 1])) / frac(2);
    let x_old = frac(a[l - 1]) - &c;
    let x_new = frac(after[l - 1]) - &c;
    Ok((x_new - &xm).abs() <= (x_old - xm).abs())
}

/// Value sets at light (weight 1) and heavy (weight 2) positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueSets {
    pub light: BTreeSet<u64>,
    pub heavy: BTreeSet<u64>,
}

impl ValueSets {
    pub fn of(a: &[u64], o: Orientation) -> Self {
        let mut light = BTreeSet::new();
        let mut heavy = BTreeSet::new();
        for (i, &x) in a.iter().enumerate() {
            if o.is_heavy(i) {
                heavy.insert(x);
            } else {
                light.insert(x);
            }
        }
        ValueSets { light, heavy }
    }

    /// True when both sets fit in windows of two consecutive integers.
    pub fn is_m4(&self) -> bool {
        let spread = |s: &BTreeSet<u64>| match (s.first(), s.last()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        };
        spread(&self.light) && spread(&self.heavy)
    }
}

/// Which coordinate of a (1,2)-variation a ratio bound refers to: the single
/// quotient `a → a + 1` or one of the paired quotients `b → b + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    Single,
    Double,
}

/// Direction of a (1,2)-variation on a word with value windows `{a, a+1}`
/// (single coordinate) and `{b, b+1}` (paired coordinate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `(a → a+1)` together with `(b+1 → b)` twice.
    RaiseSingle,
    /// `(a+1 → a)` together with `(b → b+1)` twice.
    RaiseDouble,
}

/// Lower and upper bounds for the ratio `⟨P, x+1, R⟩ / ⟨P, x, R⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBounds {
    pub c_l: Fraction,
    pub c_r: Fraction,
}

/// Ratio bounds for raising one quotient by 1 inside a word whose values lie
/// in `{a, a+1}` at that parity and `{b, b+1}` at the other.
///
/// `Single`: `c⁽¹⁾ = [b, a+1, b]`, `c⁽²⁾ = [b+1, a]`, bounds `1 + 1/(a + 2c)`.
/// `Double`: `c⁽¹⁾ = [a, b+1, a]`, `c⁽²⁾ = [a+1, b]`, bounds `1 + 1/(b + 2c)`.
pub fn c_bounds(a: u64, b: u64, which: Step) -> Result<CBounds> {
    if a == 0 || b == 0 {
        return Err(Error::NonPositiveQuotient);
    }
    let (x, c1, c2) = match which {
        Step::Single => (a, cf(&[b, a + 1, b]), cf(&[b + 1, a])),
        Step::Double => (b, cf(&[a, b + 1, a]), cf(&[a + 1, b])),
    };
    let bound = |c: Fraction| Fraction::one() + (frac(x) + frac(2) * c).recip();
    Ok(CBounds { c_l: bound(c1), c_r: bound(c2) })
}

/// The ratio-bound certificate: `c_l(single) > c_r(double)²` for
/// `RaiseSingle`, `c_l(double)² > c_r(single)` for `RaiseDouble`.
pub fn certificate_holds(a: u64, b: u64, dir: Direction) -> bool {
    let (Ok(s), Ok(d)) = (c_bounds(a, b, Step::Single), c_bounds(a, b, Step::Double)) else {
        return false;
    };
    match dir {
        Direction::RaiseSingle => s.c_l > &d.c_r * &d.c_r,
        Direction::RaiseDouble => &d.c_l * &d.c_l > s.c_r,
    }
}

/// Regimes where the certificate is proven: `b ≥ 2a + 1` for `RaiseSingle`,
/// `a ≥ 2` and `b ≤ 2a` for `RaiseDouble`.
pub fn decision_table(a: u64, b: u64, dir: Direction) -> bool {
    match dir {
        Direction::RaiseSingle => b >= 2 * a + 1,
        Direction::RaiseDouble => a >= 2 && b <= 2 * a,
    }
}

/// True when the (1,2)-variation of direction `dir` is certified to increase
/// every continuant with value windows `{a, a+1}` and `{b, b+1}`.
pub fn is_abs_increasing_12(a: u64, b: u64, dir: Direction) -> bool {
    a >= 1 && b >= 1 && decision_table(a, b, dir) && certificate_holds(a, b, dir)
}

/// Shape of a (1,2)-variation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OneTwoKind {
    /// One light quotient moves by `2·shift`.
    TwoForOne { light: usize },
    /// Two distinct light quotients move by `shift` each.
    OneOneForOne { light: (usize, usize) },
}

/// `heavy ↦ heavy - shift` balanced by `+2·shift` of light weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OneTwoVariation {
    pub heavy: usize,
    pub kind: OneTwoKind,
    pub shift: i64,
    pub orientation: Orientation,
}

impl OneTwoVariation {
    fn light_positions(&self) -> Vec<usize> {
        match self.kind {
            OneTwoKind::TwoForOne { light } => vec![light],
            OneTwoKind::OneOneForOne { light: (x, y) } => vec![x, y],
        }
    }
}

pub fn apply_12_variation(a: &QuotientSeq, v: &OneTwoVariation) -> Result<QuotientSeq> {
    let o = v.orientation;
    check_position(a, v.heavy)?;
    if !o.is_heavy(v.heavy - 1) {
        return Err(Error::InvalidTransform(format!("position {} is not heavy", v.heavy)));
    }
    for l in v.light_positions() {
        check_position(a, l)?;
        if o.is_heavy(l - 1) {
            return Err(Error::InvalidTransform(format!("position {l} is not light")));
        }
    }
    let mut items = a.to_vec();
    items[v.heavy - 1] = shifted(items[v.heavy - 1], -v.shift)?;
    match v.kind {
        OneTwoKind::TwoForOne { light } => {
            items[light - 1] = shifted(items[light - 1], 2 * v.shift)?;
        }
        OneTwoKind::OneOneForOne { light: (x, y) } => {
            if x == y {
                return Err(Error::InvalidTransform("paired light positions must differ".into()));
            }
            items[x - 1] = shifted(items[x - 1], v.shift)?;
            items[y - 1] = shifted(items[y - 1], v.shift)?;
        }
    }
    Ok(QuotientSeq::from_vec_unchecked(items))
}

/// Classifies a unit-shift `OneOneForOne` variation as `(a, b, direction)`
/// when the word's value sets fit the windows `{a, a+1}` (heavy) and
/// `{b, b+1}` (light) on both sides of the move.
pub fn variation_regime(a: &QuotientSeq, v: &OneTwoVariation) -> Option<(u64, u64, Direction)> {
    let OneTwoKind::OneOneForOne { light: (x, y) } = v.kind else {
        return None;
    };
    apply_12_variation(a, v).ok()?;
    let h = a[v.heavy - 1];
    let (lx, ly) = (a[x - 1], a[y - 1]);
    if lx != ly {
        return None;
    }
    let (hw, lw, dir) = match v.shift {
        -1 => (h, lx - 1, Direction::RaiseSingle),
        1 => (h - 1, lx, Direction::RaiseDouble),
        _ => return None,
    };
    if hw == 0 || lw == 0 {
        return None;
    }
    let sets = ValueSets::of(a, v.orientation);
    let fits = |s: &BTreeSet<u64>, w: u64| s.iter().all(|&t| t == w || t == w + 1);
    (fits(&sets.heavy, hw) && fits(&sets.light, lw)).then_some((hw, lw, dir))
}

/// True when `v` is covered by the ratio-bound certificate: its regime is
/// certified and every changed position has at least two quotients on each
/// side, so that the neighbouring tails obey the `c⁽¹⁾`/`c⁽²⁾` bounds.
pub fn is_certified_12(a: &QuotientSeq, v: &OneTwoVariation) -> bool {
    let Some((hw, lw, dir)) = variation_regime(a, v) else {
        return false;
    };
    let interior = |p: usize| p >= 3 && p + 2 <= a.len();
    interior(v.heavy) && v.light_positions().into_iter().all(interior) && is_abs_increasing_12(hw, lw, dir)
}

/// Positive multiple of the reduced numerator of
/// `c_l(a, a+1; 2a+1) - c_r(a; 2a+1, 2a+2)²`.
pub fn raise_single_certificate_polynomial(a: i64) -> BigInt {
    let c = [16i64, 96, 264, 432, 417, 198, -29, -92, -32];
    let x = BigInt::from(a);
    c.iter().fold(BigInt::zero(), |acc, &k| acc * &x + k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> QuotientSeq {
        QuotientSeq::new(v.to_vec()).unwrap()
    }

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n.into(), d.into())
    }

    #[test]
    fn kan_examples() {
        assert_eq!(kan_delta(&seq(&[1]), &seq(&[2, 3]), &seq(&[4])).unwrap(), BigInt::from(3));
        assert_eq!(kan_delta(&seq(&[5]), &seq(&[2, 7, 2]), &seq(&[1])).unwrap(), BigInt::zero());
        assert_eq!(kan_delta(&seq(&[]), &seq(&[1, 2]), &seq(&[3])).unwrap(), BigInt::from(-1));
        assert!(kan_delta(&seq(&[1]), &seq(&[]), &seq(&[1])).is_err());
    }

    #[test]
    fn kan_large_entries() {
        let big = u64::MAX / 3;
        let p = seq(&[big, 2, big]);
        let q = seq(&[big, 1, 5, big - 1]);
        let r = seq(&[3, big]);
        let direct = kan_delta(&p, &q, &r).unwrap();
        let expected =
            QuotientSeq::concat([&p, &q, &r]).continuant() - QuotientSeq::concat([&p, &q.reversed(), &r]).continuant();
        assert_eq!(direct, expected);
    }

    #[test]
    fn reflection_examples() {
        let a = seq(&[1, 2, 3, 4, 5]);
        assert_eq!(reflect(&a, Reflection { first: 3, last: 5 }).unwrap(), seq(&[1, 2, 5, 4, 3]));
        assert_eq!(reflect(&a, Reflection { first: 2, last: 2 }).unwrap(), a);
        assert!(reflect(&a, Reflection { first: 3, last: 4 }).is_err());
        assert!(reflect(&a, Reflection { first: 3, last: 7 }).is_err());
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(vertex(&seq(&[1]), &seq(&[2, 3]), &seq(&[4])), fr(-25, 56));
        assert_eq!(vertex(&seq(&[2, 5]), &seq(&[3, 1, 3]), &seq(&[5, 2])), fr(0, 1));
    }

    #[test]
    fn unit_variation_examples() {
        let a = seq(&[1, 2, 3, 4]);
        let v = UnitVariation { i: 1, j: 3, shift: -1 };
        let b = apply_unit_variation(&a, v).unwrap();
        assert_eq!(b, seq(&[2, 2, 2, 4]));
        assert_eq!(b.continuant(), BigInt::from(53));
        assert!(is_increasing_unit(&a, v).unwrap());
        let id = UnitVariation { i: 1, j: 3, shift: 0 };
        assert_eq!(apply_unit_variation(&a, id).unwrap(), a);
        assert!(is_increasing_unit(&a, id).unwrap());
        assert!(apply_unit_variation(&a, UnitVariation { i: 1, j: 2, shift: 1 }).is_err());
        assert!(apply_unit_variation(&a, UnitVariation { i: 1, j: 3, shift: 1 }).is_err());
    }

    #[test]
    fn c_bound_example() {
        let b = c_bounds(1, 3, Step::Single).unwrap();
        assert_eq!(b.c_l, fr(31, 19));
        assert_eq!(b.c_r, fr(12, 7));
    }

    #[test]
    fn closed_forms_of_the_bounds() {
        for a in 1..30i64 {
            let au = a as u64;
            let cl = c_bounds(au, 2 * au + 1, Step::Single).unwrap().c_l;
            let num = 4 * a.pow(4) + 12 * a.pow(3) + 21 * a * a + 18 * a + 7;
            let den = 4 * a.pow(4) + 8 * a.pow(3) + 13 * a * a + 9 * a + 4;
            assert_eq!(cl, fr(num, den));
            let cr = c_bounds(au, 2 * au, Step::Single).unwrap().c_r;
            assert_eq!(cr, fr(2 * a.pow(3) + 3 * a * a + 4 * a + 1, 2 * a.pow(3) + a * a + 3 * a));
        }
    }

    #[test]
    fn decision_examples() {
        assert!(is_abs_increasing_12(1, 3, Direction::RaiseSingle));
        assert!(is_abs_increasing_12(2, 4, Direction::RaiseDouble));
        assert!(!is_abs_increasing_12(1, 2, Direction::RaiseDouble));
    }

    #[test]
    fn one_two_examples() {
        let a = seq(&[1, 2, 3, 4, 5]);
        let o = Orientation::Phi;
        let v1 = OneTwoVariation { heavy: 2, kind: OneTwoKind::TwoForOne { light: 3 }, shift: -1, orientation: o };
        let b1 = apply_12_variation(&a, &v1).unwrap();
        assert_eq!(b1, seq(&[1, 3, 1, 4, 5]));
        assert_eq!(b1.weighted_sum(o), a.weighted_sum(o));
        let v2 =
            OneTwoVariation { heavy: 2, kind: OneTwoKind::OneOneForOne { light: (3, 5) }, shift: -1, orientation: o };
        assert_eq!(apply_12_variation(&a, &v2).unwrap(), seq(&[1, 3, 2, 4, 4]));
        let v0 = OneTwoVariation { shift: 0, ..v2 };
        assert_eq!(apply_12_variation(&a, &v0).unwrap(), a);
        let bad = OneTwoVariation { heavy: 3, ..v2 };
        assert!(apply_12_variation(&a, &bad).is_err());
    }

    #[test]
    fn polynomial_positive() {
        for a in 1..=100 {
            assert!(raise_single_certificate_polynomial(a).is_positive());
        }
        assert_eq!(raise_single_certificate_polynomial(1), BigInt::from(1270));
        for a in 1..20u64 {
            let s = c_bounds(a, 2 * a + 1, Step::Single).unwrap();
            let d = c_bounds(a, 2 * a + 1, Step::Double).unwrap();
            let diff = s.c_l - &d.c_r * &d.c_r;
            assert!(diff.is_positive());
            let p = raise_single_certificate_polynomial(a as i64);
            assert!((p % diff.numer()).is_zero());
        }
    }
}

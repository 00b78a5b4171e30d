//! Explicit minimizers and near-maximizers over `M(n, S)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::{m3_parameters, ExtremalInstance, M3Case};
use crate::error::{Error, Result};
use crate::quotients::{continuant, Fraction, Orientation, QuotientSeq};
use crate::variation::{is_increasing_unit, UnitVariation, ValueSets};

/// Result of a transformation chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub sequence: QuotientSeq,
    /// True when every step is covered by a monotonicity guarantee.
    pub certified: bool,
    pub steps: usize,
    /// Steps that lowered the continuant.
    pub decreasing_steps: usize,
}

impl Construction {
    fn unchanged(sequence: QuotientSeq, certified: bool) -> Self {
        Construction { sequence, certified, steps: 0, decreasing_steps: 0 }
    }
}

/// Largest continuant, lexicographically smallest among ties.
fn best_of(cands: impl IntoIterator<Item = Vec<u64>>) -> Option<(Vec<u64>, BigInt)> {
    let mut best: Option<(Vec<u64>, BigInt)> = None;
    for c in cands {
        let v = continuant(&c);
        let better = match &best {
            None => true,
            Some((bs, bv)) => v > *bv || (v == *bv && c < *bs),
        };
        if better {
            best = Some((c, v));
        }
    }
    best
}

fn from_phi(seq: Vec<u64>, o: Orientation) -> QuotientSeq {
    let mut seq = seq;
    if o == Orientation::Tau {
        seq.reverse();
    }
    QuotientSeq::from_vec_unchecked(seq)
}

/// All ones except one large heavy quotient `s`; when `S - 3n/2` is odd the
/// last light position before the end is raised to 2 as well.
pub fn min_construct(inst: &ExtremalInstance) -> Result<QuotientSeq> {
    let n = inst.n;
    let r = inst.s - 3 * n as u64 / 2;
    let mut a = vec![1u64; n];
    a[1] = r / 2 + 1;
    if r % 2 == 1 {
        let light = n.saturating_sub(2);
        a[light] += 1;
    }
    let out = from_phi(a, inst.orientation);
    inst.check(&out)?;
    Ok(out)
}

/// Repeats the best unit move `(a_i - 1, a_j + 1)` between positions of equal
/// parity with `a_i - a_j ≥ 2` until each parity class spans at most two
/// consecutive values. Moves stay within a parity class, so the weighted
/// sum is preserved for either orientation.
pub fn normalize_m4(a: &QuotientSeq) -> Construction {
    let mut cur = a.to_vec();
    let mut cur_val = continuant(&cur);
    let (mut steps, mut decreasing, mut certified) = (0, 0, true);
    loop {
        let n = cur.len();
        let mut cands = Vec::new();
        for i in 0..n {
            for j in (i % 2..n).step_by(2) {
                if cur[i] >= cur[j] + 2 {
                    let mut t = cur.clone();
                    t[i] -= 1;
                    t[j] += 1;
                    cands.push((t, i, j));
                }
            }
        }
        let Some((next, next_val)) = best_of(cands.iter().map(|c| c.0.clone())) else {
            break;
        };
        let &(_, i, j) = cands.iter().find(|c| c.0 == next).expect("chosen candidate exists");
        let here = QuotientSeq::from_vec_unchecked(cur.clone());
        if !is_increasing_unit(&here, UnitVariation { i: i + 1, j: j + 1, shift: 1 }).unwrap_or(false) {
            certified = false;
        }
        if next_val < cur_val {
            decreasing += 1;
        }
        cur = next;
        cur_val = next_val;
        steps += 1;
    }
    Construction { sequence: QuotientSeq::from_vec_unchecked(cur), certified, steps, decreasing_steps: decreasing }
}

/// Target total of heavy values for the reduced form of `inst`.
fn heavy_target(inst: &ExtremalInstance) -> Result<u64> {
    let m = inst.pairs();
    let shape = m3_parameters(&inst.per_pair())?;
    let a = shape.a;
    Ok(match shape.case {
        M3Case::Low | M3Case::Mid => m * a,
        M3Case::High => {
            let mut light = m * (2 * a + 1);
            if (inst.s - light) % 2 == 1 {
                light -= 1;
            }
            (inst.s - light) / 2
        }
    })
}

/// Drives an M₄ word to its reduced form by (1,2)-variations: one heavy
/// quotient moves by 1 against two light units, either one light quotient by
/// 2 or two by 1 each. Every step keeps both value windows and takes the
/// largest resulting continuant. Steps that lower the continuant are taken
/// anyway and clear the `certified` flag. Below per-pair sum 8 the input is
/// returned unchanged and uncertified.
pub fn reduce_m3(a: &QuotientSeq, o: Orientation) -> Result<Construction> {
    let n = a.len();
    let inst = ExtremalInstance::new(n, a.weighted_sum(o), o)?;
    if !ValueSets::of(a, o).is_m4() {
        return Err(Error::InvalidTransform(format!("{a} is not in M4 form")));
    }
    if inst.per_pair() < Fraction::from_integer(8.into()) {
        return Ok(Construction::unchanged(a.clone(), false));
    }
    let target = heavy_target(&inst)?;
    let heavy: Vec<usize> = (0..n).filter(|&i| o.is_heavy(i)).collect();
    let light: Vec<usize> = (0..n).filter(|&i| !o.is_heavy(i)).collect();
    let mut cur = a.to_vec();
    let mut cur_val = continuant(&cur);
    let (mut steps, mut decreasing) = (0, 0);
    loop {
        let h_total: u64 = heavy.iter().map(|&i| cur[i]).sum();
        if h_total == target {
            break;
        }
        let raise = h_total < target;
        let pick = if raise { heavy.iter().map(|&i| cur[i]).min() } else { heavy.iter().map(|&i| cur[i]).max() }
            .expect("even length has heavy positions");
        let mut cands = Vec::new();
        for &h in heavy.iter().filter(|&&h| cur[h] == pick) {
            for (x, &l1) in light.iter().enumerate() {
                let mut moves = vec![(l1, None)];
                moves.extend(light[x + 1..].iter().map(|&l2| (l1, Some(l2))));
                for (l1, l2) in moves {
                    if let Some(t) = one_two_step(&cur, h, l1, l2, raise) {
                        let lights = light.iter().map(|&i| t[i]);
                        let spread = lights.clone().max().unwrap_or(0) - lights.min().unwrap_or(0);
                        if spread <= 1 {
                            cands.push(t);
                        }
                    }
                }
            }
        }
        let Some((next, next_val)) = best_of(cands) else {
            return Err(Error::Inconsistent(format!("no admissible (1,2)-variation from {cur:?}")));
        };
        if next_val < cur_val {
            decreasing += 1;
        }
        cur = next;
        cur_val = next_val;
        steps += 1;
    }
    let sequence = QuotientSeq::from_vec_unchecked(cur);
    inst.check(&sequence)?;
    Ok(Construction { sequence, certified: decreasing == 0, steps, decreasing_steps: decreasing })
}

fn one_two_step(cur: &[u64], h: usize, l1: usize, l2: Option<usize>, raise: bool) -> Option<Vec<u64>> {
    let mut t = cur.to_vec();
    if raise {
        t[h] += 1;
        match l2 {
            None => t[l1] = t[l1].checked_sub(2)?,
            Some(l2) => {
                t[l1] -= 1;
                t[l2] -= 1;
            }
        }
    } else {
        t[h] -= 1;
        match l2 {
            None => t[l1] += 2,
            Some(l2) => {
                t[l1] += 1;
                t[l2] += 1;
            }
        }
    }
    t.iter().all(|&x| x > 0).then_some(t)
}

/// Lower mechanical word with `k` ones among `m` letters.
pub(crate) fn mechanical_word(m: u64, k: u64) -> Vec<bool> {
    (0..m).map(|j| ((j + 1) * k) / m - (j * k) / m == 1).collect()
}

/// Maximizer candidate for per-pair sums `≥ 8`: pairs (light, heavy) of two
/// block types differing by 1 in one coordinate, the rarer type placed along
/// a mechanical word. When the high form cannot match the parity of `S`,
/// either one raised block has its light quotient lowered or one base block
/// has it raised, whichever position and choice gives the larger continuant.
/// The result is within a factor 8 of the maximum, and usually equal to it.
pub fn balanced_max(inst: &ExtremalInstance) -> Result<QuotientSeq> {
    let pp = inst.per_pair();
    if pp < Fraction::from_integer(8.into()) {
        return Err(Error::OutOfRange(format!("balanced construction needs per-pair sum ≥ 8, got {pp}")));
    }
    let m = inst.pairs();
    let s = inst.s;
    let shape = m3_parameters(&pp)?;
    let a = shape.a;
    // With an odd remainder in the high form, either one raised block has its
    // light quotient lowered or one base block has its light quotient raised.
    let (b0, b1, k, odd) = match shape.case {
        M3Case::Low => ((2 * a - 1, a), (2 * a, a), s - m * (4 * a - 1), false),
        M3Case::Mid => ((2 * a, a), (2 * a + 1, a), s - m * 4 * a, false),
        M3Case::High => {
            let r = s - m * (4 * a + 1);
            ((2 * a + 1, a), (2 * a + 1, a + 1), r / 2, r % 2 == 1)
        }
    };
    let mut cands = Vec::new();
    let counts: &[(u64, bool)] = if odd { &[(k + 1, true), (k, false)] } else { &[(k, true)] };
    for &(k, lower_raised) in counts {
        let lower = mechanical_word(m, k);
        let upper: Vec<bool> = lower.iter().rev().copied().collect();
        for word in [lower, upper] {
            let seq: Vec<u64> = word
                .iter()
                .flat_map(|&t| {
                    let (l, h) = if t { b1 } else { b0 };
                    [l, h]
                })
                .collect();
            if !odd {
                cands.push(seq);
                continue;
            }
            for (j, _) in word.iter().enumerate().filter(|(_, &t)| t == lower_raised) {
                let mut c = seq.clone();
                if lower_raised {
                    c[2 * j] -= 1;
                } else {
                    c[2 * j] += 1;
                }
                cands.push(c);
            }
        }
    }
    let (best, _) = best_of(cands).expect("at least one arrangement");
    let out = from_phi(best, inst.orientation);
    inst.check(&out)?;
    Ok(out)
}

/// Maximizer candidate for any feasible class. From per-pair sum 8 on this
/// is the balanced block word; below it, a greedy seed (each unit of budget
/// goes to the light or heavy raise with the larger growth) normalized to M₄,
/// flagged uncertified.
pub fn max_construct(inst: &ExtremalInstance) -> Result<Construction> {
    if inst.per_pair() >= Fraction::from_integer(8.into()) {
        return Ok(Construction::unchanged(balanced_max(inst)?, true));
    }
    let o = inst.orientation;
    let n = inst.n;
    let mut a = vec![1u64; n];
    let mut budget = inst.s - 3 * n as u64 / 2;
    while budget > 0 {
        let c0 = continuant(&a);
        let raised = |heavy: bool| {
            best_of((0..n).filter(|&i| o.is_heavy(i) == heavy).map(|i| {
                let mut t = a.clone();
                t[i] += 1;
                t
            }))
        };
        let (l_seq, l_val) = raised(false).expect("even length has light positions");
        match raised(true) {
            Some((h_seq, h_val)) if budget >= 2 && &h_val * &c0 > &l_val * &l_val => {
                a = h_seq;
                budget -= 2;
            }
            _ => {
                a = l_seq;
                budget -= 1;
            }
        }
    }
    let mut out = normalize_m4(&QuotientSeq::from_vec_unchecked(a));
    out.certified = false;
    inst.check(&out.sequence)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, s: u64) -> ExtremalInstance {
        ExtremalInstance::new(n, s, Orientation::Phi).unwrap()
    }

    fn seq(v: &[u64]) -> QuotientSeq {
        QuotientSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn minimum_examples() {
        assert_eq!(min_construct(&inst(4, 16)).unwrap(), seq(&[1, 6, 1, 1]));
        assert_eq!(min_construct(&inst(4, 6)).unwrap(), seq(&[1, 1, 1, 1]));
        assert_eq!(min_construct(&inst(6, 9)).unwrap(), seq(&[1; 6]));
        assert_eq!(min_construct(&inst(4, 7)).unwrap(), seq(&[1, 1, 2, 1]));
        assert_eq!(min_construct(&inst(2, 4)).unwrap(), seq(&[2, 1]));
    }

    #[test]
    fn maximum_examples() {
        assert_eq!(balanced_max(&inst(4, 16)).unwrap(), seq(&[4, 2, 4, 2]));
        let w = balanced_max(&inst(4, 28)).unwrap();
        assert_eq!(w.continuant(), BigInt::from(666));
        let c = max_construct(&inst(2, 15)).unwrap();
        assert_eq!((c.sequence, c.certified), (seq(&[7, 4]), true));
        let w = balanced_max(&inst(76, 496)).unwrap();
        let fours = w.iter().skip(1).step_by(2).filter(|&&x| x == 4).count();
        assert_eq!(fours, 1);
        assert!(w.iter().step_by(2).all(|&x| x == 7));
        assert!(balanced_max(&inst(4, 15)).is_err());
    }

    #[test]
    fn normalization() {
        let a = seq(&[4, 2, 4, 2]);
        assert_eq!(normalize_m4(&a).sequence, a);
        let out = normalize_m4(&seq(&[5, 2, 1, 2, 5, 2]));
        assert!(ValueSets::of(&out.sequence, Orientation::Phi).is_m4());
        assert!(out.sequence.continuant() >= continuant(&[5, 2, 1, 2, 5, 2]));
        let out = normalize_m4(&seq(&[1, 1, 9, 1]));
        let light: Vec<u64> = out.sequence.iter().step_by(2).copied().collect();
        assert!(light.iter().max().unwrap() - light.iter().min().unwrap() <= 1);
    }

    #[test]
    fn reduction_examples() {
        let fixed = reduce_m3(&seq(&[7, 3, 7, 3]), Orientation::Phi).unwrap();
        assert_eq!((fixed.sequence, fixed.steps), (seq(&[7, 3, 7, 3]), 0));
        let out = reduce_m3(&seq(&[5, 4, 5, 4]), Orientation::Phi).unwrap();
        assert_eq!(out.sequence, seq(&[7, 3, 7, 3]));
        assert!(out.certified);
        let out = reduce_m3(&seq(&[9, 3, 9, 3]), Orientation::Phi).unwrap();
        assert_eq!(out.sequence, seq(&[7, 4, 7, 4]));
        assert!(reduce_m3(&seq(&[9, 1, 7, 3]), Orientation::Phi).is_err());
        let low = reduce_m3(&seq(&[2, 1, 2, 1]), Orientation::Phi).unwrap();
        assert!(!low.certified);
    }
}

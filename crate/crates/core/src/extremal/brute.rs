//! Exact extrema over `M(n, S)` by dynamic programming on continuant pairs.
//!
//! After placing a prefix, the final continuant is `q·X + q'·Y` with `X, Y ≥ 1`
//! depending only on the suffix, where `(q, q')` are the last two prefix
//! continuants. Prefixes with equal remaining sum are therefore compared on
//! `(q, q')` alone and only the Pareto front is kept, which makes the search
//! exhaustive while visiting far fewer states than the sequence count.

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::ExtremalInstance;
use crate::error::{Error, Result};
use crate::quotients::QuotientSeq;

/// Default bound on the number of search states generated.
pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

const MAX_LEN: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub min_seq: QuotientSeq,
    pub min_val: BigInt,
    pub max_seq: QuotientSeq,
    pub max_val: BigInt,
    /// Search states generated over both passes.
    pub states: u64,
}

#[derive(Clone)]
struct State {
    q: u128,
    prev: u128,
    seq: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    Min,
    Max,
}

/// Lexicographically smallest minimizer and maximizer of the continuant.
pub fn brute_extrema(inst: &ExtremalInstance, cap: u64) -> Result<Extrema> {
    if inst.n > MAX_LEN {
        return Err(Error::OutOfRange(format!("exhaustive search supports n ≤ {MAX_LEN}, got {}", inst.n)));
    }
    let mut states = 0;
    let (min_seq, min_val) = search(inst, Goal::Min, cap, &mut states)?;
    let (max_seq, max_val) = search(inst, Goal::Max, cap, &mut states)?;
    Ok(Extrema { min_seq, min_val, max_seq, max_val, states })
}

fn search(inst: &ExtremalInstance, goal: Goal, cap: u64, states: &mut u64) -> Result<(QuotientSeq, BigInt)> {
    let o = inst.orientation;
    let s = inst.s as usize;
    let n = inst.n;
    let mut buckets: Vec<Vec<State>> = vec![Vec::new(); s + 1];
    buckets[s].push(State { q: 1, prev: 0, seq: Vec::new() });
    for k in 0..n {
        let w = o.weight(k) as usize;
        let rest: usize = (k + 1..n).map(|j| o.weight(j) as usize).sum();
        let last = k + 1 == n;
        let mut next: Vec<Vec<State>> = vec![Vec::new(); s + 1];
        for (rem, bucket) in buckets.iter().enumerate() {
            if bucket.is_empty() || rem < w + rest {
                continue;
            }
            let values = if last {
                if rem % w != 0 {
                    continue;
                }
                rem / w..=rem / w
            } else {
                1..=(rem - rest) / w
            };
            for v in values {
                let left = rem - w * v;
                for st in bucket {
                    *states += 1;
                    if *states > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let q =
                        (v as u128).checked_mul(st.q).and_then(|x| x.checked_add(st.prev)).ok_or(Error::Overflow)?;
                    let mut seq = st.seq.clone();
                    seq.push(v as u64);
                    next[left].push(State { q, prev: st.q, seq });
                }
            }
        }
        if !last {
            for bucket in &mut next {
                prune(bucket, goal);
            }
        }
        buckets = next;
    }
    let finals = std::mem::take(&mut buckets[0]);
    let best = finals
        .into_iter()
        .min_by(|x, y| {
            let by_value = match goal {
                Goal::Min => x.q.cmp(&y.q),
                Goal::Max => y.q.cmp(&x.q),
            };
            by_value.then_with(|| x.seq.cmp(&y.seq))
        })
        .ok_or_else(|| Error::Infeasible(format!("no sequence of length {n} has weighted sum {s}")))?;
    Ok((QuotientSeq::from_vec_unchecked(best.seq), BigInt::from(best.q)))
}

/// Keeps the Pareto front in `(q, q')`, the lexicographically smallest
/// prefix among equal pairs.
fn prune(bucket: &mut Vec<State>, goal: Goal) {
    if bucket.len() < 2 {
        return;
    }
    let key = |x: &State, y: &State| -> Ordering {
        let pair = match goal {
            Goal::Max => (y.q, y.prev).cmp(&(x.q, x.prev)),
            Goal::Min => (x.q, x.prev).cmp(&(y.q, y.prev)),
        };
        pair.then_with(|| x.seq.cmp(&y.seq))
    };
    bucket.sort_by(key);
    let mut kept: Vec<State> = Vec::with_capacity(bucket.len());
    for st in bucket.drain(..) {
        let keep = match (kept.last(), goal) {
            (None, _) => true,
            (Some(b), Goal::Max) => st.prev > b.prev,
            (Some(b), Goal::Min) => st.prev < b.prev,
        };
        if keep {
            kept.push(st);
        }
    }
    *bucket = kept;
}

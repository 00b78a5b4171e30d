//! Reproduction report: each row runs one stated result through the
//! classifier and records whether the observed outcome matches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify_with_cap, kappa, Classification};
use crate::error::Result;
use crate::kappa2::{kappa2_bracket, KappaBracket};
use crate::periodic::PeriodicCF;
use crate::quotients::{Fraction, Orientation, QuotientSeq};
use crate::surd::DEFAULT_PRECISION_CAP;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Words per threshold sample.
    pub samples: usize,
    pub duality_samples: usize,
    pub epsilon: Fraction,
    pub max_bits: u32,
    /// Appends a row whose expectation is deliberately wrong.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 2024,
            samples: 200,
            duality_samples: 100,
            epsilon: Fraction::new(1.into(), 500.into()),
            max_bits: DEFAULT_PRECISION_CAP,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub bracket: KappaBracket,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }
}

fn row(name: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>) -> VerifyRow {
    let (expected, observed) = (expected.into(), observed.into());
    VerifyRow { name: name.into(), pass: expected == observed, expected, observed }
}

/// Random even-length periods with `pairs ≤ max_pairs`, light quotients up to
/// `light_max` and heavy ones up to `heavy_max`, filtered by `keep`.
pub fn random_periods(
    rng: &mut impl Rng,
    count: usize,
    max_pairs: usize,
    light_max: u64,
    heavy_max: u64,
    keep: impl Fn(&QuotientSeq) -> bool,
) -> Vec<QuotientSeq> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pairs = rng.gen_range(1..=max_pairs);
        let items: Vec<u64> = (0..2 * pairs)
            .map(|i| if i % 2 == 0 { rng.gen_range(1..=light_max) } else { rng.gen_range(1..=heavy_max) })
            .collect();
        let w = QuotientSeq::from_vec_unchecked(items);
        if keep(&w) {
            out.push(w);
        }
    }
    out
}

/// `(7,3)^r (7,4)`.
pub fn block_word(r: usize) -> QuotientSeq {
    let mut v = [7, 3].repeat(r);
    v.extend([7, 4]);
    QuotientSeq::from_vec_unchecked(v)
}

/// `(1^(2m-1), αm + 1)` for integral `αm`.
pub fn kappa_inf_witness(m: u64, alpha: &Fraction) -> Option<QuotientSeq> {
    let am = alpha * Fraction::from_integer(m.into());
    if !am.is_integer() || m == 0 {
        return None;
    }
    let top: u64 = am.to_integer().try_into().ok()?;
    let mut v = vec![1u64; 2 * m as usize - 1];
    v.push(top + 1);
    Some(QuotientSeq::from_vec_unchecked(v))
}

struct Runner {
    max_bits: u32,
}

impl Runner {
    fn verdict(&self, period: &QuotientSeq, o: Orientation) -> Result<Classification> {
        Ok(classify_with_cap(&PeriodicCF::purely(period.clone())?, o, self.max_bits)?.classification)
    }

    /// Row requiring every period to receive `want`.
    fn all(&self, name: &str, periods: &[QuotientSeq], want: Classification) -> Result<VerifyRow> {
        let mut hits = 0;
        let mut first_miss = None;
        for p in periods {
            let v = self.verdict(p, Orientation::Phi)?;
            if v == want {
                hits += 1;
            } else if first_miss.is_none() {
                first_miss = Some(format!(" (first exception {p}: {v})"));
            }
        }
        let n = periods.len();
        let observed = format!("{hits}/{n} {want}{}", first_miss.unwrap_or_default());
        Ok(row(name, format!("{n}/{n} {want}"), observed))
    }
}

/// All periods over `{1, 2}` of even length up to `max_len`.
fn binary_periods(max_len: usize) -> Vec<QuotientSeq> {
    let mut out = Vec::new();
    for len in (2..=max_len).step_by(2) {
        for mask in 0u32..(1 << len) {
            let v = (0..len).map(|i| 1 + u64::from((mask >> i) & 1)).collect();
            out.push(QuotientSeq::from_vec_unchecked(v));
        }
    }
    out
}

pub fn verify_suite(opts: &VerifyOptions) -> Result<VerifyReport> {
    let run = Runner { max_bits: opts.max_bits };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    let phi = Orientation::Phi;

    for (period, want) in [
        ("7,4", Classification::DerivZero),
        ("7,3", Classification::DerivInfinity),
        ("1,2", Classification::DerivInfinity),
        ("1,3", Classification::DerivZero),
    ] {
        let got = run.verdict(&period.parse()?, phi)?;
        rows.push(row(format!("classify [overline{{{period}}}]"), want.to_string(), got.to_string()));
    }

    rows.push(run.all("periods over {1,2} up to length 10", &binary_periods(10), Classification::DerivInfinity)?);

    let four = Fraction::from_integer(4.into());
    let below = random_periods(&mut rng, opts.samples, 8, 3, 2, |w| kappa(w, phi).is_ok_and(|k| k < four));
    rows.push(run.all("random periods with kappa < 4", &below, Classification::DerivInfinity)?);

    let cut = Fraction::new(1306.into(), 100.into());
    let above = random_periods(&mut rng, opts.samples, 6, 20, 10, |w| kappa(w, phi).is_ok_and(|k| k > cut));
    rows.push(run.all("random periods with kappa > 13.06", &above, Classification::DerivZero)?);

    let alpha = Fraction::new(11.into(), 20.into());
    let w = kappa_inf_witness(400, &alpha).expect("alpha*m is integral");
    let k = kappa(&w, phi)?;
    rows.push(row(
        "kappa_inf witness m=400 alpha=11/20",
        format!("{} kappa={}", Classification::DerivZero, Fraction::new(41.into(), 10.into())),
        format!("{} kappa={k}", run.verdict(&w, phi)?),
    ));

    let words = random_periods(&mut rng, opts.duality_samples, 6, 9, 9, |_| true);
    let mut agree = 0;
    for w in &words {
        if run.verdict(w, Orientation::Tau)? == run.verdict(&w.reversed(), phi)? {
            agree += 1;
        }
    }
    let n = words.len();
    rows.push(row("tau duality under reversal", format!("{n}/{n} agree"), format!("{agree}/{n} agree")));

    let bracket = kappa2_bracket(&opts.epsilon)?;
    let consistent = bracket.lo.kappa() < bracket.hi.kappa()
        && bracket.width() <= opts.epsilon
        && run.verdict(bracket.witness_lo.period(), phi)? == Classification::DerivInfinity
        && run.verdict(bracket.witness_hi.period(), phi)? == Classification::DerivZero;
    rows.push(row(
        "kappa2 computed bracket",
        "consistent",
        format!(
            "{} lo={} hi={} probes={}",
            if consistent { "consistent" } else { "inconsistent" },
            bracket.lo.kappa_text(),
            bracket.hi.kappa_text(),
            bracket.trace.len()
        ),
    ));
    if let Some(last) = rows.last_mut() {
        last.pass = consistent;
    }

    for (r, want, endpoint) in
        [(38, Classification::DerivInfinity, "509/39"), (37, Classification::DerivZero, "496/38")]
    {
        let got = run.verdict(&block_word(r), phi)?;
        rows.push(row(format!("kappa2 endpoint {endpoint}: (7,3)^{r}(7,4)"), want.to_string(), got.to_string()));
    }

    if opts.inject_fault {
        let got = run.verdict(&"7,4".parse()?, phi)?;
        rows.push(row(
            "injected fault: classify [overline{7,4}]",
            Classification::DerivInfinity.to_string(),
            got.to_string(),
        ));
    }

    Ok(VerifyReport { rows, bracket })
}

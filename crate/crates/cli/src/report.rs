//! Renderings of the reproduction report.

use dtu_core::VerifyReport;
use serde_json::{json, Value};

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Markdown table cells cannot contain raw pipes.
fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn markdown(rep: &VerifyReport) -> String {
    let mut out =
        String::from("# Reproduction report\n\n| check | expected | observed | status |\n|---|---|---|---|\n");
    for r in &rep.rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            cell(&r.name),
            cell(&r.expected),
            cell(&r.observed),
            status(r.pass)
        ));
    }
    let b = &rep.bracket;
    out.push_str(&format!(
        "\n## kappa2\n\nComputed bracket: {} < kappa2 < {} after {} probes.\n\n\
         - DerivInfinity witness: `{}`\n- DerivZero witness: `{}`\n\n\
         | step | density | period length | kappa | classification |\n|---|---|---|---|---|\n",
        b.lo.kappa_text(),
        b.hi.kappa_text(),
        b.trace.len(),
        b.witness_lo,
        b.witness_hi
    ));
    for t in &b.trace {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            t.step, t.density, t.period_length, t.kappa, t.classification
        ));
    }
    out.push_str(&format!("\n{} passed, {} failed\n", rep.rows.len() - rep.failures(), rep.failures()));
    out
}

pub fn json(rep: &VerifyReport) -> Value {
    let b = &rep.bracket;
    json!({
        "rows": rep.rows,
        "kappa2": {
            "lo": b.lo.kappa_text(),
            "hi": b.hi.kappa_text(),
            "witness_lo": b.witness_lo.to_string(),
            "witness_hi": b.witness_hi.to_string(),
            "probes": b.trace.len(),
        },
        "passed": rep.rows.len() - rep.failures(),
        "failed": rep.failures(),
    })
}

/// One line per row, for the terminal.
pub fn summary(rep: &VerifyReport) -> String {
    let mut out = String::new();
    for r in &rep.rows {
        out.push_str(&format!("{} {}: expected {}, observed {}\n", status(r.pass), r.name, r.expected, r.observed));
    }
    out.push_str(&format!("{} passed, {} failed\n", rep.rows.len() - rep.failures(), rep.failures()));
    out
}

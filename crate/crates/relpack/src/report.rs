//! JSON form of a verification report.
//!
//! Floats are written in scientific notation with 16 significant digits;
//! non-finite values become `null`.

use std::str::FromStr;

use relpack_core::verify::{CheckRecord, VerificationReport};
use serde_json::{json, Map, Number, Value};

pub fn number(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format!("{x:.15e}")).expect("formatted float"))
    } else {
        Value::Null
    }
}

fn check_json(c: &CheckRecord) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(c.name));
    m.insert("passed".into(), json!(c.passed));
    m.insert("worst_margin".into(), number(c.worst_margin));
    m.insert("tolerance".into(), number(c.tolerance));
    m.insert("samples".into(), json!(c.samples_used));
    m.insert("worst_value".into(), number(c.worst_value));
    m.insert(
        "worst_point".into(),
        c.worst_point.as_ref().map_or(Value::Null, |p| {
            Value::Array(p.iter().map(|&x| number(x)).collect())
        }),
    );
    m.insert("violations".into(), json!(c.violations));
    Value::Object(m)
}

pub fn to_json(report: &VerificationReport) -> Value {
    let mut params = Map::new();
    params.insert("n".into(), json!(report.n));
    params.insert("r".into(), number(report.r));
    params.insert("epsilon".into(), number(report.epsilon));
    params.insert("seed".into(), json!(report.seed));
    let mut root = Map::new();
    root.insert("params".into(), Value::Object(params));
    root.insert(
        "checks".into(),
        Value::Array(report.checks.iter().map(check_json).collect()),
    );
    root.insert("overall".into(), json!(report.overall));
    Value::Object(root)
}

pub fn to_string_pretty(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(report)).expect("serialisable");
    s.push('\n');
    s
}

/// One line per check, for terminals.
pub fn summary(report: &VerificationReport) -> String {
    let mut out = format!(
        "n = {}, r = {}, epsilon = {:.6e}, seed = {}\n",
        report.n, report.r, report.epsilon, report.seed
    );
    for c in &report.checks {
        out.push_str(&format!(
            "{:<20} {}  worst {:>12.4e}  margin {:>12.4e}  samples {}\n",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.worst_value,
            c.worst_margin,
            c.samples_used
        ));
    }
    out.push_str(if report.overall {
        "overall: pass\n"
    } else {
        "overall: FAIL\n"
    });
    out
}

//! Text serialization of analysis, verification and sweep results.
//!
//! All reals are rounded to 9 significant digits so that reports diff cleanly.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::refine::RefinementOutput;
use crate::regularity::{SweepRecord, VerificationReport};

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Round to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounded value in shortest decimal form; non-finite values as `inf`/`nan`.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        let r = round_sig(x);
        if r != 0.0 && !(1e-6..1e16).contains(&r.abs()) {
            format!("{r:e}")
        } else {
            format!("{r}")
        }
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Serialize to a JSON value with every float rounded.
pub fn to_rounded_json<T: Serialize>(value: &T) -> Value {
    round_value(serde_json::to_value(value).expect("report types serialize"))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(&to_rounded_json(value)).expect("json");
    s.push('\n');
    s
}

/// Two-line CSV (header + values) of the scalar fields of a flat record.
pub fn to_csv_row<T: Serialize>(value: &T) -> String {
    let Value::Object(map) = to_rounded_json(value) else {
        panic!("csv rows need a struct");
    };
    let scalars: Map<String, Value> = map
        .into_iter()
        .filter(|(_, v)| !v.is_object() && !v.is_array())
        .collect();
    let header: Vec<&str> = scalars.keys().map(String::as_str).collect();
    let row: Vec<String> = scalars
        .values()
        .map(|v| match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn verification_json(report: &VerificationReport) -> String {
    to_json_string(report)
}

/// Human-readable check table followed by the headline numbers.
pub fn verification_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "{:<16} {:<6} {:>17} {:>8} {:>10}", "check", "status", "worst_margin", "element", "kind").unwrap();
    for c in &report.checks {
        writeln!(
            out,
            "{:<16} {:<6} {:>17} {:>8} {:>10}",
            c.id.name(),
            if c.passed { "pass" } else { "FAIL" },
            fmt_sig(c.worst_margin),
            c.worst_element.map_or("-".to_string(), |e| e.to_string()),
            c.id.element_kind(),
        )
        .unwrap();
    }
    writeln!(out, "c0 = {}", fmt_sig(report.mesh.c0)).unwrap();
    writeln!(out, "observed_wf_ratio = {}", fmt_sig(report.refined.observed_wf_ratio)).unwrap();
    writeln!(out, "c1_bound = {}", fmt_sig(report.refined.c1_bound)).unwrap();
    writeln!(out, "slack = {}", fmt_sig(report.refined.slack)).unwrap();
    out
}

pub fn sweep_csv(param_name: &str, records: &[SweepRecord]) -> String {
    let mut out = format!("{param_name},c0,observed,c1,slack\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig(r.param),
            fmt_sig(r.c0),
            fmt_sig(r.observed),
            fmt_sig(r.c1),
            fmt_sig(r.slack)
        )
        .unwrap();
    }
    out
}

pub fn provenance_csv(out: &RefinementOutput) -> String {
    let mut s = String::from("child_id,parent_id\n");
    for (c, p) in out.root_parent.iter().enumerate() {
        writeln!(s, "{c},{p}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(6f64.sqrt()), 2.44948974);
        assert_eq!(fmt_sig(2119.696374529715), "2119.69637");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(2.5132741228712063e31), "2.51327412e31");
        assert_eq!(fmt_sig(f64::INFINITY), "inf");
        assert_eq!(fmt_sig(-1.234567891234e-20), "-1.23456789e-20");
    }

    #[test]
    fn csv_row_flattens_scalars() {
        #[derive(Serialize)]
        struct R {
            c0: f64,
            n: usize,
            nested: Vec<u8>,
        }
        let text = to_csv_row(&R {
            c0: 4.181540550352055,
            n: 6,
            nested: vec![1],
        });
        assert_eq!(text, "c0,n\n4.18154055,6\n");
    }

    #[test]
    fn sweep_header() {
        let rec = SweepRecord {
            param: 0.1,
            c0: 10.0,
            observed: 20.0,
            c1: 1e9,
            slack: 5e7,
        };
        assert_eq!(sweep_csv("eps", &[rec]), "eps,c0,observed,c1,slack\n0.1,10,20,1000000000,50000000\n");
    }
}

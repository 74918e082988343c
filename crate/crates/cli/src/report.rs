//! Report assembly and deterministic JSON / CSV output.
//!
//! Floats are written with 17 significant digits and object keys are sorted,
//! so a report depends only on the configuration and the build.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use s5frames::{LocusSample, ResidualStats};

use crate::config::RunConfig;
use crate::suites::{Check, SuiteReport, TypoWatch};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub chart: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub typo_watch: Vec<TypoWatch>,
    pub pass: bool,
}

impl Report {
    /// Equations with at least one non-finite residual outside the guards.
    pub fn non_finite(&self) -> usize {
        self.suites.iter().map(SuiteReport::non_finite).sum()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite.name() == name)
    }

    pub fn equation(&self, suite: &str, equation: &str) -> Option<&ResidualStats> {
        self.suite(suite)?.equations.iter().find(|e| e.equation == equation)
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        let tolerances: Map<String, Value> =
            c.tolerances.iter().map(|(s, t)| (s.name().to_string(), json!(t))).collect();
        let mut skipped = Map::new();
        for s in &self.suites {
            let total: usize = s.equations.iter().map(|e| e.points_skipped).sum();
            skipped.insert(s.suite.name().into(), json!(total));
        }
        json!({
            "chart": self.chart,
            "config": {
                "chart": c.chart.to_string(),
                "grid": [c.grid_n_u, c.grid_n_v],
                "h": c.h,
                "suites": c.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "tolerances": tolerances,
                "skip_policy": c.skip_policy.name(),
            },
            "suites": self.suites.iter().map(suite_json).collect::<Vec<_>>(),
            "typo_watch": self.typo_watch.iter().map(|t| json!({
                "suite": t.suite.name(),
                "equation": t.equation,
                "max_abs": t.max_abs,
                "note": t.note,
            })).collect::<Vec<_>>(),
            "skip_counters": skipped,
            "pass": self.pass,
        })
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut ser = serde_json::Serializer::with_formatter(&mut w, FixedFloat);
        serde::Serialize::serialize(&self.to_json(), &mut ser).map_err(io::Error::other)?;
        w.write_all(b"\n")
    }

    pub fn json_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_json(&mut out).expect("writing to memory");
        out
    }

    /// One row per equation; numbers formatted as in the JSON.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        for s in &self.suites {
            for e in &s.equations {
                out.write_record([
                    s.suite.name().to_string(),
                    e.equation.clone(),
                    format_f64(e.max_abs),
                    format_f64(e.mean_abs),
                    format_f64(e.rms),
                    e.points_evaluated.to_string(),
                    e.points_skipped.to_string(),
                    e.pass.to_string(),
                ])?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

pub const CSV_HEADER: [&str; 8] =
    ["suite", "equation", "max_abs", "mean_abs", "rms", "points_evaluated", "points_skipped", "pass"];

fn stats_json(e: &ResidualStats) -> Value {
    json!({
        "equation": e.equation,
        "max_abs": e.max_abs,
        "mean_abs": e.mean_abs,
        "rms": e.rms,
        "points_evaluated": e.points_evaluated,
        "points_skipped": e.points_skipped,
        "non_finite": e.non_finite,
        "hard_errors": e.hard_errors,
        "skip_reasons": e.skip_reasons,
        "tolerance": e.tolerance,
        "pass": e.pass,
    })
}

fn check_json(c: &Check) -> Value {
    json!({ "name": c.name, "value": c.value, "threshold": c.threshold, "pass": c.pass, "note": c.note })
}

fn sample_json(s: &LocusSample) -> Value {
    json!({ "beta": s.beta, "alpha": s.alpha, "a": s.a, "b": s.b, "circle_residual": s.circle_residual })
}

fn suite_json(s: &SuiteReport) -> Value {
    let mut v = json!({
        "suite": s.suite.name(),
        "pass": s.pass,
        "equations": s.equations.iter().map(stats_json).collect::<Vec<_>>(),
        "checks": s.checks.iter().map(check_json).collect::<Vec<_>>(),
        "locus_samples": s.samples.iter().map(sample_json).collect::<Vec<_>>(),
        "warnings": s.warnings,
    });
    if let Some(t) = s.wall_clock_s {
        v["wall_clock_s"] = json!(t);
    }
    v
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Compact JSON with fixed-precision floats.
struct FixedFloat;

impl serde_json::ser::Formatter for FixedFloat {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5e-17] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn json_keys_sorted_and_floats_fixed() {
        let v = json!({"b": 0.5, "a": [1.25, 2]});
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat);
        serde::Serialize::serialize(&v, &mut ser).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), r#"{"a":[1.2500000000000000e0,2],"b":5.0000000000000000e-1}"#);
    }
}

//! Residual statistics over a grid with skip accounting.

use std::collections::BTreeMap;

use crate::error::{GeometryError, Result};

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

/// Summary of one equation's residuals over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualStats {
    pub equation: String,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub rms: f64,
    pub points_evaluated: usize,
    pub points_skipped: usize,
    /// Residuals that came out NaN or infinite outside any guard.
    pub non_finite: usize,
    /// Errors that are not legitimate skips (for instance frame flips).
    pub hard_errors: usize,
    pub skip_reasons: BTreeMap<String, usize>,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl ResidualStats {
    pub fn total(&self) -> usize {
        self.points_evaluated + self.points_skipped
    }

    pub fn all_skipped(&self) -> bool {
        self.points_evaluated == 0 && self.points_skipped > 0
    }
}

/// Streaming accumulator for [`ResidualStats`]. Feeding the same values in
/// the same order gives bitwise identical output.
#[derive(Debug, Clone)]
pub struct Accumulator {
    equation: String,
    max_abs: f64,
    sum_abs: CompensatedSum,
    sum_sq: CompensatedSum,
    evaluated: usize,
    skipped: usize,
    non_finite: usize,
    hard_errors: usize,
    skip_reasons: BTreeMap<String, usize>,
}

impl Accumulator {
    pub fn new(equation: impl Into<String>) -> Self {
        Accumulator {
            equation: equation.into(),
            max_abs: 0.0,
            sum_abs: CompensatedSum::default(),
            sum_sq: CompensatedSum::default(),
            evaluated: 0,
            skipped: 0,
            non_finite: 0,
            hard_errors: 0,
            skip_reasons: BTreeMap::new(),
        }
    }

    pub fn push_value(&mut self, r: f64) {
        if !r.is_finite() {
            self.non_finite += 1;
            self.skipped += 1;
            *self.skip_reasons.entry("non-finite".into()).or_default() += 1;
            return;
        }
        let a = r.abs();
        self.max_abs = self.max_abs.max(a);
        self.sum_abs.add(a);
        self.sum_sq.add(a * a);
        self.evaluated += 1;
    }

    pub fn push_error(&mut self, e: &GeometryError) {
        self.skipped += 1;
        if !e.is_skip() {
            self.hard_errors += 1;
        }
        *self.skip_reasons.entry(e.kind().into()).or_default() += 1;
    }

    /// Records a point skipped for a reason outside [`GeometryError`].
    pub fn push_skip(&mut self, reason: &str) {
        self.skipped += 1;
        *self.skip_reasons.entry(reason.into()).or_default() += 1;
    }

    pub fn push(&mut self, r: &Result<f64>) {
        match r {
            Ok(v) => self.push_value(*v),
            Err(e) => self.push_error(e),
        }
    }

    /// Passes when the worst residual is within `tolerance` and nothing went
    /// wrong outside the guarded terms. With no tolerance the equation is
    /// informational and always passes.
    pub fn finish(self, tolerance: Option<f64>) -> ResidualStats {
        let n = self.evaluated as f64;
        let (mean_abs, rms) =
            if self.evaluated > 0 { (self.sum_abs.value() / n, (self.sum_sq.value() / n).sqrt()) } else { (0.0, 0.0) };
        let clean = self.non_finite == 0 && self.hard_errors == 0;
        let pass = clean && tolerance.is_none_or(|t| self.max_abs <= t);
        ResidualStats {
            equation: self.equation,
            max_abs: self.max_abs,
            mean_abs,
            rms,
            points_evaluated: self.evaluated,
            points_skipped: self.skipped,
            non_finite: self.non_finite,
            hard_errors: self.hard_errors,
            skip_reasons: self.skip_reasons,
            tolerance,
            pass,
        }
    }
}

/// Statistics of a sequence of per-point results.
pub fn collect_stats<'a>(
    equation: &str,
    results: impl IntoIterator<Item = &'a Result<f64>>,
    tolerance: Option<f64>,
) -> ResidualStats {
    let mut acc = Accumulator::new(equation);
    results.into_iter().for_each(|r| acc.push(r));
    acc.finish(tolerance)
}

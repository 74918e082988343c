//! Closed-form expressions for the connection forms of the adapted frame,
//! compared against the measured table.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::field::Gradient;
use crate::structure::connection::ConnectionTable;
use crate::structure::sample::PointValues;
use crate::structure::trig::Trig;

/// A 1-form on the surface, stored as its values on `(e1, e2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Form(pub [f64; 2]);

impl Form {
    /// Dual coframe `theta^1`.
    pub const THETA1: Form = Form([1.0, 0.0]);
    /// Dual coframe `theta^2`.
    pub const THETA2: Form = Form([0.0, 1.0]);

    pub fn d(g: Gradient) -> Form {
        Form([g.f1, g.f2])
    }

    /// `df o J` with `J e1 = e2`, `J e2 = -e1`.
    pub fn d_j(g: Gradient) -> Form {
        Form(g.rotated())
    }

    pub fn norm(&self) -> f64 {
        self.0[0].hypot(self.0[1])
    }

    /// `max_i |self(e_i) - other(e_i)|`.
    pub fn distance(&self, other: &Form) -> f64 {
        (self.0[0] - other.0[0]).abs().max((self.0[1] - other.0[1]).abs())
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, o: Form) -> Form {
        Form([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, o: Form) -> Form {
        Form([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form([-self.0[0], -self.0[1]])
    }
}

impl Mul<Form> for f64 {
    type Output = Form;
    fn mul(self, f: Form) -> Form {
        Form([self * f.0[0], self * f.0[1]])
    }
}

fn measured(t: &ConnectionTable, j: usize, k: usize) -> Form {
    Form(t.form(j, k))
}

type Identity = (&'static str, usize, usize, fn(&ConnectionTable, &PointValues) -> Result<Form>);

/// `(name, j, k, closed form)` for every tabulated connection form. The
/// closed forms mix angle data with other measured forms, so each row is an
/// independent consistency check.
const IDENTITIES: [Identity; 19] = [
    ("theta3_1", 3, 1, |t, _| Ok(-measured(t, 1, 3))),
    ("theta3_2", 3, 2, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(tr.sb * (Form::d(p.grad_alpha) + measured(t, 4, 1)) - (tr.cb * tr.sa) * Form::THETA1)
    }),
    ("theta3_4", 3, 4, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        let (csc_b, cot_a) = (tr.csc_b()?, tr.cot_a()?);
        Ok(csc_b * measured(t, 1, 2) - cot_a * (measured(t, 1, 3) + csc_b * measured(t, 2, 4)))
    }),
    ("theta3_5", 3, 5, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(tr.cot_b()? * measured(t, 2, 3) - (tr.csc_b()? * tr.sa) * Form::THETA1)
    }),
    ("theta4_1", 4, 1, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(-Form::d(p.grad_alpha) - tr.csc_b()? * measured(t, 2, 3) + (tr.sa * tr.cot_b()?) * Form::THETA1)
    }),
    ("theta4_2", 4, 2, |t, _| Ok(-measured(t, 2, 4))),
    ("theta4_3", 4, 3, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        let (csc_b, cot_a) = (tr.csc_b()?, tr.cot_a()?);
        Ok(csc_b * measured(t, 2, 1) + cot_a * (measured(t, 1, 3) + csc_b * measured(t, 2, 4)))
    }),
    ("theta4_5", 4, 5, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(tr.cot_b()? * measured(t, 2, 4) - tr.sa * Form::THETA2)
    }),
    ("theta5_1", 5, 1, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(-tr.ca * Form::THETA2 - tr.cot_b()? * measured(t, 2, 1))
    }),
    ("theta5_2", 5, 2, |_, p| Ok(Form::d(p.grad_beta) + p.alpha.cos() * Form::THETA1)),
    ("theta5_3", 5, 3, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(-tr.cot_b()? * measured(t, 2, 3) + (tr.csc_b()? * tr.sa) * Form::THETA1)
    }),
    ("theta5_4", 5, 4, |t, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(-tr.cot_b()? * measured(t, 2, 4) + tr.sa * Form::THETA2)
    }),
    ("theta1_3", 1, 3, |_, p| Ok(p.a * Form::THETA1 + p.b * Form::THETA2)),
    ("theta2_3", 2, 3, |_, p| Ok(p.b * Form::THETA1 - p.a * Form::THETA2)),
    ("theta1_4", 1, 4, |_, p| {
        let tr = Trig::new(p.alpha, p.beta);
        let csc_b = tr.csc_b()?;
        Ok(Form::d(p.grad_alpha) + (p.b * csc_b - tr.sa * tr.cot_b()?) * Form::THETA1 - (p.a * csc_b) * Form::THETA2)
    }),
    ("theta2_4", 2, 4, |_, p| {
        let tr = Trig::new(p.alpha, p.beta);
        let csc_b = tr.csc_b()?;
        Ok(Form::d_j(p.grad_alpha) - (p.a * csc_b) * Form::THETA1 - (p.b * csc_b - tr.sa * tr.cot_b()?) * Form::THETA2)
    }),
    ("theta1_5", 1, 5, |_, p| Ok(Form::d_j(p.grad_beta) - p.alpha.cos() * Form::THETA2)),
    ("theta2_5", 2, 5, |_, p| Ok(-Form::d(p.grad_beta) - p.alpha.cos() * Form::THETA1)),
    ("theta2_1", 2, 1, |_, p| {
        let tr = Trig::new(p.alpha, p.beta);
        Ok(tr.tan_b()? * (Form::d_j(p.grad_beta) - (2.0 * tr.ca) * Form::THETA2))
    }),
];

/// Names of the identities checked by [`connection_table_identities`].
pub fn identity_names() -> impl Iterator<Item = &'static str> {
    IDENTITIES.iter().map(|(name, ..)| *name)
}

/// `max_i |measured theta_j^k(e_i) - closed form(e_i)|` for every tabulated
/// connection form, each skipped independently on singular factors.
pub fn connection_table_identities(t: &ConnectionTable, p: &PointValues) -> Vec<(&'static str, Result<f64>)> {
    IDENTITIES
        .iter()
        .map(|(name, j, k, closed)| (*name, closed(t, p).map(|c| measured(t, *j, *k).distance(&c))))
        .collect()
}

/// Normal-connection data of `e3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelNormal {
    /// `|theta_3^4|`
    pub theta34: f64,
    /// `|theta_3^5|`
    pub theta35: f64,
    /// Measured minus closed form for `theta_3^4`, `theta_3^5`, `theta_4^5`.
    pub closed_form: [(&'static str, Result<f64>); 3],
}

pub const PARALLEL_EQUATIONS: [&str; 3] = ["normal.theta3_4", "normal.theta3_5", "normal.theta4_5"];

/// Norms of the normal connection forms against `e3`, plus the discrepancy
/// between the measured normal connection and its closed form on a minimal
/// surface.
pub fn parallel_normal_residual(t: &ConnectionTable, p: &PointValues) -> ParallelNormal {
    let theta34 = measured(t, 3, 4);
    let theta35 = measured(t, 3, 5);
    let tr = Trig::new(p.alpha, p.beta);
    let (a, b) = (p.a, p.b);
    let c34 = || -> Result<Form> {
        let (sec_b, cot_a, csc_b, cot_b) = (tr.sec_b()?, tr.cot_a()?, tr.csc_b()?, tr.cot_b()?);
        Ok(-sec_b * Form::d_j(p.grad_beta) - (cot_a * csc_b) * Form::d_j(p.grad_alpha)
            + (a * cot_a * cot_b * cot_b) * Form::THETA1
            + (b * cot_a * cot_b * cot_b - tr.ca * cot_b * csc_b + 2.0 * sec_b * tr.ca) * Form::THETA2)
    };
    let c35 = || -> Result<Form> {
        let (csc_b, cot_b) = (tr.csc_b()?, tr.cot_b()?);
        Ok((b * cot_b - csc_b * tr.sa) * Form::THETA1 - (a * cot_b) * Form::THETA2)
    };
    let c45 = || -> Result<Form> {
        let (csc_b, cot_b) = (tr.csc_b()?, tr.cot_b()?);
        Ok(cot_b * Form::d_j(p.grad_alpha) - (a * cot_b * csc_b) * Form::THETA1
            + (-b * csc_b * cot_b + tr.sa * (cot_b * cot_b - 1.0)) * Form::THETA2)
    };
    let theta45 = measured(t, 4, 5);
    ParallelNormal {
        theta34: theta34.norm(),
        theta35: theta35.norm(),
        closed_form: [
            (PARALLEL_EQUATIONS[0], c34().map(|c| theta34.distance(&c))),
            (PARALLEL_EQUATIONS[1], c35().map(|c| theta35.distance(&c))),
            (PARALLEL_EQUATIONS[2], c45().map(|c| theta45.distance(&c))),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::Grid;
    use crate::structure::sample::PointSample;
    use std::f64::consts::FRAC_PI_2;

    fn check_chart(chart: &crate::chart::ChartSpec, n: usize, tol: f64) -> usize {
        let mut evaluated = 0;
        for (u, v) in Grid::new(chart.domain, n, n).points() {
            let Ok(s) = PointSample::compute(chart, u, v, 1e-3) else { continue };
            for (name, r) in connection_table_identities(&s.table, &s.values) {
                if let Ok(r) = r {
                    assert!(r <= tol, "{} {name} = {r:e} at ({u}, {v})", chart.name);
                    evaluated += 1;
                }
            }
            for (name, r) in parallel_normal_residual(&s.table, &s.values).closed_form {
                if let Ok(r) = r {
                    assert!(r <= tol, "{} {name} = {r:e} at ({u}, {v})", chart.name);
                }
            }
        }
        evaluated
    }

    #[test]
    fn identities_hold_on_fixtures() {
        assert!(check_chart(&catalog::legendrian_clifford(), 6, 1e-6) > 0);
        assert!(check_chart(&catalog::geodesic_sphere(), 6, 1e-6) > 0);
        assert!(check_chart(&catalog::tilted_sphere(), 6, 1e-6) > 0);
        let torus =
            catalog::build_torus(&catalog::HomogeneousTorusSpec::equal_radii([[1, 0], [0, 1], [1, 1]])).unwrap();
        assert!(check_chart(&torus, 6, 1e-6) > 0);
    }

    #[test]
    fn tan_beta_identity_skipped_on_legendrian() {
        let s = PointSample::compute(&catalog::legendrian_clifford(), 0.2, 0.4, 1e-3).unwrap();
        let ids = connection_table_identities(&s.table, &s.values);
        let theta21 = ids.iter().find(|(n, _)| *n == "theta2_1").unwrap();
        assert!(theta21.1.is_err());
    }

    #[test]
    fn great_sphere_normal_is_not_parallel() {
        let s = PointSample::compute(&catalog::geodesic_sphere(), 0.2, 0.4, 1e-3).unwrap();
        let pn = parallel_normal_residual(&s.table, &s.values);
        assert!((pn.theta35 - 1.0).abs() < 1e-8, "{pn:?}");
    }

    #[test]
    fn closed_form_theta34_at_constant_angles() {
        let (alpha, beta) = (0.8, 0.6);
        let p = PointValues { alpha, beta, ..Default::default() };
        let t = ConnectionTable { theta: [[[0.0; 2]; 5]; 5] };
        let pn = parallel_normal_residual(&t, &p);
        let expected = (alpha.cos() * (2.0 / beta.cos() - 1.0 / (beta.tan() * beta.sin()))).abs();
        assert!((pn.closed_form[0].1.clone().unwrap() - expected).abs() < 1e-14);
        let legendrian = PointValues { alpha: FRAC_PI_2, beta: FRAC_PI_2, ..Default::default() };
        assert!(parallel_normal_residual(&t, &legendrian).closed_form[0].1.is_err());
    }

    #[test]
    fn rotation_convention() {
        let g = Gradient { f1: 0.3, f2: -0.7 };
        assert_eq!(Form::d_j(g).0, [-0.7, -0.3]);
    }
}

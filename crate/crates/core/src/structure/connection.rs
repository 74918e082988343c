//! Connection forms `De_j = theta_j^k e_k` of the adapted frame.

use crate::ambient::{real_inner, tangent_project, ComplexVec3};
use crate::chart::ChartSpec;
use crate::error::{GeometryError, Result};
use crate::fd;
use crate::frame::FramePoint;

/// `theta_j^k(e_i)` for the adapted frame at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTable {
    /// `theta[j-1][k-1][i-1] = theta_j^k(e_i)`.
    pub theta: [[[f64; 2]; 5]; 5],
}

impl ConnectionTable {
    /// Values of `theta_j^k` on `(e1, e2)`, 1-based indices.
    pub fn form(&self, j: usize, k: usize) -> [f64; 2] {
        self.theta[j - 1][k - 1]
    }

    /// Second fundamental form coefficient `a = theta_1^3(e1)`.
    pub fn a(&self) -> f64 {
        self.theta[0][2][0]
    }

    /// `b = theta_1^3(e2)`.
    pub fn b(&self) -> f64 {
        self.theta[0][2][1]
    }

    /// `max |theta_j^k(e_i) + theta_k^j(e_i)|`.
    pub fn antisymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..5 {
            for k in j..5 {
                for i in 0..2 {
                    worst = worst.max((self.theta[j][k][i] + self.theta[k][j][i]).abs());
                }
            }
        }
        worst
    }

    /// Mean curvature vector components `theta_1^j(e1) + theta_2^j(e2)`
    /// along `e3, e4, e5`.
    pub fn mean_curvature(&self) -> [f64; 3] {
        [2, 3, 4].map(|j| self.theta[0][j][0] + self.theta[1][j][1])
    }

    /// Norm of the mean curvature vector.
    pub fn minimality_residual(&self) -> f64 {
        self.mean_curvature().iter().map(|h| h * h).sum::<f64>().sqrt()
    }

    /// `theta_1^j(e2) - theta_2^j(e1)` for `j = 3, 4, 5`.
    pub fn symmetry_residuals(&self) -> [f64; 3] {
        [2, 3, 4].map(|j| self.theta[0][j][1] - self.theta[1][j][0])
    }
}

fn check_continuity(center: &FramePoint, other: &FramePoint) -> Result<()> {
    for (idx, (a, b)) in center.e.iter().zip(other.e.iter()).enumerate() {
        if real_inner(a, b) < 0.0 {
            return Err(GeometryError::FrameDiscontinuity { index: idx + 1 });
        }
    }
    Ok(())
}

/// Connection table from the frame at a point and its neighbours at
/// offsets `-2h, -h, +h, +2h` along `u` (`along_u`) and `v` (`along_v`).
/// The centre entry of each stencil is ignored.
pub fn table_from_frames(
    center: &FramePoint,
    along_u: [&FramePoint; 5],
    along_v: [&FramePoint; 5],
    h: f64,
) -> Result<ConnectionTable> {
    for f in along_u.iter().chain(along_v.iter()) {
        check_continuity(center, f)?;
    }
    let mut theta = [[[0.0; 2]; 5]; 5];
    for (j, row) in theta.iter_mut().enumerate() {
        let du: ComplexVec3 = fd::d1(along_u.map(|f| f.e[j]), h);
        let dv: ComplexVec3 = fd::d1(along_v.map(|f| f.e[j]), h);
        for (i, c) in center.coords.iter().enumerate() {
            let d = tangent_project(&center.x, &(du * c[0] + dv * c[1]));
            for (slot, ek) in row.iter_mut().zip(&center.e) {
                slot[i] = real_inner(&d, ek);
            }
        }
    }
    Ok(ConnectionTable { theta })
}

/// Measured connection forms at `(u, v)`, differentiating the frame field
/// with fourth-order central differences of step `h`.
pub fn connection_forms(chart: &ChartSpec, u: f64, v: f64, h: f64) -> Result<(FramePoint, ConnectionTable)> {
    let frame = |u: f64, v: f64| FramePoint::build(&chart.evaluate_jet(u, v, h)?);
    let center = frame(u, v)?;
    let offs = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut su = [center; 5];
    let mut sv = [center; 5];
    for (n, k) in offs.iter().enumerate() {
        if *k != 0.0 {
            su[n] = frame(u + k * h, v)?;
            sv[n] = frame(u, v + k * h)?;
        }
    }
    let table = table_from_frames(&center, su.each_ref(), sv.each_ref(), h)?;
    Ok((center, table))
}

//! Sample grids, scalar fields on them, and the surface gradient and
//! Laplace-Beltrami operators.

use crate::chart::{Domain, Metric};
use crate::error::{GeometryError, Result};
use crate::fd::{self, Linear};

/// Tensor-product sample grid over a chart domain. Periodic directions use
/// `n` nodes starting at the lower edge; non-periodic directions use cell
/// centers so every node keeps half a cell of clearance from the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub fn new(domain: Domain, nu: usize, nv: usize) -> Self {
        Grid { domain, nu, nv }
    }

    pub fn du(&self) -> f64 {
        (self.domain.u.1 - self.domain.u.0) / self.nu as f64
    }

    pub fn dv(&self) -> f64 {
        (self.domain.v.1 - self.domain.v.0) / self.nv as f64
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        let off = |periodic: bool| if periodic { 0.0 } else { 0.5 };
        (
            self.domain.u.0 + (i as f64 + off(self.domain.periodic_u)) * self.du(),
            self.domain.v.0 + (j as f64 + off(self.domain.periodic_v)) * self.dv(),
        )
    }

    /// Points in storage order: `u` varies fastest.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.nv).flat_map(move |j| (0..self.nu).map(move |i| self.point(i, j)))
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }
}

/// Values on an `nu x nv` lattice with spacings `du`, `dv`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<T> {
    pub nu: usize,
    pub nv: usize,
    pub du: f64,
    pub dv: f64,
    pub periodic_u: bool,
    pub periodic_v: bool,
    values: Vec<T>,
}

impl<T: Copy> GridField<T> {
    pub fn on_grid(grid: &Grid, values: Vec<T>) -> Self {
        assert_eq!(values.len(), grid.len());
        GridField {
            nu: grid.nu,
            nv: grid.nv,
            du: grid.du(),
            dv: grid.dv(),
            periodic_u: grid.domain.periodic_u,
            periodic_v: grid.domain.periodic_v,
            values,
        }
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64) -> T) -> Self {
        Self::on_grid(grid, grid.points().map(|(u, v)| f(u, v)).collect())
    }

    /// Square non-periodic patch of side `n` with spacing `h`, filled row by
    /// row (`u` fastest).
    pub fn patch(n: usize, h: f64, values: Vec<T>) -> Self {
        assert_eq!(values.len(), n * n);
        GridField { nu: n, nv: n, du: h, dv: h, periodic_u: false, periodic_v: false, values }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[j * self.nu + i]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at `(i + di, j + dj)`, wrapping periodic directions.
    pub fn at(&self, i: usize, j: usize, di: isize, dj: isize) -> Result<T> {
        let wrap = |k: usize, d: isize, n: usize, periodic: bool| -> Option<usize> {
            let t = k as isize + d;
            if periodic {
                Some(t.rem_euclid(n as isize) as usize)
            } else if (0..n as isize).contains(&t) {
                Some(t as usize)
            } else {
                None
            }
        };
        match (wrap(i, di, self.nu, self.periodic_u), wrap(j, dj, self.nv, self.periodic_v)) {
            (Some(a), Some(b)) => Ok(self.get(a, b)),
            _ => Err(GeometryError::BoundaryTooClose { u: i as f64, v: j as f64, h: self.du.max(self.dv) }),
        }
    }
}

impl<T: Linear> GridField<T> {
    /// Fourth-order central partials `(f_u, f_v)` at node `(i, j)`.
    pub fn partials(&self, i: usize, j: usize) -> Result<(T, T)> {
        let mut su = Vec::with_capacity(5);
        let mut sv = Vec::with_capacity(5);
        for k in -2..=2 {
            su.push(self.at(i, j, k, 0)?);
            sv.push(self.at(i, j, 0, k)?);
        }
        let arr = |s: Vec<T>| [s[0], s[1], s[2], s[3], s[4]];
        Ok((fd::d1(arr(su), self.du), fd::d1(arr(sv), self.dv)))
    }

    /// Fourth-order second partials `(f_uu, f_uv, f_vv)` at node `(i, j)`.
    pub fn second_partials(&self, i: usize, j: usize) -> Result<(T, T, T)> {
        let line = |di: isize, dj: isize, along_u: bool| -> Result<[T; 5]> {
            let mut s = [self.at(i, j, di, dj)?; 5];
            for (n, k) in (-2..=2).enumerate() {
                s[n] = if along_u { self.at(i, j, di + k, dj)? } else { self.at(i, j, di, dj + k)? };
            }
            Ok(s)
        };
        let fuu = fd::d2(line(0, 0, true)?, self.du);
        let fvv = fd::d2(line(0, 0, false)?, self.dv);
        let mut fv_cols = Vec::with_capacity(5);
        for k in -2..=2 {
            fv_cols.push(fd::d1(line(k, 0, false)?, self.dv));
        }
        let fuv = fd::d1([fv_cols[0], fv_cols[1], fv_cols[2], fv_cols[3], fv_cols[4]], self.du);
        Ok((fuu, fuv, fvv))
    }
}

/// Components of a surface gradient in an orthonormal tangent frame.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Gradient {
    /// `df(e1)`
    pub f1: f64,
    /// `df(e2)`
    pub f2: f64,
}

impl Gradient {
    pub fn norm_sq(&self) -> f64 {
        self.f1 * self.f1 + self.f2 * self.f2
    }

    /// `(df o J)(e1), (df o J)(e2)` with `J e1 = e2`, `J e2 = -e1`.
    pub fn rotated(&self) -> [f64; 2] {
        [self.f2, -self.f1]
    }
}

/// `(df(e1), df(e2))` where `coords[k]` are the chart coordinates of `e_(k+1)`.
pub fn surface_gradient(f: &GridField<f64>, i: usize, j: usize, coords: [[f64; 2]; 2]) -> Result<Gradient> {
    let (fu, fv) = f.partials(i, j)?;
    Ok(Gradient { f1: coords[0][0] * fu + coords[0][1] * fv, f2: coords[1][0] * fu + coords[1][1] * fv })
}

/// Divergence-form Laplace-Beltrami operator by nested second-order central
/// differences:
/// `(1/sqrt g) [d_u(sqrt g (g^11 f_u + g^12 f_v)) + d_v(sqrt g (g^12 f_u + g^22 f_v))]`.
pub fn laplace_beltrami(f: &GridField<f64>, metric: &GridField<Metric>, i: usize, j: usize) -> Result<f64> {
    let flux = |di: isize, dj: isize| -> Result<[f64; 2]> {
        let fu = fd::d1_2(f.at(i, j, di - 1, dj)?, f.at(i, j, di + 1, dj)?, f.du);
        let fv = fd::d1_2(f.at(i, j, di, dj - 1)?, f.at(i, j, di, dj + 1)?, f.dv);
        let m = metric.at(i, j, di, dj)?;
        let sg = m.det().sqrt();
        let inv = m.inverse();
        Ok([sg * (inv.g11 * fu + inv.g12 * fv), sg * (inv.g12 * fu + inv.g22 * fv)])
    };
    let div_u = fd::d1_2(flux(-1, 0)?[0], flux(1, 0)?[0], f.du);
    let div_v = fd::d1_2(flux(0, -1)?[1], flux(0, 1)?[1], f.dv);
    let sg = metric.get(i, j).det().sqrt();
    Ok((div_u + div_v) / sg)
}

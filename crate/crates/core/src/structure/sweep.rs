use rayon::prelude::*;

use crate::field::Grid;

/// Evaluates `f` at every grid point in parallel. The output is in grid
/// storage order (u fastest) regardless of how work is split.
pub fn sweep<T, F>(grid: &Grid, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64, f64) -> T + Sync,
{
    (0..grid.len())
        .into_par_iter()
        .map(|n| {
            let (u, v) = grid.point(n % grid.nu, n / grid.nu);
            f(u, v)
        })
        .collect()
}

//! Spatial grids and wave-field snapshots.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::Real;

/// `n` uniformly spaced points from `x_min` to `x_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid<T> {
    pub x_min: T,
    pub x_max: T,
    pub n: usize,
}

impl<T: Real> SpatialGrid<T> {
    pub fn new(x_min: T, x_max: T, n: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(domain("grid", format!("need finite x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n < 2 {
            return Err(domain("grid", format!("need at least two points, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Grid with spacing `dx` whose points include `x = 0`, running from
    /// `−(n/2)·dx` to `(n/2 − 1)·dx`. This is the layout of an FFT box of
    /// period `n·dx` centred on the origin.
    pub fn centered(dx: T, n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(domain("grid", format!("centred grid needs an even point count, got {n}")));
        }
        let half = T::from_usize_lossy(n / 2);
        Self::new(-half * dx, (half - T::one()) * dx, n)
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::from_usize_lossy(self.n - 1)
    }

    pub fn x(&self, i: usize) -> T {
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + self.dx() * T::from_usize_lossy(i)
        }
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Period of the grid viewed as one cell of a periodic lattice.
    pub fn period(&self) -> T {
        self.dx() * T::from_usize_lossy(self.n)
    }

    /// Whether `[−half_width, half_width]` lies strictly inside the grid.
    pub fn contains_interval(&self, half_width: T) -> bool {
        self.x_min < -half_width && self.x_max > half_width
    }
}

/// Complex field samples at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot<T> {
    pub grid: SpatialGrid<T>,
    pub t: T,
    pub psi: Vec<Complex<T>>,
}

impl<T: Real> FieldSnapshot<T> {
    pub fn new(grid: SpatialGrid<T>, t: T, psi: Vec<Complex<T>>) -> Result<Self> {
        if psi.len() != grid.n {
            return Err(domain("psi", format!("{} samples for a {}-point grid", psi.len(), grid.n)));
        }
        if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("psi", "non-finite sample"));
        }
        Ok(Self { grid, t, psi })
    }

    /// `∫|ψ|² dx` by the trapezoid rule.
    pub fn norm(&self) -> T {
        trapezoid(self.grid.dx(), self.psi.iter().map(|z| z.norm_sqr()))
    }

    pub fn density(&self) -> Vec<T> {
        self.psi.iter().map(|z| z.norm_sqr()).collect()
    }
}

pub(crate) fn trapezoid<T: Real, I: ExactSizeIterator<Item = T>>(dx: T, values: I) -> T {
    let n = values.len();
    let half = T::lit(0.5);
    let sum = values.enumerate().fold(T::zero(), |acc, (i, v)| {
        if i == 0 || i + 1 == n {
            acc + half * v
        } else {
            acc + v
        }
    });
    sum * dx
}

fn same_time<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(1e-9) * T::one().max(a.abs())
}

/// `√∫|ψ_a − ψ_b|² dx` for snapshots on identical grids at the same time.
pub fn compare_fields<T: Real>(a: &FieldSnapshot<T>, b: &FieldSnapshot<T>) -> Result<T> {
    if a.grid != b.grid {
        return Err(domain("grid", "snapshots live on different grids"));
    }
    if !same_time(a.t, b.t) {
        return Err(domain("t", format!("snapshots are at different times {} and {}", a.t, b.t)));
    }
    let diff = a.psi.iter().zip(&b.psi).map(|(x, y)| (x - y).norm_sqr());
    Ok(trapezoid(a.grid.dx(), diff).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: SpatialGrid<f64>, x0: f64, s: f64) -> FieldSnapshot<f64> {
        let psi = grid
            .points()
            .iter()
            .map(|&x| Complex::new((-(x - x0) * (x - x0) / (4.0 * s * s)).exp(), 0.0))
            .collect();
        FieldSnapshot::new(grid, 0.0, psi).unwrap()
    }

    #[test]
    fn grid_contract() {
        let g = SpatialGrid::new(-1.0_f64, 1.0, 5).unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(g.period(), 2.5);
        assert!(SpatialGrid::new(1.0_f64, -1.0, 5).is_err());
        assert!(SpatialGrid::new(-1.0_f64, 1.0, 1).is_err());
        let c = SpatialGrid::centered(0.25_f64, 8).unwrap();
        assert_eq!(c.x(4), 0.0);
        assert_eq!(c.x_min, -1.0);
        assert_eq!(c.x_max, 0.75);
    }

    #[test]
    fn gaussian_norm() {
        let g = SpatialGrid::new(-40.0_f64, 40.0, 801).unwrap();
        let s = gaussian(g, 0.0, 2.0);
        let exact = (2.0 * std::f64::consts::PI).sqrt() * 2.0;
        assert!((s.norm() - exact).abs() < 1e-12);
    }

    #[test]
    fn comparisons() {
        let g = SpatialGrid::new(-40.0_f64, 40.0, 801).unwrap();
        let a = gaussian(g, 1.0, 2.0);
        assert_eq!(compare_fields(&a, &a).unwrap(), 0.0);
        let neg = FieldSnapshot::new(g, 0.0, a.psi.iter().map(|z| -z).collect()).unwrap();
        assert!((compare_fields(&a, &neg).unwrap() - 2.0 * a.norm().sqrt()).abs() < 1e-12);
        let other = gaussian(SpatialGrid::new(-40.0, 40.0, 802).unwrap(), 1.0, 2.0);
        assert!(compare_fields(&a, &other).is_err());
        let later = FieldSnapshot { t: 1.0, ..a.clone() };
        assert!(compare_fields(&a, &later).is_err());
    }
}

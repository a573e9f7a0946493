//! Centroids, peaks and delay extraction from snapshot sequences.

use crate::error::{domain, Error, Result};
use crate::kinematics::{BarrierSpec, Kinematics};
use crate::numerics::refine_peak;
use crate::scattering::symmetric_phase_time;
use crate::wavepacket::distribution::Distribution;
use crate::wavepacket::field::{trapezoid, FieldSnapshot};
use crate::Real;

/// Part of the grid over which a position is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region<T> {
    Full,
    RightOf(T),
    LeftOf(T),
}

impl<T: Real> Region<T> {
    fn contains(&self, x: T) -> bool {
        match *self {
            Region::Full => true,
            Region::RightOf(a) => x > a,
            Region::LeftOf(a) => x < a,
        }
    }
}

/// Share of the total norm a region must hold before its centroid is trusted.
pub const MIN_REGION_SHARE: f64 = 1e-6;

fn region_indices<T: Real>(s: &FieldSnapshot<T>, region: Region<T>) -> Vec<usize> {
    (0..s.grid.n).filter(|&i| region.contains(s.grid.x(i))).collect()
}

/// `∫ x|ψ|² / ∫ |ψ|²` over the region by the trapezoid rule.
pub fn centroid<T: Real>(s: &FieldSnapshot<T>, region: Region<T>) -> Result<T> {
    let idx = region_indices(s, region);
    let dx = s.grid.dx();
    let mass = trapezoid(dx, idx.iter().map(|&i| s.psi[i].norm_sqr()));
    let total = s.norm();
    if idx.len() < 2 || !(mass > T::lit(MIN_REGION_SHARE) * total) {
        return Err(domain("region", "holds too little of the field norm for a centroid"));
    }
    let moment = trapezoid(dx, idx.iter().map(|&i| s.grid.x(i) * s.psi[i].norm_sqr()));
    Ok(moment / mass)
}

/// Position of the maximum of `|ψ|²` in the region, refined by a parabola.
pub fn peak_position<T: Real>(s: &FieldSnapshot<T>, region: Region<T>) -> Result<T> {
    let idx = region_indices(s, region);
    if idx.len() < 3 {
        return Err(domain("region", "needs at least three grid points"));
    }
    let density = s.density();
    let (best, _) = idx
        .iter()
        .map(|&i| (i, density[i]))
        .fold((idx[0], T::neg_infinity()), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    if best == 0 || best + 1 == s.grid.n {
        return Err(domain("region", "maximum sits on the grid edge"));
    }
    let xs = s.grid.points();
    Ok(refine_peak(&xs, &density, best)?.position)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DelayMethod {
    #[default]
    Centroid,
    Peak,
}

/// Delay of the right-moving scattered packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrivalEstimate<T> {
    pub method: DelayMethod,
    pub region: Region<T>,
    /// Time from the faces being reached (`t = −mL/(2k₀)`) to the fitted
    /// position crossing `x = L/2`.
    pub delay: T,
    /// RMS residual of the straight-line fit divided by the fitted speed.
    pub uncertainty: T,
    pub velocity: T,
    pub crossing_time: T,
}

/// Fit uncertainty, relative to the delay, above which the window is judged
/// to still contain the collision.
pub const MAX_RELATIVE_UNCERTAINTY: f64 = 1e-4;

/// Looser bound for peak tracking: the maximum of a dispersing packet with a
/// k-dependent phase drifts non-linearly even after the collision.
pub const MAX_RELATIVE_UNCERTAINTY_PEAK: f64 = 5e-2;

/// Fits `x(t) = v·t + c` to the right-half positions and reports when the
/// line crosses the right face.
pub fn extract_delay<T: Real>(
    snapshots: &[FieldSnapshot<T>],
    barrier: &BarrierSpec<T>,
    k0: T,
    method: DelayMethod,
) -> Result<ArrivalEstimate<T>> {
    if snapshots.len() < 5 {
        return Err(domain("snapshots", format!("need at least 5, got {}", snapshots.len())));
    }
    let half_l = T::lit(0.5) * barrier.length();
    let region = Region::RightOf(half_l);
    let positions = snapshots
        .iter()
        .map(|s| match method {
            DelayMethod::Centroid => centroid(s, region),
            DelayMethod::Peak => peak_position(s, region),
        })
        .collect::<Result<Vec<_>>>()?;
    let times: Vec<T> = snapshots.iter().map(|s| s.t).collect();
    let (velocity, intercept, rms) = line_fit(&times, &positions);
    if !(velocity > T::zero()) {
        return Err(Error::Numeric {
            what: "extract_delay",
            detail: format!("right-half position is not advancing (v = {velocity})"),
        });
    }
    let crossing_time = (half_l - intercept) / velocity;
    let delay = crossing_time - barrier.face_arrival_time(k0);
    let uncertainty = rms / velocity;
    let limit = match method {
        DelayMethod::Centroid => MAX_RELATIVE_UNCERTAINTY,
        DelayMethod::Peak => MAX_RELATIVE_UNCERTAINTY_PEAK,
    };
    let bound = T::lit(limit) * delay.abs();
    if !(uncertainty <= bound) {
        return Err(Error::NonConvergence {
            what: "delay fit (window too early?)",
            achieved: uncertainty.as_f64(),
            required: bound.as_f64(),
            best: delay.as_f64(),
        });
    }
    Ok(ArrivalEstimate {
        method,
        region,
        delay,
        uncertainty,
        velocity,
        crossing_time,
    })
}

// Least squares line through (t, x); returns slope, intercept and RMS residual.
fn line_fit<T: Real>(t: &[T], x: &[T]) -> (T, T, T) {
    let n = T::from_usize_lossy(t.len());
    let tm = t.iter().fold(T::zero(), |a, &v| a + v) / n;
    let xm = x.iter().fold(T::zero(), |a, &v| a + v) / n;
    let (mut stt, mut stx) = (T::zero(), T::zero());
    for (&ti, &xi) in t.iter().zip(x) {
        stt = stt + (ti - tm) * (ti - tm);
        stx = stx + (ti - tm) * (xi - xm);
    }
    let slope = stx / stt;
    let intercept = xm - slope * tm;
    let ss = t
        .iter()
        .zip(x)
        .fold(T::zero(), |a, (&ti, &xi)| {
            let r = xi - slope * ti - intercept;
            a + r * r
        });
    (slope, intercept, (ss / n).sqrt())
}

/// Delay predicted from the momentum distribution alone.
///
/// The right-moving packet is `∫ g S e^{ikx − ik²t/2m}` with `|S| = 1`, so its
/// centroid is exactly `L − ⟨dφ/dk⟩ + ⟨k⟩t/m`, averages taken with `|g|²`.
/// Solving for the crossing of `x = L/2` gives
/// `⟨k·t_φ⟩/⟨k⟩ − mL/(2⟨k⟩) + mL/(2k₀)`.
pub fn delay_prediction<T: Real>(dist: &Distribution<T>, barrier: &BarrierSpec<T>) -> Result<T> {
    let times = phase_times(dist, barrier)?;
    let kt: Vec<T> = dist.ks.iter().zip(&times).map(|(&k, &t)| k * t).collect();
    let kt = dist.average_of(&kt);
    let mean_k = dist.mean_k() / dist.norm();
    let ml = barrier.mass() * barrier.length();
    let two = T::lit(2.0);
    Ok(kt / dist.norm() / mean_k - ml / (two * mean_k) + ml / (two * dist.spec.k0))
}

/// `|g|²`-weighted average of the symmetric phase time.
pub fn mean_phase_time<T: Real>(dist: &Distribution<T>, barrier: &BarrierSpec<T>) -> Result<T> {
    let times = phase_times(dist, barrier)?;
    Ok(dist.average_of(&times) / dist.norm())
}

fn phase_times<T: Real>(dist: &Distribution<T>, barrier: &BarrierSpec<T>) -> Result<Vec<T>> {
    dist.ks
        .iter()
        .map(|&k| Ok(symmetric_phase_time(&Kinematics::new(*barrier, k)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::field::SpatialGrid;
    use num_complex::Complex;

    fn gaussian(grid: SpatialGrid<f64>, t: f64, x0: f64, s: f64) -> FieldSnapshot<f64> {
        let psi = grid
            .points()
            .iter()
            .map(|&x| Complex::new((-(x - x0) * (x - x0) / (4.0 * s * s)).exp(), 0.3))
            .collect();
        FieldSnapshot::new(grid, t, psi).unwrap()
    }

    #[test]
    fn centroid_and_peak_of_gaussian() {
        let grid = SpatialGrid::new(-50.0, 50.0, 1001).unwrap();
        let psi: Vec<_> = grid
            .points()
            .iter()
            .map(|&x| Complex::new((-(x - 3.21_f64).powi(2) / 8.0).exp(), 0.0))
            .collect();
        let s = FieldSnapshot::new(grid, 0.0, psi).unwrap();
        assert!((centroid(&s, Region::Full).unwrap() - 3.21).abs() < 1e-12);
        assert!((peak_position(&s, Region::Full).unwrap() - 3.21).abs() < 1e-3);
        assert!(centroid(&s, Region::LeftOf(-45.0)).is_err());
    }

    #[test]
    fn symmetric_field_centroid_is_zero() {
        let grid = SpatialGrid::new(-50.0, 50.0, 1001).unwrap();
        let psi: Vec<_> = grid
            .points()
            .iter()
            .map(|&x| Complex::new((-(x - 10.0_f64).powi(2) / 8.0).exp() + (-(x + 10.0_f64).powi(2) / 8.0).exp(), 0.0))
            .collect();
        let s = FieldSnapshot::new(grid, 0.0, psi).unwrap();
        assert!(centroid(&s, Region::Full).unwrap().abs() < 1e-12);
        assert!((centroid(&s, Region::RightOf(0.0)).unwrap() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn line_fit_exact() {
        let t = [1.0, 2.0, 3.0, 4.0];
        let x: Vec<f64> = t.iter().map(|t| 0.5 * t - 2.0).collect();
        let (v, c, r) = line_fit(&t, &x);
        assert!((v - 0.5).abs() < 1e-15 && (c + 2.0).abs() < 1e-14 && r < 1e-15);
    }

    #[test]
    fn too_few_snapshots() {
        let grid = SpatialGrid::new(-50.0, 50.0, 101).unwrap();
        let b = BarrierSpec::dimensionless(1.0).unwrap();
        let snaps: Vec<_> = (0..4).map(|i| gaussian(grid, i as f64, 10.0 + i as f64, 2.0)).collect();
        assert!(extract_delay(&snaps, &b, 0.5, DelayMethod::Centroid).is_err());
    }
}

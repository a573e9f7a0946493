//! End-to-end runs: delay extraction from synthesized snapshots, and the
//! comparison of synthesis against time-domain propagation.

use crate::error::Result;
use crate::kinematics::{BarrierSpec, Kinematics};
use crate::scattering::symmetric_phase_time;
use crate::wavepacket::analysis::{delay_prediction, extract_delay, mean_phase_time, ArrivalEstimate, DelayMethod};
use crate::wavepacket::distribution::{build_distribution, PacketSpec};
use crate::wavepacket::field::{compare_fields, FieldSnapshot, SpatialGrid};
use crate::wavepacket::propagate::td_propagate;
use crate::wavepacket::synth::{synthesize_field, Medium};
use crate::Real;

/// Distance beyond the right face, in spatial widths, that the transmitted
/// packet centre has travelled at the first extraction time.
const CLEARANCE_WIDTHS: f64 = 14.0;
/// Extraction times relative to the first one.
const WINDOW: [f64; 5] = [1.0, 1.1, 1.2, 1.3, 1.4];
/// Minimum grid points per shortest wavelength in the packet.
const POINTS_PER_WAVELENGTH: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DelayReport<T> {
    pub estimate: ArrivalEstimate<T>,
    /// Symmetric phase time at the nominal `k₀` (free flight `mL/k₀` for a free medium).
    pub phase_time_k0: T,
    /// Exact `|g|²`-averaged prediction of the centroid delay.
    pub prediction: T,
    /// Plain `|g|²`-average of the phase time.
    pub mean_phase_time: T,
    pub snapshots: Vec<FieldSnapshot<T>>,
}

/// Post-collision times at which the right-half centroid is sampled.
pub fn extraction_times<T: Real>(spec: &PacketSpec<T>, barrier: &BarrierSpec<T>) -> Vec<T> {
    let v0 = spec.k0 / barrier.mass();
    let first = (T::lit(0.5) * barrier.length() + T::lit(CLEARANCE_WIDTHS) * spec.sigma_x()) / v0;
    WINDOW.iter().map(|&f| first * T::lit(f)).collect()
}

/// Symmetric grid wide enough to hold both scattered packets at `t_max`.
pub fn extraction_grid<T: Real>(spec: &PacketSpec<T>, barrier: &BarrierSpec<T>, t_max: T) -> Result<SpatialGrid<T>> {
    let m = barrier.mass();
    let sx = spec.sigma_x();
    let spread = (T::one() + (t_max / (T::lit(2.0) * m * sx * sx)).powi(2)).sqrt();
    let half_width = spec.k0 / m * t_max + T::lit(CLEARANCE_WIDTHS) * sx * spread;
    let k_max = spec.k0 + spec.window_widths * spec.sigma_k;
    let dx_max = T::lit(2.0) * T::PI() / (T::lit(POINTS_PER_WAVELENGTH) * k_max);
    let cells = (T::lit(2.0) * half_width / dx_max).ceil().to_usize().unwrap_or(usize::MAX);
    SpatialGrid::new(-half_width, half_width, cells.next_power_of_two() + 1)
}

/// Synthesizes the collision at the extraction times and fits the delay.
pub fn run_delay_experiment<T: Real>(
    spec: &PacketSpec<T>,
    medium: &Medium<T>,
    method: DelayMethod,
) -> Result<DelayReport<T>> {
    let barrier = medium.barrier();
    let dist = build_distribution(spec, barrier)?;
    let times = extraction_times(spec, barrier);
    let grid = extraction_grid(spec, barrier, *times.last().expect("non-empty window"))?;
    let snapshots = times
        .iter()
        .map(|&t| synthesize_field(&dist, medium, t, spec.symmetrization, &grid))
        .collect::<Result<Vec<_>>>()?;
    let estimate = extract_delay(&snapshots, barrier, spec.k0, method)?;
    let ml = barrier.mass() * barrier.length();
    let (phase_time_k0, prediction, mean) = match medium {
        Medium::Barrier(b) => (
            symmetric_phase_time(&Kinematics::new(*b, spec.k0)?),
            delay_prediction(&dist, b)?,
            mean_phase_time(&dist, b)?,
        ),
        Medium::Free(_) => {
            let two = T::lit(2.0);
            let mean_k = dist.mean_k() / dist.norm();
            let inv_k: Vec<T> = dist.ks.iter().map(|&k| ml / k).collect();
            (
                ml / spec.k0,
                ml / (two * mean_k) + ml / (two * spec.k0),
                dist.average_of(&inv_k) / dist.norm(),
            )
        }
    };
    Ok(DelayReport {
        estimate,
        phase_time_k0,
        prediction,
        mean_phase_time: mean,
        snapshots,
    })
}

/// Configuration of the synthesis-versus-propagation comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckConfig<T> {
    /// Grid points across half the barrier length (`dx = (L/2)/M`).
    pub points_per_half_length: usize,
    /// Number of grid points (even; the box is periodic).
    pub points: usize,
    /// `dt = dt_factor · m · dx²` before rounding to land on the end time.
    pub dt_factor: T,
    /// Comparison times as fractions of the final time, which mirrors the start.
    pub fractions: [T; 3],
}

impl<T: Real> Default for CrossCheckConfig<T> {
    fn default() -> Self {
        Self {
            points_per_half_length: 56,
            points: 4096,
            dt_factor: T::lit(0.5),
            fractions: [T::lit(0.6), T::lit(0.8), T::one()],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport<T> {
    pub grid: SpatialGrid<T>,
    pub dt: T,
    pub steps: usize,
    pub times: Vec<T>,
    /// `√∫|ψ_prop − ψ_synth|²` at each comparison time.
    pub l2: Vec<T>,
    /// Largest relative change of the propagated norm.
    pub norm_drift: T,
}

/// Starts from the synthesized field at `approach_offset` before the face
/// arrival and compares propagated and synthesized fields after the collision.
pub fn run_cross_check<T: Real>(
    spec: &PacketSpec<T>,
    medium: &Medium<T>,
    cfg: &CrossCheckConfig<T>,
) -> Result<CrossCheckReport<T>> {
    let barrier = medium.barrier();
    let m = barrier.mass();
    let dx = T::lit(0.5) * barrier.length() / T::from_usize_lossy(cfg.points_per_half_length);
    let grid = SpatialGrid::centered(dx, cfg.points)?;
    let dist = build_distribution(spec, barrier)?;
    let t0 = barrier.face_arrival_time(spec.k0) - spec.approach_offset * m / spec.k0;
    let t_end = -t0;
    let nominal = cfg.dt_factor * m * dx * dx;
    let steps = ((t_end - t0) / nominal).ceil().to_usize().unwrap_or(usize::MAX).max(1);
    let dt = (t_end - t0) / T::from_usize_lossy(steps);
    let record: Vec<usize> = cfg
        .fractions
        .iter()
        .map(|&f| ((f * t_end - t0) / dt).round().to_usize().unwrap_or(steps).min(steps))
        .collect();
    let initial = synthesize_field(&dist, medium, t0, spec.symmetrization, &grid)?;
    let propagated = td_propagate(&initial, medium, dt, steps, &record)?;
    let norm0 = initial.psi.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
    let mut l2 = Vec::with_capacity(propagated.len());
    let mut times = Vec::with_capacity(propagated.len());
    let mut norm_drift = T::zero();
    for snap in &propagated {
        let reference = synthesize_field(&dist, medium, snap.t, spec.symmetrization, &grid)?;
        l2.push(compare_fields(snap, &reference)?);
        times.push(snap.t);
        let norm = snap.psi.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
        norm_drift = norm_drift.max(((norm - norm0) / norm0).abs());
    }
    Ok(CrossCheckReport {
        grid,
        dt,
        steps,
        times,
        l2,
        norm_drift,
    })
}

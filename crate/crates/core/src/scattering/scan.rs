//! Search for parameters where transmission is likely and the symmetric phase
//! time is shorter than the free traversal time.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::kinematics::{BarrierSpec, Kinematics};
use crate::scattering::times::{symmetric_phase_time, transmission_magnitude};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow<T> {
    pub n: T,
    pub wl: T,
    /// `|T|²`.
    pub t2: T,
    /// Symmetric phase time over `mL/k`.
    pub t_ratio: T,
    /// `|T|² > 1/2`.
    pub flag_t: bool,
    /// `t_ratio < 1`.
    pub flag_fast: bool,
    pub flag_joint: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport<T> {
    pub rows: Vec<ScanRow<T>>,
}

impl<T: Real> ScanReport<T> {
    /// No row with `n < 1` has both flags set.
    pub fn joint_empty_below_top(&self) -> bool {
        !self.rows.iter().any(|r| r.n < T::one() && r.flag_joint)
    }

    /// Smallest scanned `n` with both flags set.
    pub fn onset(&self) -> Option<T> {
        self.rows.iter().filter(|r| r.flag_joint).map(|r| r.n).reduce(T::min)
    }

    /// Every joint row has `n > threshold`.
    pub fn joint_only_above(&self, threshold: T) -> bool {
        self.rows.iter().filter(|r| r.flag_joint).all(|r| r.n > threshold)
    }
}

pub fn superluminal_scan<T: Real>(wl: T, n_grid: &[T]) -> Result<ScanReport<T>> {
    let barrier = BarrierSpec::dimensionless(wl)?;
    let half = T::lit(0.5);
    let rows = n_grid
        .par_iter()
        .map(|&n| {
            let kin = Kinematics::at_n(barrier, n)?;
            let mag = transmission_magnitude(&kin);
            let t2 = mag * mag;
            let t_ratio = symmetric_phase_time(&kin) / kin.tau_k;
            let flag_t = t2 > half;
            let flag_fast = t_ratio < T::one();
            Ok(ScanRow {
                n,
                wl,
                t2,
                t_ratio,
                flag_t,
                flag_fast,
                flag_joint: flag_t && flag_fast,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { rows })
}

/// `steps` evenly spaced values from `min` to `max` inclusive.
pub fn uniform_grid<T: Real>(min: T, max: T, steps: usize) -> Result<Vec<T>> {
    if steps < 2 {
        return Err(domain("n_steps", format!("need at least 2 points, got {steps}")));
    }
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(domain("range", format!("need finite min < max, got [{min}, {max}]")));
    }
    let last = T::from_usize_lossy(steps - 1);
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + (max - min) * T::from_usize_lossy(i) / last
            }
        })
        .collect())
}

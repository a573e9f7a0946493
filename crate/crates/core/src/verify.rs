//! The invariant suite behind `tunneltimes verify`.
//!
//! Each registered check sweeps a fixed parameter set and reports the worst
//! deviation it saw together with the tolerance it had to meet.

use std::f64::consts::PI;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kinematics::Kinematics;
use crate::numerics::Tolerance;
use crate::scattering::{
    dwell_time_closed, dwell_time_numeric, phase_time_numeric, reflection_amplitude, standard_phase_time,
    standard_phase_time_numeric, superpose_scattered, symmetric_phase_time, time_bundle, transmission_amplitude,
    variational_check, ChannelAmplitudes, PhaseVariant, Side, Sign,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Transmission-phase form used by the derivative-consistency check.
    pub phase_variant: PhaseVariant,
    /// Seed for the randomly drawn dwell-time points.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            phase_variant: PhaseVariant::Consistent,
            seed: 20_240_521,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed.
    pub achieved: f64,
    pub required: f64,
    pub detail: String,
}

type CheckFn = fn(&VerifyOptions) -> Result<(f64, String)>;

const CHECKS: [(&str, f64, CheckFn); 7] = [
    ("unitarity", 1e-12, unitarity),
    ("unimodularity", 1e-12, unimodularity),
    ("decomposition_identity", 1e-12, decomposition),
    ("derivative_consistency", 1e-6, derivative_consistency),
    ("dwell_quadrature", 1e-8, dwell_quadrature),
    ("variational", 1e-6, variational),
    ("parity", 1e-10, parity),
];

/// Names of the registered checks, in execution order.
pub fn registered_checks() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs every registered check. A check that errors counts as failed.
pub fn run_checks(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, required, check)| match check(opts) {
            Ok((achieved, detail)) => CheckOutcome {
                name,
                passed: achieved <= required,
                achieved,
                required,
                detail,
            },
            Err(e) => CheckOutcome {
                name,
                passed: false,
                achieved: f64::INFINITY,
                required,
                detail: e.to_string(),
            },
        })
        .collect()
}

/// `n = 0.01, 0.02, …, 0.99` crossed with `wL ∈ {2π, 4π, 8π}`.
pub fn standard_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(297);
    for wl in [2.0 * PI, 4.0 * PI, 8.0 * PI] {
        for i in 1..100 {
            out.push((i as f64 / 100.0, wl));
        }
    }
    out
}

struct Worst {
    value: f64,
    at: (f64, f64),
}

impl Worst {
    fn new() -> Self {
        Self { value: 0.0, at: (f64::NAN, f64::NAN) }
    }

    fn update(&mut self, v: f64, at: (f64, f64)) {
        if !(v <= self.value) {
            self.value = v;
            self.at = at;
        }
    }

    fn finish(self) -> (f64, String) {
        if self.at.0.is_nan() {
            return (self.value, "exact at every point".into());
        }
        (self.value, format!("worst at n = {}, wL = {:.6}", self.at.0, self.at.1))
    }
}

fn sweep<F: FnMut(&Kinematics<f64>, &mut Worst) -> Result<()>>(points: &[(f64, f64)], mut f: F) -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for &(n, wl) in points {
        f(&Kinematics::dimensionless(n, wl)?, &mut worst)?;
    }
    Ok(worst.finish())
}

fn unitarity(_: &VerifyOptions) -> Result<(f64, String)> {
    sweep(&standard_grid(), |kin, w| {
        let at = (kin.n, kin.wl());
        let (r, t) = (reflection_amplitude(kin)?, transmission_amplitude(kin)?);
        w.update((r.norm_sqr() + t.norm_sqr() - 1.0).abs(), at);
        for side in [Side::Left, Side::Right] {
            let a = ChannelAmplitudes::solve(kin, side)?;
            w.update((a.r.norm_sqr() + a.t.norm_sqr() - 1.0).abs(), at);
        }
        Ok(())
    })
}

fn unimodularity(_: &VerifyOptions) -> Result<(f64, String)> {
    sweep(&standard_grid(), |kin, w| {
        let at = (kin.n, kin.wl());
        let a = ChannelAmplitudes::solve(kin, Side::Left)?;
        for sign in [Sign::Plus, Sign::Minus] {
            w.update((superpose_scattered(kin, sign)?.s.norm() - 1.0).abs(), at);
            let s = a.r + a.t * sign.value::<f64>();
            w.update((s.norm() - 1.0).abs(), at);
        }
        Ok(())
    })
}

fn decomposition(_: &VerifyOptions) -> Result<(f64, String)> {
    sweep(&standard_grid(), |kin, w| {
        w.update(time_bundle(kin)?.decomposition_residual(), (kin.n, kin.wl()));
        Ok(())
    })
}

fn derivative_consistency(opts: &VerifyOptions) -> Result<(f64, String)> {
    sweep(&standard_grid(), |kin, w| {
        let at = (kin.n, kin.wl());
        let sym = symmetric_phase_time(kin);
        w.update(((phase_time_numeric(kin, Sign::Plus)?.value - sym) / sym).abs(), at);
        let std = standard_phase_time(kin);
        let num = standard_phase_time_numeric(kin, opts.phase_variant)?.value;
        w.update(((num - std) / std).abs(), at);
        Ok(())
    })
}

/// `count` points with `n ∈ [0.01, 0.99]` and `wL ∈ [1, 8π]` from the seed.
pub fn random_points(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(0.01..0.99), rng.gen_range(1.0..8.0 * PI))).collect()
}

fn dwell_quadrature(opts: &VerifyOptions) -> Result<(f64, String)> {
    let tol = Tolerance::default();
    sweep(&random_points(opts.seed, 50), |kin, w| {
        let closed = dwell_time_closed(kin);
        let num = dwell_time_numeric(kin, &tol)?.value;
        w.update(((num - closed) / closed).abs(), (kin.n, kin.wl()));
        Ok(())
    })
}

fn variational(_: &VerifyOptions) -> Result<(f64, String)> {
    let points: Vec<(f64, f64)> = [0.1, 0.3, 0.5, 0.7, 0.9]
        .iter()
        .flat_map(|&n| [2.0 * PI, 4.0 * PI].map(|wl| (n, wl)))
        .collect();
    sweep(&points, |kin, w| {
        w.update(variational_check(kin, None)?.residual, (kin.n, kin.wl()));
        Ok(())
    })
}

fn parity(_: &VerifyOptions) -> Result<(f64, String)> {
    let points: Vec<(f64, f64)> = [0.2, 0.5, 0.8].iter().flat_map(|&n| [PI, 4.0 * PI].map(|wl| (n, wl))).collect();
    sweep(&points, |kin, w| {
        let left = ChannelAmplitudes::solve(kin, Side::Left)?;
        let right = ChannelAmplitudes::solve(kin, Side::Right)?;
        let field = |x: f64, s: f64| -> Complex<f64> { (left.field(x) + right.field(x) * s) / 2f64.sqrt() };
        let span = kin.barrier.length();
        for i in 0..=200 {
            let x = span * (i as f64 / 100.0);
            for s in [1.0, -1.0] {
                let (a, b) = (field(x, s), field(-x, s));
                let scale = a.norm().max(1.0);
                w.update((a - b * s).norm() / scale, (kin.n, kin.wl()));
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let out = run_checks(&VerifyOptions::default());
        assert_eq!(out.len(), registered_checks().len());
        for c in &out {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn doubled_argument_fails_derivative_check() {
        let opts = VerifyOptions {
            phase_variant: PhaseVariant::DoubledArgument,
            ..VerifyOptions::default()
        };
        let out = run_checks(&opts);
        let failed: Vec<_> = out.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["derivative_consistency"]);
    }

    #[test]
    fn seeded_points_are_reproducible() {
        assert_eq!(random_points(7, 5), random_points(7, 5));
        assert_ne!(random_points(7, 5), random_points(8, 5));
    }
}

//! Energy-derivative check of the boundary identity that splits the phase
//! time into dwell and self-interference parts.
//!
//! Outside the barrier the symmetrized state is `(e^{∓ikx} + S e^{±ikx})/√2`
//! for `x ≷ ±L/2`. The interior norm then follows from boundary values alone,
//! `2m∫|ψ|² = [ψ_E ψ*' − ψ* ψ_E']` between the faces, with `ψ_E = ∂ψ/∂E` taken
//! by central differences.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::kinematics::{Kinematics, Regime};
use crate::scattering::amplitudes::{phi_phase, Sign};
use crate::scattering::times::symmetric_phase_time;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalReport<T> {
    pub energy_step: T,
    /// `dφ₊/dE` by central differences.
    pub phase_time: T,
    /// Dwell time from the boundary expression.
    pub dwell_time: T,
    /// `−(m/k²)·sin φ₊`.
    pub self_interference: T,
    /// Closed-form symmetric phase time, the reference scale.
    pub reference: T,
    /// `|phase_time − dwell_time − self_interference| / reference`.
    pub residual: T,
}

/// Default relative energy step.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-5;

/// Runs the check with energy step `de` (default `10⁻⁵·E`).
pub fn variational_check<T: Real>(kin: &Kinematics<T>, de: Option<T>) -> Result<VariationalReport<T>> {
    if kin.regime() != Regime::Tunneling {
        return Err(domain("n", format!("variational check needs 0 < n < 1, got n = {}", kin.n)));
    }
    let m = kin.barrier.mass();
    let e = kin.energy();
    let de = de.unwrap_or(e * T::lit(DEFAULT_RELATIVE_STEP));
    let v0 = kin.barrier.v0();
    if !(de > T::zero()) || !(e + de < v0) || !(e - de > T::zero()) {
        return Err(domain("dE", format!("E ± dE must stay inside (0, V0); E = {e}, dE = {de}")));
    }
    let two = T::lit(2.0);
    let at = |energy: T| kin.with_k((two * m * energy).sqrt());
    let (lo, mid, hi) = (at(e - de)?, *kin, at(e + de)?);
    let half_l = T::lit(0.5) * kin.barrier.length();

    let flux = |x: T| {
        let (p_lo, d_lo) = boundary_wave(&lo, x);
        let (p, d) = boundary_wave(&mid, x);
        let (p_hi, d_hi) = boundary_wave(&hi, x);
        let p_e = (p_hi - p_lo) / (two * de);
        let d_e = (d_hi - d_lo) / (two * de);
        p_e * d.conj() - p.conj() * d_e
    };
    let jump = flux(half_l) - flux(-half_l);
    let dwell_time = jump.re / (two * kin.k);

    let phase = |k: &Kinematics<T>| phi_phase(k, Sign::Plus);
    let phase_time = (phase(&hi) - phase(&lo)) / (two * de);
    let self_interference = -m * phase(&mid).sin() / (kin.k * kin.k);
    let reference = symmetric_phase_time(kin);
    Ok(VariationalReport {
        energy_step: de,
        phase_time,
        dwell_time,
        self_interference,
        reference,
        residual: ((phase_time - dwell_time - self_interference) / reference).abs(),
    })
}

// Value and x-derivative of the exterior symmetrized state.
fn boundary_wave<T: Real>(kin: &Kinematics<T>, x: T) -> (Complex<T>, Complex<T>) {
    let k = kin.k;
    let phi = phi_phase(kin, Sign::Plus);
    let s = Complex::from_polar(T::one(), phi - k * kin.barrier.length());
    let dir = if x >= T::zero() { T::one() } else { -T::one() };
    let incoming = Complex::from_polar(T::one(), -dir * k * x);
    let outgoing = s * Complex::from_polar(T::one(), dir * k * x);
    let ik = Complex::new(T::zero(), dir * k);
    let root2 = T::SQRT_2();
    ((incoming + outgoing) / root2, ik * (outgoing - incoming) / root2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::times::{dwell_time_closed, self_interference_time};
    use std::f64::consts::PI;

    #[test]
    fn residual_at_default_step() {
        let k = Kinematics::dimensionless(0.5, 4.0 * PI).unwrap();
        let r = variational_check(&k, None).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
        assert!(((r.dwell_time - dwell_time_closed(&k)) / r.reference).abs() < 1e-6);
        assert!(((r.self_interference - self_interference_time(&k)) / r.reference).abs() < 1e-12);
    }

    #[test]
    fn second_order_in_step() {
        let k = Kinematics::dimensionless(0.5, 4.0 * PI).unwrap();
        let e = k.energy();
        let a = variational_check(&k, Some(1e-2 * e)).unwrap().residual;
        let b = variational_check(&k, Some(5e-3 * e)).unwrap().residual;
        let ratio = a / b;
        assert!((3.6..4.4).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_steps() {
        let k = Kinematics::dimensionless(0.5, 4.0 * PI).unwrap();
        assert!(variational_check(&k, Some(0.0)).is_err());
        assert!(variational_check(&k, Some(10.0)).is_err());
        let above = Kinematics::dimensionless(1.5, 4.0 * PI).unwrap();
        assert!(variational_check(&above, None).is_err());
    }
}

//! Stationary scattering states of the symmetric rectangular barrier.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::kinematics::{BarrierSpec, Kinematics, Regime};
use crate::numerics::series::{cosh_even, sinhc};
use crate::numerics::PhaseTracker;
use crate::Real;

/// Side from which the unit-amplitude plane wave is incident.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// `+1` for left incidence, `−1` for right incidence.
    fn sign<T: Real>(self) -> T {
        match self {
            Side::Left => T::one(),
            Side::Right => -T::one(),
        }
    }
}

/// Exchange symmetry of the two-packet superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// Symmetrized (bosonic) combination `φᴸ + φᴿ`.
    Plus,
    /// Antisymmetrized (fermionic) combination `φᴸ − φᴿ`.
    Minus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Coefficients of one stationary solution.
///
/// For left incidence the solution reads `e^{ikx} + R e^{−ikx}` for
/// `x < −L/2`, `γ e^{−ρx} + β e^{ρx}` inside and `T e^{ikx}` for `x > L/2`.
/// Right incidence is the mirror image with every exponent sign flipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelAmplitudes<T> {
    pub side: Side,
    pub r: Complex<T>,
    pub t: Complex<T>,
    pub gamma: Complex<T>,
    pub beta: Complex<T>,
    pub kin: Kinematics<T>,
    // γ and β rescaled by e^{α/2}, paired with basis functions that are at
    // most one in magnitude on the barrier.
    gamma_face: Complex<T>,
    beta_face: Complex<T>,
}

/// Solves the continuity conditions for `φ` and `φ'` at both faces.
pub fn solve_stationary<T: Real>(barrier: BarrierSpec<T>, k: T, side: Side) -> Result<ChannelAmplitudes<T>> {
    ChannelAmplitudes::solve(&Kinematics::new(barrier, k)?, side)
}

impl<T: Real> ChannelAmplitudes<T> {
    pub fn solve(kin: &Kinematics<T>, side: Side) -> Result<Self> {
        if kin.regime() == Regime::BarrierTop {
            return Err(domain("n", "the two interior exponentials coincide at n = 1"));
        }
        let s: T = side.sign();
        let half_l = T::lit(0.5) * kin.barrier.length();
        let k = kin.k;
        let rho = kin.rho;
        let decay = (-kin.alpha).exp();
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let isk = Complex::new(T::zero(), s * k);
        let plane = |x: T| Complex::from_polar(T::one(), s * k * x);
        let s_rho = rho * s;

        // unknowns: [R, γ', β', T]
        let near = -s * half_l;
        let far = s * half_l;
        let a = [
            [plane(near).conj(), -one, -decay, zero],
            [-isk * plane(near).conj(), s_rho, -s_rho * decay, zero],
            [zero, -decay, -one, plane(far)],
            [zero, s_rho * decay, -s_rho, isk * plane(far)],
        ];
        let b = [-plane(near), -isk * plane(near), zero, zero];
        let x = solve4(a, b).ok_or_else(|| Error::Numeric {
            what: "solve_stationary",
            detail: format!("singular continuity system at k = {k}, L = {}", kin.barrier.length()),
        })?;
        let shrink = (-kin.alpha * T::lit(0.5)).exp();
        Ok(Self {
            side,
            r: x[0],
            t: x[3],
            gamma: x[1] * shrink,
            beta: x[2] * shrink,
            kin: *kin,
            gamma_face: x[1],
            beta_face: x[2],
        })
    }

    /// Interior solution `γ e^{∓ρx} + β e^{±ρx}` at `x ∈ [−L/2, L/2]`.
    pub fn interior(&self, x: T) -> Complex<T> {
        let s: T = self.side.sign();
        let half_l = T::lit(0.5) * self.kin.barrier.length();
        let rho = self.kin.rho;
        self.gamma_face * (-rho * (s * x + half_l)).exp() + self.beta_face * (rho * (s * x - half_l)).exp()
    }

    /// The full piecewise stationary solution.
    pub fn field(&self, x: T) -> Complex<T> {
        let s: T = self.side.sign();
        let half_l = T::lit(0.5) * self.kin.barrier.length();
        let u = s * x;
        let k = self.kin.k;
        if u < -half_l {
            Complex::from_polar(T::one(), k * u) + self.r * Complex::from_polar(T::one(), -k * u)
        } else if u > half_l {
            self.t * Complex::from_polar(T::one(), k * u)
        } else {
            self.interior(x)
        }
    }
}

// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve4<T: Real>(mut a: [[Complex<T>; 4]; 4], mut b: [Complex<T>; 4]) -> Option<[Complex<T>; 4]> {
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if a[row][col].norm() > a[pivot][col].norm() {
                pivot = row;
            }
        }
        if a[pivot][col].norm() == T::zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for c in col..4 {
                let v = a[col][c];
                a[row][c] = a[row][c] - f * v;
            }
            let v = b[col];
            b[row] = b[row] - f * v;
        }
    }
    let mut x = [Complex::new(T::zero(), T::zero()); 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for c in row + 1..4 {
            acc = acc - a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

fn require_tunneling<T: Real>(kin: &Kinematics<T>) -> Result<()> {
    if kin.regime() != Regime::Tunneling {
        return Err(domain("n", format!("closed form needs 0 < n < 1, got n = {}", kin.n)));
    }
    Ok(())
}

fn one_minus_n<T: Real>(kin: &Kinematics<T>) -> T {
    let wl = kin.wl();
    kin.alpha_sq / (wl * wl)
}

/// Interface phase `θ ∈ (0, π)` with `tan θ = 2kρ/(2k² − w²)`, equal to `2·arctan(ρ/k)`.
pub fn theta_phase<T: Real>(kin: &Kinematics<T>) -> Result<T> {
    require_tunneling(kin)?;
    let two = T::lit(2.0);
    Ok((two * kin.n.sqrt() * one_minus_n(kin).sqrt()).atan2(two * kin.n - T::one()))
}

// e^{−ikL}/(e^{−2α} − e^{2iθ}) shared by both closed forms.
fn closed_form_parts<T: Real>(kin: &Kinematics<T>) -> Result<(Complex<T>, Complex<T>, Complex<T>)> {
    let theta = theta_phase(kin)?;
    let alpha = kin.alpha.re;
    let e2 = Complex::new((-T::lit(2.0) * alpha).exp(), T::zero());
    let phase_l = Complex::from_polar(T::one(), -kin.k * kin.barrier.length());
    let e_theta = Complex::from_polar(T::one(), theta);
    let e_2theta = e_theta * e_theta;
    Ok((phase_l / (e2 - e_2theta), e_theta, e2))
}

/// Reflection amplitude from its closed form.
pub fn reflection_amplitude<T: Real>(kin: &Kinematics<T>) -> Result<Complex<T>> {
    let (pre, e_theta, e2) = closed_form_parts(kin)?;
    Ok(pre * e_theta * (e2 - T::one()))
}

/// Transmission amplitude from its closed form.
pub fn transmission_amplitude<T: Real>(kin: &Kinematics<T>) -> Result<Complex<T>> {
    let (pre, e_theta, _) = closed_form_parts(kin)?;
    let one = Complex::new(T::one(), T::zero());
    Ok(pre * (-kin.alpha.re).exp() * (one - e_theta * e_theta))
}

/// `R ± T` for the two-packet configuration, with its phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperposedAmplitude<T> {
    pub sign: Sign,
    /// `R ± T = exp{−i[kL − φ±]}`.
    pub s: Complex<T>,
    /// Principal value of `arg(S·e^{ikL})`; sweeps unwrap it with [`phase_sweep`].
    pub phi: T,
}

pub fn superpose_scattered<T: Real>(kin: &Kinematics<T>, sign: Sign) -> Result<SuperposedAmplitude<T>> {
    let r = reflection_amplitude(kin)?;
    let t = transmission_amplitude(kin)?;
    let s = r + t * sign.value::<T>();
    let phi = (s * Complex::from_polar(T::one(), kin.k * kin.barrier.length())).arg();
    Ok(SuperposedAmplitude { sign, s, phi })
}

/// Same as [`superpose_scattered`] but from the continuity-condition solve,
/// which also covers energies above the barrier.
pub fn superpose_solved<T: Real>(kin: &Kinematics<T>, sign: Sign) -> Result<SuperposedAmplitude<T>> {
    let left = ChannelAmplitudes::solve(kin, Side::Left)?;
    let s = left.r + left.t * sign.value::<T>();
    let phi = (s * Complex::from_polar(T::one(), kin.k * kin.barrier.length())).arg();
    Ok(SuperposedAmplitude { sign, s, phi })
}

/// Closed-form `φ± = atan2(−2√(n(1−n))·sinh α, (2n − 1)·cosh α ± 1)`, equal
/// to `arg((R ± T)·e^{ikL})`. Defined on both sides of the barrier top.
pub fn phi_phase<T: Real>(kin: &Kinematics<T>, sign: Sign) -> T {
    let s: T = sign.value();
    let two = T::lit(2.0);
    let n = kin.n;
    let z = kin.alpha_sq;
    if z >= T::one() {
        let alpha = kin.alpha.re;
        let y = -two * n.sqrt() * one_minus_n(kin).sqrt() * alpha.tanh();
        let x = two * n - T::one() + s / alpha.cosh();
        y.atan2(x)
    } else {
        let y = -two * n.sqrt() * z * sinhc(z) / kin.wl();
        let x = (two * n - T::one()) * cosh_even(z) + s;
        y.atan2(x)
    }
}

/// Unwrapped `arg(S·e^{ikL})` along an increasing sweep of wavenumbers.
pub fn phase_sweep<T: Real>(barrier: BarrierSpec<T>, ks: &[T], sign: Sign) -> Result<Vec<T>> {
    let mut tracker = PhaseTracker::new();
    ks.iter()
        .map(|&k| {
            let kin = Kinematics::new(barrier, k)?;
            let raw = match kin.regime() {
                Regime::Tunneling => superpose_scattered(&kin, sign)?.phi,
                _ => superpose_solved(&kin, sign)?.phi,
            };
            Ok(tracker.push(raw))
        })
        .collect()
}

/// Symmetrized interior wave `(φ₂ᴸ + φ₂ᴿ)/√2 = √2(β + γ)cosh(ρx)`.
pub fn interior_wave<T: Real>(left: &ChannelAmplitudes<T>, right: &ChannelAmplitudes<T>, x: T) -> Result<Complex<T>> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(domain("amplitudes", "expected one left- and one right-incident solution"));
    }
    if left.kin != right.kin {
        return Err(domain("amplitudes", "solutions belong to different kinematics"));
    }
    let half_l = T::lit(0.5) * left.kin.barrier.length();
    if !(x.abs() <= half_l) {
        return Err(domain("x", format!("{x} lies outside the barrier [−{half_l}, {half_l}]")));
    }
    Ok((left.interior(x) + right.interior(x)) / T::SQRT_2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn kin(n: f64, wl: f64) -> Kinematics<f64> {
        Kinematics::dimensionless(n, wl).unwrap()
    }

    #[test]
    fn zero_length_limit() {
        let kin = kin(0.3, 1e-14);
        let r = reflection_amplitude(&kin).unwrap();
        let t = transmission_amplitude(&kin).unwrap();
        assert!(r.norm() < 1e-12);
        assert!((t - Complex::new(1.0, 0.0)).norm() < 1e-12);
        let s = superpose_scattered(&kin, Sign::Plus).unwrap();
        assert!((s.s - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!(s.phi.abs() < 1e-12);
        assert!(phi_phase(&kin, Sign::Plus).abs() < 1e-12);
    }

    #[test]
    fn opaque_limit() {
        let kin = kin(0.5, 200.0);
        assert!((reflection_amplitude(&kin).unwrap().norm() - 1.0).abs() < 1e-12);
        assert!(transmission_amplitude(&kin).unwrap().norm() < 1e-30);
    }

    #[test]
    fn theta_values() {
        assert!((theta_phase(&kin(0.5, 3.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(theta_phase(&kin(1.0 - 1e-12, 3.0)).unwrap() < 1e-5);
        let near_zero = kin(1e-10, 3.0);
        assert!(PI - theta_phase(&near_zero).unwrap() < 1e-4);
        for &n in &[0.01, 0.2, 0.5, 0.77, 0.99] {
            let k = kin(n, 2.0);
            let half_angle = 2.0 * (k.rho.re / k.k).atan();
            assert!((theta_phase(&k).unwrap() - half_angle).abs() < 1e-14);
        }
        assert!(theta_phase(&kin(1.5, 3.0)).is_err());
    }

    #[test]
    fn phi_plus_at_half() {
        // reduces to −arctan(sinh α) at n = 1/2
        let k = kin(0.5, 4.0 * PI);
        let expected = -1.570_519_638_424_620_3;
        assert!((phi_phase(&k, Sign::Plus) - expected).abs() < 1e-13);
        assert!((superpose_scattered(&k, Sign::Plus).unwrap().phi - expected).abs() < 1e-13);
        // the minus branch sits at −π − φ₊ here
        let minus = -PI - expected;
        assert!((phi_phase(&k, Sign::Minus) - minus).abs() < 1e-13);
        assert!((superpose_scattered(&k, Sign::Minus).unwrap().phi - minus).abs() < 1e-13);
    }

    #[test]
    fn closed_forms_match_solve() {
        let k = kin(0.5, 4.0 * PI);
        let left = ChannelAmplitudes::solve(&k, Side::Left).unwrap();
        let r = reflection_amplitude(&k).unwrap();
        let t = transmission_amplitude(&k).unwrap();
        assert!((left.r - r).norm() <= 1e-10 * r.norm());
        assert!((left.t - t).norm() <= 1e-10 * t.norm());
    }

    #[test]
    fn barrier_top_is_rejected_by_solver() {
        assert!(ChannelAmplitudes::solve(&kin(1.0, 3.0), Side::Left).is_err());
    }

    #[test]
    fn interior_wave_is_even_cosh() {
        let k = kin(0.5, 4.0 * PI);
        let l = ChannelAmplitudes::solve(&k, Side::Left).unwrap();
        let r = ChannelAmplitudes::solve(&k, Side::Right).unwrap();
        let half = 2.0 * PI;
        for i in 0..=20 {
            let x = half * i as f64 / 20.0;
            let a = interior_wave(&l, &r, x).unwrap();
            let b = interior_wave(&l, &r, -x).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm());
            let c = (l.beta + l.gamma) * std::f64::consts::SQRT_2 * (k.rho.re * x).cosh();
            assert!((a - c).norm() <= 1e-10 * a.norm());
        }
        let bg = (l.beta + l.gamma).norm_sqr();
        let at0 = interior_wave(&l, &r, 0.0).unwrap().norm_sqr();
        assert!((at0 - 2.0 * bg).abs() <= 1e-12 * at0);
        assert!(interior_wave(&l, &r, half * 1.01).is_err());
        assert!(interior_wave(&r, &l, 0.0).is_err());
    }

    #[test]
    fn phase_sweep_is_continuous_through_half() {
        let b = BarrierSpec::dimensionless(4.0 * PI).unwrap();
        let ks: Vec<f64> = (1..400).map(|i| i as f64 / 400.0).collect();
        let sweep = phase_sweep(b, &ks, Sign::Plus).unwrap();
        assert!(sweep.windows(2).all(|p| (p[1] - p[0]).abs() < 0.5));
        for (k, phi) in ks.iter().zip(&sweep) {
            let closed = phi_phase(&Kinematics::new(b, *k).unwrap(), Sign::Plus);
            assert!((closed - phi).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn unitarity_and_side_symmetry(n in 0.01f64..0.99, wl in 0.5f64..30.0) {
            let k = kin(n, wl);
            let l = ChannelAmplitudes::solve(&k, Side::Left).unwrap();
            let r = ChannelAmplitudes::solve(&k, Side::Right).unwrap();
            prop_assert!((l.r.norm_sqr() + l.t.norm_sqr() - 1.0).abs() < 1e-12);
            prop_assert!((l.r - r.r).norm() < 1e-12);
            prop_assert!((l.t - r.t).norm() < 1e-12);
            let rc = reflection_amplitude(&k).unwrap();
            let tc = transmission_amplitude(&k).unwrap();
            prop_assert!((rc.norm_sqr() + tc.norm_sqr() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn unimodular_superposition(n in 0.01f64..0.99, wl in 0.5f64..30.0) {
            let k = kin(n, wl);
            for sign in [Sign::Plus, Sign::Minus] {
                let s = superpose_scattered(&k, sign).unwrap();
                prop_assert!((s.s.norm() - 1.0).abs() < 1e-12);
                let d = crate::numerics::wrap_to_pi(s.phi - phi_phase(&k, sign));
                prop_assert!(d.abs() < 1e-10);
            }
        }

        #[test]
        fn above_barrier_superposition(n in 1.01f64..4.0, wl in 0.5f64..20.0) {
            let k = kin(n, wl);
            let s = superpose_solved(&k, Sign::Plus).unwrap();
            prop_assert!((s.s.norm() - 1.0).abs() < 1e-12);
            let d = crate::numerics::wrap_to_pi(s.phi - phi_phase(&k, Sign::Plus));
            prop_assert!(d.abs() < 1e-10);
        }
    }
}

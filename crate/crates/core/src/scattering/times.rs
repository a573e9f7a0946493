//! Phase, dwell and self-interference times.
//!
//! Every closed form is written as an even function of `α`, evaluated through
//! `z = α²`, which is real on both sides of the barrier top. For real
//! `α ≥ 1` the numerator and denominator are divided through by `cosh α` or
//! `sinh α` so that opaque barriers never overflow.

use crate::error::{domain, Error, Result};
use crate::kinematics::{normalize_time, Kinematics, NormalizationMode, Regime};
use crate::numerics::series::{cosh_even, sinhc, sinhc_m1_over_sq};
use crate::numerics::{differentiate_phase, differentiate_phase_converged, integrate, Derivative, Estimate, Tolerance};
use crate::scattering::amplitudes::{
    interior_wave, superpose_scattered, superpose_solved, ChannelAmplitudes, Side, Sign,
};
use crate::Real;

fn opaque<T: Real>(kin: &Kinematics<T>) -> Option<T> {
    (kin.alpha_sq >= T::one()).then_some(kin.alpha.re)
}

/// `|T|`, continued above the barrier top through `sin β/β`.
pub fn transmission_magnitude<T: Real>(kin: &Kinematics<T>) -> T {
    let s = sinhc(kin.alpha_sq);
    let wl = kin.wl();
    let q = wl * s / (T::lit(2.0) * kin.n.sqrt());
    T::one() / (T::one() + q * q).sqrt()
}

/// Which argument the hyperbolic tangent takes in the transmission phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseVariant {
    /// `tanh(ρL)`, consistent with the standard phase time.
    #[default]
    Consistent,
    /// `tanh(2ρL)`, kept only to show that it breaks the derivative check.
    DoubledArgument,
}

/// Transmission phase `Θ` (with the free `−kL` removed), principal branch.
pub fn transmission_phase<T: Real>(kin: &Kinematics<T>, variant: PhaseVariant) -> T {
    let two = T::lit(2.0);
    let lead = (two * kin.n - T::one()) * kin.wl();
    let root = two * kin.n.sqrt();
    let z = match variant {
        PhaseVariant::Consistent => kin.alpha_sq,
        PhaseVariant::DoubledArgument => T::lit(4.0) * kin.alpha_sq,
    };
    let scale = match variant {
        PhaseVariant::Consistent => T::one(),
        PhaseVariant::DoubledArgument => two,
    };
    if z >= T::one() {
        let a = z.sqrt();
        (lead * scale * a.tanh() / a).atan2(root)
    } else {
        (lead * scale * sinhc(z)).atan2(root * cosh_even(z))
    }
}

/// Standard one-way phase time `(m/k)·dΘ/dk`.
pub fn standard_phase_time<T: Real>(kin: &Kinematics<T>) -> T {
    let two = T::lit(2.0);
    let n = kin.n;
    let tau = kin.tau_k;
    if let Some(a) = opaque(kin) {
        let csch = T::one() / a.sinh();
        let csch2 = csch * csch;
        let num = T::one() / a.tanh() - a * n * (two * n - T::one()) * csch2;
        let den = T::lit(4.0) * n * (T::one() - n) * csch2 + T::one();
        two * tau / a * num / den
    } else {
        let z = kin.alpha_sq;
        let wl2 = kin.wl() * kin.wl();
        let s = sinhc(z);
        let num = T::lit(4.0) * sinhc_m1_over_sq(T::lit(4.0) * z) + (T::one() + two * n) / wl2;
        let den = T::lit(4.0) * n / wl2 + s * s;
        two * tau * num / den
    }
}

// `sinh α/α`, `1` and `2n − 1 + cosh α`, all divided by `cosh α` when opaque.
struct SymmetricParts<T> {
    sinhc: T,
    one: T,
    den: T,
}

fn symmetric_parts<T: Real>(kin: &Kinematics<T>) -> SymmetricParts<T> {
    let two = T::lit(2.0);
    let lead = two * kin.n - T::one();
    match opaque(kin) {
        Some(a) => {
            let sech = T::one() / a.cosh();
            SymmetricParts {
                sinhc: a.tanh() / a,
                one: sech,
                den: lead * sech + T::one(),
            }
        }
        None => SymmetricParts {
            sinhc: sinhc(kin.alpha_sq),
            one: T::one(),
            den: lead + cosh_even(kin.alpha_sq),
        },
    }
}

/// Symmetric-configuration phase time `(m/k)·dφ₊/dk`.
pub fn symmetric_phase_time<T: Real>(kin: &Kinematics<T>) -> T {
    let p = symmetric_parts(kin);
    T::lit(2.0) * kin.tau_k * (kin.n * p.one + p.sinhc) / p.den
}

/// Dwell time of the symmetrized stationary state.
pub fn dwell_time_closed<T: Real>(kin: &Kinematics<T>) -> T {
    let p = symmetric_parts(kin);
    T::lit(2.0) * kin.tau_k * kin.n * (p.sinhc + p.one) / p.den
}

/// Delay from the overlap of incident and reflected waves in front of the barrier.
pub fn self_interference_time<T: Real>(kin: &Kinematics<T>) -> T {
    let p = symmetric_parts(kin);
    T::lit(2.0) * kin.tau_k * (T::one() - kin.n) * p.sinhc / p.den
}

/// `−(m/k²)·sin φ₊`, equal to [`self_interference_time`] for `0 < n < 1`.
pub fn self_interference_from_phase<T: Real>(kin: &Kinematics<T>) -> Result<T> {
    let phi = superpose_scattered(kin, Sign::Plus)?.phi;
    Ok(-kin.barrier.mass() * phi.sin() / (kin.k * kin.k))
}

/// The four times at one wavenumber, in absolute units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeBundle<T> {
    pub t_t: T,
    pub t_t_phi: T,
    pub t_d_phi: T,
    pub t_i_phi: T,
}

impl<T: Real> TimeBundle<T> {
    pub fn normalized(&self, mode: NormalizationMode, kin: &Kinematics<T>) -> Self {
        let f = |t| normalize_time(t, mode, kin);
        Self {
            t_t: f(self.t_t),
            t_t_phi: f(self.t_t_phi),
            t_d_phi: f(self.t_d_phi),
            t_i_phi: f(self.t_i_phi),
        }
    }

    /// `|t_T,φ − t_D,φ − t_I,φ| / t_T,φ`.
    pub fn decomposition_residual(&self) -> T {
        ((self.t_t_phi - self.t_d_phi - self.t_i_phi) / self.t_t_phi).abs()
    }
}

/// Bound on the relative decomposition residual enforced by [`time_bundle`].
pub const DECOMPOSITION_TOL: f64 = 1e-12;

pub fn time_bundle<T: Real>(kin: &Kinematics<T>) -> Result<TimeBundle<T>> {
    if kin.regime() != Regime::Tunneling {
        return Err(domain("n", format!("time bundle needs 0 < n < 1, got n = {}", kin.n)));
    }
    let bundle = TimeBundle {
        t_t: standard_phase_time(kin),
        t_t_phi: symmetric_phase_time(kin),
        t_d_phi: dwell_time_closed(kin),
        t_i_phi: self_interference_time(kin),
    };
    let residual = bundle.decomposition_residual();
    if !(residual <= T::lit(DECOMPOSITION_TOL)) {
        return Err(Error::Consistency {
            what: "phase time = dwell + self-interference",
            residual: residual.as_f64(),
            bound: DECOMPOSITION_TOL,
        });
    }
    Ok(bundle)
}

fn solved_pair<T: Real>(kin: &Kinematics<T>) -> Result<(ChannelAmplitudes<T>, ChannelAmplitudes<T>)> {
    Ok((ChannelAmplitudes::solve(kin, Side::Left)?, ChannelAmplitudes::solve(kin, Side::Right)?))
}

/// Dwell time by adaptive quadrature of the symmetrized interior density.
pub fn dwell_time_numeric<T: Real>(kin: &Kinematics<T>, tol: &Tolerance<T>) -> Result<Estimate<T>> {
    let (left, right) = solved_pair(kin)?;
    let half_l = T::lit(0.5) * kin.barrier.length();
    let density = |x: T| interior_wave(&left, &right, x.max(-half_l).min(half_l)).map_or(T::nan(), |v| v.norm_sqr());
    let est = integrate(density, -half_l, half_l, tol)?;
    let scale = kin.barrier.mass() / kin.k;
    Ok(Estimate {
        value: est.value * scale,
        error: est.error * scale,
    })
}

/// Dwell time from the solved interior coefficient and the exact integral
/// `∫ cosh²(ρx) dx = (L/2)(1 + sinh α/α)` over the barrier.
pub fn dwell_time_from_coefficients<T: Real>(kin: &Kinematics<T>) -> Result<T> {
    let (left, _) = solved_pair(kin)?;
    let weight = (left.beta + left.gamma).norm_sqr();
    let integral = kin.barrier.length() * (T::one() + sinhc(kin.alpha_sq));
    Ok(kin.barrier.mass() / kin.k * weight * integral)
}

/// `|β + γ|²` of the closed-form dwell time, `2n/(2n − 1 + cosh α)`.
pub fn interior_weight_closed<T: Real>(kin: &Kinematics<T>) -> T {
    let two = T::lit(2.0);
    two * kin.n / (two * kin.n - T::one() + cosh_even(kin.alpha_sq))
}

/// Times of the one-way configuration. The dwell time comes from quadrature
/// of the left-incident interior density; the self-interference delay is
/// what remains of the phase time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardTimes<T> {
    pub t_t: T,
    pub t_d: T,
    pub t_i: T,
}

pub fn standard_times<T: Real>(kin: &Kinematics<T>, tol: &Tolerance<T>) -> Result<StandardTimes<T>> {
    let left = ChannelAmplitudes::solve(kin, Side::Left)?;
    let half_l = T::lit(0.5) * kin.barrier.length();
    let est = integrate(|x| left.interior(x).norm_sqr(), -half_l, half_l, tol)?;
    let t_t = standard_phase_time(kin);
    let t_d = est.value * kin.barrier.mass() / kin.k;
    Ok(StandardTimes { t_t, t_d, t_i: t_t - t_d })
}

fn phase_of<T: Real>(kin: &Kinematics<T>, sign: Sign) -> impl Fn(T) -> T + '_ {
    move |k: T| {
        let Ok(at) = kin.with_k(k) else { return T::nan() };
        let s = match at.regime() {
            Regime::Tunneling => superpose_scattered(&at, sign),
            _ => superpose_solved(&at, sign),
        };
        s.map_or(T::nan(), |s| s.phi)
    }
}

/// `(m/k)·dφ±/dk` from finite differences of `arg((R ± T)e^{ikL})`.
pub fn phase_time_numeric<T: Real>(kin: &Kinematics<T>, sign: Sign) -> Result<Derivative<T>> {
    let d = differentiate_phase(phase_of(kin, sign), kin.k, None)?;
    Ok(scale_derivative(d, kin.barrier.mass() / kin.k))
}

/// `(m/k)·dΘ/dk` from finite differences of the transmission phase.
pub fn standard_phase_time_numeric<T: Real>(kin: &Kinematics<T>, variant: PhaseVariant) -> Result<Derivative<T>> {
    let phase = |k: T| kin.with_k(k).map_or(T::nan(), |at| transmission_phase(&at, variant));
    let d = differentiate_phase(phase, kin.k, None)?;
    Ok(scale_derivative(d, kin.barrier.mass() / kin.k))
}

/// Phase time of the antisymmetrized configuration, `(m/k)·dφ₋/dk`.
///
/// There is no closed form; the derivative must agree with itself under step
/// halving to `10⁻⁶` relative.
pub fn antisymmetric_phase_time<T: Real>(kin: &Kinematics<T>) -> Result<T> {
    let d = differentiate_phase_converged(phase_of(kin, Sign::Minus), kin.k, None, T::lit(1e-6))?;
    Ok(d.value * kin.barrier.mass() / kin.k)
}

fn scale_derivative<T: Real>(d: Derivative<T>, s: T) -> Derivative<T> {
    Derivative {
        value: d.value * s,
        error: d.error * s.abs(),
    }
}

// Reference evaluation of the symmetric times in complex arithmetic, used to
// check that the even-function forms agree with the continuation of ρ.
#[cfg(test)]
pub(crate) fn symmetric_times_complex(kin: &Kinematics<f64>) -> [num_complex::Complex<f64>; 3] {
    let a = kin.alpha;
    let n = kin.n;
    let den = a.cosh() + (2.0 * n - 1.0);
    let pre = a.inv() * (2.0 * kin.tau_k);
    [
        pre * (a * n + a.sinh()) / den,
        pre * n * (a.sinh() + a) / den,
        pre * (1.0 - n) * a.sinh() / den,
    ]
}

//! Barrier parameterization, per-wavenumber kinematics and time units.
//!
//! Units: ħ = 1 throughout. The dimensionless constructors additionally fix
//! `m = 1` and `w = 1`, so every normalized result depends only on
//! `n = k²/w²` and `wL`.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::Real;

/// Rectangular barrier of height `V0` on `[−L/2, L/2]` for a particle of mass `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec<T> {
    v0: T,
    length: T,
    mass: T,
    strength: T,
}

impl<T: Real> BarrierSpec<T> {
    /// Builds the barrier and its strength `w = √(2 m V0)`.
    pub fn new(v0: T, length: T, mass: T) -> Result<Self> {
        for (name, v) in [("V0", v0), ("L", length), ("m", mass)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(domain(name, format!("must be finite and strictly positive, got {v}")));
            }
        }
        Ok(Self {
            v0,
            length,
            mass,
            strength: (T::lit(2.0) * mass * v0).sqrt(),
        })
    }

    /// Barrier with `m = 1`, `w = 1` and length `wL`.
    pub fn dimensionless(wl: T) -> Result<Self> {
        if !(wl > T::zero()) || !wl.is_finite() {
            return Err(domain("wL", format!("must be finite and strictly positive, got {wl}")));
        }
        Ok(Self {
            v0: T::lit(0.5),
            length: wl,
            mass: T::one(),
            strength: T::one(),
        })
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `w = √(2 m V0)`.
    pub fn strength(&self) -> T {
        self.strength
    }

    /// The dimensionless opacity scale `wL`.
    pub fn wl(&self) -> T {
        self.strength * self.length
    }

    /// Wavenumber at a given `n = k²/w²`.
    pub fn wavenumber_at(&self, n: T) -> T {
        self.strength * n.sqrt()
    }

    /// Time at which incoming packets centred on `k₀` reach the barrier faces,
    /// with the clock set so that free flight would bring them to `x = 0` at `t = 0`.
    pub fn face_arrival_time(&self, k0: T) -> T {
        -self.mass * self.length / (T::lit(2.0) * k0)
    }
}

/// Where an energy sits relative to the barrier top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Tunneling,
    BarrierTop,
    AboveBarrier,
}

/// Quantities derived from one incident wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub barrier: BarrierSpec<T>,
    pub k: T,
    /// `k²/w²`.
    pub n: T,
    /// `α² = L²(w² − k²)`; negative above the barrier top.
    pub alpha_sq: T,
    /// `√(w² − k²)` with `Re ≥ 0`, purely imaginary with `Im > 0` above the top.
    pub rho: Complex<T>,
    /// `ρL`.
    pub alpha: Complex<T>,
    /// Classical traversal time `mL/k`.
    pub tau_k: T,
    /// Barrier time `mL/w`.
    pub tau_w: T,
}

impl<T: Real> Kinematics<T> {
    pub fn new(barrier: BarrierSpec<T>, k: T) -> Result<Self> {
        if !(k > T::zero()) || !k.is_finite() {
            return Err(domain("k", format!("must be finite and strictly positive, got {k}")));
        }
        let w = barrier.strength();
        let l = barrier.length();
        let ratio = k / w;
        let rho_sq = (w - k) * (w + k);
        Ok(Self::assemble(barrier, k, ratio * ratio, rho_sq, l * l * rho_sq))
    }

    /// Kinematics at an exactly specified `n`; `n = 1` gives `α = 0` with no
    /// cancellation.
    pub fn at_n(barrier: BarrierSpec<T>, n: T) -> Result<Self> {
        if !(n > T::zero()) || !n.is_finite() {
            return Err(domain("n", format!("must be finite and strictly positive, got {n}")));
        }
        let w = barrier.strength();
        let one_minus_n = T::one() - n;
        let rho_sq = w * w * one_minus_n;
        let wl = barrier.wl();
        Ok(Self::assemble(barrier, w * n.sqrt(), n, rho_sq, wl * wl * one_minus_n))
    }

    /// Shorthand for [`BarrierSpec::dimensionless`] followed by [`Kinematics::at_n`].
    pub fn dimensionless(n: T, wl: T) -> Result<Self> {
        Self::at_n(BarrierSpec::dimensionless(wl)?, n)
    }

    fn assemble(barrier: BarrierSpec<T>, k: T, n: T, rho_sq: T, alpha_sq: T) -> Self {
        let rho = if rho_sq >= T::zero() {
            Complex::new(rho_sq.sqrt(), T::zero())
        } else {
            Complex::new(T::zero(), (-rho_sq).sqrt())
        };
        let alpha = if alpha_sq >= T::zero() {
            Complex::new(alpha_sq.sqrt(), T::zero())
        } else {
            Complex::new(T::zero(), (-alpha_sq).sqrt())
        };
        let ml = barrier.mass() * barrier.length();
        Self {
            barrier,
            k,
            n,
            alpha_sq,
            rho,
            alpha,
            tau_k: ml / k,
            tau_w: ml / barrier.strength(),
        }
    }

    pub fn regime(&self) -> Regime {
        if self.alpha_sq > T::zero() {
            Regime::Tunneling
        } else if self.alpha_sq < T::zero() {
            Regime::AboveBarrier
        } else {
            Regime::BarrierTop
        }
    }

    /// Same barrier, another wavenumber.
    pub fn with_k(&self, k: T) -> Result<Self> {
        Self::new(self.barrier, k)
    }

    pub fn energy(&self) -> T {
        self.k * self.k / (T::lit(2.0) * self.barrier.mass())
    }

    pub(crate) fn wl(&self) -> T {
        self.barrier.wl()
    }
}

/// Unit in which times are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizationMode {
    #[default]
    Absolute,
    ByTauK,
    ByTauW,
}

pub fn normalize_time<T: Real>(t: T, mode: NormalizationMode, kin: &Kinematics<T>) -> T {
    match mode {
        NormalizationMode::Absolute => t,
        NormalizationMode::ByTauK => t / kin.tau_k,
        NormalizationMode::ByTauW => t / kin.tau_w,
    }
}

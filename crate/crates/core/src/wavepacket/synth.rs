//! Wave packets assembled from stationary scattering states.
//!
//! `ψ(x, t) = (2π)^{−1/2} Σⱼ wⱼ gⱼ Φ(kⱼ, x) e^{−ikⱼ²t/2m}`. With a real `g`
//! centred on `k₀` both incident peaks would meet at `x = 0` at `t = 0` in free
//! flight, so they reach the barrier faces at `t = −mL/(2k₀)`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::kinematics::{BarrierSpec, Kinematics, Regime};
use crate::scattering::{ChannelAmplitudes, Side};
use crate::wavepacket::distribution::{Distribution, Symmetrization};
use crate::wavepacket::field::{FieldSnapshot, SpatialGrid};
use crate::Real;

/// Whether the packets scatter off the barrier or move freely through its
/// footprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium<T> {
    Barrier(BarrierSpec<T>),
    /// No potential; the barrier only supplies `L` and `m` for the time conventions.
    Free(BarrierSpec<T>),
}

impl<T: Real> Medium<T> {
    pub fn barrier(&self) -> &BarrierSpec<T> {
        match self {
            Medium::Barrier(b) | Medium::Free(b) => b,
        }
    }
}

const CHUNK: usize = 256;

// Φ(k, x) = A e^{ikx} + B e^{−ikx} left of the barrier, C e^{ikx} + D e^{−ikx}
// right of it.
struct NodeTerm<T> {
    k: T,
    weight: Complex<T>,
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    interior: Option<ChannelAmplitudes<T>>,
}

fn combination<T: Real>(s: Symmetrization) -> (T, T) {
    match s {
        Symmetrization::Plus => (T::one(), T::one() / T::SQRT_2()),
        Symmetrization::Minus => (-T::one(), T::one() / T::SQRT_2()),
        Symmetrization::SingleLeft => (T::zero(), T::one()),
    }
}

fn node_terms<T: Real>(
    dist: &Distribution<T>,
    medium: &Medium<T>,
    t: T,
    sym: Symmetrization,
) -> Result<Vec<NodeTerm<T>>> {
    let barrier = medium.barrier();
    let m = barrier.mass();
    let (sigma, f) = combination::<T>(sym);
    let norm = T::one() / (T::lit(2.0) * T::PI()).sqrt();
    let one = Complex::new(T::one(), T::zero());
    dist.ks
        .par_iter()
        .zip(&dist.weights)
        .zip(&dist.g)
        .map(|((&k, &w), &g)| {
            let (r, tr, interior) = match medium {
                Medium::Barrier(b) => {
                    let kin = Kinematics::new(*b, k)?;
                    if kin.regime() != Regime::Tunneling {
                        return Err(domain("k", format!("quadrature node {k} lies outside (0, w)")));
                    }
                    let amps = ChannelAmplitudes::solve(&kin, Side::Left)?;
                    (amps.r, amps.t, Some(amps))
                }
                Medium::Free(_) => {
                    if !(k > T::zero()) {
                        return Err(domain("k", format!("quadrature node {k} is not positive")));
                    }
                    (Complex::new(T::zero(), T::zero()), one, None)
                }
            };
            let (a, b, c, d) = match sym {
                Symmetrization::SingleLeft => (one, r, tr, Complex::new(T::zero(), T::zero())),
                _ => (one * f, (r + tr * sigma) * f, (tr + r * sigma) * f, one * (sigma * f)),
            };
            Ok(NodeTerm {
                k,
                weight: Complex::from_polar(w * g * norm, -k * k * t / (T::lit(2.0) * m)),
                a,
                b,
                c,
                d,
                interior,
            })
        })
        .collect()
}

fn interior_value<T: Real>(amps: &ChannelAmplitudes<T>, x: T, sym: Symmetrization) -> Complex<T> {
    let (sigma, f) = combination::<T>(sym);
    match sym {
        Symmetrization::SingleLeft => amps.interior(x),
        _ => (amps.interior(x) + amps.interior(-x) * sigma) * f,
    }
}

fn assemble<T: Real>(
    terms: &[NodeTerm<T>],
    medium: &Medium<T>,
    t: T,
    sym: Symmetrization,
    grid: &SpatialGrid<T>,
    scattered_only: bool,
) -> Result<FieldSnapshot<T>> {
    let half_l = match medium {
        Medium::Barrier(b) => T::lit(0.5) * b.length(),
        Medium::Free(_) => T::zero(),
    };
    let dx = grid.dx();
    let zero = Complex::new(T::zero(), T::zero());
    let mut psi = vec![zero; grid.n];
    psi.par_chunks_mut(CHUNK).enumerate().for_each(|(chunk, out)| {
        let i0 = chunk * CHUNK;
        let xs: Vec<T> = (i0..i0 + out.len()).map(|i| grid.x(i)).collect();
        for term in terms {
            let mut e = Complex::from_polar(T::one(), term.k * xs[0]);
            let step = Complex::from_polar(T::one(), term.k * dx);
            for (slot, &x) in out.iter_mut().zip(&xs) {
                let v = if x < -half_l {
                    if scattered_only {
                        term.b * e.conj()
                    } else {
                        term.a * e + term.b * e.conj()
                    }
                } else if x > half_l || term.interior.is_none() {
                    if scattered_only {
                        term.c * e
                    } else {
                        term.c * e + term.d * e.conj()
                    }
                } else if scattered_only {
                    zero
                } else {
                    interior_value(term.interior.as_ref().expect("barrier medium"), x, sym)
                };
                *slot = *slot + term.weight * v;
                e = e * step;
            }
        }
    });
    FieldSnapshot::new(*grid, t, psi)
}

/// The full field at time `t`.
pub fn synthesize_field<T: Real>(
    dist: &Distribution<T>,
    medium: &Medium<T>,
    t: T,
    sym: Symmetrization,
    grid: &SpatialGrid<T>,
) -> Result<FieldSnapshot<T>> {
    let terms = node_terms(dist, medium, t, sym)?;
    assemble(&terms, medium, t, sym, grid, false)
}

/// Only the outgoing waves: `(R ± T)` times the outgoing plane wave on each
/// side, zero on the barrier.
pub fn reconstruct_scattered<T: Real>(
    dist: &Distribution<T>,
    medium: &Medium<T>,
    t: T,
    sym: Symmetrization,
    grid: &SpatialGrid<T>,
) -> Result<FieldSnapshot<T>> {
    let terms = node_terms(dist, medium, t, sym)?;
    assemble(&terms, medium, t, sym, grid, true)
}

/// Momentum amplitudes `g(k)·S(k)` of the packet leaving to the right,
/// relative to the incoming amplitude.
pub fn scattered_momentum_amplitudes<T: Real>(
    dist: &Distribution<T>,
    medium: &Medium<T>,
    sym: Symmetrization,
) -> Result<Vec<Complex<T>>> {
    let (sigma, f) = combination::<T>(sym);
    let terms = node_terms(dist, medium, T::zero(), sym)?;
    Ok(terms
        .iter()
        .zip(&dist.g)
        .map(|(term, &g)| {
            let incoming = match sym {
                Symmetrization::SingleLeft => T::one(),
                _ => sigma * f,
            };
            term.c * (g / incoming)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::distribution::{build_distribution, PacketSpec};
    use std::f64::consts::PI;

    fn setup(sigma_rel: f64) -> (Distribution<f64>, BarrierSpec<f64>) {
        let b = BarrierSpec::dimensionless(4.0 * PI).unwrap();
        let k0 = 0.5_f64.sqrt();
        let spec = PacketSpec::new(k0, sigma_rel * k0).with_nodes(401);
        (build_distribution(&spec, &b).unwrap(), b)
    }

    fn symmetric_grid(half: f64, n: usize) -> SpatialGrid<f64> {
        SpatialGrid::new(-half, half, n).unwrap()
    }

    #[test]
    fn parity() {
        let (d, b) = setup(0.1);
        let grid = symmetric_grid(60.0, 1201);
        for (sym, s) in [(Symmetrization::Plus, 1.0), (Symmetrization::Minus, -1.0)] {
            for t in [-30.0, 0.0, 25.0] {
                let f = synthesize_field(&d, &Medium::Barrier(b), t, sym, &grid).unwrap();
                let scale = f.norm().sqrt();
                for i in 0..grid.n {
                    let j = grid.n - 1 - i;
                    assert!((f.psi[i] - f.psi[j] * s).norm() < 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn norm_is_one() {
        // well before the collision, so the grid sum does not straddle the faces
        let (d, b) = setup(0.05);
        let grid = symmetric_grid(1600.0, 32001);
        for medium in [Medium::Barrier(b), Medium::Free(b)] {
            let f = synthesize_field(&d, &medium, -200.0, Symmetrization::Plus, &grid).unwrap();
            assert!((f.norm() - 1.0).abs() < 1e-9, "{}", f.norm());
        }
    }

    #[test]
    fn continuous_across_faces() {
        let (d, b) = setup(0.1);
        let h = 2.0 * PI;
        let grid = SpatialGrid::new(h - 1e-9, h + 1e-9, 2).unwrap();
        let f = synthesize_field(&d, &Medium::Barrier(b), 0.0, Symmetrization::Plus, &grid).unwrap();
        assert!((f.psi[0] - f.psi[1]).norm() < 1e-8);
    }

    #[test]
    fn above_barrier_nodes_are_rejected() {
        let b = BarrierSpec::dimensionless(4.0 * PI).unwrap();
        let spec = PacketSpec::new(0.95_f64, 0.05);
        let mut d = build_distribution(&spec, &b).unwrap();
        d.ks[0] = 1.2;
        let grid = symmetric_grid(10.0, 11);
        assert!(synthesize_field(&d, &Medium::Barrier(b), 0.0, Symmetrization::Plus, &grid).is_err());
        assert!(synthesize_field(&d, &Medium::Free(b), 0.0, Symmetrization::Plus, &grid).is_ok());
    }

    #[test]
    fn unimodular_momentum_modulus() {
        let (d, b) = setup(0.05);
        for sym in [Symmetrization::Plus, Symmetrization::Minus] {
            let s = scattered_momentum_amplitudes(&d, &Medium::Barrier(b), sym).unwrap();
            for (a, g) in s.iter().zip(&d.g) {
                assert!((a.norm() - g).abs() < 1e-10 * d.g.iter().cloned().fold(0.0, f64::max));
            }
        }
    }

    #[test]
    fn free_reconstruction_is_translated_incident_packet() {
        let (d, b) = setup(0.1);
        let grid = symmetric_grid(200.0, 2001);
        let t = 120.0;
        let medium = Medium::Free(b);
        let full = synthesize_field(&d, &medium, t, Symmetrization::SingleLeft, &grid).unwrap();
        let rec = reconstruct_scattered(&d, &medium, t, Symmetrization::SingleLeft, &grid).unwrap();
        for i in (0..grid.n).filter(|&i| grid.x(i) >= 0.0) {
            assert!((full.psi[i] - rec.psi[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn reconstruction_matches_synthesis_late() {
        let b = BarrierSpec::dimensionless(4.0 * PI).unwrap();
        let k0 = 0.5_f64.sqrt();
        let spec = PacketSpec::new(k0, 0.05 * k0).with_window(8.0);
        let d = build_distribution(&spec, &b).unwrap();
        let times = crate::wavepacket::extraction_times(&spec, &b);
        let t = times[0];
        let grid = crate::wavepacket::extraction_grid(&spec, &b, t).unwrap();
        let medium = Medium::Barrier(b);
        let full = synthesize_field(&d, &medium, t, Symmetrization::Plus, &grid).unwrap();
        let rec = reconstruct_scattered(&d, &medium, t, Symmetrization::Plus, &grid).unwrap();
        let outside: Vec<_> = (0..grid.n).filter(|&i| grid.x(i).abs() > 2.0 * PI).collect();
        let err: f64 = outside.iter().map(|&i| (full.psi[i] - rec.psi[i]).norm_sqr()).sum::<f64>() * grid.dx();
        assert!(err.sqrt() < 1e-6, "{}", err.sqrt());
    }
}

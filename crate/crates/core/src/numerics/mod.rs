//! Numerical primitives: adaptive quadrature, Gauss–Legendre rules,
//! Richardson-extrapolated differentiation, phase unwrapping, peak
//! refinement and series-guarded even functions near removable singularities.

mod diff;
mod peak;
mod phase;
mod quadrature;
pub mod series;

pub use diff::{differentiate, differentiate_phase, differentiate_phase_converged, Derivative};
pub use peak::{refine_peak, PeakRefinement};
pub use phase::{unwrap_phase, wrap_to_pi, PhaseTracker};
pub use quadrature::{gauss_legendre, integrate, Estimate, Tolerance};

//! Stationary scattering off the barrier and the times derived from it.

mod amplitudes;
mod scan;
mod times;
mod variational;

pub use amplitudes::{
    interior_wave, phase_sweep, phi_phase, reflection_amplitude, solve_stationary, superpose_scattered,
    superpose_solved, theta_phase, transmission_amplitude, ChannelAmplitudes, Side, Sign, SuperposedAmplitude,
};
pub use scan::{superluminal_scan, uniform_grid, ScanReport, ScanRow};
pub use times::{
    antisymmetric_phase_time, dwell_time_closed, dwell_time_from_coefficients, dwell_time_numeric,
    interior_weight_closed, phase_time_numeric, self_interference_from_phase, self_interference_time,
    standard_phase_time, standard_phase_time_numeric, standard_times, symmetric_phase_time, time_bundle,
    transmission_magnitude, transmission_phase, PhaseVariant, StandardTimes, TimeBundle, DECOMPOSITION_TOL,
};
pub use variational::{variational_check, VariationalReport, DEFAULT_RELATIVE_STEP};

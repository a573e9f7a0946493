//! Two-packet collisions built from stationary states, delay extraction,
//! and an independent split-operator propagator.

mod analysis;
mod distribution;
mod experiment;
mod field;
mod propagate;
mod synth;

pub use analysis::{
    centroid, delay_prediction, extract_delay, mean_phase_time, peak_position, ArrivalEstimate, DelayMethod, Region,
    MAX_RELATIVE_UNCERTAINTY, MAX_RELATIVE_UNCERTAINTY_PEAK, MIN_REGION_SHARE,
};
pub use distribution::{build_distribution, Distribution, PacketSpec, Symmetrization, DEFAULT_NODES, WINDOW_WIDTHS};
pub use experiment::{
    extraction_grid, extraction_times, run_cross_check, run_delay_experiment, CrossCheckConfig, CrossCheckReport,
    DelayReport,
};
pub use field::{compare_fields, FieldSnapshot, SpatialGrid};
pub use propagate::{band_limited_potential, td_propagate, NORM_DRIFT_PER_10K_STEPS};
pub use synth::{reconstruct_scattered, scattered_momentum_amplitudes, synthesize_field, Medium};

use std::f64::consts::PI;

use tunneltimes::scattering::symmetric_phase_time;
use tunneltimes::wavepacket::{
    build_distribution, delay_prediction, run_delay_experiment, synthesize_field, DelayMethod, Medium, PacketSpec,
    SpatialGrid, Symmetrization,
};
use tunneltimes::{Barrier, Kin};

fn setup(srel: f64) -> (Barrier, PacketSpec<f64>) {
    let b = Barrier::dimensionless(4.0 * PI).unwrap();
    let k0 = 0.5f64.sqrt();
    (b, PacketSpec::new(k0, srel * k0))
}

#[test]
fn prediction_converges_under_node_doubling() {
    let (b, spec) = setup(0.02);
    let coarse = delay_prediction(&build_distribution(&spec.with_nodes(1001), &b).unwrap(), &b).unwrap();
    let fine = delay_prediction(&build_distribution(&spec.with_nodes(2001), &b).unwrap(), &b).unwrap();
    assert!(((coarse - fine) / fine).abs() < 1e-8, "{coarse} vs {fine}");
}

#[test]
fn free_medium_delay_is_free_flight() {
    let (b, spec) = setup(0.04);
    let r = run_delay_experiment(&spec, &Medium::Free(b), DelayMethod::Centroid).unwrap();
    let tau = b.mass() * b.length() / spec.k0;
    assert!(((r.estimate.delay - tau) / tau).abs() < 1e-6, "{} vs {tau}", r.estimate.delay);
}

#[test]
fn barrier_delay_tracks_phase_time() {
    let (b, spec) = setup(0.04);
    let r = run_delay_experiment(&spec, &Medium::Barrier(b), DelayMethod::Centroid).unwrap();
    let k = Kin::at_n(b, 0.5).unwrap();
    assert!((r.phase_time_k0 - symmetric_phase_time(&k)).abs() < 1e-12);
    assert!(((r.estimate.delay - r.prediction) / r.prediction).abs() < 1e-6);
    assert!(((r.estimate.delay - r.phase_time_k0) / r.phase_time_k0).abs() < 1e-2);
}

#[test]
fn peak_tracking_agrees_with_centroid_roughly() {
    let (b, spec) = setup(0.04);
    let c = run_delay_experiment(&spec, &Medium::Barrier(b), DelayMethod::Centroid).unwrap();
    let p = run_delay_experiment(&spec, &Medium::Barrier(b), DelayMethod::Peak).unwrap();
    assert!(((c.estimate.delay - p.estimate.delay) / c.estimate.delay).abs() < 5e-2);
}

#[test]
fn symmetrizations_have_definite_parity() {
    let (b, spec) = setup(0.05);
    let grid = SpatialGrid::new(-400.0, 400.0, 4001).unwrap();
    for (sym, sign) in [(Symmetrization::Plus, 1.0), (Symmetrization::Minus, -1.0)] {
        let d = build_distribution(&spec.with_symmetrization(sym), &b).unwrap();
        let f = synthesize_field(&d, &Medium::Barrier(b), 30.0, sym, &grid).unwrap();
        let n = grid.n;
        let worst = (0..n).map(|i| (f.psi[i] - f.psi[n - 1 - i] * sign).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-10, "{sym:?}: {worst}");
    }
}

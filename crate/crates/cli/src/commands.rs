use std::fs;

use rayon::prelude::*;
use tunneltimes::numerics::Tolerance;
use tunneltimes::scattering::{
    dwell_time_closed, self_interference_time, standard_phase_time, standard_times, superluminal_scan,
    symmetric_phase_time, uniform_grid, PhaseVariant,
};
use tunneltimes::verify::{run_checks, VerifyOptions};
use tunneltimes::wavepacket::{run_delay_experiment, Medium, PacketSpec};
use tunneltimes::{normalize_time, Barrier, Kin, NormalizationMode};

use crate::config::{CommandKind, RunConfig};
use crate::error::{CliError, Context};
use crate::output::{Cell, Table};

/// Half-width of the excluded neighbourhood of the barrier top.
pub const TOP_EXCLUSION: f64 = 1e-6;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.command {
        CommandKind::Times => times(cfg),
        CommandKind::Figure1 => figure1(cfg),
        CommandKind::Figure2 => figure2(cfg),
        CommandKind::Packet => packet(cfg),
        CommandKind::Scan => scan(cfg),
        CommandKind::Verify => verify(cfg),
    }
}

fn n_grid(cfg: &RunConfig, keep_top: bool) -> Result<Vec<f64>, CliError> {
    let grid = uniform_grid(cfg.n_min, cfg.n_max, cfg.n_steps).context(|| "building the n grid".into())?;
    Ok(grid
        .into_iter()
        .filter(|n| keep_top || (n - 1.0).abs() >= TOP_EXCLUSION)
        .collect())
}

/// `α` for tunneling; `−|α|` when `α` is imaginary above the top.
fn signed_alpha(k: &Kin) -> f64 {
    k.alpha_sq.signum() * k.alpha_sq.abs().sqrt()
}

fn times(cfg: &RunConfig) -> Result<(), CliError> {
    let mode = NormalizationMode::from(cfg.norm);
    let rows = n_grid(cfg, cfg.series)?
        .par_iter()
        .map(|&n| {
            let k = Kin::dimensionless(n, cfg.wl).context(|| format!("times at n = {n}"))?;
            let norm = |t| normalize_time(t, mode, &k);
            Ok(vec![
                n,
                signed_alpha(&k),
                norm(standard_phase_time(&k)),
                norm(symmetric_phase_time(&k)),
                norm(dwell_time_closed(&k)),
                norm(self_interference_time(&k)),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(
        cfg.provenance(),
        vec!["n", "alpha", "t_T", "t_T_phi", "t_D_phi", "t_I_phi"],
    );
    for row in rows {
        table.push(row.into_iter().map(Cell::from).collect());
    }
    table.write(cfg.out.as_deref())
}

fn figure1(cfg: &RunConfig) -> Result<(), CliError> {
    let wls = uniform_grid(cfg.wl_min, cfg.wl_max, cfg.wl_steps).context(|| "building the wL grid".into())?;
    let points: Vec<(f64, f64)> = cfg
        .n_values
        .iter()
        .flat_map(|&n| wls.iter().map(move |&wl| (n, wl)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(n, wl)| {
            let k = Kin::dimensionless(n, wl).context(|| format!("figure 1 at n = {n}, wL = {wl}"))?;
            let alpha = k.alpha.re;
            Ok(vec![
                n,
                wl,
                alpha,
                standard_phase_time(&k) / k.tau_k,
                symmetric_phase_time(&k) / k.tau_k,
                2.0 / alpha,
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(
        cfg.provenance(),
        vec!["n", "wl", "alpha", "t_T_tauk", "t_T_phi_tauk", "opaque_limit_tauk"],
    );
    for row in rows {
        table.push(row.into_iter().map(Cell::from).collect());
    }
    table.write(cfg.out.as_deref())
}

fn figure2(cfg: &RunConfig) -> Result<(), CliError> {
    let tol = Tolerance::default();
    let rows = n_grid(cfg, false)?
        .par_iter()
        .map(|&n| {
            let k = Kin::dimensionless(n, cfg.wl).context(|| format!("figure 2 at n = {n}"))?;
            let std = standard_times(&k, &tol).context(|| format!("one-way times at n = {n}"))?;
            let raw = [
                symmetric_phase_time(&k),
                dwell_time_closed(&k),
                self_interference_time(&k),
                std.t_t,
                std.t_d,
                std.t_i,
            ];
            let mut row = vec![n, signed_alpha(&k)];
            row.extend(raw.iter().map(|t| t / k.tau_w));
            row.extend(raw.iter().map(|t| t / k.tau_k));
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(
        cfg.provenance(),
        vec![
            "n",
            "alpha",
            "t_T_phi_tauw",
            "t_D_phi_tauw",
            "t_I_phi_tauw",
            "t_T_tauw",
            "t_D_tauw",
            "t_I_tauw",
            "t_T_phi_tauk",
            "t_D_phi_tauk",
            "t_I_phi_tauk",
            "t_T_tauk",
            "t_D_tauk",
            "t_I_tauk",
        ],
    );
    for row in rows {
        table.push(row.into_iter().map(Cell::from).collect());
    }
    table.write(cfg.out.as_deref())
}

fn packet(cfg: &RunConfig) -> Result<(), CliError> {
    let barrier = Barrier::dimensionless(cfg.wl).context(|| "barrier".into())?;
    let k0 = barrier.wavenumber_at(cfg.n);
    let spec = PacketSpec::new(k0, cfg.sigma_rel * k0)
        .with_delta(cfg.delta)
        .with_symmetrization(cfg.sym.into());
    let medium = if cfg.free { Medium::Free(barrier) } else { Medium::Barrier(barrier) };
    let report = run_delay_experiment(&spec, &medium, cfg.method.into())
        .context(|| format!("packet experiment at n = {}, sigma_rel = {}", cfg.n, cfg.sigma_rel))?;

    let est = &report.estimate;
    let rel = |reference: f64| (est.delay - reference) / reference;
    let mut table = Table::new(
        cfg.provenance(),
        vec![
            "method",
            "delay",
            "uncertainty",
            "phase_time_k0",
            "prediction",
            "mean_phase_time",
            "rel_diff_phase_time",
            "rel_diff_prediction",
            "velocity",
            "crossing_time",
        ],
    );
    table.push(vec![
        format!("{:?}", est.method).to_lowercase().into(),
        est.delay.into(),
        est.uncertainty.into(),
        report.phase_time_k0.into(),
        report.prediction.into(),
        report.mean_phase_time.into(),
        rel(report.phase_time_k0).into(),
        rel(report.prediction).into(),
        est.velocity.into(),
        est.crossing_time.into(),
    ]);

    let Some(dir) = cfg.out.as_deref() else {
        return table.write(None);
    };
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_owned(), source })?;
    for (i, snap) in report.snapshots.iter().enumerate() {
        let mut s = Table::new(
            format!("{} t={}", cfg.provenance(), snap.t),
            vec!["x", "re_psi", "im_psi", "abs2"],
        );
        for (j, psi) in snap.psi.iter().enumerate() {
            s.push(vec![snap.grid.x(j).into(), psi.re.into(), psi.im.into(), psi.norm_sqr().into()]);
        }
        s.write(Some(&dir.join(format!("snapshot_{i}.csv"))))?;
    }
    table.write(Some(&dir.join("report.csv")))?;
    table.write(None)
}

fn scan(cfg: &RunConfig) -> Result<(), CliError> {
    let grid = n_grid(cfg, false)?;
    let report = superluminal_scan(cfg.wl, &grid).context(|| format!("scan at wL = {}", cfg.wl))?;
    let mut table = Table::new(
        cfg.provenance(),
        vec!["n", "wl", "T2", "t_ratio", "flag_T", "flag_fast", "flag_joint"],
    );
    for r in &report.rows {
        table.push(vec![
            r.n.into(),
            r.wl.into(),
            r.t2.into(),
            r.t_ratio.into(),
            r.flag_t.into(),
            r.flag_fast.into(),
            r.flag_joint.into(),
        ]);
    }
    let onset = report.onset().map_or("none".to_owned(), |n| n.to_string());
    let summary = format!(
        "joint region empty for n < 1: {}; joint region onset: {onset}; joint region only for n > 2: {}",
        report.joint_empty_below_top(),
        report.joint_only_above(2.0)
    );
    eprintln!("{summary}");
    table.note(summary);
    table.write(cfg.out.as_deref())
}

fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let opts = VerifyOptions {
        phase_variant: if cfg.inject_tanh2 {
            PhaseVariant::DoubledArgument
        } else {
            PhaseVariant::Consistent
        },
        seed: cfg.seed,
    };
    let outcomes = run_checks(&opts);
    let mut table = Table::new(
        cfg.provenance(),
        vec!["check", "passed", "achieved", "required", "detail"],
    );
    for o in &outcomes {
        table.push(vec![
            o.name.into(),
            o.passed.into(),
            o.achieved.into(),
            o.required.into(),
            o.detail.clone().into(),
        ]);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in outcomes.iter().filter(|o| !o.passed) {
        eprintln!("FAIL {}: achieved {:e}, required {:e} ({})", o.name, o.achieved, o.required, o.detail);
    }
    table.write(cfg.out.as_deref())?;
    if failed > 0 {
        return Err(CliError::Verification { failed, total: outcomes.len() });
    }
    Ok(())
}

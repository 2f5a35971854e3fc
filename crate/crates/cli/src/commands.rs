use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use delaunay_lab::acceptance::{self, AcceptanceOptions, CheckReport};
use delaunay_lab::config::{EpsGrid, RunConfig};
use delaunay_lab::delaunay::{period_r_oracle, period_t_oracle, solve_orbit, OrbitSummary};
use delaunay_lab::export::{num, orbit_rows, phase_portrait_rows, Artifacts, Provenance};
use delaunay_lab::floquet::{band_structure, sl_form, SphereMode};
use delaunay_lab::indicial::{indicial_set, pole_degree_at_zero, relative_index, sharp_decay_rate, EndModel};
use delaunay_lab::jacobi::{jacobi_field, wronskian_pairing, GrowthClass, JacobiKind};
use delaunay_lab::pohozaev::{calibrate_cn, default_axis, dilational_invariant, invariant_norm, PohozaevInvariant};
use delaunay_lab::PeriodicOrbit;

use crate::{Command, GlobalArgs};

pub fn dispatch(g: &GlobalArgs, command: &Command) -> Result<ExitCode> {
    match command {
        Command::Orbit { eps, samples, export_phase } => {
            let config = g.run_config(EpsGrid::Explicit(vec![*eps]), 1)?;
            cmd_orbit(&config, *samples, *export_phase)
        }
        Command::Jacobi { eps, periods, samples } => {
            let config = g.run_config(EpsGrid::Explicit(vec![*eps]), 1)?;
            cmd_jacobi(&config, *periods, *samples)
        }
        Command::Bands { eps, mode, window, resolution } => {
            let config = g.run_config(EpsGrid::Explicit(vec![*eps]), (*mode).max(1))?;
            cmd_bands(&config, *mode, (window[0], window[1]), *resolution)
        }
        Command::Indicial { eps, jmax } => {
            let config = g.run_config(EpsGrid::Explicit(vec![*eps]), *jmax)?;
            cmd_indicial(&config)
        }
        Command::Pohozaev { eps_grid } => cmd_pohozaev(&g.run_config(eps_grid.clone(), 1)?),
        Command::Relindex { ends } => {
            let config = g.run_config(EpsGrid::Explicit(ends.clone()), g.n)?;
            cmd_relindex(&config, ends.len())
        }
        Command::ModuliTable { eps_grid } => cmd_moduli_table(&g.run_config(eps_grid.clone(), 1)?),
        Command::Verify { only, tighten } => {
            let config = g.run_config(EpsGrid::Standard, 1)?;
            cmd_verify(&config, only, *tighten)
        }
    }
}

fn single_eps(config: &RunConfig) -> Result<f64> {
    Ok(config.eps_grid.values(config.n)?[0])
}

fn report(art: &Artifacts) {
    for p in art.written() {
        println!("wrote {}", p.display());
    }
}

#[derive(Serialize)]
struct OrbitHeader {
    #[serde(flatten)]
    summary: OrbitSummary,
    ubar: f64,
    energy_drift: f64,
    period_t_oracle: f64,
    period_r_oracle: f64,
}

pub fn cmd_orbit(config: &RunConfig, samples: usize, export_phase: bool) -> Result<ExitCode> {
    let (n, eps) = (config.n, single_eps(config)?);
    let orbit = solve_orbit(n, eps, config.tolerance)?;
    let prov = Provenance::for_command(config, "orbit", &json!({ "samples": samples, "export_phase": export_phase }))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.csv("orbit.csv", &["t", "u", "v", "r"], orbit_rows(&orbit, samples))?;
    let header = OrbitHeader {
        summary: orbit.summary(),
        ubar: orbit.ubar(),
        energy_drift: orbit.energy_drift(),
        period_t_oracle: period_t_oracle(n, eps)?,
        period_r_oracle: period_r_oracle(n, eps)?,
    };
    art.json("orbit.json", &header)?;
    if export_phase {
        let ubar = orbit.ubar();
        let others = [0.25, 0.5, 0.75]
            .iter()
            .map(|m| solve_orbit(n, m * ubar, config.tolerance))
            .collect::<delaunay_lab::Result<Vec<_>>>()?;
        let mut curves = vec![&orbit];
        curves.extend(others.iter());
        art.csv("phase.csv", &["curve", "H", "u", "v"], phase_portrait_rows(n, &curves, samples))?;
    }
    println!("n = {n}, eps = {eps}: T = {}, R = {}, H = {}", orbit.period(), orbit.geodesic_period(), orbit.energy());
    report(&art);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FieldMeta {
    kind: JacobiKind,
    mode: usize,
    growth_class: GrowthClass,
    residual: f64,
}

pub fn cmd_jacobi(config: &RunConfig, periods: f64, samples: usize) -> Result<ExitCode> {
    if !(periods > 0.0) {
        bail!(delaunay_lab::Error::InvalidArgument(format!("periods must be positive, got {periods}")));
    }
    let orbit = solve_orbit(config.n, single_eps(config)?, config.tolerance)?;
    let window = (0.0, periods * orbit.period());
    let kinds = [JacobiKind::Phi1, JacobiKind::Phi2, JacobiKind::Phi3, JacobiKind::Phi4];
    let fields: Vec<_> = kinds.iter().map(|&k| jacobi_field(&orbit, k)).collect();
    let meta: Vec<FieldMeta> = fields
        .iter()
        .map(|f| FieldMeta { kind: f.kind(), mode: f.mode(), growth_class: f.growth_class(), residual: f.residual(window, 400) })
        .collect();
    let w = wronskian_pairing(&fields[0], &fields[1], window, samples.max(2))?;
    let count = samples.max(2);
    let rows = (0..count).map(|i| {
        let t = window.0 + (window.1 - window.0) * i as f64 / (count - 1) as f64;
        std::iter::once(num(t)).chain(fields.iter().map(|f| num(f.value(t)))).collect::<Vec<_>>()
    });
    let prov = Provenance::for_command(config, "jacobi", &json!({ "periods": periods, "samples": samples }))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.csv("jacobi.csv", &["t", "phi1", "phi2", "phi3", "phi4"], rows)?;
    art.json(
        "jacobi.json",
        &json!({
            "orbit": orbit.summary(),
            "window": window,
            "fields": meta,
            "wronskian": { "value": w.value, "relative_variation": w.relative_variation },
        }),
    )?;
    for m in &meta {
        println!("{:?} (mode {}): residual {:.3e}", m.kind, m.mode, m.residual);
    }
    println!("Wronskian u^2(phi1' phi2 - phi1 phi2') = {} (relative variation {:.2e})", w.value, w.relative_variation);
    report(&art);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BandReport {
    n: usize,
    eps: f64,
    mode: SphereMode,
    window: (f64, f64),
    resolution: usize,
    bands: Vec<(f64, f64)>,
    gaps: Vec<(f64, f64)>,
    lowest_edge: Option<f64>,
}

pub fn cmd_bands(config: &RunConfig, mode: usize, window: (f64, f64), resolution: usize) -> Result<ExitCode> {
    let eps = single_eps(config)?;
    let orbit = solve_orbit(config.n, eps, config.tolerance)?;
    let b = band_structure(&sl_form(&orbit, mode), window, resolution)?;
    let prov = Provenance::for_command(config, "bands", &json!({ "mode": mode, "window": window, "resolution": resolution }))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.csv("bands.csv", &["s", "sigma", "discriminant"], b.scan.iter().map(|&(s, d)| [num(s), num(-s), num(d)]))?;
    let out = BandReport {
        n: config.n,
        eps,
        mode: b.mode,
        window,
        resolution,
        bands: b.bands.clone(),
        gaps: b.gaps.clone(),
        lowest_edge: b.lowest_edge(),
    };
    art.json("bands.json", &out)?;
    match out.lowest_edge {
        Some(e) => println!("lowest edge of -L_{mode}: {e}"),
        None => println!("no band of -L_{mode} inside [{}, {}]", window.0, window.1),
    }
    for g in &out.gaps {
        println!("gap ({}, {})", g.0, g.1);
    }
    report(&art);
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_indicial(config: &RunConfig) -> Result<ExitCode> {
    let orbit = solve_orbit(config.n, single_eps(config)?, config.tolerance)?;
    let set = indicial_set(&orbit, config.j_max)?;
    let pole = pole_degree_at_zero(&orbit)?;
    let sharp = if config.j_max >= config.n { Some(sharp_decay_rate(&orbit, config.j_max)?) } else { None };
    let prov = Provenance::for_command(config, "indicial", &json!({}))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.json("indicial.json", &json!({ "set": set, "pole_degree_at_zero": pole, "sharp_decay_rate": sharp }))?;
    for (j, g) in set.positive_by_mode() {
        println!("j = {j}: gamma = ±{g}");
    }
    println!("mode 0: pole degree {pole}");
    report(&art);
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_relindex(config: &RunConfig, k: usize) -> Result<ExitCode> {
    let eps: Vec<f64> = match &config.eps_grid {
        EpsGrid::Explicit(v) => v.iter().map(|e| e.resolve(config.n)).collect::<delaunay_lab::Result<_>>()?,
        _ => unreachable!("relindex builds an explicit list"),
    };
    debug_assert_eq!(eps.len(), k);
    let r = relative_index(&EndModel::new(config.n, eps.clone())?)?;
    let prov = Provenance::for_command(config, "relindex", &json!({ "ends": eps }))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.json("relindex.json", &r)?;
    println!("{}", serde_json::to_string(&json!({ "rel_index": r.rel_index, "dim_B": r.dim_bounded_nullspace }))?);
    report(&art);
    Ok(ExitCode::SUCCESS)
}

struct ModuliRow {
    eps: f64,
    t: f64,
    r: f64,
    h: f64,
    d: f64,
    norm: f64,
}

fn moduli_rows(config: &RunConfig) -> Result<Vec<ModuliRow>> {
    let n = config.n;
    let grid = config.eps_grid.values(n)?;
    let axis = default_axis(n);
    let rows = grid
        .par_iter()
        .map(|&eps| -> delaunay_lab::Result<ModuliRow> {
            let o: PeriodicOrbit = solve_orbit(n, eps, config.tolerance)?;
            let p = PohozaevInvariant::compute(&o, 0, &axis, 0.0)?;
            Ok(ModuliRow {
                eps,
                t: o.period(),
                r: o.geodesic_period(),
                h: o.energy(),
                d: dilational_invariant(&o)?,
                norm: invariant_norm(&p)?,
            })
        })
        .collect::<delaunay_lab::Result<Vec<_>>>()?;
    Ok(rows)
}

pub fn cmd_pohozaev(config: &RunConfig) -> Result<ExitCode> {
    let rows = moduli_rows(config)?;
    let grid: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    let cal = calibrate_cn(config.n, &grid)?;
    let prov = Provenance::for_command(config, "pohozaev", &json!({}))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.csv(
        "pohozaev.csv",
        &["eps", "H", "D", "killing_norm"],
        rows.iter().map(|r| [num(r.eps), num(r.h), num(r.d), num(r.norm)]),
    )?;
    art.json(&format!("calibration_n{}.json", config.n), &cal)?;
    println!("c_{} = {} (max relative deviation {:.2e} over {} points)", cal.n, cal.c_n, cal.max_relative_deviation, cal.grid.len());
    report(&art);
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_moduli_table(config: &RunConfig) -> Result<ExitCode> {
    let rows = moduli_rows(config)?;
    let prov = Provenance::for_command(config, "moduli-table", &json!({}))?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.csv(
        "moduli.csv",
        &["eps", "T", "R", "H", "D", "killing_norm", "D_over_H"],
        rows.iter().map(|r| [num(r.eps), num(r.t), num(r.r), num(r.h), num(r.d), num(r.norm), num(r.d / r.h)]),
    )?;
    let monotone = rows.windows(2).all(|w| w[1].h < w[0].h);
    println!("{} rows; H strictly decreasing: {monotone}", rows.len());
    report(&art);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    options: &'a AcceptanceOptions,
    passed: bool,
    checks: &'a [CheckReport],
}

pub fn cmd_verify(config: &RunConfig, only: &[String], tighten: f64) -> Result<ExitCode> {
    if !(tighten > 0.0) {
        bail!(delaunay_lab::Error::InvalidArgument(format!("--tighten must be positive, got {tighten}")));
    }
    let known = acceptance::check_ids();
    for o in only {
        let ok = known.iter().any(|(id, _, group)| o.eq_ignore_ascii_case(group) || o.parse::<u8>() == Ok(*id));
        if !ok {
            bail!(delaunay_lab::Error::InvalidArgument(format!("unknown check or group {o:?}")));
        }
    }
    let options = AcceptanceOptions { tighten, only: only.to_vec(), seed: config.seed };
    let checks = acceptance::run(&options);
    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        println!("{}", c.summary_line());
    }
    let prov = Provenance::for_command(config, "verify", &options)?;
    let mut art = Artifacts::new(&config.out, prov)?;
    art.json("verify.json", &VerifyReport { options: &options, passed, checks: &checks })
        .context("writing the verification report")?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
    if failed.is_empty() {
        println!("all {} checks passed", checks.len());
    } else {
        println!("failed checks: {}", failed.join(", "));
    }
    report(&art);
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(crate::EXIT_FAILURE) })
}

//! The four subcommands. Each computes with the library, assembles rows
//! in a fixed deterministic order, and hands files to the manifest
//! builder; grid evaluations may fan out across the rayon pool but
//! writing stays single-threaded and ordered.

use quasicoulomb::heavy::{
    numerov_integrate, numerov_spectrum, InnerBc, NumerovConfig, WkbPotentialKind,
};
use quasicoulomb::potential::{AsymptV, Clamped, CurveKind, GridSpec, PotentialCurve};
use quasicoulomb::truncated::{find_det_roots, Sector};
use quasicoulomb::{n0_estimate, resonance_scan, solve_branch, wkb_spectrum, Level, ModelParams};
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::config::{OutputFormat, RunConfig};
use crate::output::{sig12, sig12_opt, ManifestBuilder, OutputFile};
use crate::CliError;

fn numerical(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Run(format!("{context}: {e}"))
}

fn missing_section(name: &str) -> CliError {
    CliError::Config(format!("config has no `{name}` section"))
}

/// Write a per-row diagnostics sidecar next to the data files; kept out
/// of the manifest because it only exists for failed or degraded runs.
fn write_sidecar(manifest: &ManifestBuilder, name: &str, lines: &[String]) {
    let path = manifest.out_dir().join(name);
    let body: String = lines.iter().map(|l| format!("{l}\n")).collect();
    if let Err(e) = std::fs::write(&path, body) {
        log::error!("cannot write sidecar {}: {e}", path.display());
    }
}

fn json_number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn json_opt(x: Option<f64>) -> serde_json::Value {
    x.map(json_number).unwrap_or(serde_json::Value::Null)
}

/// Tabulate all seven adiabatic/asymptotic curves on a shared log grid.
pub fn cmd_potential(
    config: &RunConfig,
    format: OutputFormat,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    let section = config
        .potential
        .as_ref()
        .ok_or_else(|| missing_section("potential"))?;
    let params = config.params.to_model()?;
    let grid = GridSpec::new(section.rho_min, section.rho_max, section.points_per_decade)
        .map_err(|e| CliError::Config(format!("potential grid: {e}")))?;
    let rho_points = grid.points();

    let results: Vec<Result<PotentialCurve, quasicoulomb::Error>> = CurveKind::ALL
        .par_iter()
        .map(|&kind| PotentialCurve::tabulate(kind, &params, &grid))
        .collect();
    let mut curves = Vec::with_capacity(results.len());
    let mut diagnostics = Vec::new();
    for (kind, result) in CurveKind::ALL.iter().zip(results) {
        match result {
            Ok(curve) => curves.push(curve),
            Err(e) => diagnostics.push(format!("{}: {e}", kind.label())),
        }
    }
    if !diagnostics.is_empty() {
        write_sidecar(manifest, "potential.log", &diagnostics);
        return Err(numerical(
            "potential tabulation failed",
            diagnostics.join("; "),
        ));
    }

    // align each curve's (sparse) samples with the full grid
    let columns: Vec<Vec<Option<f64>>> = curves
        .iter()
        .map(|curve| {
            let mut cursor = curve.samples.iter().peekable();
            rho_points
                .iter()
                .map(|&rho| match cursor.peek() {
                    Some(&&(r, v)) if r == rho => {
                        cursor.next();
                        Some(v)
                    }
                    _ => None,
                })
                .collect()
        })
        .collect();

    match format {
        OutputFormat::Csv => {
            let mut file = OutputFile::create(manifest.out_dir(), "potential.csv")?;
            let header: Vec<&str> = std::iter::once("rho")
                .chain(CurveKind::ALL.iter().map(|k| k.label()))
                .collect();
            file.write_line(&header.join(","))?;
            for (i, &rho) in rho_points.iter().enumerate() {
                let mut cells = vec![sig12(rho)];
                cells.extend(columns.iter().map(|col| sig12_opt(col[i])));
                file.write_line(&cells.join(","))?;
            }
            manifest.record(file)?;
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rho_points
                .iter()
                .enumerate()
                .map(|(i, &rho)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("rho".into(), json_number(rho));
                    for (kind, col) in CurveKind::ALL.iter().zip(&columns) {
                        obj.insert(kind.label().into(), json_opt(col[i]));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let text = serde_json::to_string_pretty(&rows).unwrap();
            manifest.write_text("potential.json", &text)?;
        }
    }
    Ok(())
}

/// Bound spectrum of the heavy pair on the clamped long-range potential:
/// radial (Numerov) levels beside the closed-form WKB chain, plus a fit
/// summary.
pub fn cmd_spectrum(
    config: &RunConfig,
    format: OutputFormat,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    let section = config
        .spectrum
        .as_ref()
        .ok_or_else(|| missing_section("spectrum"))?;
    let params = config.params.to_model()?;
    if !(section.n_min >= 1 && section.n_min <= section.n_max) {
        return Err(CliError::Config(format!(
            "spectrum: need 1 <= n_min <= n_max, got [{}, {}]",
            section.n_min, section.n_max
        )));
    }
    let potential = Clamped {
        inner: AsymptV,
        cap: section.cap,
    };
    let ncfg = NumerovConfig::new(
        section.rho_min,
        section.rho_max,
        section.points,
        InnerBc::HardWall,
    )
    .map_err(|e| CliError::Config(format!("spectrum grid: {e}")))?;

    let numerov = numerov_spectrum(&potential, params.beta, section.n_max, &ncfg)
        .map_err(|e| numerical("radial spectrum", e))?;
    let node_count = numerov_integrate(&potential, params.beta, 0.0, &ncfg)
        .map_err(|e| numerical("zero-energy node count", e))?
        .node_count;

    // WKB levels one by one so an out-of-range high level degrades the
    // column instead of aborting the run
    let wkb_levels: Vec<Option<Level>> = (section.n_min..=section.n_max)
        .map(
            |n| match wkb_spectrum(&params, n, n, WkbPotentialKind::AsymptV) {
                Ok(s) => s.levels.first().copied(),
                Err(e) => {
                    log::warn!("WKB level n = {n} skipped: {e}");
                    None
                }
            },
        )
        .collect();

    struct Row {
        n: u32,
        e_wkb: Option<f64>,
        e_numerov: Option<f64>,
        r_n: Option<f64>,
    }
    let rows: Vec<Row> = (section.n_min..=section.n_max)
        .zip(&wkb_levels)
        .map(|(n, wkb)| {
            let radial = numerov.levels.iter().find(|l| l.n == n);
            Row {
                n,
                e_wkb: wkb.map(|l| l.energy),
                e_numerov: radial.map(|l| l.energy),
                r_n: wkb
                    .map(|l| l.outer_turning_point)
                    .or(radial.map(|l| l.outer_turning_point)),
            }
        })
        .collect();

    match format {
        OutputFormat::Csv => {
            let mut file = OutputFile::create(manifest.out_dir(), "spectrum.csv")?;
            file.write_line("n,E_wkb,E_numerov,R_n")?;
            for row in &rows {
                file.write_line(&format!(
                    "{},{},{},{}",
                    row.n,
                    sig12_opt(row.e_wkb),
                    sig12_opt(row.e_numerov),
                    sig12_opt(row.r_n)
                ))?;
            }
            manifest.record(file)?;
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "n": row.n,
                        "E_wkb": json_opt(row.e_wkb),
                        "E_numerov": json_opt(row.e_numerov),
                        "R_n": json_opt(row.r_n),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&rows).unwrap();
            manifest.write_text("spectrum.json", &text)?;
        }
    }

    let n0 = n0_estimate(&params).ok().filter(|v| v.is_finite());
    let summary = serde_json::json!({
        "E0_fit": json_opt(numerov.fit.map(|f| f.e0_fit)),
        "slope_fit": json_opt(numerov.fit.map(|f| f.slope_fit)),
        "slope_theory": json_number(PI * PI / (2.0 * params.beta)),
        "n0_estimate": json_opt(n0),
        "numerov_node_count": node_count,
    });
    manifest.write_text(
        "spectrum_summary.json",
        &serde_json::to_string_pretty(&summary).unwrap(),
    )?;
    Ok(())
}

/// Atom-molecule resonance scan over a1: semiclassical bound-state count
/// N0, atom-molecule scattering length A0, and pole-crossing flags.
pub fn cmd_scattering(
    config: &RunConfig,
    format: OutputFormat,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    let section = config
        .scattering
        .as_ref()
        .ok_or_else(|| missing_section("scattering"))?;
    let params = config.params.to_model()?;
    if !(section.a1_min > 0.0 && section.a1_max > section.a1_min && section.points >= 2) {
        return Err(CliError::Config(format!(
            "scattering: need 0 < a1_min < a1_max and >= 2 points, got [{}, {}] x {}",
            section.a1_min, section.a1_max, section.points
        )));
    }
    let n = section.points;
    let ratio = section.a1_max / section.a1_min;
    let a1_grid: Vec<f64> = (0..n)
        .map(|i| section.a1_min * ratio.powf(i as f64 / (n - 1) as f64))
        .collect();
    let scan = resonance_scan(&params, &a1_grid).map_err(|e| numerical("resonance scan", e))?;

    match format {
        OutputFormat::Csv => {
            let mut file = OutputFile::create(manifest.out_dir(), "scattering.csv")?;
            file.write_line("a1,N0,A0,is_pole")?;
            for point in &scan {
                file.write_line(&format!(
                    "{},{},{},{}",
                    sig12(point.a1),
                    sig12(point.n0),
                    sig12_opt(point.a_molecule),
                    point.pole_crossed
                ))?;
            }
            manifest.record(file)?;
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = scan
                .iter()
                .map(|point| {
                    serde_json::json!({
                        "a1": json_number(point.a1),
                        "N0": json_number(point.n0),
                        "A0": json_opt(point.a_molecule),
                        "is_pole": point.pole_crossed,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&rows).unwrap();
            manifest.write_text("scattering.json", &text)?;
        }
    }
    Ok(())
}

fn sector_label(sector: Sector) -> &'static str {
    match sector {
        Sector::Symmetric => "symmetric",
        Sector::Antisymmetric => "antisymmetric",
        Sector::Full => "full",
    }
}

struct DetRow {
    rho: f64,
    sector: Sector,
    m_max: u32,
    xi_root: f64,
    xi_branch: Option<f64>,
    rel_diff: Option<f64>,
}

fn detcheck_rows(
    rho: f64,
    params: &ModelParams,
    m_max: u32,
) -> Result<Vec<DetRow>, quasicoulomb::Error> {
    let mut rows = Vec::new();
    for sector in [Sector::Antisymmetric, Sector::Symmetric] {
        let mut branch_roots = Vec::new();
        for &(branch, sign) in sector.branches() {
            branch_roots.extend(
                solve_branch(branch, sign, rho, params, None)?
                    .into_iter()
                    .filter(|r| r.converged)
                    .map(|r| r.xi),
            );
        }
        for det_root in find_det_roots(rho, params, m_max, sector)? {
            if !det_root.converged {
                continue;
            }
            let nearest = branch_roots.iter().copied().min_by(|a, b| {
                let da = (a - det_root.xi).abs();
                let db = (b - det_root.xi).abs();
                da.partial_cmp(&db).unwrap()
            });
            rows.push(DetRow {
                rho,
                sector,
                m_max,
                xi_root: det_root.xi,
                xi_branch: nearest,
                rel_diff: nearest.map(|b| (det_root.xi - b).abs() / b),
            });
        }
    }
    Ok(rows)
}

/// Cross-check the truncated-determinant zeros against the closed branch
/// equations and report pass/fail against the equivalence threshold.
pub fn cmd_detcheck(
    config: &RunConfig,
    format: OutputFormat,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    let section = config
        .detcheck
        .as_ref()
        .ok_or_else(|| missing_section("detcheck"))?;
    let params = config.params.to_model()?;
    if section.rho_values.is_empty() {
        return Err(CliError::Config("detcheck: rho_values is empty".into()));
    }

    let per_rho: Vec<Result<Vec<DetRow>, quasicoulomb::Error>> = section
        .rho_values
        .par_iter()
        .map(|&rho| detcheck_rows(rho, &params, section.m_max))
        .collect();
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for (rho, result) in section.rho_values.iter().zip(per_rho) {
        match result {
            Ok(mut r) => rows.append(&mut r),
            Err(e) => diagnostics.push(format!("rho = {rho}: {e}")),
        }
    }
    if !diagnostics.is_empty() {
        write_sidecar(manifest, "detcheck.log", &diagnostics);
        return Err(numerical("detcheck failed", diagnostics.join("; ")));
    }

    match format {
        OutputFormat::Csv => {
            let mut file = OutputFile::create(manifest.out_dir(), "detcheck.csv")?;
            file.write_line("rho,sector,m_max,xi_root,xi_branch,rel_diff")?;
            for row in &rows {
                file.write_line(&format!(
                    "{},{},{},{},{},{}",
                    sig12(row.rho),
                    sector_label(row.sector),
                    row.m_max,
                    sig12(row.xi_root),
                    sig12_opt(row.xi_branch),
                    sig12_opt(row.rel_diff)
                ))?;
            }
            manifest.record(file)?;
        }
        OutputFormat::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "rho": json_number(row.rho),
                        "sector": sector_label(row.sector),
                        "m_max": row.m_max,
                        "xi_root": json_number(row.xi_root),
                        "xi_branch": json_opt(row.xi_branch),
                        "rel_diff": json_opt(row.rel_diff),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&json_rows).unwrap();
            manifest.write_text("detcheck.json", &text)?;
        }
    }

    let max_rel_diff = rows
        .iter()
        .filter_map(|r| r.rel_diff)
        .fold(0.0f64, f64::max);
    let complete = rows.iter().all(|r| r.rel_diff.is_some());
    let pass = !rows.is_empty() && complete && max_rel_diff < section.tolerance;
    let summary = serde_json::json!({
        "rows": rows.len(),
        "max_rel_diff": json_number(max_rel_diff),
        "tolerance": json_number(section.tolerance),
        "pass": pass,
    });
    manifest.write_text(
        "detcheck_summary.json",
        &serde_json::to_string_pretty(&summary).unwrap(),
    )?;
    if !pass {
        return Err(numerical(
            "determinant/branch equivalence check",
            format!(
                "max rel_diff {max_rel_diff:e} exceeds {:e}",
                section.tolerance
            ),
        ));
    }
    Ok(())
}

//! Implementations behind the CLI subcommands: mode tables, the dispersion
//! dataset, shift reports, matrix dumps, and dynamics traces.
//!
//! Everything returns rendered text (CSV or JSON) so the binary stays a thin
//! argument parser; output is deterministic — fixed orderings, fixed float
//! formatting — regardless of how many worker threads the sweep uses.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    beat_length, delta_omega, evolve_t, evolve_z, polarization_vector, PairKind,
    SuperpositionSpec,
};
use crate::error::{Error, Result};
use crate::medium::{waveguide_parameter, ParticleConfig, ParticleKind, Profile};
use crate::modesolver::{solve_modes, ModeIndex, ModeSolution};
use crate::perturb::{
    assemble_matrix, check_conditions, diagonal_shift, second_order_shift, RadialBasis,
};
use crate::report::{csv_document, fmt_f, matrix_csv, MatrixRecord, ShiftReport};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Environment variable capping sweep concurrency.
pub const THREADS_ENV: &str = "ZITTERGUIDE_THREADS";

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            Error::Validation(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))
        })?;
        if n == 0 {
            return Err(Error::Validation(format!("{THREADS_ENV} must be >= 1")));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Validation(format!("failed to build thread pool: {e}")))
}

// ---------------------------------------------------------------------------
// modes
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct ModeRow {
    lp_label: String,
    #[serde(flatten)]
    record: crate::modesolver::ModeSolutionRecord,
}

/// Representative (m_ell, sigma) labels for one |m| family: LP+ and LP-
/// variants for |m| >= 1, the single unsplit label for m = 0.
fn family_labels(m_abs: u32) -> Vec<(i32, i32)> {
    if m_abs == 0 {
        vec![(0, 1)]
    } else {
        vec![(m_abs as i32, 1), (m_abs as i32, -1)]
    }
}

/// All guided modes of both particles at waveguide parameter `r`.
pub fn cmd_modes(
    scenario: &Scenario,
    r: f64,
    m_max: u32,
    n_max: Option<u32>,
    format: OutputFormat,
) -> Result<String> {
    let photon = scenario.photon_config_at(r)?;
    let electron = scenario.electron_config_at(r)?;
    let mut rows = Vec::new();
    for config in [&photon, &electron] {
        for family in ModeSolution::enumerate(config, m_max, n_max)? {
            for (m_ell, sigma) in family_labels(family.index.m_abs()) {
                let mode = family.with_labels(m_ell, sigma)?;
                rows.push(ModeRow {
                    lp_label: mode.index.lp_label(),
                    record: mode.record(),
                });
            }
        }
    }
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&rows)?),
        OutputFormat::Csv => {
            let header = [
                "particle",
                "lp_label",
                "r",
                "n",
                "m_ell",
                "sigma",
                "kappa0_a",
                "kappa_tilde0_a",
                "beta0",
                "N",
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        row.record.particle.to_string(),
                        row.lp_label.clone(),
                        fmt_f(row.record.r),
                        row.record.n.to_string(),
                        row.record.m_ell.to_string(),
                        row.record.sigma.to_string(),
                        fmt_f(row.record.kappa0_a),
                        fmt_f(row.record.kappa_tilde0_a),
                        fmt_f(row.record.beta0),
                        fmt_f(row.record.norm_n),
                    ]
                })
                .collect();
            Ok(csv_document(&header, &body))
        }
    }
}

// ---------------------------------------------------------------------------
// dispersion
// ---------------------------------------------------------------------------

pub const DISPERSION_HEADER: [&str; 9] = [
    "R",
    "lp_label",
    "beta_photon",
    "beta_electron",
    "beta0",
    "delta_beta_darwin",
    "delta_beta_so",
    "beta_corrected_exaggerated",
    "uncorrected",
];

/// One emitted dispersion row (photon scale unless noted).
struct DispersionRow {
    r: f64,
    lp_label: String,
    beta_photon: f64,
    beta_electron: f64,
    beta0: f64,
    darwin: Option<f64>,
    so_signed: Option<f64>,
    corrected_exaggerated: f64,
    uncorrected: bool,
}

impl DispersionRow {
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f(self.r),
            self.lp_label.clone(),
            fmt_f(self.beta_photon),
            fmt_f(self.beta_electron),
            fmt_f(self.beta0),
            self.darwin.map(fmt_f).unwrap_or_default(),
            self.so_signed.map(fmt_f).unwrap_or_default(),
            fmt_f(self.corrected_exaggerated),
            (self.uncorrected as u8).to_string(),
        ]
    }
}

fn dispersion_rows_at(
    scenario: &Scenario,
    r: f64,
    m_max: u32,
    exaggeration: f64,
) -> Result<Vec<DispersionRow>> {
    let photon = scenario.photon_config_at(r)?;
    let electron = scenario.electron_config_at(r)?;
    let freq = waveguide_parameter(&photon);
    let step = Profile::step();
    let mut rows = Vec::new();
    for m_abs in 0..=m_max {
        let roots = solve_modes(freq, m_abs)?;
        for (i, &root) in roots.iter().enumerate() {
            let n = i as u32 + 1;
            if m_abs == 1 {
                // the perturbative treatment does not apply to photons here;
                // emit the single uncorrected curve
                let index = ModeIndex::new(n, 1, 1)?;
                let pmode = ModeSolution::from_root(&photon, index, freq, root)?;
                let emode = ModeSolution::from_root(&electron, index, freq, root)?;
                rows.push(DispersionRow {
                    r,
                    lp_label: format!("LP1{n}"),
                    beta_photon: pmode.beta0,
                    beta_electron: emode.beta0,
                    beta0: pmode.beta0,
                    darwin: None,
                    so_signed: None,
                    corrected_exaggerated: pmode.beta0,
                    uncorrected: true,
                });
                continue;
            }
            for (m_ell, sigma) in family_labels(m_abs) {
                let index = ModeIndex::new(n, m_ell, sigma)?;
                let pmode = ModeSolution::from_root(&photon, index, freq, root)?;
                let emode = ModeSolution::from_root(&electron, index, freq, root)?;
                let pshift = diagonal_shift(&pmode, &step)?;
                let eshift = diagonal_shift(&emode, &step)?;
                let darwin = pshift.darwin / (2.0 * pmode.beta0);
                let so = pshift.spin_orbit / (2.0 * pmode.beta0);
                rows.push(DispersionRow {
                    r,
                    lp_label: pmode.index.lp_label(),
                    beta_photon: pmode.beta0 + pshift.delta_beta,
                    beta_electron: emode.beta0 + eshift.delta_beta,
                    beta0: pmode.beta0,
                    darwin: Some(darwin),
                    so_signed: Some(so),
                    corrected_exaggerated: pmode.beta0 + darwin + exaggeration * so,
                    uncorrected: false,
                });
            }
        }
    }
    Ok(rows)
}

/// The full dispersion dataset of the scenario sweep as CSV.
///
/// Sample points are evaluated concurrently (capped by
/// `ZITTERGUIDE_THREADS`); assembly is ordered by sample index so the
/// output is identical for any thread count.
pub fn cmd_dispersion(
    scenario: &Scenario,
    m_max: u32,
    exaggerate_override: Option<f64>,
) -> Result<String> {
    scenario.validate()?;
    let exaggeration = exaggerate_override.unwrap_or(scenario.exaggeration);
    if exaggeration < 1.0 {
        return Err(Error::Validation(format!(
            "exaggeration must be >= 1, got {exaggeration}"
        )));
    }
    let pool = thread_pool()?;
    let samples: Vec<u32> = (0..scenario.sweep.samples).collect();
    let per_sample: Vec<Result<Vec<DispersionRow>>> = pool.install(|| {
        samples
            .par_iter()
            .map(|&k| dispersion_rows_at(scenario, scenario.sweep_r(k), m_max, exaggeration))
            .collect()
    });
    let mut body = Vec::new();
    for rows in per_sample {
        for row in rows? {
            body.push(row.cells());
        }
    }
    Ok(csv_document(&DISPERSION_HEADER, &body))
}

// ---------------------------------------------------------------------------
// shifts
// ---------------------------------------------------------------------------

fn particle_config(scenario: &Scenario, particle: ParticleKind, r: f64) -> Result<ParticleConfig> {
    match particle {
        ParticleKind::Photon => scenario.photon_config_at(r),
        ParticleKind::Electron => scenario.electron_config_at(r),
    }
}

fn profile_for(ramp_width: Option<f64>) -> Result<Profile> {
    match ramp_width {
        None => Ok(Profile::step()),
        Some(w) => Profile::ramp(w),
    }
}

/// Shift breakdown, validity conditions, second-order size, and beat length
/// for one mode, as JSON.
#[allow(clippy::too_many_arguments)]
pub fn cmd_shifts(
    scenario: &Scenario,
    particle: ParticleKind,
    r: f64,
    n: u32,
    m_ell: i32,
    sigma: i32,
    n_max: u32,
    ramp_width: Option<f64>,
) -> Result<String> {
    let config = particle_config(scenario, particle, r)?;
    let mode = ModeSolution::solve(&config, ModeIndex::new(n, m_ell, sigma)?)?;
    let profile = profile_for(ramp_width)?;
    let shifts = diagonal_shift(&mode, &profile)?;
    let conditions = check_conditions(&mode, &profile, n_max)?;
    let second = second_order_shift(&mode, &profile, n_max)?;
    let report = ShiftReport {
        lp_label: mode.index.lp_label(),
        mode: mode.record(),
        beat_length: beat_length(&shifts).ok(),
        shifts,
        conditions,
        second_order_delta_beta_sq: second,
    };
    Ok(serde_json::to_string_pretty(&report)?)
}

// ---------------------------------------------------------------------------
// matrix
// ---------------------------------------------------------------------------

/// Perturbation matrix over |m_ell| <= m_max, n <= n_max.
#[allow(clippy::too_many_arguments)]
pub fn cmd_matrix(
    scenario: &Scenario,
    particle: ParticleKind,
    r: f64,
    m_max: u32,
    n_max: u32,
    ramp_width: Option<f64>,
    format: OutputFormat,
) -> Result<String> {
    let config = particle_config(scenario, particle, r)?;
    let profile = profile_for(ramp_width)?;
    let basis = RadialBasis::solve(&config, m_max, n_max)?;
    let matrix = assemble_matrix(&basis, &profile, m_max, n_max)?;
    match format {
        OutputFormat::Csv => Ok(matrix_csv(&matrix)),
        OutputFormat::Json => {
            let record = MatrixRecord::new(particle, waveguide_parameter(&config).value(), &matrix);
            Ok(serde_json::to_string_pretty(&record)?)
        }
    }
}

// ---------------------------------------------------------------------------
// dynamics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceDomain {
    /// Trace over axial distance z at t = 0.
    Z,
    /// Trace over time t at z = 0.
    T,
}

/// Bloch trajectory of a two-state superposition as CSV.
///
/// The trace spans `span` beat lengths (domain z) or full precession
/// periods 2 pi / |d omega| (domain t). Balanced in-phase photon SAM pairs
/// also get polarization columns.
#[allow(clippy::too_many_arguments)]
pub fn cmd_dynamics(
    scenario: &Scenario,
    particle: ParticleKind,
    r: f64,
    n: u32,
    m_ell: i32,
    sigma: i32,
    pair: PairKind,
    theta: f64,
    phi: f64,
    domain: TraceDomain,
    span: f64,
    samples: u32,
) -> Result<String> {
    if samples < 2 {
        return Err(Error::Validation("trace needs at least 2 samples".into()));
    }
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::Validation(format!(
            "trace span must be positive, got {span}"
        )));
    }
    let config = particle_config(scenario, particle, r)?;
    let mode = ModeSolution::solve(&config, ModeIndex::new(n, m_ell, sigma)?)?;
    let shifts = diagonal_shift(&mode, &Profile::step())?;
    let spec = SuperpositionSpec::new(mode.clone(), pair, theta, phi)?;

    let balanced_photon_sam = pair == PairKind::SamPair
        && particle == ParticleKind::Photon
        && (theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12
        && phi.abs() < 1e-12;

    let extent = match domain {
        TraceDomain::Z => span * beat_length(&shifts)?,
        TraceDomain::T => span * 2.0 * std::f64::consts::PI / delta_omega(&mode, &shifts),
    };
    let axis_name = match domain {
        TraceDomain::Z => "z",
        TraceDomain::T => "t",
    };
    let mut header = vec![
        axis_name,
        "bloch_x",
        "bloch_y",
        "bloch_z",
        "common_phase",
    ];
    if balanced_photon_sam {
        header.push("pol_x");
        header.push("pol_y");
    }
    let mut body = Vec::with_capacity(samples as usize);
    for k in 0..samples {
        let u = extent * k as f64 / (samples - 1) as f64;
        let state = match domain {
            TraceDomain::Z => evolve_z(&spec, &shifts, u)?,
            TraceDomain::T => evolve_t(&spec, &shifts, &mode, 0.0, u)?,
        };
        let mut cells = vec![
            fmt_f(u),
            fmt_f(state.bloch_vector[0]),
            fmt_f(state.bloch_vector[1]),
            fmt_f(state.bloch_vector[2]),
            fmt_f(state.accumulated_common_phase),
        ];
        if balanced_photon_sam {
            let z_equiv = match domain {
                TraceDomain::Z => u,
                TraceDomain::T => delta_omega(&mode, &shifts) / shifts.delta_beta_so * u,
            };
            let pol = polarization_vector(&spec, &shifts, z_equiv)?;
            cells.push(fmt_f(pol[0]));
            cells.push(fmt_f(pol[1]));
        }
        body.push(cells);
    }
    Ok(csv_document(&header, &body))
}

//! Thin CLI over the zitterguide library.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zitterguide::commands::{self, OutputFormat, TraceDomain};
use zitterguide::dynamics::PairKind;
use zitterguide::medium::ParticleKind;
use zitterguide::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "zitterguide",
    about = "Guided-mode dispersion and Darwin / spin-orbit corrections for electrons and photons in cylindrical step-profile waveguides",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Builtin scenario name (hene-smf) or path to a scenario JSON file.
    #[arg(long, default_value = "hene-smf")]
    scenario: String,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParticleArg {
    Photon,
    Electron,
}

impl From<ParticleArg> for ParticleKind {
    fn from(p: ParticleArg) -> Self {
        match p {
            ParticleArg::Photon => ParticleKind::Photon,
            ParticleArg::Electron => ParticleKind::Electron,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    Sam,
    Oam,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Z,
    T,
}

#[derive(Subcommand)]
enum Command {
    /// List all guided modes of both particles at a waveguide parameter R.
    Modes {
        #[command(flatten)]
        common: Common,
        /// Waveguide parameter R (defaults to the scenario's default_r).
        #[arg(long = "R")]
        r: Option<f64>,
        /// Largest |m_ell| to search.
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        /// Cap on the radial index n.
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Emit the dispersion dataset over the scenario's R sweep as CSV.
    Dispersion {
        #[command(flatten)]
        common: Common,
        /// Largest |m_ell| to include.
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        /// Override the scenario's spin-orbit exaggeration factor.
        #[arg(long = "exaggerate-so")]
        exaggerate_so: Option<f64>,
    },
    /// First-order shift breakdown and validity report for one mode (JSON).
    Shifts {
        #[command(flatten)]
        common: Common,
        #[arg(long = "R")]
        r: Option<f64>,
        #[arg(long, value_enum, default_value_t = ParticleArg::Photon)]
        particle: ParticleArg,
        /// Radial index n >= 1.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Orbital angular momentum m_ell (signed).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m_ell: i32,
        /// Spin / helicity, +1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sigma: i32,
        /// Radial basis depth for validity conditions and second order.
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        /// Replace the step with a linear ramp of this width.
        #[arg(long = "ramp-width")]
        ramp_width: Option<f64>,
    },
    /// Dump the perturbation matrix over |m_ell| <= m-max, n <= n-max.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long = "R")]
        r: Option<f64>,
        #[arg(long, value_enum, default_value_t = ParticleArg::Electron)]
        particle: ParticleArg,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        #[arg(long = "ramp-width")]
        ramp_width: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Bloch / polarization trace of a two-state superposition (CSV).
    Dynamics {
        #[command(flatten)]
        common: Common,
        #[arg(long = "R")]
        r: Option<f64>,
        #[arg(long, value_enum, default_value_t = ParticleArg::Photon)]
        particle: ParticleArg,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        m_ell: i32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sigma: i32,
        /// Which degenerate pair the superposition spans.
        #[arg(long, value_enum, default_value_t = PairArg::Sam)]
        pair: PairArg,
        /// Bloch polar angle Theta (radians).
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
        /// Bloch azimuth Phi (radians).
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Trace over axial distance (z) or time (t).
        #[arg(long, value_enum, default_value_t = DomainArg::Z)]
        domain: DomainArg,
        /// Extent in beat lengths (z) or precession periods (t).
        #[arg(long, default_value_t = 2.0)]
        span: f64,
        #[arg(long, default_value_t = 201)]
        samples: u32,
    },
}

fn scenario_r(scenario: &Scenario, r: Option<f64>) -> Result<f64, zitterguide::Error> {
    r.or(scenario.default_r).ok_or_else(|| {
        zitterguide::Error::Validation(
            "no --R given and the scenario has no default_r".to_string(),
        )
    })
}

fn run() -> Result<(), zitterguide::Error> {
    let cli = Cli::parse();
    let (common, text) = match cli.command {
        Command::Modes {
            common,
            r,
            m_max,
            n_max,
            format,
        } => {
            let scenario = Scenario::resolve(&common.scenario)?;
            let r = scenario_r(&scenario, r)?;
            let text = commands::cmd_modes(&scenario, r, m_max, n_max, format.into())?;
            (common, text)
        }
        Command::Dispersion {
            common,
            m_max,
            exaggerate_so,
        } => {
            let scenario = Scenario::resolve(&common.scenario)?;
            let text = commands::cmd_dispersion(&scenario, m_max, exaggerate_so)?;
            (common, text)
        }
        Command::Shifts {
            common,
            r,
            particle,
            n,
            m_ell,
            sigma,
            n_max,
            ramp_width,
        } => {
            let scenario = Scenario::resolve(&common.scenario)?;
            let r = scenario_r(&scenario, r)?;
            let text = commands::cmd_shifts(
                &scenario,
                particle.into(),
                r,
                n,
                m_ell,
                sigma,
                n_max,
                ramp_width,
            )?;
            (common, text)
        }
        Command::Matrix {
            common,
            r,
            particle,
            m_max,
            n_max,
            ramp_width,
            format,
        } => {
            let scenario = Scenario::resolve(&common.scenario)?;
            let r = scenario_r(&scenario, r)?;
            let text = commands::cmd_matrix(
                &scenario,
                particle.into(),
                r,
                m_max,
                n_max,
                ramp_width,
                format.into(),
            )?;
            (common, text)
        }
        Command::Dynamics {
            common,
            r,
            particle,
            n,
            m_ell,
            sigma,
            pair,
            theta,
            phi,
            domain,
            span,
            samples,
        } => {
            let scenario = Scenario::resolve(&common.scenario)?;
            let r = scenario_r(&scenario, r)?;
            let text = commands::cmd_dynamics(
                &scenario,
                particle.into(),
                r,
                n,
                m_ell,
                sigma,
                match pair {
                    PairArg::Sam => PairKind::SamPair,
                    PairArg::Oam => PairKind::OamPair,
                },
                theta,
                phi,
                match domain {
                    DomainArg::Z => TraceDomain::Z,
                    DomainArg::T => TraceDomain::T,
                },
                span,
                samples,
            )?;
            (common, text)
        }
    };
    match common.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

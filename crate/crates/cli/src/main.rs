mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unimus::{AlphaGrid, NoiseLevel, ProbDist};

use crate::report::Format;

/// Entropic uncertainty orders and minimum uncertainty states under noise.
///
/// Every command writes a metadata header (command, seed, alpha grid,
/// version, parameters) followed by a data table. Exit status is 2 for
/// usage errors and 1 when an input fails a numerical precondition.
#[derive(Debug, Parser)]
#[command(name = "unimus", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random draw; echoed in the output.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Renyi orders: `default` or a comma list such as `-inf,0,0.5,1,2,inf`.
    /// -inf, 0, 1/2, 1, 2 and +inf are always included.
    #[arg(long, global = true, value_parser = parse_grid)]
    pub alpha_grid: Option<AlphaGrid>,

    /// Output file. Without it, output goes to `<output-dir>/<command>.<ext>`
    /// when an output directory is set, and to stdout otherwise.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Default output directory.
    #[arg(long, global = true, env = "UNIMUS_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    /// Output format [default: json for `ensemble`, csv otherwise].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Renyi entropy of a distribution at every grid order.
    #[command(after_help = "CSV columns: alpha,entropy")]
    Entropy {
        #[arg(long, value_parser = parse_dist)]
        p: ProbDist,
    },

    /// Majorization and trumping verdicts for p relative to q.
    #[command(after_help = "CSV columns: family,relation,witness\n\
        family is `majorization` or `trumping`; the relation reads \"p is <relation> than q\".")]
    Order {
        #[arg(long, value_parser = parse_dist)]
        p: ProbDist,
        #[arg(long, value_parser = parse_dist)]
        q: ProbDist,
    },

    /// Least noise level after which H_alpha agrees with the H2 ordering.
    #[command(after_help = "CSV columns: alpha,threshold\n\
        threshold is `none` when H2(p) > H2(q). Without --alpha every finite grid order is used.")]
    Flip {
        #[arg(long, value_parser = parse_dist)]
        p: ProbDist,
        #[arg(long, value_parser = parse_dist)]
        q: ProbDist,
        /// A single finite order.
        #[arg(long)]
        alpha: Option<unimus::RenyiOrder>,
    },

    /// Qubit MUS position theta* for every grid order and purity level.
    #[command(
        after_help = "CSV columns: alpha,epsilon,purity,theta_min,entropy_value\n\
        epsilon runs over k/purity-steps for k = 0..purity-steps-1; purity = 1 - epsilon."
    )]
    QubitSweep {
        /// Angle between the two Bloch axes, in (0, pi/2).
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        gamma: f64,
        #[arg(long, default_value_t = 10)]
        purity_steps: usize,
    },

    /// Sign pattern of the qubit zeta function on theta in (0, pi/8].
    #[command(after_help = "CSV columns: alpha,theta,zeta (one row per violation)\n\
        Without --alpha-grid, alpha runs over [-30, 30] at step 1/4 without 0 and 1.")]
    ZetaCheck {
        #[arg(long, default_value_t = 1e-3)]
        theta_step: f64,
    },

    /// Overlap of the H2-optimal pure state with psi-infinity for Haar pairs.
    #[command(after_help = "CSV columns: pair,overlap\n\
        Summary: dimension, n_pairs, mean_overlap, min_overlap, seed.")]
    Ensemble {
        /// Hilbert-space dimension, 3 to 8.
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = unimus::mus::DEFAULT_RESTARTS)]
        restarts: usize,
    },

    /// Qutrit entropy profile: psi-infinity, eigenstate and optimum.
    #[command(after_help = "CSV columns: alpha,h_candidate,h_eigen,h_optimal\n\
        Without --alpha-grid, alpha runs over 0, 0.1, ..., 2.")]
    Fig3 {
        #[arg(long, value_parser = parse_noise, default_value = "0.25")]
        eps: NoiseLevel,
        #[arg(long, default_value_t = unimus::mus::DEFAULT_RESTARTS)]
        restarts: usize,
    },

    /// Counterexamples to psi-infinity being a universal MUS.
    #[command(after_help = "CSV columns: case,epsilon,order,h_witness,h_psi_inf\n\
        case `qubit-mub` compares the a_1 eigenstate under H1; \
        case `qutrit` compares the xi state under H_-inf.")]
    Nogo {
        /// Comma-separated noise levels.
        #[arg(long, value_parser = parse_list, default_value = "0.1,0.25,0.5,0.9")]
        eps: Reals,
    },

    /// Alpha-free energies of two energy-diagonal states.
    #[command(
        after_help = "CSV columns: alpha,free_energy_p,free_energy_q,threshold\n\
        threshold is the least eps after which F_alpha of the eps-thermal states \
        agrees with the F2 ordering (`none` if not found or not defined).\n\
        Summary: log_z, equilibrium_free_energy, p_thermo_majorizes_q, q_thermo_majorizes_p."
    )]
    Thermo {
        #[arg(long, value_parser = parse_list)]
        energies: Reals,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, value_parser = parse_dist)]
        p: ProbDist,
        #[arg(long, value_parser = parse_dist)]
        q: ProbDist,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Entropy { .. } => "entropy",
            Command::Order { .. } => "order",
            Command::Flip { .. } => "flip",
            Command::QubitSweep { .. } => "qubit-sweep",
            Command::ZetaCheck { .. } => "zeta-check",
            Command::Ensemble { .. } => "ensemble",
            Command::Fig3 { .. } => "fig3",
            Command::Nogo { .. } => "nogo",
            Command::Thermo { .. } => "thermo",
        }
    }
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

fn parse_list(s: &str) -> Result<Reals, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<_, _>>()
        .map(Reals)
}

fn parse_dist(s: &str) -> Result<ProbDist, String> {
    ProbDist::new(parse_list(s)?.0).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> Result<AlphaGrid, String> {
    AlphaGrid::parse(s).map_err(|e| e.to_string())
}

fn parse_noise(s: &str) -> Result<NoiseLevel, String> {
    let e = s.trim().parse::<f64>().map_err(|e| e.to_string())?;
    NoiseLevel::new(e).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let name = cli.command.name();
    let format = cli.global.format.unwrap_or(if name == "ensemble" {
        Format::Json
    } else {
        Format::Csv
    });
    let text = report.render(format);
    let path = cli.global.output.clone().or_else(|| {
        cli.global
            .output_dir
            .as_ref()
            .map(|d| d.join(format!("{name}.{}", format.extension())))
    });
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

//! `reltwist`: verification suites, cohomology tables, twist builds, gauge
//! checks and Harish-Chandra projections from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a mathematical check
//! fails and 2 on a usage error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser)]
#[command(name = "reltwist", version, about = "Relative twists of semisimple Lie algebras in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for independent checks.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Omit wall-clock timings so reports are byte-deterministic.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Args, Clone)]
pub struct Target {
    /// Cartan type, e.g. A2, B2, A1xA1.
    #[arg(long = "type", value_name = "TYPE")]
    pub cartan_type: String,
    /// Subdiagram as comma-separated 1-based nodes; empty for the empty diagram.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub subdiagram: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LadderArg {
    Pairs,
    Single,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Pi,
    Pibar,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity suite for (g, D).
    Verify {
        #[command(flatten)]
        target: Target,
        /// Truncation order for the associator checks (at most 3).
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Random instances per randomized suite.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology of the perturbed complex on (Λg)^{g_D} against the prediction.
    Cohomology {
        #[command(flatten)]
        target: Target,
        /// Highest degree computed.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build a relative twist and write it as a JSON artifact.
    Build {
        #[command(flatten)]
        target: Target,
        /// Truncation order N (built-in associator: N ≤ 3).
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Initial degree cap of the Hochschild solves (default max(deg ξ, 2n)).
        #[arg(long)]
        degree_cap: Option<u32>,
        /// Highest degree cap reached by escalation (default 4n).
        #[arg(long)]
        degree_ceiling: Option<u32>,
        /// Produce a twist with F^Θ = F^{21}.
        #[arg(long)]
        theta: bool,
        /// Chain of subdiagrams between the full diagram and D.
        #[arg(long, value_enum, default_value_t = LadderArg::Pairs)]
        ladder: LadderArg,
        /// Associator JSON; the built-in one is used when absent.
        #[arg(long)]
        phi: Option<PathBuf>,
        /// Twist artifact path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Find a gauge witness between two twist artifacts.
    GaugeCheck {
        f1: PathBuf,
        f2: PathBuf,
        /// Require u^Θ = u and λ = 0.
        #[arg(long)]
        theta: bool,
        /// Require π̄_D of every positive-order coefficient of u to vanish.
        #[arg(long)]
        hc_normalized: bool,
        /// Witness artifact path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Apply π_D or π̄_D to a tensor element.
    Project {
        input: PathBuf,
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = VariantArg::Pibar)]
        variant: VariantArg,
        /// Output element path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, common) = match cli.command {
        Command::Verify { target, order, samples, seed, common } => {
            (commands::verify(&target, order, samples, seed, common.jobs), common)
        }
        Command::Cohomology { target, max_degree, common } => (commands::cohomology(&target, max_degree), common),
        Command::Build { target, order, degree_cap, degree_ceiling, theta, ladder, phi, out, common } => {
            let b = commands::BuildArgs { order, degree_cap, degree_ceiling, theta, ladder, phi, out };
            (commands::build(&target, &b), common)
        }
        Command::GaugeCheck { f1, f2, theta, hc_normalized, out, common } => {
            (commands::gauge_check(&f1, &f2, theta, hc_normalized, out.as_deref()), common)
        }
        Command::Project { input, target, variant, out, common } => {
            (commands::project(&input, &target, variant, out.as_deref()), common)
        }
    };
    match outcome {
        Ok(report) => {
            print!("{}", report.render(common.format, !common.no_timings));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(usage) => {
            eprintln!("error: {usage}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tripartite_core::measurement::{BlochAngles, CosenderBasis};
use tripartite_core::report::{
    optimize_report, run_report, search_report, table_report, Format, MonteCarloOptions, ReportDocument, RunOptions,
    DEFAULT_MC_SAMPLES,
};
use tripartite_core::{CorrectionTable, RoleAssignment, Scenario, StateTypeId};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;

/// Three-party teleportation: fidelities, best measurement conditions and
/// exhaustive correction-table search.
#[derive(Debug, Parser)]
#[command(name = "tripartite", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one configuration: all eight branches plus the three averages.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Protocol name (GHZ, W-I, W-II) or eight Pauli labels such as IZXY/ZIYX.
        #[arg(long)]
        protocol: CorrectionTable,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, allow_negative_numbers = true)]
        kappa: f64,
        /// Polar angle of the information state used for the branch listing.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// Read all angles in degrees.
        #[arg(long)]
        degrees: bool,
        #[command(flatten)]
        mc: McArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every reference row with computed and reference values side by side.
    Table {
        #[command(flatten)]
        mc: McArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep all 65,536 correction tables for one scenario.
    Search {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form fidelity and its maximizing co-sender basis.
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        protocol: CorrectionTable,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Resource state tag, e.g. 2b, 3bI, 4bI, 5, W-std.
    #[arg(long)]
    state: StateTypeId,
    /// Sender, co-sender and receiver, e.g. B,A,C.
    #[arg(long)]
    roles: RoleAssignment,
}

impl ScenarioArgs {
    fn scenario(&self) -> Scenario {
        Scenario::new(self.state, self.roles)
    }
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
    mc_samples: usize,
}

impl McArgs {
    fn options(&self) -> MonteCarloOptions {
        MonteCarloOptions {
            samples: self.mc_samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value = "json")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build(command: &Command) -> tripartite_core::Result<ReportDocument> {
    match command {
        Command::Run {
            scenario,
            protocol,
            nu,
            kappa,
            theta,
            phi,
            degrees,
            mc,
            ..
        } => {
            let conv = |x: f64| if *degrees { x.to_radians() } else { x };
            let opts = RunOptions {
                basis: CosenderBasis::new(conv(*nu), conv(*kappa)),
                info: BlochAngles::new(conv(*theta), conv(*phi)),
                mc: mc.options(),
            };
            run_report(&scenario.scenario(), protocol, opts)
        }
        Command::Table { mc, .. } => table_report(mc.options()),
        Command::Search { scenario, .. } => search_report(&scenario.scenario()),
        Command::Optimize { scenario, protocol, .. } => optimize_report(&scenario.scenario(), protocol),
    }
}

fn output(command: &Command) -> &OutputArgs {
    match command {
        Command::Run { output, .. }
        | Command::Table { output, .. }
        | Command::Search { output, .. }
        | Command::Optimize { output, .. } => output,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match build(&cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let out = output(&cli.command);
    let text = match doc.render(out.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    match &out.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_IO);
            }
        }
        None => print!("{text}"),
    }
    if doc.is_ok() {
        ExitCode::SUCCESS
    } else {
        eprintln!("validation failed; see row flags");
        ExitCode::from(EXIT_VALIDATION)
    }
}

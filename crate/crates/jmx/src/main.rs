use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jmx::session::{Session, SessionConfig};

#[derive(Parser)]
#[command(name = "jmx", version, about = "Exact j-multiplicity computations over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Execute a session script; one JSON report per command on stdout,
    /// human-readable summaries on stderr.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// The script file.
    script: PathBuf,
    /// Field characteristic (a prime).
    #[arg(long = "char", default_value_t = jmx::field::DEFAULT_MODULUS)]
    characteristic: u64,
    /// Base seed; samples use seed, seed+1, ... (env JMX_SEED overrides).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of general-element samples per computation.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Truncation of the definitional oracle.
    #[arg(long = "nmax", default_value_t = 6)]
    n_max: u32,
    /// Report the minimal finite sample value instead of requiring
    /// unanimous agreement.
    #[arg(long)]
    min: bool,
    /// Suppress the human-readable summary on stderr.
    #[arg(long)]
    json_only: bool,
    /// Abort basis computations above this weighted degree.
    #[arg(long)]
    degree_cap: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Commands::Run(args) => run(args),
    }
}

fn run(args: RunArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.script) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("jmx: cannot read {}: {e}", args.script.display());
            return ExitCode::from(2);
        }
    };
    let seed = match std::env::var("JMX_SEED") {
        Ok(v) => match v.parse() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("jmx: JMX_SEED must be an integer, got `{v}`");
                return ExitCode::from(2);
            }
        },
        Err(_) => args.seed,
    };
    let config = SessionConfig {
        modulus: args.characteristic,
        seed,
        samples: args.samples,
        n_max: args.n_max,
        min_policy: args.min,
        degree_cap: args.degree_cap,
    };
    let mut session = match Session::new(config) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("jmx: {e}");
            return ExitCode::from(2);
        }
    };
    let outcomes = match session.execute_script(&text) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("jmx: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut all_ok = true;
    for outcome in &outcomes {
        writeln!(out, "{}", outcome.json).expect("stdout");
        if !args.json_only {
            eprintln!("{}", outcome.summary);
        }
        all_ok &= outcome.ok;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

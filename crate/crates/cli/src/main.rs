use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mobius_cli::{
    budget_from, cmd_equations, cmd_fans, cmd_flats, cmd_matching, cmd_ratio_sweep, cmd_verify,
    load, CliError, Loaded, Report, Source, Suite, BUDGET_ENV, DEFAULT_LISTING_LIMIT,
};

#[derive(Parser)]
#[command(name = "mobius-lab", version, about = "Exact checks on lattices of flats, Möbius algebras and Chow rings of matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,

    /// Cap on flats and enumerated subsets.
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<usize>,

    /// Include wall-clock time in the report (breaks reproducibility).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct MatroidArgs {
    /// Matroid description in JSON.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    input: Option<PathBuf>,

    /// Name of a built-in matroid.
    #[arg(long)]
    catalog: Option<String>,

    /// Remove loops and parallel elements before constructing.
    #[arg(long)]
    simplify: bool,
}

impl MatroidArgs {
    fn load(&self) -> Result<Loaded, CliError> {
        let source = match (&self.input, &self.catalog) {
            (Some(path), _) => Source::File(path.clone()),
            (None, Some(name)) => Source::Catalog(name.clone()),
            (None, None) => unreachable!("clap enforces one source"),
        };
        load(&source, self.simplify)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate flats and Whitney numbers.
    Flats {
        #[command(flatten)]
        matroid: MatroidArgs,
        /// Omit the flat listing above this many flats.
        #[arg(long, default_value_t = DEFAULT_LISTING_LIMIT)]
        max_listing: usize,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        matroid: MatroidArgs,
        /// Comma-separated suites: hl, topheavy, hvector, hr, chow.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Cap on chain monomials per Chow ring degree.
        #[arg(long)]
        chow_budget: Option<usize>,
    },
    /// Extract a containment-respecting injection L^p -> L^(r-q).
    Matching {
        #[command(flatten)]
        matroid: MatroidArgs,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Simplex, cube and permutohedral fan checks.
    Fans {
        #[arg(long)]
        n: usize,
    },
    /// Circuit equations of the linear realization.
    Equations {
        #[command(flatten)]
        matroid: MatroidArgs,
    },
    /// Correlation ratios across the catalog.
    RatioSweep {
        /// Restrict to one catalog entry.
        #[arg(long)]
        catalog: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let budget = budget_from(cli.budget, None);
    match &cli.command {
        Command::Flats { matroid, max_listing } => cmd_flats(&matroid.load()?, &budget, *max_listing),
        Command::Verify { matroid, suite, chow_budget } => {
            let suites = if suite.is_empty() {
                Suite::DEFAULT.to_vec()
            } else {
                suite.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
            };
            let budget = budget_from(cli.budget, *chow_budget);
            cmd_verify(&matroid.load()?, &suites, &budget)
        }
        Command::Matching { matroid, p, q } => cmd_matching(&matroid.load()?, *p, *q, &budget),
        Command::Fans { n } => cmd_fans(*n, &budget),
        Command::Equations { matroid } => cmd_equations(&matroid.load()?, &budget),
        Command::RatioSweep { catalog } => cmd_ratio_sweep(catalog.as_deref(), &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let text = if cli.table {
                report.to_table()
            } else {
                report.to_json() + "\n"
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodgering_cli::commands::{
    cmd_criteria, cmd_hypersurface, cmd_local, parse_input, parse_rationals, read_text,
    LocalOptions,
};
use hodgering_cli::regress::{
    compare, observations, parse_expectations, BUILTIN_EXPECTATIONS, GAP_NOTE,
};
use hodgering_cli::report::render_text;
use hodgering_cli::{Failure, ReportDocument};
use hodgering_core::criteria::Catalog;
use hodgering_core::jacglobal::parse_singular_points;
use hodgering_core::local::TauMinSearch;
use hodgering_core::poly::Polynomial;

/// Exact invariants of isolated hypersurface singularities.
///
/// Exit codes: 0 success, 1 regression mismatch or other failure, 2 bad
/// input, 3 non-isolated singularity, 4 point is not a singular point,
/// 5 incomplete singular list, 6 H^0 of logarithmic forms is nonzero.
#[derive(Parser)]
#[command(name = "hodgering", version)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "HODGERING_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolySource {
    /// File holding the polynomial.
    file: Option<PathBuf>,
    /// The polynomial itself, instead of a file.
    #[arg(short = 'e', long, conflicts_with = "file")]
    expr: Option<String>,
    /// Variable names in order, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

impl PolySource {
    fn load(&self) -> Result<(Polynomial, Vec<String>), Failure> {
        let text = match (&self.file, &self.expr) {
            (_, Some(e)) => e.clone(),
            (Some(path), None) => read_text(path)?,
            (None, None) => return Err(Failure::Parse("give a polynomial file or --expr".into())),
        };
        parse_input(&text, self.vars.clone())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Milnor and Tjurina numbers, spectrum and class test of a germ.
    Local {
        #[command(flatten)]
        source: PolySource,
        /// Base point, comma-separated rationals; the origin by default.
        #[arg(long)]
        point: Option<String>,
        /// Weights of a quasi-homogeneous principal part, for germs that are
        /// not themselves quasi-homogeneous.
        #[arg(long)]
        weights: Option<String>,
        /// Run the randomized minimal-Tjurina search.
        #[arg(long)]
        tau_min: bool,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// Spectrum and induced V-filtration degrees of a quasi-homogeneous germ.
    Spectrum {
        #[command(flatten)]
        source: PolySource,
        #[arg(long)]
        point: Option<String>,
    },
    /// Jacobian ring, evaluation map and Euler characteristics of a
    /// projective hypersurface.
    Hypersurface {
        #[command(flatten)]
        source: PolySource,
        /// Singular points, one `chart=<i>; coords=<q,...>` per line.
        #[arg(long)]
        sing_file: Option<PathBuf>,
        /// Also report dim R_k for this degree; repeatable.
        #[arg(long = "degree")]
        degrees: Vec<i64>,
    },
    /// Class tests over the singularity catalog.
    Criteria {
        /// Entries to check; all by default.
        names: Vec<String>,
        /// Catalog file replacing the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Recompute the reference example values and compare.
    Regress {
        /// Expectations file replacing the built-in one.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe is not an error.
fn write_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn emit(doc: &ReportDocument, json: bool) {
    if json {
        write_out(&(serde_json::to_string_pretty(doc).expect("report serializes") + "\n"));
    } else {
        write_out(&render_text(doc));
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let points = |p: &Option<String>| {
        p.as_deref()
            .map(|s| parse_rationals(s, "--point"))
            .transpose()
    };
    match cli.command {
        Command::Local {
            source,
            point,
            weights,
            tau_min,
            samples,
        } => {
            let (f, vars) = source.load()?;
            let opts = LocalOptions {
                point: points(&point)?,
                reference_weights: weights
                    .as_deref()
                    .map(|s| parse_rationals(s, "--weights"))
                    .transpose()?,
                tau_min: tau_min.then_some(TauMinSearch {
                    samples,
                    seed: cli.seed,
                    ..TauMinSearch::default()
                }),
                filtration: false,
            };
            emit(&cmd_local(&f, &vars, "local", &opts)?, cli.json);
        }
        Command::Spectrum { source, point } => {
            let (f, vars) = source.load()?;
            let opts = LocalOptions {
                point: points(&point)?,
                reference_weights: None,
                tau_min: None,
                filtration: true,
            };
            emit(&cmd_local(&f, &vars, "spectrum", &opts)?, cli.json);
        }
        Command::Hypersurface {
            source,
            sing_file,
            degrees,
        } => {
            let (f, vars) = source.load()?;
            let pts = match &sing_file {
                Some(path) => parse_singular_points(&read_text(path)?)
                    .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?,
                None => Vec::new(),
            };
            emit(&cmd_hypersurface(&f, &vars, &pts, &degrees)?, cli.json);
        }
        Command::Criteria { names, catalog } => {
            let catalog = match &catalog {
                Some(path) => Catalog::from_toml(&read_text(path)?)
                    .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?,
                None => Catalog::builtin(),
            };
            emit(&cmd_criteria(&catalog, &names)?, cli.json);
        }
        Command::Regress { expect } => {
            let text = match &expect {
                Some(path) => read_text(path)?,
                None => BUILTIN_EXPECTATIONS.to_string(),
            };
            let expected = parse_expectations(&text)?;
            let report = compare(cli.seed, observations(cli.seed)?, &expected);
            if report.cases.iter().any(|c| c.key.ends_with(".gaps")) {
                eprintln!("{GAP_NOTE}");
            }
            if cli.json {
                write_out(
                    &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"),
                );
            } else {
                write_out(&report.render_text());
            }
            if report.failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("hodgering: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use milnorkit::dwyer::{check_surgery, SurgeryPresentation};
use milnorkit::magnus::magnus_expand;
use milnorkit::milnor::milnor_table;
use milnorkit::{
    band_sum_bound, dwyer_number, knotification_bound, parse_pd, parse_word, Error, Guards,
    MinWeight, Series,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "milnorkit",
    version,
    about = "Milnor invariants of links and Dwyer numbers of knots"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Highest weight computed
    #[arg(long, global = true, env = "MILNORKIT_CAP", default_value_t = milnorkit::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest number of terms allowed in one series
    #[arg(long, global = true, default_value_t = Guards::default().max_terms)]
    guard_terms: usize,
    /// Longest free word allowed during substitution
    #[arg(long, global = true, default_value_t = Guards::default().max_letters)]
    guard_letters: usize,
    /// Report timings on stderr
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Magnus expansion of a word, e.g. "x1 x2 x1^-1 x2^-1"
    Magnus {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        vars: usize,
    },
    /// Milnor invariants of a PD diagram file
    Mu { file: PathBuf },
    /// Dwyer number of a surgery presentation file
    Dwyer { file: PathBuf },
    /// Lower bounds from knotification or interior band sums
    Bounds {
        /// Components n and first non-vanishing weight q
        #[arg(long, num_args = 2, value_names = ["N", "Q"], conflicts_with = "bands", required_unless_present = "bands")]
        knotify: Option<Vec<usize>>,
        /// First non-vanishing weight r and number of bands k
        #[arg(long, num_args = 2, value_names = ["R", "K"])]
        bands: Option<Vec<usize>>,
    },
    /// Check a diagram, or the hypotheses of a surgery presentation
    Validate { file: PathBuf },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(format: Format, table: String, value: Value) {
    match format {
        Format::Table => print!("{table}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        ),
    }
}

fn min_weight_json(w: MinWeight) -> Value {
    match w {
        MinWeight::Exact(q) => json!(q),
        MinWeight::AtLeast(_) => Value::Null,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    if g.cap < 2 {
        return Err(
            Error::InvalidArgument(format!("--cap must be at least 2, got {}", g.cap)).into(),
        );
    }
    if g.guard_terms == 0 || g.guard_letters == 0 {
        return Err(Error::InvalidArgument("guards must be positive".into()).into());
    }
    let guards = Guards {
        max_letters: g.guard_letters,
        max_terms: g.guard_terms,
    };
    let started = Instant::now();
    match cli.command {
        Command::Magnus { word, vars } => {
            let w = parse_word(&word, vars)?;
            let s: Series = magnus_expand(&w, vars.max(1), g.cap)?;
            let min = match s.min_nonzero_weight() {
                Some(q) => MinWeight::Exact(q),
                None => MinWeight::AtLeast(g.cap + 1),
            };
            let lines = s.to_lines();
            let mut table = String::new();
            for l in &lines {
                table.push_str(l);
                table.push('\n');
            }
            table.push_str(&format!("min weight: {min}\n"));
            emit(
                g.format,
                table,
                json!({
                    "series": lines,
                    "depth_cap": g.cap,
                    "min_nonzero_weight": min_weight_json(min),
                }),
            );
        }
        Command::Mu { file } => {
            let d = parse_pd(&read(&file)?)?;
            let t = milnor_table(&d, g.cap, &guards)?;
            let mut table = String::new();
            match t.first_nonvanishing {
                MinWeight::Exact(q) => {
                    table.push_str(&format!("first non-vanishing weight: {q}\n"));
                    let witnesses: Vec<String> =
                        t.witnesses().iter().map(|v| v.index.to_string()).collect();
                    table.push_str(&format!("witnesses: {}\n", witnesses.join(" ")));
                    for v in t.weight(q) {
                        table.push_str(&format!("{v}\n"));
                    }
                }
                MinWeight::AtLeast(_) => {
                    table.push_str(&format!(
                        "all mu-bar invariants vanish up to weight {}\n",
                        g.cap
                    ));
                }
            }
            emit(g.format, table, t.to_json());
        }
        Command::Dwyer { file } => {
            let s = SurgeryPresentation::parse(&read(&file)?)?;
            let r = dwyer_number(&s, g.cap, &guards)?;
            let mut table = format!("{}\n", r.summary());
            for v in &r.witnesses {
                table.push_str(&format!("{v}\n"));
            }
            emit(g.format, table, r.to_json());
        }
        Command::Bounds { knotify, bands } => {
            if let Some(v) = knotify {
                let b = knotification_bound(v[0], v[1])?;
                emit(
                    g.format,
                    format!("{b}\n"),
                    json!({ "knotification_bound": b }),
                );
            } else if let Some(v) = bands {
                let b = band_sum_bound(v[0], v[1])?;
                emit(
                    g.format,
                    format!("weight > {b}\n"),
                    json!({ "band_sum_bound": b }),
                );
            }
        }
        Command::Validate { file } => {
            let text = read(&file)?;
            let raw: Value = serde_json::from_str(&text).map_err(Error::from)?;
            let surgery = ["knot_component", "surgered", "unlink_assertion"]
                .iter()
                .any(|k| raw.get(k).is_some());
            if surgery {
                let s = SurgeryPresentation::parse(&text)?;
                let report = check_surgery(&s, g.cap, &guards)?;
                let mut table = String::new();
                for c in &report.checks {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    table.push_str(&format!("{mark}  {}: {}\n", c.condition, c.detail));
                }
                emit(g.format, table, report.to_json());
                if let Some(c) = report.first_failure() {
                    return Err(Error::Hypothesis {
                        condition: c.condition.clone(),
                        detail: c.detail.clone(),
                    }
                    .into());
                }
            } else {
                let d = parse_pd(&text)?;
                let lk = d.linking_matrix();
                let mut table = format!(
                    "valid diagram: {} components, {} crossings\n",
                    d.n_components(),
                    d.n_crossings()
                );
                for row in &lk {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                    table.push_str(&format!("{}\n", cells.join(" ")));
                }
                emit(
                    g.format,
                    table,
                    json!({
                        "components": d.n_components(),
                        "crossings": d.n_crossings(),
                        "zero_crossing_components": d.zero_crossing_components(),
                        "linking_numbers": lk,
                    }),
                );
            }
        }
    }
    if g.verbose > 0 {
        eprintln!("done in {:.3?}", started.elapsed());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Hypothesis { .. } => 3,
                Error::Resource { .. } | Error::Overflow => 4,
                _ => 2,
            })
        }
    }
}

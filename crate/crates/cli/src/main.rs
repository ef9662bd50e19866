use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use planefol_cli::report::render_text;
use planefol_cli::{parse_poly, run, CliError, Command, FieldSpec};
use serde_json::json;

/// Exact analysis of planar polynomial vector fields.
///
/// Exit status: 0 on success, 2 when a budget or step cap left the answer
/// undetermined, 1 on error.
#[derive(Parser)]
#[command(name = "planefol", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML field file (p, q, optional [[germ]] and [params]).
    #[arg(long, global = true)]
    field: Option<PathBuf>,
    /// P, the x-component, when no field file is given.
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<String>,
    /// Q, the y-component.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Emit JSON (rationals as "num/den" strings).
    #[arg(long, global = true)]
    json: bool,
    /// Omit the timing section, leaving only the canonical report.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Gröbner reduction steps per solve [default: 200000].
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Terms held by the extactic elimination [default: 5000000].
    #[arg(long, global = true)]
    extactic_budget: Option<usize>,
    /// Blow-ups per base point [default: 64].
    #[arg(long, global = true)]
    step_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singular points with multiplicities, including points at infinity.
    Singular,
    /// Invariant algebraic curves of bounded degree, with cofactors.
    Invariants {
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Rational first integrals: pencil search and extactic test per degree.
    FirstIntegral {
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Resolve the germs of the field file by blowing up.
    Resolve {
        /// Write the resolution tree as Graphviz DOT ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Degree bounds, from `--d` and `--n-list` or from the germs.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        /// Comma- or space-separated discrepancies, e.g. "3,1".
        #[arg(long, allow_hyphen_values = true)]
        n_list: Option<String>,
    },
    /// Check that f = 0 is invariant and report its cofactor.
    Verify {
        #[arg(short, long, allow_hyphen_values = true)]
        f: String,
    },
}

fn load_spec(c: &Common) -> Result<Option<FieldSpec>, CliError> {
    let mut spec = match (&c.field, &c.p, &c.q) {
        (Some(path), None, None) => FieldSpec::from_toml(&std::fs::read_to_string(path)?)?,
        (None, Some(p), Some(q)) => FieldSpec::from_exprs(p, q)?,
        (None, None, None) => return Ok(None),
        (Some(_), _, _) => return Err(CliError::Input("use either --field or --p/--q, not both".into())),
        _ => return Err(CliError::Input("--p and --q must be given together".into())),
    };
    if let Some(b) = c.budget {
        spec.params.budget = b;
    }
    if let Some(b) = c.extactic_budget {
        spec.params.extactic_budget = b;
    }
    if let Some(s) = c.step_cap {
        spec.params.step_cap = s;
    }
    Ok(Some(spec))
}

fn parse_n_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Input(format!("`{s}` in --n-list is not an integer")))
        })
        .collect()
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    let common = &cli.common;
    let start = Instant::now();
    let spec = load_spec(common)?;
    let default_degree = spec.as_ref().map_or(2, |s| s.params.max_degree);
    let mut dot_path = None;
    let command = match cli.command {
        Cmd::Singular => Command::Singular,
        Cmd::Invariants { max_degree } => Command::Invariants {
            max_degree: max_degree.unwrap_or(default_degree),
        },
        Cmd::FirstIntegral { max_degree } => Command::FirstIntegral {
            max_degree: max_degree.unwrap_or(default_degree),
        },
        Cmd::Resolve { dot } => {
            dot_path = dot;
            Command::Resolve
        }
        Cmd::Bounds { d, n_list } => match (d, n_list) {
            (Some(d), n) => Command::Bounds {
                explicit: Some((d, parse_n_list(n.as_deref().unwrap_or(""))?)),
            },
            (None, None) => Command::Bounds { explicit: None },
            (None, Some(_)) => return Err(CliError::Input("--n-list needs --d".into())),
        },
        Cmd::Verify { f } => Command::Verify {
            f: parse_poly(&f).map_err(|e| e.context("-f"))?,
        },
    };
    let report = run(&command, spec.as_ref())?;
    if let (Some(path), Some(dot)) = (&dot_path, &report.dot) {
        if path.as_os_str() == "-" {
            print!("{dot}");
            return Ok(report.status.exit_code());
        }
        std::fs::write(path, dot)?;
    }
    let elapsed_ms = start.elapsed().as_millis() as u64;
    if common.json {
        let mut out = json!({"report": report.body});
        if !common.no_timing {
            out["timing"] = json!({"elapsed_ms": elapsed_ms});
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        print!("{}", render_text(&report.body));
        if !common.no_timing {
            println!("timing:\n  elapsed_ms: {elapsed_ms}");
        }
    }
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error [{}]: {e}", e.layer());
            ExitCode::from(1)
        }
    }
}

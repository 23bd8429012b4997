//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::braid::{expand_quasipositive, to_grid, BraidWord, QuasipositiveWord};
use crate::error::Error;
use crate::grid::GridDiagram;
use crate::invariants::{compute, compute_grid, ComputeOptions, Input, InvariantReport};
use crate::verify::{run_suite, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Largest grid accepted on the command line.
pub const MAX_GRID_FLAG: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "gridtau",
    version,
    about = "Concordance invariants of links from grid homology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the invariant report for one input.
    Compute {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Include the graded homology table, δ-grading and symmetry checks.
        #[arg(long)]
        assoc_graded: bool,
        /// Cross-check the levels against the rank-jump formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random cases, overriding the suite default.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the grid file for a braid or quasipositive word.
    Convert {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Braid word, e.g. "2: 1 1 1".
    #[arg(long)]
    pub braid: Option<String>,
    /// Quasipositive word, e.g. "3: (2 | 1) (| 2)".
    #[arg(long)]
    pub qp: Option<String>,
    /// Grid file.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Built-in fixture name.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, default_value_t = crate::chain::DEFAULT_MAX_SIZE, value_parser = parse_max_grid)]
    pub max_grid: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "GRIDTAU_THREADS")]
    pub threads: Option<usize>,
}

fn parse_max_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("'{s}' is not a grid size"))?;
    if (2..=MAX_GRID_FLAG).contains(&n) {
        Ok(n)
    } else {
        Err(format!("grid size must lie in 2..={MAX_GRID_FLAG}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_of(source: &Source) -> Result<Input, Failure> {
    if let Some(b) = &source.braid {
        return Ok(Input::Braid(b.parse::<BraidWord>()?));
    }
    if let Some(q) = &source.qp {
        return Ok(Input::Quasipositive(q.parse::<QuasipositiveWord>()?));
    }
    if let Some(name) = &source.fixture {
        return Ok(Input::Fixture(name.clone()));
    }
    let path = source.grid.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(Input::Grid(GridDiagram::parse(&text)?))
}

fn set_threads(threads: Option<usize>) {
    if let Some(n) = threads.filter(|&n| n > 0) {
        // a second call fails harmlessly when the pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Fixed-width report, τ-function rows sorted by `k` descending.
pub fn render_table(r: &InvariantReport) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut s = String::new();
    let rows = [
        ("input", r.input.clone()),
        ("grid size", r.grid_size.to_string()),
        ("components", r.components.to_string()),
        ("total homology rank", r.total_homology_rank.to_string()),
        ("tau_top", r.tau_top.to_string()),
        ("tau_bot", r.tau_bot.to_string()),
        ("signature", opt(r.signature.map(|v| v.to_string()))),
        ("slice genus bound", r.slice_genus_lower_bound.to_string()),
        (
            "euler char bound",
            opt(r.euler_char_bound.map(|v| v.to_string())),
        ),
        ("delta", opt(r.delta.map(|v| v.to_string()))),
    ];
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<22}{v}");
    }
    let _ = writeln!(s, "\n{:>8}  levels", "k");
    for e in &r.tau_function {
        let levels: Vec<String> = e.levels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(s, "{:>8}  {}", e.k.to_string(), levels.join(" "));
    }
    if let Some(table) = &r.bigraded_homology {
        let _ = writeln!(s, "\n{:>8}{:>8}{:>8}", "maslov", "alex", "rank");
        for g in table {
            let _ = writeln!(
                s,
                "{:>8}{:>8}{:>8}",
                g.maslov,
                g.alexander.to_string(),
                g.rank
            );
        }
    }
    let _ = writeln!(s, "\n{:<22}{:<9}detail", "check", "status");
    for c in &r.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        let _ = writeln!(
            s,
            "{:<22}{:<9}{}",
            c.name,
            status.as_str().unwrap_or("?"),
            c.detail
        );
    }
    s
}

fn cmd_compute(
    source: &Source,
    common: &Common,
    format: Format,
    assoc_graded: bool,
    oracle: bool,
) -> Result<String, Failure> {
    let input = input_of(source)?;
    let opts = ComputeOptions {
        max_grid: common.max_grid,
        check_square: true,
        cross_check: oracle,
        assoc_graded,
    };
    let report = match (&input, &source.grid) {
        (Input::Grid(g), Some(path)) => {
            compute_grid(&format!("grid {}", path.display()), g, &opts)?
        }
        _ => compute(&input, &opts)?,
    };
    Ok(match format {
        Format::Json => report.to_json() + "\n",
        Format::Table => render_table(&report),
    })
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    samples: Option<usize>,
    common: &Common,
) -> Result<String, Failure> {
    let suite: Suite = suite.parse()?;
    let cfg = VerifyConfig {
        seed,
        max_grid: common.max_grid,
        samples,
    };
    let reports = run_suite(suite, &cfg);
    let mut out = String::new();
    for r in &reports {
        for line in r.lines() {
            out.push_str(&line);
            out.push('\n');
        }
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: out,
        })
    }
}

fn cmd_convert(source: &Source) -> Result<String, Failure> {
    let word = match input_of(source)? {
        Input::Braid(w) => w,
        Input::Quasipositive(q) => expand_quasipositive(&q)?,
        _ => {
            return Err(Failure {
                code: EXIT_INPUT,
                message: "convert takes --braid or --qp".into(),
            })
        }
    };
    Ok(to_grid(&word).to_string())
}

/// Runs the parsed command; returns standard output, standard error and the exit code.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    let result = match &cli.command {
        Command::Compute {
            source,
            common,
            format,
            assoc_graded,
            oracle,
        } => {
            set_threads(common.threads);
            cmd_compute(source, common, *format, *assoc_graded, *oracle)
        }
        Command::Verify {
            suite,
            seed,
            samples,
            common,
        } => {
            set_threads(common.threads);
            cmd_verify(suite, *seed, *samples, common)
        }
        Command::Convert { source } => cmd_convert(source),
    };
    match result {
        Ok(out) => (out, String::new(), EXIT_OK),
        Err(Failure {
            code: EXIT_VERIFY,
            message,
        }) => (message, "verification failed\n".into(), EXIT_VERIFY),
        Err(f) => (String::new(), format!("error: {}\n", f.message), f.code),
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                (text, String::new(), code)
            } else {
                (String::new(), text, code)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (String, String, i32) {
        run(std::iter::once("gridtau").chain(args.iter().copied()))
    }

    #[test]
    fn compute_json() {
        let (out, _, code) = go(&["compute", "--braid", "2: 1 1 1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["tau_top"], "1");
    }

    #[test]
    fn compute_qp_table() {
        let (out, _, code) = go(&["compute", "--qp", "2: (|1)(|1)"]);
        assert_eq!(code, 0);
        assert!(out.contains("quasipositive         pass"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["compute", "--braid", "2: 3"]).2, EXIT_INPUT);
        assert_eq!(
            go(&["compute", "--braid", "2: 1", "--qp", "2: (|1)"]).2,
            EXIT_INPUT
        );
        assert_eq!(go(&["compute", "--fixture", "nope"]).2, EXIT_INPUT);
        assert_eq!(
            go(&["compute", "--fixture", "unknot2", "--max-grid", "17"]).2,
            EXIT_INPUT
        );
        assert_eq!(go(&["verify", "--suite", "nope"]).2, EXIT_INPUT);
        assert_eq!(go(&["convert", "--fixture", "unknot2"]).2, EXIT_INPUT);
    }

    #[test]
    fn convert_unknot() {
        let (out, _, code) = go(&["convert", "--braid", "1:"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n = 2\nX = 1 0\nO = 0 1\n");
    }

    #[test]
    fn table_sorted_by_k_descending() {
        let (out, _, _) = go(&["compute", "--braid", "2: 1 1 1 1"]);
        let half = out.find("\n     1/2").unwrap();
        let neg = out.find("\n    -1/2").unwrap();
        assert!(half < neg, "{out}");
    }
}

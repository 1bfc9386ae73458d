//! Command-line front end. [`run`] never touches the process: it returns the
//! exit code and the text destined for stdout and stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::conjectures::{self, Targets};
use crate::cosetgraph::{CosetGraph, ExportFormat};
use crate::counting::{
    brute_force_counts_with_cap, check_identities, density_convergence, dp_counts,
    evaluate_recurrence, format_rational, DEFAULT_BRUTE_FORCE_CAP,
};
use crate::error::Error;
use crate::freegroup::{Letter, Word};
use crate::recurrence::{default_max_steps, run_edges, run_vital, CoefficientTable, OmegaSteps};
use crate::subgroup::{fold, SubgroupPresentation, SubgroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub const DEFAULT_HORIZON: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
    Csv,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            "csv" => Ok(OutputFormat::Csv),
            "latex" => Ok(OutputFormat::Latex),
            other => Err(Error::UnsupportedFormat(other.into())),
        }
    }
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Dot => "dot",
            OutputFormat::Csv => "csv",
            OutputFormat::Latex => "latex",
        }
    }
}

/// Settings loadable from `--config FILE` (JSON). Command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spec: Option<SubgroupSpec>,
    pub target: Option<Word>,
    pub max_steps: Option<usize>,
    pub horizon: Option<usize>,
    pub cap: Option<usize>,
    pub format: Option<OutputFormat>,
    pub max_degree: Option<usize>,
    pub letter: Option<Letter>,
    pub tolerance: Option<f64>,
    pub all_cosets: Option<bool>,
}

#[derive(Debug, Parser)]
#[command(
    name = "f2growth",
    version,
    about = "Coset growth recurrences in the free group F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print or export the coset graph.
    Graph(Common),
    /// Compute the coefficient table for a target coset.
    Recur(Common),
    /// Check the recurrence and counting identities against exact counts.
    Verify(Common),
    /// Scan all transitive actions up to a degree.
    Scan(Common),
    /// Tabulate densities d_n and their deviation from 1/index.
    Density(Common),
    /// Fold generators into a permutation action.
    Fold(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// JSON subgroup spec (`{"kind":"action",...}` or `{"kind":"generators",...}`).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Comma-separated subgroup generators, e.g. `aa,bb,Aba,Bab`.
    #[arg(long)]
    generators: Option<String>,
    /// Target coset representative (empty for H itself).
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Brute-force enumeration length cap.
    #[arg(long)]
    cap: Option<usize>,
    /// text, json, dot, csv or latex.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Letter h for densities.
    #[arg(long)]
    letter: Option<String>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Scan every coset as target, not only H.
    #[arg(long)]
    all_cosets: bool,
    /// Coefficient table (JSON) to verify instead of computing one.
    #[arg(long)]
    coefficients: Option<PathBuf>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a command: exit code plus message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(i32, String), Failure>;

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

/// Flags merged over the config file, defaults not yet applied.
struct Settings {
    spec: Option<SubgroupSpec>,
    target: Word,
    max_steps: Option<usize>,
    horizon: usize,
    cap: usize,
    format: OutputFormat,
    max_degree: Option<usize>,
    letter: Letter,
    tolerance: f64,
    all_cosets: bool,
    coefficients: Option<PathBuf>,
}

impl Settings {
    fn load(c: &Common) -> Result<Settings, Failure> {
        let file = match &c.config {
            Some(path) => serde_json::from_str::<RunConfig>(&read_file(path)?)
                .map_err(|e| Error::Malformed(format!("config {}: {e}", path.display())))?,
            None => RunConfig::default(),
        };
        let spec = if let Some(path) = &c.spec {
            Some(SubgroupSpec::from_json(&read_file(path)?)?)
        } else if let Some(list) = &c.generators {
            let words = list
                .split(',')
                .map(|s| Word::parse(s.trim()))
                .collect::<crate::error::Result<Vec<_>>>()?;
            Some(SubgroupSpec::Generators { generators: words })
        } else {
            file.spec
        };
        let target = match &c.target {
            Some(t) => Word::parse(t)?,
            None => file.target.unwrap_or_default(),
        };
        let format = match &c.format {
            Some(f) => f.parse()?,
            None => file.format.unwrap_or(OutputFormat::Text),
        };
        let letter = match &c.letter {
            Some(l) => l.parse()?,
            None => file.letter.unwrap_or(Letter::A),
        };
        Ok(Settings {
            spec,
            target,
            max_steps: c.max_steps.or(file.max_steps),
            horizon: c.horizon.or(file.horizon).unwrap_or(DEFAULT_HORIZON),
            cap: c.cap.or(file.cap).unwrap_or(DEFAULT_BRUTE_FORCE_CAP),
            format,
            max_degree: c.max_degree.or(file.max_degree),
            letter,
            tolerance: c.tolerance.or(file.tolerance).unwrap_or(0.01),
            all_cosets: c.all_cosets || file.all_cosets.unwrap_or(false),
            coefficients: c.coefficients.clone(),
        })
    }

    fn graph(&self) -> Result<CosetGraph, Failure> {
        let spec = self.spec.as_ref().ok_or_else(|| Failure {
            code: EXIT_INPUT,
            message: "no subgroup given (use --spec, --generators or a config file)".into(),
        })?;
        Ok(CosetGraph::build(spec.resolve()?))
    }

    fn max_steps(&self, g: &CosetGraph) -> usize {
        self.max_steps
            .unwrap_or_else(|| default_max_steps(g.degree()))
    }
}

fn unsupported(format: OutputFormat, command: &str) -> Failure {
    Error::UnsupportedFormat(format!("{} (for {command})", format.name())).into()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_graph(s: &Settings) -> CmdResult {
    let g = s.graph()?;
    let out = match s.format {
        OutputFormat::Text => {
            let mut out = format!(
                "index {}; odd-length element: {}\n",
                g.degree(),
                yes_no(g.action().has_odd_element())
            );
            let _ = writeln!(out, "cosets: {}", g.labels().join(", "));
            for e in g.edges() {
                let _ = writeln!(
                    out,
                    "{} -{}-> {}",
                    g.label(e.source),
                    e.label,
                    g.label(e.target)
                );
            }
            out
        }
        OutputFormat::Dot => g.export(ExportFormat::Dot),
        OutputFormat::Json => g.export(ExportFormat::Json),
        other => return Err(unsupported(other, "graph")),
    };
    Ok((EXIT_OK, out))
}

fn cmd_recur(s: &Settings) -> CmdResult {
    let g = s.graph()?;
    let max_steps = s.max_steps(&g);
    let target = g.coset_of(&s.target);
    let (table, edge_states) = run_edges(&g, &s.target, max_steps);
    let vital = run_vital(&g, &s.target, edge_states.len());
    let omega = OmegaSteps::new(&g, target).take(edge_states.len());
    let agree = omega
        .zip(edge_states.iter().zip(&vital))
        .all(|(o, (e, v))| o.edges(&g) == e.highlighted && e == v);
    if !agree || table != crate::recurrence::run_omega(&g, &s.target, max_steps) {
        return Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: "internal invariant violated: formulations disagree".into(),
        });
    }
    let out = match s.format {
        OutputFormat::Text => {
            let mut out = table.render_text(&g) + "\n";
            if table.terminated {
                let _ = writeln!(
                    out,
                    "terminated at step {}; valid for n ≥ {}",
                    table.last_step,
                    table.valid_from()
                );
            } else {
                let _ = writeln!(out, "undetermined at cap {max_steps}");
            }
            out
        }
        OutputFormat::Json => table.to_json(&g),
        OutputFormat::Csv => table.to_csv(&g),
        OutputFormat::Latex => table.render_latex(&g) + "\n",
        other => return Err(unsupported(other, "recur")),
    };
    Ok((EXIT_OK, out))
}

#[derive(Serialize)]
struct Counterexample {
    n: usize,
    coset: String,
    expected: String,
    got: String,
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    target: String,
    horizon: usize,
    brute_force_horizon: usize,
    brute_force_agrees: bool,
    identity_checks: usize,
    identity_violation: Option<String>,
    guaranteed_from: usize,
    recurrence_checked_to: usize,
    equality_from: Option<usize>,
    counterexample: Option<Counterexample>,
}

fn cmd_verify(s: &Settings) -> CmdResult {
    let g = s.graph()?;
    let table = match &s.coefficients {
        Some(path) => CoefficientTable::from_json(&g, &read_file(path)?)?,
        None => crate::recurrence::run_omega(&g, &s.target, s.max_steps(&g)),
    };
    let horizon = s.horizon;
    let dp = dp_counts(&g, horizon);
    let bf_horizon = horizon.min(s.cap);
    let bf = brute_force_counts_with_cap(&g, bf_horizon, s.cap)?;
    let brute_force_agrees = (0..=bf_horizon).all(|n| {
        (0..g.degree()).all(|v| {
            bf.count(v, n) == dp.count(v, n)
                && Letter::ALL
                    .into_iter()
                    .all(|h| bf.starting_with(v, n, h) == dp.starting_with(v, n, h))
        })
    });
    let identities = check_identities(&g, &dp);

    let n_max = if table.terminated {
        horizon
    } else {
        horizon.min(table.valid_from())
    };
    let predicted = evaluate_recurrence(&table, dp.as_totals(), n_max)?;
    let mismatches: Vec<usize> = predicted
        .iter()
        .filter(|(n, v)| v != dp.count(table.target, *n))
        .map(|(n, _)| *n)
        .collect();
    let equality_from = match mismatches.last() {
        None => Some(2),
        Some(&n) if n < n_max => Some(n + 1),
        Some(_) => None,
    };
    let counterexample = predicted
        .iter()
        .find(|(n, v)| *n >= table.valid_from() && v != dp.count(table.target, *n))
        .map(|(n, v)| Counterexample {
            n: *n,
            coset: g.label(table.target).to_string(),
            expected: dp.count(table.target, *n).to_string(),
            got: v.to_string(),
        });
    let passed = brute_force_agrees && identities.passed() && counterexample.is_none();
    let report = VerifyReport {
        passed,
        target: g.label(table.target).to_string(),
        horizon,
        brute_force_horizon: bf_horizon,
        brute_force_agrees,
        identity_checks: identities.checks,
        identity_violation: identities.violation.as_ref().map(|v| {
            format!(
                "identity ({}) at {} n={} {}: {} != {}",
                v.identity,
                g.label(v.vertex),
                v.n,
                v.detail,
                v.lhs,
                v.rhs
            )
        }),
        guaranteed_from: table.valid_from(),
        recurrence_checked_to: n_max,
        equality_from,
        counterexample,
    };
    let out = match s.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "brute force vs transfer matrix (n ≤ {}): {}",
                bf_horizon,
                if brute_force_agrees {
                    "agree"
                } else {
                    "DISAGREE"
                }
            );
            match &report.identity_violation {
                None => {
                    let _ = writeln!(out, "identities: {} checks passed", identities.checks);
                }
                Some(v) => {
                    let _ = writeln!(out, "identities: FAILED {v}");
                }
            }
            let _ = writeln!(
                out,
                "recurrence for {}: guaranteed from n = {}, checked to n = {}",
                report.target, report.guaranteed_from, n_max
            );
            match equality_from {
                Some(n) => {
                    let _ = writeln!(out, "equality holds from n = {n}");
                }
                None => {
                    let _ = writeln!(out, "equality fails at n = {n_max}");
                }
            }
            if let Some(c) = &report.counterexample {
                let _ = writeln!(
                    out,
                    "counterexample: n = {}, coset {}, expected {}, got {}",
                    c.n, c.coset, c.expected, c.got
                );
            }
            let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
            out
        }
        other => return Err(unsupported(other, "verify")),
    };
    Ok((if passed { EXIT_OK } else { EXIT_VERIFY_FAILED }, out))
}

fn cmd_scan(s: &Settings) -> CmdResult {
    let targets = if s.all_cosets {
        Targets::AllCosets
    } else {
        Targets::BasepointOnly
    };
    let records = conjectures::scan(s.max_degree.unwrap_or(3), s.max_steps, targets)?;
    let summary = conjectures::report(&records);
    let out = match s.format {
        OutputFormat::Text => summary.to_text(&records),
        OutputFormat::Json => summary.to_json(&records),
        OutputFormat::Csv => conjectures::records_csv(&records),
        other => return Err(unsupported(other, "scan")),
    };
    Ok((EXIT_OK, out))
}

#[derive(Serialize)]
struct DensityRowDocument {
    n: usize,
    density: String,
    density_decimal: f64,
    deviation: String,
    deviation_decimal: f64,
}

fn cmd_density(s: &Settings) -> CmdResult {
    use num_traits::ToPrimitive;
    let g = s.graph()?;
    let report = density_convergence(&g, &s.target, s.letter, s.horizon, s.tolerance)?;
    let rows: Vec<DensityRowDocument> = report
        .rows
        .iter()
        .map(|r| DensityRowDocument {
            n: r.n,
            density: r.density.to_string(),
            density_decimal: r.density.to_f64().unwrap_or(f64::NAN),
            deviation: r.deviation.to_string(),
            deviation_decimal: r.deviation.to_f64().unwrap_or(f64::NAN),
        })
        .collect();
    let out = match s.format {
        OutputFormat::Text => {
            let mut out = format!(
                "d_n^{} for {} (limit 1/{})\n",
                s.letter,
                crate::cosetgraph::coset_label(&s.target),
                g.degree()
            );
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "{:>4}  {}  deviation {}",
                    r.n,
                    format_rational(&r.density),
                    format_rational(&r.deviation)
                );
            }
            let _ = writeln!(
                out,
                "converged: {} (max tail deviation {:.6}, tolerance {})",
                yes_no(report.converged),
                report.tail_max_deviation.to_f64().unwrap_or(f64::NAN),
                report.tolerance
            );
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,density,density_decimal,deviation,deviation_decimal\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n, r.density, r.density_decimal, r.deviation, r.deviation_decimal
                );
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                target: String,
                letter: String,
                limit: String,
                converged: bool,
                tolerance: f64,
                rows: &'a [DensityRowDocument],
            }
            let doc = Doc {
                target: crate::cosetgraph::coset_label(&s.target),
                letter: s.letter.to_string(),
                limit: format!("1/{}", g.degree()),
                converged: report.converged,
                tolerance: report.tolerance,
                rows: &rows,
            };
            serde_json::to_string_pretty(&doc).expect("density serializes") + "\n"
        }
        other => return Err(unsupported(other, "density")),
    };
    Ok((EXIT_OK, out))
}

fn cmd_fold(s: &Settings) -> CmdResult {
    let action = match &s.spec {
        Some(SubgroupSpec::Generators { generators }) => {
            fold(&SubgroupPresentation::new(generators.clone()))?
        }
        Some(other) => other.resolve()?.canonical(),
        None => {
            return Err(Failure {
                code: EXIT_INPUT,
                message: "no generators given (use --generators or --spec)".into(),
            })
        }
    };
    let out = match s.format {
        OutputFormat::Json => action.to_spec().to_json() + "\n",
        OutputFormat::Text => format!(
            "degree {}\nsigma_a {:?}\nsigma_b {:?}\nbasepoint {}\n",
            action.degree(),
            action.sigma_a(),
            action.sigma_b(),
            action.basepoint()
        ),
        other => return Err(unsupported(other, "fold")),
    };
    Ok((EXIT_OK, out))
}

/// Parses `args` (including the program name) and runs one command. When
/// `--out` is given the output goes to that file and stdout stays empty.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (common, handler): (&Common, fn(&Settings) -> CmdResult) = match &cli.command {
        Command::Graph(c) => (c, cmd_graph),
        Command::Recur(c) => (c, cmd_recur),
        Command::Verify(c) => (c, cmd_verify),
        Command::Scan(c) => (c, cmd_scan),
        Command::Density(c) => (c, cmd_density),
        Command::Fold(c) => (c, cmd_fold),
    };
    let result = Settings::load(common).and_then(|s| handler(&s));
    match result {
        Ok((code, text)) => match &common.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome {
                    code,
                    ..Outcome::default()
                },
                Err(e) => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            },
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

//! `aztec`: compute matching generating functions, analyse δ-orbits, run the
//! verification suites and query the brute-force oracle.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aztec_core::families::{bind_period, evaluate_auto, family_value_traced, parse_bindings, Family};
use aztec_core::graph::oracle_mgf_capped;
use aztec_core::io::{graph_from_json, period_from_json, OrbitJson, TraceJson};
use aztec_core::orbit::{detect_proportional, detect_q_shift, DEFAULT_MAX_ITER};
use aztec_core::suites::{run_suite, SuiteOptions, SUITES};
use aztec_core::{factor_integer, BigInt, PeriodMatrix, RationalFunction};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "aztec",
    version,
    about = "Exact matching generating functions of periodically weighted Aztec diamonds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a named family or a period file at one order.
    Compute(ComputeArgs),
    /// Look for projective periodicity or a q-shift in the δ-orbit of a period.
    Orbit(OrbitArgs),
    /// Run a verification suite; exits 0 iff every case passes.
    Verify(VerifyArgs),
    /// Brute-force matching generating function of a graph file.
    Oracle(OracleArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Family name: aztec, dungeon-D, dungeon-E, weighted-dungeon, hexsquare, dragon, dragon-region, blum.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Period matrix JSON file: {"k":..,"l":..,"entries":[["expr",..],..]}.
    #[arg(long)]
    period: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: Source,
    /// Family order (for --period: the order of the Aztec diamond).
    #[arg(long)]
    n: usize,
    /// Parameter values, e.g. x=1,y=1/2.
    #[arg(long, default_value = "")]
    bind: String,
    /// Include the per-step reduction factors.
    #[arg(long)]
    trace: bool,
    /// Refuse diamond orders above this.
    #[arg(long, default_value_t = 200)]
    max_order: usize,
    /// Pretty-print the JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OrbitArgs {
    /// Period matrix JSON file.
    #[arg(long)]
    period: PathBuf,
    #[arg(long, default_value = "")]
    bind: String,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Variable treated as q when the entries are monomials in it.
    #[arg(long, default_value = "q")]
    var: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: aztec-basic, dungeon, dungeon-E, weighted-dungeon, yang, stanley, hexsquare, dragon, blum, cellular-random, orbit.
    suite: String,
    #[arg(long, default_value_t = 2023)]
    seed: u64,
    /// Number of random trials (suites with random cases only).
    #[arg(long)]
    trials: Option<usize>,
    /// Include the long-running symbolic orders.
    #[arg(long)]
    slow: bool,
    /// Print the suite result as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Graph JSON file: {"vertices":[..],"edges":[{"u":..,"v":..,"w":"expr"},..]}.
    graph: PathBuf,
    /// Vertex cap for the exhaustive search.
    #[arg(long, default_value_t = 40)]
    cap: usize,
    #[arg(long)]
    json: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: aztec_core::FamilyError| e.to_string())
}

/// A computation error: reported as JSON on stderr with exit code 1.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure { kind, message: message.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn bindings(text: &str) -> Result<BTreeMap<String, RationalFunction>, Failure> {
    parse_bindings(text).map_err(|e| Failure::new("parse", e))
}

fn load_period(path: &Path, bind: &str) -> Result<PeriodMatrix<RationalFunction>, Failure> {
    let p = period_from_json(&read(path)?).map_err(|e| Failure::new("parse", e))?;
    bind_period(&p, &bindings(bind)?).map_err(|e| Failure::new("parse", e))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(v: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    out(&(text.expect("serializable") + "\n"));
}

fn factorization(v: &RationalFunction) -> Option<Value> {
    let i = v.as_integer()?;
    let zero = BigInt::from(0);
    if i == zero {
        return None;
    }
    let mut out: Vec<Value> = Vec::new();
    if i < zero {
        out.push(json!([-1, 1]));
    }
    for (p, e) in factor_integer(&i).ok()? {
        let p = p.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(p.to_string()));
        out.push(json!([p, e]));
    }
    Some(Value::Array(out))
}

fn compute(a: &ComputeArgs) -> Result<Value, Failure> {
    let bind = bindings(&a.bind)?;
    let (value, trace, prefactor) = match (&a.source.family, &a.source.period) {
        (Some(f), _) => {
            let (_, order) = f.instance(a.n);
            if order > a.max_order {
                return Err(Failure::new(
                    "budget",
                    format!("diamond order {order} exceeds --max-order {}", a.max_order),
                ));
            }
            let (v, t) = family_value_traced(*f, a.n, &bind).map_err(|e| Failure::new("compute", e))?;
            let pre = f.prefactor(a.n, &bind).map_err(|e| Failure::new("compute", e))?;
            (v, t, pre)
        }
        (None, Some(path)) => {
            if a.n > a.max_order {
                return Err(Failure::new("budget", format!("order {} exceeds --max-order {}", a.n, a.max_order)));
            }
            let p = load_period(path, &a.bind)?;
            let (v, t) = evaluate_auto(&p, a.n).map_err(|e| Failure::new("compute", e))?;
            (v, t, RationalFunction::one())
        }
        (None, None) => unreachable!("clap enforces a source"),
    };
    let mut out = json!({ "value": value.to_string() });
    if let Some(f) = factorization(&value) {
        out["factorization"] = f;
    }
    if a.trace {
        let diamond = trace.steps.iter().fold(RationalFunction::one(), |acc, s| acc * s.factor.clone());
        out["trace"] = serde_json::to_value(TraceJson::new(&trace, &diamond)).expect("serializable");
        if !prefactor.is_one() {
            out["prefactor"] = Value::from(prefactor.to_string());
        }
    }
    Ok(out)
}

fn orbit(a: &OrbitArgs) -> Result<Value, Failure> {
    let p = load_period(&a.period, &a.bind)?;
    let monomial_in_var = p.rows().iter().flatten().all(|e| {
        e.is_zero()
            || (e.variables().iter().all(|v| *v == a.var) && e.numer().num_terms() == 1 && e.denom().num_terms() == 1)
    });
    let uses_var = p.rows().iter().flatten().any(|e| e.variables().contains(&a.var));
    let report = if monomial_in_var && uses_var {
        detect_q_shift(&p, &a.var, a.max_iter, None)
    } else {
        detect_proportional(&p, a.max_iter)
    }
    .map_err(|e| Failure::new("compute", e))?;
    Ok(serde_json::to_value(OrbitJson::from(&report)).expect("serializable"))
}

fn oracle(a: &OracleArgs) -> Result<Value, Failure> {
    let g = graph_from_json(&read(&a.graph)?).map_err(|e| Failure::new("parse", e))?;
    let v = oracle_mgf_capped(&g, a.cap).map_err(|e| Failure::new("budget", e))?;
    Ok(json!({ "value": v.to_string() }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a).map(|v| emit(&v, a.json)),
        Command::Orbit(a) => orbit(a).map(|v| emit(&v, a.json)),
        Command::Oracle(a) => oracle(a).map(|v| {
            if a.json {
                emit(&v, false)
            } else {
                out(&format!("{}\n", v["value"].as_str().expect("string value")))
            }
        }),
        Command::Verify(a) => {
            let opts = SuiteOptions { seed: a.seed, trials: a.trials, slow: a.slow };
            match run_suite(&a.suite, &opts) {
                Ok(r) => {
                    if a.json {
                        emit(&serde_json::to_value(&r).expect("serializable"), false);
                    } else {
                        out(&r.table());
                    }
                    return if r.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) };
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    eprintln!("known suites: {}", SUITES.join(", "));
                    return ExitCode::from(2);
                }
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            ExitCode::from(1)
        }
    }
}

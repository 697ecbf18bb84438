//! `lefthand`: membership, orders, brute-force sums and thresholds for
//! labeled chordal graphs.
//!
//! Exit codes: 0 in the family (or success), 1 out of the family, 2 invalid
//! input, 3 graph not chordal, 4 oracle size cap exceeded.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lefthand_core::oracle::{shearer_check, DEFAULT_ORACLE_CAP};
use lefthand_core::threshold::{default_tolerance, threshold};
use lefthand_core::{
    build_tree_order, check_membership, check_membership_fast, chordality, parse_graph,
    random_chordal, serialize_graph, Chordality, Error, FastCheck, Format, LabelMode, LabeledGraph,
    Rational, TreeOrder, Verdict,
};
use serde_json::{json, Map, Value};

const DECIMAL_DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "lefthand",
    version,
    about = "Shearer-family membership for labeled chordal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership with the tree-order recursion.
    Check {
        #[command(flatten)]
        input: Input,
        /// Successor map (JSON) to use instead of the constructed order.
        #[arg(long)]
        order: Option<PathBuf>,
        /// Run in f64, falling back to exact arithmetic near the boundary.
        #[arg(long)]
        float: bool,
    },
    /// Print the lefthanded tree-order as a successor map.
    Order {
        #[command(flatten)]
        input: Input,
    },
    /// Brute-force Shearer sums over all independent sets.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Bracket the largest uniform label that stays in the family.
    Threshold {
        #[command(flatten)]
        input: Input,
        /// Bracket width, as a fraction or decimal.
        #[arg(long)]
        tol: Option<Rational>,
    },
    /// Emit a random labeled chordal graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Uniform label; otherwise labels are random.
        #[arg(long, conflicts_with = "max_den")]
        p: Option<Rational>,
        /// Largest denominator for random labels.
        #[arg(long, default_value_t = 64)]
        max_den: u32,
        #[arg(long, default_value = "json")]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    path: PathBuf,
    #[arg(long, default_value = "json")]
    format: Format,
}

impl Input {
    fn load(&self) -> Result<LabeledGraph, Failure> {
        let text = if self.path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(&self.path)
                .map_err(|e| Failure::Io(format!("{}: {e}", self.path.display())))?
        };
        Ok(parse_graph(&text, self.format)?)
    }
}

enum Failure {
    Io(String),
    Core(Error),
    NotChordal(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::NotChordal(_) => 3,
            Failure::Core(Error::NotChordal { .. }) => 3,
            Failure::Core(Error::OracleCapExceeded { .. }) => 4,
            Failure::Core(_) => 2,
        }
    }

    fn report(&self) -> Value {
        match self {
            Failure::Io(msg) => json!({ "error": "io", "message": msg }),
            Failure::NotChordal(v) => v.clone(),
            Failure::Core(e) => json!({ "error": error_kind(e), "message": e.to_string() }),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotChordal { .. } => "not_chordal",
        Error::OracleCapExceeded { .. } => "cap_exceeded",
        Error::Parse { .. } => "parse",
        Error::NotLefthanded(_) | Error::CyclicOrder(_) => "invalid_order",
        _ => "invalid_input",
    }
}

fn require_chordal(g: &LabeledGraph) -> Result<(), Failure> {
    let Chordality::Witness(w) = chordality(g) else {
        return Ok(());
    };
    let names = |vs: Vec<usize>| -> Vec<&str> { vs.into_iter().map(|v| g.name(v)).collect() };
    Err(Failure::NotChordal(json!({
        "error": "not_chordal",
        "message": w.into_error(g).to_string(),
        "witness": { "v": g.name(w.v), "u": g.name(w.u), "w": g.name(w.w) },
        "cycle": w.chordless_cycle(g).map(names),
    })))
}

fn exact(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "decimal": r.to_decimal_string(DECIMAL_DIGITS) })
}

fn verdict_code(v: Verdict) -> u8 {
    if v.is_in() {
        0
    } else {
        1
    }
}

fn check(input: &Input, order: Option<&PathBuf>, float: bool) -> Result<(Value, u8), Failure> {
    let g = input.load()?;
    require_chordal(&g)?;
    let t = match order {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            TreeOrder::from_json(&g, &text)?
        }
        None => build_tree_order(&g)?,
    };
    let witness = |w: Option<usize>| w.map(|v| g.name(v).to_string());
    let report = if float {
        check_membership_fast(&g, &t)?
    } else {
        FastCheck::Exact(check_membership(&g, &t)?)
    };
    let out = match &report {
        FastCheck::Exact(r) => {
            let x: Map<String, Value> = (0..g.n())
                .filter_map(|v| Some((g.name(v).to_string(), json!(r.x_of(v)?.to_string()))))
                .collect();
            json!({
                "verdict": r.verdict,
                "bound": r.bound.as_ref().map(exact),
                "x": x,
                "witness": witness(r.witness),
                "arithmetic": "exact",
            })
        }
        FastCheck::Float(r) => {
            let x: Map<String, Value> = (0..g.n())
                .filter_map(|v| Some((g.name(v).to_string(), json!(r.x[v]?))))
                .collect();
            json!({
                "verdict": r.verdict,
                "bound": r.bound,
                "x": x,
                "witness": witness(r.witness),
                "arithmetic": "float",
            })
        }
    };
    Ok((out, verdict_code(report.verdict())))
}

fn order(input: &Input) -> Result<(Value, u8), Failure> {
    let g = input.load()?;
    require_chordal(&g)?;
    Ok((build_tree_order(&g)?.to_json(&g), 0))
}

fn oracle(input: &Input, cap: usize) -> Result<(Value, u8), Failure> {
    let g = input.load()?;
    let r = shearer_check(&g, cap)?;
    let out = json!({
        "verdict": r.verdict,
        "sigma_empty": exact(&r.sigma_empty),
        "min_sigma": exact(&r.min_sigma),
        "witness": r.witness.map(|s| s.into_iter().map(|v| g.name(v)).collect::<Vec<_>>()),
    });
    Ok((out, verdict_code(r.verdict)))
}

fn coefficient(c: &impl ToString) -> Value {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(s),
    }
}

fn threshold_cmd(input: &Input, tol: Option<&Rational>) -> Result<(Value, u8), Failure> {
    let g = input.load()?;
    require_chordal(&g)?;
    let t = build_tree_order(&g)?;
    let tol = tol.cloned().unwrap_or_else(default_tolerance);
    let r = threshold(&g, &t, &tol)?;
    let coeffs: Vec<Value> = r
        .critical_poly
        .as_ref()
        .map(|c| c.coeffs().iter().map(coefficient).collect())
        .unwrap_or_default();
    let out = json!({
        "lo": exact(&r.lo),
        "hi": exact(&r.hi),
        "critical_vertex": g.name(r.critical_vertex),
        "poly_coeffs": coeffs,
    });
    Ok((out, 0))
}

fn run(cli: Cli) -> Result<(Value, u8), Failure> {
    match cli.command {
        Command::Check {
            input,
            order: path,
            float,
        } => check(&input, path.as_ref(), float),
        Command::Order { input } => order(&input),
        Command::Oracle { input, cap } => oracle(&input, cap),
        Command::Threshold { input, tol } => threshold_cmd(&input, tol.as_ref()),
        Command::Gen {
            n,
            seed,
            p,
            max_den,
            format,
        } => {
            let mode = match p {
                Some(p) => {
                    if p.is_negative() || p > Rational::one() {
                        return Err(Error::LabelOutOfRange(p.to_string()).into());
                    }
                    LabelMode::Uniform(p)
                }
                None => LabelMode::random(max_den),
            };
            print!(
                "{}",
                serialize_graph(&random_chordal(n, seed, &mode), format)
            );
            Ok((Value::Null, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((Value::Null, code)) => ExitCode::from(code),
        Ok((out, code)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serializable")
            );
            ExitCode::from(code)
        }
        Err(f) => {
            let report = f.report();
            if let Some(msg) = report.get("message").and_then(Value::as_str) {
                eprintln!("lefthand: {msg}");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            ExitCode::from(f.exit_code())
        }
    }
}

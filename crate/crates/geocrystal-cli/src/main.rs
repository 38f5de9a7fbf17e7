use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geocrystal::birational::{sigma, xi};
use geocrystal::bkinf::{e_pow, graph_dot, weyl_s_tilde, BElementJson};
use geocrystal::geomcrystal::{act_ebar, try_act_e, weyl_s};
use geocrystal::iso::{omega, omega_inv};
use geocrystal::lattice::{parse_q, AnyPoint, PointJson};
use geocrystal::tropical::{self, trop_e, trop_weyl, Quantity};
use geocrystal::verify::{run_suite, Config, RunReport, Suite};
use geocrystal::{BElement, Error, Shape, TropPoint, Q};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "geocrystal",
    version,
    about = "Affine geometric crystal of type A_n^(1): verification and point transforms"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Print the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Apply a crystal operator to a point read from a JSON file.
    Act {
        #[arg(long, value_enum)]
        side: ActSide,
        #[arg(long, value_enum)]
        op: ActOp,
        #[arg(long)]
        i: usize,
        /// Geometric parameter as P/Q.
        #[arg(long)]
        c: Option<String>,
        /// Tropical parameter, or repeat count on B.
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
        /// JSON file, `-` for stdin, or inline JSON.
        #[arg(long)]
        point: String,
    },
    /// Apply one of the structure maps to a point.
    Map {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        point: String,
        /// Index for `ud-probe`.
        #[arg(long)]
        i: Option<usize>,
        /// Parameter exponent for `ud-probe`.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        d: i64,
    },
    /// Proportionality probe between the two fundamental-representation vectors.
    Conjecture {
        #[command(flatten)]
        run: RunArgs,
    },
    /// DOT export of the crystal graph of B around an element.
    Graph {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// `b_inf` for the zero element.
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActSide {
    Geom,
    Trop,
    Bkinf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActOp {
    E,
    F,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Sigma,
    Xi,
    Omega,
    OmegaInv,
    UdProbe,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Fault(_) => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Verify { suite, run, json } => cmd_verify(&suite, &run, json),
        Cmd::Act {
            side,
            op,
            i,
            c,
            d,
            point,
        } => cmd_act(side, op, i, c.as_deref(), d, &point),
        Cmd::Map { map, point, i, d } => cmd_map(map, &point, i, d),
        Cmd::Conjecture { run } => cmd_conjecture(&run),
        Cmd::Graph {
            n,
            k,
            center,
            point,
            radius,
        } => cmd_graph(n, k, center.as_deref(), point.as_deref(), radius),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `geocrystal --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn config(run: &RunArgs, suite: Suite) -> Config {
    let seed = run.seed.unwrap_or_else(|| {
        eprintln!("seed: {DEFAULT_SEED} (default)");
        DEFAULT_SEED
    });
    Config {
        trials: run.trials,
        seed,
        bound: run.bound.unwrap_or(suite.default_bound()),
    }
}

fn cmd_verify(suite: &str, run: &RunArgs, json: bool) -> CliResult {
    let suite: Suite = suite.parse()?;
    let shape = Shape::new(run.n, run.k)?;
    let report = run_suite(suite, shape, config(run, suite))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print_summary(&report);
    }
    Ok(report.passed())
}

fn print_summary(r: &RunReport) {
    println!(
        "suite {} on ({},{}), seed {}, {} trials, {}: {}",
        r.suite,
        r.n,
        r.k,
        r.seed,
        r.trials,
        r.prng,
        if r.passed() { "PASS" } else { "FAIL" }
    );
    for (name, t) in &r.relations {
        println!("  {:>6} pass {:>4} fail  {name}", t.pass, t.fail);
    }
    for w in &r.witnesses {
        println!("  witness [{}] trial {}: {}", w.relation, w.trial, w.input);
    }
    println!("  {} ms", r.wall_ms);
}

fn read_json(src: &str) -> Result<Value, Failure> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(src).map_err(|e| usage(format!("reading {src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

enum Input {
    Point(AnyPoint),
    B(BElement),
}

fn read_input(src: &str) -> Result<Input, Failure> {
    let v = read_json(src)?;
    if v.get("kind").and_then(Value::as_str) == Some("b") {
        let j: BElementJson =
            serde_json::from_value(v).map_err(|e| usage(format!("schema: {e}")))?;
        return Ok(Input::B(BElement::from_json(&j)?));
    }
    let j: PointJson = serde_json::from_value(v).map_err(|e| usage(format!("schema: {e}")))?;
    Ok(Input::Point(AnyPoint::from_json(&j)?))
}

fn emit_point(p: AnyPoint) {
    println!("{}", serde_json::to_string(&p.to_json()).unwrap());
}

fn emit_b(b: &BElement) {
    println!("{}", serde_json::to_string(&b.to_json()).unwrap());
}

fn check_index(shape: Shape, i: usize) -> Result<(), Failure> {
    if i > shape.n() {
        return Err(usage(format!("index {i} exceeds n = {}", shape.n())));
    }
    Ok(())
}

fn positive_c(c: Option<&str>) -> Result<Q, Failure> {
    let c = parse_q(c.ok_or_else(|| usage("--c P/Q is required"))?)?;
    if c <= Q::from_integer(0.into()) {
        return Err(usage("--c must be positive"));
    }
    Ok(c)
}

fn cmd_act(
    side: ActSide,
    op: ActOp,
    i: usize,
    c: Option<&str>,
    d: Option<i64>,
    src: &str,
) -> CliResult {
    let input = read_input(src)?;
    match (side, input) {
        (ActSide::Geom, Input::Point(AnyPoint::X(x))) => {
            check_index(x.shape(), i)?;
            let out = match op {
                ActOp::S => weyl_s(&x, i),
                ActOp::E => try_act_e(&x, i, &positive_c(c)?)?,
                ActOp::F => try_act_e(&x, i, &positive_c(c)?.recip())?,
            };
            emit_point(AnyPoint::X(out));
        }
        (ActSide::Geom, Input::Point(AnyPoint::Y(y))) => {
            check_index(y.shape(), i)?;
            if i == 0 || i == y.shape().n() {
                return Err(usage("the y-side action is defined for i = 1..n-1"));
            }
            let out = match op {
                ActOp::S => {
                    return Err(usage(
                        "--op s on the y side is not provided; map to x first",
                    ))
                }
                ActOp::E => act_ebar(&y, i, &positive_c(c)?),
                ActOp::F => act_ebar(&y, i, &positive_c(c)?.recip()),
            };
            emit_point(AnyPoint::Y(out));
        }
        (ActSide::Trop, Input::Point(AnyPoint::Trop(x))) => {
            check_index(x.shape(), i)?;
            let d = d.unwrap_or(1);
            let out = match op {
                ActOp::E => trop_e(&x, i, d),
                ActOp::F => trop_e(&x, i, -d),
                ActOp::S => trop_weyl(&x, i),
            };
            emit_point(AnyPoint::Trop(out));
        }
        (ActSide::Bkinf, Input::B(b)) => {
            check_index(b.shape(), i)?;
            let d = d.unwrap_or(1);
            let out = match op {
                ActOp::E => e_pow(&b, i, d),
                ActOp::F => e_pow(&b, i, -d),
                ActOp::S => weyl_s_tilde(&b, i),
            };
            emit_b(&out);
        }
        _ => {
            return Err(usage(
                "point kind does not match --side (geom: x or y, trop: trop, bkinf: b)",
            ))
        }
    }
    Ok(true)
}

fn cmd_map(map: MapKind, src: &str, i: Option<usize>, d: i64) -> CliResult {
    let input = read_input(src)?;
    match (map, input) {
        (MapKind::Sigma, Input::Point(AnyPoint::X(x))) => emit_point(AnyPoint::Y(sigma(&x))),
        (MapKind::Xi, Input::Point(AnyPoint::Y(y))) => emit_point(AnyPoint::X(xi(&y))),
        (MapKind::Omega, Input::Point(AnyPoint::Trop(x))) => emit_b(&omega(&x)),
        (MapKind::OmegaInv, Input::B(b)) => emit_point(AnyPoint::Trop(omega_inv(&b))),
        (MapKind::UdProbe, Input::Point(AnyPoint::Trop(x))) => {
            let i = i.ok_or_else(|| usage("ud-probe needs --i"))?;
            return ud_probe(&x, i, d);
        }
        (MapKind::Sigma, _) => return Err(usage("sigma expects an x point")),
        (MapKind::Xi, _) => return Err(usage("xi expects a y point")),
        (MapKind::OmegaInv, _) => return Err(usage("omega-inv expects a b element")),
        _ => return Err(usage("omega and ud-probe expect a trop point")),
    }
    Ok(true)
}

fn ud_probe(x: &TropPoint, i: usize, d: i64) -> CliResult {
    check_index(x.shape(), i)?;
    let both = |q: Quantity| -> Result<(i64, i64), Failure> {
        Ok((
            tropical::ud_degree_probe(q, x, d)?,
            tropical::tropical_value(q, x, d)?,
        ))
    };
    let (gp, gt) = both(Quantity::Gamma(i))?;
    let (ep, et) = both(Quantity::Epsilon(i))?;
    let mut agree = gp == gt && ep == et;
    let mut coords = serde_json::Map::new();
    for (l, m) in x.shape().l1() {
        let (p, t) = both(Quantity::ECoord { i, l, m })?;
        agree &= p == t;
        coords.insert(format!("{l},{m}"), json!({"probe": p, "tropical": t}));
    }
    let out = json!({
        "i": i,
        "d": d,
        "gamma": {"probe": gp, "tropical": gt},
        "epsilon": {"probe": ep, "tropical": et},
        "e": coords,
        "agree": agree,
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(agree)
}

fn cmd_conjecture(run: &RunArgs) -> CliResult {
    let shape = Shape::new(run.n, run.k)?;
    let report = run_suite(Suite::Conjecture, shape, config(run, Suite::Conjecture))?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(report.passed())
}

fn cmd_graph(
    n: Option<usize>,
    k: Option<usize>,
    center: Option<&str>,
    point: Option<&str>,
    radius: usize,
) -> CliResult {
    let b = match (center, point) {
        (Some("b_inf"), None) => {
            let (n, k) = n
                .zip(k)
                .ok_or_else(|| usage("--center b_inf needs --n and --k"))?;
            BElement::zero(Shape::new(n, k)?)
        }
        (Some(other), None) => {
            return Err(usage(format!(
                "unknown center {other:?}; use b_inf or --point"
            )))
        }
        (None, Some(src)) => match read_input(src)? {
            Input::B(b) => b,
            Input::Point(AnyPoint::Trop(x)) => omega(&x),
            Input::Point(_) => return Err(usage("graph expects a b element or a trop point")),
        },
        _ => return Err(usage("give exactly one of --center and --point")),
    };
    if n.is_some_and(|n| n != b.shape().n()) || k.is_some_and(|k| k != b.shape().k()) {
        return Err(usage("--n/--k disagree with the point's shape"));
    }
    print!("{}", graph_dot(&b, radius));
    Ok(true)
}

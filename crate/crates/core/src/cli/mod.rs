//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code: 0 on success, 1 when a mathematical
//! check fails, 2 on invalid input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::autgroup::{
    check_sigma_constraints, compose, decompose_into_inner_group, invert, make_inner_exp, make_sigma,
    make_sigma_unchecked, verify_homomorphism, AutMap, SigmaParams,
};
use crate::derivclass::{classify, default_cells, expected_outer};
use crate::error::Error;
use crate::exactnum::{parse_scalar, Field, LambdaField, RatFunc, Rational, ScalarMode};
use crate::superalgebra::{check_super_jacobi, check_super_skew, AlgebraConfig, Element, HalfInt, Parity, Window};

const MAX_WINDOW: u32 = 32;

#[derive(Parser, Debug)]
#[command(name = "wsuper", version, about = "Exact computations in the super W-algebras W^s_l(2,2)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Index shift of the odd part: 0 or 1/2
    #[arg(long, global = true, default_value = "0")]
    s: HalfInt,
    /// `symbolic` (or `l`) for generic l, otherwise a rational value
    #[arg(long, global = true, default_value = "symbolic", allow_hyphen_values = true)]
    lambda: String,
    /// Window half-width N (indices in [-N, N]); default depends on the command
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Interior half-width M used by `classify`
    #[arg(long, global = true, default_value_t = 4)]
    interior: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled parameters
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the bracket [x, y] of two elements
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Check super skew-symmetry and the super Jacobi identity on the window
    CheckAxioms,
    /// Compute outer derivation dimensions by parity and degree
    Classify {
        /// Integer degree range lo..hi; for s = 1/2 odd cells use the
        /// half-integers strictly inside it plus degree 0
        #[arg(long, default_value = "-3..3", value_parser = parse_range, allow_hyphen_values = true)]
        degrees: (i64, i64),
        /// Restrict to one parity
        #[arg(long)]
        parity: Option<Parity>,
    },
    /// Automorphism tools
    Aut {
        #[command(subcommand)]
        command: AutCommand,
    },
}

#[derive(Subcommand, Debug)]
enum AutCommand {
    /// Check that sigma composed with the inner exponentials is a homomorphism
    Verify {
        #[command(flatten)]
        map: MapArgs,
        /// Verify this many randomly drawn valid sigma maps instead
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Apply sigma composed with the inner exponentials to an element
    Apply {
        #[command(flatten)]
        map: MapArgs,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Decompose sigma e sigma^-1 into inner exponentials
    Conjugate {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Evaluate the defining constraints of sigma
    Constraints {
        #[command(flatten)]
        map: MapArgs,
    },
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    epsilon: i64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    mu: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: String,
    /// Inner exponential `a,k` meaning id + a ad I[k]; repeatable
    #[arg(long = "inner-exp", allow_hyphen_values = true)]
    inner_exp: Vec<String>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInJ { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Result of a command: what to print and whether the check passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.global.lambda.parse::<ScalarMode>() {
        Ok(mode @ ScalarMode::Symbolic) => execute::<RatFunc>(&cli, mode),
        Ok(mode) => execute::<Rational>(&cli, mode),
        Err(e) => Err(invalid(format!("--lambda: {e}"))),
    };
    match result {
        Ok(out) => {
            match cli.global.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn window(g: &Global, default: u32) -> Result<Window, Failure> {
    let n = g.window.unwrap_or(default);
    if n > MAX_WINDOW {
        return Err(invalid(format!("window {n} exceeds the limit {MAX_WINDOW}")));
    }
    Ok(Window(n))
}

fn execute<F: LambdaField>(cli: &Cli, mode: ScalarMode) -> Result<Outcome, Failure> {
    let g = &cli.global;
    let cfg = AlgebraConfig::<F>::new(g.s, mode.clone())?;
    match &cli.command {
        Command::Bracket { x, y } => {
            let a = Element::parse(x, g.s, &cfg.lambda)?;
            let b = Element::parse(y, g.s, &cfg.lambda)?;
            let r = cfg.bracket(&a, &b)?;
            Ok(Outcome {
                text: format!("{r}\n"),
                json: json!({ "x": a.to_string(), "y": b.to_string(), "bracket": r.to_string() }),
                ok: true,
            })
        }
        Command::CheckAxioms => {
            let w = window(g, 5)?;
            let skew = check_super_skew(&cfg, w);
            let jacobi = check_super_jacobi(&cfg, w);
            let mut text = String::new();
            for (name, v) in [("super skew-symmetry", &skew), ("super Jacobi", &jacobi)] {
                let _ = writeln!(text, "{name}: {} violations", v.len());
                for x in v {
                    let inputs: Vec<String> = x.inputs.iter().map(ToString::to_string).collect();
                    let _ = writeln!(text, "  ({}): {}", inputs.join(", "), x.residual);
                }
            }
            Ok(Outcome {
                text,
                json: json!({
                    "s": g.s, "lambda": mode.to_string(), "window": w.0,
                    "skew": skew, "jacobi": jacobi,
                }),
                ok: skew.is_empty() && jacobi.is_empty(),
            })
        }
        Command::Classify { degrees, parity } => {
            let w = window(g, 8)?;
            let cells: Vec<(Parity, HalfInt)> = default_cells(g.s, degrees.0, degrees.1)
                .into_iter()
                .filter(|(p, _)| parity.is_none_or(|q| q == *p))
                .collect();
            let report = classify(&cfg, &cells, w, g.interior)?;
            let zero = mode.is_zero_lambda();
            let bad = report.mismatches(zero);
            let mut text = format!("s = {}, l = {}, window {}, interior {}\n", g.s, mode, w.0, g.interior);
            for c in &report.cells {
                let _ = write!(
                    text,
                    "{:<4} {:>5}: nullspace {}, inner {}, outer {}",
                    c.parity, c.degree.to_string(), c.dim_nullspace_interior, c.dim_inner_interior, c.dim_outer
                );
                if !c.outer_labels.is_empty() {
                    let _ = write!(text, " [{}]", c.outer_labels.join(", "));
                }
                text.push('\n');
            }
            for c in &bad {
                let (dim, labels) = expected_outer(g.s, zero, c.parity, c.degree);
                let msg = format!(
                    "mismatch at {} {}: expected outer {dim} [{}]",
                    c.parity,
                    c.degree,
                    labels.join(", ")
                );
                let _ = writeln!(text, "{msg}");
                if g.format == Format::Json {
                    eprintln!("{msg}");
                }
            }
            if bad.is_empty() {
                text.push_str("matches the expected classification\n");
            }
            Ok(Outcome {
                text,
                json: serde_json::to_value(&report).expect("json"),
                ok: bad.is_empty(),
            })
        }
        Command::Aut { command } => aut(g, &cfg, command),
    }
}

fn scalar<F: Field>(name: &str, input: &str, lambda: &F) -> Result<F, Failure> {
    parse_scalar(input, lambda).map_err(|e| invalid(format!("--{name}: {e}")))
}

fn sigma_params<F: Field>(m: &MapArgs, lambda: &F) -> Result<SigmaParams<F>, Failure> {
    Ok(SigmaParams::new_unchecked(
        m.epsilon,
        scalar("alpha", &m.alpha, lambda)?,
        scalar("mu", &m.mu, lambda)?,
        scalar("beta", &m.beta, lambda)?,
        scalar("gamma", &m.gamma, lambda)?,
        scalar("x", &m.x, lambda)?,
    ))
}

/// The `--inner-exp` factors merged by index; exponentials of `ad I`
/// multiply by adding coefficients.
fn inner_factors<F: Field>(m: &MapArgs, lambda: &F) -> Result<Vec<(F, i64)>, Failure> {
    let mut by_k: BTreeMap<i64, F> = BTreeMap::new();
    for spec in &m.inner_exp {
        let (a, k) = spec
            .rsplit_once(',')
            .ok_or_else(|| invalid(format!("--inner-exp: expected a,k, got {spec:?}")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|e| invalid(format!("--inner-exp: index {k:?}: {e}")))?;
        let a = scalar("inner-exp", a, lambda)?;
        let e = by_k.entry(k).or_insert_with(F::zero);
        *e = e.add(&a);
    }
    Ok(by_k.into_iter().filter(|(_, a)| !a.is_zero()).map(|(k, a)| (a, k)).collect())
}

fn inner_map<F: Field>(cfg: &AlgebraConfig<F>, factors: &[(F, i64)], w: Window) -> Result<AutMap<F>, Failure> {
    let mut f = AutMap::identity(cfg, w);
    for (a, k) in factors {
        f = compose(&f, &make_inner_exp(cfg, a.clone(), *k, w))?;
    }
    Ok(f)
}

fn params_json<F: Field>(p: &SigmaParams<F>) -> Value {
    json!({
        "epsilon": p.epsilon,
        "alpha": p.alpha.to_string(),
        "mu": p.mu.to_string(),
        "beta": p.beta.to_string(),
        "gamma": p.gamma.to_string(),
        "x": p.x.to_string(),
    })
}

fn params_text<F: Field>(p: &SigmaParams<F>) -> String {
    format!(
        "epsilon = {}, alpha = {}, mu = {}, beta = {}, gamma = {}, x = {}",
        p.epsilon, p.alpha, p.mu, p.beta, p.gamma, p.x
    )
}

fn factors_text<F: Field>(factors: &[(F, i64)]) -> String {
    let mut s = String::from("id");
    for (a, k) in factors {
        let _ = write!(s, " + ({a}) ad I[{k}]");
    }
    s
}

fn factors_json<F: Field>(factors: &[(F, i64)]) -> Value {
    factors.iter().map(|(a, k)| json!({ "coefficient": a.to_string(), "index": k })).collect()
}

/// A random valid sigma: at `l = 0` any sign and `mu`, otherwise
/// `mu = eps = 1`.
fn random_params<F: Field>(rng: &mut StdRng, s: HalfInt, lambda_zero: bool) -> Result<SigmaParams<F>, Failure> {
    fn q<F: Field>(rng: &mut StdRng, nonzero: bool) -> F {
        loop {
            let n: i64 = rng.gen_range(-3..=3);
            let d: i64 = rng.gen_range(1..=3);
            if !nonzero || n != 0 {
                return F::from_rational(&Rational::new(n, d).expect("nonzero denominator"));
            }
        }
    }
    let a = q(rng, true);
    let (eps, t) = if lambda_zero {
        (if rng.gen::<bool>() { 1 } else { -1 }, q(rng, true))
    } else {
        (1, F::one())
    };
    let (beta, gamma) = (q(rng, false), q(rng, false));
    Ok(SigmaParams::from_roots(s, eps, a, t, beta, gamma)?)
}

fn aut<F: LambdaField>(g: &Global, cfg: &AlgebraConfig<F>, command: &AutCommand) -> Result<Outcome, Failure> {
    let w = window(g, 6)?;
    let lambda = &cfg.lambda;
    match command {
        AutCommand::Verify { map, samples } if *samples > 0 => {
            let mut rng = StdRng::seed_from_u64(g.seed);
            let mut text = String::new();
            let mut runs = Vec::new();
            let mut ok = true;
            for i in 0..*samples {
                let p = random_params::<F>(&mut rng, g.s, lambda.is_zero())?;
                let f = compose(&make_sigma(cfg, p.clone(), w)?, &inner_map(cfg, &inner_factors(map, lambda)?, w)?)?;
                let v = verify_homomorphism(cfg, &f, w)?;
                ok &= v.is_empty();
                let _ = writeln!(text, "sample {i}: {}: {} violations", params_text(&p), v.len());
                runs.push(json!({ "params": params_json(&p), "violations": v }));
            }
            Ok(Outcome {
                text,
                json: json!({ "window": w.0, "samples": runs }),
                ok,
            })
        }
        AutCommand::Verify { map, .. } => {
            let p = sigma_params(map, lambda)?;
            let f = compose(&make_sigma_unchecked(cfg, p.clone(), w), &inner_map(cfg, &inner_factors(map, lambda)?, w)?)?;
            let v = verify_homomorphism(cfg, &f, w)?;
            let mut text = format!("{}: {} violations on window {}\n", params_text(&p), v.len(), w.0);
            for x in &v {
                let _ = writeln!(text, "  {x}");
            }
            Ok(Outcome {
                text,
                json: json!({ "params": params_json(&p), "window": w.0, "violations": v }),
                ok: v.is_empty(),
            })
        }
        AutCommand::Apply { map, element } => {
            let p = sigma_params(map, lambda)?;
            p.validate(g.s)?;
            let f = compose(&make_sigma(cfg, p, w)?, &inner_map(cfg, &inner_factors(map, lambda)?, w)?)?;
            let x = Element::parse(element, g.s, lambda)?;
            cfg.validate_element(&x)?;
            let y = f.apply(&x)?;
            Ok(Outcome {
                text: format!("{y}\n"),
                json: json!({ "input": x.to_string(), "image": y.to_string() }),
                ok: true,
            })
        }
        AutCommand::Conjugate { map } => {
            let p = sigma_params(map, lambda)?;
            let factors = inner_factors(map, lambda)?;
            if factors.is_empty() {
                return Err(invalid("conjugate needs at least one nonzero --inner-exp"));
            }
            let sigma = make_sigma(cfg, p.clone(), w)?;
            let e = inner_map(cfg, &factors, w)?;
            let conj = compose(&sigma, &compose(&e, &invert(&sigma)?)?)?;
            let found = decompose_into_inner_group(cfg, &conj)?.factors;
            let mut predicted = Vec::new();
            for (a, k) in &factors {
                predicted.push((a.mul(&p.alpha.pow(*k)?).mul(&p.mu), p.epsilon * k));
            }
            predicted.sort_by_key(|(_, k)| *k);
            let ok = found == predicted;
            let mut text = format!("{}\n", factors_text(&found));
            if !ok {
                let _ = writeln!(text, "expected {}", factors_text(&predicted));
            }
            Ok(Outcome {
                text,
                json: json!({ "factors": factors_json(&found), "predicted": factors_json(&predicted) }),
                ok,
            })
        }
        AutCommand::Constraints { map } => {
            let p = sigma_params(map, lambda)?;
            let checks = check_sigma_constraints(cfg, &p, w)?;
            let mut text = String::new();
            for c in &checks {
                let _ = write!(text, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
                if !c.passed {
                    let _ = write!(text, ": {}", c.detail);
                }
                text.push('\n');
            }
            Ok(Outcome {
                text,
                json: json!({ "params": params_json(&p), "window": w.0, "checks": checks }),
                ok: checks.iter().all(|c| c.passed),
            })
        }
    }
}

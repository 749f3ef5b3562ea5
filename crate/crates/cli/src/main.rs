//! `ladic`: evaluate Bernoulli constants and `l`-adic L-values, manipulate
//! measure towers and run the series verification suites. Every command
//! writes one JSON document to stdout.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed verification
//! suite, 2 on a usage error.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ladic::exactq::{self, format_rational, parse_rational, Rational};
use ladic::lfunc::{self, DirichletCharacter, LQuery, LValue, Method};
use ladic::measure::{self, Integral, Region, TowerFile};
use ladic::ncalg::{self, verify};
use ladic::padic::{self, PadicNum};
use ladic::parse;

#[derive(Parser)]
#[command(name = "ladic", version, about = "l-adic measures, Bernoulli numbers and L-values")]
struct Cli {
    /// Accepted for compatibility; output is always JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli numbers B_k, polynomial values B_k(t), or B_{k,ω^j}.
    Bernoulli(BernoulliArgs),
    /// The Teichmüller lift ω(a) in Z_l.
    Teichmuller(TeichmullerArgs),
    /// Measure towers stored as JSON files.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// The Kubota-Leopoldt function L^β(1-s).
    Kl(KlArgs),
    /// The Hurwitz-type function L^β(1-s; i, m).
    Hurwitz(HurwitzArgs),
    /// The Dirichlet function L_l^β(1-s; ψ).
    Dirichlet(DirichletArgs),
    /// The Z[1/m] function, m a product of distinct primes.
    Zinv(ZinvArgs),
    /// Seeded verification suites for the series identities.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BernoulliArgs {
    #[arg(long)]
    k: usize,
    /// Evaluate the polynomial B_k(t) at this rational.
    #[arg(long, conflicts_with = "ell")]
    at: Option<String>,
    /// With --j, the generalized number B_{k,ω^j} in Q_l.
    #[arg(long, requires = "j")]
    ell: Option<u64>,
    #[arg(long, requires = "ell", allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Args)]
struct TeichmullerArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Subcommand)]
enum MeasureCommand {
    /// Check the distribution relations of a tower file.
    Validate(FileArg),
    /// The regularized Bernoulli measure E_{1,c}.
    Bernoulli {
        #[arg(long)]
        ell: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        depth: usize,
    },
    /// Push a tower forward along an integer matrix, e.g. "1,2;0,1".
    Pushforward {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Integrate an expression such as "x1^2*x2 - 3/2" or "[x]^(1/2)*w^2*x^-1".
    Integrate {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, allow_hyphen_values = true)]
        integrand: String,
        #[arg(long, value_enum, default_value_t = RegionArg::Full)]
        region: RegionArg,
        /// Riemann-sum level; defaults to the tower depth.
        #[arg(long)]
        level: Option<usize>,
    },
    /// The P (Iwasawa) or F (exponential) transform.
    Transform {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        degree: u32,
    },
    /// The coefficient li_w of the word X^{a_0} Y X^{a_1} ... Y X^{a_r}.
    Word {
        #[command(flatten)]
        file: FileArg,
        /// Exponents a_0,...,a_r.
        #[arg(long)]
        word: String,
        #[arg(long)]
        level: Option<usize>,
    },
}

#[derive(Args)]
struct FileArg {
    /// Tower file, or "-" for stdin.
    #[arg(long)]
    file: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Full,
    Units,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    P,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Measure,
    Interpolation,
}

#[derive(Args)]
struct KlArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    /// A rational in Z_l, e.g. 2 or 1/2.
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Regularizing unit; defaults to the least primitive root mod l^2.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    #[arg(long, default_value_t = 6)]
    level: usize,
    #[arg(long, default_value_t = 2)]
    prec: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Measure)]
    method: MethodArg,
    /// Evaluate the z = -1 variant instead.
    #[arg(long)]
    minus_one: bool,
}

#[derive(Args)]
struct HurwitzArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long)]
    i: u64,
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Args)]
struct DirichletArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// "m:a1=v1,a2=v2,..." with each v an integer or zeta(n)^j.
    #[arg(long)]
    psi: String,
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Args)]
struct ZinvArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Comma-separated distinct primes.
    #[arg(long)]
    primes: String,
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Bch,
    Gamma,
    Inversion,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = ncalg::DEFAULT_DEGREE)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances (bch, inversion) or perturbations (gamma).
    #[arg(long)]
    instances: Option<usize>,
    /// χ values: a list for gamma (default 2,3,1/2), one value for inversion.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,
    /// t for inversion; random when absent.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

/// A failure of the requested computation.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn padic_json(x: &PadicNum) -> Value {
    if x.is_exact_zero() {
        return json!({"valuation": null, "unit": 0, "precision": null});
    }
    if x.is_zero() {
        return json!({"valuation": null, "unit": 0, "precision": x.absolute_precision()});
    }
    json!({"valuation": x.valuation(), "unit": x.unit(), "precision": x.absolute_precision()})
}

fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn parse_s(text: &str, ell: u64) -> Result<PadicNum, Failure> {
    padic::check_prime(ell)?;
    Ok(parse::parse_padic(text, ell)?)
}

fn read_tower(arg: &FileArg) -> Result<measure::MeasureTower, Failure> {
    let text = if arg.file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&arg.file).map_err(|e| Failure(format!("{}: {e}", arg.file)))?
    };
    Ok(TowerFile::parse(&text)?)
}

fn tower_json(t: &measure::MeasureTower) -> Value {
    serde_json::to_value(TowerFile::from_tower(t)).expect("tower file serializes")
}

fn lvalue_json(v: &LValue, cap: Option<u32>) -> Value {
    let shown = match cap {
        Some(p) => v.precision.min(p as i64),
        None => v.precision,
    };
    let mut out = json!({
        "value": padic_json(&v.value.with_absolute_precision(shown)),
        "guaranteed_precision": v.precision,
    });
    if let Some(k) = v.k {
        out["k"] = json!(k);
    }
    if let Some(q) = &v.exact {
        out["exact_at_k"] = rational_json(q);
    }
    if !v.notes.is_empty() {
        out["notes"] = json!(v.notes);
    }
    out
}

fn integral_json(i: &Integral) -> Value {
    let mut out = json!({"value": padic_json(&i.value), "precision": i.precision, "level": i.level});
    if let Some(q) = &i.riemann_sum {
        out["riemann_sum"] = rational_json(q);
    }
    out
}

fn bernoulli(a: &BernoulliArgs) -> Outcome {
    if a.k > 4096 {
        return Err(Failure("k above 4096".into()));
    }
    if let Some(t) = &a.at {
        let t = parse_rational(t)?;
        let v = exactq::bernoulli_poly(a.k, &t);
        return Ok((json!({"k": a.k, "at": rational_json(&t), "value": rational_json(&v)}), true));
    }
    if let (Some(ell), Some(j)) = (a.ell, a.j) {
        padic::check_prime(ell)?;
        if a.k == 0 {
            return Err(Failure("B_{k,ω^j} needs k >= 1".into()));
        }
        let digits = a.prec.min(padic::max_digits(ell));
        let v = exactq::gen_bernoulli(a.k, j, ell, digits);
        let mut out = json!({"k": a.k, "ell": ell, "j": j, "value": padic_json(&v)});
        if let Some(q) = exactq::gen_bernoulli_exact(a.k, j, ell) {
            out["exact"] = rational_json(&q);
        }
        return Ok((out, true));
    }
    Ok((json!({"k": a.k, "value": rational_json(&exactq::bernoulli_number(a.k))}), true))
}

fn teichmuller(a: &TeichmullerArgs) -> Outcome {
    padic::check_prime(a.ell)?;
    let digits = a.prec.min(padic::max_digits(a.ell));
    let w = padic::teichmuller_int(a.a, a.ell, digits)?;
    Ok((json!({"ell": a.ell, "a": a.a, "value": padic_json(&w)}), true))
}

fn measure_cmd(m: &MeasureCommand) -> Outcome {
    let out = match m {
        MeasureCommand::Validate(f) => {
            let t = read_tower(f)?;
            json!({
                "valid": true,
                "ell": t.ell(),
                "rank": t.rank(),
                "depth": t.depth(),
                "denom_exponent": t.denom_exponent(),
                "total_mass": rational_json(t.total_mass()),
            })
        }
        MeasureCommand::Bernoulli { ell, c, depth } => tower_json(&measure::bernoulli_measure(*c, *ell, *depth)?),
        MeasureCommand::Pushforward { file, matrix } => {
            let t = read_tower(file)?;
            tower_json(&t.pushforward_linear(&parse::parse_matrix(matrix)?)?)
        }
        MeasureCommand::Integrate { file, integrand, region, level } => {
            let t = read_tower(file)?;
            let f = parse::parse_integrand(integrand, t.rank(), t.ell())?;
            let region = match region {
                RegionArg::Full => Region::Full,
                RegionArg::Units => Region::Units,
            };
            integral_json(&measure::integrate(&t, &f, &region, level.unwrap_or(t.depth()))?)
        }
        MeasureCommand::Transform { file, kind, degree } => {
            let t = read_tower(file)?;
            if *degree > 64 {
                return Err(Failure("degree above 64".into()));
            }
            let (s, name) = match kind {
                KindArg::P => (measure::p_transform(&t, *degree), "P"),
                KindArg::F => (measure::f_transform(&t, *degree), "F"),
            };
            let coeffs: Vec<Value> = s
                .coeffs
                .iter()
                .map(|(idx, c)| json!({"index": idx, "value": rational_json(c), "precision": s.coeff_precision(idx)}))
                .collect();
            json!({"kind": name, "ell": s.ell, "rank": s.rank, "degree": s.degree, "level": s.level, "coefficients": coeffs})
        }
        MeasureCommand::Word { file, word, level } => {
            let t = read_tower(file)?;
            let exps = word
                .split(',')
                .map(|p| p.trim().parse::<u32>().ok().filter(|&a| a <= 64))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Failure(format!("malformed word {word:?}")))?;
            let w = measure::word_coefficient(&t, &exps, level.unwrap_or(t.depth()))?;
            json!({
                "word": exps,
                "value": padic_json(&w.value),
                "precision": w.precision,
                "riemann_sum": rational_json(&w.riemann_sum),
                "level": w.level,
            })
        }
    };
    Ok((out, true))
}

fn kl(a: &KlArgs) -> Outcome {
    let s = parse_s(&a.s, a.ell)?;
    let q = LQuery {
        ell: a.ell,
        beta: a.beta,
        s,
        c: a.c,
        method: match a.method {
            MethodArg::Measure => Method::Measure,
            MethodArg::Interpolation => Method::Interpolation,
        },
        level: a.level,
        prec: a.prec,
    };
    let v = if a.minus_one { lfunc::minus_one_l(&q)? } else { lfunc::kubota_leopoldt(&q)? };
    let mut out = lvalue_json(&v, Some(a.prec));
    out["ell"] = json!(a.ell);
    out["beta"] = json!(a.beta);
    out["s"] = json!(a.s);
    out["method"] = json!(match a.method {
        MethodArg::Measure => "measure",
        MethodArg::Interpolation => "interpolation",
    });
    if matches!(a.method, MethodArg::Measure) {
        out["c"] = json!(a.c.unwrap_or_else(|| lfunc::default_regularizer(a.ell)));
        out["level"] = json!(a.level);
    }
    if a.minus_one {
        out["function"] = json!("minus_one");
    }
    Ok((out, true))
}

fn hurwitz(a: &HurwitzArgs) -> Outcome {
    let s = parse_s(&a.s, a.ell)?;
    let v = lfunc::hurwitz_l(a.beta, &s, a.i, a.m, a.ell, a.prec)?;
    let mut out = lvalue_json(&v, None);
    out["ell"] = json!(a.ell);
    out["beta"] = json!(a.beta);
    out["s"] = json!(a.s);
    out["i"] = json!(a.i);
    out["m"] = json!(a.m);
    Ok((out, true))
}

fn dirichlet(a: &DirichletArgs) -> Outcome {
    let s = parse_s(&a.s, a.ell)?;
    let psi = DirichletCharacter::parse(&a.psi, a.ell)?;
    let v = lfunc::dirichlet_l(&psi, a.beta, &s, a.prec)?;
    let mut out = lvalue_json(&v, None);
    if let Some(k) = v.k {
        if let Some(c) = lfunc::classical_special_exact(&psi, k) {
            out["classical_at_k"] = rational_json(&c);
        }
    }
    out["ell"] = json!(a.ell);
    out["beta"] = json!(a.beta);
    out["s"] = json!(a.s);
    out["psi"] = json!(a.psi);
    Ok((out, true))
}

fn zinv(a: &ZinvArgs) -> Outcome {
    let s = parse_s(&a.s, a.ell)?;
    let primes = a
        .primes
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()?;
    let r = lfunc::zinv_l(a.beta, &s, &primes, a.ell, a.prec)?;
    let mut out = lvalue_json(&r.result, None);
    out["ell"] = json!(a.ell);
    out["beta"] = json!(a.beta);
    out["s"] = json!(a.s);
    out["primes"] = json!(primes);
    out["closed_form_at_k"] = rational_json(&r.closed_form);
    out["product_formula_at_k"] = rational_json(&r.product);
    out["ratio"] = r.ratio.as_ref().map_or(Value::Null, rational_json);
    out["predicted_sign"] = json!(r.predicted_sign);
    out["sign_report"] = json!(r.note);
    Ok((out, true))
}

fn parse_rational_list(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(|p| parse_rational(p).map_err(Failure::from)).collect()
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    if a.degree == 0 || a.degree > ncalg::MAX_DEGREE {
        return Err(Failure(format!("degree must lie in 1..={}", ncalg::MAX_DEGREE)));
    }
    if a.instances.is_some_and(|n| n > 1000) {
        return Err(Failure("at most 1000 instances".into()));
    }
    let report = match a.suite {
        Suite::Bch => verify::verify_bch(a.degree, a.seed, a.instances.unwrap_or(20)),
        Suite::Gamma => {
            let chis = match &a.chi {
                Some(c) => parse_rational_list(c)?,
                None => vec![exactq::int(2), exactq::int(3), exactq::rat(1, 2)],
            };
            verify::verify_gamma(a.degree, &chis, a.seed, a.instances.unwrap_or(5))
        }
        Suite::Inversion => {
            let chi = a.chi.as_deref().map(parse_rational).transpose()?;
            let t = a.t.as_deref().map(parse_rational).transpose()?;
            verify::verify_inversion(a.degree, chi.as_ref(), t.as_ref(), a.seed, a.instances.unwrap_or(10))
        }
    };
    let passed = report.passed;
    Ok((serde_json::to_value(&report)?, passed))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Bernoulli(a) => bernoulli(a),
        Command::Teichmuller(a) => teichmuller(a),
        Command::Measure(m) => measure_cmd(m),
        Command::Kl(a) => kl(a),
        Command::Hurwitz(a) => hurwitz(a),
        Command::Dirichlet(a) => dirichlet(a),
        Command::Zinv(a) => zinv(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, ok) = match run(&cli) {
        Ok(r) => r,
        Err(Failure(msg)) => (json!({"error": msg}), false),
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON serializes");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

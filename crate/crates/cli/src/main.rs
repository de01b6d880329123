//! Command-line surface for exact colored Jones computation, head/tail
//! extraction, q-series construction, and identity checking.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 computation
//! error. Output is deterministic: identical inputs give byte-identical
//! output regardless of thread count (`QTAIL_THREADS` caps workers).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qtail_core::braid::{torus_braid, BraidWord};
use qtail_core::qlaurent::{QExp, QPoly, Sign, SignedMonomial};
use qtail_core::series::{
    andrews_gordon_rhs, euler_inf, false_theta_psi, ramanujan_p200, theta_f, theta_f_product,
    P200Form, TruncatedSeries,
};
use qtail_core::skein::torus2m_reduced_jones;
use qtail_core::statesum::{jones_statesum, StateSumConfig};
use qtail_core::tails::{multi_head_extract, tail_extract, TailReport};
use qtail_core::torusformulas::{hikami_sum_raw, morton_2odd, psi_sum, walk_25, TorusMode};

#[derive(Parser)]
#[command(
    name = "qtail",
    version,
    about = "Exact colored Jones polynomials and their head/tail q-series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the colored Jones polynomial of a braid closure or torus link.
    Compute(ComputeArgs),
    /// Extract the tail (stabilized ascending coefficients) of a link.
    Tail(ExtractArgs),
    /// Extract the head (the tail after q -> 1/q).
    Head(ExtractArgs),
    /// Print a classical q-series to a given order.
    Series(SeriesArgs),
    /// Verify an identity; prints PASS or FAIL with the first mismatch.
    Check(CheckArgs),
}

#[derive(Args)]
struct LinkArgs {
    /// Braid word, e.g. "3: 1 -2 1 -2" or a bundled name like figure8
    #[arg(long, conflicts_with = "torus")]
    braid: Option<String>,
    /// Torus link parameters m p, e.g. --torus 2 -3
    #[arg(long, num_args = 2, value_names = ["M", "P"], allow_negative_numbers = true)]
    torus: Option<Vec<i64>>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Statesum,
    Skein,
    Morton,
    Hikami,
    Psi,
    Walk25,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    link: LinkArgs,
    /// Color N (N = 2 is the ordinary Jones polynomial)
    #[arg(long, default_value_t = 2)]
    color: u64,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Print the raw polynomial instead of its canonical form
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    link: LinkArgs,
    /// Largest color to scan
    #[arg(long, default_value_t = 6)]
    nmax: u64,
    /// Cap on the reported series order
    #[arg(long, default_value_t = 16)]
    order: i64,
    /// 1 = all colors together, 2 = split into odd/even colors
    #[arg(long, default_value_t = 1)]
    parity: u64,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SeriesArgs {
    /// One of: euler, theta, false-theta, andrews-gordon, p200
    #[arg(long)]
    name: String,
    #[arg(long, default_value_t = 16)]
    order: i64,
    /// First theta argument, e.g. "-q^2" (theta and false-theta)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Second theta argument, e.g. "-q"
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Index k for andrews-gordon
    #[arg(long)]
    k: Option<u64>,
    /// Form for p200: alternating, entry9 or p200
    #[arg(long)]
    form: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// One of: andrews-gordon, p200, jacobi, crossmethod, fourp
    name: String,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long)]
    nmax: Option<u64>,
    #[arg(long)]
    order: Option<i64>,
}

enum CliError {
    Usage(String),
    Computation(String),
}

impl From<qtail_core::Error> for CliError {
    fn from(e: qtail_core::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Resolved link specification.
enum LinkSpec {
    Braid(BraidWord),
    Torus { m: i64, p: i64 },
}

impl LinkSpec {
    fn parse(args: &LinkArgs) -> CliResult<LinkSpec> {
        match (&args.braid, &args.torus) {
            (Some(text), None) => {
                if let Some(b) = qtail_core::knots::bundled_braid(text.trim()) {
                    return Ok(LinkSpec::Braid(b));
                }
                let b = BraidWord::parse(text).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(LinkSpec::Braid(b))
            }
            (None, Some(mp)) => {
                let (m, p) = (mp[0], mp[1]);
                if m < 2 || p == 0 {
                    return usage("--torus needs m >= 2 and p != 0");
                }
                Ok(LinkSpec::Torus { m, p })
            }
            _ => usage("exactly one of --braid or --torus is required"),
        }
    }

    fn braid(&self) -> qtail_core::Result<BraidWord> {
        match self {
            LinkSpec::Braid(b) => Ok(b.clone()),
            LinkSpec::Torus { m, p } => torus_braid(*m as usize, *p),
        }
    }

    fn mirror(&self) -> LinkSpec {
        match self {
            LinkSpec::Braid(b) => LinkSpec::Braid(b.mirror()),
            LinkSpec::Torus { m, p } => LinkSpec::Torus { m: *m, p: -p },
        }
    }

    fn default_method(&self) -> Method {
        match self {
            LinkSpec::Braid(_) => Method::Statesum,
            LinkSpec::Torus { m, p } => {
                if *m == 2 {
                    if p.rem_euclid(2) == 1 && p.abs() > 1 {
                        Method::Morton
                    } else if p.rem_euclid(2) == 0 && *p < 0 {
                        // hikami is a negative-chirality formula
                        Method::Hikami
                    } else {
                        Method::Statesum
                    }
                } else if gcd(*m, *p) == 1 {
                    Method::Psi
                } else {
                    Method::Statesum
                }
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn threads_from_env() -> usize {
    match std::env::var("QTAIL_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&t| t >= 1).unwrap_or(1),
        Err(_) => std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1),
    }
}

/// The colored Jones polynomial (or a full ±q^s class representative) of
/// the given link at one color, by the requested method.
fn jones_value(spec: &LinkSpec, method: Method, color: u64) -> CliResult<QPoly> {
    match method {
        Method::Statesum => {
            let braid = spec.braid()?;
            let cfg = StateSumConfig::new(color as usize).with_threads(threads_from_env());
            Ok(jones_statesum(&braid, &cfg)?)
        }
        Method::Skein => {
            let LinkSpec::Torus { m: 2, p } = spec else {
                return usage("--method skein needs --torus 2 P");
            };
            Ok(torus2m_reduced_jones(*p, color - 1)?)
        }
        Method::Morton => {
            let LinkSpec::Torus { m: 2, p } = spec else {
                return usage("--method morton needs --torus 2 P with odd |P| >= 3");
            };
            if p.rem_euclid(2) == 0 || p.abs() < 3 {
                return usage("--method morton needs odd |P| >= 3");
            }
            let k = (p.unsigned_abs() - 1) / 2;
            let j = morton_2odd(k, color, TorusMode::Exact)?;
            Ok(orient(j, *p > 0))
        }
        Method::Hikami => {
            let LinkSpec::Torus { m: 2, p } = spec else {
                return usage("--method hikami needs --torus 2 P with even P < 0");
            };
            if p.rem_euclid(2) != 0 || *p > 0 {
                // The sum only determines the ascending end of J (below
                // q^N); the positive link's low coefficients live at the
                // other end, which this formula does not carry.
                return usage("--method hikami computes negative (2,2k) links; use P < 0");
            }
            let k = p.unsigned_abs() / 2;
            // class representative (q^N - 1) J_N; exact division does not
            // exist for links, so the invisible unit factor stays in place
            Ok(hikami_sum_raw(k, color))
        }
        Method::Psi => {
            let LinkSpec::Torus { m, p } = spec else {
                return usage("--method psi needs --torus M P with gcd(M, |P|) = 1");
            };
            if gcd(*m, *p) != 1 {
                return usage("--method psi needs coprime M and P");
            }
            let j = psi_sum(*m as u64, p.unsigned_abs(), color, TorusMode::Exact)?;
            Ok(orient(j, *p > 0))
        }
        Method::Walk25 => {
            let LinkSpec::Torus { m: 2, p } = spec else {
                return usage("--method walk25 needs --torus 2 5 or --torus 2 -5");
            };
            if p.abs() != 5 {
                return usage("--method walk25 needs P = 5 or P = -5");
            }
            let j = walk_25(color)?;
            Ok(orient(j, *p < 0))
        }
    }
}

/// The closed forms natively compute the negative-braid chirality; mirror
/// when the caller asked for the other one.
fn orient(j: QPoly, flip: bool) -> QPoly {
    if flip {
        j.reverse()
    } else {
        j
    }
}

fn cmd_compute(args: &ComputeArgs) -> CliResult<()> {
    let spec = LinkSpec::parse(&args.link)?;
    if args.color < 1 {
        return usage("--color must be at least 1");
    }
    let method = args.method.unwrap_or_else(|| spec.default_method());
    let value = jones_value(&spec, method, args.color)?;
    if args.raw {
        if args.json {
            println!("{}", value.to_json());
        } else {
            println!("{value}");
        }
        return Ok(());
    }
    let c = value.canonical();
    if args.json {
        println!("{}", c.normalized.to_json());
    } else {
        println!("canonical: {}", c.normalized);
        println!("sign: {}", c.sign.as_int());
        println!("shift: q^{}", c.shift);
    }
    Ok(())
}

fn extraction_source<'a>(
    spec: &'a LinkSpec,
    method: Method,
) -> impl Fn(u64) -> qtail_core::Result<QPoly> + 'a {
    move |n| {
        jones_value(spec, method, n).map_err(|e| match e {
            CliError::Usage(msg) | CliError::Computation(msg) => qtail_core::Error::OutOfRange(msg),
        })
    }
}

fn cmd_extract(args: &ExtractArgs, head: bool) -> CliResult<()> {
    let spec = LinkSpec::parse(&args.link)?;
    // head of K = tail of the mirror image, so both verbs run the tail
    // machinery; sources always hand back full class representatives.
    let spec = if head { spec.mirror() } else { spec };
    let method = args.method.unwrap_or_else(|| spec.default_method());
    // validate the method/spec pairing once up front
    jones_value(&spec, method, 1)?;
    let source = extraction_source(&spec, method);
    let reports: Vec<TailReport> = match args.parity {
        1 => vec![tail_extract(source, args.nmax, args.order)?],
        // multi_head_extract reverses internally; feed it the mirror
        2 => {
            let mirrored = spec.mirror();
            let m_source = extraction_source(&mirrored, method);
            multi_head_extract(m_source, args.nmax, args.order, 2)?
        }
        _ => return usage("--parity must be 1 or 2"),
    };
    if args.json {
        let js: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        if js.len() == 1 {
            println!("{}", js[0]);
        } else {
            println!("{}", serde_json::Value::Array(js));
        }
        return Ok(());
    }
    let side = if head { "head" } else { "tail" };
    for (i, r) in reports.iter().enumerate() {
        if reports.len() > 1 {
            let parity = if i == 0 { "odd colors" } else { "even colors" };
            println!("[{parity}]");
        }
        println!("colors: {:?}", r.colors);
        println!("agreement depths: {:?}", r.agreement);
        println!("status: {}", r.status.as_str());
        println!("{side}: {}", r.stabilized);
    }
    Ok(())
}

fn parse_signed_monomial(text: &str) -> CliResult<SignedMonomial> {
    let t = text.trim();
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (Sign::Minus, r.trim()),
        None => (Sign::Plus, t),
    };
    let exp = if rest == "q" {
        1
    } else if let Some(k) = rest.strip_prefix("q^") {
        k.parse::<i64>()
            .map_err(|_| CliError::Usage(format!("bad monomial {text:?}")))?
    } else {
        return usage(format!("bad monomial {text:?}, expected e.g. \"-q^2\""));
    };
    Ok(SignedMonomial::new(sign, QExp::whole(exp)))
}

fn cmd_series(args: &SeriesArgs) -> CliResult<()> {
    if args.order < 1 {
        return usage("--order must be at least 1");
    }
    let series: TruncatedSeries = match args.name.as_str() {
        "euler" => euler_inf(args.order),
        "theta" | "false-theta" => {
            let (Some(a), Some(b)) = (&args.a, &args.b) else {
                return usage("theta series need --a and --b monomials");
            };
            let a = parse_signed_monomial(a)?;
            let b = parse_signed_monomial(b)?;
            if args.name == "theta" {
                theta_f(a, b, args.order)?
            } else {
                false_theta_psi(a, b, args.order)?
            }
        }
        "andrews-gordon" => {
            let Some(k) = args.k else {
                return usage("andrews-gordon needs --k");
            };
            andrews_gordon_rhs(k, args.order)?
        }
        "p200" => {
            let form = match args.form.as_deref() {
                Some("alternating") => P200Form::Alternating,
                Some("entry9") => P200Form::Entry9,
                Some("p200") | None => P200Form::P200,
                Some(other) => return usage(format!("unknown p200 form {other:?}")),
            };
            ramanujan_p200(form, args.order)
        }
        other => return usage(format!("unknown series {other:?}")),
    };
    if args.json {
        println!("{}", series.to_json());
    } else {
        println!("{series}");
    }
    Ok(())
}

/// Compare two polynomials and print the verdict; returns pass/fail.
fn report_comparison(label: &str, lhs: &QPoly, rhs: &QPoly, order: i64) -> bool {
    let a = lhs.truncate_q(order);
    let b = rhs.truncate_q(order);
    if a == b {
        println!("PASS {label}");
        return true;
    }
    let diff = &a - &b;
    let e = diff.min_exp().expect("nonzero difference");
    println!(
        "FAIL {label}: first mismatch at q^{}: {} vs {}",
        e,
        a.coeff(e),
        b.coeff(e)
    );
    false
}

fn cmd_check(args: &CheckArgs) -> CliResult<bool> {
    match args.name.as_str() {
        "andrews-gordon" => {
            let k = args.k.unwrap_or(2);
            let order = args.order.unwrap_or(60);
            if k < 2 {
                return usage("--k must be at least 2");
            }
            let lhs = theta_f(
                SignedMonomial::neg_q_pow(2 * k as i64),
                SignedMonomial::neg_q_pow(1),
                order,
            )?;
            let rhs = andrews_gordon_rhs(k, order)?;
            Ok(report_comparison(
                &format!("andrews-gordon k={k} order={order}"),
                lhs.poly(),
                rhs.poly(),
                order,
            ))
        }
        "p200" => {
            let order = args.order.unwrap_or(60);
            let a = ramanujan_p200(P200Form::Alternating, order);
            let b = ramanujan_p200(P200Form::Entry9, order);
            let c = ramanujan_p200(P200Form::P200, order);
            let ok1 = report_comparison(
                &format!("p200 alternating=entry9 order={order}"),
                a.poly(),
                b.poly(),
                order,
            );
            let ok2 = report_comparison(
                &format!("p200 entry9=p200 order={order}"),
                b.poly(),
                c.poly(),
                order,
            );
            Ok(ok1 && ok2)
        }
        "jacobi" => {
            let order = args.order.unwrap_or(40);
            let pairs = [(2i64, 1i64), (4, 1), (6, 1), (1, 3)];
            let mut ok = true;
            for (ea, eb) in pairs {
                let a = SignedMonomial::neg_q_pow(ea);
                let b = SignedMonomial::neg_q_pow(eb);
                let sum = theta_f(a, b, order)?;
                let prod = theta_f_product(a, b, order)?;
                ok &= report_comparison(
                    &format!("jacobi f(-q^{ea},-q^{eb}) order={order}"),
                    sum.poly(),
                    prod.poly(),
                    order,
                );
            }
            Ok(ok)
        }
        "crossmethod" => {
            let m = args.m.unwrap_or(2);
            let Some(p) = args.p else {
                return usage("crossmethod needs --p");
            };
            let nmax = args.nmax.unwrap_or(4);
            let spec = LinkSpec::Torus { m, p };
            let mut ok = true;
            for color in 1..=nmax {
                let state = jones_value(&spec, Method::Statesum, color)?
                    .canonical()
                    .normalized;
                let mut witnesses: Vec<(&str, QPoly, i64)> = Vec::new();
                if m == 2 {
                    let skein = jones_value(&spec, Method::Skein, color)?
                        .canonical()
                        .normalized;
                    witnesses.push(("skein", skein, i64::MAX / 8));
                    if p.rem_euclid(2) == 1 && p.abs() >= 3 {
                        let morton = jones_value(&spec, Method::Morton, color)?
                            .canonical()
                            .normalized;
                        witnesses.push(("morton", morton, i64::MAX / 8));
                    }
                    if p.rem_euclid(2) == 0 {
                        // links: the formula is negative-chirality and its
                        // class representative carries the invisible
                        // (q^N - 1) factor, so compare the negative side
                        // of the state sum below q^N
                        let neg = LinkSpec::Torus { m, p: -p.abs() };
                        let hik = jones_value(&neg, Method::Hikami, color)?
                            .canonical()
                            .normalized;
                        let state_neg = if p > 0 {
                            state.reverse().canonical().normalized
                        } else {
                            state.clone()
                        };
                        let label = if p > 0 { "hikami (mirror)" } else { "hikami" };
                        ok &= report_comparison(
                            &format!("crossmethod ({m},{p}) N={color} statesum={label}"),
                            &state_neg,
                            &hik,
                            color as i64,
                        );
                    }
                }
                if m >= 2 && gcd(m, p) == 1 && !(m == 2 && p.abs() == 1) {
                    let psi = jones_value(&spec, Method::Psi, color)?
                        .canonical()
                        .normalized;
                    witnesses.push(("psi", psi, i64::MAX / 8));
                }
                for (name, value, order) in witnesses {
                    ok &= report_comparison(
                        &format!("crossmethod ({m},{p}) N={color} statesum={name}"),
                        &state,
                        &value,
                        order,
                    );
                }
            }
            Ok(ok)
        }
        "fourp" => {
            let Some(p) = args.p else {
                return usage("fourp needs --p (odd, coprime to 4)");
            };
            let order = args.order.unwrap_or(30);
            if p < 5 || p % 2 == 0 {
                return usage("fourp needs odd p >= 5");
            }
            let depth = order / 2 + 1;
            let nmax = (depth + 2) as u64;
            let source = |n: u64| psi_sum(4, p as u64, n, TorusMode::Exact).map(|j| j.reverse());
            let reports = multi_head_extract(source, nmax, depth, 2)?;
            for (r, parity) in reports.iter().zip(["odd", "even"]) {
                if r.status != qtail_core::tails::StabilizationStatus::Stabilized {
                    println!("FAIL fourp p={p}: {parity}-color heads did not stabilize");
                    return Ok(false);
                }
            }
            let h_odd = reports[0].stabilized.poly();
            let h_even = reports[1].stabilized.poly();
            // H_odd(q^2) - q^{p-2} H_even(q^2)
            let lhs = &h_odd.stretch(2) - &h_even.stretch(2).shift(QExp::whole(p - 2));
            let rhs = theta_f(
                SignedMonomial::neg_q_pow(2),
                SignedMonomial::neg_q_pow(p - 2),
                order,
            )?;
            Ok(report_comparison(
                &format!("fourp p={p} order={order}"),
                &lhs,
                rhs.poly(),
                order,
            ))
        }
        other => usage(format!("unknown check {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(args) => cmd_compute(args).map(|()| true),
        Command::Tail(args) => cmd_extract(args, false).map(|()| true),
        Command::Head(args) => cmd_extract(args, true).map(|()| true),
        Command::Series(args) => cmd_series(args).map(|()| true),
        Command::Check(args) => cmd_check(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("computation error: {msg}");
            ExitCode::from(3)
        }
    }
}

//! Command-line front end: reference tables, exact coefficient
//! printing, certified oracle values, asymptotic expansions, and
//! hyperbolicity scans.
//!
//! Exit codes: 0 on success, 2 for invalid input or domain errors,
//! 3 when a result cannot be certified at the requested precision.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use output::{emit, Format};
use rug::ops::Pow;
use rug::{Float, Rational};
use xi_core::coeffs::{a_coeff, a_coeff_f, c_coeff, ell_coeff, mu_coeff, tau_coeff, SuitableFn};
use xi_core::expand::{expand_b2n, expand_gamma, expand_laplace, expand_xi_deriv, ExpansionResult};
use xi_core::interval::Interval;
use xi_core::jensen::{
    certify_hyperbolic, jensen_j, jensen_p, jensen_q, turan_sufficient, HyperbolicityStatus,
};
use xi_core::oracle::{Oracle, OracleResult};
use xi_core::rational::rat;
use xi_core::real::{guard_for_index, to_sci_string, EvalContext};

#[derive(Parser)]
#[command(
    name = "xi",
    version,
    about = "Taylor coefficients of the Riemann xi function: certified values, exact expansion coefficients, and hyperbolicity certificates"
)]
struct Cli {
    /// Significant decimal digits for numeric output (6..=1000)
    #[arg(long, global = true, default_value_t = 20)]
    digits: u32,

    /// Directory for the oracle's persistent cache
    #[arg(long, global = true, env = "XI_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads for the quadrature node sweeps
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the γ(1000) reference row at orders 1, 3, 5, 7 plus the oracle value
    Table1,
    /// Print the b₂ₙ reference row at n = 1000 at the same orders
    Table2,
    /// Print one expansion coefficient in exact closed form
    Coeff {
        family: CoeffFamily,
        index: u32,
        /// Weight for the a family: power:BETA or powergauss:BETA
        #[arg(long)]
        weight: Option<String>,
    },
    /// Evaluate a quantity through the certified quadrature oracle
    Compute {
        kind: Kind,
        n: u32,
        /// Laplace rate: a decimal, "pi", or "pi/K"
        #[arg(long)]
        alpha: Option<String>,
        /// Laplace weight: power:BETA or powergauss:BETA (default power:0)
        #[arg(long)]
        weight: Option<String>,
    },
    /// Evaluate an asymptotic expansion at a given order
    Expand {
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        order: u32,
        /// Laplace rate: a decimal, "pi", or "pi/K"
        #[arg(long)]
        alpha: Option<String>,
        /// Laplace weight: power:BETA or powergauss:BETA (default power:0)
        #[arg(long)]
        weight: Option<String>,
        /// Also run the oracle and mark how many digits agree
        #[arg(long)]
        compare_oracle: bool,
    },
    /// Certify root reality for a polynomial family over a (d, n) grid
    HyperScan {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        n_max: u32,
        /// Laguerre parameter for the q family: a rational ≥ -2
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Evaluate the sufficient Turán sum S over an index range
    TuranScan {
        #[arg(long)]
        d: u32,
        /// Inclusive range A:B of shift indices
        #[arg(long)]
        n_range: String,
    },
    /// Inspect or clear the persistent oracle cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffFamily {
    /// Taylor-coefficient corrections c_k(w)
    C,
    /// Derivative-scale corrections μ_k(w)
    Mu,
    /// Hermite-scale corrections τ_k(w)
    Tau,
    /// Laplace-integral corrections a_r(v)
    A,
    /// Logarithm-series coefficients ℓ_i(u)
    Ell,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gamma,
    XiDeriv,
    B2n,
    Laplace,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    J,
    P,
    Q,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Report file count and total size
    Stats,
    /// Delete every cached record
    Clear,
}

enum CliError {
    Usage(String),
    Uncertified(String),
}

impl From<xi_core::Error> for CliError {
    fn from(e: xi_core::Error) -> Self {
        match e {
            xi_core::Error::Input(m) | xi_core::Error::Domain(m) => CliError::Usage(m),
            xi_core::Error::Precision(m) => CliError::Uncertified(m),
            xi_core::Error::Io(e) => CliError::Uncertified(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    #[cfg(feature = "parallel")]
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Uncertified(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if !(6..=1000).contains(&cli.digits) {
        return Err(CliError::Usage(format!(
            "--digits must be in 6..=1000, got {}",
            cli.digits
        )));
    }
    let oracle = Oracle::new(cli.cache_dir.clone());
    match &cli.command {
        Command::Table1 => reference_row(&cli, &oracle, Kind::Gamma),
        Command::Table2 => reference_row(&cli, &oracle, Kind::B2n),
        Command::Coeff { family, index, weight } => print_coeff(&cli, *family, *index, weight.as_deref()),
        Command::Compute { kind, n, alpha, weight } => {
            compute(&cli, &oracle, *kind, *n, alpha.as_deref(), weight.as_deref())
        }
        Command::Expand {
            kind,
            n,
            order,
            alpha,
            weight,
            compare_oracle,
        } => expand(
            &cli,
            &oracle,
            *kind,
            *n,
            *order,
            alpha.as_deref(),
            weight.as_deref(),
            *compare_oracle,
        ),
        Command::HyperScan {
            family,
            d_max,
            n_max,
            alpha,
        } => hyper_scan(&cli, &oracle, *family, *d_max, *n_max, alpha.as_deref()),
        Command::TuranScan { d, n_range } => turan_scan(&cli, &oracle, *d, n_range),
        Command::Cache { action } => cache_admin(&cli, &oracle, action),
    }
}

/// Parses a rational from "N", "N/D", or a plain decimal like "-1.25".
fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse '{s}' as a rational number"));
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: String = format!("{int_part}{frac_part}");
        let num: Rational = digits.parse().map_err(|_| bad())?;
        let den = rug::Integer::from(10u32).pow(frac_part.len() as u32);
        return Ok(num / Rational::from(den));
    }
    s.parse().map_err(|_| bad())
}

/// Parses a positive rate: "pi", "pi/K", or a decimal.
fn parse_rate(s: &str, prec: u32) -> Result<Float, CliError> {
    let s = s.trim();
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    if s.eq_ignore_ascii_case("pi") {
        return Ok(pi);
    }
    if let Some(rest) = s.strip_prefix("pi/").or_else(|| s.strip_prefix("PI/")) {
        let den: u32 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad divisor in rate '{s}'")))?;
        if den == 0 {
            return Err(CliError::Usage("rate divisor must be nonzero".into()));
        }
        return Ok(pi / den);
    }
    let r = parse_rational(s)?;
    Ok(Float::with_val(prec, &r))
}

/// Parses "power:BETA" or "powergauss:BETA"; `None` means power:0.
fn parse_weight(s: Option<&str>) -> Result<SuitableFn, CliError> {
    let Some(s) = s else {
        return Ok(SuitableFn::Power(rat(0, 1)));
    };
    let (kind, beta) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("weight '{s}' is not kind:beta")))?;
    let beta = parse_rational(beta)?;
    match kind.to_ascii_lowercase().as_str() {
        "power" => Ok(SuitableFn::Power(beta)),
        "powergauss" => Ok(SuitableFn::PowerGauss(beta)),
        other => Err(CliError::Usage(format!(
            "unknown weight kind '{other}' (expected power or powergauss)"
        ))),
    }
}

fn indexed_ctx(digits: u32, n: u32) -> EvalContext {
    EvalContext::with_guard(digits, guard_for_index(n))
}

/// Renders an oracle result at the requested digit count, capped at
/// what its error bound certifies.
fn certified_string(r: &OracleResult, digits: u32) -> String {
    to_sci_string(&r.value, digits.min(r.certified_digits()).max(1) as usize)
}

/// Number of agreeing leading significant digits, plus the first string
/// with a '|' marker after the agreeing prefix.
fn digit_agreement(a: &str, b: &str) -> (usize, String) {
    let (sig_a, exp_a) = a.split_once('e').unwrap_or((a, "0"));
    let (sig_b, exp_b) = b.split_once('e').unwrap_or((b, "0"));
    if exp_a != exp_b {
        return (0, format!("|{a}"));
    }
    let mut agree = 0usize;
    let mut cut = 0usize;
    for (ca, cb) in sig_a.chars().zip(sig_b.chars()) {
        if ca != cb {
            break;
        }
        cut += ca.len_utf8();
        if ca.is_ascii_digit() {
            agree += 1;
        }
    }
    let mut marked = String::from(&sig_a[..cut]);
    marked.push('|');
    marked.push_str(&sig_a[cut..]);
    marked.push('e');
    marked.push_str(exp_a);
    (agree, marked)
}

fn reference_row(cli: &Cli, oracle: &Oracle, kind: Kind) -> Result<(), CliError> {
    let ctx = indexed_ctx(cli.digits, 1000);
    let mut rows = Vec::new();
    for order in [1u32, 3, 5, 7] {
        let r = match kind {
            Kind::Gamma => expand_gamma(1000, order, &ctx)?,
            Kind::B2n => expand_b2n(1000, order, &ctx)?,
            _ => unreachable!("reference rows exist for gamma and b2n"),
        };
        rows.push(vec![
            format!("expansion order {order}"),
            to_sci_string(&r.value, cli.digits as usize),
        ]);
    }
    let reference = match kind {
        Kind::Gamma => oracle.gamma(1000, &ctx)?,
        Kind::B2n => oracle.b2n(1000, &ctx)?,
        _ => unreachable!(),
    };
    rows.push(vec!["oracle".into(), certified_string(&reference, cli.digits)]);
    emit(cli.format, &["route", "value"], &rows);
    Ok(())
}

fn print_coeff(cli: &Cli, family: CoeffFamily, index: u32, weight: Option<&str>) -> Result<(), CliError> {
    let (name, text) = match family {
        CoeffFamily::C => ("c", c_coeff(index).canonical_text()),
        CoeffFamily::Mu => ("mu", mu_coeff(index).canonical_text()),
        CoeffFamily::Tau => ("tau", tau_coeff(index).canonical_text()),
        CoeffFamily::Ell => {
            if index == 0 {
                return Err(CliError::Usage("the ℓ family starts at index 1".into()));
            }
            ("ell", ell_coeff(index).canonical_text())
        }
        CoeffFamily::A => match weight {
            None => ("a", a_coeff(index).canonical_text()),
            Some(w) => ("a", a_coeff_f(index, &parse_weight(Some(w))?).canonical_text()),
        },
    };
    let rows = vec![vec![name.to_string(), index.to_string(), text]];
    emit(cli.format, &["family", "index", "value"], &rows);
    Ok(())
}

fn compute(
    cli: &Cli,
    oracle: &Oracle,
    kind: Kind,
    n: u32,
    alpha: Option<&str>,
    weight: Option<&str>,
) -> Result<(), CliError> {
    let ctx = indexed_ctx(cli.digits, n);
    let (label, r) = match kind {
        Kind::Gamma => ("gamma", oracle.gamma(n, &ctx)?),
        Kind::XiDeriv => ("xi-deriv", oracle.xi_even_deriv(n, &ctx)?),
        Kind::B2n => ("b2n", oracle.b2n(n, &ctx)?),
        Kind::Laplace => {
            let alpha = alpha.ok_or_else(|| {
                CliError::Usage("laplace needs --alpha (a decimal, \"pi\", or \"pi/K\")".into())
            })?;
            let rate = parse_rate(alpha, ctx.working_bits())?;
            let f = parse_weight(weight)?;
            ("laplace", oracle.laplace(n, &rate, &f, &ctx)?)
        }
    };
    if r.certified_digits() < cli.digits {
        return Err(CliError::Uncertified(format!(
            "only {} digits certified at the working precision, wanted {}",
            r.certified_digits(),
            cli.digits
        )));
    }
    let rows = vec![vec![
        label.to_string(),
        n.to_string(),
        certified_string(&r, cli.digits),
        r.certified_digits().to_string(),
        to_sci_string(&r.error_bound, 3),
    ]];
    emit(
        cli.format,
        &["kind", "n", "value", "certified_digits", "error_bound"],
        &rows,
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn expand(
    cli: &Cli,
    oracle: &Oracle,
    kind: Kind,
    n: u32,
    order: u32,
    alpha: Option<&str>,
    weight: Option<&str>,
    compare: bool,
) -> Result<(), CliError> {
    let ctx = indexed_ctx(cli.digits, n);
    let rate_and_weight = |prec: u32| -> Result<(Float, SuitableFn), CliError> {
        let alpha = alpha.ok_or_else(|| {
            CliError::Usage("laplace needs --alpha (a decimal, \"pi\", or \"pi/K\")".into())
        })?;
        Ok((parse_rate(alpha, prec)?, parse_weight(weight)?))
    };
    let (label, r): (&str, ExpansionResult) = match kind {
        Kind::Gamma => ("gamma", expand_gamma(n, order, &ctx)?),
        Kind::XiDeriv => ("xi-deriv", expand_xi_deriv(n, order, &ctx)?),
        Kind::B2n => ("b2n", expand_b2n(n, order, &ctx)?),
        Kind::Laplace => {
            let (rate, f) = rate_and_weight(ctx.working_bits())?;
            ("laplace", expand_laplace(n, &rate, &f, order, &ctx)?)
        }
    };
    let value = to_sci_string(&r.value, cli.digits as usize);
    let mut headers = vec!["kind", "n", "order", "value", "in_regime"];
    let mut row = vec![
        label.to_string(),
        n.to_string(),
        order.to_string(),
        value.clone(),
        r.in_regime.to_string(),
    ];
    if compare {
        let reference = match kind {
            Kind::Gamma => oracle.gamma(n, &ctx)?,
            Kind::XiDeriv => oracle.xi_even_deriv(n, &ctx)?,
            Kind::B2n => oracle.b2n(n, &ctx)?,
            Kind::Laplace => {
                let (rate, f) = rate_and_weight(ctx.working_bits())?;
                oracle.laplace(n, &rate, &f, &ctx)?
            }
        };
        let oracle_text = certified_string(&reference, cli.digits);
        let (agree, marked) = digit_agreement(&value, &oracle_text);
        headers.extend(["oracle", "agreeing_digits", "marked"]);
        row.extend([oracle_text, agree.to_string(), marked]);
    }
    emit(cli.format, &headers, &[row]);
    Ok(())
}

fn gamma_intervals(
    oracle: &Oracle,
    start: u32,
    count: u32,
    ctx: &EvalContext,
) -> Result<Vec<Interval>, CliError> {
    (start..start + count)
        .map(|n| {
            let r = oracle.gamma(n, ctx)?;
            Ok(Interval::new(r.value, r.error_bound))
        })
        .collect()
}

fn hyper_scan(
    cli: &Cli,
    oracle: &Oracle,
    family: Family,
    d_max: u32,
    n_max: u32,
    alpha: Option<&str>,
) -> Result<(), CliError> {
    if d_max == 0 {
        return Err(CliError::Usage("--d-max must be at least 1".into()));
    }
    let q_alpha = match (family, alpha) {
        (Family::Q, Some(s)) => Some(parse_rational(s)?),
        (Family::Q, None) => {
            return Err(CliError::Usage(
                "the q family needs --alpha (a rational ≥ -2)".into(),
            ))
        }
        (_, Some(_)) => {
            return Err(CliError::Usage("--alpha only applies to the q family".into()))
        }
        _ => None,
    };
    let ctx = indexed_ctx(cli.digits, n_max + d_max);
    let g = gamma_intervals(oracle, 0, n_max + d_max + 1, &ctx)?;
    let max_prec = ctx.working_bits().saturating_mul(4);

    let (family_name, alpha_text) = match family {
        Family::J => ("J", String::new()),
        Family::P => ("P", String::new()),
        Family::Q => ("Q", q_alpha.as_ref().unwrap().to_string()),
    };
    let mut rows = Vec::new();
    let mut undecided = 0u32;
    for d in 1..=d_max {
        for n in 0..=n_max {
            let s = &g[n as usize..(n + d + 1) as usize];
            let p = match family {
                Family::J => jensen_j(d, s)?,
                Family::P => jensen_p(d, s)?,
                Family::Q => jensen_q(d, q_alpha.as_ref().unwrap(), s)?,
            };
            let v = certify_hyperbolic(&p, max_prec);
            let status = match v.status {
                HyperbolicityStatus::CertifiedRealRooted => "real-rooted",
                HyperbolicityStatus::CertifiedHasNonrealRoot => "nonreal-root",
                HyperbolicityStatus::Undecided => {
                    undecided += 1;
                    "undecided"
                }
            };
            rows.push(vec![
                family_name.to_string(),
                d.to_string(),
                n.to_string(),
                alpha_text.clone(),
                status.to_string(),
                v.real_root_count.map_or_else(String::new, |c| c.to_string()),
                v.precision_used.to_string(),
            ]);
        }
    }
    emit(
        cli.format,
        &["family", "d", "n", "alpha", "status", "real_roots", "precision_bits"],
        &rows,
    );
    if undecided > 0 {
        return Err(CliError::Uncertified(format!(
            "{undecided} grid points stayed undecided; retry with more --digits"
        )));
    }
    Ok(())
}

fn turan_scan(cli: &Cli, oracle: &Oracle, d: u32, n_range: &str) -> Result<(), CliError> {
    let (a, b) = n_range
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--n-range wants A:B, got '{n_range}'")))?;
    let a: u32 = a
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range start '{a}'")))?;
    let b: u32 = b
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range end '{b}'")))?;
    if a > b {
        return Err(CliError::Usage(format!("empty range {a}:{b}")));
    }
    if d == 0 {
        return Err(CliError::Usage("--d must be at least 1".into()));
    }
    let ctx = indexed_ctx(cli.digits, b + d);
    let g = gamma_intervals(oracle, a, b - a + d + 1, &ctx)?;
    let mut rows = Vec::new();
    for n in a..=b {
        let lo = (n - a) as usize;
        let (s, flagged) = turan_sufficient(d, &g[lo..lo + d as usize + 1])?;
        let n_f = f64::from(n);
        let regime_ok = n >= 2 && n_f / n_f.ln().powi(2) >= f64::from(d).powf(0.75) / 2.0;
        rows.push(vec![
            d.to_string(),
            n.to_string(),
            to_sci_string(&s, 6),
            flagged.to_string(),
            regime_ok.to_string(),
        ]);
    }
    emit(cli.format, &["d", "n", "S", "flagged", "regime_ok"], &rows);
    Ok(())
}

fn cache_admin(cli: &Cli, oracle: &Oracle, action: &CacheAction) -> Result<(), CliError> {
    let dir = cli
        .cache_dir
        .as_ref()
        .map_or_else(|| "(memory only)".to_string(), |p| p.display().to_string());
    match action {
        CacheAction::Stats => {
            let (files, bytes) = oracle
                .cache_stats()
                .map_err(|e| CliError::Uncertified(format!("cannot read cache: {e}")))?;
            let rows = vec![vec![dir, files.to_string(), bytes.to_string()]];
            emit(cli.format, &["directory", "files", "bytes"], &rows);
        }
        CacheAction::Clear => {
            let removed = oracle
                .clear_cache()
                .map_err(|e| CliError::Uncertified(format!("cannot clear cache: {e}")))?;
            let rows = vec![vec![dir, removed.to_string()]];
            emit(cli.format, &["directory", "removed"], &rows);
        }
    }
    Ok(())
}

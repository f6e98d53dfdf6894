use std::f64::consts::PI;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use qhlink::asympt::{odd_range, vc_sweep, volume_oracle};
use qhlink::checks::{run_suite, CheckRecord, Suite};
use qhlink::kashaev::{qh_kashaev_bridge, r_hat_entry_residual};
use qhlink::links::{
    hk_equivalence, kashaev_invariant, qh_invariant, resolve_link, Ambiguity, BraidWord, InvariantValue,
};
use qhlink::specfun::EqModNWitness;
use qhlink::{Error, RootSystem, C64};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qhlink", version, about = "Kashaev and quantum hyperbolic invariants of braid closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate invariants of braid closures.
    Compute(ComputeArgs),
    /// Run the numerical identity suites.
    Verify(VerifyArgs),
    /// Fit the growth rate of the figure-eight Kashaev invariant.
    Asympt(AsymptArgs),
    /// Compare the Kashaev R-matrix with the QH crossing tensors.
    Bridge(BridgeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Kashaev,
    Qh,
    Both,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ComputeArgs {
    /// Catalogue name (unknot, hopf, trefoil, figure-eight, whitehead, 4_2_1) or a braid
    /// word "p g1 g2 ..." with the strand count first.
    #[arg(long, required = true, num_args = 1..)]
    link: Vec<String>,
    #[arg(long = "n", required = true, num_args = 1.., value_parser = parse_odd)]
    n: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    family: FamilyArg,
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run; all of them by default.
    #[arg(long, num_args = 1.., value_parser = parse_suite)]
    suite: Vec<Suite>,
    #[arg(long = "n", num_args = 1.., value_parser = parse_odd, default_values_t = [3usize, 5, 7])]
    n: Vec<usize>,
    /// Overrides each suite's own tolerance.
    #[arg(long, value_parser = parse_tol)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long, default_value_t = 201)]
    n_min: usize,
    #[arg(long, default_value_t = 601)]
    n_max: usize,
    #[arg(long, default_value_t = 50)]
    step: usize,
    /// Relative slope tolerance against Vol/(2π).
    #[arg(long, default_value_t = 5e-3, value_parser = parse_tol)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BridgeArgs {
    #[arg(long = "n", num_args = 1.., value_parser = parse_odd, default_values_t = [3usize, 5, 7])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 1e-8, value_parser = parse_tol)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

fn parse_odd(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if n < 3 || n.is_multiple_of(2) {
        return Err(format!("N must be odd and at least 3, got {n}"));
    }
    Ok(n)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct Complex {
    re: f64,
    im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct Witness {
    sign: i8,
    power: usize,
    residual: f64,
    equal: bool,
}

impl From<EqModNWitness> for Witness {
    fn from(w: EqModNWitness) -> Self {
        Self { sign: w.sign, power: w.power, residual: w.residual, equal: w.equal }
    }
}

#[derive(Serialize)]
struct ValueRecord {
    link: String,
    word: String,
    #[serde(rename = "N")]
    n: usize,
    family: &'static str,
    value: Complex,
    modulus: f64,
    ambiguity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eq_mod_n_witness: Option<Witness>,
}

fn ambiguity(a: Ambiguity) -> &'static str {
    match a {
        Ambiguity::Exact => "exact",
        Ambiguity::ModN => "mod_n",
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Infeasible { .. } => ExitCode::from(3),
        Error::Parse { .. } | Error::Invalid(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("qhlink: {e}");
    exit_for(&e)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("records serialize")
}

fn value_record(
    spec: &str,
    b: &BraidWord,
    n: usize,
    family: &'static str,
    v: &InvariantValue,
    w: Option<Witness>,
) -> ValueRecord {
    ValueRecord {
        link: spec.to_string(),
        word: b.to_string(),
        n,
        family,
        value: v.value.into(),
        modulus: v.modulus(),
        ambiguity: ambiguity(v.ambiguity),
        eq_mod_n_witness: w,
    }
}

fn compute_job(spec: &str, b: &BraidWord, n: usize, family: FamilyArg, tol: f64) -> Result<Vec<ValueRecord>, Error> {
    let rs = RootSystem::new(n)?;
    Ok(match family {
        FamilyArg::Kashaev => vec![value_record(spec, b, n, "kashaev", &kashaev_invariant(b, &rs)?, None)],
        FamilyArg::Qh => vec![value_record(spec, b, n, "qh", &qh_invariant(b, &rs)?, None)],
        FamilyArg::Both => {
            // ⟨L⟩_N next to 𝓗_N of the mirrored word, with the unit relating them
            let rep = hk_equivalence(b, &rs, tol)?;
            vec![
                value_record(spec, b, n, "kashaev", &rep.kashaev, None),
                value_record(spec, &b.mirror(), n, "qh", &rep.qh, Some(rep.witness.into())),
            ]
        }
    })
}

fn cmd_compute(a: ComputeArgs) -> ExitCode {
    let mut links = Vec::new();
    for spec in &a.link {
        match resolve_link(spec) {
            Ok(b) => links.push((spec.clone(), b)),
            Err(e) => return fail(e),
        }
    }
    let jobs: Vec<(&str, &BraidWord, usize)> =
        links.iter().flat_map(|(s, b)| a.n.iter().map(move |&n| (s.as_str(), b, n))).collect();
    let results: Vec<Result<Vec<ValueRecord>, Error>> =
        jobs.par_iter().map(|&(s, b, n)| compute_job(s, b, n, a.family, a.tol)).collect();
    let mut records = Vec::new();
    for r in results {
        match r {
            Ok(v) => records.extend(v),
            Err(e) => return fail(e),
        }
    }
    let mismatch = records.iter().any(|r| r.eq_mod_n_witness.as_ref().is_some_and(|w| !w.equal));
    let out = match a.common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema: u32,
                records: &'a [ValueRecord],
            }
            json(&Out { schema: SCHEMA, records: &records })
        }
        Format::Csv => {
            let mut s =
                String::from("link,N,family,re,im,modulus,ambiguity,witness_sign,witness_power,witness_equal\n");
            for r in &records {
                let (ws, wp, we) = match &r.eq_mod_n_witness {
                    Some(w) => (w.sign.to_string(), w.power.to_string(), w.equal.to_string()),
                    None => Default::default(),
                };
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{},{},{},{ws},{wp},{we}",
                    r.link, r.n, r.family, r.value.re, r.value.im, r.modulus, r.ambiguity
                );
            }
            s.trim_end().to_string()
        }
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let _ = write!(
                    s,
                    "{} [{}] N={} {:<7} {:+.12} {:+.12}i  |.|={:.12} ({})",
                    r.link, r.word, r.n, r.family, r.value.re, r.value.im, r.modulus, r.ambiguity
                );
                if let Some(w) = &r.eq_mod_n_witness {
                    let _ = write!(s, "  =_N kashaev: {} (sign {:+}, ζ^{})", w.equal, w.sign, w.power);
                }
                s.push('\n');
            }
            s.trim_end().to_string()
        }
    };
    println!("{out}");
    if mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

#[derive(Serialize)]
struct CheckOut {
    suite: &'static str,
    name: String,
    #[serde(rename = "N")]
    n: usize,
    residual: f64,
    tol: f64,
    pass: bool,
}

impl From<CheckRecord> for CheckOut {
    fn from(r: CheckRecord) -> Self {
        Self { suite: r.suite.name(), name: r.name, n: r.n, residual: r.residual, tol: r.tol, pass: r.pass }
    }
}

fn print_checks(records: &[CheckOut], format: Format, extra: impl Serialize) {
    let out = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a, E> {
                schema: u32,
                pass: bool,
                records: &'a [CheckOut],
                #[serde(flatten)]
                extra: E,
            }
            json(&Out { schema: SCHEMA, pass: records.iter().all(|r| r.pass), records, extra })
        }
        Format::Csv => {
            let mut s = String::from("suite,name,N,residual,tol,pass\n");
            for r in records {
                let _ = writeln!(s, "{},{},{},{:e},{:e},{}", r.suite, r.name, r.n, r.residual, r.tol, r.pass);
            }
            s.trim_end().to_string()
        }
        Format::Text => {
            let mut s = String::new();
            for r in records {
                let tag = if r.pass { "pass" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{tag} {:<10} {:<24} N={:<3} residual {:.3e} (tol {:.0e})",
                    r.suite, r.name, r.n, r.residual, r.tol
                );
            }
            let failed = records.iter().filter(|r| !r.pass).count();
            let _ = write!(s, "{} checks, {failed} failed", records.len());
            s
        }
    };
    println!("{out}");
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let suites = if a.suite.is_empty() { Suite::ALL.to_vec() } else { a.suite.clone() };
    let jobs: Vec<(Suite, usize)> = suites.iter().flat_map(|&s| a.n.iter().map(move |&n| (s, n))).collect();
    let results: Vec<_> = jobs.par_iter().map(|&(s, n)| run_suite(s, n, a.tol, a.seed)).collect();
    let mut records: Vec<CheckOut> = Vec::new();
    for r in results {
        match r {
            Ok(v) => records.extend(v.into_iter().map(CheckOut::from)),
            Err(e) => return fail(e),
        }
    }
    print_checks(&records, a.common.format, serde_json::Map::new());
    if records.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Fits starting below this are dominated by the `log N / N` correction.
const FIT_WINDOW_START: usize = 201;

fn cmd_asympt(a: AsymptArgs) -> ExitCode {
    let ns = match odd_range(a.n_min, a.n_max, a.step) {
        Ok(ns) => ns,
        Err(e) => return fail(e),
    };
    let (fit, volume) = match (vc_sweep(&ns), volume_oracle()) {
        (Ok(f), Ok(v)) => (f, v),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let target = volume / (2.0 * PI);
    let rel = fit.relative_error(volume);
    let mut warnings = Vec::new();
    if a.n_min < FIT_WINDOW_START {
        warnings.push(format!("window starts below N={FIT_WINDOW_START}; small-N corrections dominate the slope"));
    }
    if !fit.pointwise_decreasing() {
        warnings.push("pointwise estimates are not decreasing over the sweep".to_string());
    }
    let out = match a.common.format {
        Format::Csv => fit.to_csv().trim_end().to_string(),
        Format::Json => {
            #[derive(Serialize)]
            struct Sample {
                #[serde(rename = "N")]
                n: usize,
                value_log: f64,
                two_pi_log_over_n: f64,
            }
            #[derive(Serialize)]
            struct Out {
                schema: u32,
                slope: f64,
                intercept: f64,
                r_squared: f64,
                target: f64,
                volume: f64,
                relative_error: f64,
                within_tolerance: bool,
                log_corrected_slope: f64,
                warning: bool,
                warnings: Vec<String>,
                samples: Vec<Sample>,
            }
            let samples = fit
                .samples
                .iter()
                .map(|&(n, v)| Sample { n, value_log: v, two_pi_log_over_n: 2.0 * PI * v / n as f64 })
                .collect();
            json(&Out {
                schema: SCHEMA,
                slope: fit.slope,
                intercept: fit.intercept,
                r_squared: fit.r_squared,
                target,
                volume,
                relative_error: rel,
                within_tolerance: rel <= a.tol,
                log_corrected_slope: fit.log_corrected_slope(),
                warning: !warnings.is_empty(),
                warnings,
                samples,
            })
        }
        Format::Text => {
            let mut s = String::new();
            let _ =
                writeln!(s, "slope {:.7}  target Vol/2π {:.7}  relative error {:.3}%", fit.slope, target, 100.0 * rel);
            let _ = writeln!(
                s,
                "intercept {:.5}  r² {:.9}  log-corrected slope {:.7}",
                fit.intercept,
                fit.r_squared,
                fit.log_corrected_slope()
            );
            for w in &warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s.push_str(fit.to_csv().trim_end());
            s
        }
    };
    println!("{out}");
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct BridgeOut {
    #[serde(rename = "N")]
    n: usize,
    plus_plus: Witness,
    plus_plus_residual: f64,
    plus_minus: Witness,
    plus_minus_residual: f64,
    supports_match: bool,
    r_hat_entry_residual: f64,
    pass: bool,
}

fn bridge_job(n: usize, tol: f64) -> Result<BridgeOut, Error> {
    let rs = RootSystem::new(n)?;
    let b = qh_kashaev_bridge(&rs, tol)?;
    let k = r_hat_entry_residual(&rs);
    Ok(BridgeOut {
        n,
        pass: b.plus_plus.equal && b.plus_minus.equal && b.supports_match && k <= tol,
        plus_plus: b.plus_plus.witness.into(),
        plus_plus_residual: b.plus_plus.residual,
        plus_minus: b.plus_minus.witness.into(),
        plus_minus_residual: b.plus_minus.residual,
        supports_match: b.supports_match,
        r_hat_entry_residual: k,
    })
}

fn cmd_bridge(a: BridgeArgs) -> ExitCode {
    let results: Vec<_> = a.n.par_iter().map(|&n| bridge_job(n, a.tol)).collect();
    let mut rows = Vec::new();
    for r in results {
        match r {
            Ok(v) => rows.push(v),
            Err(e) => return fail(e),
        }
    }
    let out = match a.common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema: u32,
                records: &'a [BridgeOut],
            }
            json(&Out { schema: SCHEMA, records: &rows })
        }
        Format::Csv => {
            let mut s =
                String::from("N,plus_plus_residual,plus_minus_residual,supports_match,r_hat_entry_residual,pass\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{:e},{:e},{},{:e},{}",
                    r.n, r.plus_plus_residual, r.plus_minus_residual, r.supports_match, r.r_hat_entry_residual, r.pass
                );
            }
            s.trim_end().to_string()
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "N={:<3} {}  R(+,+) {:.2e}  R(+,-) {:.2e}  supports {}  entrywise {:.2e}",
                    r.n,
                    if r.pass { "pass" } else { "FAIL" },
                    r.plus_plus_residual,
                    r.plus_minus_residual,
                    r.supports_match,
                    r.r_hat_entry_residual
                );
            }
            s.trim_end().to_string()
        }
    };
    println!("{out}");
    if rows.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QHLINK_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("QHLINK_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("QHLINK_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("qhlink: {e}");
        return ExitCode::from(2);
    }
    match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asympt(a) => cmd_asympt(a),
        Command::Bridge(a) => cmd_bridge(a),
    }
}

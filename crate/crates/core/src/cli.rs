//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or input error
//! (including unreadable/unwritable paths), 3 numerical non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::beam::{eval_direct_dispersive, BeamParams, DispersionModel, FieldPoint};
use crate::error::Error;
use crate::identities::{run_suite, IdentityReport, Suite};
use crate::integral_rep::eval_integral_rep_dispersive;
use crate::partial_wave::eval_series_dispersive;
use crate::wavepacket::{
    triple_legendre_closed_form, triple_legendre_sum, xwave_closed_form, ConeAngles, Summation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "BEAMKIT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "beamkit",
    version,
    about = "Evaluate and verify zeroth-order Bessel beams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the beam at one point.
    Eval(EvalArgs),
    /// Evaluate the beam on a (z, rho) grid at one time.
    Map(MapArgs),
    /// Run identity checks and write a JSON report.
    Verify(VerifyArgs),
    /// Summed triple Legendre product series and its closed form.
    LegendreSum(LegendreSumArgs),
    /// Flat-spectrum X-wave closed form at one point.
    Xwave(XwaveArgs),
    /// Quick consistency checks across all representations.
    SelfCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Representation {
    Direct,
    Series,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dispersion {
    Vacuum,
    Constant,
    Cauchy,
}

#[derive(Debug, Args)]
struct BeamArgs {
    #[arg(long, value_enum, default_value = "direct")]
    rep: Representation,
    #[arg(long, allow_negative_numbers = true)]
    omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    cos_theta: f64,
    /// Target accuracy of the series and integral routes.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value = "vacuum")]
    dispersion: Dispersion,
    /// Index of the constant model.
    #[arg(long, default_value_t = 1.0)]
    n0: f64,
    /// Cauchy model `n = a + b omega^2`.
    #[arg(long, default_value_t = 1.0)]
    cauchy_a: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    cauchy_b: f64,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
    #[arg(long)]
    rho: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    beam: BeamArgs,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    z_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    z_max: f64,
    #[arg(long, default_value_t = 1)]
    z_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    rho_min: f64,
    #[arg(long)]
    rho_max: f64,
    #[arg(long, default_value_t = 1)]
    rho_steps: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    t: f64,
}

#[derive(Debug, Args)]
struct MapArgs {
    #[command(flatten)]
    beam: BeamArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: MapFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
    suite: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only `json` is supported.
    #[arg(long, default_value = "json", value_parser = ["json"])]
    format: String,
}

#[derive(Debug, Args)]
struct LegendreSumArgs {
    #[arg(long, allow_negative_numbers = true)]
    cos_theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    cos_eta: f64,
    #[arg(long, allow_negative_numbers = true)]
    cos_gamma: f64,
    #[arg(long, default_value_t = 2000)]
    n_max: usize,
    #[arg(long, default_value = "cesaro")]
    mode: Summation,
}

#[derive(Debug, Args)]
struct XwaveArgs {
    #[arg(long, allow_negative_numbers = true)]
    cos_theta: f64,
    #[command(flatten)]
    point: PointArgs,
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    NotConverged(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::NotConverged(_) => EXIT_NOT_CONVERGED,
            Failure::Verification(_) => EXIT_VERIFY_FAILED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::NotConverged(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return f.code();
        }
    };
    let outcome = match &pool {
        Some(pool) => pool.install(|| dispatch(cli.command)),
        None => dispatch(cli.command),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval(a) => cmd_eval(&a),
        Command::Map(a) => cmd_map(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::LegendreSum(a) => cmd_legendre_sum(&a),
        Command::Xwave(a) => cmd_xwave(&a),
        Command::SelfCheck => cmd_self_check(),
    }
}

impl BeamArgs {
    fn params(&self) -> Result<(BeamParams, DispersionModel), Failure> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Failure::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        let beam = BeamParams::new(self.omega, self.cos_theta)?;
        let model = match self.dispersion {
            Dispersion::Vacuum => DispersionModel::Vacuum,
            Dispersion::Constant => DispersionModel::constant(self.n0)?,
            Dispersion::Cauchy => DispersionModel::cauchy(self.cauchy_a, self.cauchy_b)?,
        };
        model.evaluate(self.omega)?;
        Ok((beam, model))
    }
}

/// One evaluated point with its diagnostics.
#[derive(Debug, Clone, Copy)]
struct Evaluation {
    value: Complex64,
    n_terms: Option<usize>,
    n_evals: Option<usize>,
    error_estimate: f64,
    converged: bool,
}

fn evaluate(
    rep: Representation,
    beam: &BeamParams,
    model: &DispersionModel,
    p: &FieldPoint,
    tol: f64,
) -> Result<Evaluation, Error> {
    Ok(match rep {
        Representation::Direct => Evaluation {
            value: eval_direct_dispersive(beam, model, p)?,
            n_terms: None,
            n_evals: None,
            error_estimate: 0.0,
            converged: true,
        },
        Representation::Series => {
            let s = eval_series_dispersive(beam, model, p, tol)?;
            Evaluation {
                value: s.value,
                n_terms: Some(s.n_terms),
                n_evals: None,
                error_estimate: s.tail_estimate,
                converged: s.converged,
            }
        }
        Representation::Integral => {
            let q = eval_integral_rep_dispersive(beam, model, p, tol)?;
            Evaluation {
                value: q.value,
                n_terms: None,
                n_evals: Some(q.n_evals),
                error_estimate: q.error_estimate,
                converged: q.converged,
            }
        }
    })
}

fn rep_name(rep: Representation) -> &'static str {
    match rep {
        Representation::Direct => "direct",
        Representation::Series => "series",
        Representation::Integral => "integral",
    }
}

#[derive(Serialize)]
struct EvalRecord {
    rep: &'static str,
    re: f64,
    im: f64,
    abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_evals: Option<usize>,
    error_estimate: f64,
    converged: bool,
}

fn cmd_eval(a: &EvalArgs) -> Result<(), Failure> {
    let (beam, model) = a.beam.params()?;
    let p = FieldPoint::new(a.point.z, a.point.rho, a.point.t)?;
    let e = evaluate(a.beam.rep, &beam, &model, &p, a.beam.tol)?;
    let rec = EvalRecord {
        rep: rep_name(a.beam.rep),
        re: e.value.re,
        im: e.value.im,
        abs: e.value.norm(),
        n_terms: e.n_terms,
        n_evals: e.n_evals,
        error_estimate: e.error_estimate,
        converged: e.converged,
    };
    match a.format {
        OutputFormat::Json => println!("{}", serde_json::to_string(&rec).expect("plain record")),
        OutputFormat::Text => {
            let mut line = format!(
                "rep={} re={} im={} abs={}",
                rec.rep,
                fmt_num(rec.re),
                fmt_num(rec.im),
                fmt_num(rec.abs)
            );
            if let Some(n) = rec.n_terms {
                let _ = write!(line, " n_terms={n}");
            }
            if let Some(n) = rec.n_evals {
                let _ = write!(line, " n_evals={n}");
            }
            let _ = write!(
                line,
                " error_estimate={} converged={}",
                fmt_num(rec.error_estimate),
                rec.converged
            );
            println!("{line}");
        }
    }
    if e.converged {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!(
            "{} evaluation did not reach tol {}",
            rec.rep, a.beam.tol
        )))
    }
}

/// Shortest round-trip decimal, in exponent form outside `[1e-5, 1e16)`;
/// `nan`, `inf`, `-inf` for non-finite values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else if x == 0.0 || (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn axis(what: &str, min: f64, max: f64, steps: usize) -> Result<Vec<f64>, Failure> {
    if !(min.is_finite() && max.is_finite()) || min > max || steps == 0 {
        return Err(Failure::Usage(format!(
            "{what} grid needs finite min <= max and steps >= 1 (got {min}..{max}, {steps})"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + i as f64 * h
            }
        })
        .collect())
}

#[derive(Serialize)]
struct MapRow {
    z: f64,
    rho: f64,
    t: f64,
    re: f64,
    im: f64,
    abs: f64,
}

fn cmd_map(a: &MapArgs) -> Result<(), Failure> {
    let (beam, model) = a.beam.params()?;
    let g = &a.grid;
    if g.rho_min < 0.0 {
        return Err(Failure::Usage(format!(
            "--rho-min must be >= 0, got {}",
            g.rho_min
        )));
    }
    if !g.t.is_finite() {
        return Err(Failure::Usage("--t must be finite".to_owned()));
    }
    let zs = axis("z", g.z_min, g.z_max, g.z_steps)?;
    let rhos = axis("rho", g.rho_min, g.rho_max, g.rho_steps)?;
    let points: Vec<(f64, f64)> = zs
        .iter()
        .flat_map(|&z| rhos.iter().map(move |&rho| (z, rho)))
        .collect();
    let rows: Vec<(MapRow, bool)> = points
        .par_iter()
        .map(|&(z, rho)| {
            let e = FieldPoint::new(z, rho, g.t)
                .and_then(|p| evaluate(a.beam.rep, &beam, &model, &p, a.beam.tol));
            let (value, ok) = match e {
                Ok(e) if e.converged => (e.value, true),
                _ => (Complex64::new(f64::NAN, f64::NAN), false),
            };
            let abs = value.norm();
            let row = MapRow {
                z,
                rho,
                t: g.t,
                re: value.re,
                im: value.im,
                abs,
            };
            (row, ok)
        })
        .collect();
    let failed = rows.iter().filter(|(_, ok)| !ok).count();

    let mut buf: Vec<u8> = Vec::new();
    match a.format {
        MapFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["z", "rho", "t", "re", "im", "abs"])
                .expect("in-memory write");
            for (r, _) in &rows {
                w.write_record([r.z, r.rho, r.t, r.re, r.im, r.abs].map(fmt_num))
                    .expect("in-memory write");
            }
            w.flush().expect("in-memory write");
        }
        MapFormat::Json => {
            let body: Vec<&MapRow> = rows.iter().map(|(r, _)| r).collect();
            serde_json::to_writer_pretty(&mut buf, &body).expect("in-memory write");
            buf.push(b'\n');
        }
    }
    emit(a.out.as_deref(), &buf)?;
    if failed > 0 {
        return Err(Failure::NotConverged(format!(
            "{failed} of {} grid points did not converge",
            rows.len()
        )));
    }
    Ok(())
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse().map_err(Failure::Usage)?;
    let reports = run_suite(suite)?;
    write_reports(a.out.as_deref(), &reports)?;
    verdict(&reports)
}

fn verdict(reports: &[IdentityReport]) -> Result<(), Failure> {
    let failed: Vec<&IdentityReport> = reports.iter().filter(|r| !r.pass).collect();
    eprintln!(
        "{} of {} checks passed",
        reports.len() - failed.len(),
        reports.len()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        let ids: Vec<&str> = failed.iter().map(|r| r.identity_id.as_str()).collect();
        Err(Failure::Verification(format!("failed: {}", ids.join(", "))))
    }
}

fn write_reports(out: Option<&Path>, reports: &[IdentityReport]) -> Result<(), Failure> {
    let mut buf = serde_json::to_vec_pretty(reports).expect("reports serialize");
    buf.push(b'\n');
    emit(out, &buf)
}

fn cmd_legendre_sum(a: &LegendreSumArgs) -> Result<(), Failure> {
    let angles = ConeAngles::new(a.cos_theta, a.cos_eta, a.cos_gamma);
    let s = triple_legendre_sum(&angles, a.n_max, a.mode)?;
    let reference = triple_legendre_closed_form(&angles)?;
    let mode = serde_json::to_value(a.mode).expect("mode serializes");
    println!(
        "value={} mode={} n_max={} reference={} pi_value={} pi_reference={}",
        fmt_num(s.value.re),
        mode.as_str().unwrap_or_default(),
        a.n_max,
        fmt_num(reference),
        fmt_num(std::f64::consts::PI * s.value.re),
        fmt_num(std::f64::consts::PI * reference),
    );
    Ok(())
}

fn cmd_xwave(a: &XwaveArgs) -> Result<(), Failure> {
    let p = FieldPoint::new(a.point.z, a.point.rho, a.point.t)?;
    let v = xwave_closed_form(a.cos_theta, &p)?;
    println!("value={}", fmt_num(v));
    Ok(())
}

fn cmd_self_check() -> Result<(), Failure> {
    let mut failures = Vec::new();
    let tol = 1e-10;
    for &(w, c, z, rho, t) in &[
        (3.0, 0.7, 1.0, 2.0, 0.0),
        (0.5, -0.9, -2.0, 0.3, 2.0),
        (12.0, 0.0, 3.0, 5.0, -1.0),
    ] {
        let beam = BeamParams::new(w, c)?;
        let p = FieldPoint::new(z, rho, t)?;
        let m = DispersionModel::Vacuum;
        let direct = evaluate(Representation::Direct, &beam, &m, &p, tol)?.value;
        let series = evaluate(Representation::Series, &beam, &m, &p, tol)?.value;
        let integral = evaluate(Representation::Integral, &beam, &m, &p, 1e-8)?.value;
        let (ds, di) = ((series - direct).norm(), (integral - direct).norm());
        let ok = ds <= 1e-10 && di <= 1e-6;
        println!(
            "{} representations omega={w} cos_theta={c} z={z} rho={rho} t={t} series_err={} integral_err={}",
            if ok { "PASS" } else { "FAIL" },
            fmt_num(ds),
            fmt_num(di)
        );
        if !ok {
            failures.push("representations");
        }
    }
    for suite in [Suite::Orthogonality, Suite::PlaneWave, Suite::Hochstadt] {
        let reports = run_suite(suite)?;
        let passed = reports.iter().filter(|r| r.pass).count();
        let ok = passed == reports.len();
        println!(
            "{} {:?} {passed}/{}",
            if ok { "PASS" } else { "FAIL" },
            suite,
            reports.len()
        );
        if !ok {
            failures.push("identities");
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "self-check failed: {}",
            failures.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(f64::NAN), "nan");
        assert_eq!(fmt_num(-2.0), "-2");
        assert_eq!(fmt_num(3.705e-11), "3.705e-11");
        assert_eq!(fmt_num(-1e300), "-1e300");
        for x in [0.1 + 0.2, 1e-5, 9.999e-6, 5e-324, f64::MAX, -0.0, 1e16, 123456.789] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap().to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn axes() {
        assert_eq!(axis("z", 1.0, 1.0, 1).unwrap(), vec![1.0]);
        assert_eq!(axis("z", 0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(axis("z", 1.0, 0.0, 3).is_err());
        assert!(axis("z", 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn failed_reports_exit_with_one() {
        let one = Complex64::new(1.0, 0.0);
        let ok = IdentityReport::new("a", &[], one, one, 1e-12);
        let bad = IdentityReport::new("b", &[], one, 2.0 * one, 1e-12);
        assert!(ok.pass && !bad.pass);
        assert!(verdict(std::slice::from_ref(&ok)).is_ok());
        let f = verdict(&[ok, bad]).unwrap_err();
        assert_eq!(f.code(), EXIT_VERIFY_FAILED);
        assert!(f.message().contains('b'));
    }

    #[test]
    fn parse_errors_are_usage_errors() {
        assert_eq!(run(["beamkit", "eval", "--omega", "x"]), EXIT_USAGE);
        assert_eq!(run(["beamkit", "bogus"]), EXIT_USAGE);
    }
}

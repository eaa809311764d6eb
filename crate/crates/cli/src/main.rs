//! `bianchi`: reduce points and Hermitian forms into the standard fundamental
//! domain of `PSL(2, O_d)`, query membership, count elements of bounded
//! height and print the sharpness family.
//!
//! Exit codes: 0 success, 2 invalid `d` or usage, 3 malformed rational,
//! 4 form not positive definite, 5 an exact inequality failed.

use std::io::{Read, Write};
use std::process::ExitCode;

use bianchi::count::{count_table, fit_growth};
use bianchi::domain::{in_b, in_p, mu_witness};
use bianchi::geometry::Point;
use bianchi::hermitian::HermitianForm;
use bianchi::json::{CertificateJson, FormReductionJson, PointJson};
use bianchi::reduce::{reduce, sharpness_witness};
use bianchi::ring::{format_rational, int, parse_rational, rat, AlgInt, FieldElem, Rational, RingContext};
use bianchi::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bianchi", version, about = "Exact reduction theory for Bianchi groups PSL(2, O_d)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointArgs {
    /// z = A + B·√−d, as two exact rationals "p/q"
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
    z: Vec<String>,
    /// Height t (s = t² is computed exactly)
    #[arg(long, conflicts_with = "t2", required_unless_present = "t2", allow_hyphen_values = true)]
    t: Option<String>,
    /// Squared height s = t²
    #[arg(long, allow_hyphen_values = true)]
    t2: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a point into F_d and print its height certificate
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Reduce a positive-definite Hermitian form [[a, b], [b̄, dd]]
    ReduceForm {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// b in {1, ω}-coordinates
        #[arg(long, num_args = 2, value_names = ["B0", "B1"], allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        dd: i64,
    },
    /// Report membership of a point in P_d, B_d and F_d
    Membership {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Print N, Ñ and X for each bound T² as CSV; the fit goes to stderr
    Count {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Comma-separated integer bounds T²
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        tsq: Vec<i64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Count in SL(2, O_d) instead of PSL (doubles N and Ñ)
        #[arg(long)]
        sl2: bool,
    },
    /// Print the sharpness family σ_n for n = 2..=n_max as CSV
    Sharpness {
        #[arg(long, default_value_t = 1)]
        d: i64,
        #[arg(long)]
        n_max: i64,
    },
    /// Re-check a certificate JSON (file path or "-" for stdin)
    Verify { path: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidDiscriminant(_) | Error::SharpnessIndex(_) | Error::HeightBoundTooSmall(_) => 2,
            Error::Parse(_) | Error::NonPositiveHeight => 3,
            Error::NotPositiveDefinite => 4,
            Error::InequalityViolated(_) => 5,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn parse_point(p: &PointArgs) -> Result<Point, Failure> {
    let z = FieldElem::new(parse_rational(&p.z[0])?, parse_rational(&p.z[1])?);
    let s = match (&p.t, &p.t2) {
        (Some(t), _) => {
            let t: Rational = parse_rational(t)?;
            if t <= int(0) {
                return Err(Error::NonPositiveHeight.into());
            }
            &t * &t
        }
        (None, Some(s)) => parse_rational(s)?,
        (None, None) => unreachable!("clap requires --t or --t2"),
    };
    Ok(Point::new(z, s)?)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_json(v: &impl serde::Serialize) {
    emit(&serde_json::to_string(v).expect("serializable"));
}

fn cmd_reduce(d: i64, point: &PointArgs) -> Outcome {
    let ctx = RingContext::new(d)?;
    let p = parse_point(point)?;
    let cert = reduce(&ctx, &p)?;
    print_json(&CertificateJson::new(&ctx, &cert));
    Ok(if cert.bound_ok { 0 } else { 5 })
}

fn cmd_reduce_form(d: i64, a: i64, b: &[i64], dd: i64) -> Outcome {
    let ctx = RingContext::new(d)?;
    let f = HermitianForm::new(a, AlgInt::new(b[0], b[1]), dd);
    let red = f.reduce(&ctx)?;
    print_json(&FormReductionJson::new(&ctx, &f, &red));
    Ok(if red.bounds_ok() { 0 } else { 5 })
}

fn cmd_membership(d: i64, point: &PointArgs) -> Outcome {
    let ctx = RingContext::new(d)?;
    let p = parse_point(point)?;
    let w = mu_witness(&ctx, &p);
    let (ip, ib) = (in_p(&ctx, &p.z), in_b(&ctx, &p));
    print_json(&json!({
        "point": PointJson::from(&p),
        "in_P": ip,
        "in_B": ib,
        "in_F": ip && ib,
        "m_star": format_rational(&w.m_star),
        "gamma0": w.gamma0,
        "delta0": w.delta0,
        "D_sq": format_rational(&p.d_sq(&ctx)),
    }));
    Ok(0)
}

fn cmd_count(d: i64, grid: &[i64], workers: Option<usize>, sl2: bool) -> Outcome {
    let ctx = RingContext::new(d)?;
    if let Some(&t) = grid.iter().find(|&&t| t < 1) {
        return Err(Error::HeightBoundTooSmall(t).into());
    }
    let (table, sandwich) = count_table(&ctx, grid, workers)?;
    let k = if sl2 { 2 } else { 1 };
    emit("T_sq,N,N_tilde,X");
    for r in &table.rows {
        emit(&format!("{},{},{},{}", r.t_sq, k * r.n, k * r.n_tilde, r.x));
    }
    let violations: Vec<i64> = sandwich.iter().filter(|s| !s.holds).map(|s| s.t_sq).collect();
    let mut summary = match fit_growth(&table.rows) {
        Ok(fit) => json!({"slope_N": fit.slope_n, "slope_X": fit.slope_x, "rows": fit.rows}),
        Err(_) => json!({"slope_N": null, "slope_X": null, "rows": table.rows.len()}),
    };
    summary["sandwich_violations"] = json!(violations);
    eprintln!("{summary}");
    Ok(if violations.is_empty() { 0 } else { 5 })
}

fn cmd_sharpness(d: i64, n_max: i64) -> Outcome {
    let ctx = RingContext::new(d)?;
    if n_max < 2 {
        return Err(Error::SharpnessIndex(n_max).into());
    }
    emit("n,height_sq,D_sq,ratio");
    for n in 2..=n_max {
        let (sigma, p) = sharpness_witness(&ctx, n)?;
        let h = sigma.height_sq(&ctx);
        let d_sq = p.d_sq(&ctx);
        let ratio = rat(n * n - 1, 4 * n * n);
        // H/D² with H = √height_sq
        let hd = &ratio * &d_sq;
        if &hd * &hd != int(h) {
            return Err(Error::InequalityViolated(format!("sharpness ratio for n = {n}")).into());
        }
        emit(&format!("{n},{h},{},{}", format_rational(&d_sq), format_rational(&ratio)));
    }
    Ok(0)
}

fn cmd_verify(path: &str) -> Outcome {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure { code: 1, message: format!("{path}: {e}") })?;
    let cj: CertificateJson =
        serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
    let ctx = RingContext::new(cj.d)?;
    let cert = cj.to_certificate(&ctx)?;
    let checked = cert.verify_standalone(&ctx);
    let original = cert.gamma.inverse().apply(&ctx, &cert.image);
    print_json(&json!({
        "verified": checked.is_ok(),
        "bound_ok": checked.is_ok() && cert.bound_ok,
        "original": PointJson::from(&original),
        "error": checked.as_ref().err().map(|e| e.to_string()),
    }));
    Ok(if checked.is_ok() && cert.bound_ok { 0 } else { 5 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reduce { d, point } => cmd_reduce(*d, point),
        Command::ReduceForm { d, a, b, dd } => cmd_reduce_form(*d, *a, b, *dd),
        Command::Membership { d, point } => cmd_membership(*d, point),
        Command::Count { d, tsq, workers, sl2 } => cmd_count(*d, tsq, *workers, *sl2),
        Command::Sharpness { d, n_max } => cmd_sharpness(*d, *n_max),
        Command::Verify { path } => cmd_verify(path),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

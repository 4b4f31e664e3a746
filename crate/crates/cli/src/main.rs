use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use freesum::cone::{cone_over, llenv_points_up_to, ShiftedEnvelope};
use freesum::corpus::{run_corpus, Corpus};
use freesum::freesum::{
    affine_braun_check, braun_comparison, check_braun_multivariate, check_braun_univariate, check_decomposition,
    classify_sum, converse_search, envelope_condition_check, gorenstein_affine_check, verify_cone_decomposition_at,
    Evidence,
};
use freesum::json::{self as fj, render};
use freesum::rational::parse_qvec_csv;
use freesum::series::{delta_height_needed, delta_polynomial, ehrhart_series, quasipolynomial, sigma_cone};
use freesum::{Error, QVec, RationalPolytope};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "freesum", version, about = "Lattice points, Ehrhart series and free sums of rational polytopes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Height bound for truncated series and bounded checks.
    #[arg(long, env = "FREESUM_DEFAULT_HEIGHT", default_value_t = 12, global = true)]
    height: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Ehrhart series coefficients and the counting quasi-polynomial.
    Ehrhart {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Numerator of the Ehrhart series.
    Delta {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Polar dual inside the linear span.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Truncated generating function of the cone, or of one shifted envelope.
    Sigma {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        shift: Option<u64>,
    },
    /// Projections of cone lattice points onto the lower envelope along α(p).
    Envelope {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma separated rationals, the origin by default.
        #[arg(long)]
        p: Option<String>,
    },
    /// Gorenstein index, interior point and center.
    Gorenstein {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Free sum checks.
    Freesum {
        #[command(subcommand)]
        action: FreesumAction,
    },
    /// Batch run over a corpus file, the bundled corpus by default.
    Corpus {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FreesumAction {
    Check {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Braun)]
        mode: Mode,
        /// Meeting point override for the affine mode.
        #[arg(long)]
        p: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Braun,
    Decompose,
    Converse,
    Affine,
}

/// A report and whether the checked statement held.
struct Outcome {
    report: Value,
    ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Outcome {
        Outcome { report, ok: true }
    }
}

fn read_polytope(path: &Path) -> freesum::Result<RationalPolytope> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    fj::polytope_from_str(&text)
}

fn parse_point(s: &Option<String>, dim: usize) -> freesum::Result<QVec> {
    let p = match s {
        Some(s) => parse_qvec_csv(s)?,
        None => vec![freesum::rational::int(0); dim],
    };
    if p.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    Ok(p)
}

fn run(cli: &Cli) -> freesum::Result<Outcome> {
    let t = cli.height;
    match &cli.command {
        Command::Ehrhart { input } => {
            let p = read_polytope(input)?;
            let q = quasipolynomial(&p)?;
            Ok(Outcome::ok(json!({
                "T": t,
                "ehrhart": fj::univariate_json(&ehrhart_series(&p, t)?),
                "quasipolynomial": fj::quasipolynomial_json(&q),
            })))
        }
        Command::Delta { input } => {
            let p = read_polytope(input)?;
            let d = delta_polynomial(&p, delta_height_needed(&p)?)?;
            Ok(Outcome::ok(fj::delta_to_json(&d, p.affine_dim())))
        }
        Command::Dual { input } => Ok(Outcome::ok(fj::dual_to_json(&read_polytope(input)?.polar_dual()?))),
        Command::Sigma { input, shift } => {
            let p = read_polytope(input)?;
            let s = match shift {
                Some(i) => sigma_cone(&ShiftedEnvelope::new(&p, *i)?, t)?,
                None => sigma_cone(&cone_over(&p), t)?,
            };
            Ok(Outcome::ok(s.to_json()))
        }
        Command::Envelope { input, p: point } => {
            let p = read_polytope(input)?;
            let point = parse_point(point, p.dim())?;
            let c = cone_over(&p);
            let points = llenv_points_up_to(&c, &point, t)?;
            Ok(Outcome::ok(fj::envelope_points_json(&points, t)))
        }
        Command::Gorenstein { input } => Ok(Outcome::ok(fj::gorenstein_json(&read_polytope(input)?.gorenstein_data()?))),
        Command::Freesum {
            action: FreesumAction::Check { a, b, mode, p },
        } => freesum_check(&read_polytope(a)?, &read_polytope(b)?, *mode, p, t),
        Command::Corpus { config } => {
            let corpus = match config {
                Some(path) => Corpus::from_str(
                    &std::fs::read_to_string(path)
                        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?,
                    t,
                )?,
                None => Corpus::standard(),
            };
            let report = run_corpus(&corpus);
            Ok(Outcome {
                ok: report.consistent(),
                report: report.to_json(),
            })
        }
    }
}

fn freesum_check(a: &RationalPolytope, b: &RationalPolytope, mode: Mode, p: &Option<String>, t: u64) -> freesum::Result<Outcome> {
    match mode {
        Mode::Braun => {
            let w = classify_sum(a, b)?;
            let v = check_braun_multivariate(&w, t)?;
            let mut report = fj::braun_json(&v);
            report["witness"] = fj::witness_json(&w);
            if w.kind == freesum::freesum::SumKind::FreeSum {
                report["univariate"] = fj::univariate_braun_json(&check_braun_univariate(a, b, t)?);
            }
            Ok(Outcome {
                ok: v.holds_up_to_t,
                report,
            })
        }
        Mode::Decompose => {
            let c = check_decomposition(a, b, t)?;
            Ok(Outcome {
                ok: c.holds,
                report: fj::decomposition_check_json(&c, t),
            })
        }
        Mode::Converse => {
            let r = converse_search(a, b, t)?;
            Ok(Outcome {
                ok: r.consistent,
                report: fj::converse_json(&r),
            })
        }
        Mode::Affine if p.is_some() => {
            let point = parse_point(p, a.dim())?;
            let lambda = freesum::cone::lambda_p(&point)?;
            let mut e: Vec<i64> = Vec::new();
            for q in freesum::cone::alpha(&point) {
                let scaled = q * freesum::rational::int(lambda.r as i64);
                e.push(freesum::rational::floor_i64(&scaled)?);
            }
            let envelope = envelope_condition_check(a, &point, t)?;
            let decomposition = verify_cone_decomposition_at(a, b, &point, t)?;
            let braun = braun_comparison(a, b, &e, t, Evidence::Bounded)?;
            Ok(Outcome {
                ok: braun.holds_up_to_t,
                report: json!({
                    "p": fj::qvec_json(&point),
                    "envelope_condition": fj::envelope_condition_json(&envelope),
                    "cone_decomposition": fj::decomposition_report_json(&decomposition),
                    "braun": fj::braun_json(&braun),
                }),
            })
        }
        Mode::Affine => match gorenstein_affine_check(a, b, t) {
            Ok(g) => Ok(Outcome {
                ok: g.braun.holds_up_to_t && g.interior_identity_holds,
                report: fj::gorenstein_report_json(&g),
            }),
            Err(e @ (Error::CenterMismatch | Error::NotGorenstein(_) | Error::NotLatticePolytope)) => {
                let raw = affine_braun_check(a, b, t)?;
                let mut report = fj::affine_report_json(&raw);
                report["gorenstein"] = json!({"skipped": e.code(), "message": e.to_string()});
                Ok(Outcome {
                    ok: raw.braun.holds_up_to_t,
                    report,
                })
            }
            Err(e) => Err(e),
        },
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => serde_json::to_string(v).expect("serializable"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(o) => (o.report, if o.ok { 0 } else { 1 }),
        Err(e) => (fj::error_json(&e), 2),
    };
    let rendered = match cli.format {
        Format::Json => render(&body) + "\n",
        Format::Text => {
            let mut s = String::new();
            text(&body, 0, &mut s);
            s
        }
    };
    let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
    ExitCode::from(code)
}

//! The `lempert` command line: distances, geodesics and verification suites.
//!
//! Exit status is 0 on success, 1 when a certification or check fails and 2
//! on malformed input, domain violations and degenerate datums.

use std::f64::consts::TAU;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bidisc::{balanced_geodesic_tol, balanced_info, car_bidisc, kob_disc_bidisc};
use crate::datum::{
    compose, datum_norm_disc, Coordinate, Datum, Domain, Map, Point, GEODESIC_GRID_RADIUS,
};
use crate::disc::{disc_grid, Moebius};
use crate::error::{Error, Result};
use crate::json::{parse_datum, round_sig12, round_value};
use crate::symmetrized::{car_g, symmetrized_geodesic, CarGOptions, MIN_GRID};
use crate::verifier::{
    builtin_oracle, check_equivalence, check_universality, find_balanced_on_path,
    minimality_probe_g, ExtremalFamily, NdDatumSampler,
};

pub const SUITES: [&str; 6] = [
    "universality-disc",
    "universality-bidisc",
    "universality-G",
    "minimality-G",
    "equivalence-demo",
    "balanced-path-demo",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "lempert",
    version,
    about = "Carathéodory extremals and complex geodesics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Numerical tolerance for certifications and checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Circle grid size for the symmetrized bidisc
    #[arg(long, global = true, default_value_t = 4096)]
    grid: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Skip golden-section refinement of circle maxima
    #[arg(long, global = true)]
    no_refine: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Carathéodory and Kobayashi values of a datum (JSON text, a file, or `-` for stdin)
    Dist { datum: String },
    /// Sample a complex geodesic from a balanced bidisc datum or `{"theta":..,"a":[re,im]}`
    Geodesic {
        spec: String,
        #[arg(short = 'n', long = "samples", default_value_t = 16)]
        samples: usize,
    },
    /// Run a verification suite
    Check { suite: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    pub grid_size: usize,
    pub seed: u64,
    pub output_format: Format,
    pub refine: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            grid_size: 4096,
            seed: 0,
            output_format: Format::Json,
            refine: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_size < MIN_GRID {
            return Err(Error::InvalidParameter(format!(
                "grid must be at least {MIN_GRID}"
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn car_g_options(&self) -> CarGOptions {
        CarGOptions {
            grid_size: self.grid_size,
            refine: self.refine,
            keep_profile: false,
        }
    }
}

/// A rendered command result and whether it counts as success.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub csv: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::DomainViolation(_)
        | Error::DegenerateDatum
        | Error::DegenerateInput(_)
        | Error::DatumKind { .. }
        | Error::DomainMismatch { .. }
        | Error::InvalidParameter(_) => 2,
        _ => 1,
    }
}

fn read_input(arg: &str, stdin: &mut dyn Read) -> Result<String> {
    if arg == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(text);
    }
    if !arg.trim_start().starts_with('{') {
        return std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn num(x: f64) -> String {
    let r = round_sig12(x);
    if r != 0.0 && !(1e-4..1e16).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

pub fn cmd_dist(datum_json: &str, cfg: &RunConfig) -> Result<Report> {
    let delta = parse_datum(datum_json)?;
    delta.require_nondegenerate()?;
    let domain = delta.domain();
    let (car, kob, extremal, flat) = match domain {
        Domain::Disc => {
            let v = datum_norm_disc(&delta)?;
            (v, v, json!("id"), false)
        }
        Domain::Bidisc => {
            let car = car_bidisc(&delta)?;
            let kob = kob_disc_bidisc(&delta)?.value()?;
            (car.value, kob, json!(car.extremal), false)
        }
        Domain::SymBidisc => {
            let opt = car_g(&delta, cfg.car_g_options())?;
            (opt.value, opt.value, json!(opt.argmax_angles), opt.flat)
        }
    };
    let passed = (car - kob).abs() <= cfg.tolerance;
    let mut report = json!({
        "domain": domain.to_string(),
        "car": car,
        "kob": kob,
        "extremal": extremal,
        "flat": flat,
    });
    round_value(&mut report);
    let extremal_cell = match &report["extremal"] {
        Value::Array(items) if items.is_empty() && flat => "flat".to_string(),
        Value::Array(items) => items
            .iter()
            .map(Value::to_string)
            .collect::<Vec<_>>()
            .join(";"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let csv = format!(
        "domain,car,kob,extremal\n{},{},{},{}\n",
        domain,
        num(car),
        num(kob),
        extremal_cell
    );
    Ok(Report {
        passed,
        json: report,
        csv,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoebiusSpec {
    theta: f64,
    a: [f64; 2],
}

pub fn cmd_geodesic(spec_json: &str, n_samples: usize, cfg: &RunConfig) -> Result<Report> {
    let value: Value = serde_json::from_str(spec_json).map_err(|e| Error::Parse(e.to_string()))?;
    let (domain, k, residual, omega) = if value.get("kind").is_some() {
        let delta = parse_datum(spec_json)?;
        if delta.domain() != Domain::Bidisc {
            return Err(Error::DomainMismatch {
                expected: Domain::Bidisc,
                found: delta.domain(),
            });
        }
        let g = balanced_geodesic_tol(&delta, cfg.tolerance)?;
        let r = g.residual();
        (Domain::Bidisc, g.k().clone(), r, None)
    } else {
        let spec: MoebiusSpec =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        let m = Moebius::new(spec.theta, Complex64::new(spec.a[0], spec.a[1]))?;
        let g = symmetrized_geodesic(m)?;
        (
            Domain::SymBidisc,
            g.geodesic.k().clone(),
            g.residual,
            Some(g.omega_angle),
        )
    };
    let mut points = Vec::with_capacity(n_samples);
    let mut csv = String::from("zeta_re,zeta_im,k1_re,k1_im,k2_re,k2_im,residual\n");
    for zeta in disc_grid(n_samples, GEODESIC_GRID_RADIUS) {
        let w = k.eval(&[zeta])?;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            num(zeta.re),
            num(zeta.im),
            num(w[0].re),
            num(w[0].im),
            num(w[1].re),
            num(w[1].im),
            num(residual)
        ));
        points.push(json!({
            "zeta": [zeta.re, zeta.im],
            "k": [[w[0].re, w[0].im], [w[1].re, w[1].im]],
        }));
    }
    let mut report = json!({
        "domain": domain.to_string(),
        "n_samples": n_samples,
        "residual": residual,
        "points": points,
    });
    if let Some(theta) = omega {
        report["omega_angle"] = json!(theta);
    }
    round_value(&mut report);
    Ok(Report {
        passed: true,
        json: report,
        csv,
    })
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    let a = Complex64::from_polar(0.8 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
    Moebius::new(TAU * rng.gen::<f64>(), a).expect("|a| < 1")
}

fn suite_report(suite: &str, cfg: &RunConfig) -> Result<(bool, Value)> {
    let universality = |family: ExtremalFamily, n: usize| -> Result<(bool, Value)> {
        let domain = family.domain();
        let mut sampler = NdDatumSampler::new(domain, cfg.seed);
        let oracle = builtin_oracle(domain, cfg.grid_size);
        let r = check_universality(
            &family,
            &mut sampler,
            n,
            &oracle,
            cfg.grid_size,
            cfg.tolerance,
        )?;
        let mut v = serde_json::to_value(&r).expect("report serializes");
        v["family"] = json!(family.name());
        Ok((r.passed, v))
    };
    match suite {
        "universality-disc" => universality(ExtremalFamily::disc_identity(), 1000),
        "universality-bidisc" => universality(ExtremalFamily::coordinates(), 1000),
        "universality-G" => universality(ExtremalFamily::phi_circle(), 500),
        "minimality-G" => {
            let angles: Vec<f64> = (0..64).map(|j| TAU * j as f64 / 64.0).collect();
            let rows =
                minimality_probe_g(&angles, Complex64::new(0.0, 0.0), 1.0, cfg.car_g_options())?;
            let passed = rows.iter().all(|r| r.singleton);
            Ok((
                passed,
                json!({ "passed": passed, "seed": cfg.seed, "rows": rows }),
            ))
        }
        "equivalence-demo" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let (m1, m2) = (random_moebius(&mut rng), random_moebius(&mut rng));
            let f1: Map = Arc::new(Coordinate { index: 0 });
            let f2: Map = Arc::new(Coordinate { index: 1 });
            let a = ExtremalFamily::coordinates();
            let planted = ExtremalFamily::finite(
                Domain::Bidisc,
                vec![
                    compose(Arc::new(m2), f2)?,
                    compose(Arc::new(m1), f1.clone())?,
                ],
            )?;
            let other = ExtremalFamily::finite(
                Domain::Bidisc,
                vec![
                    compose(Arc::new(m1), f1.clone())?,
                    compose(Arc::new(m2), f1)?,
                ],
            )?;
            let matching = check_equivalence(&a, &planted)?;
            let rejected = check_equivalence(&a, &other)?.is_none();
            let recovered = matching.as_ref().is_some_and(|mt| {
                mt.pairs.len() == 2
                    && mt.pairs[0].b_index == 1
                    && mt.pairs[0].moebius.approx_eq(&m1, cfg.tolerance.max(1e-9))
                    && mt.pairs[1].moebius.approx_eq(&m2, cfg.tolerance.max(1e-9))
            });
            let passed = recovered && rejected;
            Ok((
                passed,
                json!({
                    "passed": passed,
                    "seed": cfg.seed,
                    "planted": [m1, m2],
                    "matching": matching,
                    "non_equivalent_rejected": rejected,
                }),
            ))
        }
        "balanced-path-demo" => {
            let zero = Complex64::new(0.0, 0.0);
            let d = |w: Complex64, x: Complex64| -> Result<Datum> {
                Datum::discrete(Point::bidisc(zero, zero)?, Point::bidisc(w, x)?)
            };
            let start = d(Complex64::new(0.5, 0.0), zero)?;
            let end = d(zero, Complex64::new(0.5, 0.0))?;
            let found = find_balanced_on_path(&start, &end, 64)?;
            let info = balanced_info(&found.datum)?;
            let passed = info.balanced;
            Ok((
                passed,
                json!({
                    "passed": passed,
                    "t0": found.t0,
                    "datum": found.datum,
                    "gap": info.gap,
                    "moebius": info.moebius,
                }),
            ))
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

pub fn cmd_check(suite: &str, cfg: &RunConfig) -> Result<Report> {
    let (passed, mut report) = suite_report(suite, cfg)?;
    report["suite"] = json!(suite);
    round_value(&mut report);
    let mut csv = String::from("suite,passed");
    let mut row = format!("{suite},{passed}");
    if let Some(gap) = report.get("max_gap") {
        csv.push_str(",max_gap,n_samples");
        row.push_str(&format!(",{},{}", gap, report["n_samples"]));
    }
    let csv = format!("{csv}\n{row}\n");
    Ok(Report {
        passed,
        json: report,
        csv,
    })
}

/// Runs the command line with explicit streams; returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let cfg = RunConfig {
        tolerance: cli.tol,
        grid_size: cli.grid,
        seed: cli.seed,
        output_format: cli.format,
        refine: !cli.no_refine,
    };
    let result = cfg.validate().and_then(|()| match &cli.command {
        Command::Dist { datum } => cmd_dist(&read_input(datum, stdin)?, &cfg),
        Command::Geodesic { spec, samples } => {
            cmd_geodesic(&read_input(spec, stdin)?, *samples, &cfg)
        }
        Command::Check { suite } => cmd_check(suite, &cfg),
    });
    match result {
        Ok(report) => {
            let text = match cfg.output_format {
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                        + "\n"
                }
                Format::Csv => report.csv,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if report.passed {
                0
            } else {
                let _ = writeln!(err, "error: check failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

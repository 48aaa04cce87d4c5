//! `phaseamb`: command-line front end for the phase retrieval ambiguity engine.
//!
//! Exit status: 0 on success, 1 on domain errors (and failed `verify`
//! checks), 2 on I/O or configuration errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use phaseamb::ambiguity::EnumConfig;
use phaseamb::generate::{generate, perturb_study_with};
use phaseamb::io::{
    fmt_f64, parse_intensity_input, parse_signal, parse_zeros, raster_csv, to_json_string,
    zeros_to_records, IntensityInput, ZeroRecord,
};
use phaseamb::nonneg::{feasible_region_with, FeasibleRegion, RasterWindow};
use phaseamb::roots::residual_bound;
use phaseamb::signal::{intensity_mismatch, reflect, shift};
use phaseamb::{
    associated_polynomial, enumerate_solutions_with, find_roots_with,
    pair_roots_with, reconstruct_from_zeros_with, verify_solution_with, zeros_of_signal_with,
    Autocorrelation, Error, FlipUnit, GenMode, GenSpec, Signal, Tolerances,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "phaseamb", version, about = "Ambiguity analysis for 1-D discrete phase retrieval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Frequencies for intensity checks
    #[arg(long, global = true, default_value_t = 512)]
    samples: usize,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_root: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_pair: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_nn: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Autocorrelation, zeros and flip units of a signal or autocorrelation
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// All solution classes sharing the input's Fourier intensity
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        /// List only non-negative classes (counts are unaffected)
        #[arg(long)]
        nonneg_only: bool,
        /// Also write the classes as CSV `class,n,value`
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Feasible region of a free conjugate zero pair given fixed zeros
    Region {
        #[arg(long)]
        input: PathBuf,
        /// "re_min,re_max,im_min,im_max,step"
        #[arg(long, requires = "raster_output", allow_hyphen_values = true)]
        raster: Option<String>,
        #[arg(long)]
        raster_output: Option<PathBuf>,
    },
    /// Constructive instance with a prescribed ambiguity structure
    Generate {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random perturbation study, written as CSV
    Perturb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks the structural invariants on an input, one line per property
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Failure kinds mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Domain(anyhow::Error),
    Config(anyhow::Error),
    Checks(usize),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(pe) if !pe.is_config() => Failure::Domain(e),
            _ => Failure::Config(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
    }
}

fn config(common: &Common) -> Result<EnumConfig> {
    let mut tol = Tolerances::default();
    if let Some(v) = common.tol_root {
        tol.root = v;
    }
    if let Some(v) = common.tol_pair {
        tol.pair = v;
    }
    if let Some(v) = common.tol_nn {
        tol.nn = v;
    }
    tol.validate()?;
    if common.samples == 0 {
        bail!(Error::InvalidParameter("--samples must be at least 1".into()));
    }
    Ok(EnumConfig {
        tol,
        samples: common.samples,
        ..Default::default()
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_to(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn in_file<T>(path: &Path, r: phaseamb::Result<T>) -> Result<T> {
    r.map_err(anyhow::Error::from)
        .with_context(|| format!("in {}", path.display()))
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let cfg = config(&cli.common)?;
    let out = cli.common.output.as_deref();
    match cli.command {
        Command::Analyze { input } => {
            let inp = in_file(&input, parse_intensity_input(&read(&input)?))?;
            write_to(out, &in_file(&input, analyze(&inp, &cfg))?)?;
        }
        Command::Enumerate {
            input,
            nonneg_only,
            csv,
        } => {
            let a = in_file(&input, parse_intensity_input(&read(&input)?))?.autocorrelation();
            let mut report = in_file(&input, enumerate_solutions_with(&a, &cfg))?;
            if nonneg_only {
                report.retain_nonnegative();
            }
            write_to(out, &to_json_string(&report).map_err(anyhow::Error::from)?)?;
            if let Some(p) = csv {
                let mut s = String::from("class,n,value\n");
                for (k, c) in report.solutions.iter().enumerate() {
                    for (n, v) in c.signal.values().iter().enumerate() {
                        let _ = writeln!(s, "{k},{n},{}", fmt_f64(*v));
                    }
                }
                write_to(Some(&p), &s)?;
            }
        }
        Command::Region {
            input,
            raster,
            raster_output,
        } => {
            let window = raster
                .map(|w| w.parse::<RasterWindow>())
                .transpose()
                .map_err(anyhow::Error::from)?;
            let fixed = in_file(&input, parse_zeros(&read(&input)?))?;
            let region: FeasibleRegion = in_file(&input, feasible_region_with(&fixed, &cfg.tol))?;
            write_to(out, &to_json_string(&region).map_err(anyhow::Error::from)?)?;
            if let (Some(w), Some(p)) = (window, raster_output) {
                write_to(Some(&p), &raster_csv(&region.raster(&w)))?;
            }
        }
        Command::Generate { n, mode, seed } => {
            let mode: GenMode = mode.parse().map_err(anyhow::Error::from)?;
            let x = generate(&GenSpec::new(n, mode, seed)).map_err(anyhow::Error::from)?;
            write_to(out, &to_json_string(&x).map_err(anyhow::Error::from)?)?;
        }
        Command::Perturb {
            input,
            delta,
            trials,
            seed,
        } => {
            let x = in_file(&input, parse_signal(&read(&input)?))?;
            let study = in_file(&input, perturb_study_with(&x, delta, trials, seed, &cfg))?;
            eprintln!(
                "base classes {} ({} non-negative); preserved in {}/{} trials; scale check {} (factor {:.4}, displacement {:.3e})",
                study.base_total_classes,
                study.base_nonnegative_classes,
                study.preserved(),
                study.trials,
                if study.scale_invariant { "passed" } else { "FAILED" },
                study.scale_factor,
                study.scale_displacement
            );
            write_to(out, &study.to_csv())?;
        }
        Command::Verify { input } => {
            let inp = in_file(&input, parse_intensity_input(&read(&input)?))?;
            let checks = verify(&inp, &cfg);
            let mut s = String::new();
            let mut failed = 0;
            for c in &checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => {
                        failed += 1;
                        "FAIL"
                    }
                    Status::Skip => "SKIP",
                };
                let _ = writeln!(s, "{tag} {}: {}", c.name, c.detail);
            }
            write_to(out, &s)?;
            if failed > 0 {
                return Err(Failure::Checks(failed));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Analysis {
    #[serde(skip_serializing_if = "Option::is_none")]
    signal: Option<Signal>,
    autocorrelation: Vec<f64>,
    /// Zeros of the signal's own z-transform (signal input only).
    #[serde(skip_serializing_if = "Option::is_none")]
    zeros: Option<Vec<ZeroRecord>>,
    roots: Vec<ZeroRecord>,
    units: Vec<FlipUnit>,
    flippable_units: usize,
    upper_bound: u64,
}

fn analyze(inp: &IntensityInput, cfg: &EnumConfig) -> phaseamb::Result<String> {
    let a = inp.autocorrelation();
    let roots = find_roots_with(&associated_polynomial(&a), &cfg.tol)?;
    let units = pair_roots_with(&roots, &cfg.tol)?;
    let (signal, zeros) = match inp {
        IntensityInput::Signal(x) => (
            Some(x.clone()),
            Some(zeros_to_records(&zeros_of_signal_with(x, &cfg.tol)?)),
        ),
        IntensityInput::Autocorrelation(_) => (None, None),
    };
    to_json_string(&Analysis {
        signal,
        autocorrelation: a.coeffs().to_vec(),
        zeros,
        roots: zeros_to_records(&roots),
        flippable_units: units.iter().filter(|u| u.is_flippable()).count(),
        units,
        upper_bound: phaseamb::ambiguity::upper_bound(a.len()),
    })
}

enum Status {
    Pass,
    Fail,
    Skip,
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail: why.into(),
    }
}

fn failed(name: &'static str, e: &Error) -> Check {
    check(name, false, e.to_string())
}

fn verify(inp: &IntensityInput, cfg: &EnumConfig) -> Vec<Check> {
    let tol = &cfg.tol;
    let a: Autocorrelation = inp.autocorrelation();
    let signal = match inp {
        IntensityInput::Signal(x) => Some(x),
        IntensityInput::Autocorrelation(_) => None,
    };
    let mut out = Vec::new();

    out.push(match signal {
        Some(x) => {
            let moved = [shift(x, 5), reflect(x), x.scaled(-1.0).expect("nonzero")];
            let ok = moved.iter().all(|y| verify_solution_with(y, &a, tol));
            check("trivial_ambiguities", ok, "shift, reflection and negation keep the autocorrelation")
        }
        None => skip("trivial_ambiguities", "autocorrelation input"),
    });

    let p = associated_polynomial(&a);
    let roots = match find_roots_with(&p, tol) {
        Ok(r) => {
            let worst = r
                .iter()
                .map(|&z| p.evaluate(z).norm() / residual_bound(p.coeffs(), z, tol.root))
                .fold(0.0f64, f64::max);
            out.push(check(
                "root_residuals",
                r.len() == p.degree() && worst <= 1.0,
                format!("{} roots, worst residual/bound {worst:.3e}", r.len()),
            ));
            r
        }
        Err(e) => {
            out.push(failed("root_residuals", &e));
            return out;
        }
    };

    let units = match pair_roots_with(&roots, tol) {
        Ok(u) => {
            let covered: usize = u.iter().map(|u| 2 * u.pairs.len()).sum();
            out.push(check(
                "reflection_pairing",
                covered == roots.len(),
                format!("{} units, {covered} roots covered (tol_pair {:.1e})", u.len(), tol.pair),
            ));
            u
        }
        Err(e) => {
            out.push(failed("reflection_pairing", &e));
            return out;
        }
    };

    out.push(match signal {
        Some(x) => match zeros_of_signal_with(x, tol)
            .and_then(|z| reconstruct_from_zeros_with(&z, a.last(), tol))
        {
            Ok(y) => {
                let err = intensity_mismatch(&y, &a, cfg.samples);
                let lead = x.values()[x.len() - 1].signum() * y.values()[y.len() - 1].signum();
                let scale = x.max_abs();
                let dev = x
                    .values()
                    .iter()
                    .zip(y.values())
                    .map(|(u, v)| (u - lead * v).abs())
                    .fold(0.0f64, f64::max);
                check(
                    "zero_reconstruction",
                    x.len() == y.len() && dev <= tol.pair * scale,
                    format!("max deviation {dev:.3e}, intensity error {err:.3e}"),
                )
            }
            Err(e) => failed("zero_reconstruction", &e),
        },
        None => skip("zero_reconstruction", "autocorrelation input"),
    });

    let report = match phaseamb::ambiguity::enumerate_from_units(&a, &units, cfg) {
        Ok(r) => r,
        Err(e) => {
            out.push(failed("enumeration", &e));
            return out;
        }
    };
    let m = report.flippable_units;
    let expected = if m == 0 { 1 } else { 1usize << (m - 1) };
    let sign_amb = report.solutions.iter().any(|s| s.sign_ambiguous);
    out.push(check(
        "class_count",
        report.total_classes as u64 <= report.upper_bound
            && (report.total_classes == expected || sign_amb),
        format!(
            "{} classes, {m} flippable units, bound {}",
            report.total_classes, report.upper_bound
        ),
    ));
    let worst = report
        .solutions
        .iter()
        .map(|s| intensity_mismatch(&s.signal, &a, cfg.samples))
        .fold(0.0f64, f64::max);
    out.push(check(
        "shared_intensity",
        report.solutions.iter().all(|s| verify_solution_with(&s.signal, &a, tol)),
        format!("worst relative intensity error {worst:.3e} at {} samples", cfg.samples),
    ));
    out.push(check(
        "nonneg_flags",
        report
            .solutions
            .iter()
            .all(|s| s.nonnegative == s.signal.is_nonnegative(tol.nn)),
        format!("{} of {} classes non-negative", report.nonnegative_classes, report.total_classes),
    ));
    out.push(match signal {
        Some(x) => {
            let k = report.class_of(x, tol);
            check(
                "input_in_listing",
                k.is_some_and(|k| report.solutions[k].nonnegative == x.is_nonnegative(tol.nn)),
                match k {
                    Some(k) => format!("input is class {k}"),
                    None => "input not found among the classes".into(),
                },
            )
        }
        None => skip("input_in_listing", "autocorrelation input"),
    });
    out
}

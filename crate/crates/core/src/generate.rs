//! Constructive instances and perturbation studies.
//!
//! [`gen_max_ambiguous`] places `N - 1` distinct real zeros left of `-1`, so
//! every one of the `2^(N-2)` classes is non-negative. [`gen_unique`] fixes
//! `N - 3` zeros with real part below `-1` and searches for a free conjugate
//! pair inside the narrow band where only the unflipped zero set satisfies
//! the half-plane condition, yielding exactly one non-negative class.
//! [`perturb_study`] checks that both situations survive small perturbations
//! of the signal.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ambiguity::{enumerate_solutions_with, reconstruct_from_zeros_with, EnumConfig};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::nonneg::{feasible_region_with, last_pair_lhs};
use crate::roots::{greedy_match, reflect_point, zeros_of_signal_with};
use crate::signal::{autocorrelation, Signal};

/// Retry cap for [`gen_unique`].
pub const UNIQUE_RETRY_CAP: usize = 256;

/// Coefficients of `Q` must be at least this fraction of the largest
/// one, so that the generated signal is strictly positive with room to spare.
const POSITIVITY_MARGIN: f64 = 1e-4;

/// Fraction of the band width kept clear at each end.
const BAND_MARGIN: f64 = 0.05;

/// Free-pair candidates drawn per fixed zero set.
const FREE_DRAWS: usize = 64;

const FIXED_SPAN: f64 = 0.9;
const FIXED_IM: (f64, f64) = (1.0, 4.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    MaxAmbiguous,
    Unique,
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-ambiguous" => Ok(GenMode::MaxAmbiguous),
            "unique" => Ok(GenMode::Unique),
            _ => Err(Error::InvalidParameter(format!(
                "unknown mode {s:?} (expected max-ambiguous or unique)"
            ))),
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenMode::MaxAmbiguous => "max-ambiguous",
            GenMode::Unique => "unique",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub support_length: usize,
    pub mode: GenMode,
    pub seed: u64,
    /// Interval for the real parts of randomly placed zeros.
    pub zero_window: (f64, f64),
}

impl GenSpec {
    pub fn new(support_length: usize, mode: GenMode, seed: u64) -> Self {
        Self {
            support_length,
            mode,
            seed,
            zero_window: (-4.0, -1.1),
        }
    }

    fn validate(&self, mode: GenMode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::InvalidParameter(format!(
                "generator for {mode} called with mode {}",
                self.mode
            )));
        }
        let min_n = if mode == GenMode::Unique { 4 } else { 2 };
        if self.support_length < min_n {
            return Err(Error::InvalidParameter(format!(
                "mode {mode} needs N >= {min_n}, got {}",
                self.support_length
            )));
        }
        let (lo, hi) = self.zero_window;
        if !(lo.is_finite() && lo < hi && hi < -1.0) {
            return Err(Error::InvalidParameter(format!(
                "zero window [{lo}, {hi}] must be non-empty and lie left of -1"
            )));
        }
        Ok(())
    }

    fn separation(&self) -> f64 {
        0.05 * (self.zero_window.1 - self.zero_window.0)
    }
}

/// `n` reals in `[lo, hi]` with pairwise gaps of at least `sep`, uniformly
/// distributed over all such configurations.
fn separated_reals(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64, sep: f64) -> Option<Vec<f64>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let slack = (hi - lo) - (n - 1) as f64 * sep;
    if slack < 0.0 {
        return None;
    }
    let mut u: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * slack).collect();
    u.sort_by(f64::total_cmp);
    Some(u.iter().enumerate().map(|(k, v)| lo + v + k as f64 * sep).collect())
}

/// Gap between neighbouring zeros of [`gen_max_ambiguous`] in `ln|β|`, as a
/// fraction of the log width of the window.
const LOG_SEPARATION: f64 = 0.15;

/// Signal whose corresponding zeros are `N - 1` distinct reals below `-1`.
///
/// The zeros are spread in `ln|β|` so that their mirrors `1/β` are separated
/// as well; clustered mirrors near `1/lo` make the real pairs collide into
/// conjugate quads under tiny perturbations. Falls back to spacing in `β`
/// when the window is too narrow for both separations.
pub fn gen_max_ambiguous(spec: &GenSpec) -> Result<Signal> {
    spec.validate(GenMode::MaxAmbiguous)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = spec.zero_window;
    let n = spec.support_length - 1;
    let sep = spec.separation();

    let (llo, lhi) = ((-hi).ln(), (-lo).ln());
    let lw = lhi - llo;
    let lsep = if n > 1 { (LOG_SEPARATION * lw).min(lw / (n - 1) as f64) } else { 0.0 };
    let mut reals: Vec<f64> = separated_reals(&mut rng, n, llo, lhi, lsep)
        .unwrap_or_default()
        .into_iter()
        .map(|l| -l.exp())
        .collect();
    reals.sort_by(f64::total_cmp);
    if reals.len() != n || reals.windows(2).any(|w| w[1] - w[0] < sep) {
        reals = separated_reals(&mut rng, n, lo, hi, sep).ok_or_else(|| {
            Error::GenerationFailure(format!(
                "{n} zeros with separation {sep:.3} do not fit in [{lo}, {hi}]"
            ))
        })?;
    }
    let zeros: Vec<Complex64> = reals.into_iter().map(|r| Complex64::new(r, 0.0)).collect();
    reconstruct_from_zeros_with(&zeros, 1.0, &Default::default())
}

/// Output of [`gen_unique_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct UniqueInstance {
    pub signal: Signal,
    /// The `N - 3` fixed zeros.
    pub fixed: Vec<Complex64>,
    /// Upper-half-plane member of the free conjugate pair.
    pub free: Complex64,
    /// `(t*, t)`: the open band for `Re free`.
    pub band: (f64, f64),
    pub attempts: usize,
}

impl UniqueInstance {
    pub fn zeros(&self) -> Vec<Complex64> {
        let mut z = self.fixed.clone();
        z.push(self.free);
        z.push(self.free.conj());
        z
    }
}

pub fn gen_unique(spec: &GenSpec) -> Result<Signal> {
    gen_unique_instance(spec).map(|u| u.signal)
}

/// Groups of fixed zeros that flip together (a real zero or a conjugate pair).
fn fixed_units(fixed: &[Complex64]) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < fixed.len() {
        if fixed[i].im != 0.0 {
            out.push(vec![fixed[i], fixed[i + 1]]);
            i += 2;
        } else {
            out.push(vec![fixed[i]]);
            i += 1;
        }
    }
    out
}

/// Right-hand side `-(1/2) Σ Re β_j` of the half-plane condition for the fixed
/// zeros with the units in `mask` reflected at the unit circle.
pub fn halfplane_rhs(fixed: &[Complex64], mask: u64) -> f64 {
    let units = fixed_units(fixed);
    let sum: f64 = units
        .iter()
        .enumerate()
        .flat_map(|(i, u)| {
            let flip = mask >> i & 1 == 1;
            u.iter().map(move |&z| if flip { reflect_point(z).re } else { z.re })
        })
        .sum();
    -0.5 * sum
}

/// `(t*, t)`: the largest right-hand side over non-identity flip patterns and
/// the right-hand side of the unflipped set.
pub fn unique_band(fixed: &[Complex64]) -> (f64, f64) {
    let k = fixed_units(fixed).len();
    let t = halfplane_rhs(fixed, 0);
    let t_star = (1..1u64 << k)
        .map(|m| halfplane_rhs(fixed, m))
        .fold(f64::NEG_INFINITY, f64::max);
    (t_star, t)
}

/// Fixed zeros of the unique construction: as many conjugate pairs as fit,
/// real parts in the top `FIXED_SPAN` of the window. Widely spread fixed sets
/// leave no point of the band outside the discs once `N >= 7`.
fn sample_fixed(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Option<Vec<Complex64>> {
    let k = spec.support_length - 3;
    let (lo, hi) = spec.zero_window;
    let lo = lo.max(hi - FIXED_SPAN);
    let sep = spec.separation();
    let mut out: Vec<Complex64> = Vec::with_capacity(k);
    for _ in 0..k / 2 {
        let z = Complex64::new(
            rng.random_range(lo..=hi),
            rng.random_range(FIXED_IM.0..=FIXED_IM.1),
        );
        out.push(z);
        out.push(z.conj());
    }
    for r in separated_reals(rng, k % 2, lo, hi, sep)? {
        out.push(Complex64::new(r, 0.0));
    }
    let distinct = (0..out.len()).all(|i| (i + 1..out.len()).all(|j| (out[i] - out[j]).norm() >= sep));
    let off_circle = out.iter().all(|z| (z.norm() - 1.0).abs() >= 0.05);
    (distinct && off_circle).then_some(out)
}

/// Smallest coefficient of `Q` relative to the largest, for fixed zeros
/// plus the free pair `beta`.
fn positivity_ratio(fixed: &[Complex64], beta: Complex64) -> f64 {
    let lhs = last_pair_lhs(fixed, beta);
    let top = lhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    lhs.iter().fold(f64::INFINITY, |m, &v| m.min(v)) / top
}

/// Signal that is the only non-negative solution of its phase retrieval
/// problem up to trivial ambiguities, with the construction details.
///
/// Each attempt draws a fixed zero set and `FREE_DRAWS` candidates for the
/// free pair (real part uniform in the band, imaginary part log-uniform in
/// `[0.1, 3]`), keeping the candidate with the best positivity margin.
pub fn gen_unique_instance(spec: &GenSpec) -> Result<UniqueInstance> {
    spec.validate(GenMode::Unique)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let cfg = EnumConfig {
        exec: Execution::Sequential,
        ..Default::default()
    };
    let sep = spec.separation();
    let mut last_diag = String::from("no admissible fixed zero set sampled");

    for attempt in 1..=UNIQUE_RETRY_CAP {
        let Some(fixed) = sample_fixed(&mut rng, spec) else {
            continue;
        };
        let (t_star, t) = unique_band(&fixed);
        let width = t - t_star;
        let region = feasible_region_with(&fixed, &cfg.tol)?;

        let mut best: Option<(f64, Complex64)> = None;
        let mut best_disc = f64::NEG_INFINITY;
        for _ in 0..FREE_DRAWS {
            let re = t_star + width * (BAND_MARGIN + (1.0 - 2.0 * BAND_MARGIN) * rng.random::<f64>());
            let im = (0.1f64.ln() + rng.random::<f64>() * (3.0f64 / 0.1).ln()).exp();
            let free = Complex64::new(re, im);
            if (free.norm() - 1.0).abs() < 0.05 || fixed.iter().any(|z| (z - free).norm() < sep) {
                continue;
            }
            let disc = region
                .discs
                .iter()
                .map(|d| d.margin(free))
                .fold(f64::INFINITY, f64::min);
            best_disc = best_disc.max(disc);
            if disc <= 0.0 {
                continue;
            }
            let ratio = positivity_ratio(&fixed, free);
            if ratio >= POSITIVITY_MARGIN && best.is_none_or(|(r, _)| ratio > r) {
                best = Some((ratio, free));
            }
        }
        let Some((_, free)) = best else {
            last_diag = format!(
                "band ({t_star:.6}, {t:.6}), best disc margin {best_disc:.3e} over {} disc(s) in {FREE_DRAWS} draws",
                region.discs.len()
            );
            continue;
        };
        last_diag = format!("band ({t_star:.6}, {t:.6}), free pair {free}");

        let mut zeros = fixed.clone();
        zeros.push(free);
        zeros.push(free.conj());
        let signal = reconstruct_from_zeros_with(&zeros, 1.0, &cfg.tol)?;
        if signal.min_component() <= 0.0 {
            continue;
        }
        let report = match enumerate_solutions_with(&autocorrelation(&signal), &cfg) {
            Ok(r) => r,
            Err(e) => {
                last_diag = format!("{last_diag}; enumeration failed: {e}");
                continue;
            }
        };
        if report.nonnegative_classes != 1 {
            last_diag = format!(
                "{last_diag}; enumeration found {} non-negative classes",
                report.nonnegative_classes
            );
            continue;
        }
        return Ok(UniqueInstance {
            signal,
            fixed,
            free,
            band: (t_star, t),
            attempts: attempt,
        });
    }
    Err(Error::GenerationFailure(format!(
        "no uniquely solvable instance for N = {} after {UNIQUE_RETRY_CAP} attempts; last: {last_diag}",
        spec.support_length
    )))
}

/// Dispatches on `spec.mode`.
pub fn generate(spec: &GenSpec) -> Result<Signal> {
    match spec.mode {
        GenMode::MaxAmbiguous => gen_max_ambiguous(spec),
        GenMode::Unique => gen_unique(spec),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    /// `None` when the trial failed; see `error`.
    pub max_root_displacement: Option<f64>,
    pub total_classes: Option<usize>,
    pub nonnegative_classes: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbStudy {
    pub base: Signal,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub base_total_classes: usize,
    pub base_nonnegative_classes: usize,
    pub results: Vec<TrialResult>,
    /// Positive factor applied to the base signal for the scaling check.
    pub scale_factor: f64,
    /// Largest matched zero displacement under that scaling.
    pub scale_displacement: f64,
    pub scale_invariant: bool,
}

impl PerturbStudy {
    /// Trials whose non-negative class count equals the base count.
    pub fn preserved(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.nonnegative_classes == Some(self.base_nonnegative_classes))
            .count()
    }

    /// CSV `trial,max_root_displacement,total_classes,nonnegative_classes`;
    /// failed trials leave the value columns empty.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,max_root_displacement,total_classes,nonnegative_classes\n");
        for r in &self.results {
            let d = r.max_root_displacement.map(crate::io::fmt_f64).unwrap_or_default();
            let t = r.total_classes.map(|v| v.to_string()).unwrap_or_default();
            let n = r.nonnegative_classes.map(|v| v.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{d},{t},{n}\n", r.trial));
        }
        s
    }
}

/// Largest distance between matched zeros, pairing greedily by distance.
pub fn matched_displacement(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    greedy_match(a.len(), b.len(), |i, j| (a[i] - b[j]).norm())
        .into_iter()
        .map(|(_, _, d)| d)
        .fold(0.0, f64::max)
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn perturb_study(base: &Signal, delta: f64, trials: usize, seed: u64) -> Result<PerturbStudy> {
    perturb_study_with(base, delta, trials, seed, &EnumConfig::default())
}

/// Adds i.i.d. uniform noise in `[-delta, delta]` to every component of
/// `base`, `trials` times, tracking zero displacement and class counts.
/// Trial `k` draws from stream `k + 1` of the seeded generator, so the same
/// seed reproduces the same noise directions for any `delta`.
pub fn perturb_study_with(
    base: &Signal,
    delta: f64,
    trials: usize,
    seed: u64,
    cfg: &EnumConfig,
) -> Result<PerturbStudy> {
    let v = base.values();
    let floor = v[0].abs().min(v[v.len() - 1].abs());
    if !(delta >= 0.0 && delta < floor) {
        return Err(Error::InvalidParameter(format!(
            "delta must satisfy 0 <= delta < min(|x[first]|, |x[last]|) = {floor:.6e}, got {delta}"
        )));
    }
    let tol = cfg.tol;
    let inner = EnumConfig {
        exec: Execution::Sequential,
        ..*cfg
    };
    let base_zeros = zeros_of_signal_with(base, &tol)?;
    let base_report = enumerate_solutions_with(&autocorrelation(base), &inner)?;

    let results = cfg.exec.map_range(trials, |trial| {
        let mut rng = trial_rng(seed, trial as u64 + 1);
        let noisy: Vec<f64> = v
            .iter()
            .map(|x| x + delta * (2.0 * rng.random::<f64>() - 1.0))
            .collect();
        let run = || -> Result<(f64, usize, usize)> {
            let x = Signal::with_trim(base.offset(), noisy.clone(), tol.trim)?;
            if x.len() != base.len() {
                return Err(Error::InvalidParameter(format!(
                    "perturbed support changed to length {}",
                    x.len()
                )));
            }
            let z = zeros_of_signal_with(&x, &tol)?;
            let r = enumerate_solutions_with(&autocorrelation(&x), &inner)?;
            Ok((matched_displacement(&base_zeros, &z), r.total_classes, r.nonnegative_classes))
        };
        match run() {
            Ok((d, t, n)) => TrialResult {
                trial,
                max_root_displacement: Some(d),
                total_classes: Some(t),
                nonnegative_classes: Some(n),
                error: None,
            },
            Err(e) => TrialResult {
                trial,
                max_root_displacement: None,
                total_classes: None,
                nonnegative_classes: None,
                error: Some(e.to_string()),
            },
        }
    });

    let mut rng = trial_rng(seed, 0);
    let scale_factor = (rng.random_range(-1.0..=1.0) * 10f64.ln()).exp();
    let scaled = base.scaled(scale_factor)?;
    let scaled_zeros = zeros_of_signal_with(&scaled, &tol)?;
    let scale_displacement = matched_displacement(&base_zeros, &scaled_zeros);
    let zero_scale = base_zeros.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let scale_invariant = scale_displacement <= tol.pair * zero_scale;

    Ok(PerturbStudy {
        base: base.clone(),
        delta,
        trials,
        seed,
        base_total_classes: base_report.total_classes,
        base_nonnegative_classes: base_report.nonnegative_classes,
        results,
        scale_factor,
        scale_displacement,
        scale_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambiguity::enumerate_solutions;
    use crate::nonneg::{feasible_region, left_halfplane_sufficient};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn max_ambiguous_small_cases() {
        let x = gen_max_ambiguous(&GenSpec::new(2, GenMode::MaxAmbiguous, 1)).unwrap();
        assert_eq!(x.len(), 2);
        let r = enumerate_solutions(&autocorrelation(&x)).unwrap();
        assert_eq!(r.total_classes, 1);
        for seed in 0..5 {
            let x = gen_max_ambiguous(&GenSpec::new(5, GenMode::MaxAmbiguous, seed)).unwrap();
            let r = enumerate_solutions(&autocorrelation(&x)).unwrap();
            assert_eq!((r.total_classes, r.nonnegative_classes), (8, 8));
        }
    }

    #[test]
    fn max_ambiguous_zeros_are_left_and_separated() {
        let spec = GenSpec::new(8, GenMode::MaxAmbiguous, 42);
        let x = gen_max_ambiguous(&spec).unwrap();
        let z = crate::roots::zeros_of_signal(&x).unwrap();
        assert_eq!(z.len(), 7);
        assert!(left_halfplane_sufficient(&z));
        assert!(z.iter().all(|b| b.im == 0.0 && b.re < -1.0));
        let r = enumerate_solutions(&autocorrelation(&x)).unwrap();
        assert_eq!((r.total_classes, r.nonnegative_classes), (64, 64));
    }

    #[test]
    fn generator_is_deterministic() {
        let s = GenSpec::new(6, GenMode::MaxAmbiguous, 9);
        assert_eq!(gen_max_ambiguous(&s).unwrap(), gen_max_ambiguous(&s).unwrap());
        let u = GenSpec::new(6, GenMode::Unique, 9);
        assert_eq!(gen_unique(&u).unwrap(), gen_unique(&u).unwrap());
    }

    #[test]
    fn spec_validation() {
        assert!(gen_unique(&GenSpec::new(3, GenMode::Unique, 0)).is_err());
        assert!(gen_max_ambiguous(&GenSpec::new(5, GenMode::Unique, 0)).is_err());
        let mut s = GenSpec::new(5, GenMode::MaxAmbiguous, 0);
        s.zero_window = (-3.0, -0.5);
        assert!(gen_max_ambiguous(&s).is_err());
        s.zero_window = (-1.2, -1.1);
        s.support_length = 30;
        assert!(matches!(gen_max_ambiguous(&s), Err(Error::GenerationFailure(_))));
        assert_eq!("unique".parse::<GenMode>().unwrap(), GenMode::Unique);
        assert!("both".parse::<GenMode>().is_err());
    }

    #[test]
    fn band_for_single_fixed_zero() {
        // flip -2 -> -1/2
        let (t_star, t) = unique_band(&[c(-2.0, 0.0)]);
        assert!((t - 1.0).abs() < 1e-15);
        assert!((t_star - 0.25).abs() < 1e-15);
    }

    #[test]
    fn band_upper_end_of_worked_example() {
        let fixed = [c(-1.5, 0.0), c(-1.0, 1.0), c(-1.0, -1.0)];
        let (_, t) = unique_band(&fixed);
        assert!((t - 1.75).abs() < 1e-15);
        assert_eq!(t, feasible_region(&fixed).unwrap().halfplane_bound);
    }

    #[test]
    fn unique_instances() {
        for n in 4..=6 {
            for seed in 0..3 {
                let inst = gen_unique_instance(&GenSpec::new(n, GenMode::Unique, seed)).unwrap();
                assert_eq!(inst.signal.len(), n);
                assert!(inst.signal.min_component() > 0.0);
                let r = enumerate_solutions(&autocorrelation(&inst.signal)).unwrap();
                assert_eq!(r.nonnegative_classes, 1);
                let (t_star, t) = inst.band;
                assert!(t_star < inst.free.re && inst.free.re < t);
            }
        }
    }

    #[test]
    fn perturbation_with_zero_delta() {
        let x = gen_max_ambiguous(&GenSpec::new(5, GenMode::MaxAmbiguous, 3)).unwrap();
        let s = perturb_study(&x, 0.0, 4, 11).unwrap();
        assert!(s.scale_invariant);
        for r in &s.results {
            assert!(r.max_root_displacement.unwrap() < 1e-12);
            assert_eq!(r.total_classes, Some(s.base_total_classes));
            assert_eq!(r.nonnegative_classes, Some(8));
        }
        assert_eq!(s.preserved(), 4);
    }

    #[test]
    fn perturbation_rejects_large_delta() {
        let x = Signal::from_values(vec![0.5, 3.0, 2.0]).unwrap();
        assert!(perturb_study(&x, 0.5, 1, 0).is_err());
        assert!(perturb_study(&x, -1.0, 1, 0).is_err());
    }

    #[test]
    fn perturbation_csv_and_determinism() {
        let x = gen_max_ambiguous(&GenSpec::new(4, GenMode::MaxAmbiguous, 5)).unwrap();
        let a = perturb_study(&x, 1e-3, 6, 2).unwrap();
        let b = perturb_study_with(
            &x,
            1e-3,
            6,
            2,
            &EnumConfig { exec: Execution::Sequential, ..Default::default() },
        )
        .unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let csv = a.to_csv();
        assert!(csv.starts_with("trial,max_root_displacement,total_classes,nonnegative_classes\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}

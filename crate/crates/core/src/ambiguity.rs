//! Every real solution of `|X̂|² = â`, modulo shifts and reflections.
//!
//! Each solution is fixed by choosing one root from every reflection pair of
//! the associated polynomial; its Fourier transform is then
//! `sqrt(|a[N-1]| / Π|β_j|) · Π (e^{-iω} - β_j)` up to a shift. Flip units
//! keep the choices conjugate-closed so that only real signals are produced.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::io::ZeroRecord;
use crate::poly;
use crate::roots::{associated_polynomial, find_roots_with, pair_roots_with, FlipUnit};
use crate::signal::{
    autocorrelation, intensity_mismatch, lex_cmp_tol, Autocorrelation, Signal, DEFAULT_SAMPLES,
};
use crate::tol::Tolerances;

/// Exhaustive enumeration is refused beyond this many flippable units.
pub const MAX_FLIPPABLE_UNITS: usize = 24;

/// Distance from the unit circle below which an off-circle pair is reported
/// as nearly self-reflective.
const NEAR_CIRCLE_WARN: f64 = 1e-4;

pub fn reconstruct_from_zeros(zeros: &[Complex64], last_lag: f64) -> Result<Signal> {
    reconstruct_from_zeros_with(zeros, last_lag, &Tolerances::default())
}

/// Signal with corresponding zero set `zeros` and `|a[N-1]| = |last_lag|`,
/// supported on `0..=zeros.len()`.
pub fn reconstruct_from_zeros_with(
    zeros: &[Complex64],
    last_lag: f64,
    tol: &Tolerances,
) -> Result<Signal> {
    if !(last_lag != 0.0 && last_lag.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "a[N-1] must be finite and nonzero, got {last_lag}"
        )));
    }
    if zeros.iter().any(|z| z.norm() == 0.0 || !z.norm().is_finite()) {
        return Err(Error::InvalidParameter(
            "zero sets may not contain 0 or non-finite values".into(),
        ));
    }
    let coeffs = poly::expand_roots(zeros);
    let largest = coeffs.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let residue = coeffs.iter().fold(0.0f64, |m, v| m.max(v.im.abs()));
    let bound = tol.real * largest;
    if residue > bound {
        return Err(Error::RealnessViolation { residue, bound });
    }
    let log_scale = 0.5 * (last_lag.abs().ln() - zeros.iter().map(|z| z.norm().ln()).sum::<f64>());
    let scale = log_scale.exp();
    Signal::with_trim(0, coeffs.iter().map(|v| scale * v.re).collect(), tol.trim)
}

/// One solution class: the canonical representative and the zero set that
/// produces it.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionClass {
    pub signal: Signal,
    /// Corresponding zero set of `signal` (one root per reflection pair).
    pub chosen_zeros: Vec<Complex64>,
    /// Bit `i` set when the `i`-th flippable unit contributes its mirror.
    pub flip_mask: u64,
    pub nonnegative: bool,
    pub min_component: f64,
    /// The components sum to zero, so `-signal` is an equally valid
    /// representative.
    pub sign_ambiguous: bool,
}

impl Serialize for SolutionClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let zeros: Vec<ZeroRecord> = self.chosen_zeros.iter().map(|&z| z.into()).collect();
        let mut st = s.serialize_struct("SolutionClass", 5)?;
        st.serialize_field("values", self.signal.values())?;
        st.serialize_field("zeros", &zeros)?;
        st.serialize_field("nonnegative", &self.nonnegative)?;
        st.serialize_field("min_component", &self.min_component)?;
        if self.sign_ambiguous {
            st.serialize_field("sign_ambiguous", &true)?;
        } else {
            st.skip_field("sign_ambiguous")?;
        }
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbiguityReport {
    pub total_classes: usize,
    pub nonnegative_classes: usize,
    /// `2^(N-2)` for `N >= 2`, else 1 (saturating).
    pub upper_bound: u64,
    /// Number of flippable units `m`; unit-circle units are not counted.
    pub flippable_units: usize,
    pub solutions: Vec<SolutionClass>,
    pub warnings: Vec<String>,
}

impl AmbiguityReport {
    pub fn nonnegative(&self) -> impl Iterator<Item = &SolutionClass> {
        self.solutions.iter().filter(|s| s.nonnegative)
    }

    /// Index of the class containing `x` up to shift, reflection and global
    /// sign.
    pub fn class_of(&self, x: &Signal, tol: &Tolerances) -> Option<usize> {
        let probe = Candidate::new(x.clone(), Vec::new(), 0, 0, tol);
        self.solutions.iter().position(|s| {
            let k = Candidate {
                values: s.signal.values().to_vec(),
                zeros: Vec::new(),
                mask: 0,
                sign_ambiguous: s.sign_ambiguous,
            };
            k.same_class(&probe, tol.dedup)
        })
    }

    /// Keeps only the non-negative classes in the listing; counts are kept.
    pub fn retain_nonnegative(&mut self) {
        self.solutions.retain(|s| s.nonnegative);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumConfig {
    pub tol: Tolerances,
    pub exec: Execution,
    /// Frequencies used for the intensity cross-check of each class.
    pub samples: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            exec: Execution::default(),
            samples: DEFAULT_SAMPLES,
        }
    }
}

pub fn upper_bound(support_len: usize) -> u64 {
    match support_len {
        0..=2 => 1,
        n if n - 2 < 64 => 1u64 << (n - 2),
        _ => u64::MAX,
    }
}

pub fn enumerate_solutions(a: &Autocorrelation) -> Result<AmbiguityReport> {
    enumerate_solutions_with(a, &EnumConfig::default())
}

pub fn enumerate_solutions_with(a: &Autocorrelation, cfg: &EnumConfig) -> Result<AmbiguityReport> {
    let tol = &cfg.tol;
    let roots = find_roots_with(&associated_polynomial(a), tol)?;
    let units = pair_roots_with(&roots, tol)?;
    enumerate_from_units(a, &units, cfg)
}

/// Enumeration over the flip masks of already paired roots.
pub fn enumerate_from_units(
    a: &Autocorrelation,
    units: &[FlipUnit],
    cfg: &EnumConfig,
) -> Result<AmbiguityReport> {
    let tol = &cfg.tol;
    let flippable: Vec<usize> = (0..units.len()).filter(|&i| units[i].is_flippable()).collect();
    let m = flippable.len();
    if m > MAX_FLIPPABLE_UNITS {
        return Err(Error::InvalidParameter(format!(
            "{m} flippable units exceed the exhaustive enumeration limit of {MAX_FLIPPABLE_UNITS}"
        )));
    }
    let mut bit_of = vec![None; units.len()];
    for (b, &u) in flippable.iter().enumerate() {
        bit_of[u] = Some(b);
    }
    let full_mask = if m == 0 { 0 } else { (1u64 << m) - 1 };

    let candidates = cfg.exec.map_range(1usize << m, |mask| {
        let mask = mask as u64;
        let zeros: Vec<Complex64> = units
            .iter()
            .enumerate()
            .flat_map(|(i, u)| u.zeros(bit_of[i].is_some_and(|b| mask >> b & 1 == 1)))
            .collect();
        let x = reconstruct_from_zeros_with(&zeros, a.last(), tol)?;
        Ok(Candidate::new(x, zeros, mask, full_mask, tol))
    });
    let candidates = candidates.into_iter().collect::<Result<Vec<_>>>()?;

    let mut classes: Vec<Candidate> = Vec::new();
    for cand in candidates {
        if !classes.iter().any(|k| k.same_class(&cand, tol.dedup)) {
            classes.push(cand);
        }
    }

    let mut solutions: Vec<SolutionClass> = classes
        .into_iter()
        .map(|k| {
            let signal = Signal::with_trim(0, k.values, tol.trim).expect("nonzero by construction");
            SolutionClass {
                nonnegative: signal.is_nonnegative(tol.nn),
                min_component: signal.min_component(),
                signal,
                chosen_zeros: k.zeros,
                flip_mask: k.mask,
                sign_ambiguous: k.sign_ambiguous,
            }
        })
        .collect();
    solutions.sort_by(|x, y| lex_total(x.signal.values(), y.signal.values()));

    let mut warnings = Vec::new();
    let circle: Vec<f64> = units.iter().filter_map(|u| u.circle_deviation).collect();
    if !circle.is_empty() {
        let worst = circle.iter().fold(0.0f64, |w, &d| w.max(d));
        warnings.push(format!(
            "{} unit-circle zero(s) snapped to |z| = 1 (max deviation {worst:.3e}, tol_circle {:.1e}); they admit no flip, so the class count is below the 2^(N-2) bound",
            circle.len(),
            tol.circle
        ));
    }
    for u in units.iter().filter(|u| u.is_flippable()) {
        let g = u.pairs[0].gamma;
        if g.norm() - 1.0 < NEAR_CIRCLE_WARN {
            warnings.push(format!(
                "reflection pair at {:.6}{:+.6}i lies within {NEAR_CIRCLE_WARN:.0e} of the unit circle; classes differing only by this flip may be merged",
                g.re, g.im
            ));
        }
    }
    let mismatch = cfg
        .exec
        .map_range(solutions.len(), |i| intensity_mismatch(&solutions[i].signal, a, cfg.samples));
    for (s, &err) in solutions.iter().zip(&mismatch) {
        if err > tol.eval.max(1e-8) {
            warnings.push(format!(
                "class {:?} reproduces the intensity only to relative error {err:.3e}",
                s.signal.values()
            ));
        }
    }
    if solutions.iter().any(|s| s.sign_ambiguous) {
        warnings.push("some classes have zero component sum; their negations are also solutions".into());
    }

    Ok(AmbiguityReport {
        total_classes: solutions.len(),
        nonnegative_classes: solutions.iter().filter(|s| s.nonnegative).count(),
        upper_bound: upper_bound(a.len()),
        flippable_units: m,
        solutions,
        warnings,
    })
}

fn lex_total(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

struct Candidate {
    values: Vec<f64>,
    zeros: Vec<Complex64>,
    mask: u64,
    sign_ambiguous: bool,
}

impl Candidate {
    /// Normalises sign (component sum >= 0) and orientation (canonical form),
    /// keeping the zero set and mask consistent with the representative.
    fn new(x: Signal, zeros: Vec<Complex64>, mask: u64, full_mask: u64, tol: &Tolerances) -> Self {
        let mut values = x.values().to_vec();
        let max = x.max_abs();
        let sum: f64 = values.iter().sum();
        let abs_sum: f64 = values.iter().map(|v| v.abs()).sum();
        let mut sign_ambiguous = false;
        if sum.abs() <= tol.eval * abs_sum {
            sign_ambiguous = true;
            if let Some(first) = values.iter().find(|v| v.abs() > tol.eval * max) {
                if *first < 0.0 {
                    values.iter_mut().for_each(|v| *v = -*v);
                }
            }
        } else if sum < 0.0 {
            values.iter_mut().for_each(|v| *v = -*v);
        }

        let mut rev = values.clone();
        rev.reverse();
        let (values, zeros, mask) = if lex_cmp_tol(&rev, &values, tol.eval * max).is_lt() {
            // reflection: zero set {1/conj β}, which for a conjugate-closed
            // set equals {1/β}
            let zs = zeros.iter().map(|z| z.inv()).collect();
            (rev, zs, !mask & full_mask)
        } else {
            (values, zeros, mask)
        };
        Self {
            values,
            zeros,
            mask,
            sign_ambiguous,
        }
    }

    fn same_class(&self, other: &Candidate, rel: f64) -> bool {
        let a = &self.values;
        let b = &other.values;
        if a.len() != b.len() {
            return false;
        }
        let scale = a
            .iter()
            .chain(b.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let close = |f: &dyn Fn(usize) -> f64| (0..a.len()).all(|i| (a[i] - f(i)).abs() <= rel * scale);
        let n = b.len();
        if close(&|i| b[i]) || close(&|i| b[n - 1 - i]) {
            return true;
        }
        (self.sign_ambiguous || other.sign_ambiguous)
            && (close(&|i| -b[i]) || close(&|i| -b[n - 1 - i]))
    }
}

pub fn verify_solution(x: &Signal, a: &Autocorrelation) -> bool {
    verify_solution_with(x, a, &Tolerances::default())
}

/// True iff `autocorrelation(x)` matches `a` lag by lag, relative to `a[0]`.
pub fn verify_solution_with(x: &Signal, a: &Autocorrelation, tol: &Tolerances) -> bool {
    let ax = autocorrelation(x);
    ax.len() == a.len() && ax.approx_eq(a, tol.eval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{reflect_point, zeros_of_signal};
    use crate::signal::{canonicalize, reflect};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sig(v: &[f64]) -> Signal {
        Signal::from_values(v.to_vec()).unwrap()
    }

    fn assert_values(x: &Signal, want: &[f64], eps: f64) {
        assert_eq!(x.len(), want.len(), "{:?} vs {want:?}", x.values());
        for (a, b) in x.values().iter().zip(want) {
            assert!((a - b).abs() <= eps, "{:?} vs {want:?}", x.values());
        }
    }

    #[test]
    fn reconstruct_examples() {
        assert_values(&reconstruct_from_zeros(&[c(-2.0, 0.0)], 2.0).unwrap(), &[2.0, 1.0], 1e-15);
        assert_values(&reconstruct_from_zeros(&[c(-0.5, 0.0)], 2.0).unwrap(), &[1.0, 2.0], 1e-15);
        // N = 1
        assert_values(&reconstruct_from_zeros(&[], 9.0).unwrap(), &[3.0], 1e-15);
    }

    #[test]
    fn reconstruct_rejects() {
        assert!(matches!(
            reconstruct_from_zeros(&[c(-1.0, 1.0)], 1.0),
            Err(Error::RealnessViolation { .. })
        ));
        assert!(reconstruct_from_zeros(&[c(0.0, 0.0)], 1.0).is_err());
        assert!(reconstruct_from_zeros(&[c(-2.0, 0.0)], 0.0).is_err());
    }

    #[test]
    fn reconstruct_matches_last_lag() {
        let zs = [c(-1.5, 0.0), c(0.3, 2.0), c(0.3, -2.0), c(-0.2, 0.0)];
        let x = reconstruct_from_zeros(&zs, -3.0).unwrap();
        assert!((autocorrelation(&x).last().abs() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn round_trip_through_zeros() {
        let x = sig(&[0.9, 2.1, -0.4, 1.3]);
        let z = zeros_of_signal(&x).unwrap();
        let y = reconstruct_from_zeros(&z, autocorrelation(&x).last()).unwrap();
        // equal up to global sign
        let y = if y.values()[0] * x.values()[0] < 0.0 { y.scaled(-1.0).unwrap() } else { y };
        assert_values(&canonicalize(&y), canonicalize(&x).values(), 1e-12);
    }

    #[test]
    fn two_term_signal_has_one_class() {
        let r = enumerate_solutions(&autocorrelation(&sig(&[2.0, 1.0]))).unwrap();
        assert_eq!(r.total_classes, 1);
        assert_eq!(r.nonnegative_classes, 1);
        assert_eq!(r.upper_bound, 1);
        assert_values(&r.solutions[0].signal, &[1.0, 2.0], 1e-12);
    }

    #[test]
    fn worked_example_counts() {
        let zs = [
            c(-1.5, 0.0),
            c(-1.0, 1.0),
            c(-1.0, -1.0),
            c(0.75, 1.0),
            c(0.75, -1.0),
        ];
        let x = reconstruct_from_zeros(&zs, 1.0).unwrap();
        assert!(x.is_nonnegative(1e-9));
        let a = autocorrelation(&x);
        let r = enumerate_solutions(&a).unwrap();
        assert_eq!(r.total_classes, 4);
        assert_eq!(r.nonnegative_classes, 3);
        assert_eq!(r.flippable_units, 3);
        assert_eq!(r.upper_bound, 16);
        for s in &r.solutions {
            assert!(verify_solution(&s.signal, &a));
            assert_eq!(s.chosen_zeros.len(), 5);
        }
        let tol = Tolerances::default();
        let k = r.class_of(&x, &tol).unwrap();
        assert!(r.solutions[k].nonnegative);
        let moved = crate::signal::shift(&reflect(&x.scaled(-1.0).unwrap()), 7);
        assert_eq!(r.class_of(&moved, &tol), Some(k));
        assert_eq!(r.class_of(&sig(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]), &tol), None);
    }

    #[test]
    fn clustered_mirrors_stay_distinct() {
        // mirrors of -3.96 and -3.82 sit 0.01 apart near -0.25
        let zs: Vec<Complex64> = [
            -3.963709779798044,
            -3.817440394362577,
            -3.42655723613078,
            -3.240173576725002,
            -2.839353180097963,
            -2.455190585188864,
            -1.8943050119293667,
            -1.728727892221065,
            -1.2506365453023667,
        ]
        .iter()
        .map(|&r| c(r, 0.0))
        .collect();
        let x = reconstruct_from_zeros(&zs, 1.0).unwrap();
        let r = enumerate_solutions(&autocorrelation(&x)).unwrap();
        assert_eq!((r.total_classes, r.nonnegative_classes), (256, 256));
    }

    #[test]
    fn chosen_zeros_generate_the_representative() {
        let x = sig(&[1.0, 0.3, -2.0, 0.8, 1.7]);
        let a = autocorrelation(&x);
        let r = enumerate_solutions(&a).unwrap();
        for s in &r.solutions {
            let y = reconstruct_from_zeros(&s.chosen_zeros, a.last()).unwrap();
            let sign = if y.values().iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            assert_values(&y.scaled(sign).unwrap(), s.signal.values(), 1e-9);
        }
    }

    #[test]
    fn unit_circle_zero_contributes_no_flip() {
        // (z + 1)(z + 3): zero on the circle and one flippable real pair
        let x = sig(&[3.0, 4.0, 1.0]);
        let r = enumerate_solutions(&autocorrelation(&x)).unwrap();
        assert_eq!(r.flippable_units, 1);
        assert_eq!(r.total_classes, 1);
        assert!(r.warnings.iter().any(|w| w.contains("unit-circle")));
    }

    #[test]
    fn verify_examples() {
        let x = sig(&[1.0, 2.0, 4.0]);
        let a = autocorrelation(&x);
        assert!(verify_solution(&x, &a));
        assert!(verify_solution(&reflect(&x), &a));
        assert!(!verify_solution(&sig(&[1.1, 2.0, 4.0]), &a));
        assert!(!verify_solution(&sig(&[1.0, 2.0]), &a));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let zs: Vec<Complex64> = [-1.3, -2.2, -3.1, -1.7, -2.6, -3.9]
            .iter()
            .map(|&r| c(r, 0.0))
            .collect();
        let a = autocorrelation(&reconstruct_from_zeros(&zs, 1.0).unwrap());
        let seq = enumerate_solutions_with(
            &a,
            &EnumConfig { exec: Execution::Sequential, ..Default::default() },
        )
        .unwrap();
        let par = enumerate_solutions(&a).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.total_classes, 32);
    }

    #[test]
    fn class_formula_for_distinct_zeros() {
        let g = c(1.4, 0.9);
        let zs = vec![c(-2.5, 0.0), c(0.4, 0.0), g, g.conj(), reflect_point(c(-0.6, 1.8)), reflect_point(c(-0.6, -1.8))];
        let a = autocorrelation(&reconstruct_from_zeros(&zs, 1.0).unwrap());
        let r = enumerate_solutions(&a).unwrap();
        assert_eq!(r.flippable_units, 4);
        assert_eq!(r.total_classes, 8);
    }

    #[test]
    fn report_json_layout() {
        let r = enumerate_solutions(&autocorrelation(&sig(&[2.0, 1.0]))).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["total_classes", "nonnegative_classes", "upper_bound", "solutions", "warnings"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let s = &v["solutions"][0];
        assert_eq!(s["zeros"][0]["re"], serde_json::json!(-0.5));
        assert!(s.get("sign_ambiguous").is_none());
    }
}

//! Non-negativity of a real signal in terms of its zero set.
//!
//! A signal is non-negative exactly when the monic polynomial
//! `Q(z) = Π (z - β_j)` over its zero set has non-negative coefficients. With
//! all zeros but one conjugate pair fixed, this becomes a finite system of
//! quadratic inequalities in the free pair, which under a left-half-plane
//! hypothesis describes a half plane minus a few open discs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::roots::reflect_point;
use crate::tol::Tolerances;

/// `sigma[n] = (-1)^n S_n(β_1, ..., β_m)` for `n = 0..=m`; zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSeq {
    sigma: Vec<f64>,
}

impl SymmetricSeq {
    pub fn as_slice(&self) -> &[f64] {
        &self.sigma
    }

    /// `σ_n` for any integer `n`.
    pub fn get(&self, n: i64) -> f64 {
        if n < 0 {
            return 0.0;
        }
        self.sigma.get(n as usize).copied().unwrap_or(0.0)
    }

    /// Number of zeros the sequence was built from.
    pub fn zero_count(&self) -> usize {
        self.sigma.len() - 1
    }
}

pub fn elementary_symmetric(zeros: &[Complex64]) -> Result<SymmetricSeq> {
    elementary_symmetric_with(zeros, &Tolerances::default())
}

/// Signed elementary symmetric polynomials via Vieta: the coefficients of
/// `Π (z - β_j)` read from the leading term down.
pub fn elementary_symmetric_with(zeros: &[Complex64], tol: &Tolerances) -> Result<SymmetricSeq> {
    let c = poly::expand_roots(zeros);
    let scale = c.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    let residue = c.iter().fold(0.0f64, |m, v| m.max(v.im.abs()));
    let bound = tol.real * scale;
    if residue > bound {
        return Err(Error::RealnessViolation { residue, bound });
    }
    Ok(SymmetricSeq {
        sigma: c.iter().rev().map(|v| v.re).collect(),
    })
}

fn sigma_real_parts(fixed: &[Complex64]) -> SymmetricSeq {
    SymmetricSeq {
        sigma: poly::expand_roots(fixed).iter().rev().map(|v| v.re).collect(),
    }
}

/// Left-hand sides `σ_{n-2}|β|² - 2σ_{n-1} Re β + σ_n` for `n = 0..N-1`,
/// i.e. the coefficients of `Q` from the leading one down, where the zero set
/// is `fixed ∪ {β, conj β}` of size `N - 1`.
pub fn last_pair_lhs(fixed: &[Complex64], beta: Complex64) -> Vec<f64> {
    let s = sigma_real_parts(fixed);
    let n_minus_1 = fixed.len() as i64 + 2;
    let abs2 = beta.norm_sqr();
    (0..=n_minus_1)
        .map(|n| s.get(n - 2) * abs2 - 2.0 * s.get(n - 1) * beta.re + s.get(n))
        .collect()
}

/// Whether every coefficient is `>= -nn * max|coefficient|`.
pub(crate) fn all_nonneg(values: &[f64], nn: f64) -> bool {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    values.iter().all(|&v| v >= -nn * scale)
}

/// True iff adding the conjugate pair `(β, conj β)` to the conjugate-closed
/// set `fixed` yields a monic polynomial with only non-negative coefficients.
/// Every inequality `n = 0..N-1` is evaluated, including vacuous ones.
pub fn last_pair_nonneg(fixed: &[Complex64], beta: Complex64) -> bool {
    last_pair_nonneg_with(fixed, beta, &Tolerances::default())
}

pub fn last_pair_nonneg_with(fixed: &[Complex64], beta: Complex64, tol: &Tolerances) -> bool {
    all_nonneg(&last_pair_lhs(fixed, beta), tol.nn)
}

/// Verdicts for the representative `β` and for its reflection `1/conj β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LastPairVerdict {
    pub representative: bool,
    pub reflected: bool,
}

pub fn last_pair_verdicts(fixed: &[Complex64], beta: Complex64) -> LastPairVerdict {
    LastPairVerdict {
        representative: last_pair_nonneg(fixed, beta),
        reflected: last_pair_nonneg(fixed, reflect_point(beta)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    #[serde(rename = "center_re")]
    pub center: f64,
    pub radius: f64,
    #[serde(skip)]
    radius_sq: f64,
}

impl Disc {
    /// Closed exterior test, `|β - c|² >= r²`.
    pub fn admits(&self, beta: Complex64) -> bool {
        (beta - self.center).norm_sqr() >= self.radius_sq
    }

    /// Squared-distance margin `|β - c|² - r²` (positive outside).
    pub fn margin(&self, beta: Complex64) -> f64 {
        (beta - self.center).norm_sqr() - self.radius_sq
    }
}

/// Positions of the free conjugate pair that keep the signal non-negative:
/// `Re β <= halfplane_bound` and outside every disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibleRegion {
    #[serde(rename = "halfplane_re_max")]
    pub halfplane_bound: f64,
    #[serde(rename = "excluded_discs")]
    pub discs: Vec<Disc>,
}

impl FeasibleRegion {
    pub fn contains(&self, beta: Complex64) -> bool {
        beta.re <= self.halfplane_bound && self.discs.iter().all(|d| d.admits(beta))
    }

    /// Rasterises the region over a window as `(re, im, feasible)` rows,
    /// imaginary part outermost.
    pub fn raster(&self, window: &RasterWindow) -> Vec<(f64, f64, bool)> {
        let nre = window.count(window.re_min, window.re_max);
        let nim = window.count(window.im_min, window.im_max);
        let mut out = Vec::with_capacity(nre * nim);
        for j in 0..nim {
            let im = window.im_min + j as f64 * window.step;
            for i in 0..nre {
                let re = window.re_min + i as f64 * window.step;
                out.push((re, im, self.contains(Complex64::new(re, im))));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub step: f64,
}

impl RasterWindow {
    fn count(&self, lo: f64, hi: f64) -> usize {
        ((hi - lo) / self.step + 1e-9).floor() as usize + 1
    }
}

impl std::str::FromStr for RasterWindow {
    type Err = Error;

    /// Parses `"re_min,re_max,im_min,im_max,step"`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("raster window {s:?}: {e}")))?;
        let [re_min, re_max, im_min, im_max, step] = v[..] else {
            return Err(Error::InvalidParameter(format!(
                "raster window {s:?}: expected 5 comma-separated numbers"
            )));
        };
        if !(step > 0.0 && re_max >= re_min && im_max >= im_min)
            || v.iter().any(|x| !x.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "raster window {s:?}: need re_min <= re_max, im_min <= im_max, step > 0"
            )));
        }
        if ((re_max - re_min) / step) * ((im_max - im_min) / step) > 1e8 {
            return Err(Error::InvalidParameter(format!(
                "raster window {s:?}: more than 1e8 points"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
            step,
        })
    }
}

/// Half plane and discs for the free pair, given fixed zeros that all lie in
/// the open left half plane.
pub fn feasible_region(fixed: &[Complex64]) -> Result<FeasibleRegion> {
    feasible_region_with(fixed, &Tolerances::default())
}

pub fn feasible_region_with(fixed: &[Complex64], tol: &Tolerances) -> Result<FeasibleRegion> {
    if let Some(z) = fixed.iter().find(|z| z.re >= 0.0) {
        return Err(Error::HypothesisViolation(format!(
            "fixed zero {}{:+}i does not have negative real part",
            z.re, z.im
        )));
    }
    let s = elementary_symmetric_with(fixed, tol)?;
    // the full zero set has N - 1 = |fixed| + 2 elements
    let n_minus_2 = fixed.len() as i64 + 1;
    let discs = (2..=n_minus_2)
        .filter_map(|n| {
            let (a, b, c) = (s.get(n - 2), s.get(n - 1), s.get(n));
            let radicand = b * b - c * a;
            (radicand >= 0.0).then(|| {
                let radius = radicand.sqrt() / a;
                Disc {
                    center: b / a,
                    radius,
                    radius_sq: radicand / (a * a),
                }
            })
        })
        .collect();
    Ok(FeasibleRegion {
        halfplane_bound: s.get(1) / 2.0,
        discs,
    })
}

/// True iff every zero has strictly negative real part; then every real
/// ambiguity of the corresponding problem is non-negative.
pub fn left_halfplane_sufficient(zeros: &[Complex64]) -> bool {
    zeros.iter().all(|z| z.re < 0.0)
}

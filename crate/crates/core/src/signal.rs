//! Finitely supported real signals, their trivial ambiguities, and the
//! autocorrelation / Fourier intensity pair.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Number of equispaced frequencies used when sampling `â` on `[0, 2π)`.
pub const DEFAULT_SAMPLES: usize = 512;

/// Real signal `x[offset + k] = values[k]`, zero outside the support.
///
/// Endpoints are always nonzero: construction trims leading and trailing
/// components with `|v| <= trim * max|v|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSignal")]
pub struct Signal {
    offset: i64,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSignal {
    #[serde(default)]
    offset: i64,
    values: Vec<f64>,
}

impl TryFrom<RawSignal> for Signal {
    type Error = Error;

    fn try_from(raw: RawSignal) -> Result<Self> {
        Signal::new(raw.offset, raw.values)
    }
}

impl Signal {
    pub fn new(offset: i64, values: Vec<f64>) -> Result<Self> {
        Self::with_trim(offset, values, Tolerances::default().trim)
    }

    pub fn with_trim(offset: i64, mut values: Vec<f64>, trim: f64) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return Err(Error::EmptySignal);
        }
        let thresh = trim * max;
        let first = values.iter().position(|v| v.abs() > thresh).unwrap();
        let last = values.iter().rposition(|v| v.abs() > thresh).unwrap();
        values.truncate(last + 1);
        values.drain(..first);
        Ok(Self {
            offset: offset + first as i64,
            values,
        })
    }

    /// Signal supported on `0..values.len()`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(0, values)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Support length `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `x[n]` for any integer `n`.
    pub fn at(&self, n: i64) -> f64 {
        let k = n - self.offset;
        if k < 0 {
            return 0.0;
        }
        self.values.get(k as usize).copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_component(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// True when every component is `>= -nn * max|x|`.
    pub fn is_nonnegative(&self, nn: f64) -> bool {
        self.min_component() >= -nn * self.max_abs()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.offset, self.values.iter().map(|v| v * factor).collect())
    }
}

/// Time shift `x[n - n0]`.
pub fn shift(x: &Signal, n0: i64) -> Signal {
    Signal {
        offset: x.offset + n0,
        values: x.values.clone(),
    }
}

/// Reflection `x[-n]`.
pub fn reflect(x: &Signal) -> Signal {
    let mut values = x.values.clone();
    values.reverse();
    Signal {
        offset: -(x.offset + x.len() as i64 - 1),
        values,
    }
}

/// Lexicographic order where components closer than `tol` count as equal.
pub(crate) fn lex_cmp_tol(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.total_cmp(y);
        }
    }
    a.len().cmp(&b.len())
}

/// Representative of the shift/reflection orbit: offset 0 and the
/// lexicographically smaller of the value sequence and its reversal.
/// The sign is never changed.
pub fn canonicalize(x: &Signal) -> Signal {
    let tol = Tolerances::default().eval * x.max_abs();
    let mut rev = x.values.clone();
    rev.reverse();
    let values = match lex_cmp_tol(&rev, &x.values, tol) {
        Ordering::Less => rev,
        _ => x.values.clone(),
    };
    Signal { offset: 0, values }
}

/// Autocorrelation `a[0..N-1]`; the negative lags follow from `a[-n] = a[n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAutocorrelation")]
pub struct Autocorrelation {
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct RawAutocorrelation {
    coeffs: Vec<f64>,
}

impl TryFrom<RawAutocorrelation> for Autocorrelation {
    type Error = Error;

    fn try_from(raw: RawAutocorrelation) -> Result<Self> {
        Autocorrelation::new(raw.coeffs)
    }
}

impl Autocorrelation {
    /// Validates an externally supplied sequence: finite, `a[0] > 0`,
    /// nonzero last lag after trimming, and `â >= 0` on the sample grid.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(coeffs, &Tolerances::default())
    }

    pub fn with_tolerances(mut coeffs: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let a0 = coeffs.first().copied().unwrap_or(0.0);
        if a0 <= 0.0 {
            return Err(Error::InvalidAutocorrelation(format!(
                "a[0] must be positive, got {a0}"
            )));
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= tol.trim * a0 {
            coeffs.pop();
        }
        let a = Self { coeffs };
        let floor = -tol.eval * a.scale();
        for k in 0..DEFAULT_SAMPLES {
            let w = 2.0 * PI * k as f64 / DEFAULT_SAMPLES as f64;
            let v = a.evaluate(w);
            if v < floor {
                return Err(Error::InvalidAutocorrelation(format!(
                    "trigonometric polynomial is negative ({v:.3e}) at omega = {w:.6}"
                )));
            }
        }
        Ok(a)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Support length `N` of the underlying signals.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a[n]` for any integer lag.
    pub fn at(&self, n: i64) -> f64 {
        self.coeffs.get(n.unsigned_abs() as usize).copied().unwrap_or(0.0)
    }

    /// `a[N-1]`.
    pub fn last(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    /// `â(ω) = a[0] + 2 Σ a[n] cos(nω)`.
    pub fn evaluate(&self, omega: f64) -> f64 {
        self.coeffs[0]
            + 2.0
                * self.coeffs[1..]
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * ((k + 1) as f64 * omega).cos())
                    .sum::<f64>()
    }

    /// Upper bound `a[0] + 2 Σ |a[n]|` on `|â|`.
    pub fn scale(&self) -> f64 {
        self.coeffs[0] + 2.0 * self.coeffs[1..].iter().map(|a| a.abs()).sum::<f64>()
    }

    /// Elementwise comparison relative to `a[0]`.
    pub fn approx_eq(&self, other: &Autocorrelation, rel: f64) -> bool {
        let n = self.len().max(other.len());
        let bound = rel * self.coeffs[0].max(other.coeffs[0]);
        (0..n as i64).all(|k| (self.at(k) - other.at(k)).abs() <= bound)
    }
}

/// `a[n] = Σ_k x[k] x[k+n]` for `n = 0..N-1`.
pub fn autocorrelation(x: &Signal) -> Autocorrelation {
    let v = x.values();
    let n = v.len();
    let coeffs = (0..n)
        .map(|lag| v[..n - lag].iter().zip(&v[lag..]).map(|(a, b)| a * b).sum())
        .collect();
    Autocorrelation { coeffs }
}

/// `|Σ_n x[n] e^{-iωn}|²`.
pub fn fourier_intensity(x: &Signal, omega: f64) -> f64 {
    x.values()
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let n = (x.offset() + k as i64) as f64;
            Complex64::from_polar(v, -omega * n)
        })
        .sum::<Complex64>()
        .norm_sqr()
}

/// Largest deviation `|X̂(ω)|² - â(ω)` over `samples` equispaced frequencies,
/// divided by `a.scale()`.
pub fn intensity_mismatch(x: &Signal, a: &Autocorrelation, samples: usize) -> f64 {
    let scale = a.scale();
    (0..samples)
        .map(|k| {
            let w = 2.0 * PI * k as f64 / samples as f64;
            (fourier_intensity(x, w) - a.evaluate(w)).abs() / scale
        })
        .fold(0.0, f64::max)
}

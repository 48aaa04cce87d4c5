//! File formats.
//!
//! * Signal: `{"offset": int, "values": [float, ...]}`
//! * Autocorrelation: `{"coeffs": [float, ...]}` holding `a[0..N-1]`
//! * Zero set: `[{"re": float, "im": float}, ...]`
//! * Reports and regions: see the `Serialize` impls of their types.
//!
//! Floats are written with 17 significant digits so every `f64` survives a
//! write/read cycle bit for bit.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{Autocorrelation, Signal};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ZeroRecord {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ZeroRecord> for Complex64 {
    fn from(r: ZeroRecord) -> Self {
        Complex64::new(r.re, r.im)
    }
}

/// `#[serde(with = ...)]` adapter writing a complex number as `{"re", "im"}`.
pub mod zero_serde {
    use super::ZeroRecord;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ZeroRecord::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        ZeroRecord::deserialize(d).map(Complex64::from)
    }
}

pub fn zeros_to_records(zeros: &[Complex64]) -> Vec<ZeroRecord> {
    zeros.iter().map(|&z| z.into()).collect()
}

pub fn parse_zeros(text: &str) -> Result<Vec<Complex64>> {
    let recs: Vec<ZeroRecord> = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("zero-set JSON: {e}")))?;
    Ok(recs.into_iter().map(Complex64::from).collect())
}

/// Either input accepted by enumeration.
#[derive(Debug, Clone, PartialEq)]
pub enum IntensityInput {
    Signal(Signal),
    Autocorrelation(Autocorrelation),
}

impl IntensityInput {
    pub fn autocorrelation(&self) -> Autocorrelation {
        match self {
            IntensityInput::Signal(x) => crate::signal::autocorrelation(x),
            IntensityInput::Autocorrelation(a) => a.clone(),
        }
    }
}

#[derive(Deserialize)]
struct SignalFile {
    #[serde(default)]
    offset: i64,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct AutocorrelationFile {
    coeffs: Vec<f64>,
}

/// Reads a signal (`"values"` key) or an autocorrelation (`"coeffs"` key).
/// Malformed JSON is a configuration error; well-formed JSON describing an
/// invalid signal or autocorrelation keeps its domain error.
pub fn parse_intensity_input(text: &str) -> Result<IntensityInput> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("input JSON: {e}")))?;
    if v.get("values").is_some() {
        parse_signal_value(v).map(IntensityInput::Signal)
    } else if v.get("coeffs").is_some() {
        let f: AutocorrelationFile = serde_json::from_value(v)
            .map_err(|e| Error::InvalidParameter(format!("autocorrelation JSON: {e}")))?;
        Autocorrelation::new(f.coeffs).map(IntensityInput::Autocorrelation)
    } else {
        Err(Error::InvalidParameter(
            "input JSON needs a \"values\" (signal) or \"coeffs\" (autocorrelation) key".into(),
        ))
    }
}

pub fn parse_signal(text: &str) -> Result<Signal> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("signal JSON: {e}")))?;
    parse_signal_value(v)
}

fn parse_signal_value(v: serde_json::Value) -> Result<Signal> {
    let f: SignalFile = serde_json::from_value(v)
        .map_err(|e| Error::InvalidParameter(format!("signal JSON: {e}")))?;
    Signal::new(f.offset, f.values)
}

/// Compact JSON with `{:.16e}` floats.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", fmt_f64(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// 17 significant digits in scientific notation; `null` for non-finite
/// values (JSON has no NaN).
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidParameter(format!("serialisation: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// CSV with header `re,im,feasible`.
pub fn raster_csv(rows: &[(f64, f64, bool)]) -> String {
    let mut s = String::from("re,im,feasible\n");
    for &(re, im, ok) in rows {
        s.push_str(&format!("{},{},{}\n", fmt_f64(re), fmt_f64(im), ok as u8));
    }
    s
}

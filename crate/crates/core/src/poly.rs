//! Dense polynomial helpers. Coefficients are stored in ascending order,
//! `c[k]` multiplying `z^k`.

use num_complex::Complex64;

/// Expands `Π (z - r)` by incremental convolution. Returns the monic
/// coefficients in ascending order (length `roots.len() + 1`).
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(roots.len() + 1);
    c.push(Complex64::new(1.0, 0.0));
    for &r in roots {
        c.push(Complex64::new(0.0, 0.0));
        for k in (1..c.len()).rev() {
            c[k] = c[k - 1] - r * c[k];
        }
        c[0] = -r * c[0];
    }
    c
}

/// Convolution of two real coefficient sequences.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn eval_real(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner evaluation: the rounding error of every step is
/// captured exactly and accumulated in a second Horner pass, so the result
/// is as accurate as if computed in twice the working precision.
pub fn eval_compensated(c: &[f64], z: Complex64) -> Complex64 {
    let (mut sr, mut si) = (0.0f64, 0.0f64);
    let (mut er, mut ei) = (0.0f64, 0.0f64);
    for &a in c.iter().rev() {
        let (p1, q1) = two_prod(sr, z.re);
        let (p2, q2) = two_prod(-si, z.im);
        let (p3, q3) = two_prod(sr, z.im);
        let (p4, q4) = two_prod(si, z.re);
        let (re, q5) = two_sum(p1, p2);
        let (im, q6) = two_sum(p3, p4);
        let (re, q7) = two_sum(re, a);
        let local_r = q1 + q2 + q5 + q7;
        let local_i = q3 + q4 + q6;
        let nr = er * z.re - ei * z.im + local_r;
        ei = er * z.im + ei * z.re + local_i;
        er = nr;
        sr = re;
        si = im;
    }
    Complex64::new(sr + er, si + ei)
}

/// Value and first derivative by Horner's scheme.
pub fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `Σ |c_k| |z|^k`, the natural scale for rounding error in `eval_real`.
pub fn abs_bound(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs())
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| k as f64 * a)
        .collect()
}

pub fn norm1(c: &[f64]) -> f64 {
    c.iter().map(|a| a.abs()).sum()
}

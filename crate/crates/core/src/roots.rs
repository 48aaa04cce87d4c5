//! Associated polynomial of an autocorrelation, its roots, and the grouping
//! of roots into reflection pairs `(γ, 1/conj γ)` and flip units.
//!
//! Roots come from the eigenvalues of a balanced companion matrix, are
//! polished by Newton steps against the original coefficients, and numerically
//! split multiple roots are merged back into exact clusters before pairing.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::signal::{Autocorrelation, Signal};
use crate::tol::Tolerances;

/// `P(z) = Σ_{n=0}^{2N-2} a[n-N+1] z^n`, coefficients ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociatedPolynomial {
    coeffs: Vec<f64>,
}

impl AssociatedPolynomial {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        poly::eval_real(&self.coeffs, z)
    }

    /// `e^{iω(N-1)} P(e^{-iω})`, which equals `â(ω)`.
    pub fn trigonometric(&self, omega: f64) -> Complex64 {
        let half = self.degree() as f64 / 2.0;
        Complex64::from_polar(1.0, omega * half) * self.evaluate(Complex64::from_polar(1.0, -omega))
    }
}

pub fn associated_polynomial(a: &Autocorrelation) -> AssociatedPolynomial {
    let n = a.len() as i64;
    let coeffs = (0..2 * n - 1).map(|k| a.at(k - n + 1)).collect();
    AssociatedPolynomial { coeffs }
}

/// A root pair of the associated polynomial, mirrored at the unit circle.
/// The representative `gamma` satisfies `|gamma| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectionPair {
    #[serde(with = "crate::io::zero_serde")]
    pub gamma: Complex64,
    #[serde(with = "crate::io::zero_serde")]
    pub mirror: Complex64,
    pub on_unit_circle: bool,
}

impl ReflectionPair {
    fn off_circle(gamma: Complex64) -> Self {
        Self {
            gamma,
            mirror: reflect_point(gamma),
            on_unit_circle: false,
        }
    }

    fn conj(&self) -> Self {
        Self {
            gamma: self.gamma.conj(),
            mirror: self.mirror.conj(),
            on_unit_circle: self.on_unit_circle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlipKind {
    RealPair,
    ConjugateQuad,
    UnitCircle,
}

/// Smallest group of root pairs that can be flipped while keeping the
/// reconstructed signal real.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlipUnit {
    pub kind: FlipKind,
    pub pairs: Vec<ReflectionPair>,
    /// For unit-circle units: distance from |z| = 1 before snapping.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub circle_deviation: Option<f64>,
}

impl FlipUnit {
    pub fn is_flippable(&self) -> bool {
        self.kind != FlipKind::UnitCircle
    }

    /// Zeros contributed to a corresponding zero set. `flipped` selects the
    /// mirrors instead of the representatives (ignored on the unit circle).
    pub fn zeros(&self, flipped: bool) -> Vec<Complex64> {
        self.pairs
            .iter()
            .map(|p| if flipped && self.is_flippable() { p.mirror } else { p.gamma })
            .collect()
    }

    /// Every root of the associated polynomial covered by this unit.
    pub fn roots(&self) -> Vec<Complex64> {
        self.pairs.iter().flat_map(|p| [p.gamma, p.mirror]).collect()
    }
}

/// `1 / conj(z)`.
pub fn reflect_point(z: Complex64) -> Complex64 {
    z / z.norm_sqr()
}

/// Scale-free mismatch `|γ conj(δ) - 1|` between `γ` and a candidate mirror `δ`.
fn mirror_mismatch(gamma: Complex64, delta: Complex64) -> f64 {
    (gamma * delta.conj() - 1.0).norm()
}

pub fn find_roots(p: &AssociatedPolynomial) -> Result<Vec<Complex64>> {
    find_roots_with(p, &Tolerances::default())
}

pub fn find_roots_with(p: &AssociatedPolynomial, tol: &Tolerances) -> Result<Vec<Complex64>> {
    polynomial_roots(&p.coeffs, tol)
}

/// Zeros of `Σ x[n] z^n` (the corresponding zero set of `x`).
pub fn zeros_of_signal(x: &Signal) -> Result<Vec<Complex64>> {
    zeros_of_signal_with(x, &Tolerances::default())
}

pub fn zeros_of_signal_with(x: &Signal, tol: &Tolerances) -> Result<Vec<Complex64>> {
    polynomial_roots(x.values(), tol)
}

/// Residual bound used to accept a root: `tol_root * ‖c‖₁ * max(1,|z|)^deg`.
pub fn residual_bound(coeffs: &[f64], z: Complex64, tol_root: f64) -> f64 {
    let deg = (coeffs.len() - 1) as i32;
    tol_root * poly::norm1(coeffs) * z.norm().max(1.0).powi(deg)
}

/// All roots (with multiplicity) of a real polynomial whose leading and
/// constant coefficients are nonzero.
pub(crate) fn polynomial_roots(coeffs: &[f64], tol: &Tolerances) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    match deg {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]),
        _ => {}
    }

    let mut roots = match companion_eigenvalues(coeffs) {
        Some(r) => r,
        None => aberth(coeffs, initial_circle(coeffs), 500),
    };
    polish(coeffs, &mut roots, 4);
    merge_clusters(coeffs, &mut roots, tol.root);

    if worst_residual(coeffs, &roots, tol.root).is_some() {
        // retry: simultaneous iteration from the current estimates
        roots = aberth(coeffs, roots, 500);
        polish(coeffs, &mut roots, 4);
        merge_clusters(coeffs, &mut roots, tol.root);
        if let Some((residual, bound)) = worst_residual(coeffs, &roots, tol.root) {
            return Err(Error::NonConvergence { residual, bound });
        }
    }

    for r in roots.iter_mut() {
        if r.im.abs() <= tol.real * r.norm().max(1.0) {
            r.im = 0.0;
        }
    }
    roots.sort_by(cmp_complex);
    Ok(roots)
}

pub(crate) fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Largest residual exceeding its bound, as `(residual, bound)`.
fn worst_residual(coeffs: &[f64], roots: &[Complex64], tol_root: f64) -> Option<(f64, f64)> {
    let mut worst: Option<(f64, f64)> = None;
    for &z in roots {
        let residual = poly::eval_real(coeffs, z).norm();
        let bound = residual_bound(coeffs, z, tol_root);
        if residual.is_nan() || residual > bound {
            let ratio = residual / bound;
            if worst.is_none_or(|(r, b)| ratio > r / b || ratio.is_nan()) {
                worst = Some((residual, bound));
            }
        }
    }
    worst
}

/// Frobenius companion matrix (upper Hessenberg) of the monic normalisation,
/// balanced, then reduced to real Schur form.
fn companion_eigenvalues(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for j in 0..deg {
        m[(0, j)] = -coeffs[deg - 1 - j] / lead;
    }
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    balance(&mut m);
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 100 * deg.max(10))?;
    let eig: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(eig)
}

/// Parlett–Reinsch diagonal similarity with powers of two.
fn balance(m: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= g;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Newton steps on the original coefficients. A step is taken only when it
/// stays well inside the gap to the nearest other root and lowers |P|.
fn polish(coeffs: &[f64], roots: &mut [Complex64], steps: usize) {
    for _ in 0..steps {
        for i in 0..roots.len() {
            let z = roots[i];
            let (_, dp) = poly::eval_with_derivative(coeffs, z);
            if dp.norm() == 0.0 {
                continue;
            }
            let p = poly::eval_compensated(coeffs, z);
            let dz = p / dp;
            let gap = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| (w - z).norm())
                .fold(f64::INFINITY, f64::min);
            if dz.norm().is_nan() || dz.norm() >= 0.25 * gap {
                continue;
            }
            let next = z - dz;
            if poly::eval_compensated(coeffs, next).norm() <= p.norm() {
                roots[i] = next;
            }
        }
    }
}

/// Replaces groups of eigenvalues that approximate one multiple root by the
/// root itself. A group of total multiplicity `k` is accepted when Newton's
/// method on `P^(k-1)` converges near the group's centroid and
/// `P, P', ..., P^(k-1)` all vanish there to `tol_root`.
fn merge_clusters(coeffs: &[f64], roots: &mut Vec<Complex64>, tol_root: f64) {
    const LADDER: [f64; 6] = [1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2];

    // (position, multiplicity)
    let mut points: Vec<(Complex64, usize)> = roots.iter().map(|&z| (z, 1)).collect();
    let derivs = derivative_table(coeffs);

    for &rel in &LADDER {
        let n = points.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(label: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while label[r] != r {
                r = label[r];
            }
            label[i] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                let (zi, zj) = (points[i].0, points[j].0);
                let scale = zi.norm().max(zj.norm()).max(1.0);
                if (zi - zj).norm() <= rel * scale {
                    let (a, b) = (find(&mut label, i), find(&mut label, j));
                    if a != b {
                        label[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut label, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        if groups.len() == n {
            continue;
        }

        let mut next = Vec::with_capacity(groups.len());
        for g in groups {
            if g.len() == 1 || resolved_simple(coeffs, &points, &g) {
                next.extend(g.iter().map(|&i| points[i]));
                continue;
            }
            let k: usize = g.iter().map(|&i| points[i].1).sum();
            let centroid = g
                .iter()
                .map(|&i| points[i].0 * points[i].1 as f64)
                .sum::<Complex64>()
                / k as f64;
            let radius = g
                .iter()
                .map(|&i| (points[i].0 - centroid).norm())
                .fold(0.0, f64::max)
                .max(rel * centroid.norm().max(1.0));
            match refine_multiple(&derivs, centroid, k, radius, tol_root) {
                Some(z) => next.push((z, k)),
                None => next.extend(g.iter().map(|&i| points[i])),
            }
        }
        points = next;
    }

    roots.clear();
    for (z, k) in points {
        roots.extend(std::iter::repeat_n(z, k));
    }
}

/// True when every member of the group is a simple root whose Newton
/// correction is negligible against its distance to the other members.
/// Approximations of one multiple root instead have corrections comparable
/// to their spread.
fn resolved_simple(coeffs: &[f64], points: &[(Complex64, usize)], g: &[usize]) -> bool {
    g.iter().all(|&i| {
        let (z, k) = points[i];
        if k != 1 {
            return false;
        }
        let gap = g
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| (points[j].0 - z).norm())
            .fold(f64::INFINITY, f64::min);
        let (_, dp) = poly::eval_with_derivative(coeffs, z);
        let step = (poly::eval_compensated(coeffs, z) / dp).norm();
        step.is_finite() && step <= 1e-3 * gap
    })
}

fn derivative_table(coeffs: &[f64]) -> Vec<Vec<f64>> {
    let mut table = vec![coeffs.to_vec()];
    while table.last().unwrap().len() > 1 {
        let d = poly::derivative(table.last().unwrap());
        table.push(d);
    }
    table
}

fn refine_multiple(
    derivs: &[Vec<f64>],
    start: Complex64,
    k: usize,
    radius: f64,
    tol_root: f64,
) -> Option<Complex64> {
    if k >= derivs.len() {
        return None;
    }
    let f = &derivs[k - 1];
    let mut z = start;
    for _ in 0..50 {
        let (v, dv) = poly::eval_with_derivative(f, z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    if (z - start).norm() > 2.0 * radius {
        return None;
    }
    // a cluster straddling the real axis of a real polynomial is real
    if z.im.abs() <= radius && start.im.abs() <= radius {
        let zr = Complex64::new(z.re, 0.0);
        if all_vanish(derivs, zr, k, tol_root) {
            return Some(zr);
        }
    }
    all_vanish(derivs, z, k, tol_root).then_some(z)
}

fn all_vanish(derivs: &[Vec<f64>], z: Complex64, k: usize, tol_root: f64) -> bool {
    derivs[..k]
        .iter()
        .all(|d| poly::eval_real(d, z).norm() <= tol_root * poly::abs_bound(d, z))
}

/// Aberth–Ehrlich simultaneous iteration.
fn aberth(coeffs: &[f64], mut z: Vec<Complex64>, max_iter: usize) -> Vec<Complex64> {
    let n = z.len();
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = poly::eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-14 * z[i].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Starting points on a circle whose radius is the geometric mean root size.
fn initial_circle(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let r = (coeffs[0].abs() / coeffs[deg].abs()).powf(1.0 / deg as f64);
    (0..deg)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect()
}

fn pairing_failure(reason: impl Into<String>, tol: &Tolerances) -> Error {
    Error::PairingFailure {
        reason: reason.into(),
        tol: tol.pair,
    }
}

/// Greedy matching of `left[i]` to `right[j]` by increasing cost. Returns
/// `(i, j, cost)` triples; every index is used at most once.
pub(crate) fn greedy_match<F>(left: usize, right: usize, cost: F) -> Vec<(usize, usize, f64)>
where
    F: Fn(usize, usize) -> f64,
{
    let mut cand: Vec<(f64, usize, usize)> = (0..left)
        .flat_map(|i| (0..right).map(move |j| (i, j)))
        .map(|(i, j)| (cost(i, j), i, j))
        .collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_l = vec![false; left];
    let mut used_r = vec![false; right];
    let mut out = Vec::new();
    for (c, i, j) in cand {
        if !used_l[i] && !used_r[j] {
            used_l[i] = true;
            used_r[j] = true;
            out.push((i, j, c));
        }
    }
    out
}

pub fn pair_roots(roots: &[Complex64]) -> Result<Vec<FlipUnit>> {
    pair_roots_with(roots, &Tolerances::default())
}

/// Groups the roots of an associated polynomial into flip units.
///
/// Roots within `tol.circle` of the unit circle are consumed two at a time as
/// self-reflective units; the rest are matched to their mirror images. Pairs
/// with a non-real representative are then joined with their conjugate pair.
pub fn pair_roots_with(roots: &[Complex64], tol: &Tolerances) -> Result<Vec<FlipUnit>> {
    if !roots.len().is_multiple_of(2) {
        return Err(pairing_failure(
            format!("odd number of roots ({})", roots.len()),
            tol,
        ));
    }
    let (circle, off): (Vec<Complex64>, Vec<Complex64>) = roots
        .iter()
        .partition(|z| (z.norm() - 1.0).abs() <= tol.circle);

    let mut units = Vec::new();

    // unit circle: double roots, consumed pairwise
    if circle.len() % 2 != 0 {
        return Err(pairing_failure(
            "odd number of roots on the unit circle",
            tol,
        ));
    }
    let mut circle_pairs = Vec::new();
    {
        let n = circle.len();
        let mut taken = vec![false; n];
        let mut cand: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                cand.push(((circle[i] - circle[j]).norm(), i, j));
            }
        }
        cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        for (d, i, j) in cand {
            if taken[i] || taken[j] {
                continue;
            }
            if d > tol.pair {
                return Err(pairing_failure(
                    format!(
                        "unit-circle root {} has no double partner (nearest at distance {d:.3e})",
                        fmt_c(circle[i])
                    ),
                    tol,
                ));
            }
            taken[i] = true;
            taken[j] = true;
            let mean = (circle[i] + circle[j]) / 2.0;
            let deviation = (circle[i].norm() - 1.0)
                .abs()
                .max((circle[j].norm() - 1.0).abs());
            let mut g = mean / mean.norm();
            if g.im.abs() <= tol.real {
                g.im = 0.0;
            }
            circle_pairs.push((g, deviation));
        }
    }
    // conjugate closure on the circle
    {
        let (real, cplx): (Vec<_>, Vec<_>) = circle_pairs.iter().partition(|(g, _)| g.im == 0.0);
        for (g, dev) in real {
            units.push(circle_unit(g, dev));
        }
        let (upper, lower): (Vec<_>, Vec<_>) = cplx.into_iter().partition(|(g, _)| g.im > 0.0);
        if upper.len() != lower.len() {
            return Err(pairing_failure(
                "unit-circle roots are not closed under conjugation",
                tol,
            ));
        }
        for (i, j, c) in greedy_match(upper.len(), lower.len(), |i, j| {
            (upper[i].0.conj() - lower[j].0).norm()
        }) {
            if c > tol.pair {
                return Err(pairing_failure(
                    "unit-circle roots are not closed under conjugation",
                    tol,
                ));
            }
            let g = upper[i].0;
            let dev = upper[i].1.max(lower[j].1);
            units.push(circle_unit(g, dev));
            units.push(circle_unit(g.conj(), dev));
        }
    }

    // off the circle: match each outer root to an inner mirror
    let (outer, inner): (Vec<Complex64>, Vec<Complex64>) =
        off.iter().partition(|z| z.norm() > 1.0);
    if outer.len() != inner.len() {
        return Err(pairing_failure(
            format!(
                "{} roots outside vs {} inside the unit circle",
                outer.len(),
                inner.len()
            ),
            tol,
        ));
    }
    let mut pairs = Vec::with_capacity(outer.len());
    for (i, j, c) in greedy_match(outer.len(), inner.len(), |i, j| {
        mirror_mismatch(outer[i], inner[j])
    }) {
        if c > tol.pair {
            return Err(pairing_failure(
                format!(
                    "root {} has no mirror image (best mismatch {c:.3e})",
                    fmt_c(outer[i])
                ),
                tol,
            ));
        }
        let mut g = (outer[i] + reflect_point(inner[j])) / 2.0;
        if g.im.abs() <= tol.real * g.norm() {
            g.im = 0.0;
        }
        pairs.push(ReflectionPair::off_circle(g));
    }

    let (real, cplx): (Vec<_>, Vec<_>) = pairs.into_iter().partition(|p| p.gamma.im == 0.0);
    for p in real {
        units.push(FlipUnit {
            kind: FlipKind::RealPair,
            pairs: vec![p],
            circle_deviation: None,
        });
    }
    let (upper, lower): (Vec<_>, Vec<_>) = cplx.into_iter().partition(|p| p.gamma.im > 0.0);
    if upper.len() != lower.len() {
        return Err(pairing_failure(
            "reflection pairs are not closed under conjugation",
            tol,
        ));
    }
    for (i, j, c) in greedy_match(upper.len(), lower.len(), |i, j| {
        (upper[i].gamma.conj() - lower[j].gamma).norm() / upper[i].gamma.norm()
    }) {
        if c > tol.pair {
            return Err(pairing_failure(
                format!(
                    "pair {} has no conjugate partner (best mismatch {c:.3e})",
                    fmt_c(upper[i].gamma)
                ),
                tol,
            ));
        }
        let g = (upper[i].gamma + lower[j].gamma.conj()) / 2.0;
        let p = ReflectionPair::off_circle(g);
        units.push(FlipUnit {
            kind: FlipKind::ConjugateQuad,
            pairs: vec![p, p.conj()],
            circle_deviation: None,
        });
    }

    units.sort_by(|a, b| {
        kind_rank(a.kind)
            .cmp(&kind_rank(b.kind))
            .then_with(|| cmp_complex(&a.pairs[0].gamma, &b.pairs[0].gamma))
    });
    Ok(units)
}

fn circle_unit(g: Complex64, deviation: f64) -> FlipUnit {
    FlipUnit {
        kind: FlipKind::UnitCircle,
        pairs: vec![ReflectionPair {
            gamma: g,
            mirror: g,
            on_unit_circle: true,
        }],
        circle_deviation: Some(deviation),
    }
}

fn kind_rank(k: FlipKind) -> u8 {
    match k {
        FlipKind::RealPair => 0,
        FlipKind::ConjugateQuad => 1,
        FlipKind::UnitCircle => 2,
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::autocorrelation;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots_of(coeffs: &[f64]) -> Vec<Complex64> {
        polynomial_roots(coeffs, &Tolerances::default()).unwrap()
    }

    /// Roots of a quadratic by the textbook formula (test oracle).
    fn quadratic(a: f64, b: f64, cc: f64) -> [Complex64; 2] {
        let d = c(b * b - 4.0 * a * cc, 0.0).sqrt();
        [(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)]
    }

    fn assert_same_multiset(got: &[Complex64], want: &[Complex64], eps: f64) {
        assert_eq!(got.len(), want.len());
        let m = greedy_match(got.len(), want.len(), |i, j| (got[i] - want[j]).norm());
        assert_eq!(m.len(), want.len());
        for (i, j, d) in m {
            assert!(d <= eps * want[j].norm().max(1.0), "{} vs {}", got[i], want[j]);
        }
    }

    #[test]
    fn associated_polynomial_layout() {
        let a = Autocorrelation::new(vec![5.0, 2.0]).unwrap();
        assert_eq!(associated_polynomial(&a).coeffs(), &[2.0, 5.0, 2.0]);
        let a = Autocorrelation::new(vec![2.0, 1.0]).unwrap();
        let p = associated_polynomial(&a);
        assert_eq!(p.coeffs(), &[1.0, 2.0, 1.0]);
        let sum: f64 = p.coeffs().iter().sum();
        assert!((sum - a.evaluate(0.0)).abs() < 1e-12);
    }

    #[test]
    fn trigonometric_identity() {
        let x = Signal::from_values(vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        let a = autocorrelation(&x);
        let p = associated_polynomial(&a);
        for k in 0..64 {
            let w = k as f64 * 0.1;
            let t = p.trigonometric(w);
            assert!((t.re - a.evaluate(w)).abs() < 1e-9 * a.scale());
            assert!(t.im.abs() < 1e-9 * a.scale());
        }
    }

    #[test]
    fn quadratic_roots_match_formula() {
        let got = roots_of(&[2.0, 5.0, 2.0]);
        assert_same_multiset(&got, &quadratic(2.0, 5.0, 2.0), 1e-14);
        assert_same_multiset(&got, &[c(-2.0, 0.0), c(-0.5, 0.0)], 1e-14);
    }

    #[test]
    fn double_root_on_circle() {
        let got = roots_of(&[1.0, 2.0, 1.0]);
        assert_eq!(got, vec![c(-1.0, 0.0), c(-1.0, 0.0)]);
        let units = pair_roots(&got).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].kind, FlipKind::UnitCircle);
        assert!(!units[0].is_flippable());
    }

    #[test]
    fn high_multiplicity_is_recovered() {
        // (z + 1)^6 = P for x = (1, 3, 3, 1)
        let x = Signal::from_values(vec![1.0, 3.0, 3.0, 1.0]).unwrap();
        let p = associated_polynomial(&autocorrelation(&x));
        let r = find_roots(&p).unwrap();
        assert_eq!(r.len(), 6);
        for z in &r {
            assert!((z - c(-1.0, 0.0)).norm() < 1e-12, "{z}");
        }
        let units = pair_roots(&r).unwrap();
        assert_eq!(units.len(), 3);
        assert!(units.iter().all(|u| u.kind == FlipKind::UnitCircle));
    }

    #[test]
    fn zeros_of_signal_examples() {
        assert_eq!(
            zeros_of_signal(&Signal::from_values(vec![2.0, 1.0]).unwrap()).unwrap(),
            vec![c(-2.0, 0.0)]
        );
        let z = zeros_of_signal(&Signal::from_values(vec![2.0, 3.0, 1.0]).unwrap()).unwrap();
        assert_same_multiset(&z, &[c(-2.0, 0.0), c(-1.0, 0.0)], 1e-14);
        assert!(zeros_of_signal(&Signal::from_values(vec![4.0]).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn roots_of_autocorrelation_are_signal_zeros_and_mirrors() {
        let x = Signal::from_values(vec![0.7, -1.3, 2.2, 0.4, 1.9, -0.8]).unwrap();
        let zx = zeros_of_signal(&x).unwrap();
        let mut want: Vec<Complex64> = zx.clone();
        want.extend(zx.iter().map(|&z| reflect_point(z)));
        let got = find_roots(&associated_polynomial(&autocorrelation(&x))).unwrap();
        assert_same_multiset(&got, &want, 1e-9);
    }

    #[test]
    fn pairing_examples() {
        let units = pair_roots(&[c(-2.0, 0.0), c(-0.5, 0.0)]).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].kind, FlipKind::RealPair);
        assert_eq!(units[0].pairs[0].gamma, c(-2.0, 0.0));
        assert_eq!(units[0].pairs[0].mirror, c(-0.5, 0.0));
        assert_eq!(units[0].zeros(true), vec![c(-0.5, 0.0)]);
    }

    #[test]
    fn pairing_rejects_bad_input() {
        assert!(matches!(
            pair_roots(&[c(-2.0, 0.0)]),
            Err(Error::PairingFailure { .. })
        ));
        assert!(matches!(
            pair_roots(&[c(-2.0, 0.0), c(-0.4, 0.0)]),
            Err(Error::PairingFailure { .. })
        ));
        assert!(matches!(
            pair_roots(&[c(-2.0, 0.0), c(3.0, 0.0)]),
            Err(Error::PairingFailure { .. })
        ));
        // simple root on the circle means â changes sign
        assert!(matches!(
            pair_roots(&[c(-1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::PairingFailure { .. })
        ));
    }

    #[test]
    fn conjugate_quad_grouping() {
        let g = c(-1.0, 1.0);
        let roots = [g, g.conj(), reflect_point(g), reflect_point(g).conj()];
        let units = pair_roots(&roots).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].kind, FlipKind::ConjugateQuad);
        let zs = units[0].zeros(false);
        assert_eq!(zs[0], zs[1].conj());
        let fs = units[0].zeros(true);
        assert!((fs[0] - c(-0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn aberth_fallback_converges() {
        let coeffs = [6.0, -5.0, -2.0, 1.0]; // (z-1)(z+2)(z-3)
        let mut r = aberth(&coeffs, initial_circle(&coeffs), 500);
        r.sort_by(cmp_complex);
        assert_same_multiset(&r, &[c(-2.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)], 1e-12);
    }

    #[test]
    fn close_distinct_roots_are_not_merged() {
        // (z + 2)(z + 2.001)
        let coeffs = poly::convolve(&[2.0, 1.0], &[2.001, 1.0]);
        let r = roots_of(&coeffs);
        assert_same_multiset(&r, &[c(-2.0, 0.0), c(-2.001, 0.0)], 1e-10);
    }
}

//! Interval Weyl functions, their regularization, and the triplet criteria built on them.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqmodel::{Partition, ProbeConfig};

type C64 = Complex64;

/// Below this `|x|` the trigonometric quotients switch to their Taylor series.
const SERIES_CUTOFF: f64 = 0.05;
/// Relative distance to a pole inside which evaluation is refused.
const POLE_GUARD: f64 = 1e-6;

/// 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[C64; 2]; 2]);

fn herm_eigs(p: f64, q: C64, r: f64) -> (f64, f64) {
    let m = 0.5 * (p + r);
    let h = (0.25 * (p - r) * (p - r) + q.norm_sqr()).sqrt();
    (m - h, m + h)
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn sym(a: C64, b: C64, d: C64) -> Self {
        Mat2::new(a, b, b, d)
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn sub(&self, o: &Mat2) -> Self {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }

    pub fn scale(&self, c: f64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * c, m[0][1] * c, m[1][0] * c, m[1][1] * c)
    }

    /// `diag(l) M diag(r)`
    pub fn sandwich(&self, l: [f64; 2], r: [f64; 2]) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * l[0] * r[0], m[0][1] * l[0] * r[1], m[1][0] * l[1] * r[0], m[1][1] * l[1] * r[1])
    }

    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        let d = self.sub(o);
        d.0.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part `(M - M*) / 2i`, ascending.
    pub fn im_eigs(&self) -> (f64, f64) {
        let m = &self.0;
        let p = m[0][0].im;
        let r = m[1][1].im;
        let q = (m[0][1] - m[1][0].conj()) / C64::new(0.0, 2.0);
        herm_eigs(p, q, r)
    }

    /// Singular values, ascending.
    pub fn singular_values(&self) -> (f64, f64) {
        let a = self.adjoint();
        let (x, y) = (&a.0, &self.0);
        let p = (x[0][0] * y[0][0] + x[0][1] * y[1][0]).re;
        let q = x[0][0] * y[0][1] + x[0][1] * y[1][1];
        let r = (x[1][0] * y[0][1] + x[1][1] * y[1][1]).re;
        let (lo, hi) = herm_eigs(p, q, r);
        (lo.max(0.0).sqrt(), hi.max(0.0).sqrt())
    }

    pub fn norm(&self) -> f64 {
        self.singular_values().1
    }

    /// `||M^-1||`, infinite when singular.
    pub fn inv_norm(&self) -> f64 {
        let s = self.singular_values().0;
        if s == 0.0 {
            f64::INFINITY
        } else {
            1.0 / s
        }
    }

    /// `||(Im M)^-1||`, infinite when `Im M` is singular.
    pub fn inv_im_norm(&self) -> f64 {
        let (lo, hi) = self.im_eigs();
        let m = lo.abs().min(hi.abs());
        if m == 0.0 {
            f64::INFINITY
        } else {
            1.0 / m
        }
    }
}

/// Interval model behind a Weyl function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Dirichlet-type triplet behind delta interactions
    Delta,
    /// mixed Dirichlet/Neumann triplet
    Mixed,
    /// delta triplet with the constant potential `a^2 / d^2` on the interval
    Potential { a: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripletKind {
    DeltaRaw,
    DeltaRegularized,
    MixedRaw,
    MixedRegularized,
    PotentialRaw,
    PotentialRegularized,
}

impl TripletKind {
    pub fn of(family: Family, regularized: bool) -> Self {
        match (family, regularized) {
            (Family::Delta, false) => TripletKind::DeltaRaw,
            (Family::Delta, true) => TripletKind::DeltaRegularized,
            (Family::Mixed, false) => TripletKind::MixedRaw,
            (Family::Mixed, true) => TripletKind::MixedRegularized,
            (Family::Potential { .. }, false) => TripletKind::PotentialRaw,
            (Family::Potential { .. }, true) => TripletKind::PotentialRegularized,
        }
    }

    pub fn is_regularized(self) -> bool {
        matches!(self, TripletKind::DeltaRegularized | TripletKind::MixedRegularized | TripletKind::PotentialRegularized)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylEval {
    pub kind: TripletKind,
    pub family: Family,
    pub d: f64,
    pub z: C64,
    pub value: Mat2,
}

/// `R_n`, `Q_n` linking a raw triplet to its regularization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizationData {
    pub r: [f64; 2],
    pub q: [[f64; 2]; 2],
}

/// `sqrt(z)` on the branch with `Im >= 0`.
pub fn sqrt_upper(z: C64) -> C64 {
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

fn small(x: C64) -> bool {
    x.norm() < SERIES_CUTOFF
}

/// `x cot x`
fn xcot(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        C64::from(1.0) - x2 * (1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 / 4725.0)))
    } else {
        x * x.cos() / x.sin()
    }
}

/// `1 - x cot x`
fn one_minus_xcot(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        x2 * (1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 / 4725.0)))
    } else {
        C64::from(1.0) - xcot(x)
    }
}

/// `x csc x - 1`
fn xcsc_minus_one(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        x2 * (1.0 / 6.0 + x2 * (7.0 / 360.0 + x2 * (31.0 / 15120.0 + x2 * 127.0 / 604800.0)))
    } else {
        x / x.sin() - 1.0
    }
}

/// `x tan x`
fn xtan(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        x2 * (1.0 + x2 * (1.0 / 3.0 + x2 * (2.0 / 15.0 + x2 * 17.0 / 315.0)))
    } else {
        x * x.tan()
    }
}

/// `sec x - 1`
fn sec_minus_one(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        x2 * (0.5 + x2 * (5.0 / 24.0 + x2 * (61.0 / 720.0 + x2 * 277.0 / 8064.0)))
    } else {
        x.cos().inv() - 1.0
    }
}

/// `tan x / x - 1`
fn tanc_minus_one(x: C64) -> C64 {
    if small(x) {
        let x2 = x * x;
        x2 * (1.0 / 3.0 + x2 * (2.0 / 15.0 + x2 * (17.0 / 315.0 + x2 * 62.0 / 2835.0)))
    } else {
        x.tan() / x - 1.0
    }
}

/// `(eps_1, eps_2) = (a coth a, a / sinh a)`
pub fn potential_coeffs(a: f64) -> (f64, f64) {
    if a.abs() < 1e-3 {
        let a2 = a * a;
        (1.0 + a2 / 3.0 - a2 * a2 / 45.0, 1.0 - a2 / 6.0 + 7.0 * a2 * a2 / 360.0)
    } else {
        (a / a.tanh(), a / a.sinh())
    }
}

/// Root of `a coth a = 2`, bisected down to adjacent floats.
pub fn solve_a0() -> f64 {
    let f = |a: f64| potential_coeffs(a).0 - 2.0;
    let (mut lo, mut hi) = (1.0f64, 3.0f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Interval argument `x` with `sin x` / `cos x` in the Weyl formulas.
fn interval_arg(family: Family, d: f64, z: C64) -> C64 {
    match family {
        Family::Delta | Family::Mixed => sqrt_upper(z) * d,
        Family::Potential { a } => sqrt_upper(z * d * d - a * a),
    }
}

fn check_pole(family: Family, d: f64, z: C64, x: C64) -> Result<()> {
    let (offset, a2) = match family {
        Family::Delta => (0.0, 0.0),
        Family::Potential { a } => (0.0, a * a),
        Family::Mixed => (0.5, 0.0),
    };
    let k = ((x.re / std::f64::consts::PI) - offset).round().max(if offset == 0.0 { 1.0 } else { 0.0 });
    let px = (k + offset) * std::f64::consts::PI;
    if (x - px).norm() < POLE_GUARD * px {
        return Err(Error::Pole { z: format!("{z}"), pole: (px * px + a2) / (d * d) });
    }
    Ok(())
}

fn check_interval(d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!("interval length d = {d} must be positive and finite")));
    }
    Ok(())
}

/// Weyl function of the unregularized triplet on one interval of length `d`.
pub fn weyl_raw(family: Family, d: f64, z: C64) -> Result<WeylEval> {
    check_interval(d)?;
    let x = interval_arg(family, d, z);
    check_pole(family, d, z, x)?;
    let value = match family {
        Family::Delta | Family::Potential { .. } => {
            let diag = -xcot(x) / d;
            let off = -(xcsc_minus_one(x) + 1.0) / d;
            Mat2::sym(diag, off, diag)
        }
        Family::Mixed => Mat2::sym(xtan(x) / d, sec_minus_one(x) + 1.0, (tanc_minus_one(x) + 1.0) * d),
    };
    Ok(WeylEval { kind: TripletKind::of(family, false), family, d, z, value })
}

pub fn regularization(family: Family, d: f64) -> RegularizationData {
    match family {
        Family::Delta => RegularizationData { r: [d.sqrt(); 2], q: [[-1.0 / d; 2]; 2] },
        Family::Mixed => RegularizationData { r: [d.sqrt(), d.powf(1.5)], q: [[0.0, 1.0], [1.0, d]] },
        Family::Potential { a } => {
            let (e1, e2) = potential_coeffs(a);
            RegularizationData { r: [d.sqrt(); 2], q: [[-e1 / d, -e2 / d], [-e2 / d, -e1 / d]] }
        }
    }
}

/// `R^-1 (M~ - Q) R^-1`
pub fn regularize(raw: &WeylEval, reg: &RegularizationData) -> Result<WeylEval> {
    if raw.kind.is_regularized() {
        return Err(Error::domain("Weyl function is already regularized"));
    }
    if reg.r.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::domain("regularization matrix R is singular"));
    }
    let q = Mat2::real(reg.q[0][0], reg.q[0][1], reg.q[1][0], reg.q[1][1]);
    let inv = [1.0 / reg.r[0], 1.0 / reg.r[1]];
    let value = raw.value.sub(&q).sandwich(inv, inv);
    Ok(WeylEval { kind: TripletKind::of(raw.family, true), value, ..*raw })
}

/// Regularized Weyl function, evaluated without cancellation near `z = 0`.
pub fn weyl_regularized(family: Family, d: f64, z: C64) -> Result<WeylEval> {
    check_interval(d)?;
    let x = interval_arg(family, d, z);
    check_pole(family, d, z, x)?;
    let d2 = d * d;
    let value = match family {
        Family::Delta => {
            let diag = one_minus_xcot(x) / d2;
            let off = -xcsc_minus_one(x) / d2;
            Mat2::sym(diag, off, diag)
        }
        Family::Mixed => Mat2::sym(xtan(x) / d2, sec_minus_one(x) / d2, tanc_minus_one(x) / d2),
        Family::Potential { a } => {
            let (e1, e2) = potential_coeffs(a);
            let diag = (C64::from(e1) - xcot(x)) / d2;
            let off = (C64::from(e2) - xcsc_minus_one(x) - 1.0) / d2;
            Mat2::sym(diag, off, diag)
        }
    };
    Ok(WeylEval { kind: TripletKind::of(family, true), family, d, z, value })
}

pub fn weyl(kind: TripletKind, family: Family, d: f64, z: C64) -> Result<WeylEval> {
    if TripletKind::of(family, kind.is_regularized()) != kind {
        return Err(Error::domain(format!("triplet kind {kind:?} does not match family {family:?}")));
    }
    if kind.is_regularized() {
        weyl_regularized(family, d, z)
    } else {
        weyl_raw(family, d, z)
    }
}

/// Weyl function of the rescaled triplet `d^{a-2} G0, d^{-a} G1` built from the unit interval.
pub fn self_similar(kind: TripletKind, family: Family, d: f64, z: C64, alpha: f64) -> Result<Mat2> {
    let unit = weyl(kind, family, 1.0, z * d * d)?;
    Ok(unit.value.scale(d.powf(2.0 - 2.0 * alpha)))
}

/// Central-difference `M'(0)` of a regularized triplet.
pub fn derivative_at_zero(family: Family, d: f64, h: f64) -> Result<Mat2> {
    let p = weyl_regularized(family, d, C64::from(h))?.value;
    let m = weyl_regularized(family, d, C64::from(-h))?.value;
    Ok(p.sub(&m).scale(0.5 / h))
}

/// Closed-form `M'(0)` of the regularized potential triplet, as `(diagonal, off-diagonal)`.
pub fn potential_derivative_at_zero(a: f64) -> (f64, f64) {
    if a.abs() < 1e-3 {
        let a2 = a * a;
        return (1.0 / 3.0 - a2 / 45.0, -1.0 / 6.0 + 7.0 * a2 / 360.0);
    }
    let (s, c) = (a.sinh(), a.cosh());
    ((c / s - a / (s * s)) / (2.0 * a), (1.0 / s - a * c / (s * s)) / (2.0 * a))
}

/// Smallest eigenvalue of `Im M(z)`; nonnegative for a Nevanlinna function on the upper half-plane.
pub fn nevanlinna_min_eig(e: &WeylEval) -> f64 {
    e.value.im_eigs().0
}

/// `max |M(conj z) - M(z)*|`
pub fn conjugate_symmetry_defect(kind: TripletKind, family: Family, d: f64, z: C64) -> Result<f64> {
    let a = weyl(kind, family, d, z)?.value;
    let b = weyl(kind, family, d, z.conj())?.value;
    Ok(b.max_abs_diff(&a.adjoint()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub norm: f64,
    pub inv_im_norm: f64,
    pub inv_norm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripletVerdict {
    Ordinary,
    NotOrdinary,
}

/// Growth summary of one scanned quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub sup: f64,
    pub tail_value: f64,
    /// fitted log-log slope over the last two decades
    pub exponent: f64,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessScan {
    pub kind: TripletKind,
    pub n_max: u64,
    pub norm: Growth,
    pub inv_im_norm: Growth,
    pub inv_norm: Growth,
    pub verdict: TripletVerdict,
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

/// Slope above which a scanned quantity counts as unbounded.
pub const UNBOUNDED_SLOPE: f64 = 0.2;

fn growth(rows: &[ScanRow], f: impl Fn(&ScanRow) -> f64) -> Growth {
    let sup = rows.iter().map(&f).fold(f64::NEG_INFINITY, f64::max);
    let last = rows.last().map(&f).unwrap_or(f64::NAN);
    let n_max = rows.len() as f64;
    let lo = (n_max / 100.0).max(1.0);
    let mut pts = Vec::new();
    let steps = 60;
    for i in 0..=steps {
        let n = (lo * (n_max / lo).powf(i as f64 / steps as f64)).round() as usize;
        let v = f(&rows[n.clamp(1, rows.len()) - 1]);
        if v > 0.0 && v.is_finite() {
            pts.push(((n as f64).ln(), v.ln()));
        }
    }
    pts.dedup_by(|a, b| a.0 == b.0);
    let exponent = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2)));
        num / den
    } else {
        0.0
    };
    Growth { sup, tail_value: last, exponent, bounded: exponent <= UNBOUNDED_SLOPE && sup.is_finite() }
}

/// Scan `||M_n(i)||` and `||(Im M_n(i))^-1||` over `n <= n_max`.
pub fn triplet_boundedness_scan(x: &Partition, kind: TripletKind, family: Family, n_max: u64) -> Result<BoundednessScan> {
    if n_max < 2 {
        return Err(Error::domain("scan needs n_max >= 2"));
    }
    if TripletKind::of(family, kind.is_regularized()) != kind {
        return Err(Error::domain(format!("triplet kind {kind:?} does not match family {family:?}")));
    }
    let d = x.d().eval_range(1, n_max)?;
    let z = C64::new(0.0, 1.0);
    let rows = d
        .par_iter()
        .enumerate()
        .map(|(i, dn)| {
            let m = weyl(kind, family, *dn, z)?.value;
            Ok(ScanRow { n: i as u64 + 1, norm: m.norm(), inv_im_norm: m.inv_im_norm(), inv_norm: m.inv_norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    let norm = growth(&rows, |r| r.norm);
    let inv_im_norm = growth(&rows, |r| r.inv_im_norm);
    let inv_norm = growth(&rows, |r| r.inv_norm);
    let verdict = if norm.bounded && inv_im_norm.bounded { TripletVerdict::Ordinary } else { TripletVerdict::NotOrdinary };
    Ok(BoundednessScan { kind, n_max, norm, inv_im_norm, inv_norm, verdict, rows })
}

/// `F_a(x) = 1/x^2 - a coth(ax) / x`
pub fn f_a(a: f64, x: f64) -> f64 {
    let y = a * x;
    if y < SERIES_CUTOFF {
        let y2 = y * y;
        return -a * a * (1.0 / 3.0 - y2 / 45.0 + 2.0 * y2 * y2 / 945.0);
    }
    1.0 / (x * x) - a / (x * y.tanh())
}

/// `G_a(x) = 1/x^2 - a / (x sinh(ax))`
pub fn g_a(a: f64, x: f64) -> f64 {
    let y = a * x;
    if y < SERIES_CUTOFF {
        let y2 = y * y;
        return a * a * (1.0 / 6.0 - 7.0 * y2 / 360.0 + 31.0 * y2 * y2 / 15120.0);
    }
    1.0 / (x * x) - a / (x * y.sinh())
}

/// `f(y) = 2/y^2 - (1 + cosh y) / (y sinh y)`, so that `F_a(x) + G_a(x) = a^2 f(ax)`.
pub fn f_sum(y: f64) -> f64 {
    if y < SERIES_CUTOFF {
        let y2 = y * y;
        return -1.0 / 6.0 + y2 / 360.0 - y2 * y2 / 15120.0;
    }
    // (1 + cosh y) / sinh y = coth(y/2)
    2.0 / (y * y) - 1.0 / (y * (0.5 * y).tanh())
}

/// Outcome of checking `M(-a^2) <= bound` over sampled intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiboundedCheck {
    pub a: f64,
    pub d_upper: f64,
    pub samples: u64,
    pub max_eigenvalue: f64,
    /// `-a / d^*`
    pub printed_bound: f64,
    /// `-a / d^* + 2 / d^*^2`
    pub corrected_bound: f64,
    pub printed_margin: f64,
    pub corrected_margin: f64,
    pub printed_holds: bool,
    pub corrected_holds: bool,
    /// whether `a >= 2 / d^*`
    pub precondition: bool,
}

/// Largest eigenvalue of the regularized delta Weyl matrices at `z = -a^2`, against the two bounds.
pub fn semibounded_estimate(x: &Partition, a: f64, n_max: u64) -> Result<SemiboundedCheck> {
    if !(a > 0.0) {
        return Err(Error::domain("a must be positive"));
    }
    let d_upper = x.d_upper(&ProbeConfig::default()).value;
    if !d_upper.is_finite() {
        return Err(Error::domain("sup d_n is infinite"));
    }
    let d = x.d().eval_range(1, n_max.max(1))?;
    let max_eigenvalue = d.iter().map(|dn| f_a(a, *dn) + g_a(a, *dn)).fold(f64::NEG_INFINITY, f64::max);
    let printed_bound = -a / d_upper;
    let corrected_bound = printed_bound + 2.0 / (d_upper * d_upper);
    let tol = 1e-12 * max_eigenvalue.abs().max(1.0);
    Ok(SemiboundedCheck {
        a,
        d_upper,
        samples: d.len() as u64,
        max_eigenvalue,
        printed_bound,
        corrected_bound,
        printed_margin: printed_bound - max_eigenvalue,
        corrected_margin: corrected_bound - max_eigenvalue,
        printed_holds: max_eigenvalue <= printed_bound + tol,
        corrected_holds: max_eigenvalue <= corrected_bound + tol,
        precondition: a >= 2.0 / d_upper,
    })
}

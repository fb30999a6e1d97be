//! Eigenvalues of finite sections, three-term recurrences and Rayleigh quotients.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{JacobiOperatorSpec, TridiagonalMatrix};
use crate::seqmodel::Seq;

/// Relative bisection tolerance, scaled by `max(1, ||T||_inf)`.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

pub fn default_tol(t: &TridiagonalMatrix) -> f64 {
    DEFAULT_REL_TOL * t.inf_norm().max(1.0)
}

/// Sturm count at `lambda`; `None` when a pivot hits zero.
fn sturm_raw(t: &TridiagonalMatrix, lambda: f64) -> Option<usize> {
    let (a, b) = (t.diag(), t.off());
    let mut count = 0;
    let mut q = a[0] - lambda;
    if q == 0.0 {
        return None;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..a.len() {
        let bb = b[i - 1] * b[i - 1];
        q = a[i] - lambda - bb / q;
        if q == 0.0 || !q.is_finite() {
            return None;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    Some(count)
}

/// Number of eigenvalues below a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Count {
    pub count: usize,
    /// `lambda` sat on a zero pivot and was nudged down
    pub tie: bool,
}

/// Number of eigenvalues `< lambda`; exact ties are resolved at the next float below.
pub fn counting_function(t: &TridiagonalMatrix, lambda: f64) -> Count {
    let mut l = lambda;
    for step in 0..64 {
        if let Some(count) = sturm_raw(t, l) {
            return Count { count, tie: step > 0 };
        }
        l = l.next_down();
    }
    // a pathological cluster of zero pivots; fall back to a relative nudge
    let l = lambda - 1e-14 * lambda.abs().max(1.0);
    Count { count: sturm_raw(t, l).unwrap_or(0), tie: true }
}

fn blocks(t: &TridiagonalMatrix) -> Vec<TridiagonalMatrix> {
    let (a, b) = (t.diag(), t.off());
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..b.len() {
        if b[i] == 0.0 {
            out.push(TridiagonalMatrix::new(a[start..=i].to_vec(), b[start..i].to_vec()).expect("block of a valid matrix"));
            start = i + 1;
        }
    }
    out.push(TridiagonalMatrix::new(a[start..].to_vec(), b[start..].to_vec()).expect("block of a valid matrix"));
    out
}

/// `k`-th smallest eigenvalue (0-based) inside `[lo, hi]`, given counts at both ends.
fn kth(t: &TridiagonalMatrix, k: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if counting_function(t, mid).count > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn eig_block(t: &TridiagonalMatrix, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    if t.size() == 1 {
        let v = t.diag()[0];
        return if v >= lo && v < hi { vec![v] } else { Vec::new() };
    }
    let (g_lo, g_hi) = t.gershgorin();
    let lo = lo.max(g_lo - tol);
    let hi = hi.min(g_hi + tol);
    if lo >= hi {
        return Vec::new();
    }
    let k_lo = counting_function(t, lo).count;
    let k_hi = counting_function(t, hi).count;
    (k_lo..k_hi).into_par_iter().map(|k| kth(t, k, lo, hi, tol)).collect()
}

/// Eigenvalues in `[lo, hi)`, sorted, each to within `tol`. Infinite ends clamp to Gershgorin bounds.
pub fn eig_bisect(t: &TridiagonalMatrix, lo: f64, hi: f64, tol: Option<f64>) -> Result<Vec<f64>> {
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::domain(format!("invalid window [{lo}, {hi}]")));
    }
    let tol = tol.unwrap_or_else(|| default_tol(t));
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let mut out: Vec<f64> = blocks(t).iter().flat_map(|b| eig_block(b, lo, hi, tol)).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Smallest eigenvalue of a section.
pub fn lambda_min(t: &TridiagonalMatrix, tol: f64) -> f64 {
    let (lo, hi) = t.gershgorin();
    kth(t, 0, lo - tol, hi + tol, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub window: (f64, f64),
    pub eigenvalues: Vec<f64>,
    pub count_at: Vec<(f64, usize)>,
    pub lambda_min_trace: Vec<(usize, f64)>,
    pub tol: f64,
}

/// Eigenvalues in a window plus counts at the requested points.
pub fn spectral_summary(t: &TridiagonalMatrix, window: (f64, f64), probes: &[f64], tol: Option<f64>) -> Result<SpectralSummary> {
    let tol = tol.unwrap_or_else(|| default_tol(t));
    let eigenvalues = eig_bisect(t, window.0, window.1, Some(tol))?;
    let count_at = probes.iter().map(|l| (*l, counting_function(t, *l).count)).collect();
    Ok(SpectralSummary { window, eigenvalues, count_at, lambda_min_trace: Vec::new(), tol })
}

/// `lambda_min` of the positive-gauge `N`-sections for each requested `N`.
pub fn lambda_min_trace(j: &JacobiOperatorSpec, sizes: &[usize]) -> Result<SpectralSummary> {
    let n_max = sizes.iter().copied().max().ok_or_else(|| Error::domain("no section sizes given"))?;
    if sizes.contains(&0) {
        return Err(Error::domain("section size must be at least 1"));
    }
    let full = j.truncate(n_max)?;
    let tol = default_tol(&full);
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let trace: Vec<(usize, f64)> = sorted.par_iter().map(|n| (*n, lambda_min(&full.leading(*n), tol))).collect();
    for w in trace.windows(2) {
        if w[1].1 > w[0].1 + 4.0 * tol {
            return Err(Error::Integrity(format!(
                "lambda_min increased from {} (N={}) to {} (N={})",
                w[0].1, w[0].0, w[1].1, w[1].0
            )));
        }
    }
    Ok(SpectralSummary { window: (f64::NEG_INFINITY, f64::INFINITY), eigenvalues: Vec::new(), count_at: Vec::new(), lambda_min_trace: trace, tol })
}

/// Growth of `sum_{k<=N} |u_k|^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Growth {
    SquareSummable,
    Polynomial { power: f64 },
    Exponential { rate: f64 },
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: u64,
    /// `ln sum_{k<=n} |u_k|^2`
    pub log_partial_norm: f64,
}

impl Checkpoint {
    pub fn partial_norm(&self) -> f64 {
        self.log_partial_norm.exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub growth: Growth,
    pub checkpoints: Vec<Checkpoint>,
    /// natural-log scale divided out during the run
    pub log_scale: f64,
}

impl GrowthClass {
    pub fn square_summable(&self) -> bool {
        matches!(self.growth, Growth::SquareSummable)
    }
}

/// Increment ratio over doubling checkpoints below which the tail counts as summable.
/// Terms decaying like `n^-s` give `2^(1-s)`, so `n^-2` sits at 0.5 and any `s > 1.33` passes.
pub const SUMMABLE_RATIO: f64 = 0.8;
/// Consecutive checkpoint ratios that must agree.
const PERSIST: usize = 3;
const RESCALE_AT: f64 = 1e100;

/// Solution of `(J - z) u = 0` on rows `2..`, with `u_1, u_2` given.
#[derive(Clone, Debug)]
pub struct Recurrence {
    /// leading entries, unscaled; at most `keep` of them
    pub head: Vec<Complex64>,
    pub class: GrowthClass,
}

fn classify(cps: &[Checkpoint]) -> Growth {
    // log of the increment between consecutive checkpoints
    let incs: Vec<f64> = cps
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].log_partial_norm, w[1].log_partial_norm);
            if b <= a {
                f64::NEG_INFINITY
            } else {
                b + (-(a - b).exp()).ln_1p()
            }
        })
        .collect();
    if incs.len() < PERSIST + 1 {
        return Growth::Indeterminate;
    }
    let ratios: Vec<f64> = incs.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &ratios[ratios.len() - PERSIST..];
    let lim = SUMMABLE_RATIO.ln();
    if tail.iter().all(|r| *r < lim || r.is_nan()) {
        return Growth::SquareSummable;
    }
    let last = *tail.last().unwrap();
    let prev = tail[tail.len() - 2];
    // doubling checkpoints: polynomial growth gives a constant ratio, exponential a growing one
    if last > 6.0 * std::f64::consts::LN_2 && last > prev + 1.0 {
        let (a, b) = (&cps[cps.len() - 2], &cps[cps.len() - 1]);
        return Growth::Exponential { rate: (b.log_partial_norm - a.log_partial_norm) / (b.n - a.n) as f64 };
    }
    if tail.iter().all(|r| *r >= -0.05) {
        let power = tail.iter().sum::<f64>() / tail.len() as f64 / std::f64::consts::LN_2;
        return Growth::Polynomial { power: power.max(0.0) };
    }
    Growth::Indeterminate
}

fn coeffs(j: &JacobiOperatorSpec, n_max: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok((j.diag_values(n_max)?, j.off_values(n_max)?))
}

/// Runs the three-term recurrence from `(u_1, u_2)` up to `n_max` in the operator's own gauge.
pub fn recurrence(j: &JacobiOperatorSpec, z: Complex64, init: (Complex64, Complex64), n_max: usize, keep: usize) -> Result<Recurrence> {
    if n_max < 2 {
        return Err(Error::domain("recurrence needs n_max >= 2"));
    }
    let (a, b) = coeffs(j, n_max)?;
    run(&a, &b, z, init, keep)
}

fn run(a: &[f64], b: &[f64], z: Complex64, init: (Complex64, Complex64), keep: usize) -> Result<Recurrence> {
    let n_max = a.len();
    if let Some(i) = b[..n_max - 1].iter().position(|v| *v == 0.0) {
        return Err(Error::domain(format!("off-diagonal entry {} vanishes", i + 1)));
    }
    let (mut prev, mut cur) = init;
    let mut head = vec![prev, cur];
    let mut log_scale = 0.0f64;
    let mut s = prev.norm_sqr() + cur.norm_sqr();
    let mut checkpoints = Vec::new();
    let mut next_cp = 4u64;
    for n in 2..n_max {
        // row n (1-based): b_{n-1} u_{n-1} + a_n u_n + b_n u_{n+1} = z u_n
        let next = ((z - a[n - 1]) * cur - b[n - 2] * prev) / b[n - 1];
        prev = cur;
        cur = next;
        s += cur.norm_sqr();
        if head.len() < keep {
            head.push(cur * log_scale.exp());
        }
        let m = cur.norm().max(prev.norm());
        if m > RESCALE_AT {
            prev /= m;
            cur /= m;
            s /= m * m;
            log_scale += m.ln();
        }
        let idx = n as u64 + 1;
        if idx == next_cp {
            checkpoints.push(Checkpoint { n: idx, log_partial_norm: s.ln() + 2.0 * log_scale });
            next_cp *= 2;
        }
    }
    if checkpoints.last().map(|c| c.n) != Some(n_max as u64) {
        checkpoints.push(Checkpoint { n: n_max as u64, log_partial_norm: s.ln() + 2.0 * log_scale });
    }
    head.truncate(keep);
    let growth = classify(&checkpoints);
    Ok(Recurrence { head, class: GrowthClass { growth, checkpoints, log_scale } })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeficiencyProbe {
    pub z: Complex64,
    pub n_max: usize,
    /// solutions with `(u_1, u_2) = (1, (z - a_1)/b_1)` and `(0, 1/b_1)`
    pub first: GrowthClass,
    pub second: GrowthClass,
}

impl DeficiencyProbe {
    /// Both solutions look square summable, the signature of deficiency indices `(1, 1)`.
    pub fn limit_circle(&self) -> bool {
        self.first.square_summable() && self.second.square_summable()
    }
}

/// Heuristic l2 test on two independent formal solutions of `J u = z u`.
pub fn deficiency_probe(j: &JacobiOperatorSpec, z: Complex64, n_max: usize) -> Result<DeficiencyProbe> {
    if n_max < 16 {
        return Err(Error::domain("deficiency probe needs n_max >= 16"));
    }
    let (a, b) = coeffs(j, n_max)?;
    let one = Complex64::from(1.0);
    let inits = [(one, (z - a[0]) / b[0]), (Complex64::from(0.0), one / b[0])];
    let mut runs = inits.par_iter().map(|i| run(&a, &b, z, *i, 0)).collect::<Result<Vec<_>>>()?;
    let second = runs.pop().expect("two runs").class;
    let first = runs.pop().expect("two runs").class;
    Ok(DeficiencyProbe { z, n_max, first, second })
}

/// Test vectors for the Rayleigh quotient.
#[derive(Clone, Debug)]
pub enum WitnessFamily {
    /// `h_n = (-1)^n w_n` for `n <= N`
    AlternatingBlock { weight: Seq },
}

/// `(N, <T h, h> / <h, h>)` on positive-gauge `N`-sections.
pub fn rayleigh_witness(j: &JacobiOperatorSpec, family: &WitnessFamily, sizes: &[usize]) -> Result<Vec<(usize, f64)>> {
    let n_max = sizes.iter().copied().max().ok_or_else(|| Error::domain("no section sizes given"))?;
    if sizes.contains(&0) {
        return Err(Error::domain("section size must be at least 1"));
    }
    let full = j.truncate(n_max)?;
    let WitnessFamily::AlternatingBlock { weight } = family;
    let w = weight.eval_range(1, n_max as u64)?;
    let h: Vec<f64> = w.iter().enumerate().map(|(i, v)| if i % 2 == 0 { -v } else { *v }).collect();
    sizes
        .par_iter()
        .map(|n| {
            let t = full.leading(*n);
            let hn = &h[..*n];
            let den: f64 = hn.iter().map(|v| v * v).sum();
            if den == 0.0 {
                return Err(Error::domain(format!("test vector vanishes at N = {n}")));
            }
            Ok((*n, t.quadratic_form(hn) / den))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn free_eigs(n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (1..=n).map(|k| 2.0 * (k as f64 * PI / (n as f64 + 1.0)).cos()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn free_closed_form() {
        for n in [3, 10, 100] {
            let e = eig_bisect(&TridiagonalMatrix::free(n), -2.5, 2.5, None).unwrap();
            let want = free_eigs(n);
            assert_eq!(e.len(), n);
            for (a, b) in e.iter().zip(&want) {
                assert!((a - b).abs() < 1e-10);
            }
        }
        let t = TridiagonalMatrix::new(vec![5.0], vec![]).unwrap();
        assert_eq!(eig_bisect(&t, 0.0, 10.0, None).unwrap(), vec![5.0]);
    }

    #[test]
    fn counts() {
        let t3 = TridiagonalMatrix::free(3);
        let c = counting_function(&t3, 0.0);
        assert_eq!(c.count, 1);
        assert!(c.tie);
        let t = TridiagonalMatrix::free(100);
        assert_eq!(counting_function(&t, 2.5).count, 100);
        assert_eq!(counting_function(&t, -2.5).count, 0);
    }

    #[test]
    fn zero_offdiag_splits() {
        let t = TridiagonalMatrix::new(vec![1.0, 1.0, 3.0, 3.0], vec![1.0, 0.0, 1.0]).unwrap();
        let e = eig_bisect(&t, -10.0, 10.0, Some(1e-12)).unwrap();
        let want = [0.0, 2.0, 2.0, 4.0];
        assert_eq!(e.len(), 4);
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn exponential_and_polynomial_growth() {
        let j = JacobiOperatorSpec::free();
        // z = 3 is outside the spectrum: one solution grows like ((3+sqrt5)/2)^n
        let r = recurrence(&j, Complex64::from(3.0), (1.0.into(), 3.0.into()), 2000, 4).unwrap();
        assert!(matches!(r.class.growth, Growth::Exponential { .. }), "{:?}", r.class.growth);
        // z = 0 gives a bounded oscillating solution: partial norms grow linearly
        let r = recurrence(&j, Complex64::from(0.0), (1.0.into(), 0.0.into()), 4096, 4).unwrap();
        match r.class.growth {
            Growth::Polynomial { power } => assert!((power - 1.0).abs() < 0.05),
            g => panic!("{g:?}"),
        }
        // the decaying solution at z = 3
        let q = (3.0 - 5f64.sqrt()) / 2.0;
        let r = recurrence(&j, Complex64::from(3.0), (q.into(), (q * q).into()), 30, 30).unwrap();
        assert!((r.head[20].re - q.powi(21)).abs() < 1e-8);
    }
}

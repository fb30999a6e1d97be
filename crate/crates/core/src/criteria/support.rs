//! Small helpers shared by the criteria: constant search and for-all-n checks.

use crate::seqmodel::{eventually_nonneg, Outcome, ProbeConfig, ProbeKind, ProbeResult, Seq};

/// Largest index scanned when searching for a witnessing constant.
pub(crate) const WITNESS_HORIZON: u64 = 100_000;

/// Exponent range of the constant grid `2^0 .. 2^30`.
pub(crate) const GRID_MAX_EXP: i32 = 30;

pub(crate) fn scan_end(cfg: &ProbeConfig) -> u64 {
    cfg.horizon.clamp(16, WITNESS_HORIZON)
}

/// Smallest `2^k >= need` with `0 <= k <= 30`.
pub(crate) fn grid_constant(need: f64) -> Option<f64> {
    if need.is_nan() {
        return None;
    }
    (0..=GRID_MAX_EXP).map(|k| 2f64.powi(k)).find(|c| *c >= need)
}

/// `max s(n)` over `from..=scan_end`.
pub(crate) fn numeric_sup(s: &Seq, from: u64, cfg: &ProbeConfig) -> Option<f64> {
    let vals = s.eval_range(from, scan_end(cfg)).ok()?;
    vals.into_iter().try_fold(f64::NEG_INFINITY, |m, v| if v.is_nan() { None } else { Some(m.max(v)) })
}

/// Constant `C` on the grid with `s(n) <= C` for all `n >= 2` up to the scan end,
/// falling back to the last decade when the head is too large.
pub(crate) fn witness_for_upper(s: &Seq, cfg: &ProbeConfig) -> Option<f64> {
    let end = scan_end(cfg);
    numeric_sup(s, 2, cfg)
        .and_then(grid_constant)
        .or_else(|| numeric_sup(s, end / 10, cfg).and_then(grid_constant))
}

/// `s(n) >= -slack` for every `n`: exact sign for large `n` plus a scan of the head.
pub(crate) fn nonneg_everywhere(s: &Seq, slack: f64, cfg: &ProbeConfig) -> (Outcome, ProbeResult) {
    let (tail, probe) = eventually_nonneg(s, cfg);
    if tail != Outcome::Holds {
        return (tail, probe);
    }
    let end = s.finite_horizon().unwrap_or(scan_end(cfg)).min(scan_end(cfg));
    let vals = match s.eval_range(1, end) {
        Ok(v) => v,
        Err(e) => return (Outcome::Inconclusive, ProbeResult::indeterminate(e.to_string())),
    };
    match vals.iter().position(|v| *v < -slack || v.is_nan()) {
        None => (Outcome::Holds, probe),
        Some(i) => (
            Outcome::Fails,
            ProbeResult::numeric(ProbeKind::LimSup { value: vals[i] }, cfg, i as u64 + 1),
        ),
    }
}

//! Lazily evaluated sequence expressions built from declared sequences.

use std::fmt;
use std::ops;
use std::sync::{Arc, OnceLock};

use super::asym::{Asym, PartialSum};
use super::spec::SequenceSpec;
use crate::error::SeqError;

/// Horizon used when a convergent total has to be computed numerically.
const TOTAL_HORIZON: u64 = 100_000;
/// Extra terms summed explicitly before switching to the asymptotic tail.
const TAIL_PAD: u64 = 20_000;

#[derive(Clone)]
pub struct Seq(Arc<Node>);

struct Node {
    expr: Expr,
    asym: OnceLock<Option<Asym>>,
}

enum Expr {
    Spec(SequenceSpec),
    Const(f64),
    Add(Seq, Seq),
    Mul(Seq, Seq),
    Scale(Seq, f64),
    Powf(Seq, f64),
    Abs(Seq),
    /// `s(n + k)`
    Shift(Seq, i64),
    /// `s(n - k)` for `n > k`, `fill` otherwise
    Lag(Seq, u64, f64),
    Min(Seq, Seq),
    /// `sum_{j <= n} s(j)`
    PartialSum(Seq),
    /// `sum_{j >= n} s(j)`
    TailSum(Seq),
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.expr {
            Expr::Spec(s) => write!(f, "{s:?}"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            Expr::Mul(a, b) => write!(f, "({a:?} * {b:?})"),
            Expr::Scale(a, c) => write!(f, "{c}*{a:?}"),
            Expr::Powf(a, s) => write!(f, "{a:?}^{s}"),
            Expr::Abs(a) => write!(f, "|{a:?}|"),
            Expr::Shift(a, k) => write!(f, "{a:?}[n{k:+}]"),
            Expr::Lag(a, k, _) => write!(f, "{a:?}[n-{k}]"),
            Expr::Min(a, b) => write!(f, "min({a:?}, {b:?})"),
            Expr::PartialSum(a) => write!(f, "psum({a:?})"),
            Expr::TailSum(a) => write!(f, "tail({a:?})"),
        }
    }
}

fn neumaier_cumsum(vals: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(vals.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in vals {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

impl Seq {
    fn node(expr: Expr) -> Seq {
        Seq(Arc::new(Node { expr, asym: OnceLock::new() }))
    }

    pub fn spec(s: SequenceSpec) -> Seq {
        Seq::node(Expr::Spec(s))
    }

    pub fn constant(c: f64) -> Seq {
        Seq::node(Expr::Const(c))
    }

    pub fn scale(&self, c: f64) -> Seq {
        Seq::node(Expr::Scale(self.clone(), c))
    }

    pub fn powf(&self, s: f64) -> Seq {
        Seq::node(Expr::Powf(self.clone(), s))
    }

    pub fn sqrt(&self) -> Seq {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Seq {
        self.powf(-1.0)
    }

    pub fn abs(&self) -> Seq {
        Seq::node(Expr::Abs(self.clone()))
    }

    pub fn shift(&self, k: i64) -> Seq {
        Seq::node(Expr::Shift(self.clone(), k))
    }

    pub fn lag(&self, k: u64, fill: f64) -> Seq {
        Seq::node(Expr::Lag(self.clone(), k, fill))
    }

    pub fn min(&self, other: &Seq) -> Seq {
        Seq::node(Expr::Min(self.clone(), other.clone()))
    }

    pub fn partial_sum(&self) -> Seq {
        Seq::node(Expr::PartialSum(self.clone()))
    }

    pub fn tail_sum(&self) -> Seq {
        Seq::node(Expr::TailSum(self.clone()))
    }

    /// Declared spec if this node is a plain leaf.
    pub fn as_spec(&self) -> Option<&SequenceSpec> {
        match &self.0.expr {
            Expr::Spec(s) => Some(s),
            _ => None,
        }
    }

    pub fn eval(&self, n: u64) -> Result<f64, SeqError> {
        Ok(self.eval_range(n, n)?[0])
    }

    /// Values for `n = a..=b`.
    pub fn eval_range(&self, a: u64, b: u64) -> Result<Vec<f64>, SeqError> {
        if a == 0 {
            return Err(SeqError::Domain("sequences are indexed from n = 1".into()));
        }
        if b < a {
            return Ok(Vec::new());
        }
        let len = (b - a + 1) as usize;
        let out = match &self.0.expr {
            Expr::Spec(s) => (a..=b).map(|n| s.eval(n)).collect::<Result<Vec<_>, _>>()?,
            Expr::Const(c) => vec![*c; len],
            Expr::Add(x, y) => {
                let (u, v) = (x.eval_range(a, b)?, y.eval_range(a, b)?);
                u.iter().zip(&v).map(|(p, q)| p + q).collect()
            }
            Expr::Mul(x, y) => {
                let (u, v) = (x.eval_range(a, b)?, y.eval_range(a, b)?);
                u.iter().zip(&v).map(|(p, q)| p * q).collect()
            }
            Expr::Scale(x, c) => x.eval_range(a, b)?.into_iter().map(|v| v * c).collect(),
            Expr::Powf(x, s) => {
                let int = (s - s.round()).abs() < 1e-12;
                let vals: Vec<f64> = x
                    .eval_range(a, b)?
                    .into_iter()
                    .map(|v| if int { v.powi(s.round() as i32) } else { v.powf(*s) })
                    .collect();
                if let Some(i) = vals.iter().position(|v| !v.is_finite()) {
                    return Err(SeqError::Domain(format!("power {s} undefined at n = {}", a + i as u64)));
                }
                vals
            }
            Expr::Abs(x) => x.eval_range(a, b)?.into_iter().map(f64::abs).collect(),
            Expr::Shift(x, k) => {
                let lo = a as i64 + k;
                if lo < 1 {
                    return Err(SeqError::Domain(format!("shift by {k} needs n >= {}", 1 - k)));
                }
                x.eval_range(lo as u64, (b as i64 + k) as u64)?
            }
            Expr::Lag(x, k, fill) => {
                let mut out = Vec::with_capacity(len);
                let first_inner = a.max(k + 1);
                for _ in a..first_inner.min(b + 1) {
                    out.push(*fill);
                }
                if first_inner <= b {
                    out.extend(x.eval_range(first_inner - k, b - k)?);
                }
                out
            }
            Expr::Min(x, y) => {
                let (u, v) = (x.eval_range(a, b)?, y.eval_range(a, b)?);
                u.iter().zip(&v).map(|(p, q)| p.min(*q)).collect()
            }
            Expr::PartialSum(x) => {
                let vals = x.eval_range(1, b)?;
                neumaier_cumsum(&vals)[(a - 1) as usize..].to_vec()
            }
            Expr::TailSum(x) => {
                let end = b + b.max(TAIL_PAD);
                let vals = x.eval_range(a, end)?;
                let mut acc = x.tail_estimate(end + 1)?;
                let mut rev = vec![0.0; vals.len()];
                for i in (0..vals.len()).rev() {
                    acc += vals[i];
                    rev[i] = acc;
                }
                rev.truncate(len);
                rev
            }
        };
        Ok(out)
    }

    /// Approximation of `sum_{j >= n} s(j)` for large `n`.
    fn tail_estimate(&self, n: u64) -> Result<f64, SeqError> {
        if let Some(t) = self.asym().and_then(|a| a.tail_sum()) {
            return Ok(t.eval(n as f64));
        }
        // fall back to a local power-law fit of the terms
        let lo = self.eval(n / 2)?;
        let hi = self.eval(n)?;
        if hi == 0.0 {
            return Ok(0.0);
        }
        if lo == 0.0 || lo.signum() != hi.signum() {
            return Err(SeqError::Domain("tail sum of an oscillating sequence".into()));
        }
        let e = (hi.abs() / lo.abs()).ln() / 2f64.ln();
        if e >= -1.0 {
            return Err(SeqError::Domain("tail sum of a non-summable sequence".into()));
        }
        Ok(hi * n as f64 / (-e - 1.0))
    }

    /// Largest index at which the sequence is defined, if finite.
    pub fn finite_horizon(&self) -> Option<u64> {
        match &self.0.expr {
            Expr::Spec(s) => s.finite_len(),
            Expr::Const(_) => None,
            Expr::Add(x, y) | Expr::Mul(x, y) | Expr::Min(x, y) => {
                match (x.finite_horizon(), y.finite_horizon()) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    (p, None) => p,
                    (None, q) => q,
                }
            }
            Expr::Scale(x, _) | Expr::Powf(x, _) | Expr::Abs(x) | Expr::PartialSum(x) => x.finite_horizon(),
            Expr::Shift(x, k) => x.finite_horizon().map(|h| (h as i64 - k).max(0) as u64),
            Expr::Lag(x, k, _) => x.finite_horizon().map(|h| h + k),
            Expr::TailSum(x) => x.finite_horizon().map(|_| 0),
        }
    }

    /// Asymptotic expansion, when derivable.
    pub fn asym(&self) -> Option<Asym> {
        self.0.asym.get_or_init(|| self.compute_asym()).clone()
    }

    fn compute_asym(&self) -> Option<Asym> {
        match &self.0.expr {
            Expr::Spec(s) => s.asym(),
            Expr::Const(c) => Some(Asym::constant(*c)),
            Expr::Add(x, y) => Some(x.asym()?.add(&y.asym()?)),
            Expr::Mul(x, y) => Some(x.asym()?.mul(&y.asym()?)),
            Expr::Scale(x, c) => Some(x.asym()?.scale(*c)),
            Expr::Powf(x, s) => x.asym()?.powf(*s),
            Expr::Abs(x) => x.asym()?.abs(),
            Expr::Shift(x, k) => Some(x.asym()?.shift(*k)),
            Expr::Lag(x, k, _) => Some(x.asym()?.shift(-(*k as i64))),
            Expr::Min(x, y) => {
                let (p, q) = (x.asym()?, y.asym()?);
                match p.sub(&q).eventual_sign()? {
                    1 => Some(q),
                    _ => Some(p),
                }
            }
            Expr::PartialSum(x) => match x.asym()?.partial_sum()? {
                PartialSum::Diverges(s) => Some(s),
                PartialSum::Converges { tail, total } => {
                    let (total, approx) = match total {
                        Some(t) => (t, false),
                        None => (x.numeric_total().ok()?, true),
                    };
                    let mut s = Asym::constant(total).sub(&tail.shift(1));
                    s.approx |= approx;
                    Some(s)
                }
            },
            Expr::TailSum(x) => x.asym()?.tail_sum(),
        }
    }

    /// `sum_{n >= 1} s(n)` for a summable sequence.
    pub fn numeric_total(&self) -> Result<f64, SeqError> {
        let vals = self.eval_range(1, TOTAL_HORIZON)?;
        let head = *neumaier_cumsum(&vals).last().unwrap();
        Ok(head + self.tail_estimate(TOTAL_HORIZON + 1)?)
    }
}

impl From<SequenceSpec> for Seq {
    fn from(s: SequenceSpec) -> Self {
        Seq::spec(s)
    }
}

impl From<f64> for Seq {
    fn from(c: f64) -> Self {
        Seq::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl ops::$tr<Seq> for Seq {
            type Output = Seq;
            fn $m(self, rhs: Seq) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(&self, &rhs)
            }
        }
        impl ops::$tr<&Seq> for &Seq {
            type Output = Seq;
            fn $m(self, rhs: &Seq) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(self, rhs)
            }
        }
        impl ops::$tr<&Seq> for Seq {
            type Output = Seq;
            fn $m(self, rhs: &Seq) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(&self, rhs)
            }
        }
        impl ops::$tr<Seq> for &Seq {
            type Output = Seq;
            fn $m(self, rhs: Seq) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(self, &rhs)
            }
        }
        impl ops::$tr<f64> for Seq {
            type Output = Seq;
            fn $m(self, rhs: f64) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(&self, &Seq::constant(rhs))
            }
        }
        impl ops::$tr<f64> for &Seq {
            type Output = Seq;
            fn $m(self, rhs: f64) -> Seq {
                let f: fn(&Seq, &Seq) -> Seq = $body;
                f(self, &Seq::constant(rhs))
            }
        }
    };
}

binop!(Add, add, |a, b| Seq::node(Expr::Add(a.clone(), b.clone())));
binop!(Sub, sub, |a, b| Seq::node(Expr::Add(a.clone(), b.scale(-1.0))));
binop!(Mul, mul, |a, b| Seq::node(Expr::Mul(a.clone(), b.clone())));
binop!(Div, div, |a, b| Seq::node(Expr::Mul(a.clone(), b.recip())));

impl ops::Neg for Seq {
    type Output = Seq;
    fn neg(self) -> Seq {
        self.scale(-1.0)
    }
}

impl ops::Neg for &Seq {
    type Output = Seq;
    fn neg(self) -> Seq {
        self.scale(-1.0)
    }
}

//! Truncated asymptotic expansions `sum c * rate^n * n^pow * ln(n)^log + O(rem)`.
//!
//! Terms are kept in strictly decreasing order of growth. A missing remainder
//! means the expansion is exact for all large n (polynomials, geometric terms).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Maximum number of explicit terms carried through arithmetic.
const MAX_TERMS: usize = 10;
const EXP_EPS: f64 = 1e-9;
const CANCEL_REL: f64 = 1e-10;

/// Growth scale `rate^n * n^pow * ln(n)^log`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scale {
    pub rate: f64,
    pub pow: f64,
    pub log: f64,
}

impl Scale {
    pub const ONE: Scale = Scale { rate: 1.0, pow: 0.0, log: 0.0 };

    pub fn power(pow: f64) -> Scale {
        Scale { rate: 1.0, pow, log: 0.0 }
    }

    pub fn geometric(rate: f64) -> Scale {
        Scale { rate, pow: 0.0, log: 0.0 }
    }

    fn same_f(a: f64, b: f64) -> bool {
        (a - b).abs() <= EXP_EPS * (1.0 + a.abs().max(b.abs()))
    }

    fn unit_rate(&self) -> bool {
        Self::same_f(self.rate, 1.0)
    }

    /// Compare growth for large n.
    pub fn cmp_growth(&self, other: &Scale) -> Ordering {
        let lr = self.rate.ln();
        let lo = other.rate.ln();
        if !Self::same_f(lr, lo) {
            return lr.partial_cmp(&lo).unwrap_or(Ordering::Equal);
        }
        if !Self::same_f(self.pow, other.pow) {
            return self.pow.partial_cmp(&other.pow).unwrap_or(Ordering::Equal);
        }
        if !Self::same_f(self.log, other.log) {
            return self.log.partial_cmp(&other.log).unwrap_or(Ordering::Equal);
        }
        Ordering::Equal
    }

    pub fn mul(self, o: Scale) -> Scale {
        Scale { rate: self.rate * o.rate, pow: self.pow + o.pow, log: self.log + o.log }
    }

    pub fn div(self, o: Scale) -> Scale {
        Scale { rate: self.rate / o.rate, pow: self.pow - o.pow, log: self.log - o.log }
    }

    pub fn powf(self, s: f64) -> Scale {
        Scale { rate: self.rate.powf(s), pow: self.pow * s, log: self.log * s }
    }

    /// `sum_n scale(n) < inf`.
    pub fn summable(&self) -> bool {
        if !self.unit_rate() {
            return self.rate < 1.0;
        }
        if !Self::same_f(self.pow, -1.0) {
            return self.pow < -1.0;
        }
        !Self::same_f(self.log, -1.0) && self.log < -1.0
    }

    /// `scale(n) -> 0`.
    pub fn vanishes(&self) -> bool {
        self.cmp_growth(&Scale::ONE) == Ordering::Less
    }

    /// `scale(n) -> inf`.
    pub fn grows(&self) -> bool {
        self.cmp_growth(&Scale::ONE) == Ordering::Greater
    }

    pub fn is_one(&self) -> bool {
        self.cmp_growth(&Scale::ONE) == Ordering::Equal
    }

    pub fn eval(&self, n: f64) -> f64 {
        let mut v = n.powf(self.pow);
        if self.log != 0.0 {
            v *= n.ln().powf(self.log);
        }
        if !self.unit_rate() {
            v *= self.rate.powf(n);
        }
        v
    }

    fn max(a: Scale, b: Scale) -> Scale {
        if a.cmp_growth(&b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub scale: Scale,
}

impl Term {
    pub fn new(coef: f64, scale: Scale) -> Term {
        Term { coef, scale }
    }
}

/// Leading behaviour of an expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lead {
    /// Identically zero for all large n.
    Zero,
    /// Dominant term, strictly larger than everything else.
    Term(Term),
    /// Only a remainder bound is known.
    Bounded(Scale),
}

/// Partial-sum result: the series either diverges with the given expansion
/// or converges, in which case the tail expansion is returned together with
/// the total when it is known in closed form.
#[derive(Clone, Debug)]
pub enum PartialSum {
    Diverges(Asym),
    Converges { tail: Asym, total: Option<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Asym {
    terms: Vec<Term>,
    rem: Option<Scale>,
    /// Some coefficient came from a numerically evaluated constant.
    pub approx: bool,
}

fn binom(s: f64, m: u32) -> f64 {
    let mut c = 1.0;
    for j in 0..m {
        c *= (s - j as f64) / (j as f64 + 1.0);
    }
    c
}

fn is_nonneg_int(x: f64) -> bool {
    x >= 0.0 && (x - x.round()).abs() < 1e-12
}

/// Bernoulli numbers with B1 = +1/2, enough for Faulhaber up to degree 10.
const BERNOULLI: [f64; 11] = [
    1.0,
    0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
];

fn choose(n: u32, k: u32) -> f64 {
    binom(n as f64, k)
}

impl Asym {
    pub fn zero() -> Asym {
        Asym { terms: Vec::new(), rem: None, approx: false }
    }

    pub fn constant(c: f64) -> Asym {
        Asym::exact(vec![Term::new(c, Scale::ONE)])
    }

    pub fn exact(terms: Vec<Term>) -> Asym {
        Asym::build(terms, None, false)
    }

    pub fn with_rem(terms: Vec<Term>, rem: Scale) -> Asym {
        Asym::build(terms, Some(rem), false)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn rem(&self) -> Option<Scale> {
        self.rem
    }

    pub fn is_exact(&self) -> bool {
        self.rem.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.rem.is_none()
    }

    fn build(mut terms: Vec<Term>, rem: Option<Scale>, approx: bool) -> Asym {
        terms.sort_by(|a, b| b.scale.cmp_growth(&a.scale));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        let mut mags: Vec<f64> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coef == 0.0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.scale.cmp_growth(&t.scale) == Ordering::Equal => {
                    last.coef += t.coef;
                    *mags.last_mut().unwrap() += t.coef.abs();
                }
                _ => {
                    merged.push(t);
                    mags.push(t.coef.abs());
                }
            }
        }
        let mut out: Vec<Term> = merged
            .into_iter()
            .zip(mags)
            .filter(|(t, m)| t.coef.abs() > CANCEL_REL * m)
            .map(|(t, _)| t)
            .collect();
        let mut rem = rem;
        if let Some(r) = rem {
            out.retain(|t| t.scale.cmp_growth(&r) == Ordering::Greater);
        }
        if out.len() > MAX_TERMS {
            let dropped = out[MAX_TERMS].scale;
            rem = Some(match rem {
                Some(r) => Scale::max(r, dropped),
                None => dropped,
            });
            out.truncate(MAX_TERMS);
        }
        Asym { terms: out, rem, approx }
    }

    pub fn lead(&self) -> Lead {
        match (self.terms.first(), self.rem) {
            (Some(t), _) => Lead::Term(*t),
            (None, None) => Lead::Zero,
            (None, Some(r)) => Lead::Bounded(r),
        }
    }

    /// Scale of the dominant part (term or remainder).
    pub fn top_scale(&self) -> Option<Scale> {
        match self.lead() {
            Lead::Term(t) => Some(t.scale),
            Lead::Bounded(s) => Some(s),
            Lead::Zero => None,
        }
    }

    /// Eventual sign: +1, -1, 0 for identically zero, None when undecided.
    pub fn eventual_sign(&self) -> Option<i8> {
        match self.lead() {
            Lead::Zero => Some(0),
            Lead::Term(t) => Some(if t.coef > 0.0 { 1 } else { -1 }),
            Lead::Bounded(_) => None,
        }
    }

    pub fn eval(&self, n: f64) -> f64 {
        self.terms.iter().map(|t| t.coef * t.scale.eval(n)).sum()
    }

    pub fn neg(&self) -> Asym {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> Asym {
        if c == 0.0 {
            return Asym::zero();
        }
        let terms = self.terms.iter().map(|t| Term::new(t.coef * c, t.scale)).collect();
        Asym::build(terms, self.rem, self.approx)
    }

    pub fn add(&self, o: &Asym) -> Asym {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&o.terms);
        let rem = match (self.rem, o.rem) {
            (Some(a), Some(b)) => Some(Scale::max(a, b)),
            (a, None) => a,
            (None, b) => b,
        };
        Asym::build(terms, rem, self.approx || o.approx)
    }

    pub fn sub(&self, o: &Asym) -> Asym {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Asym) -> Asym {
        if self.is_zero() || o.is_zero() {
            return Asym::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                terms.push(Term::new(a.coef * b.coef, a.scale.mul(b.scale)));
            }
        }
        let mut rem: Option<Scale> = None;
        let mut bump = |s: Scale| {
            rem = Some(match rem {
                Some(r) => Scale::max(r, s),
                None => s,
            })
        };
        if let Some(rb) = o.rem {
            bump(self.top_scale().unwrap().mul(rb));
        }
        if let Some(ra) = self.rem {
            bump(o.top_scale().unwrap().mul(ra));
        }
        Asym::build(terms, rem, self.approx || o.approx)
    }

    /// `self^s`; needs a positive leading coefficient unless `s` is an integer.
    pub fn powf(&self, s: f64) -> Option<Asym> {
        if s == 0.0 {
            return Some(Asym::constant(1.0));
        }
        if s == 1.0 {
            return Some(self.clone());
        }
        let lead = match self.lead() {
            Lead::Zero => return if s > 0.0 { Some(Asym::zero()) } else { None },
            Lead::Bounded(r) => {
                return if s > 0.0 {
                    Some(Asym::build(Vec::new(), Some(r.powf(s)), self.approx))
                } else {
                    None
                }
            }
            Lead::Term(t) => t,
        };
        let int_s = (s - s.round()).abs() < 1e-12;
        if lead.coef < 0.0 && !int_s {
            return None;
        }
        let lead_val = if int_s { lead.coef.powi(s.round() as i32) } else { lead.coef.powf(s) };
        let lead_pow = Term::new(lead_val, lead.scale.powf(s));
        let u_terms: Vec<Term> = self.terms[1..]
            .iter()
            .map(|t| Term::new(t.coef / lead.coef, t.scale.div(lead.scale)))
            .collect();
        let u = Asym::build(u_terms, self.rem.map(|r| r.div(lead.scale)), self.approx);
        if u.is_zero() {
            return Some(Asym::build(vec![lead_pow], None, self.approx));
        }
        let mut acc = Asym::constant(1.0);
        let mut upow = Asym::constant(1.0);
        let mut terminated = false;
        let u_top = u.top_scale().unwrap();
        let mut m = 0u32;
        while m < MAX_TERMS as u32 {
            m += 1;
            let c = binom(s, m);
            if c == 0.0 {
                terminated = true;
                break;
            }
            upow = upow.mul(&u);
            acc = acc.add(&upow.scale(c));
        }
        if !terminated {
            let cut = u_top.powf(m as f64 + 1.0);
            acc = acc.add(&Asym::build(Vec::new(), Some(cut), false));
        }
        Some(acc.mul(&Asym::build(vec![lead_pow], None, false)))
    }

    pub fn recip(&self) -> Option<Asym> {
        self.powf(-1.0)
    }

    pub fn abs(&self) -> Option<Asym> {
        match self.eventual_sign() {
            Some(-1) => Some(self.neg()),
            Some(_) => Some(self.clone()),
            None => Some(self.clone()),
        }
    }

    /// Expansion of `n -> a(n + k)`.
    pub fn shift(&self, k: i64) -> Asym {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let kf = k as f64;
        let mut terms = Vec::new();
        let mut rem = self.rem;
        let bump = |s: Scale, rem: &mut Option<Scale>| {
            *rem = Some(match *rem {
                Some(r) => Scale::max(r, s),
                None => s,
            })
        };
        for t in &self.terms {
            let c = t.coef * t.scale.rate.powf(kf);
            let sc = t.scale;
            if sc.log == 0.0 {
                let exact = is_nonneg_int(sc.pow);
                let upto = if exact { sc.pow.round() as u32 } else { MAX_TERMS as u32 };
                for m in 0..=upto {
                    let b = binom(sc.pow, m);
                    if b == 0.0 {
                        continue;
                    }
                    terms.push(Term::new(
                        c * b * kf.powi(m as i32),
                        Scale { pow: sc.pow - m as f64, ..sc },
                    ));
                }
                if !exact {
                    bump(Scale { pow: sc.pow - upto as f64 - 1.0, ..sc }, &mut rem);
                }
            } else {
                terms.push(Term::new(c, sc));
                terms.push(Term::new(c * sc.pow * kf, Scale { pow: sc.pow - 1.0, ..sc }));
                bump(Scale { pow: sc.pow - 1.0, log: sc.log - 1.0, ..sc }, &mut rem);
            }
        }
        Asym::build(terms, rem, self.approx)
    }

    /// Expansion of `sum_{j<=n} a(j)`.
    pub fn partial_sum(&self) -> Option<PartialSum> {
        if self.is_zero() {
            return Some(PartialSum::Converges { tail: Asym::zero(), total: Some(0.0) });
        }
        let top = self.top_scale().unwrap();
        if top.summable() {
            let tail = self.tail_sum()?;
            let total = if self.rem.is_none() {
                self.terms
                    .iter()
                    .map(|t| closed_geometric_total(t))
                    .try_fold(0.0, |acc, x| x.map(|v| acc + v))
            } else {
                None
            };
            return Some(PartialSum::Converges { tail, total });
        }
        let mut terms = Vec::new();
        let mut rem: Option<Scale> = None;
        let bump = |s: Scale, rem: &mut Option<Scale>| {
            *rem = Some(match *rem {
                Some(r) => Scale::max(r, s),
                None => s,
            })
        };
        for t in &self.terms {
            let sc = t.scale;
            let c = t.coef;
            if !sc.unit_rate() {
                if sc.pow == 0.0 && sc.log == 0.0 {
                    let q = sc.rate;
                    // sum_{j<=n} q^j = q (q^n - 1) / (q - 1)
                    terms.push(Term::new(c * q / (q - 1.0), sc));
                    terms.push(Term::new(-c * q / (q - 1.0), Scale::ONE));
                } else if sc.rate > 1.0 {
                    let q = sc.rate;
                    terms.push(Term::new(c * q / (q - 1.0), sc));
                    bump(Scale { pow: sc.pow - 1.0, ..sc }, &mut rem);
                } else {
                    bump(Scale::ONE, &mut rem);
                }
                continue;
            }
            if sc.log == 0.0 && is_nonneg_int(sc.pow) && sc.pow <= 10.0 {
                let p = sc.pow.round() as u32;
                for k in 0..=p {
                    let coef = c * choose(p + 1, k) * BERNOULLI[k as usize] / (p as f64 + 1.0);
                    terms.push(Term::new(coef, Scale::power((p + 1 - k) as f64)));
                }
                continue;
            }
            if Scale::same_f(sc.pow, -1.0) {
                if Scale::same_f(sc.log, -1.0) {
                    return None;
                }
                if sc.log > -1.0 {
                    terms.push(Term::new(
                        c / (sc.log + 1.0),
                        Scale { rate: 1.0, pow: 0.0, log: sc.log + 1.0 },
                    ));
                }
                bump(Scale::ONE, &mut rem);
                continue;
            }
            if sc.pow > -1.0 {
                terms.push(Term::new(c / (sc.pow + 1.0), Scale { pow: sc.pow + 1.0, ..sc }));
                if sc.log == 0.0 {
                    terms.push(Term::new(c / 2.0, sc));
                    bump(Scale { pow: sc.pow - 1.0, ..sc }, &mut rem);
                } else {
                    bump(Scale { pow: sc.pow + 1.0, log: sc.log - 1.0, ..sc }, &mut rem);
                }
                bump(Scale::ONE, &mut rem);
            } else {
                bump(Scale::ONE, &mut rem);
            }
        }
        if let Some(r) = self.rem {
            if r.summable() {
                bump(Scale::ONE, &mut rem);
            } else if !r.unit_rate() {
                bump(r, &mut rem);
            } else if Scale::same_f(r.pow, -1.0) {
                if Scale::same_f(r.log, -1.0) {
                    return None;
                }
                bump(Scale { rate: 1.0, pow: 0.0, log: r.log + 1.0 }, &mut rem);
            } else {
                bump(Scale { pow: r.pow + 1.0, ..r }, &mut rem);
            }
        }
        Some(PartialSum::Diverges(Asym::build(terms, rem, self.approx)))
    }

    /// Expansion of `sum_{j>=n} a(j)`; requires a summable expansion.
    pub fn tail_sum(&self) -> Option<Asym> {
        if self.is_zero() {
            return Some(Asym::zero());
        }
        if !self.top_scale().unwrap().summable() {
            return None;
        }
        let mut terms = Vec::new();
        let mut rem: Option<Scale> = None;
        let bump = |s: Scale, rem: &mut Option<Scale>| {
            *rem = Some(match *rem {
                Some(r) => Scale::max(r, s),
                None => s,
            })
        };
        for t in &self.terms {
            let sc = t.scale;
            let c = t.coef;
            if !sc.unit_rate() {
                let q = sc.rate;
                terms.push(Term::new(c / (1.0 - q), sc));
                if !(sc.pow == 0.0 && sc.log == 0.0) {
                    bump(Scale { pow: sc.pow - 1.0, ..sc }, &mut rem);
                }
                continue;
            }
            let e = sc.pow;
            if Scale::same_f(e, -1.0) {
                terms.push(Term::new(
                    c / (-sc.log - 1.0),
                    Scale { rate: 1.0, pow: 0.0, log: sc.log + 1.0 },
                ));
                bump(sc, &mut rem);
                continue;
            }
            if sc.log == 0.0 {
                // Euler-Maclaurin: integral + f/2 - f'/12 + f'''/720
                terms.push(Term::new(c / (-e - 1.0), Scale::power(e + 1.0)));
                terms.push(Term::new(c / 2.0, Scale::power(e)));
                terms.push(Term::new(-c * e / 12.0, Scale::power(e - 1.0)));
                terms.push(Term::new(c * e * (e - 1.0) * (e - 2.0) / 720.0, Scale::power(e - 3.0)));
                bump(Scale::power(e - 5.0), &mut rem);
            } else {
                terms.push(Term::new(c / (-e - 1.0), Scale { pow: e + 1.0, ..sc }));
                bump(Scale { pow: e + 1.0, log: sc.log - 1.0, ..sc }, &mut rem);
            }
        }
        if let Some(r) = self.rem {
            if !r.unit_rate() {
                bump(r, &mut rem);
            } else if Scale::same_f(r.pow, -1.0) {
                bump(Scale { rate: 1.0, pow: 0.0, log: r.log + 1.0 }, &mut rem);
            } else {
                bump(Scale { pow: r.pow + 1.0, ..r }, &mut rem);
            }
        }
        Some(Asym::build(terms, rem, self.approx))
    }
}

fn closed_geometric_total(t: &Term) -> Option<f64> {
    let sc = t.scale;
    if !sc.unit_rate() && sc.rate < 1.0 && sc.pow == 0.0 && sc.log == 0.0 {
        Some(t.coef * sc.rate / (1.0 - sc.rate))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(c: f64, p: f64) -> Term {
        Term::new(c, Scale::power(p))
    }

    #[test]
    fn exact_cancellation_is_zero() {
        // -2n - 1 + n + (n + 1)
        let a = Asym::exact(vec![pw(-2.0, 1.0), pw(-1.0, 0.0)]);
        let inv_d = Asym::exact(vec![pw(1.0, 1.0)]);
        let s = a.add(&inv_d).add(&inv_d.shift(1));
        assert!(s.is_zero());
    }

    #[test]
    fn reciprocal_shift_expansion() {
        // 1/(n+1) = n^-1 - n^-2 + n^-3 - ...
        let a = Asym::exact(vec![pw(1.0, -1.0)]).shift(1);
        let t = a.terms();
        assert!((t[0].coef - 1.0).abs() < 1e-15 && (t[1].coef + 1.0).abs() < 1e-15);
        assert!((t[2].coef - 1.0).abs() < 1e-15);
        assert!(a.rem().is_some());
    }

    #[test]
    fn sqrt_of_series() {
        // sqrt(n^2 + 2n + 1) = n + 1
        let a = Asym::exact(vec![pw(1.0, 2.0), pw(2.0, 1.0), pw(1.0, 0.0)]);
        let r = a.powf(0.5).unwrap();
        assert!((r.terms()[0].coef - 1.0).abs() < 1e-12);
        assert!((r.terms()[1].coef - 1.0).abs() < 1e-12);
        assert!(r.terms().iter().skip(2).all(|t| t.coef.abs() < 1e-9));
    }

    #[test]
    fn faulhaber_sum_of_ones() {
        match Asym::constant(1.0).partial_sum().unwrap() {
            PartialSum::Diverges(s) => {
                assert!(s.is_exact());
                assert_eq!(s.terms().len(), 1);
                assert_eq!(s.terms()[0].scale.pow, 1.0);
            }
            _ => panic!("diverges"),
        }
    }

    #[test]
    fn geometric_partial_sum_exact() {
        let a = Asym::exact(vec![Term::new(1.0, Scale::geometric(0.5))]);
        match a.partial_sum().unwrap() {
            PartialSum::Converges { total, tail } => {
                assert_eq!(total, Some(1.0));
                assert!((tail.eval(3.0) - 0.25).abs() < 1e-15);
            }
            _ => panic!("converges"),
        }
    }

    #[test]
    fn tail_of_inverse_square() {
        let a = Asym::exact(vec![pw(1.0, -2.0)]);
        let t = a.tail_sum().unwrap();
        let n = 50.0;
        let direct: f64 = (50..2_000_000).map(|j| 1.0 / (j as f64 * j as f64)).sum::<f64>() + 1.0 / 2_000_000.0;
        assert!((t.eval(n) - direct).abs() < 1e-10);
    }

    #[test]
    fn harmonic_partial_sum_is_log() {
        let a = Asym::exact(vec![pw(1.0, -1.0)]);
        match a.partial_sum().unwrap() {
            PartialSum::Diverges(s) => {
                let lead = s.terms()[0];
                assert_eq!(lead.scale.log, 1.0);
                assert_eq!(lead.scale.pow, 0.0);
            }
            _ => panic!(),
        }
    }
}

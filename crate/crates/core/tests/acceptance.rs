//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::Instant;

use num_complex::Complex64;
use pointspec_core::criteria::{analyze, deltaprime_discrete, Claim, InteractionModel, Potential, Statement};
use pointspec_core::golden;
use pointspec_core::jacobi::{
    build_delta_b1, build_delta_b2, build_deltaprime_b1, build_deltaprime_b2, build_step_potential, factorization_residual,
    Entries, Factorization, JacobiOperatorSpec, TridiagonalMatrix,
};
use pointspec_core::seqmodel::{series_probe, Partition, ProbeConfig, ProbeKind, Seq, SequenceSpec};
use pointspec_core::spectral::{counting_function, deficiency_probe, eig_bisect, rayleigh_witness, recurrence, WitnessFamily};
use pointspec_core::string::{build_j_ml, kac_krein, string_factorization_residual, string_from_deltaprime, StringData};
use pointspec_core::weyl::{derivative_at_zero, solve_a0, triplet_boundedness_scan, weyl, Family, Mat2, TripletKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gaps(s: SequenceSpec) -> Partition {
    Partition::gaps(s).expect("valid gaps")
}

fn knots(s: SequenceSpec) -> Partition {
    Partition::knots(s).expect("valid knots")
}

fn golden_suite() -> Check {
    let start = Instant::now();
    let cfg = ProbeConfig::default();
    let mut cases = 0;
    for e in golden::registry() {
        let out = golden::check(&e, &cfg).map_err(e2s)?;
        for c in &out.cases {
            ensure(c.passed, format!("{} / {}: {}", e.id, c.label, c.mismatches.join("; ")))?;
            cases += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("{cases} cases match in {secs:.1} s"))
}

fn factorizations() -> Check {
    const N: usize = 50;
    const TOL: f64 = 1e-12;
    let xs = [
        gaps(SequenceSpec::power(1.0, -1.0)),
        gaps(SequenceSpec::constant(1.0)),
        knots(SequenceSpec::power(1.0, 0.5)),
        gaps(SequenceSpec::power(2.0, -0.5)),
        gaps(SequenceSpec::power_sum(&[(1.0, 0.0), (0.5, -1.0)])),
    ];
    let strengths = [
        SequenceSpec::affine(-1.0, -2.0),
        SequenceSpec::constant(-5.0),
        SequenceSpec::power(-1.0, -0.25),
        SequenceSpec::power(1.0, 2.0),
        SequenceSpec::power_sum(&[(3.0, 0.0), (-1.0, -1.0)]),
    ];
    let mut worst = 0.0f64;
    for kind in [Factorization::DeltaB1, Factorization::DeltaB2, Factorization::DeltaPrimeB1] {
        for (x, s) in xs.iter().zip(&strengths) {
            let r = factorization_residual(kind, x, &Seq::spec(s.clone()), N).map_err(e2s)?;
            ensure(r < TOL, format!("{kind:?} on {:?}: residual {r:e}", x.spec()))?;
            worst = worst.max(r);
        }
    }
    let strings = [
        (SequenceSpec::constant(1.0), SequenceSpec::constant(1.0)),
        (SequenceSpec::power(1.0, -2.0), SequenceSpec::power(1.0, -1.0)),
        (SequenceSpec::geometric(1.0, 0.5), SequenceSpec::geometric(1.0, 0.5)),
        (SequenceSpec::power(2.0, 0.5), SequenceSpec::power(1.0, -1.5)),
        (SequenceSpec::affine(1.0, 1.0), SequenceSpec::power(0.5, -0.5)),
    ];
    for (m, l) in strings {
        let s = StringData::from_seqs(Seq::spec(m), Seq::spec(l)).map_err(e2s)?;
        let r = string_factorization_residual(&s, N).map_err(e2s)?;
        ensure(r < TOL, format!("string residual {r:e}"))?;
        worst = worst.max(r);
    }
    Ok(format!("4 identities x 5 parameter sets, worst residual {worst:.1e}"))
}

fn interlaces(small: &[f64], big: &[f64], tol: f64) -> bool {
    small.iter().enumerate().all(|(k, l)| big[k] <= l + tol && *l <= big[k + 1] + tol)
}

fn eigensolver() -> Check {
    for n in [3usize, 10, 100] {
        let t = TridiagonalMatrix::free(n);
        let got = eig_bisect(&t, f64::NEG_INFINITY, f64::INFINITY, None).map_err(e2s)?;
        ensure(got.len() == n, format!("free N={n}: {} eigenvalues", got.len()))?;
        for (k, v) in got.iter().enumerate() {
            let exact = 2.0 * (std::f64::consts::PI * (n - k) as f64 / (n + 1) as f64).cos();
            ensure((v - exact).abs() < 1e-10, format!("free N={n}, k={k}: {v} vs {exact}"))?;
        }
    }
    let h = gaps(SequenceSpec::power(1.0, -1.0));
    let root = knots(SequenceSpec::power(1.0, 0.5));
    let mats: Vec<(&str, JacobiOperatorSpec)> = vec![
        ("free", JacobiOperatorSpec::free()),
        ("delta_b2", build_delta_b2(&h, &Seq::spec(SequenceSpec::affine(-1.0, -2.0))).map_err(e2s)?),
        ("delta_b1", build_delta_b1(&root, &Seq::spec(SequenceSpec::power(-1.0, -0.25))).map_err(e2s)?),
        ("deltaprime_b1", build_deltaprime_b1(&h, &Seq::constant(1.0)).map_err(e2s)?),
        ("deltaprime_b2", build_deltaprime_b2(&root, &Seq::spec(SequenceSpec::power(-1.0, -2.0))).map_err(e2s)?),
        ("step_potential", build_step_potential(solve_a0(), &Seq::spec(SequenceSpec::affine(-2.0, -4.0))).map_err(e2s)?),
        ("string", build_j_ml(&string_from_deltaprime(&h, &Seq::constant(1.0)).map_err(e2s)?)),
    ];
    let mut checks = 0;
    for (name, j) in &mats {
        let full = j.truncate(51).map_err(e2s)?;
        let tol = 1e-9 * full.inf_norm().max(1.0);
        let mut prev = eig_bisect(&full.leading(1), f64::NEG_INFINITY, f64::INFINITY, None).map_err(e2s)?;
        for n in 2..=51 {
            let t = full.leading(n);
            let cur = eig_bisect(&t, f64::NEG_INFINITY, f64::INFINITY, None).map_err(e2s)?;
            ensure(interlacing_ok(&prev, &cur, tol), format!("{name}: N={} does not interlace N={n}", n - 1))?;
            for probe in [cur[0] - 1.0, cur[n / 2], 0.0, cur[n - 1] + 1.0] {
                let c = counting_function(&t, probe).count;
                let w = eig_bisect(&t, f64::NEG_INFINITY, probe, None).map_err(e2s)?.len();
                ensure(c == w, format!("{name} N={n}: count {c} vs window {w} at {probe}"))?;
            }
            prev = cur;
            checks += 1;
        }
    }
    Ok(format!("free spectra exact to 1e-10; {checks} interlacing/count checks on {} matrices", mats.len()))
}

fn interlacing_ok(small: &[f64], big: &[f64], tol: f64) -> bool {
    big.len() == small.len() + 1 && interlaces(small, big, tol)
}

fn mat_close(m: &Mat2, want: [[f64; 2]; 2], tol: f64) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            worst = worst.max((m.get(i, j) - Complex64::from(*w)).norm());
        }
    }
    ensure(worst < tol, format!("off by {worst:e}"))?;
    Ok(worst)
}

fn weyl_constants() -> Check {
    let delta = [[1.0 / 3.0, -1.0 / 6.0], [-1.0 / 6.0, 1.0 / 3.0]];
    let mixed = [[1.0, 0.5], [0.5, 1.0 / 3.0]];
    let mut worst = 0.0f64;
    for d in [1.0, 0.1, 1e-3] {
        for (family, kind, want) in [(Family::Delta, TripletKind::DeltaRegularized, delta), (Family::Mixed, TripletKind::MixedRegularized, mixed)] {
            let m0 = weyl(kind, family, d, Complex64::from(0.0)).map_err(e2s)?.value;
            ensure(m0.norm() < 1e-10, format!("{kind:?}, d={d}: |M(0)| = {:e}", m0.norm()))?;
            let dm = derivative_at_zero(family, d, 1e-4).map_err(e2s)?;
            worst = worst.max(mat_close(&dm, want, 1e-6).map_err(|e| format!("{kind:?}, d={d}: M'(0) {e}"))?);
        }
    }
    Ok(format!("M(0) = 0 and M'(0) within {worst:.1e} for d in {{1, 0.1, 1e-3}}"))
}

fn triplet_scan() -> Check {
    let start = Instant::now();
    let x = gaps(SequenceSpec::power(1.0, -1.0));
    let n = 10_000;
    let reg = triplet_boundedness_scan(&x, TripletKind::DeltaRegularized, Family::Delta, n).map_err(e2s)?;
    ensure(reg.norm.bounded && reg.inv_im_norm.bounded, format!("regularized scan not bounded: {reg:?}"))?;
    let plateau = reg.inv_im_norm.tail_value;
    ensure((plateau - 6.0).abs() <= 0.6, format!("(Im M(i))^-1 plateau {plateau}"))?;
    let raw = triplet_boundedness_scan(&x, TripletKind::DeltaRaw, Family::Delta, n).map_err(e2s)?;
    let slope = raw.norm.exponent;
    ensure((slope - 1.0).abs() <= 0.1, format!("raw delta growth exponent {slope}"))?;
    let mixed = triplet_boundedness_scan(&x, TripletKind::MixedRaw, Family::Mixed, n).map_err(e2s)?;
    ensure(!mixed.inv_im_norm.bounded, format!("mixed raw (Im M(i))^-1 bounded: {:?}", mixed.inv_im_norm))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("took {secs:.1} s"))?;
    Ok(format!(
        "regularized plateau {plateau:.4}; raw exponent {slope:.3}; mixed raw exponent {:.3}; {secs:.1} s",
        mixed.inv_im_norm.exponent
    ))
}

fn deficiency_consistency() -> Check {
    let g = gaps(SequenceSpec::geometric(1.0, 0.5));
    let beta = -Seq::spec(SequenceSpec::geometric(1.0, 0.5));
    let j = build_deltaprime_b1(&g, &beta).map_err(e2s)?;
    let probe = deficiency_probe(&j, Complex64::from(0.0), 400).map_err(e2s)?;
    ensure(probe.first.square_summable() && probe.second.square_summable(), format!("{:?} / {:?}", probe.first.growth, probe.second.growth))?;
    let rows = 60;
    let d: Vec<f64> = (1..=rows / 2).map(|n| 0.5f64.powi(n as i32)).collect();
    // beta_k + d_k = 0, so q_{2n-1} = 0 and q_{2n} = d_n^{3/2}
    let p_exact: Vec<f64> = d.iter().flat_map(|v| [v.sqrt(), -v.sqrt()]).collect();
    let q_exact: Vec<f64> = d.iter().flat_map(|v| [0.0, v.powf(1.5)]).collect();
    let mut worst = 0.0f64;
    for exact in [&p_exact, &q_exact] {
        let r = recurrence(&j, Complex64::from(0.0), (exact[0].into(), exact[1].into()), rows, rows).map_err(e2s)?;
        for (k, (u, e)) in r.head.iter().zip(exact.iter()).enumerate() {
            let err = (u - e).norm();
            ensure(err < 1e-12, format!("entry {}: {u} vs {e}", k + 1))?;
            worst = worst.max(err);
        }
    }
    let h = gaps(SequenceSpec::power(1.0, -1.0));
    let j = build_deltaprime_b1(&h, &Seq::constant(1.0)).map_err(e2s)?;
    let probe = deficiency_probe(&j, Complex64::from(0.0), 100_000).map_err(e2s)?;
    ensure(!probe.limit_circle(), "d = 1/n, beta = 1: both solutions look square summable")?;
    Ok(format!("closed forms matched to {worst:.1e}; self-adjoint fixture has a non-l2 solution"))
}

fn semibounded_witness() -> Check {
    let x = knots(SequenceSpec::power(1.0, 0.5));
    let sizes = [1_000usize, 3_000, 10_000, 30_000, 100_000];
    let family = WitnessFamily::AlternatingBlock { weight: x.r().clone() };
    let j = build_delta_b2(&x, &Seq::spec(SequenceSpec::power(-1.0, -0.25))).map_err(e2s)?;
    let q = rayleigh_witness(&j, &family, &sizes).map_err(e2s)?;
    let drop = q.iter().find(|(_, v)| *v < -5.0);
    let (n_drop, _) = drop.ok_or_else(|| format!("quotient never below -5: {q:?}"))?;
    let ratios: Vec<f64> = q.iter().map(|(n, v)| v / (-(*n as f64).powf(0.25) / (*n as f64).ln())).collect();
    let tail = &ratios[2..];
    ensure(tail.iter().all(|r| (0.1..=10.0).contains(r)), format!("ratios {ratios:?}"))?;
    let j0 = build_delta_b2(&x, &Seq::constant(0.0)).map_err(e2s)?;
    let q0 = rayleigh_witness(&j0, &family, &sizes).map_err(e2s)?;
    ensure(q0.iter().all(|(_, v)| *v >= -1e-10), format!("alpha = 0 quotient {q0:?}"))?;
    Ok(format!(
        "below -5 at N = {n_drop}; ratio over N >= 1e4: {:.2}..{:.2}; alpha = 0 min {:.3}",
        tail.iter().cloned().fold(f64::INFINITY, f64::min),
        tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        q0.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    ))
}

/// Decided discreteness of a verdict: `Some(true)` for Discrete, `Some(false)` for NotDiscrete.
fn decided(v: &pointspec_core::criteria::Verdict) -> Option<bool> {
    let e = v.established();
    if e.contains(&Claim::Discrete) {
        Some(true)
    } else if e.contains(&Claim::NotDiscrete) {
        Some(false)
    } else {
        None
    }
}

fn kac_krein_agreement() -> Check {
    let cfg = ProbeConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut discrete, mut not) = (0, 0);
    for i in 0..20 {
        let p: f64 = -rng.gen_range(0.0..2.0);
        let q: f64 = rng.gen_range(-3.0..1.0);
        let c: f64 = rng.gen_range(0.1..3.0);
        let (p, q, c) = ((p * 8.0).round() / 8.0, (q * 8.0).round() / 8.0, (c * 8.0).round() / 8.0);
        let x = gaps(SequenceSpec::power(1.0, p));
        let beta = SequenceSpec::power(c, q);
        let m = InteractionModel::delta_prime(x.clone(), beta.clone()).map_err(e2s)?;
        let dp = deltaprime_discrete(&m, &cfg).map_err(e2s)?;
        let s = string_from_deltaprime(&x, m.strengths()).map_err(e2s)?;
        let (kk, _) = kac_krein(&s, &cfg);
        let (a, b) = (decided(&dp), decided(&kk));
        ensure(
            a.is_some() && a == b,
            format!("model {i} (d = n^{p}, beta = {c} n^{q}): deltaprime_discrete {:?} / {a:?}, kac_krein {:?} / {b:?}", dp.outcome, kk.outcome),
        )?;
        if a == Some(true) {
            discrete += 1;
        } else {
            not += 1;
        }
    }
    Ok(format!("20 models agree ({discrete} discrete, {not} not discrete)"))
}

fn potential_flip() -> Check {
    let a0 = solve_a0();
    let f = |a: f64| a / a.tanh() - 2.0;
    let (mut lo, mut hi) = (1.0f64, 3.0f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    ensure((a0 - 0.5 * (lo + hi)).abs() < 1e-12, format!("a0 = {a0} vs bisection {}", 0.5 * (lo + hi)))?;
    ensure((a0 - 1.915).abs() < 1e-3, format!("a0 = {a0}"))?;
    let alpha = Seq::spec(SequenceSpec::affine(-2.0, -4.0));
    let j = build_step_potential(a0, &alpha).map_err(e2s)?;
    let diag = j.diag_values(1_000).map_err(e2s)?;
    let worst = diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    ensure(worst < 1e-10, format!("diagonal reaches {worst:e}"))?;
    let b: Vec<f64> = j.off_values(10_001).map_err(e2s)?.iter().map(|v| v.abs()).collect();
    for n in 1..10_000 {
        ensure(b[n - 1] * b[n + 1] <= b[n] * b[n] * (1.0 + 1e-12), format!("log-concavity fails at n = {}", n + 1))?;
    }
    let Entries::Simple { off, .. } = &j.entries else {
        return Err("step potential matrix is not simple".into());
    };
    let recip = series_probe(&(off * off).sqrt().recip(), &ProbeConfig::default());
    ensure(matches!(recip.kind, ProbeKind::Converges { .. }), format!("sum 1/b_n: {:?}", recip.kind))?;
    let x = gaps(SequenceSpec::power(1.0, -1.0));
    let base = InteractionModel::delta(x, SequenceSpec::affine(-2.0, -4.0)).map_err(e2s)?;
    let cfg = ProbeConfig::default();
    let plain = analyze(&base, &cfg).map_err(e2s)?;
    ensure(plain.conclusions.has(Statement::SelfAdjoint), "no potential: SelfAdjoint not concluded")?;
    let flipped = analyze(&base.with_potential(Potential::StepPotential { a: a0 }).map_err(e2s)?, &cfg).map_err(e2s)?;
    ensure(flipped.conclusions.has(Statement::DeficiencyOne), "with q_a0: DeficiencyOne not concluded")?;
    Ok(format!("a0 = {a0:.15}; |diag| <= {worst:.1e}; Berezanskii hypotheses hold; flip SelfAdjoint -> DeficiencyOne"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("golden example suite", golden_suite),
        ("factorization identities", factorizations),
        ("eigensolver oracle", eigensolver),
        ("Weyl constants", weyl_constants),
        ("triplet boundedness", triplet_scan),
        ("deficiency probe consistency", deficiency_consistency),
        ("non-semiboundedness witness", semibounded_witness),
        ("Kac-Krein agreement", kac_krein_agreement),
        ("step potential flip", potential_flip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

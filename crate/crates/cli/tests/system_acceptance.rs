//! One line per acceptance criterion; exits non-zero if any fails.
//! Reference values come from 30-digit mpmath evaluations.

#![allow(clippy::excessive_precision)]

use std::process::Command;

use heunwell::heun::{
    check_termination, five_term_psi, paper_potential, v4_for_termination, LemieuxBosePotential,
};
use heunwell::oracle::{
    highprec_hermite, highprec_wronskian, numerov_eigen, numerov_wavefunction, qpoly_determinant,
    MultiPoly, ShootingConfig,
};
use heunwell::specfun::hermite_h;
use heunwell::spectrum::{
    calibrate_b2, energy_of_a, energy_series, energy_series_leading, exact_spectrum_fn,
    exact_spectrum_scale, find_roots, ApproxConstants, PhysicalSystem, SpectralLevel,
};
use heunwell::wavefunction::{
    bound_state, count_nodes, fundamental_amplitude_ratio, fundamental_psi, residual_step,
    schrodinger_residual, second_psi, SampledFunction, RESIDUAL_STEP_FRACTION,
};

const A1: f64 = 1.4372765424581844;
const A2: f64 = 2.4124796869343439;
const A3: f64 = 3.3986648250934484;
const A20: f64 = 20.355216625534954;
const B0: f64 = 0.228620194033074724545;

type Outcome = Result<(bool, String), String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn sys() -> PhysicalSystem {
    PhysicalSystem::default()
}

fn exact(n: usize) -> Vec<SpectralLevel> {
    find_roots(&sys(), n).expect("exact spectrum")
}

fn e(r: heunwell::Error) -> String {
    r.to_string()
}

fn extrema(f: &SampledFunction) -> usize {
    let floor = 1e-9 * f.peak();
    let ys: Vec<f64> = f.ys.iter().copied().filter(|y| y.abs() > floor).collect();
    ys.windows(3)
        .filter(|w| (w[1] - w[0]) * (w[2] - w[1]) < 0.0)
        .count()
}

fn criterion_1() -> Outcome {
    let f =
        exact_spectrum_fn(0.5).map_err(e)?.value.abs() / exact_spectrum_scale(0.5).map_err(e)?;
    let s = sys();
    let amp = |a: f64| -> Result<f64, String> {
        let en = energy_of_a(&s, a).map_err(e)?;
        let mut m = 0.0f64;
        for i in 0..=200 {
            let x = 0.05 + 24.95 * i as f64 / 200.0;
            m = m.max(fundamental_psi(x, &s, en).map_err(e)?.abs());
        }
        Ok(m)
    };
    // against the same solution just off the rudimentary root
    let grid = amp(0.5)? / amp(0.55)?;
    let ratio = fundamental_amplitude_ratio(0.5).map_err(e)?;
    let ok = f < 1e-10 && grid < 1e-10 && ratio < 1e-10;
    Ok((ok, format!("|F(1/2)|/scale = {f:.2e}, max|psi_F| ratio on grid = {grid:.2e}, amplitude ratio = {ratio:.2e}")))
}

fn criterion_2() -> Outcome {
    let lv = exact(1)[0];
    let b = bound_state(&sys(), &lv, None, 2000).map_err(e)?;
    let cfg = ShootingConfig::for_level(&sys(), 1).map_err(e)?;
    let nw = numerov_wavefunction(&sys(), lv.energy, &cfg).map_err(e)?;
    let (nodes, ext) = (count_nodes(&b.samples), extrema(&b.samples));
    let (nodes_nw, ext_nw) = (count_nodes(&nw), extrema(&nw));
    let ok = lv.a_n > 1.40
        && lv.a_n < 1.55
        && (lv.a_n - A1).abs() < 1e-12
        && nodes == 0
        && ext == 1
        && nodes_nw == 0
        && ext_nw == 1;
    Ok((
        ok,
        format!(
            "a_1 = {:.15}, nodes {nodes}, extrema {ext} (Numerov: {nodes_nw}, {ext_nw})",
            lv.a_n
        ),
    ))
}

fn criterion_3() -> Outcome {
    let levels = exact(20);
    let roots: Vec<f64> = levels.iter().map(|l| l.a_n).collect();
    let oracle_dev = [(0, A1), (1, A2), (2, A3), (19, A20)]
        .iter()
        .map(|&(i, a)| (roots[i] / a - 1.0).abs())
        .fold(0.0, f64::max);
    let cal = calibrate_b2(&roots).map_err(e)?;
    let summary: Vec<String> = cal
        .reports
        .iter()
        .map(|r| {
            format!(
                "{:?} b2={:.5} max rel {:.2e} |err(2)| {:.2e}",
                r.preset, r.b2, r.max_rel_err, r.abs_err_n2
            )
        })
        .collect();
    let ok = oracle_dev < 1e-12 && cal.satisfying.is_some();
    Ok((
        ok,
        format!(
            "satisfying b2: {:?}; {}",
            cal.satisfying,
            summary.join("; ")
        ),
    ))
}

fn criterion_4() -> Outcome {
    let s = sys();
    let consts = ApproxConstants::analytic();
    let (mut worst, mut gain) = (0.0f64, f64::INFINITY);
    for l in exact(20) {
        let rel = |en: f64| ((en - l.energy) / l.energy).abs();
        let r = rel(energy_series(l.n, &s, &consts));
        worst = worst.max(r);
        if l.n <= 10 {
            gain = gain.min(rel(energy_series_leading(l.n, &s)) / r);
        }
    }
    let ok = worst < 1e-5 && gain >= 1e3;
    Ok((ok, format!("max rel energy error {worst:.3e} (< 1e-5), min gain over leading term {gain:.1} (>= 1e3)")))
}

fn criterion_5() -> Outcome {
    let s = sys();
    let (mut de, mut dpsi) = (0.0f64, 0.0f64);
    for l in exact(5) {
        let cfg = ShootingConfig::for_level(&s, l.n).map_err(e)?;
        let en = numerov_eigen(&s, l.n, &cfg).map_err(e)?;
        de = de.max((en / l.energy - 1.0).abs());
        let f = numerov_wavefunction(&s, en, &cfg).map_err(e)?;
        let b = bound_state(&s, &l, None, 1000).map_err(e)?;
        for (&x, &y) in b.samples.xs.iter().zip(&b.samples.ys) {
            if let Some(v) = f.interpolate(x) {
                dpsi = dpsi.max((v - y).abs());
            }
        }
    }
    Ok((
        de < 1e-6 && dpsi < 1e-5,
        format!("energy rel {de:.2e} (< 1e-6), eigenfunction pointwise {dpsi:.2e} (< 1e-5)"),
    ))
}

fn criterion_6() -> Outcome {
    let levels = exact(20);
    let devs: Vec<f64> = levels
        .iter()
        .map(|l| l.a_n - (l.n as f64 + 1.0 / 3.0))
        .collect();
    let decreasing = devs.windows(2).all(|w| w[1].abs() < w[0].abs());
    let d20 = devs[19].abs();
    let ok = decreasing && d20 < 0.02 && (levels[19].a_n - A20).abs() < 1e-10;
    Ok((
        ok,
        format!("a_n - (n + 1/3) shrinking: {decreasing}; |a_20 - 61/3| = {d20:.6} (< 0.02)"),
    ))
}

fn criterion_7() -> Outcome {
    // ten fixed parameter sets inside m, hbar, |V1| in [0.8, 1.25], V0 in [-0.5, 0.5], a in [1.5, 6]
    let xs: Vec<f64> = (0..15)
        .map(|i| 0.05 * 500f64.powf(i as f64 / 14.0))
        .collect();
    let (mut resid, mut spread) = (0.0f64, 0.0f64);
    for k in 0..10 {
        let t = |p: f64| ((k as f64 + 1.0) * p).fract();
        let s = PhysicalSystem {
            m: 0.8 + 0.45 * t(0.618034),
            hbar: 0.8 + 0.45 * t(0.414214),
            v0: -0.5 + t(0.732051),
            v1: -0.8 - 0.45 * t(0.236068),
        };
        let en = energy_of_a(&s, 1.5 + 4.5 * t(0.316625)).map_err(e)?;
        let mut w = Vec::new();
        for &x in &xs {
            let h = residual_step(&s, en, x, RESIDUAL_STEP_FRACTION);
            resid = resid.max(
                schrodinger_residual(|y| fundamental_psi(y, &s, en), &s, en, x, h).map_err(e)?,
            );
            resid = resid
                .max(schrodinger_residual(|y| second_psi(y, &s, en), &s, en, x, h).map_err(e)?);
            w.push(highprec_wronskian(&s, en, x).map_err(e)?);
        }
        let (lo, hi) = w
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
                (l.min(v), h.max(v))
            });
        spread = spread.max((hi - lo) / w[0].abs());
    }
    Ok((
        resid < 1e-8 && spread < 1e-6,
        format!("scaled residual {resid:.2e} (< 1e-8), Wronskian spread {spread:.2e} (< 1e-6)"),
    ))
}

fn criterion_8() -> Outcome {
    let s = sys();
    let en = energy_of_a(&s, 3.1).map_err(e)?;
    let ratio = |x: f64| -> Result<f64, String> {
        Ok(five_term_psi(x, &s, en).map_err(e)? / fundamental_psi(x, &s, en).map_err(e)?)
    };
    let r0 = ratio(0.15)?;
    let mut worst = 0.0f64;
    for i in 1..=20 {
        worst = worst.max((ratio(0.15 + 1.2 * i as f64)? / r0 - 1.0).abs());
    }
    Ok((
        worst < 1e-9,
        format!("ratio spread {worst:.2e} (< 1e-9) over 20 points"),
    ))
}

fn criterion_9() -> Outcome {
    let monic = |n: usize| -> Result<MultiPoly, String> {
        let d = qpoly_determinant(n).map_err(e)?;
        Ok(if n.is_multiple_of(2) { d.scale(-1) } else { d })
    };
    let (q, d, ep, al) = (
        MultiPoly::q(),
        MultiPoly::delta(),
        MultiPoly::eps(),
        MultiPoly::alpha(),
    );
    let n1 = q.mul(&q).sub(&q.mul(&d)).add(&al);
    let n2 = q
        .mul(&q)
        .mul(&q)
        .sub(&q.mul(&q).mul(&d).scale(3))
        .add(&q.mul(&d.mul(&d).add(&ep).add(&al.scale(2))).scale(2))
        .sub(&al.mul(&d).scale(4));
    let exact_ok = monic(1)? == n1 && monic(2)? == n2;
    let generic = LemieuxBosePotential {
        v0: 0.1,
        v1: -0.9,
        v2: -0.25,
        v3: 0.15,
        v4: v4_for_termination(3, 1.0, 1.0),
    };
    let n3_fails = [-0.8, -0.45]
        .iter()
        .map(|&en| check_termination(&generic, en, 3, 1.0, 1.0).map(|r| !r.terminates))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?
        .into_iter()
        .all(|x| x);
    let pot = paper_potential(0.0, -1.0, 1.0, 1.0);
    let mut n4_ok = true;
    for i in 0..12 {
        let en = -3.0 * 0.6f64.powi(i);
        n4_ok &= check_termination(&pot, en, 4, 1.0, 1.0)
            .map_err(e)?
            .terminates;
    }
    let (m, hb) = (1.3, 0.7);
    let c = hb * hb / m;
    let v4_ok = [(0, -3.0 / 32.0), (1, 0.0), (4, 21.0 / 32.0)]
        .iter()
        .all(|&(n, k)| (v4_for_termination(n, m, hb) - k * c).abs() <= 1e-15 * c);
    let ok = exact_ok && n3_fails && n4_ok && v4_ok;
    Ok((ok, format!("N=1,2 exact: {exact_ok}; N=3 fails generically: {n3_fails}; N=4 at 12 energies: {n4_ok}; V4(N): {v4_ok}")))
}

fn criterion_10() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        for j in 0..=48 {
            let (nu, z) = (i as f64 * 0.25, -6.0 + j as f64 * 0.25);
            let hp = |z: f64| -> Result<f64, String> {
                Ok(highprec_hermite(nu, z, 20).map_err(e)?.to_f64())
            };
            let v = hp(z)?;
            if v.signum() != hp(z - 0.05)?.signum() || v.signum() != hp(z + 0.05)?.signum() {
                continue;
            }
            worst = worst.max((hermite_h(nu, z).map_err(e)?.value / v - 1.0).abs());
        }
    }
    let b0 = ApproxConstants::b0_defining();
    let b0_dev = (b0 - B0).abs();
    let fifth = (b0 / 0.2 - 1.0).abs();
    let ok = worst < 1e-10 && b0_dev < 1e-10 && fifth < 0.02;
    Ok((ok, format!("Hermite grid rel {worst:.2e} (< 1e-10); B0 = {b0:.12} off reference by {b0_dev:.1e}; |B0/(1/5) - 1| = {fifth:.4} (< 0.02)")))
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_heunwell");
    let once = || {
        Command::new(bin)
            .args(["verify", "--levels", "5"])
            .output()
            .map_err(|x| x.to_string())
    };
    let (a, b) = (once()?, once()?);
    let same = a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
    Ok((
        same,
        format!(
            "{} bytes, exit {:?} both runs",
            a.stdout.len(),
            a.status.code()
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "rudimentary root a = 1/2", criterion_1),
        (2, "ground state", criterion_2),
        (3, "closed-form root accuracy", criterion_3),
        (4, "three-term energy accuracy", criterion_4),
        (5, "Numerov oracle equivalence", criterion_5),
        (6, "semiclassical limit", criterion_6),
        (7, "solution correctness", criterion_7),
        (8, "reduction identity", criterion_8),
        (9, "termination machinery", criterion_9),
        (10, "special-function layer", criterion_10),
        (11, "determinism of verify", criterion_11),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(msg) => (false, format!("error: {msg}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

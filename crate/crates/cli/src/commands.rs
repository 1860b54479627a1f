use std::io::Write;

use heunwell::heun::{
    check_termination, paper_potential, v4_for_termination, LemieuxBosePotential,
};
use heunwell::oracle::{numerov_wavefunction, qpoly_determinant, ShootingConfig};
use heunwell::specfun::hermite_h;
use heunwell::spectrum::{
    a_of_energy, closed_form_a, energy_of_a, energy_series, error_table, find_roots,
    transcendental_root, ApproxConstants, B2Preset, PhysicalSystem, SpectralLevel, B0_ROUND,
};
use heunwell::verify::{run_verification, SPECTRAL_LEVELS};
use heunwell::wavefunction::bound_state;
use heunwell::Error;
use serde_json::{json, Value};

use crate::output::{write_document, Cell, Format, OutputFormat, Table};
use crate::{
    B2Choice, CliError, Command, JsonArgs, SpectrumMethod, SystemArgs, TableArgs, EXIT_OK,
    EXIT_VERIFY,
};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Spectrum {
            sys,
            levels,
            method,
            b2,
            out: o,
        } => spectrum(sys, levels, method, b2, o, out),
        Command::Wavefunction {
            sys,
            level,
            xmax,
            samples,
            compare_numerov,
            out: o,
        } => wavefunction(sys, level, xmax, samples, compare_numerov, o, out),
        Command::Potential {
            sys,
            xmin,
            xmax,
            samples,
            out: o,
        } => potential(sys, xmin, xmax, samples, o, out),
        Command::ApproxError {
            sys,
            levels,
            b2,
            out: o,
        } => approx_error(sys, levels, b2, o, out),
        Command::Verify { levels, out: o } => verify(levels, o, out),
        Command::Hermite { nu, z, out: o } => hermite(nu, z, o, out),
        Command::Derive {
            n,
            energy,
            sys,
            out: o,
        } => derive(n, energy, sys, o, out),
        Command::CheckTermination {
            potential,
            energy,
            n,
            m,
            hbar,
            out: o,
        } => termination(&potential, energy, n, m, hbar, o, out),
    }
}

fn table_format(a: TableArgs) -> Result<OutputFormat> {
    OutputFormat::new(a.format, a.precision).map_err(CliError::Usage)
}

fn json_format(a: JsonArgs) -> Result<OutputFormat> {
    OutputFormat::new(Format::Json, a.precision).map_err(CliError::Usage)
}

fn system(a: SystemArgs) -> Result<PhysicalSystem> {
    Ok(PhysicalSystem::new(a.m, a.hbar, a.v0, a.v1)?)
}

fn system_meta(t: &mut Table, s: &PhysicalSystem) {
    t.meta("m", s.m);
    t.meta("hbar", s.hbar);
    t.meta("v0", s.v0);
    t.meta("v1", s.v1);
}

fn preset(b2: B2Choice) -> B2Preset {
    match b2 {
        B2Choice::Analytic => B2Preset::Analytic,
        B2Choice::OneTwentieth => B2Preset::OneTwentieth,
        B2Choice::LeastSquares => B2Preset::LeastSquares,
    }
}

/// Exact levels 1..=max(levels, 20) and the constants for the chosen b2.
fn exact_and_constants(
    sys: &PhysicalSystem,
    levels: usize,
    b2: B2Choice,
) -> Result<(Vec<SpectralLevel>, ApproxConstants)> {
    if levels == 0 {
        return Err(Error::Domain("at least one level is required".into()).into());
    }
    let exact = find_roots(sys, levels.max(SPECTRAL_LEVELS))?;
    let roots: Vec<f64> = exact[..SPECTRAL_LEVELS].iter().map(|l| l.a_n).collect();
    Ok((exact, ApproxConstants::preset(preset(b2), &roots)))
}

fn spectrum(
    a: SystemArgs,
    levels: usize,
    method: SpectrumMethod,
    b2: B2Choice,
    o: TableArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = table_format(o)?;
    let sys = system(a)?;
    sys.require_well()?;
    let (exact, consts) = exact_and_constants(&sys, levels, b2)?;
    let methods: Vec<SpectrumMethod> = match method {
        SpectrumMethod::All => vec![
            SpectrumMethod::Exact,
            SpectrumMethod::Transcendental,
            SpectrumMethod::ClosedForm,
            SpectrumMethod::EnergySeries,
        ],
        m => vec![m],
    };
    let name = |m: SpectrumMethod| match m {
        SpectrumMethod::Exact => "exact",
        SpectrumMethod::Transcendental => "transcendental",
        SpectrumMethod::ClosedForm => "closed_form",
        SpectrumMethod::EnergySeries => "energy_series",
        SpectrumMethod::All => unreachable!(),
    };
    let mut columns = vec!["n".to_string()];
    for &m in &methods {
        columns.push(format!("a_{}", name(m)));
        columns.push(format!("e_{}", name(m)));
    }
    let mut t = Table::new(columns);
    t.meta("command", "spectrum");
    system_meta(&mut t, &sys);
    t.meta("levels", levels);
    t.meta(
        "methods",
        methods.iter().map(|&m| name(m)).collect::<Vec<_>>(),
    );
    if methods
        .iter()
        .any(|m| matches!(m, SpectrumMethod::ClosedForm | SpectrumMethod::EnergySeries))
    {
        t.meta("b2_preset", preset(b2));
        t.meta("b2", consts.b2);
    }
    if methods.contains(&SpectrumMethod::Transcendental) {
        t.meta("b0_transcendental", B0_ROUND);
    }
    for level in &exact[..levels] {
        let n = level.n;
        let mut row = vec![Cell::Int(n as i64)];
        for &m in &methods {
            let (a_n, e) = match m {
                SpectrumMethod::Exact => (level.a_n, level.energy),
                SpectrumMethod::Transcendental => {
                    let a_n = transcendental_root(n, B0_ROUND)?;
                    (a_n, energy_of_a(&sys, a_n)?)
                }
                SpectrumMethod::ClosedForm => {
                    let a_n = closed_form_a(n, &consts);
                    (a_n, energy_of_a(&sys, a_n)?)
                }
                SpectrumMethod::EnergySeries => {
                    let e = energy_series(n, &sys, &consts);
                    (a_of_energy(&sys, e)?, e)
                }
                SpectrumMethod::All => unreachable!(),
            };
            row.push(Cell::Num(a_n));
            row.push(Cell::Num(e));
        }
        t.push(row);
    }
    t.write(&fmt, out)?;
    Ok(EXIT_OK)
}

fn wavefunction(
    a: SystemArgs,
    level: usize,
    xmax: Option<f64>,
    samples: usize,
    compare_numerov: bool,
    o: TableArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = table_format(o)?;
    let sys = system(a)?;
    sys.require_well()?;
    if level == 0 {
        return Err(Error::Domain("levels are numbered from 1".into()).into());
    }
    let levels = find_roots(&sys, level)?;
    let lv = levels[level - 1];
    let b = bound_state(&sys, &lv, xmax, samples)?;
    let reference = if compare_numerov {
        let cfg = ShootingConfig::for_level(&sys, level)?;
        Some(numerov_wavefunction(&sys, lv.energy, &cfg)?)
    } else {
        None
    };
    let mut columns = vec!["x", "psi"];
    if reference.is_some() {
        columns.push("psi_numerov");
    }
    let mut t = Table::new(columns);
    t.meta("command", "wavefunction");
    system_meta(&mut t, &sys);
    t.meta("level", level);
    t.meta("a_n", lv.a_n);
    t.meta("energy", lv.energy);
    t.meta("x_max", b.samples.xs.last().copied().unwrap_or(f64::NAN));
    t.meta("samples", b.samples.len());
    for (&x, &y) in b.samples.xs.iter().zip(&b.samples.ys) {
        let mut row = vec![Cell::Num(x), Cell::Num(y)];
        if let Some(r) = &reference {
            row.push(Cell::Num(r.interpolate(x).unwrap_or(f64::NAN)));
        }
        t.push(row);
    }
    t.write(&fmt, out)?;
    Ok(EXIT_OK)
}

fn potential(
    a: SystemArgs,
    xmin: f64,
    xmax: f64,
    samples: usize,
    o: TableArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = table_format(o)?;
    let sys = system(a)?;
    if !(xmin > 0.0 && xmax > xmin && xmax.is_finite()) {
        return Err(Error::Domain(format!("need 0 < xmin < xmax, got [{xmin}, {xmax}]")).into());
    }
    if samples < 2 {
        return Err(Error::Domain("at least 2 samples are needed".into()).into());
    }
    let mut t = Table::new(["x", "v"]);
    t.meta("command", "potential");
    system_meta(&mut t, &sys);
    t.meta("samples", samples);
    for i in 0..samples {
        let x = if i + 1 == samples {
            xmax
        } else {
            xmin + (xmax - xmin) * i as f64 / (samples - 1) as f64
        };
        t.push(vec![Cell::Num(x), Cell::Num(sys.potential(x))]);
    }
    t.write(&fmt, out)?;
    Ok(EXIT_OK)
}

fn approx_error(
    a: SystemArgs,
    levels: usize,
    b2: B2Choice,
    o: TableArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = table_format(o)?;
    let sys = system(a)?;
    sys.require_well()?;
    let (_, consts) = exact_and_constants(&sys, levels, b2)?;
    let rows = error_table(&sys, levels, &consts)?;
    let mut t = Table::new([
        "n",
        "a_exact",
        "a_closed_form",
        "rel_err_a",
        "e_exact",
        "e_energy_series",
        "rel_err_e",
    ]);
    t.meta("command", "approx-error");
    system_meta(&mut t, &sys);
    t.meta("b2_preset", preset(b2));
    t.meta("b2", consts.b2);
    for r in rows {
        t.push(vec![
            Cell::Int(r.n as i64),
            Cell::Num(r.a_exact),
            Cell::Num(r.a_eq21),
            Cell::Num(r.rel_err_a),
            Cell::Num(r.e_exact),
            Cell::Num(r.e_eq24),
            Cell::Num(r.rel_err_e),
        ]);
    }
    t.write(&fmt, out)?;
    Ok(EXIT_OK)
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn document(
    command: &str,
    mut meta: Vec<(String, Value)>,
    data: Value,
    fmt: &OutputFormat,
    out: &mut dyn Write,
) -> Result<()> {
    meta.insert(0, ("command".into(), Value::from(command)));
    write_document(&meta, &data, fmt, out)?;
    Ok(())
}

fn verify(levels: usize, o: JsonArgs, out: &mut dyn Write) -> Result<i32> {
    let fmt = json_format(o)?;
    let report = run_verification(levels)?;
    let meta = vec![("levels".into(), Value::from(levels))];
    document("verify", meta, to_value(&report), &fmt, out)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
}

fn hermite(nu: f64, z: f64, o: JsonArgs, out: &mut dyn Write) -> Result<i32> {
    let fmt = json_format(o)?;
    let h = hermite_h(nu, z)?;
    let meta = vec![("nu".into(), to_value(nu)), ("z".into(), to_value(z))];
    document("hermite", meta, to_value(h), &fmt, out)?;
    Ok(EXIT_OK)
}

fn derive(
    n: usize,
    energy: Option<f64>,
    a: SystemArgs,
    o: JsonArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = json_format(o)?;
    let sys = system(a)?;
    let det = qpoly_determinant(n)?;
    // the determinant is (−1)^{N+1} times the monic polynomial
    let monic = if n.is_multiple_of(2) {
        det.scale(-1)
    } else {
        det
    };
    let coefficients: Vec<Value> = (0..=monic.degree_in_q())
        .rev()
        .map(|k| json!({ "power": k, "coefficient": monic.coeff_q(k).to_string() }))
        .collect();
    let v4 = v4_for_termination(n, sys.m, sys.hbar);
    let pot = LemieuxBosePotential {
        v2: 0.0,
        v3: 0.0,
        v4,
        ..paper_potential(sys.v0, sys.v1, sys.m, sys.hbar)
    };
    let e = match energy {
        Some(e) => e,
        None => {
            sys.require_well()?;
            energy_of_a(&sys, 2.0)?
        }
    };
    let report = check_termination(&pot, e, n, sys.m, sys.hbar)?;
    let meta = vec![
        ("order".into(), Value::from(n)),
        ("system".into(), to_value(sys)),
    ];
    let data = json!({
        "qpoly": monic.to_string(),
        "coefficients": coefficients,
        "v4_for_termination": to_value(v4),
        "potential": to_value(pot),
        "energy": to_value(e),
        "termination": to_value(report),
    });
    document("derive", meta, data, &fmt, out)?;
    Ok(EXIT_OK)
}

fn read_potential(arg: &str) -> Result<LemieuxBosePotential> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid potential: {e}")))
}

fn termination(
    arg: &str,
    energy: f64,
    n: usize,
    m: f64,
    hbar: f64,
    o: JsonArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = json_format(o)?;
    let pot = read_potential(arg)?;
    let report = check_termination(&pot, energy, n, m, hbar)?;
    let meta = vec![
        ("potential".into(), to_value(pot)),
        ("energy".into(), to_value(energy)),
        ("m".into(), to_value(m)),
        ("hbar".into(), to_value(hbar)),
    ];
    document("check-termination", meta, to_value(report), &fmt, out)?;
    Ok(EXIT_OK)
}

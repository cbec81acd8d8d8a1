use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use extcat::catenary::{integrate, CatenaryType, Curve, InitialCondition, IntegrationStatus};
use extcat::diagnostics::{run_checks, CheckConfig};
use extcat::io::{self as fio, ProjectionMode};
use extcat::relaxer::{endpoint_distance, fit_multiplier, initial_chain, relax, DiscreteChain, RelaxOptions, RelaxStatus};
use extcat::revolution::build_mesh;

use crate::args::{CheckArgs, Cli, Command, CurveArgs, RelaxArgs, RevolveArgs, SolveArgs};
use crate::config::{self, CurveSection};
use crate::CliError;

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let file = config::load(cli.config.as_deref())?;
    let banner = if cli.no_banner { None } else { Some(banner_line()) };
    let banner = banner.as_deref();
    match cli.command {
        Command::Solve(a) => solve(a, &file.solve, banner),
        Command::Revolve(a) => revolve(a, &file.revolve, banner),
        Command::Check(a) => check(a, &file.check),
        Command::Relax(a) => relax_cmd(a, &file.relax, banner),
    }
}

fn banner_line() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let (days, rem) = (secs / 86_400, secs % 86_400);
    // Civil date from days since 1970-01-01 (proleptic Gregorian).
    let z = days as i64 + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z - era * 146_097;
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = doy - (153 * mp + 2) / 5 + 1;
    let month = if mp < 10 { mp + 3 } else { mp - 9 };
    let year = yoe + era * 400 + i64::from(month <= 2);
    format!(
        "extcat {} generated {year:04}-{month:02}-{day:02}T{:02}:{:02}:{:02}Z",
        env!("CARGO_PKG_VERSION"),
        rem / 3600,
        rem % 3600 / 60,
        rem % 60
    )
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse_type(s: &str) -> Result<CatenaryType, CliError> {
    s.parse::<CatenaryType>().map_err(|_| invalid(format!("type: unknown catenary type '{s}'")))
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("{name} must be positive, got {x}")))
    }
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("{name} must be finite, got {x}")))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

struct CurveSpec {
    ctype: CatenaryType,
    r: f64,
    lambda: f64,
    ic: InitialCondition,
    s_max: f64,
    step: f64,
}

fn resolve_curve(flags: &CurveArgs, file: &CurveSection) -> Result<CurveSpec, CliError> {
    let ctype = match flags.ctype {
        Some(t) => t.into(),
        None => parse_type(file.ctype.as_deref().unwrap_or("elliptic"))?,
    };
    let r = positive("r", flags.r.or(file.r).unwrap_or(1.0))?;
    let step = positive("step", flags.step.or(file.step).unwrap_or(1e-3 * r))?;
    let s_max = positive("smax", flags.smax.or(file.smax).unwrap_or(4.0 * r))?;
    let ic = InitialCondition::new(
        finite("u0", flags.u0.or(file.u0).unwrap_or(r))?,
        finite("v0", flags.v0.or(file.v0).unwrap_or(0.0))?,
        finite("theta0", flags.theta0.or(file.theta0).unwrap_or(std::f64::consts::FRAC_PI_6))?,
    );
    let lambda = finite("lambda", flags.lambda.or(file.lambda).unwrap_or(0.0))?;
    Ok(CurveSpec { ctype, r, lambda, ic, s_max, step })
}

fn integrate_spec(spec: &CurveSpec) -> Result<Curve, CliError> {
    let curve = integrate(spec.ctype, spec.ic, spec.r, spec.lambda, spec.s_max, spec.step)?;
    if curve.status != IntegrationStatus::Completed {
        let reached = curve.samples.last().map(|p| p.s).unwrap_or(0.0);
        eprintln!("extcat: integration stopped at s = {reached} ({:?})", curve.status);
    }
    Ok(curve)
}

fn solve(a: SolveArgs, file: &CurveSection, banner: Option<&str>) -> Result<u8, CliError> {
    let spec = resolve_curve(&a.curve, file)?;
    let out = a.out.or(file.out.clone()).unwrap_or_else(|| PathBuf::from("curve.csv"));
    let curve = integrate_spec(&spec)?;
    let mut w = create(&out)?;
    fio::write_curve_csv(&mut w, &curve, banner)?;
    finish(w, &out)?;
    println!("wrote {} samples of a {} catenary to {}", curve.len(), spec.ctype, out.display());
    Ok(0)
}

fn revolve(a: RevolveArgs, file: &config::RevolveSection, banner: Option<&str>) -> Result<u8, CliError> {
    let spec = resolve_curve(&a.curve, &file.curve())?;
    let input = a.input.or(file.input.clone());
    let n_theta = a.ntheta.or(file.ntheta).unwrap_or(40);
    if n_theta < 2 {
        return Err(invalid(format!("ntheta must be at least 2, got {n_theta}")));
    }
    let rows = a.rows.or(file.rows).unwrap_or(40);
    if rows < 2 {
        return Err(invalid(format!("rows must be at least 2, got {rows}")));
    }
    let (lo, hi) = match spec.ctype {
        CatenaryType::Elliptic => (0.0, std::f64::consts::TAU),
        _ => (-1.0, 1.0),
    };
    let theta_min = finite("theta_min", a.theta_min.or(file.theta_min).unwrap_or(lo))?;
    let theta_max = finite("theta_max", a.theta_max.or(file.theta_max).unwrap_or(hi))?;
    if theta_max <= theta_min {
        return Err(invalid(format!("theta_max ({theta_max}) must exceed theta_min ({theta_min})")));
    }
    let projection: ProjectionMode = match a.projection {
        Some(p) => p.into(),
        None => file
            .projection
            .as_deref()
            .unwrap_or("ambient")
            .parse()
            .map_err(|_| invalid("projection must be 'ambient' or 'poincare'"))?,
    };
    let out = a.out.or(file.out.clone()).unwrap_or_else(|| PathBuf::from("surface.obj"));

    let curve = match input {
        Some(path) => {
            let f = File::open(&path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            fio::read_curve_csv(BufReader::new(f), Some(spec.ctype), spec.r, spec.lambda)?
        }
        None => integrate_spec(&spec)?,
    };
    let mesh = build_mesh(spec.ctype, &curve.subsample(rows), theta_min, theta_max, n_theta)?;

    let sidecar = out.with_extension("h.csv");
    let mut w = create(&out)?;
    fio::write_obj(&mut w, &mesh, projection, banner)?;
    finish(w, &out)?;
    let mut w = create(&sidecar)?;
    fio::write_sidecar_csv(&mut w, &mesh, banner)?;
    finish(w, &sidecar)?;
    println!("mesh: {} x {} vertices written to {} (H in {})", mesh.rows, mesh.cols, out.display(), sidecar.display());
    println!("max|H| = {:.6e}", mesh.max_abs_h());
    println!("mean|H| = {:.6e}", mesh.mean_abs_h());
    Ok(0)
}

fn check(a: CheckArgs, file: &config::CheckSection) -> Result<u8, CliError> {
    let defaults = CheckConfig::default();
    let only = if a.only.is_empty() { file.only.clone().unwrap_or_default() } else { a.only };
    let cfg = CheckConfig {
        seed: a.seed.or(file.seed).unwrap_or(defaults.seed),
        curves: a.samples.or(file.samples).unwrap_or(defaults.curves),
        only,
    };
    let report = run_checks(&cfg)?;
    print!("{report}");
    Ok(if report.all_passed() { 0 } else { 2 })
}

fn parse_point(name: &str, s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || invalid(format!("{name} must be 'u,v', got '{s}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let u: f64 = parts[0].parse().map_err(|_| bad())?;
    let v: f64 = parts[1].parse().map_err(|_| bad())?;
    Ok((finite(name, u)?, finite(name, v)?))
}

fn relax_cmd(a: RelaxArgs, file: &config::RelaxSection, banner: Option<&str>) -> Result<u8, CliError> {
    let ctype = match a.ctype {
        Some(t) => t.into(),
        None => parse_type(file.ctype.as_deref().unwrap_or("elliptic"))?,
    };
    let r = positive("r", a.r.or(file.r).unwrap_or(1.0))?;
    let start = match a.start {
        Some(s) => parse_point("start", &s)?,
        None => file.start.map(|[u, v]| (u, v)).unwrap_or((r, -0.5 * r)),
    };
    let end = match a.end {
        Some(s) => parse_point("end", &s)?,
        None => file.end.map(|[u, v]| (u, v)).unwrap_or((r, 0.5 * r)),
    };
    let segments = a.segments.or(file.segments).unwrap_or(64);
    if segments < 2 {
        return Err(invalid(format!("segments must be at least 2, got {segments}")));
    }
    let slack = finite("slack", a.slack.or(file.slack).unwrap_or(0.1))?;
    if slack < 0.0 {
        return Err(invalid(format!("slack must be nonnegative, got {slack}")));
    }
    let defaults = RelaxOptions::for_radius(r);
    let opts = RelaxOptions {
        max_iter: a.max_iter.or(file.max_iter).unwrap_or(defaults.max_iter),
        step_size: positive("step", a.step.or(file.step).unwrap_or(defaults.step_size))?,
        grad_tol: positive("grad_tol", a.grad_tol.or(file.grad_tol).unwrap_or(defaults.grad_tol))?,
        newton: true,
        lambda: finite("lambda", a.lambda.or(file.lambda).unwrap_or(0.0))?,
    };
    let out = a.out.or(file.out.clone()).unwrap_or_else(|| PathBuf::from("chain.csv"));
    let report_path = a.report.or(file.report.clone()).unwrap_or_else(|| out.with_extension("json"));

    let probe = DiscreteChain { ctype, r, nodes: vec![start, end], target_length: 0.0 };
    let distance = endpoint_distance(&probe);
    let target = (1.0 + slack) * distance;
    let chain0 = initial_chain(ctype, r, start, end, segments, target)?;
    let (chain, report) = relax(&chain0, &opts)?;
    let lambda = if report.taut { 0.0 } else { fit_multiplier(&chain)? };

    let mut w = create(&out)?;
    fio::write_chain_csv(&mut w, &chain, lambda, banner)?;
    finish(w, &out)?;
    let mut w = create(&report_path)?;
    w.write_all(fio::report_to_json(&report)?.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", report_path.display())))?;
    finish(w, &report_path)?;
    println!(
        "status {:?} after {} iterations, energy {:.12e}, projected gradient {:.3e}, fitted lambda {:.12e}",
        report.status, report.iterations, report.final_energy, report.grad_norm, lambda
    );
    if report.status == RelaxStatus::Infeasible {
        return Err(CliError::Domain(format!(
            "infeasible chain: target length {target} cannot be realized between {start:?} and {end:?} \
             with positive weight (endpoint distance {distance})"
        )));
    }
    Ok(0)
}

//! Plain-text file formats: curve and chain CSV, mesh OBJ with a CSV
//! sidecar, and JSON relax reports.
//!
//! Every float is written with 17 significant digits in scientific
//! notation, independent of locale. The only non-deterministic content is
//! the optional `#` banner line.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::catenary::{
    clairaut_from_velocity, elliptic_first_integral, killing_residual, CatenaryType, Curve, CurveSample,
    IntegrationStatus,
};
use crate::charts::{kappa_semigeo, psi, ChartId};
use crate::lorentz::LorentzVec4;
use crate::relaxer::{discrete_kappa_residual, DiscreteChain, RelaxReport};
use crate::revolution::Mesh;

pub const CURVE_HEADER: &str = "s,u,v,du,dv,x,y,z,kappa,clairaut,killing_residual";
pub const SIDECAR_HEADER: &str = "row,col,H,x0,x1,x2,x3";
pub const CHAIN_HEADER: &str = "i,u,v,kappa_residual";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Math(#[from] crate::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

/// How 4D vertices are flattened to 3D for OBJ export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// Drop the time-like coordinate: `(x1, x2, x3)`.
    Ambient,
    /// Poincare ball `r (x1, x2, x3) / (r + x0)`.
    PoincareBall,
}

impl ProjectionMode {
    pub fn project(self, p: &LorentzVec4, r: f64) -> [f64; 3] {
        let [x0, x1, x2, x3] = p.0;
        match self {
            ProjectionMode::Ambient => [x1, x2, x3],
            ProjectionMode::PoincareBall => {
                let k = r / (r + x0);
                [k * x1, k * x2, k * x3]
            }
        }
    }
}

impl std::str::FromStr for ProjectionMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "ambient" => Ok(ProjectionMode::Ambient),
            "poincare" => Ok(ProjectionMode::PoincareBall),
            other => Err(crate::Error::Usage(format!("unknown projection '{other}'"))),
        }
    }
}

/// Fixed-width scientific rendering with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_row<W: Write>(w: &mut W, cells: &[f64]) -> std::io::Result<()> {
    let line: Vec<String> = cells.iter().map(|&x| fmt_f64(x)).collect();
    writeln!(w, "{}", line.join(","))
}

fn write_banner<W: Write>(w: &mut W, banner: Option<&str>) -> std::io::Result<()> {
    if let Some(b) = banner {
        writeln!(w, "# {b}")?;
    }
    Ok(())
}

/// Writes one row per sample. The `clairaut` column holds the elliptic
/// first integral (including the multiplier term) for elliptic curves and
/// the bare Clairaut quantity otherwise.
pub fn write_curve_csv<W: Write>(w: &mut W, curve: &Curve, banner: Option<&str>) -> Result<(), IoError> {
    write_banner(w, banner)?;
    writeln!(w, "{CURVE_HEADER}")?;
    for (i, p) in curve.samples.iter().enumerate() {
        let jet = curve.jet(i);
        let e = &curve.embedded[i];
        let kappa = kappa_semigeo(&jet)?;
        let first = match curve.ctype {
            Some(CatenaryType::Elliptic) => elliptic_first_integral(p.u, p.du, p.dv, curve.r, curve.lambda),
            _ => clairaut_from_velocity(p.u, p.du, p.dv, curve.r),
        };
        let killing = match curve.ctype {
            Some(t) => killing_residual(t, &jet, curve.lambda)?,
            None => f64::NAN,
        };
        write_row(w, &[p.s, p.u, p.v, p.du, p.dv, e.x(), e.y(), e.z(), kappa, first, killing])?;
    }
    Ok(())
}

fn parse_cells(line: &str, lineno: usize, want: usize) -> Result<Vec<f64>, IoError> {
    let cells: Vec<&str> = line.split(',').map(str::trim).collect();
    if cells.len() < want {
        return Err(IoError::Parse { line: lineno, msg: format!("expected {want} columns, found {}", cells.len()) });
    }
    cells
        .iter()
        .map(|c| {
            c.parse::<f64>()
                .map_err(|e| IoError::Parse { line: lineno, msg: format!("bad number '{c}': {e}") })
        })
        .collect()
}

/// Reads a curve CSV written by [`write_curve_csv`]. Accelerations are not
/// stored in the file; they are rebuilt by finite differences of the
/// velocity columns, which requires uniform spacing in `s`.
pub fn read_curve_csv<R: BufRead>(reader: R, ctype: Option<CatenaryType>, r: f64, lambda: f64) -> Result<Curve, IoError> {
    let mut samples = Vec::new();
    let mut header_seen = false;
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if !header_seen {
            if t != CURVE_HEADER {
                return Err(IoError::Parse { line: lineno, msg: format!("expected header '{CURVE_HEADER}'") });
            }
            header_seen = true;
            continue;
        }
        let c = parse_cells(t, lineno, 5)?;
        samples.push(CurveSample { s: c[0], u: c[1], v: c[2], du: c[3], dv: c[4], ddu: 0.0, ddv: 0.0 });
    }
    if samples.len() < 3 {
        return Err(IoError::Parse { line: 0, msg: "curve file needs at least three samples".into() });
    }
    let h = samples[1].s - samples[0].s;
    let uniform = h > 0.0
        && samples.windows(2).all(|w| ((w[1].s - w[0].s) - h).abs() <= 1e-9 * h.abs().max(1.0));
    if !uniform {
        return Err(IoError::Parse { line: 0, msg: "s column must be uniformly spaced".into() });
    }
    let embedded = samples.iter().map(|p| psi(p.u, p.v, r)).collect();
    let curve = Curve {
        ctype,
        chart: ChartId::SemiGeodesic,
        r,
        lambda,
        samples,
        embedded,
        status: IntegrationStatus::Completed,
    };
    Ok(curve.with_fd_accelerations())
}

/// Wavefront OBJ: one vertex per mesh node, each grid quad split into two
/// triangles.
pub fn write_obj<W: Write>(w: &mut W, mesh: &Mesh, mode: ProjectionMode, banner: Option<&str>) -> Result<(), IoError> {
    write_banner(w, banner)?;
    writeln!(w, "o {}_surface", mesh.ctype)?;
    for p in &mesh.vertices {
        let [a, b, c] = mode.project(p, mesh.r);
        writeln!(w, "v {} {} {}", fmt_f64(a), fmt_f64(b), fmt_f64(c))?;
    }
    for i in 0..mesh.rows.saturating_sub(1) {
        for j in 0..mesh.cols.saturating_sub(1) {
            let a = mesh.index(i, j) + 1;
            let b = mesh.index(i + 1, j) + 1;
            let c = mesh.index(i + 1, j + 1) + 1;
            let d = mesh.index(i, j + 1) + 1;
            writeln!(w, "f {a} {b} {c}")?;
            writeln!(w, "f {a} {c} {d}")?;
        }
    }
    Ok(())
}

/// Per-vertex mean curvature plus the full ambient coordinates.
pub fn write_sidecar_csv<W: Write>(w: &mut W, mesh: &Mesh, banner: Option<&str>) -> Result<(), IoError> {
    write_banner(w, banner)?;
    writeln!(w, "{SIDECAR_HEADER}")?;
    for i in 0..mesh.rows {
        for j in 0..mesh.cols {
            let k = mesh.index(i, j);
            let [x0, x1, x2, x3] = mesh.vertices[k].0;
            let cells: Vec<String> =
                [mesh.mean_curvature[k], x0, x1, x2, x3].iter().map(|&x| fmt_f64(x)).collect();
            writeln!(w, "{i},{j},{}", cells.join(","))?;
        }
    }
    Ok(())
}

/// Chain nodes with the discrete curvature residual at multiplier `lambda`;
/// endpoint residuals are undefined and written as `NaN`, nodes where
/// `f + lambda` is not positive as `inf`.
pub fn write_chain_csv<W: Write>(w: &mut W, chain: &DiscreteChain, lambda: f64, banner: Option<&str>) -> Result<(), IoError> {
    write_banner(w, banner)?;
    writeln!(w, "{CHAIN_HEADER}")?;
    let n = chain.segments();
    for (i, &(u, v)) in chain.nodes.iter().enumerate() {
        let res = match (i == 0 || i == n, discrete_kappa_residual(chain, i, lambda)) {
            (true, _) => f64::NAN,
            (false, Ok(x)) => x,
            (false, Err(crate::Error::Domain(_))) => f64::INFINITY,
            (false, Err(e)) => return Err(e.into()),
        };
        let cells: Vec<String> = [u, v, res].iter().map(|&x| fmt_f64(x)).collect();
        writeln!(w, "{i},{}", cells.join(","))?;
    }
    Ok(())
}

pub fn report_to_json(report: &RelaxReport) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

pub fn report_from_json(s: &str) -> Result<RelaxReport, IoError> {
    Ok(serde_json::from_str(s)?)
}

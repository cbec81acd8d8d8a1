//! Surfaces of revolution in H^3(r) generated by curves of H^2(r).
//!
//! The generating curve lives in `{w = 0}` and is swept by one of three
//! isometry groups: elliptic rotations fixing `[e_x, e_y]`, hyperbolic
//! rotations fixing `[e_y, e_z]` and parabolic rotations fixing the
//! degenerate plane spanned by `e_x + e_y` and `e_z`.

use crate::catenary::{CatenaryType, Curve};
use crate::charts::ChartJet2;
use crate::error::{domain, usage, Result};
use crate::lorentz::{cross4, embed_h2_in_h3, LorentzVec3, LorentzVec4};

/// Relative size below which a denominator counts as touching the axis.
const AXIS_EPS: f64 = 1e-12;

/// Default finite-difference step for first derivatives, relative to `r`.
pub const DEFAULT_H_FD: f64 = 1e-4;

/// Applies the one-parameter rotation of the given type to `p4`.
pub fn rotate(ctype: CatenaryType, p4: &LorentzVec4, theta: f64) -> LorentzVec4 {
    let [x, y, z, w] = p4.0;
    match ctype {
        CatenaryType::Elliptic => {
            let (s, c) = theta.sin_cos();
            LorentzVec4::new([x, y, z * c - w * s, z * s + w * c])
        }
        CatenaryType::Hyperbolic => {
            let (s, c) = (theta.sinh(), theta.cosh());
            LorentzVec4::new([x * c + w * s, y, z, x * s + w * c])
        }
        CatenaryType::Parabolic => {
            let q = 0.5 * theta * theta;
            let d = x - y;
            LorentzVec4::new([x + q * d - theta * w, y + q * d - theta * w, z, w - theta * d])
        }
    }
}

/// Second-order jet of a generating curve in E^3_1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingJet {
    pub p: LorentzVec3,
    pub dp: LorentzVec3,
    pub ddp: LorentzVec3,
    pub r: f64,
}

impl GeneratingJet {
    pub fn new(p: LorentzVec3, dp: LorentzVec3, ddp: LorentzVec3, r: f64) -> Self {
        Self { p, dp, ddp, r }
    }

    pub fn from_chart_jet(jet: &ChartJet2) -> Self {
        let (p, dp, ddp) = jet.embed();
        Self { p, dp, ddp, r: jet.point.r }
    }

    fn speed(&self) -> Result<f64> {
        let s2 = self.dp.norm_sq();
        if s2 > 0.0 {
            Ok(s2.sqrt())
        } else {
            Err(domain("generating curve velocity is not spacelike"))
        }
    }

    /// `x(y''z' - y'z'') - y(x''z' - x'z'') + z(x''y' - x'y'')`.
    fn triple(&self) -> f64 {
        let [x, y, z] = self.p.0;
        let [dx, dy, dz] = self.dp.0;
        let [ddx, ddy, ddz] = self.ddp.0;
        x * (ddy * dz - dy * ddz) - y * (ddx * dz - dx * ddz) + z * (ddx * dy - dx * ddy)
    }

    /// Distance-like denominator and the matching numerator term.
    fn axis_terms(&self, ctype: CatenaryType) -> Result<(f64, f64)> {
        let [x, y, z] = self.p.0;
        let [dx, dy, dz] = self.dp.0;
        let (den, q) = match ctype {
            CatenaryType::Elliptic => (z, x * dy - dx * y),
            CatenaryType::Hyperbolic => (x, -(y * dz - dy * z)),
            CatenaryType::Parabolic => (x - y, (x - y) * dz - (dx - dy) * z),
        };
        if den.abs() <= AXIS_EPS * self.r {
            return Err(domain(format!("generating curve touches the {ctype} rotation axis plane")));
        }
        Ok((den, q))
    }
}

/// Mean curvature of the rotated surface from the closed forms.
pub fn mean_curvature_closed(ctype: CatenaryType, jet: &GeneratingJet) -> Result<f64> {
    let (den, q) = jet.axis_terms(ctype)?;
    let s = jet.speed()?;
    let t = jet.triple();
    let num = den * t + q * s * s;
    let h = num / (2.0 * jet.r * den * s.powi(3));
    Ok(match ctype {
        CatenaryType::Parabolic => -h,
        _ => h,
    })
}

/// Curvature a generating curve needs for its rotated surface to be minimal.
///
/// Elliptic `(x y' - x' y)/(r z |g'|)`, hyperbolic `-(y z' - y' z)/(r x |g'|)`,
/// parabolic `((x - y) z' - (x' - y') z)/(r (x - y) |g'|)`: in each case the
/// zero set of [`mean_curvature_closed`] with `kappa` the extrinsic curvature.
pub fn minimal_kappa_target(ctype: CatenaryType, jet: &GeneratingJet) -> Result<f64> {
    let (den, q) = jet.axis_terms(ctype)?;
    let s = jet.speed()?;
    Ok(q / (jet.r * den * s))
}

/// A curve of H^2(r) that can be evaluated at arbitrary parameters.
pub trait GeneratingCurve {
    fn radius(&self) -> f64;
    /// Closed parameter interval on which [`GeneratingCurve::point`] is defined.
    fn domain(&self) -> (f64, f64);
    fn point(&self, t: f64) -> Result<LorentzVec3>;
}

fn hermite5(t: f64, h: f64, a: [f64; 3], b: [f64; 3]) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    let h3 = 0.5 * t3 - t4 + 0.5 * t5;
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    h0 * a[0] + h1 * h * a[1] + h2 * h * h * a[2] + h3 * h * h * b[2] + h4 * h * b[1] + h5 * b[0]
}

/// Sampled curves are evaluated by quintic Hermite interpolation of the
/// chart coordinates using the stored velocities and accelerations, so the
/// interpolant is C^2 and accurate to sixth order in the sample spacing.
impl GeneratingCurve for Curve {
    fn radius(&self) -> f64 {
        self.r
    }

    fn domain(&self) -> (f64, f64) {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => (a.s, b.s),
            _ => (0.0, 0.0),
        }
    }

    fn point(&self, t: f64) -> Result<LorentzVec3> {
        let (lo, hi) = self.domain();
        if self.samples.len() < 2 || t < lo || t > hi {
            return Err(usage(format!("parameter {t} outside the sampled range [{lo}, {hi}]")));
        }
        let k = self.samples.partition_point(|p| p.s <= t).clamp(1, self.samples.len() - 1);
        let (a, b) = (&self.samples[k - 1], &self.samples[k]);
        let h = b.s - a.s;
        let tau = (t - a.s) / h;
        let u = hermite5(tau, h, [a.u, a.du, a.ddu], [b.u, b.du, b.ddu]);
        let v = hermite5(tau, h, [a.v, a.dv, a.ddv], [b.v, b.dv, b.ddv]);
        Ok(crate::charts::psi(u, v, self.r))
    }
}

/// Geometry of the rotated surface at one `(t, theta)` node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub s: LorentzVec4,
    pub s_t: LorentzVec4,
    pub s_theta: LorentzVec4,
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub mean_curvature: f64,
}

/// Finite-difference geometry of `S(t, theta) = rotate(gamma(t), theta)`.
///
/// First partials use centered differences with step `h_fd`; second and
/// mixed partials use step `10 h_fd`. The unit normal is the ternary
/// product of `S_t`, `S_theta` and `S` normalized in the Lorentz norm.
pub fn surface_sample(
    ctype: CatenaryType,
    curve: &dyn GeneratingCurve,
    t: f64,
    theta: f64,
    h_fd: f64,
) -> Result<SurfaceSample> {
    if !(h_fd > 0.0) {
        return Err(usage(format!("h_fd must be positive, got {h_fd}")));
    }
    let r = curve.radius();
    let h2 = 10.0 * h_fd;
    let (lo, hi) = curve.domain();
    if t - h2 < lo || t + h2 > hi {
        return Err(usage(format!("t = {t} is too close to the ends of [{lo}, {hi}]")));
    }
    let surf = |t: f64, th: f64| -> Result<LorentzVec4> {
        Ok(rotate(ctype, &embed_h2_in_h3(&curve.point(t)?), th))
    };
    let s = surf(t, theta)?;
    let s_t = (surf(t + h_fd, theta)? - surf(t - h_fd, theta)?) * (0.5 / h_fd);
    let s_theta = (surf(t, theta + h_fd)? - surf(t, theta - h_fd)?) * (0.5 / h_fd);
    let inv = 1.0 / (h2 * h2);
    let s_tt = (surf(t + h2, theta)? - s * 2.0 + surf(t - h2, theta)?) * inv;
    let s_thth = (surf(t, theta + h2)? - s * 2.0 + surf(t, theta - h2)?) * inv;
    let s_tth = (surf(t + h2, theta + h2)? - surf(t + h2, theta - h2)? - surf(t - h2, theta + h2)?
        + surf(t - h2, theta - h2)?)
        * (0.25 * inv);

    let g11 = s_t.inner(&s_t);
    let g12 = s_t.inner(&s_theta);
    let g22 = s_theta.inner(&s_theta);
    let det = g11 * g22 - g12 * g12;
    if !(det > 0.0) {
        return Err(domain(format!("degenerate first fundamental form, det g = {det}")));
    }
    let xi = cross4(&s_t, &s_theta, &s, r);
    let n2 = xi.norm_sq();
    if !(n2 > 0.0) {
        return Err(domain("surface normal is not spacelike"));
    }
    let xi = xi * (1.0 / n2.sqrt());
    let h11 = s_tt.inner(&xi);
    let h12 = s_tth.inner(&xi);
    let h22 = s_thth.inner(&xi);
    let mean_curvature = (g22 * h11 - 2.0 * g12 * h12 + g11 * h22) / (2.0 * det);
    Ok(SurfaceSample { s, s_t, s_theta, g11, g12, g22, h11, h12, h22, mean_curvature })
}

/// Mean curvature at `(t, theta)` from finite differences of the surface.
pub fn mean_curvature_numeric(
    ctype: CatenaryType,
    curve: &dyn GeneratingCurve,
    t: f64,
    theta: f64,
    h_fd: f64,
) -> Result<f64> {
    surface_sample(ctype, curve, t, theta, h_fd).map(|s| s.mean_curvature)
}

/// Vertex grid of a rotated curve: row `i` is curve sample `i`, column `j`
/// the `j`-th rotation angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub ctype: CatenaryType,
    pub r: f64,
    pub rows: usize,
    pub cols: usize,
    pub thetas: Vec<f64>,
    /// Row-major, `rows * cols` entries.
    pub vertices: Vec<LorentzVec4>,
    /// Mean curvature per vertex, same layout as `vertices`.
    pub mean_curvature: Vec<f64>,
}

impl Mesh {
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn max_abs_h(&self) -> f64 {
        self.mean_curvature.iter().fold(0.0, |m, h| m.max(h.abs()))
    }

    pub fn mean_abs_h(&self) -> f64 {
        if self.mean_curvature.is_empty() {
            return 0.0;
        }
        self.mean_curvature.iter().map(|h| h.abs()).sum::<f64>() / self.mean_curvature.len() as f64
    }
}

/// Rotates every sample of `curve` over `n_theta` equally spaced angles in
/// `[theta_min, theta_max]` (both ends included) and attaches the closed-form
/// mean curvature to each vertex.
pub fn build_mesh(
    ctype: CatenaryType,
    curve: &Curve,
    theta_min: f64,
    theta_max: f64,
    n_theta: usize,
) -> Result<Mesh> {
    if curve.is_empty() {
        return Err(usage("cannot build a mesh from an empty curve"));
    }
    if n_theta < 2 {
        return Err(usage(format!("n_theta must be at least 2, got {n_theta}")));
    }
    if !(theta_max > theta_min) || !theta_min.is_finite() || !theta_max.is_finite() {
        return Err(usage(format!("invalid theta range [{theta_min}, {theta_max}]")));
    }
    let step = (theta_max - theta_min) / (n_theta - 1) as f64;
    let thetas: Vec<f64> = (0..n_theta).map(|j| theta_min + j as f64 * step).collect();
    let rows = curve.len();
    let mut vertices = Vec::with_capacity(rows * n_theta);
    let mut mean_curvature = Vec::with_capacity(rows * n_theta);
    for i in 0..rows {
        let jet = GeneratingJet::from_chart_jet(&curve.jet(i));
        let h = mean_curvature_closed(ctype, &jet)?;
        let p4 = embed_h2_in_h3(&jet.p);
        for &th in &thetas {
            vertices.push(rotate(ctype, &p4, th));
            mean_curvature.push(h);
        }
    }
    Ok(Mesh { ctype, r: curve.r, rows, cols: n_theta, thetas, vertices, mean_curvature })
}

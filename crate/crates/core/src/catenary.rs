//! Extrinsic catenaries of H^2(r) as prescribed-curvature curves.
//!
//! A catenary of each type is a critical point of `int (f + lambda) ds`
//! where `f` is the (normalized) ambient distance to the reference plane,
//! written in semi-geodesic coordinates:
//!
//! | type       | plane          | `f(u, v)`                    |
//! |------------|----------------|------------------------------|
//! | elliptic   | `[e_x, e_y]`   | `sinh(u/r)`                  |
//! | hyperbolic | `[e_y, e_z]`   | `cosh(u/r) cosh(v/r)`        |
//! | parabolic  | light-like     | `e^{-v/r} cosh(u/r)`         |
//!
//! Critical points are exactly the regular curves whose curvature is
//! `kappa = (v' f_u cosh(u/r) - u' f_v / cosh(u/r)) / ((f + lambda) |gamma'|)`.
//! [`integrate`] realizes that law as the second-order chart system
//! `gamma'' + Gamma(gamma', gamma') = kappa |gamma'|^2 n` and steps it with
//! classical RK4 at unit speed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::charts::{
    chart_gradient, chart_inner, chart_normal, christoffel, kappa_extrinsic, psi,
    psi_partials, ChartId, ChartJet2, ChartPoint, CHART_LIMIT,
};
use crate::error::{domain, usage, Result};
use crate::lorentz::{LorentzVec3, PlaneType};

/// Weight floor (relative to `r`) below which integration stops.
pub const WEIGHT_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatenaryType {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl CatenaryType {
    pub const ALL: [CatenaryType; 3] =
        [CatenaryType::Elliptic, CatenaryType::Hyperbolic, CatenaryType::Parabolic];

    pub fn plane(self) -> PlaneType {
        match self {
            CatenaryType::Elliptic => PlaneType::SpanXY,
            CatenaryType::Hyperbolic => PlaneType::SpanYZ,
            CatenaryType::Parabolic => PlaneType::SpanLight,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CatenaryType::Elliptic => "elliptic",
            CatenaryType::Hyperbolic => "hyperbolic",
            CatenaryType::Parabolic => "parabolic",
        }
    }

    /// `(f, f_u, f_v)` of the normalized weight, without multiplier.
    pub fn weight_jet(self, u: f64, v: f64, r: f64) -> (f64, f64, f64) {
        let (cu, su) = ((u / r).cosh(), (u / r).sinh());
        match self {
            CatenaryType::Elliptic => (su, cu / r, 0.0),
            CatenaryType::Hyperbolic => {
                let (cv, sv) = ((v / r).cosh(), (v / r).sinh());
                (cu * cv, su * cv / r, cu * sv / r)
            }
            CatenaryType::Parabolic => {
                let e = (-v / r).exp();
                (e * cu, e * su / r, -e * cu / r)
            }
        }
    }

    /// Ratio between the ambient distance to the plane and the normalized
    /// weight (`r`, `r` and `1/sqrt 2`), matched to [`killing_field`].
    fn distance_scale(self, r: f64) -> f64 {
        match self {
            CatenaryType::Elliptic | CatenaryType::Hyperbolic => r,
            CatenaryType::Parabolic => FRAC_1_SQRT_2,
        }
    }
}

impl std::fmt::Display for CatenaryType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CatenaryType {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "elliptic" => Ok(CatenaryType::Elliptic),
            "hyperbolic" => Ok(CatenaryType::Hyperbolic),
            "parabolic" => Ok(CatenaryType::Parabolic),
            other => Err(usage(format!("unknown catenary type '{other}'"))),
        }
    }
}

/// `f(u, v) + lambda`; nonpositive totals are a domain error.
pub fn weight(ctype: CatenaryType, u: f64, v: f64, r: f64, lambda: f64) -> Result<f64> {
    let w = ctype.weight_jet(u, v, r).0 + lambda;
    if w > 0.0 && w.is_finite() {
        Ok(w)
    } else {
        Err(domain(format!(
            "{ctype} weight f + lambda = {w} is not positive at (u, v) = ({u}, {v})"
        )))
    }
}

/// Curvature prescribed by the catenary law at a semi-geodesic jet.
pub fn catenary_kappa(
    ctype: CatenaryType,
    u: f64,
    v: f64,
    du: f64,
    dv: f64,
    r: f64,
    lambda: f64,
) -> Result<f64> {
    let w = weight(ctype, u, v, r, lambda)?;
    let (_, f_u, f_v) = ctype.weight_jet(u, v, r);
    let c = (u / r).cosh();
    let speed = (du * du + c * c * dv * dv).sqrt();
    if !(speed > 0.0) {
        return Err(domain("curve velocity vanishes"));
    }
    Ok((dv * f_u * c - du * f_v / c) / (w * speed))
}

/// Launch data: position `(u0, v0)` and heading `theta0` measured from `d_u`
/// in the chart metric, so `u' = cos theta0`, `v' = sin theta0 / cosh(u0/r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCondition {
    pub u0: f64,
    pub v0: f64,
    pub theta0: f64,
}

impl InitialCondition {
    pub fn new(u0: f64, v0: f64, theta0: f64) -> Self {
        Self { u0, v0, theta0 }
    }
}

/// Integrator state at arc length `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

/// One sample of a curve: position, velocity and acceleration in the chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

impl CurveSample {
    pub fn state(&self) -> OdeState {
        OdeState { s: self.s, u: self.u, v: self.v, du: self.du, dv: self.dv }
    }
}

/// Why an integration run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationStatus {
    Completed,
    /// The weight dropped below the positivity floor.
    HitReferencePlane,
    /// The chart coordinates left `|u/r|, |v/r| <= 25`.
    ChartLimit,
}

/// A sampled curve in semi-geodesic coordinates with its embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub ctype: Option<CatenaryType>,
    pub chart: ChartId,
    pub r: f64,
    pub lambda: f64,
    pub samples: Vec<CurveSample>,
    pub embedded: Vec<LorentzVec3>,
    pub status: IntegrationStatus,
}

impl Curve {
    /// Samples an explicit semi-geodesic path
    /// `s -> (u, v, u', v', u'', v'')` at the given parameter values.
    pub fn from_chart_path<F>(
        ctype: Option<CatenaryType>,
        r: f64,
        lambda: f64,
        params: impl IntoIterator<Item = f64>,
        path: F,
    ) -> Self
    where
        F: Fn(f64) -> [f64; 6],
    {
        let samples: Vec<CurveSample> = params
            .into_iter()
            .map(|s| {
                let [u, v, du, dv, ddu, ddv] = path(s);
                CurveSample { s, u, v, du, dv, ddu, ddv }
            })
            .collect();
        let embedded = samples.iter().map(|p| psi(p.u, p.v, r)).collect();
        Curve {
            ctype,
            chart: ChartId::SemiGeodesic,
            r,
            lambda,
            samples,
            embedded,
            status: IntegrationStatus::Completed,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Chart jet at sample `i` using the stored acceleration.
    pub fn jet(&self, i: usize) -> ChartJet2 {
        let p = &self.samples[i];
        ChartJet2::new(ChartPoint::semi_geodesic(p.u, p.v, self.r), p.du, p.dv, p.ddu, p.ddv)
    }

    /// Chart jet at sample `i` whose acceleration is a fourth-order finite
    /// difference of the sampled velocities (centered in the interior,
    /// one-sided at the two samples nearest each end). Falls back to lower
    /// order on curves with fewer than five samples.
    ///
    /// Assumes uniform spacing in `s`.
    pub fn fd_jet(&self, i: usize) -> ChartJet2 {
        let n = self.samples.len();
        let p = &self.samples[i];
        let d = |k: usize| (self.samples[k].du, self.samples[k].dv);
        let combo = |idx: [usize; 5], w: [f64; 5], scale: f64| {
            let mut acc = (0.0, 0.0);
            for (k, c) in idx.iter().zip(w) {
                acc.0 += c * d(*k).0;
                acc.1 += c * d(*k).1;
            }
            (acc.0 / scale, acc.1 / scale)
        };
        let (ddu, ddv) = if n < 2 {
            (0.0, 0.0)
        } else {
            let h = self.samples[1].s - self.samples[0].s;
            if n >= 5 {
                let fwd0 = [-25.0, 48.0, -36.0, 16.0, -3.0];
                let fwd1 = [-3.0, -10.0, 18.0, -6.0, 1.0];
                if i == 0 {
                    combo([0, 1, 2, 3, 4], fwd0, 12.0 * h)
                } else if i == 1 {
                    combo([0, 1, 2, 3, 4], fwd1, 12.0 * h)
                } else if i + 2 < n {
                    combo([i - 2, i - 1, i, i + 1, i + 2], [1.0, -8.0, 0.0, 8.0, -1.0], 12.0 * h)
                } else if i + 2 == n {
                    combo([n - 1, n - 2, n - 3, n - 4, n - 5], fwd1, -12.0 * h)
                } else {
                    combo([n - 1, n - 2, n - 3, n - 4, n - 5], fwd0, -12.0 * h)
                }
            } else if i >= 1 && i + 1 < n {
                let (b, c) = (d(i - 1), d(i + 1));
                ((c.0 - b.0) / (2.0 * h), (c.1 - b.1) / (2.0 * h))
            } else {
                let (a, b) = if i == 0 { (d(0), d(1)) } else { (d(n - 2), d(n - 1)) };
                ((b.0 - a.0) / h, (b.1 - a.1) / h)
            }
        };
        ChartJet2::new(ChartPoint::semi_geodesic(p.u, p.v, self.r), p.du, p.dv, ddu, ddv)
    }

    /// Replaces stored accelerations by [`Curve::fd_jet`] estimates.
    pub fn with_fd_accelerations(mut self) -> Self {
        let acc: Vec<(f64, f64)> = (0..self.len())
            .map(|i| {
                let j = self.fd_jet(i);
                (j.ddu, j.ddv)
            })
            .collect();
        for (s, (ddu, ddv)) in self.samples.iter_mut().zip(acc) {
            s.ddu = ddu;
            s.ddv = ddv;
        }
        self
    }

    /// Keeps `rows` samples evenly spread over the curve (both ends kept).
    pub fn subsample(&self, rows: usize) -> Curve {
        let n = self.len();
        if rows >= n || rows < 2 {
            return self.clone();
        }
        let idx: Vec<usize> =
            (0..rows).map(|k| ((k as f64) * ((n - 1) as f64) / ((rows - 1) as f64)).round() as usize).collect();
        Curve {
            samples: idx.iter().map(|&i| self.samples[i]).collect(),
            embedded: idx.iter().map(|&i| self.embedded[i]).collect(),
            ..self.clone()
        }
    }

    /// Signed curvature at every sample from the stored jets.
    pub fn kappa(&self) -> Result<Vec<f64>> {
        (0..self.len()).map(|i| crate::charts::kappa_semigeo(&self.jet(i))).collect()
    }
}

fn ode_rhs(ctype: CatenaryType, r: f64, lambda: f64, y: [f64; 4]) -> Result<[f64; 4]> {
    let [u, v, du, dv] = y;
    let kappa = catenary_kappa(ctype, u, v, du, dv, r, lambda)?;
    let c = christoffel(&ChartPoint::semi_geodesic(u, v, r));
    let cu = (u / r).cosh();
    let speed = (du * du + cu * cu * dv * dv).sqrt();
    // Normal used by the curvature convention: (v' cosh, -u'/cosh) / |gamma'|.
    let ddu = -c.g122 * dv * dv + kappa * speed * dv * cu;
    let ddv = -2.0 * c.g212 * du * dv - kappa * speed * du / cu;
    Ok([du, dv, ddu, ddv])
}

fn rk4_step(ctype: CatenaryType, r: f64, lambda: f64, y: [f64; 4], h: f64) -> Result<[f64; 4]> {
    let axpy = |a: [f64; 4], k: [f64; 4], t: f64| -> [f64; 4] { std::array::from_fn(|i| a[i] + t * k[i]) };
    let k1 = ode_rhs(ctype, r, lambda, y)?;
    let k2 = ode_rhs(ctype, r, lambda, axpy(y, k1, h / 2.0))?;
    let k3 = ode_rhs(ctype, r, lambda, axpy(y, k2, h / 2.0))?;
    let k4 = ode_rhs(ctype, r, lambda, axpy(y, k3, h))?;
    Ok(std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])))
}

/// Integrates the catenary law from `ic` over arc length `[0, s_max]`.
///
/// The step is adjusted to `s_max / round(s_max / step)` so the last sample
/// lands on `s_max`. Velocities are renormalized to unit chart speed after
/// every step. Integration ends early, with the status recorded on the
/// returned curve, if the weight falls below `WEIGHT_FLOOR * r` or the chart
/// limits are exceeded.
pub fn integrate(
    ctype: CatenaryType,
    ic: InitialCondition,
    r: f64,
    lambda: f64,
    s_max: f64,
    step: f64,
) -> Result<Curve> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(usage(format!("r must be positive, got {r}")));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(usage(format!("step must be positive, got {step}")));
    }
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(usage(format!("s_max must be positive, got {s_max}")));
    }
    ChartPoint::semi_geodesic(ic.u0, ic.v0, r).validate()?;
    let w0 = weight(ctype, ic.u0, ic.v0, r, lambda)?;
    if w0 < WEIGHT_FLOOR * r {
        return Err(domain(format!("initial weight {w0} is below the positivity floor")));
    }

    let n_steps = ((s_max / step).round() as usize).max(1);
    let h = s_max / n_steps as f64;
    let mut y = [ic.u0, ic.v0, ic.theta0.cos(), ic.theta0.sin() / (ic.u0 / r).cosh()];
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut status = IntegrationStatus::Completed;

    let push = |samples: &mut Vec<CurveSample>, s: f64, y: [f64; 4]| -> Result<()> {
        let acc = ode_rhs(ctype, r, lambda, y)?;
        samples.push(CurveSample { s, u: y[0], v: y[1], du: y[2], dv: y[3], ddu: acc[2], ddv: acc[3] });
        Ok(())
    };
    push(&mut samples, 0.0, y)?;

    for k in 1..=n_steps {
        let next = match rk4_step(ctype, r, lambda, y, h) {
            Ok(next) => next,
            Err(_) => {
                status = IntegrationStatus::HitReferencePlane;
                break;
            }
        };
        let point = ChartPoint::semi_geodesic(next[0], next[1], r);
        if point.validate().is_err() {
            status = IntegrationStatus::ChartLimit;
            break;
        }
        match weight(ctype, next[0], next[1], r, lambda) {
            Ok(w) if w >= WEIGHT_FLOOR * r => {}
            _ => {
                status = IntegrationStatus::HitReferencePlane;
                break;
            }
        }
        let cu = (next[0] / r).cosh();
        let speed = (next[2] * next[2] + cu * cu * next[3] * next[3]).sqrt();
        y = [next[0], next[1], next[2] / speed, next[3] / speed];
        push(&mut samples, k as f64 * h, y)?;
    }

    let embedded = samples.iter().map(|p| psi(p.u, p.v, r)).collect();
    Ok(Curve { ctype: Some(ctype), chart: ChartId::SemiGeodesic, r, lambda, samples, embedded, status })
}

/// `(1/2) sinh(2u/r) cos theta`, with `theta` the angle to the `v`-curves.
pub fn clairaut(u: f64, theta: f64, r: f64) -> f64 {
    0.5 * (2.0 * u / r).sinh() * theta.cos()
}

/// Angle between a semi-geodesic velocity and the `v`-coordinate curves.
pub fn angle_to_v_curves(u: f64, du: f64, dv: f64, r: f64) -> f64 {
    let c = (u / r).cosh();
    let speed = (du * du + c * c * dv * dv).sqrt();
    (dv * c / speed).clamp(-1.0, 1.0).acos()
}

/// Cosine of [`angle_to_v_curves`], computed without the round trip
/// through `acos`, which loses all relative precision when the curve is
/// nearly orthogonal to the `v`-curves.
pub fn cos_angle_to_v_curves(u: f64, du: f64, dv: f64, r: f64) -> f64 {
    let c = (u / r).cosh();
    dv * c / (du * du + c * c * dv * dv).sqrt()
}

/// [`clairaut`] evaluated from a velocity.
pub fn clairaut_from_velocity(u: f64, du: f64, dv: f64, r: f64) -> f64 {
    0.5 * (2.0 * u / r).sinh() * cos_angle_to_v_curves(u, du, dv, r)
}

/// First integral `d L / d v'` of the elliptic Lagrangian with multiplier:
/// `(sinh(u/r) + lambda) cosh(u/r) cos theta`. Reduces to [`clairaut`] at
/// `lambda = 0`.
pub fn elliptic_first_integral(u: f64, du: f64, dv: f64, r: f64, lambda: f64) -> f64 {
    let cos = cos_angle_to_v_curves(u, du, dv, r);
    clairaut_from_velocity(u, du, dv, r) + lambda * (u / r).cosh() * cos
}

/// Constant translational Killing field of E^3_1 whose tangent part is the
/// gradient of the distance to the type's reference plane.
pub fn killing_field(ctype: CatenaryType, _p: &LorentzVec3, r: f64) -> LorentzVec3 {
    match ctype {
        CatenaryType::Elliptic => LorentzVec3::new([0.0, 0.0, 1.0]),
        CatenaryType::Hyperbolic => LorentzVec3::new([-1.0, 0.0, 0.0]),
        CatenaryType::Parabolic => LorentzVec3::new([1.0, 1.0, 0.0]) * (-1.0 / (r * 2f64.sqrt())),
    }
}

/// Tangential projection `X + <X, p>_1 p / r^2` onto `T_p H^2(r)`.
pub fn tangent_part(x: &LorentzVec3, p: &LorentzVec3, r: f64) -> LorentzVec3 {
    *x + *p * (x.inner(p) / (r * r))
}

/// Defect of the Killing-field law, `kappa + <n, X> / (dist + lambda)`,
/// for a semi-geodesic jet. Vanishes exactly along catenaries of `ctype`
/// with multiplier `lambda`.
pub fn killing_residual(ctype: CatenaryType, jet: &ChartJet2, lambda: f64) -> Result<f64> {
    if jet.point.chart != ChartId::SemiGeodesic {
        return Err(usage("killing_residual needs a semi-geodesic jet"));
    }
    let ChartPoint { u, v, r, .. } = jet.point;
    let (p, dp, ddp) = jet.embed();
    let kappa = kappa_extrinsic(&p, &dp, &ddp, r)?;
    let (n_u, n_v) = chart_normal(jet)?;
    let (pu, pv) = psi_partials(u, v, r);
    let normal = pu * n_u + pv * n_v;
    let w = weight(ctype, u, v, r, lambda)?;
    let dist = ctype.distance_scale(r) * w;
    Ok(kappa + normal.inner(&killing_field(ctype, &p, r)) / dist)
}

/// Compactly supported chart perturbation `b(s) (du, dv)` with
/// `b(s) = sin^2(pi (s - start) / (end - start))` on `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub start: f64,
    pub end: f64,
    pub du: f64,
    pub dv: f64,
}

impl Bump {
    /// `(b(s), b'(s))`.
    pub fn profile(&self, s: f64) -> (f64, f64) {
        if s <= self.start || s >= self.end {
            return (0.0, 0.0);
        }
        let k = PI / (self.end - self.start);
        let a = k * (s - self.start);
        (a.sin().powi(2), k * (2.0 * a).sin())
    }
}

fn functional_density(ctype: CatenaryType, r: f64, lambda: f64, u: f64, v: f64, du: f64, dv: f64) -> Result<f64> {
    let w = weight(ctype, u, v, r, lambda)?;
    let c = (u / r).cosh();
    Ok(w * (du * du + c * c * dv * dv).sqrt())
}

/// `W[gamma + eps * bump] - W[gamma]` for the curve's weight functional.
///
/// Both integrals use composite Simpson quadrature on the curve's own
/// (uniform) sample grid restricted to the bump support, so quadrature
/// error largely cancels in the difference. On catenaries the result is
/// `O(eps^2)`; on generic curves `O(eps)`.
pub fn el_first_variation(curve: &Curve, bump: &Bump, eps: f64) -> Result<f64> {
    let ctype = curve.ctype.ok_or_else(|| usage("first variation needs a curve with a catenary type"))?;
    if !(eps >= 0.0) {
        return Err(usage(format!("eps must be nonnegative, got {eps}")));
    }
    let n = curve.len();
    if n < 3 {
        return Err(usage("curve needs at least three samples"));
    }
    let s0 = curve.samples[0].s;
    let h = curve.samples[1].s - s0;
    let s_end = curve.samples[n - 1].s;
    if !(bump.start >= s0 && bump.end <= s_end && bump.end > bump.start) {
        return Err(usage("bump support must lie inside the curve"));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    let lo = (((bump.start - s0) / h).floor() as usize).min(n - 1);
    let mut hi = (((bump.end - s0) / h).ceil() as usize).min(n - 1);
    if (hi - lo) % 2 == 1 {
        if hi + 1 < n {
            hi += 1;
        } else if lo > 0 {
            // Extending downward keeps the range within the samples.
            return el_simpson(curve, ctype, bump, eps, lo - 1, hi, h);
        }
    }
    el_simpson(curve, ctype, bump, eps, lo, hi, h)
}

fn el_simpson(curve: &Curve, ctype: CatenaryType, bump: &Bump, eps: f64, lo: usize, hi: usize, h: f64) -> Result<f64> {
    let (r, lambda) = (curve.r, curve.lambda);
    let mut total = 0.0;
    for i in lo..=hi {
        let p = &curve.samples[i];
        let (b, db) = bump.profile(p.s);
        let base = functional_density(ctype, r, lambda, p.u, p.v, p.du, p.dv)?;
        let moved = functional_density(
            ctype,
            r,
            lambda,
            p.u + eps * b * bump.du,
            p.v + eps * b * bump.dv,
            p.du + eps * db * bump.du,
            p.dv + eps * db * bump.dv,
        )?;
        let coeff = if i == lo || i == hi {
            1.0
        } else if (i - lo) % 2 == 1 {
            4.0
        } else {
            2.0
        };
        total += coeff * (moved - base);
    }
    Ok(total * h / 3.0)
}

/// Curvature prescribed for a horocatenary at a horo-geodesic jet:
/// `-<n, grad d_h> / d_h` with `d_h = u e^{-v/r}`.
pub fn horocatenary_kappa(u: f64, v: f64, du: f64, dv: f64, r: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(domain(format!("horocycle distance needs u > 0, got u = {u}")));
    }
    let point = ChartPoint::horo_geodesic(u, v, r);
    let jet = ChartJet2::new(point, du, dv, 0.0, 0.0);
    let e = (-v / r).exp();
    let f = u * e;
    let grad = chart_gradient(e, -u / r * e, &point);
    let normal = chart_normal(&jet)?;
    Ok(-chart_inner(&point, normal, grad) / f)
}

/// Checks that `(u, v)` stays inside the chart guard.
pub fn within_chart(u: f64, v: f64, r: f64) -> bool {
    (u / r).abs() <= CHART_LIMIT && (v / r).abs() <= CHART_LIMIT
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        let r = 1.3;
        let u = r * 2f64.asinh();
        assert!((weight(CatenaryType::Elliptic, u, 0.4, r, 0.0).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(weight(CatenaryType::Hyperbolic, 0.0, 0.0, r, 0.0).unwrap(), 1.0);
        assert_eq!(weight(CatenaryType::Parabolic, 0.0, 0.0, r, 0.0).unwrap(), 1.0);
        assert!(matches!(
            weight(CatenaryType::Elliptic, -0.1, 0.0, r, 0.0),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn catenary_kappa_examples() {
        let r: f64 = 0.9;
        let u: f64 = 0.7;
        let c = (u / r).cosh();
        let k = catenary_kappa(CatenaryType::Elliptic, u, 0.2, 0.0, 1.0 / c, r, 0.0).unwrap();
        assert!((k - c / (r * (u / r).sinh())).abs() < 1e-14);
        let k = catenary_kappa(CatenaryType::Hyperbolic, u, 0.0, 1.0, 0.0, r, 0.0).unwrap();
        assert_eq!(k, 0.0);
        let k = catenary_kappa(CatenaryType::Parabolic, u, 0.3, 0.0, 1.0 / c, r, 0.0).unwrap();
        assert!((k - (u / r).tanh() / r).abs() < 1e-14);
    }

    #[test]
    fn clairaut_examples() {
        assert!(clairaut(1.7, PI / 2.0, 1.0).abs() < 1e-14);
        assert_eq!(clairaut(0.0, 0.3, 1.0), 0.0);
    }

    #[test]
    fn killing_field_examples() {
        let p = psi(0.3, 0.1, 1.0);
        assert_eq!(killing_field(CatenaryType::Elliptic, &p, 1.0), LorentzVec3::new([0.0, 0.0, 1.0]));
        assert_eq!(killing_field(CatenaryType::Hyperbolic, &p, 1.0), LorentzVec3::new([-1.0, 0.0, 0.0]));
        let z = killing_field(CatenaryType::Parabolic, &p, 2.0);
        let s = -1.0 / (2.0 * 2f64.sqrt());
        assert!((z - LorentzVec3::new([s, s, 0.0])).max_abs() < 1e-16);
    }

    #[test]
    fn integrate_rejects_bad_input() {
        let ic = InitialCondition::new(1.0, 0.0, 0.3);
        assert!(matches!(
            integrate(CatenaryType::Elliptic, ic, 1.0, 0.0, 1.0, 0.0),
            Err(crate::Error::Usage(_))
        ));
        let below = InitialCondition::new(-0.5, 0.0, 0.3);
        assert!(matches!(
            integrate(CatenaryType::Elliptic, below, 1.0, 0.0, 1.0, 1e-2),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn integration_layout() {
        let ic = InitialCondition::new(1.0, 0.0, PI / 6.0);
        let curve = integrate(CatenaryType::Elliptic, ic, 1.0, 0.0, 5.0, 1e-3).unwrap();
        assert_eq!(curve.len(), 5001);
        assert_eq!(curve.status, IntegrationStatus::Completed);
        assert!(curve.samples.windows(2).all(|w| w[1].s > w[0].s));
        assert_eq!(curve.samples.last().unwrap().s, 5.0);
    }

    #[test]
    fn elliptic_descent_stops_at_reference_plane() {
        // Heading straight at the plane u = 0 along a geodesic.
        let ic = InitialCondition::new(0.5, 0.0, PI);
        let curve = integrate(CatenaryType::Elliptic, ic, 1.0, 0.0, 2.0, 1e-3).unwrap();
        assert_eq!(curve.status, IntegrationStatus::HitReferencePlane);
        assert!(curve.samples.iter().all(|p| p.u > 0.0));
    }

    #[test]
    fn horocatenary_needs_positive_u() {
        assert!(horocatenary_kappa(0.0, 0.0, 1.0, 0.0, 1.0).is_err());
        assert!(horocatenary_kappa(0.5, 0.0, 1.0, 0.0, 1.0).is_ok());
    }

    #[test]
    fn zero_eps_variation_vanishes() {
        let ic = InitialCondition::new(1.0, 0.0, 0.4);
        let curve = integrate(CatenaryType::Hyperbolic, ic, 1.0, 0.0, 1.0, 1e-2).unwrap();
        let bump = Bump { start: 0.2, end: 0.8, du: 1.0, dv: 0.0 };
        assert_eq!(el_first_variation(&curve, &bump, 0.0).unwrap(), 0.0);
    }
}

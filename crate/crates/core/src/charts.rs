//! Coordinate charts of the hyperbolic plane H^2(r).
//!
//! Two orthogonal charts are provided:
//!
//! * semi-geodesic coordinates `psi(u, v)`, metric `du^2 + cosh^2(u/r) dv^2`,
//!   where the `u`-curves are geodesics orthogonal to the reference geodesic
//!   `l(v) = psi(0, v)`;
//! * horo-geodesic coordinates `phi(u, v)`, metric `e^{-2v/r} du^2 + dv^2`,
//!   where the `u`-curves are horocycles and the `v`-curves geodesics.
//!
//! Signed curvature follows one convention throughout the crate: the unit
//! normal of a curve is `gamma x_1 gamma' / (r |gamma'|)`, which makes
//! [`kappa_extrinsic`] the reference value. The chart formulas are written so
//! they agree with it, and the chart normal returned by [`chart_normal`] is
//! the opposite vector (the one rotated by +90 degrees from the velocity in the
//! oriented frame `(d_u, d_v)`). With that pairing the catenary law reads
//! `kappa = -<n, grad f> / f`.

use crate::error::{domain, usage, Result};
use crate::lorentz::{cross3, LorentzVec3};

/// Chart domain guard: `|u/r|` and `|v/r|` stay below this bound.
pub const CHART_LIMIT: f64 = 25.0;

/// Which parametrization a pair `(u, v)` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartId {
    SemiGeodesic,
    HoroGeodesic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub u: f64,
    pub v: f64,
    pub r: f64,
}

impl ChartPoint {
    pub fn semi_geodesic(u: f64, v: f64, r: f64) -> Self {
        Self { chart: ChartId::SemiGeodesic, u, v, r }
    }

    pub fn horo_geodesic(u: f64, v: f64, r: f64) -> Self {
        Self { chart: ChartId::HoroGeodesic, u, v, r }
    }

    /// Rejects nonpositive radii and coordinates beyond [`CHART_LIMIT`].
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0) {
            return Err(usage(format!("curvature radius must be positive, got {}", self.r)));
        }
        if !(self.u / self.r).is_finite()
            || !(self.v / self.r).is_finite()
            || (self.u / self.r).abs() > CHART_LIMIT
            || (self.v / self.r).abs() > CHART_LIMIT
        {
            return Err(domain(format!(
                "chart point (u, v) = ({}, {}) outside |u/r|, |v/r| <= {CHART_LIMIT}",
                self.u, self.v
            )));
        }
        Ok(())
    }

    /// Position on the hyperboloid.
    pub fn embed(&self) -> LorentzVec3 {
        match self.chart {
            ChartId::SemiGeodesic => psi(self.u, self.v, self.r),
            ChartId::HoroGeodesic => phi(self.u, self.v, self.r),
        }
    }
}

/// Second-order jet `(u, v, u', v', u'', v'')` of a curve in a chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartJet2 {
    pub point: ChartPoint,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

impl ChartJet2 {
    pub fn new(point: ChartPoint, du: f64, dv: f64, ddu: f64, ddv: f64) -> Self {
        Self { point, du, dv, ddu, ddv }
    }

    /// `|gamma'|` in the chart metric.
    pub fn speed(&self) -> f64 {
        let m = metric(&self.point);
        (m.e * self.du * self.du + 2.0 * m.f * self.du * self.dv + m.g * self.dv * self.dv).sqrt()
    }

    /// Ambient jet `(gamma, gamma', gamma'')` in E^3_1.
    pub fn embed(&self) -> (LorentzVec3, LorentzVec3, LorentzVec3) {
        let ChartPoint { u, v, r, .. } = self.point;
        let (p, pu, pv, puu, puv, pvv) = match self.point.chart {
            ChartId::SemiGeodesic => {
                let (pu, pv) = psi_partials(u, v, r);
                let (puu, puv, pvv) = psi_second_partials(u, v, r);
                (psi(u, v, r), pu, pv, puu, puv, pvv)
            }
            ChartId::HoroGeodesic => {
                let (pu, pv) = phi_partials(u, v, r);
                let (puu, puv, pvv) = phi_second_partials(u, v, r);
                (phi(u, v, r), pu, pv, puu, puv, pvv)
            }
        };
        let dp = pu * self.du + pv * self.dv;
        let ddp = puu * (self.du * self.du)
            + puv * (2.0 * self.du * self.dv)
            + pvv * (self.dv * self.dv)
            + pu * self.ddu
            + pv * self.ddv;
        (p, dp, ddp)
    }
}

/// First fundamental form `E du^2 + 2F du dv + G dv^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCoeffs {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// Christoffel symbols `Gamma^k_ij`, named `g<k><i><j>`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChristoffelSet {
    pub g111: f64,
    pub g112: f64,
    pub g122: f64,
    pub g211: f64,
    pub g212: f64,
    pub g222: f64,
}

/// Semi-geodesic parametrization
/// `psi(u, v) = r (cosh(u/r) cosh(v/r), cosh(u/r) sinh(v/r), sinh(u/r))`.
pub fn psi(u: f64, v: f64, r: f64) -> LorentzVec3 {
    let (cu, su) = ((u / r).cosh(), (u / r).sinh());
    let (cv, sv) = ((v / r).cosh(), (v / r).sinh());
    LorentzVec3::new([r * cu * cv, r * cu * sv, r * su])
}

/// `(psi_u, psi_v)`.
pub fn psi_partials(u: f64, v: f64, r: f64) -> (LorentzVec3, LorentzVec3) {
    let (cu, su) = ((u / r).cosh(), (u / r).sinh());
    let (cv, sv) = ((v / r).cosh(), (v / r).sinh());
    (
        LorentzVec3::new([su * cv, su * sv, cu]),
        LorentzVec3::new([cu * sv, cu * cv, 0.0]),
    )
}

/// `(psi_uu, psi_uv, psi_vv)`.
pub fn psi_second_partials(u: f64, v: f64, r: f64) -> (LorentzVec3, LorentzVec3, LorentzVec3) {
    let (cu, su) = ((u / r).cosh(), (u / r).sinh());
    let (cv, sv) = ((v / r).cosh(), (v / r).sinh());
    (
        LorentzVec3::new([cu * cv, cu * sv, su]) * (1.0 / r),
        LorentzVec3::new([su * sv, su * cv, 0.0]) * (1.0 / r),
        LorentzVec3::new([cu * cv, cu * sv, 0.0]) * (1.0 / r),
    )
}

/// Horo-geodesic parametrization `phi(u, v) = L_{u/r}(l(v))`.
pub fn phi(u: f64, v: f64, r: f64) -> LorentzVec3 {
    let e = (-v / r).exp();
    let q = u * u / (2.0 * r * r) * e;
    LorentzVec3::new([
        r * ((v / r).cosh() + q),
        r * ((v / r).sinh() + q),
        u * e,
    ])
}

/// `(phi_u, phi_v)`.
pub fn phi_partials(u: f64, v: f64, r: f64) -> (LorentzVec3, LorentzVec3) {
    let e = (-v / r).exp();
    let q = u * u / (2.0 * r * r) * e;
    (
        LorentzVec3::new([u / r, u / r, 1.0]) * e,
        LorentzVec3::new([(v / r).sinh() - q, (v / r).cosh() - q, -u / r * e]),
    )
}

/// `(phi_uu, phi_uv, phi_vv)`; note `phi_vv = phi / r^2`.
pub fn phi_second_partials(u: f64, v: f64, r: f64) -> (LorentzVec3, LorentzVec3, LorentzVec3) {
    let e = (-v / r).exp();
    (
        LorentzVec3::new([1.0, 1.0, 0.0]) * (e / r),
        LorentzVec3::new([u / r, u / r, 1.0]) * (-e / r),
        phi(u, v, r) * (1.0 / (r * r)),
    )
}

pub fn metric(point: &ChartPoint) -> MetricCoeffs {
    let ChartPoint { u, v, r, .. } = *point;
    match point.chart {
        ChartId::SemiGeodesic => {
            let c = (u / r).cosh();
            MetricCoeffs { e: 1.0, f: 0.0, g: c * c }
        }
        ChartId::HoroGeodesic => MetricCoeffs { e: (-2.0 * v / r).exp(), f: 0.0, g: 1.0 },
    }
}

pub fn christoffel(point: &ChartPoint) -> ChristoffelSet {
    let ChartPoint { u, v, r, .. } = *point;
    match point.chart {
        ChartId::SemiGeodesic => ChristoffelSet {
            g122: -(u / r).sinh() * (u / r).cosh() / r,
            g212: (u / r).tanh() / r,
            ..Default::default()
        },
        ChartId::HoroGeodesic => ChristoffelSet {
            g211: (-2.0 * v / r).exp() / r,
            g112: -1.0 / r,
            ..Default::default()
        },
    }
}

fn regular_speed(jet: &ChartJet2) -> Result<f64> {
    let speed = jet.speed();
    if speed > 1e-300 && speed.is_finite() {
        Ok(speed)
    } else {
        Err(domain("curve velocity vanishes"))
    }
}

fn kappa_from_christoffel(jet: &ChartJet2) -> f64 {
    let m = metric(&jet.point);
    let c = christoffel(&jet.point);
    let (du, dv) = (jet.du, jet.dv);
    let speed = jet.speed();
    let bracket = c.g122 * dv.powi(3) - c.g211 * du.powi(3)
        - (2.0 * c.g212 - c.g111) * du * du * dv
        + (2.0 * c.g112 - c.g222) * du * dv * dv
        + jet.ddu * dv
        - du * jet.ddv;
    (m.e * m.g - m.f * m.f).sqrt() * bracket / speed.powi(3)
}

/// Signed geodesic curvature of a curve given by its semi-geodesic jet.
///
/// Evaluates the general Christoffel-symbol expression for the metric
/// `du^2 + cosh^2(u/r) dv^2`, including the `(u'' v' - u' v'')` term.
pub fn kappa_semigeo(jet: &ChartJet2) -> Result<f64> {
    if jet.point.chart != ChartId::SemiGeodesic {
        return Err(usage("kappa_semigeo needs a semi-geodesic jet"));
    }
    regular_speed(jet)?;
    Ok(kappa_from_christoffel(jet))
}

/// Signed geodesic curvature of a curve given by its horo-geodesic jet.
pub fn kappa_horo(jet: &ChartJet2) -> Result<f64> {
    if jet.point.chart != ChartId::HoroGeodesic {
        return Err(usage("kappa_horo needs a horo-geodesic jet"));
    }
    regular_speed(jet)?;
    let ChartJet2 { du, dv, ddu, ddv, .. } = *jet;
    let (v, r) = (jet.point.v, jet.point.r);
    let e2 = (-2.0 * v / r).exp();
    let num = ddu * dv - du * (ddv + du * du / r * e2 + 2.0 * dv * dv / r);
    let den = (v / r).exp() * (e2 * du * du + dv * dv).powf(1.5);
    Ok(num / den)
}

/// Curvature of a chart jet in whichever chart it is expressed.
pub fn kappa_intrinsic(jet: &ChartJet2) -> Result<f64> {
    match jet.point.chart {
        ChartId::SemiGeodesic => kappa_semigeo(jet),
        ChartId::HoroGeodesic => kappa_horo(jet),
    }
}

/// Curvature of a curve of H^2(r) from its ambient jet,
/// `kappa = <gamma x_1 gamma', gamma''>_1 / (r |gamma'|^3)`.
pub fn kappa_extrinsic(p: &LorentzVec3, dp: &LorentzVec3, ddp: &LorentzVec3, r: f64) -> Result<f64> {
    let speed_sq = dp.norm_sq();
    if !(speed_sq > 0.0) {
        return Err(domain(format!(
            "velocity is not spacelike (<dp,dp>_1 = {speed_sq}); curve is not regular in H^2"
        )));
    }
    Ok(cross3(p, dp).inner(ddp) / (r * speed_sq.powf(1.5)))
}

/// Lightlike rotation `L_theta` of E^3_1 with axis `(1, 1, 0)`.
pub fn lightlike_rotation(theta: f64, p: &LorentzVec3) -> LorentzVec3 {
    let h = theta * theta / 2.0;
    let [x, y, z] = p.0;
    LorentzVec3::new([
        (1.0 + h) * x - h * y + theta * z,
        h * x + (1.0 - h) * y + theta * z,
        theta * x - theta * y + z,
    ])
}

/// Length of the horocycle arc from `phi(u, v)` to the reference geodesic,
/// `u e^{-v/r}`.
pub fn horocycle_distance(u: f64, v: f64, r: f64) -> f64 {
    u * (-v / r).exp()
}

/// Chart components `(n_u, n_v)` of the unit normal
/// `(1/|gamma'|)(-v' sqrt(G/E) d_u + u' sqrt(E/G) d_v)`.
///
/// For the semi-geodesic chart this is `(-v' cosh(u/r), u'/cosh(u/r)) / |gamma'|`.
pub fn chart_normal(jet: &ChartJet2) -> Result<(f64, f64)> {
    let speed = regular_speed(jet)?;
    let m = metric(&jet.point);
    let ratio = (m.g / m.e).sqrt();
    Ok((-jet.dv * ratio / speed, jet.du / ratio / speed))
}

/// Gradient `(f_u / E, f_v / G)` of a function with partials `(f_u, f_v)`.
pub fn chart_gradient(f_u: f64, f_v: f64, point: &ChartPoint) -> (f64, f64) {
    let m = metric(point);
    (f_u / m.e, f_v / m.g)
}

/// Metric inner product of two chart vectors at `point`.
pub fn chart_inner(point: &ChartPoint, a: (f64, f64), b: (f64, f64)) -> f64 {
    let m = metric(point);
    m.e * a.0 * b.0 + m.f * (a.0 * b.1 + a.1 * b.0) + m.g * a.1 * b.1
}

/// Horo-geodesic coordinates of a point of H^2(r).
///
/// Inverts `phi` in closed form: `x - y = r e^{-v/r}` and `z = u e^{-v/r}`.
pub fn horo_coords(p: &LorentzVec3, r: f64) -> Result<(f64, f64)> {
    let w = p.x() - p.y();
    if !(w > 0.0) {
        return Err(domain("point is not on the upper sheet (x - y <= 0)"));
    }
    Ok((r * p.z() / w, -r * (w / r).ln()))
}

/// Re-expresses an ambient jet of a curve in H^2(r) in horo-geodesic
/// coordinates.
pub fn horo_jet_from_ambient(
    p: &LorentzVec3,
    dp: &LorentzVec3,
    ddp: &LorentzVec3,
    r: f64,
) -> Result<ChartJet2> {
    let (u, v) = horo_coords(p, r)?;
    let (w, dw, ddw) = (p.x() - p.y(), dp.x() - dp.y(), ddp.x() - ddp.y());
    let (z, dz, ddz) = (p.z(), dp.z(), ddp.z());
    let dv = -r * dw / w;
    let ddv = -r * (ddw * w - dw * dw) / (w * w);
    // u = r z / w
    let du = r * (dz * w - z * dw) / (w * w);
    let ddu = r * ((ddz * w - z * ddw) / (w * w) - 2.0 * dw * (dz * w - z * dw) / (w * w * w));
    Ok(ChartJet2::new(ChartPoint::horo_geodesic(u, v, r), du, dv, ddu, ddv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::on_hyperboloid;

    #[test]
    fn psi_examples() {
        assert_eq!(psi(0.0, 0.0, 1.0), LorentzVec3::new([1.0, 0.0, 0.0]));
        let r: f64 = 1.5;
        let v = 0.8;
        let p = psi(0.0, v, r);
        let l = LorentzVec3::new([r * (v / r).cosh(), r * (v / r).sinh(), 0.0]);
        assert!((p - l).max_abs() < 1e-15);
        assert!(on_hyperboloid(&psi(1.3, -0.7, 2.0), 2.0, 1e-12));
    }

    #[test]
    fn psi_partials_at_origin() {
        let (pu, pv) = psi_partials(0.0, 0.0, 1.0);
        assert_eq!(pu, LorentzVec3::new([0.0, 0.0, 1.0]));
        assert_eq!(pv, LorentzVec3::new([0.0, 1.0, 0.0]));
    }

    #[test]
    fn metric_on_axes() {
        let m = metric(&ChartPoint::semi_geodesic(0.0, 0.7, 1.3));
        assert_eq!((m.e, m.f, m.g), (1.0, 0.0, 1.0));
        let m = metric(&ChartPoint::horo_geodesic(0.4, 0.0, 1.3));
        assert_eq!((m.e, m.f, m.g), (1.0, 0.0, 1.0));
    }

    #[test]
    fn christoffel_examples() {
        let c = christoffel(&ChartPoint::semi_geodesic(0.0, 2.0, 1.0));
        assert_eq!(c, ChristoffelSet::default());
        for (u, v) in [(0.3, -1.0), (2.0, 0.5)] {
            let c = christoffel(&ChartPoint::horo_geodesic(u, v, 2.0));
            assert_eq!(c.g112, -0.5);
        }
    }

    #[test]
    fn semigeo_curvature_of_coordinate_curves() {
        let r = 1.2;
        let u0 = 0.9;
        let geodesic = ChartJet2::new(ChartPoint::semi_geodesic(u0, 0.3, r), 1.0, 0.0, 0.0, 0.0);
        assert_eq!(kappa_semigeo(&geodesic).unwrap(), 0.0);
        let circle = ChartJet2::new(
            ChartPoint::semi_geodesic(u0, 0.3, r),
            0.0,
            1.0 / (u0 / r).cosh(),
            0.0,
            0.0,
        );
        let expected = -(u0 / r).tanh() / r;
        assert!((kappa_semigeo(&circle).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn horo_curvature_of_coordinate_curves() {
        let r = 0.8;
        let v0 = 0.35;
        let geodesic = ChartJet2::new(ChartPoint::horo_geodesic(0.4, v0, r), 0.0, 1.0, 0.0, 0.0);
        assert_eq!(kappa_horo(&geodesic).unwrap(), 0.0);
        let horocycle = ChartJet2::new(
            ChartPoint::horo_geodesic(0.4, v0, r),
            (v0 / r).exp(),
            0.0,
            0.0,
            0.0,
        );
        assert!((kappa_horo(&horocycle).unwrap().abs() - 1.0 / r).abs() < 1e-14);
    }

    #[test]
    fn zero_velocity_is_a_domain_error() {
        let jet = ChartJet2::new(ChartPoint::semi_geodesic(1.0, 0.0, 1.0), 0.0, 0.0, 1.0, 0.0);
        assert!(matches!(kappa_semigeo(&jet), Err(crate::Error::Domain(_))));
        assert!(matches!(chart_normal(&jet), Err(crate::Error::Domain(_))));
        let p = psi(1.0, 0.0, 1.0);
        let lightlike = LorentzVec3::new([1.0, 1.0, 0.0]);
        assert!(kappa_extrinsic(&p, &lightlike, &lightlike, 1.0).is_err());
    }

    #[test]
    fn wrong_chart_is_a_usage_error() {
        let jet = ChartJet2::new(ChartPoint::horo_geodesic(1.0, 0.0, 1.0), 1.0, 0.0, 0.0, 0.0);
        assert!(matches!(kappa_semigeo(&jet), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn extrinsic_curvature_examples() {
        let r: f64 = 1.4;
        // Along the reference geodesic l(v) at unit speed.
        let v = 0.3;
        let p = LorentzVec3::new([r * (v / r).cosh(), r * (v / r).sinh(), 0.0]);
        let dp = LorentzVec3::new([(v / r).sinh(), (v / r).cosh(), 0.0]);
        let ddp = p * (1.0 / (r * r));
        assert!(kappa_extrinsic(&p, &dp, &ddp, r).unwrap().abs() < 1e-15);
        // Scale invariance under t -> 2t.
        let jet = ChartJet2::new(ChartPoint::semi_geodesic(0.7, 0.1, r), 0.3, 0.5, -0.2, 0.4);
        let (p, dp, ddp) = jet.embed();
        let k1 = kappa_extrinsic(&p, &dp, &ddp, r).unwrap();
        let k2 = kappa_extrinsic(&p, &(dp * 2.0), &(ddp * 4.0), r).unwrap();
        assert!((k1 - k2).abs() < 1e-14);
    }

    #[test]
    fn phi_examples() {
        let r: f64 = 1.5;
        let v = -0.4;
        let l = LorentzVec3::new([r * (v / r).cosh(), r * (v / r).sinh(), 0.0]);
        assert!((phi(0.0, v, r) - l).max_abs() < 1e-15);
        assert!(on_hyperboloid(&phi(1.1, -0.4, 1.5), 1.5, 1e-12));
        let (u, v) = (0.9, 0.6);
        assert!((phi(u, v, r).z() - u * (-v / r).exp()).abs() < 1e-15);
    }

    #[test]
    fn lightlike_rotation_examples() {
        let p = LorentzVec3::new([2.0, 0.5, -1.0]);
        assert_eq!(lightlike_rotation(0.0, &p), p);
        let axis = LorentzVec3::new([1.0, 1.0, 0.0]);
        assert_eq!(lightlike_rotation(0.77, &axis), axis);
    }

    #[test]
    fn horocycle_distance_examples() {
        assert_eq!(horocycle_distance(0.0, 3.0, 1.0), 0.0);
        assert_eq!(horocycle_distance(1.7, 0.0, 2.0), 1.7);
    }

    #[test]
    fn chart_normal_and_gradient_examples() {
        let jet = ChartJet2::new(ChartPoint::semi_geodesic(0.0, 0.0, 1.0), 1.0, 0.0, 0.0, 0.0);
        assert_eq!(chart_normal(&jet).unwrap(), (0.0, 1.0));
        let pt = ChartPoint::semi_geodesic(0.0, 0.0, 1.0);
        assert_eq!(chart_gradient(1.0, 0.0, &pt), (1.0, 0.0));
        assert_eq!(chart_gradient(0.0, 1.0, &pt), (0.0, 1.0));
    }

    #[test]
    fn horo_inverse_round_trip() {
        let r = 1.1;
        let (u, v) = (-0.7, 0.45);
        let (uu, vv) = horo_coords(&phi(u, v, r), r).unwrap();
        assert!((uu - u).abs() < 1e-13 && (vv - v).abs() < 1e-13);
    }

    #[test]
    fn chart_limit_enforced() {
        assert!(ChartPoint::semi_geodesic(1.0, 2.0, 1.0).validate().is_ok());
        assert!(ChartPoint::semi_geodesic(26.0, 0.0, 1.0).validate().is_err());
        assert!(ChartPoint::semi_geodesic(1.0, 0.0, 0.0).validate().is_err());
    }
}

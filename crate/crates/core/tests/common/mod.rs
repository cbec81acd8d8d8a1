#![allow(dead_code)]

//! Independent reference computations shared by the integration tests.

use extcat::catenary::{integrate, CatenaryType, Curve, InitialCondition, IntegrationStatus};
use extcat::charts::{phi, phi_partials, psi_partials, ChartId, ChartJet2};
use extcat::lorentz::{LorentzVec3, LorentzVec4, PlaneType};
use extcat::relaxer::{fit_multiplier, DiscreteChain};

/// Metric coefficients `(E, G)` pulled back from the embedding partials.
pub fn eg(chart: ChartId, u: f64, v: f64, r: f64) -> (f64, f64) {
    let (a, b) = match chart {
        ChartId::SemiGeodesic => psi_partials(u, v, r),
        ChartId::HoroGeodesic => phi_partials(u, v, r),
    };
    (a.inner(&a), b.inner(&b))
}

/// Christoffel symbols of a diagonal metric by centered differences of
/// `E` and `G`, indexed `[k][i][j]` for `Gamma^k_ij`.
pub fn fd_christoffel(chart: ChartId, u: f64, v: f64, r: f64) -> [[[f64; 2]; 2]; 2] {
    let h = 1e-4 * r;
    let (e, g) = eg(chart, u, v, r);
    let (eu, gu) = {
        let (a, b) = eg(chart, u + h, v, r);
        let (c, d) = eg(chart, u - h, v, r);
        ((a - c) / (2.0 * h), (b - d) / (2.0 * h))
    };
    let (ev, gv) = {
        let (a, b) = eg(chart, u, v + h, r);
        let (c, d) = eg(chart, u, v - h, r);
        ((a - c) / (2.0 * h), (b - d) / (2.0 * h))
    };
    let mut k = [[[0.0; 2]; 2]; 2];
    k[0][0][0] = eu / (2.0 * e);
    k[0][0][1] = ev / (2.0 * e);
    k[0][1][0] = k[0][0][1];
    k[0][1][1] = -gu / (2.0 * e);
    k[1][0][0] = -ev / (2.0 * g);
    k[1][0][1] = gu / (2.0 * g);
    k[1][1][0] = k[1][0][1];
    k[1][1][1] = gv / (2.0 * g);
    k
}

/// Signed geodesic curvature from the covariant acceleration paired with
/// the velocity rotated by -90 degrees in the oriented frame `(d_u, d_v)`.
pub fn covariant_kappa(jet: &ChartJet2) -> f64 {
    let p = jet.point;
    let gam = fd_christoffel(p.chart, p.u, p.v, p.r);
    let x = [jet.du, jet.dv];
    let mut acc = [jet.ddu, jet.ddv];
    for (k, a) in acc.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                *a += gam[k][i][j] * x[i] * x[j];
            }
        }
    }
    let (e, g) = eg(p.chart, p.u, p.v, p.r);
    let speed = (e * jet.du * jet.du + g * jet.dv * jet.dv).sqrt();
    let n = (jet.dv * (g / e).sqrt() / speed, -jet.du * (e / g).sqrt() / speed);
    (e * acc[0] * n.0 + g * acc[1] * n.1) / (speed * speed)
}

/// Length `sqrt|<q, q>|` of the component `q` of `p` Lorentz-orthogonal to
/// a nondegenerate plane, computed from the Gram matrix.
pub fn gram_distance(p: &LorentzVec4, plane: PlaneType) -> f64 {
    let [a, b] = plane.generators();
    let g = plane.gram();
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let (pa, pb) = (p.inner(&a), p.inner(&b));
    let ca = (g[1][1] * pa - g[0][1] * pb) / det;
    let cb = (-g[1][0] * pa + g[0][0] * pb) / det;
    let rest = *p - a * ca - b * cb;
    rest.norm_sq().abs().sqrt()
}

/// Horo-geodesic coordinates of `p` by Newton iteration on `phi`, started
/// at the origin of the chart.
pub fn horo_newton(p: &LorentzVec3, r: f64) -> (f64, f64) {
    let (mut u, mut v) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let q = phi(u, v, r);
        let res = [q.x() - q.y() - (p.x() - p.y()), q.z() - p.z()];
        if res[0].abs().max(res[1].abs()) < 1e-15 * r.max(1.0) {
            break;
        }
        let h = 1e-7 * r;
        let qu = phi(u + h, v, r);
        let qv = phi(u, v + h, r);
        let j = [
            [(qu.x() - qu.y() - q.x() + q.y()) / h, (qv.x() - qv.y() - q.x() + q.y()) / h],
            [(qu.z() - q.z()) / h, (qv.z() - q.z()) / h],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let du = (j[1][1] * res[0] - j[0][1] * res[1]) / det;
        let dv = (-j[1][0] * res[0] + j[0][0] * res[1]) / det;
        let cap = r;
        let scale = (cap / du.abs().max(dv.abs())).min(1.0);
        u -= scale * du;
        v -= scale * dv;
    }
    (u, v)
}

/// Elliptic catenary matched to `chain` by shooting: Newton on the launch
/// angle and multiplier so the ODE solution of length `L` ends at the
/// chain's last node. Seeded from the chain itself. The returned curve is
/// sampled at `L / (oversample * N)`.
pub struct Shot {
    pub theta: f64,
    pub lambda: f64,
    pub curve: Curve,
    pub oversample: usize,
}

pub fn shoot(chain: &DiscreteChain, oversample: usize) -> Shot {
    let n = chain.segments();
    let r = chain.r;
    let l = chain.target_length;
    let start = chain.nodes[0];
    let end = chain.nodes[n];
    let run = |th: f64, lam: f64| -> Curve {
        let c = integrate(
            chain.ctype,
            InitialCondition::new(start.0, start.1, th),
            r,
            lam,
            l,
            l / (oversample * n) as f64,
        )
        .expect("shooting integration");
        assert_eq!(c.status, IntegrationStatus::Completed);
        c
    };
    let miss = |th: f64, lam: f64| -> [f64; 2] {
        let c = run(th, lam);
        let e = c.samples.last().unwrap();
        [e.u - end.0, e.v - end.1]
    };
    let (a, b) = (chain.nodes[0], chain.nodes[1]);
    let mut th = (((a.0 + b.0) / (2.0 * r)).cosh() * (b.1 - a.1)).atan2(b.0 - a.0);
    let mut lam = fit_multiplier(chain).expect("multiplier fit");
    for _ in 0..40 {
        let f0 = miss(th, lam);
        if f0[0].abs().max(f0[1].abs()) < 1e-13 * r.max(1.0) {
            break;
        }
        let h = 1e-7;
        let fa = miss(th + h, lam);
        let fb = miss(th, lam + h);
        let j = [[(fa[0] - f0[0]) / h, (fb[0] - f0[0]) / h], [(fa[1] - f0[1]) / h, (fb[1] - f0[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        th -= (j[1][1] * f0[0] - j[0][1] * f0[1]) / det;
        lam -= (-j[1][0] * f0[0] + j[0][0] * f0[1]) / det;
    }
    Shot { theta: th, lambda: lam, curve: run(th, lam), oversample }
}

/// Largest coordinate gap between chain nodes and the matching samples of
/// the shot curve.
pub fn node_gap(chain: &DiscreteChain, shot: &Shot) -> f64 {
    (0..=chain.segments())
        .map(|i| {
            let p = &shot.curve.samples[i * shot.oversample];
            (chain.nodes[i].0 - p.u).abs().max((chain.nodes[i].1 - p.v).abs())
        })
        .fold(0.0, f64::max)
}

pub fn elliptic_problem() -> (CatenaryType, f64, (f64, f64), (f64, f64), f64) {
    (CatenaryType::Elliptic, 1.0, (1.0, -0.5), (1.0, 0.5), 0.1)
}

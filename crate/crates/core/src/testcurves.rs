//! Seeded random smooth chart curves with exact jets.
//!
//! Each coordinate is `c0 + c1 t + sum_k (a_k cos kt + b_k sin kt)`. The
//! linear drift in `v` dominates the oscillation, so `v' > 0` and the curve
//! is regular; `u` stays in `[0.3 r, 1.7 r]`, away from the elliptic axis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charts::{ChartId, ChartJet2, ChartPoint};
use crate::error::{usage, Result};
use crate::lorentz::LorentzVec3;
use crate::revolution::{GeneratingCurve, GeneratingJet};

/// Parameter interval of every generated curve.
pub const TRIG_DOMAIN: (f64, f64) = (0.0, 3.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    pub c0: f64,
    pub c1: f64,
    /// `(a_k, b_k)` for `k = 1, 2, ...`.
    pub modes: Vec<(f64, f64)>,
}

impl TrigPoly {
    /// Value and first two derivatives at `t`.
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let mut out = [self.c0 + self.c1 * t, self.c1, 0.0];
        for (k, &(a, b)) in self.modes.iter().enumerate() {
            let k = (k + 1) as f64;
            let (s, c) = (k * t).sin_cos();
            out[0] += a * c + b * s;
            out[1] += k * (b * c - a * s);
            out[2] -= k * k * (a * c + b * s);
        }
        out
    }
}

/// Smooth chart curve `t -> (u(t), v(t))` in either chart.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCurve {
    pub chart: ChartId,
    pub r: f64,
    pub u: TrigPoly,
    pub v: TrigPoly,
}

impl TrigCurve {
    /// Draws a curve with between one and three modes per coordinate.
    pub fn random<R: Rng>(rng: &mut R, chart: ChartId, r: f64) -> Self {
        let modes = rng.random_range(1..=3usize);
        let (uc, vc, drift) = (
            r * rng.random_range(0.75..1.25),
            r * rng.random_range(-0.5..0.5),
            r * rng.random_range(0.5..1.0),
        );
        let mut poly = |c0: f64, c1: f64| {
            let modes = (1..=modes)
                .map(|k| {
                    let amp = 0.15 * r / k as f64;
                    (amp * rng.random_range(-1.0..1.0), amp * rng.random_range(-1.0..1.0))
                })
                .collect();
            TrigPoly { c0, c1, modes }
        };
        let u = poly(uc, 0.0);
        let v = poly(vc, drift);
        TrigCurve { chart, r, u, v }
    }

    pub fn jet(&self, t: f64) -> ChartJet2 {
        let [u, du, ddu] = self.u.eval(t);
        let [v, dv, ddv] = self.v.eval(t);
        let point = match self.chart {
            ChartId::SemiGeodesic => ChartPoint::semi_geodesic(u, v, self.r),
            ChartId::HoroGeodesic => ChartPoint::horo_geodesic(u, v, self.r),
        };
        ChartJet2::new(point, du, dv, ddu, ddv)
    }

    pub fn generating_jet(&self, t: f64) -> GeneratingJet {
        GeneratingJet::from_chart_jet(&self.jet(t))
    }
}

impl GeneratingCurve for TrigCurve {
    fn radius(&self) -> f64 {
        self.r
    }

    fn domain(&self) -> (f64, f64) {
        TRIG_DOMAIN
    }

    fn point(&self, t: f64) -> Result<LorentzVec3> {
        let (lo, hi) = TRIG_DOMAIN;
        if !(lo..=hi).contains(&t) {
            return Err(usage(format!("parameter {t} outside [{lo}, {hi}]")));
        }
        Ok(self.jet(t).point.embed())
    }
}

/// `count` curves from a ChaCha8 stream seeded with `seed`.
pub fn random_curves(seed: u64, count: usize, chart: ChartId, r: f64) -> Vec<TrigCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| TrigCurve::random(&mut rng, chart, r)).collect()
}

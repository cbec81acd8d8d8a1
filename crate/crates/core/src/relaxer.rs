//! Direct minimization of the hanging-chain energy over polylines with
//! fixed endpoints and fixed length.
//!
//! The chain is `N + 1` nodes in semi-geodesic coordinates. Every link is
//! constrained to the same chart-metric length `L / N` (midpoint rule), so
//! the total length is `L` and nodes stay evenly spread in arc length.
//! Iterates are kept feasible by a minimum-norm Gauss-Newton projection onto
//! the constraint set; steps come from a Newton solve of the KKT system
//! (Lagrangian Hessian by finite differences of the analytic gradient) with
//! a projected-gradient fallback and halving line search.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::catenary::{catenary_kappa, weight, CatenaryType};
use crate::charts::{kappa_semigeo, psi, ChartJet2, ChartPoint};
use crate::error::{domain, usage, Error, Result};
use crate::lorentz::geodesic_distance;

/// Relative gap between target length and endpoint distance treated as taut.
const TAUT_RTOL: f64 = 1e-9;
const PROJECTION_MAX_ITER: usize = 50;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChain {
    pub ctype: CatenaryType,
    pub r: f64,
    /// `(u, v)` nodes; the first and last never move.
    pub nodes: Vec<(f64, f64)>,
    pub target_length: f64,
}

impl DiscreteChain {
    pub fn segments(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    fn interior(&self) -> DVector<f64> {
        let n = self.segments();
        DVector::from_iterator(
            2 * (n - 1),
            self.nodes[1..n].iter().flat_map(|&(u, v)| [u, v]),
        )
    }

    fn with_interior(&self, x: &DVector<f64>) -> DiscreteChain {
        let mut out = self.clone();
        for j in 1..self.segments() {
            out.nodes[j] = (x[2 * (j - 1)], x[2 * (j - 1) + 1]);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelaxStatus {
    Converged,
    MaxIter,
    Infeasible,
}

/// Non-finite floats are written as JSON `null`; read back they become NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxReport {
    pub iterations: usize,
    #[serde(deserialize_with = "nullable_f64")]
    pub final_energy: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub grad_norm: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub max_kappa_residual: f64,
    pub status: RelaxStatus,
    /// Set when the target length equals the endpoint distance, in which
    /// case the output is the geodesic and the catenary law is not expected.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub taut: bool,
}

fn nullable_f64<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxOptions {
    pub max_iter: usize,
    /// Initial projected-gradient step.
    pub step_size: f64,
    pub grad_tol: f64,
    /// Use Newton-KKT steps; plain projected gradient otherwise.
    pub newton: bool,
    /// Multiplier offset added to the weight. It shifts the energy by
    /// `lambda * L` and only matters for the positivity requirement.
    pub lambda: f64,
}

impl RelaxOptions {
    pub fn for_radius(r: f64) -> Self {
        Self { step_size: 1e-2 * r, ..Self::default() }
    }
}

impl Default for RelaxOptions {
    fn default() -> Self {
        Self { max_iter: 200_000, step_size: 1e-2, grad_tol: 1e-8, newton: true, lambda: 0.0 }
    }
}

/// One accepted iteration, passed to the observer of [`relax_observed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub energy: f64,
    pub grad_norm: f64,
    pub max_length_error: f64,
    pub newton_step: bool,
}

fn link_length(a: (f64, f64), b: (f64, f64), r: f64) -> f64 {
    let c = (0.5 * (a.0 + b.0) / r).cosh();
    let (du, dv) = (b.0 - a.0, b.1 - a.1);
    (du * du + c * c * dv * dv).sqrt()
}

/// Chart-metric length of the polyline by the midpoint rule.
pub fn chain_length(chain: &DiscreteChain) -> f64 {
    chain.nodes.windows(2).map(|w| link_length(w[0], w[1], chain.r)).sum()
}

/// Midpoint-rule energy `sum (f(mid_i) + lambda) len_i`.
pub fn chain_energy(chain: &DiscreteChain, lambda: f64) -> Result<f64> {
    let mut e = 0.0;
    for w in chain.nodes.windows(2) {
        let (m_u, m_v) = (0.5 * (w[0].0 + w[1].0), 0.5 * (w[0].1 + w[1].1));
        e += weight(chain.ctype, m_u, m_v, chain.r, lambda)? * link_length(w[0], w[1], chain.r);
    }
    Ok(e)
}

/// Per-link data: length, and its partials with respect to the left and
/// right node.
struct Link {
    len: f64,
    left: [f64; 2],
    right: [f64; 2],
    e_left: [f64; 2],
    e_right: [f64; 2],
}

fn link(ctype: CatenaryType, r: f64, lambda: f64, a: (f64, f64), b: (f64, f64)) -> Result<Link> {
    let (m_u, m_v) = (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1));
    let c = (m_u / r).cosh();
    let dc = (m_u / r).sinh() / r;
    let (du, dv) = (b.0 - a.0, b.1 - a.1);
    let len = (du * du + c * c * dv * dv).sqrt();
    if !(len > 0.0) {
        return Err(domain("chain has repeated nodes"));
    }
    let half_m = 0.5 * c * dc * dv * dv / len;
    let right = [du / len + half_m, c * c * dv / len];
    let left = [-du / len + half_m, -c * c * dv / len];
    let w = weight(ctype, m_u, m_v, r, lambda)?;
    let (_, f_u, f_v) = ctype.weight_jet(m_u, m_v, r);
    let e_right = [0.5 * f_u * len + w * right[0], 0.5 * f_v * len + w * right[1]];
    let e_left = [0.5 * f_u * len + w * left[0], 0.5 * f_v * len + w * left[1]];
    Ok(Link { len, left, right, e_left, e_right })
}

/// Everything the optimizer needs at one iterate.
struct Eval {
    energy: f64,
    grad: DVector<f64>,
    links: Vec<Link>,
}

fn evaluate(chain: &DiscreteChain, lambda: f64) -> Result<Eval> {
    let n = chain.segments();
    let mut grad = DVector::zeros(2 * (n - 1));
    let mut links = Vec::with_capacity(n);
    let mut energy = 0.0;
    for i in 0..n {
        let (a, b) = (chain.nodes[i], chain.nodes[i + 1]);
        let l = link(chain.ctype, chain.r, lambda, a, b)?;
        let (m_u, m_v) = (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1));
        energy += weight(chain.ctype, m_u, m_v, chain.r, lambda)? * l.len;
        if i >= 1 {
            grad[2 * (i - 1)] += l.e_left[0];
            grad[2 * (i - 1) + 1] += l.e_left[1];
        }
        if i + 1 < n {
            grad[2 * i] += l.e_right[0];
            grad[2 * i + 1] += l.e_right[1];
        }
        links.push(l);
    }
    Ok(Eval { energy, grad, links })
}

/// `A^T y` for the link-length Jacobian `A`.
fn jac_t(links: &[Link], y: &[f64]) -> DVector<f64> {
    let n = links.len();
    let mut out = DVector::zeros(2 * (n - 1));
    for (i, l) in links.iter().enumerate() {
        if i >= 1 {
            out[2 * (i - 1)] += y[i] * l.left[0];
            out[2 * (i - 1) + 1] += y[i] * l.left[1];
        }
        if i + 1 < n {
            out[2 * i] += y[i] * l.right[0];
            out[2 * i + 1] += y[i] * l.right[1];
        }
    }
    out
}

/// `A x`.
fn jac(links: &[Link], x: &DVector<f64>) -> Vec<f64> {
    let n = links.len();
    (0..n)
        .map(|i| {
            let l = &links[i];
            let mut s = 0.0;
            if i >= 1 {
                s += l.left[0] * x[2 * (i - 1)] + l.left[1] * x[2 * (i - 1) + 1];
            }
            if i + 1 < n {
                s += l.right[0] * x[2 * i] + l.right[1] * x[2 * i + 1];
            }
            s
        })
        .collect()
}

/// Solves `(A A^T) y = rhs`; `A A^T` is tridiagonal and positive definite.
fn solve_aat(links: &[Link], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = links.len();
    let norm2 = |a: [f64; 2]| a[0] * a[0] + a[1] * a[1];
    let diag: Vec<f64> = (0..n)
        .map(|i| {
            let mut d = 0.0;
            if i >= 1 {
                d += norm2(links[i].left);
            }
            if i + 1 < n {
                d += norm2(links[i].right);
            }
            d
        })
        .collect();
    // Off-diagonal (i, i+1): links i and i+1 share node i+1.
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| links[i].right[0] * links[i + 1].left[0] + links[i].right[1] * links[i + 1].left[1])
        .collect();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if !(denom > 0.0) {
        return Err(domain("singular constraint Jacobian"));
    }
    c[0] = if n > 1 { off[0] / denom } else { 0.0 };
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - off[i - 1] * c[i - 1];
        if !(denom.abs() > 1e-300) {
            return Err(domain("singular constraint Jacobian"));
        }
        c[i] = if i + 1 < n { off[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

fn length_residuals(chain: &DiscreteChain) -> Vec<f64> {
    let target = chain.target_length / chain.segments() as f64;
    chain.nodes.windows(2).map(|w| link_length(w[0], w[1], chain.r) - target).collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Minimum-norm Gauss-Newton projection onto the equal-link constraints.
fn project(chain: &DiscreteChain, lambda: f64) -> Result<DiscreteChain> {
    let tol = 1e-14 * chain.target_length.max(chain.r);
    let mut cur = chain.clone();
    let mut prev = f64::INFINITY;
    for _ in 0..PROJECTION_MAX_ITER {
        let res = length_residuals(&cur);
        let err = max_abs(&res);
        if err <= tol || (err <= 1e-12 * chain.target_length && err >= 0.5 * prev) {
            evaluate(&cur, lambda)?;
            return Ok(cur);
        }
        if !err.is_finite() || err > 1e3 * prev.min(f64::MAX) {
            break;
        }
        prev = err;
        let ev = evaluate(&cur, lambda)?;
        let y = solve_aat(&ev.links, &res)?;
        let x = cur.interior() - jac_t(&ev.links, &y);
        cur = cur.with_interior(&x);
    }
    Err(domain("projection onto the length constraint did not converge"))
}

/// Nodes re-spaced to equal chart length along the polyline.
fn respace(chain: &DiscreteChain) -> DiscreteChain {
    let n = chain.segments();
    let mut cum = vec![0.0];
    for w in chain.nodes.windows(2) {
        cum.push(cum.last().unwrap() + link_length(w[0], w[1], chain.r));
    }
    let total = *cum.last().unwrap();
    let mut out = chain.clone();
    let mut k = 0;
    for j in 1..n {
        let target = total * j as f64 / n as f64;
        while k + 1 < n && cum[k + 1] < target {
            k += 1;
        }
        let span = cum[k + 1] - cum[k];
        let t = if span > 0.0 { (target - cum[k]) / span } else { 0.0 };
        let (a, b) = (chain.nodes[k], chain.nodes[k + 1]);
        out.nodes[j] = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
    }
    out
}

/// Exact hyperbolic distance between the chain's endpoints.
pub fn endpoint_distance(chain: &DiscreteChain) -> f64 {
    let (a, b) = (chain.nodes[0], *chain.nodes.last().unwrap());
    geodesic_distance(&psi(a.0, a.1, chain.r), &psi(b.0, b.1, chain.r), chain.r)
}

/// Semi-geodesic coordinates of the point at arc length `s` on the geodesic
/// from `a` to `b`.
fn geodesic_node(a: (f64, f64), b: (f64, f64), s: f64, d: f64, r: f64) -> (f64, f64) {
    let (p, q) = (psi(a.0, a.1, r), psi(b.0, b.1, r));
    let sd = (d / r).sinh();
    let x = (p * ((d - s) / r).sinh() + q * (s / r).sinh()) * (1.0 / sd);
    let [x0, x1, x2] = x.0;
    (r * (x2 / r).asinh(), r * (x1 / x0).atanh())
}

/// Chart-linear chain from `start` to `end`, bulged by a sine profile
/// toward decreasing weight until its length is `target_length`, then
/// re-spaced to equal links.
pub fn initial_chain(
    ctype: CatenaryType,
    r: f64,
    start: (f64, f64),
    end: (f64, f64),
    segments: usize,
    target_length: f64,
) -> Result<DiscreteChain> {
    if segments < 2 {
        return Err(usage(format!("a chain needs at least 2 segments, got {segments}")));
    }
    if !(r > 0.0) || !(target_length > 0.0) {
        return Err(usage("r and target length must be positive"));
    }
    let base = |amp: f64, dir: (f64, f64)| -> DiscreteChain {
        let mut nodes: Vec<(f64, f64)> = (0..=segments)
            .map(|j| {
                let t = j as f64 / segments as f64;
                let b = amp * (std::f64::consts::PI * t).sin();
                (
                    start.0 + t * (end.0 - start.0) + b * dir.0,
                    start.1 + t * (end.1 - start.1) + b * dir.1,
                )
            })
            .collect();
        nodes[0] = start;
        nodes[segments] = end;
        DiscreteChain { ctype, r, nodes, target_length }
    };
    let chord = (end.0 - start.0, end.1 - start.1);
    let chord_len = (chord.0 * chord.0 + chord.1 * chord.1).sqrt();
    if !(chord_len > 0.0) {
        return Err(usage("chain endpoints coincide"));
    }
    let perp = (-chord.1 / chord_len, chord.0 / chord_len);
    let mid = (0.5 * (start.0 + end.0), 0.5 * (start.1 + end.1));
    let (_, f_u, f_v) = ctype.weight_jet(mid.0, mid.1, r);
    let down = -(f_u * perp.0 + f_v * perp.1);
    let sign = if down >= 0.0 { 1.0 } else { -1.0 };

    for dir in [(sign * perp.0, sign * perp.1), (-sign * perp.0, -sign * perp.1)] {
        let len_at = |amp: f64| -> Option<f64> {
            let c = base(amp, dir);
            chain_energy(&c, 0.0).ok()?;
            Some(chain_length(&c))
        };
        let Some(l0) = len_at(0.0) else { continue };
        if l0 >= target_length {
            return Ok(respace(&base(0.0, dir)));
        }
        let mut hi = 0.1 * r;
        let mut ok = true;
        loop {
            match len_at(hi) {
                Some(l) if l >= target_length => break,
                Some(_) if hi < 1e3 * r => hi *= 2.0,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            match len_at(m) {
                Some(l) if l < target_length => lo = m,
                _ => hi = m,
            }
            if hi - lo <= 1e-15 * r {
                break;
            }
        }
        return Ok(respace(&base(hi, dir)));
    }
    Err(domain("no positive-weight initial chain reaches the target length"))
}

/// Least-squares multiplier for the catenary law with offset across
/// interior nodes: `lambda = sum k (A - k f) / sum k^2`, where the law reads
/// `k (f + lambda) = A`.
pub fn fit_multiplier(chain: &DiscreteChain) -> Result<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..chain.segments() {
        let jet = stencil_jet(chain, i)?;
        let k = kappa_semigeo(&jet)?;
        let ChartPoint { u, v, r, .. } = jet.point;
        let (f, _, _) = chain.ctype.weight_jet(u, v, r);
        // A = kappa_law * f at lambda = 0.
        let a = catenary_kappa(chain.ctype, u, v, jet.du, jet.dv, r, 0.0)? * f;
        num += k * (a - k * f);
        den += k * k;
    }
    Ok(if den > 0.0 { num / den } else { 0.0 })
}

/// Arc-length 2-jet at interior node `i` from the three-point stencil.
pub fn stencil_jet(chain: &DiscreteChain, i: usize) -> Result<ChartJet2> {
    if i == 0 || i >= chain.segments() {
        return Err(usage(format!("node {i} is not interior")));
    }
    let (a, p, b) = (chain.nodes[i - 1], chain.nodes[i], chain.nodes[i + 1]);
    let hm = link_length(a, p, chain.r);
    let hp = link_length(p, b, chain.r);
    if !(hm > 0.0 && hp > 0.0) {
        return Err(domain("degenerate stencil: repeated nodes"));
    }
    let s = hm + hp;
    let d1 = |fa: f64, fp: f64, fb: f64| -hp / (hm * s) * fa + (hp - hm) / (hm * hp) * fp + hm / (hp * s) * fb;
    let d2 = |fa: f64, fp: f64, fb: f64| 2.0 * (fa / (hm * s) - fp / (hm * hp) + fb / (hp * s));
    Ok(ChartJet2::new(
        ChartPoint::semi_geodesic(p.0, p.1, chain.r),
        d1(a.0, p.0, b.0),
        d1(a.1, p.1, b.1),
        d2(a.0, p.0, b.0),
        d2(a.1, p.1, b.1),
    ))
}

/// Curvature of the stencil jet minus the catenary law at multiplier
/// `lambda`.
pub fn discrete_kappa_residual(chain: &DiscreteChain, i: usize, lambda: f64) -> Result<f64> {
    let jet = stencil_jet(chain, i)?;
    let k = kappa_semigeo(&jet)?;
    let ChartPoint { u, v, r, .. } = jet.point;
    Ok(k - catenary_kappa(chain.ctype, u, v, jet.du, jet.dv, r, lambda)?)
}

/// Largest `|discrete_kappa_residual|` with the fitted multiplier. A node
/// where the law cannot be evaluated (the fitted `f + lambda` is not
/// positive there) counts as an infinite residual.
pub fn max_kappa_residual(chain: &DiscreteChain) -> Result<f64> {
    let lambda = fit_multiplier(chain)?;
    let mut m: f64 = 0.0;
    for i in 1..chain.segments() {
        let res = match discrete_kappa_residual(chain, i, lambda) {
            Ok(x) => x.abs(),
            Err(Error::Domain(_)) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        m = m.max(res);
    }
    Ok(m)
}

/// Lagrange-multiplier estimate and projected gradient at an iterate.
fn projected_gradient(ev: &Eval) -> Result<(Vec<f64>, DVector<f64>)> {
    let ag = jac(&ev.links, &ev.grad);
    let mu = solve_aat(&ev.links, &ag)?;
    let gt = &ev.grad - jac_t(&ev.links, &mu);
    Ok((mu, gt))
}

fn lagrangian_gradient(chain: &DiscreteChain, lambda: f64, mu: &[f64], x: &DVector<f64>) -> Result<DVector<f64>> {
    let ev = evaluate(&chain.with_interior(x), lambda)?;
    Ok(&ev.grad - jac_t(&ev.links, mu))
}

/// Newton step from the KKT system with a finite-difference Hessian of the
/// Lagrangian; `None` if the system is singular or the step is not a
/// descent direction.
fn newton_direction(chain: &DiscreteChain, lambda: f64, ev: &Eval, mu: &[f64], gt: &DVector<f64>) -> Result<Option<DVector<f64>>> {
    let x = chain.interior();
    let n = x.len();
    let m = ev.links.len();
    let delta = 1e-6 * chain.r;
    let mut h = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut xp = x.clone();
        xp[k] += delta;
        let mut xm = x.clone();
        xm[k] -= delta;
        let col = (lagrangian_gradient(chain, lambda, mu, &xp)? - lagrangian_gradient(chain, lambda, mu, &xm)?)
            / (2.0 * delta);
        h.set_column(k, &col);
    }
    let h = (&h + h.transpose()) * 0.5;
    let mut kkt = DMatrix::zeros(n + m, n + m);
    kkt.view_mut((0, 0), (n, n)).copy_from(&h);
    for (i, l) in ev.links.iter().enumerate() {
        let mut put = |col: usize, val: f64| {
            kkt[(n + i, col)] = val;
            kkt[(col, n + i)] = val;
        };
        if i >= 1 {
            put(2 * (i - 1), l.left[0]);
            put(2 * (i - 1) + 1, l.left[1]);
        }
        if i + 1 < m {
            put(2 * i, l.right[0]);
            put(2 * i + 1, l.right[1]);
        }
    }
    let mut rhs = DVector::zeros(n + m);
    rhs.rows_mut(0, n).copy_from(&(-gt));
    let Some(sol) = kkt.lu().solve(&rhs) else { return Ok(None) };
    let d = sol.rows(0, n).into_owned();
    if !d.iter().all(|v| v.is_finite()) || gt.dot(&d) >= 0.0 {
        return Ok(None);
    }
    Ok(Some(d))
}

fn taut_chain(chain: &DiscreteChain, d: f64) -> DiscreteChain {
    let n = chain.segments();
    let (a, b) = (chain.nodes[0], chain.nodes[n]);
    let mut out = chain.clone();
    for j in 1..n {
        out.nodes[j] = geodesic_node(a, b, d * j as f64 / n as f64, d, chain.r);
    }
    out
}

/// Minimizes the chain energy at fixed endpoints and length.
pub fn relax(chain0: &DiscreteChain, opts: &RelaxOptions) -> Result<(DiscreteChain, RelaxReport)> {
    relax_observed(chain0, opts, |_| {})
}

/// [`relax`] that reports every accepted iteration to `observer`.
pub fn relax_observed<F>(chain0: &DiscreteChain, opts: &RelaxOptions, mut observer: F) -> Result<(DiscreteChain, RelaxReport)>
where
    F: FnMut(&IterationRecord),
{
    if chain0.segments() < 2 {
        return Err(usage("a chain needs at least 2 segments"));
    }
    if !(chain0.r > 0.0) {
        return Err(usage("r must be positive"));
    }
    if !(opts.step_size > 0.0) || !(opts.grad_tol > 0.0) {
        return Err(usage("step size and gradient tolerance must be positive"));
    }
    let lambda = opts.lambda;
    let infeasible = |chain: &DiscreteChain| RelaxReport {
        iterations: 0,
        final_energy: chain_energy(chain, lambda).unwrap_or(f64::NAN),
        grad_norm: f64::NAN,
        max_kappa_residual: f64::NAN,
        status: RelaxStatus::Infeasible,
        taut: false,
    };

    let d = endpoint_distance(chain0);
    let target = chain0.target_length;
    if target < d * (1.0 - TAUT_RTOL) {
        return Ok((chain0.clone(), infeasible(chain0)));
    }
    if target <= d * (1.0 + TAUT_RTOL) {
        let chain = taut_chain(chain0, d);
        let energy = chain_energy(&chain, lambda)?;
        let max_res = (1..chain.segments())
            .map(|i| stencil_jet(&chain, i).and_then(|j| kappa_semigeo(&j)).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let report = RelaxReport {
            iterations: 0,
            final_energy: energy,
            grad_norm: 0.0,
            max_kappa_residual: max_res,
            status: RelaxStatus::Converged,
            taut: true,
        };
        return Ok((chain, report));
    }

    let mut chain = match project(&respace(chain0), lambda) {
        Ok(c) => c,
        Err(_) => return Ok((chain0.clone(), infeasible(chain0))),
    };
    let mut ev = evaluate(&chain, lambda)?;
    let mut step = opts.step_size;
    let mut iterations = 0;
    let mut status = RelaxStatus::MaxIter;
    let mut grad_norm;
    loop {
        let (mu, gt) = projected_gradient(&ev)?;
        grad_norm = gt.norm();
        if grad_norm <= opts.grad_tol {
            status = RelaxStatus::Converged;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        let slack = 1e-14 * ev.energy.abs().max(1.0);
        let x = chain.interior();
        let mut accepted = None;
        let mut weight_failures = 0;
        let mut attempts = 0;

        if opts.newton {
            if let Some(dir) = newton_direction(&chain, lambda, &ev, &mu, &gt)? {
                let cap = 0.25 * chain.r / dir.amax().max(f64::MIN_POSITIVE);
                let mut alpha = cap.min(1.0);
                for _ in 0..MAX_HALVINGS {
                    attempts += 1;
                    match project(&chain.with_interior(&(&x + &dir * alpha)), lambda).and_then(|c| {
                        let e = evaluate(&c, lambda)?;
                        Ok((c, e))
                    }) {
                        Ok((c, e)) if e.energy <= ev.energy + slack => {
                            accepted = Some((c, e, true));
                            break;
                        }
                        Ok(_) => {}
                        Err(_) => weight_failures += 1,
                    }
                    alpha *= 0.5;
                }
            }
        }
        if accepted.is_none() {
            let mut alpha = step;
            for _ in 0..MAX_HALVINGS {
                attempts += 1;
                match project(&chain.with_interior(&(&x - &gt * alpha)), lambda).and_then(|c| {
                    let e = evaluate(&c, lambda)?;
                    Ok((c, e))
                }) {
                    Ok((c, e)) if e.energy <= ev.energy + slack => {
                        step = (alpha * 1.5).min(opts.step_size * 1e3);
                        accepted = Some((c, e, false));
                        break;
                    }
                    Ok(_) => {}
                    Err(_) => weight_failures += 1,
                }
                alpha *= 0.5;
            }
        }
        match accepted {
            Some((c, e, newton_step)) => {
                iterations += 1;
                chain = c;
                ev = e;
                observer(&IterationRecord {
                    iteration: iterations,
                    energy: ev.energy,
                    grad_norm,
                    max_length_error: max_abs(&length_residuals(&chain)),
                    newton_step,
                });
            }
            None => {
                if weight_failures == attempts {
                    status = RelaxStatus::Infeasible;
                }
                break;
            }
        }
    }
    let max_res = max_kappa_residual(&chain)?;
    let report = RelaxReport {
        iterations,
        final_energy: ev.energy,
        grad_norm,
        max_kappa_residual: max_res,
        status,
        taut: false,
    };
    Ok((chain, report))
}

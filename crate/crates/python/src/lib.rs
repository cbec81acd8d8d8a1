//! Python bindings: curve integration, curvature, surfaces of revolution and
//! the discrete chain relaxer.

use extcat::catenary::{self, CatenaryType, InitialCondition, IntegrationStatus};
use extcat::charts::{self, ChartJet2, ChartPoint};
use extcat::relaxer::{self, DiscreteChain, RelaxOptions, RelaxStatus};
use extcat::revolution::{self, GeneratingJet};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(extcat_py, DomainError, PyValueError);
create_exception!(extcat_py, UsageError, PyValueError);

fn to_py(e: extcat::Error) -> PyErr {
    match e {
        extcat::Error::Domain(m) => DomainError::new_err(m),
        extcat::Error::Usage(m) => UsageError::new_err(m),
    }
}

fn ctype(name: &str) -> PyResult<CatenaryType> {
    name.parse().map_err(to_py)
}

/// A sampled catenary in semi-geodesic coordinates.
#[pyclass(name = "Curve", module = "extcat_py", frozen)]
pub struct PyCurve {
    inner: catenary::Curve,
}

#[pymethods]
impl PyCurve {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn ctype(&self) -> Option<&'static str> {
        self.inner.ctype.map(CatenaryType::name)
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.inner.lambda
    }

    /// "completed", "hit_reference_plane" or "chart_limit".
    #[getter]
    fn status(&self) -> &'static str {
        match self.inner.status {
            IntegrationStatus::Completed => "completed",
            IntegrationStatus::HitReferencePlane => "hit_reference_plane",
            IntegrationStatus::ChartLimit => "chart_limit",
        }
    }

    #[getter]
    fn s(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|x| x.s).collect()
    }

    #[getter]
    fn u(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|x| x.u).collect()
    }

    #[getter]
    fn v(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|x| x.v).collect()
    }

    /// Rows of `(s, u, v, u', v', u'', v'')`.
    fn samples(&self) -> Vec<[f64; 7]> {
        self.inner.samples.iter().map(|x| [x.s, x.u, x.v, x.du, x.dv, x.ddu, x.ddv]).collect()
    }

    /// Hyperboloid points `(x, y, z)`.
    fn embedded(&self) -> Vec<[f64; 3]> {
        self.inner.embedded.iter().map(|p| p.0).collect()
    }

    /// Extrinsic curvature at every sample.
    fn kappa(&self) -> PyResult<Vec<f64>> {
        self.inner.kappa().map_err(to_py)
    }

    /// Closed-form mean curvature of the rotated surface along sample `i`.
    fn mean_curvature(&self, ctype_name: &str, i: usize) -> PyResult<f64> {
        if i >= self.inner.len() {
            return Err(UsageError::new_err(format!("sample {i} out of range")));
        }
        let jet = GeneratingJet::from_chart_jet(&self.inner.jet(i));
        revolution::mean_curvature_closed(ctype(ctype_name)?, &jet).map_err(to_py)
    }

    /// Keeps `rows` samples evenly spread along the curve.
    fn subsample(&self, rows: usize) -> PyCurve {
        PyCurve { inner: self.inner.subsample(rows) }
    }

    fn __repr__(&self) -> String {
        format!("Curve(ctype={}, samples={}, status={})", self.ctype().unwrap_or("none"), self.inner.len(), self.status())
    }
}

/// Integrates the catenary law from `(u0, v0)` with heading `theta0`.
#[pyfunction]
#[pyo3(signature = (ctype_name, u0, v0, theta0, r = 1.0, lambda_ = 0.0, s_max = 1.0, step = 1e-3))]
#[allow(clippy::too_many_arguments)]
fn integrate(
    ctype_name: &str,
    u0: f64,
    v0: f64,
    theta0: f64,
    r: f64,
    lambda_: f64,
    s_max: f64,
    step: f64,
) -> PyResult<PyCurve> {
    let ic = InitialCondition::new(u0, v0, theta0);
    let inner = catenary::integrate(ctype(ctype_name)?, ic, r, lambda_, s_max, step).map_err(to_py)?;
    Ok(PyCurve { inner })
}

/// Curvature the catenary law prescribes at a semi-geodesic point and heading.
#[pyfunction]
#[pyo3(signature = (ctype_name, u, v, du, dv, r = 1.0, lambda_ = 0.0))]
fn catenary_kappa(ctype_name: &str, u: f64, v: f64, du: f64, dv: f64, r: f64, lambda_: f64) -> PyResult<f64> {
    catenary::catenary_kappa(ctype(ctype_name)?, u, v, du, dv, r, lambda_).map_err(to_py)
}

/// Signed curvature of a semi-geodesic jet.
#[pyfunction]
#[pyo3(signature = (u, v, du, dv, ddu, ddv, r = 1.0))]
fn kappa_semigeo(u: f64, v: f64, du: f64, dv: f64, ddu: f64, ddv: f64, r: f64) -> PyResult<f64> {
    charts::kappa_semigeo(&ChartJet2::new(ChartPoint::semi_geodesic(u, v, r), du, dv, ddu, ddv)).map_err(to_py)
}

/// Signed curvature of a horo-geodesic jet.
#[pyfunction]
#[pyo3(signature = (u, v, du, dv, ddu, ddv, r = 1.0))]
fn kappa_horo(u: f64, v: f64, du: f64, dv: f64, ddu: f64, ddv: f64, r: f64) -> PyResult<f64> {
    charts::kappa_horo(&ChartJet2::new(ChartPoint::horo_geodesic(u, v, r), du, dv, ddu, ddv)).map_err(to_py)
}

/// Parabolic catenary law written in horo-geodesic coordinates.
#[pyfunction]
#[pyo3(signature = (u, v, du, dv, r = 1.0))]
fn horocatenary_kappa(u: f64, v: f64, du: f64, dv: f64, r: f64) -> PyResult<f64> {
    catenary::horocatenary_kappa(u, v, du, dv, r).map_err(to_py)
}

/// Vertex grid of a rotated curve with per-vertex mean curvature.
#[pyclass(name = "Mesh", module = "extcat_py", frozen)]
pub struct PyMesh {
    inner: revolution::Mesh,
}

#[pymethods]
impl PyMesh {
    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols
    }

    #[getter]
    fn thetas(&self) -> Vec<f64> {
        self.inner.thetas.clone()
    }

    /// Row-major points `(x0, x1, x2, x3)` of H^3.
    fn vertices(&self) -> Vec<[f64; 4]> {
        self.inner.vertices.iter().map(|p| p.0).collect()
    }

    fn mean_curvature(&self) -> Vec<f64> {
        self.inner.mean_curvature.clone()
    }

    fn max_abs_h(&self) -> f64 {
        self.inner.max_abs_h()
    }

    fn __repr__(&self) -> String {
        format!("Mesh(rows={}, cols={})", self.inner.rows, self.inner.cols)
    }
}

/// Rotates `curve` over `n_theta` angles in `[theta_min, theta_max]`.
#[pyfunction]
#[pyo3(signature = (ctype_name, curve, theta_min = 0.0, theta_max = std::f64::consts::TAU, n_theta = 40))]
fn build_mesh(ctype_name: &str, curve: &PyCurve, theta_min: f64, theta_max: f64, n_theta: usize) -> PyResult<PyMesh> {
    let inner = revolution::build_mesh(ctype(ctype_name)?, &curve.inner, theta_min, theta_max, n_theta).map_err(to_py)?;
    Ok(PyMesh { inner })
}

/// Polyline of fixed total length between two fixed endpoints.
#[pyclass(name = "Chain", module = "extcat_py", frozen)]
pub struct PyChain {
    inner: DiscreteChain,
}

#[pymethods]
impl PyChain {
    /// Starting chain bulged toward lower weight until it has `target_length`.
    #[new]
    #[pyo3(signature = (ctype_name, start, end, segments, target_length, r = 1.0))]
    fn new(
        ctype_name: &str,
        start: (f64, f64),
        end: (f64, f64),
        segments: usize,
        target_length: f64,
        r: f64,
    ) -> PyResult<Self> {
        let inner = relaxer::initial_chain(ctype(ctype_name)?, r, start, end, segments, target_length).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn nodes(&self) -> Vec<(f64, f64)> {
        self.inner.nodes.clone()
    }

    #[getter]
    fn target_length(&self) -> f64 {
        self.inner.target_length
    }

    fn length(&self) -> f64 {
        relaxer::chain_length(&self.inner)
    }

    #[pyo3(signature = (lambda_ = 0.0))]
    fn energy(&self, lambda_: f64) -> PyResult<f64> {
        relaxer::chain_energy(&self.inner, lambda_).map_err(to_py)
    }

    /// Largest deviation from the catenary law over interior nodes.
    fn max_kappa_residual(&self) -> PyResult<f64> {
        relaxer::max_kappa_residual(&self.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Chain(ctype={}, segments={})", self.inner.ctype, self.inner.segments())
    }
}

#[pyclass(name = "RelaxReport", module = "extcat_py", frozen, get_all)]
pub struct PyRelaxReport {
    iterations: usize,
    final_energy: f64,
    grad_norm: f64,
    max_kappa_residual: f64,
    /// "converged", "max_iter" or "infeasible".
    status: &'static str,
    taut: bool,
}

#[pymethods]
impl PyRelaxReport {
    fn __repr__(&self) -> String {
        format!(
            "RelaxReport(status={}, iterations={}, final_energy={}, max_kappa_residual={})",
            self.status, self.iterations, self.final_energy, self.max_kappa_residual
        )
    }
}

/// Minimizes the weighted length of `chain` at fixed length.
#[pyfunction]
#[pyo3(signature = (chain, max_iter = 200_000, grad_tol = 1e-8, newton = true, lambda_ = 0.0))]
fn relax(
    py: Python<'_>,
    chain: &PyChain,
    max_iter: usize,
    grad_tol: f64,
    newton: bool,
    lambda_: f64,
) -> PyResult<(PyChain, PyRelaxReport)> {
    let opts = RelaxOptions { max_iter, grad_tol, newton, lambda: lambda_, ..RelaxOptions::for_radius(chain.inner.r) };
    let (out, rep) = py.detach(|| relaxer::relax(&chain.inner, &opts)).map_err(to_py)?;
    let status = match rep.status {
        RelaxStatus::Converged => "converged",
        RelaxStatus::MaxIter => "max_iter",
        RelaxStatus::Infeasible => "infeasible",
    };
    let report = PyRelaxReport {
        iterations: rep.iterations,
        final_energy: rep.final_energy,
        grad_norm: rep.grad_norm,
        max_kappa_residual: rep.max_kappa_residual,
        status,
        taut: rep.taut,
    };
    Ok((PyChain { inner: out }, report))
}

#[pymodule]
fn extcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add("UsageError", m.py().get_type::<UsageError>())?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyMesh>()?;
    m.add_class::<PyChain>()?;
    m.add_class::<PyRelaxReport>()?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(catenary_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_semigeo, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_horo, m)?)?;
    m.add_function(wrap_pyfunction!(horocatenary_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(build_mesh, m)?)?;
    m.add_function(wrap_pyfunction!(relax, m)?)?;
    Ok(())
}

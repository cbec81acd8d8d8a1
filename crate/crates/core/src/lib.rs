//! Extrinsic catenaries in the hyperbolic plane and their surfaces of
//! revolution in H^3, in the hyperboloid model.
//!
//! Modules build on each other bottom-up: [`lorentz`] (Minkowski algebra),
//! [`charts`] (parametrizations and curvatures), [`catenary`] (laws and the
//! ODE integrator), [`revolution`] (rotated surfaces and mean curvature),
//! [`relaxer`] (discrete variational oracle), then [`io`] and
//! [`diagnostics`] for the command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN.

pub mod catenary;
pub mod charts;
pub mod diagnostics;
pub mod error;
pub mod io;
pub mod lorentz;
pub mod relaxer;
pub mod revolution;
pub mod testcurves;

pub use error::{Error, Result};

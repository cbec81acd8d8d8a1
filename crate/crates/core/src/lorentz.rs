//! Lorentz-Minkowski linear algebra in dimensions three and four.
//!
//! Vectors carry the timelike component first, so that the bilinear form is
//! `<a, b>_1 = -a0 b0 + a1 b1 + ... `. Both the hyperbolic plane H^2(r) and
//! the hyperbolic space H^3(r) live on the upper sheet `<X, X>_1 = -r^2`,
//! `X0 > 0`, and H^2(r) sits inside H^3(r) as the `w = 0` slice.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::error::{domain, Result};

/// A vector of the Lorentz-Minkowski space of dimension `N`.
#[derive(Clone, Copy, PartialEq)]
pub struct LorentzVec<const N: usize>(pub [f64; N]);

/// Vector of E^3_1 with components `(x, y, z)`.
pub type LorentzVec3 = LorentzVec<3>;
/// Vector of E^4_1 with components `(x, y, z, w)`.
pub type LorentzVec4 = LorentzVec<4>;

impl<const N: usize> Default for LorentzVec<N> {
    fn default() -> Self {
        Self([0.0; N])
    }
}

impl<const N: usize> LorentzVec<N> {
    pub const fn new(c: [f64; N]) -> Self {
        Self(c)
    }

    pub fn zero() -> Self {
        Self([0.0; N])
    }

    /// Canonical basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; N];
        c[i] = 1.0;
        Self(c)
    }

    /// The Minkowski product `<self, other>_1`.
    pub fn inner(&self, other: &Self) -> f64 {
        let spatial: f64 = (1..N).map(|i| self.0[i] * other.0[i]).sum();
        spatial - self.0[0] * other.0[0]
    }

    /// `<self, self>_1`; positive for spacelike vectors.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Plain Euclidean max-norm, for tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn components(&self) -> [f64; N] {
        self.0
    }
}

impl LorentzVec3 {
    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }
}

impl LorentzVec4 {
    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }
    pub fn w(&self) -> f64 {
        self.0[3]
    }
}

impl<const N: usize> fmt::Debug for LorentzVec<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LorentzVec").field(&self.0).finish()
    }
}

impl<const N: usize> Index<usize> for LorentzVec<N> {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const N: usize> Add for LorentzVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<const N: usize> AddAssign for LorentzVec<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.0[i] += rhs.0[i];
        }
    }
}

impl<const N: usize> Sub for LorentzVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<const N: usize> Neg for LorentzVec<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl<const N: usize> Mul<f64> for LorentzVec<N> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self(self.0.map(|c| c * k))
    }
}

impl<const N: usize> Mul<LorentzVec<N>> for f64 {
    type Output = LorentzVec<N>;
    fn mul(self, v: LorentzVec<N>) -> LorentzVec<N> {
        v * self
    }
}

/// `<a, b>_1`.
pub fn inner1<const N: usize>(a: &LorentzVec<N>, b: &LorentzVec<N>) -> f64 {
    a.inner(b)
}

/// Lorentzian cross product of E^3_1,
/// `a x b = (a_z b_y - a_y b_z, a_z b_x - a_x b_z, a_x b_y - a_y b_x)`.
///
/// The result is `<,>_1`-orthogonal to both arguments.
pub fn cross3(a: &LorentzVec3, b: &LorentzVec3) -> LorentzVec3 {
    let [x, y, z] = a.0;
    let [dx, dy, dz] = b.0;
    LorentzVec::new([dy * z - y * dz, dx * z - x * dz, x * dy - dx * y])
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Ternary product `x x_1 y x_1 (p / r)` of E^4_1.
///
/// Defined as the formal determinant with rows `x`, `y`, `p / r` and
/// `(-e_x, e_y, e_z, e_w)`, so that `e_x x e_y x e_z = e_w`. When `p` is a
/// point of H^3(r) and `x, y` are tangent there, this is the vector product
/// of the tangent space `T_p H^3(r)`.
pub fn cross4(x: &LorentzVec4, y: &LorentzVec4, p: &LorentzVec4, r: f64) -> LorentzVec4 {
    let q = *p * (1.0 / r);
    let rows = [x.0, y.0, q.0];
    let sign = [-1.0, 1.0, 1.0, 1.0];
    LorentzVec::new(std::array::from_fn(|j| {
        let minor = std::array::from_fn(|i| {
            let mut row = [0.0; 3];
            let mut k = 0;
            for (col, value) in rows[i].iter().enumerate() {
                if col != j {
                    row[k] = *value;
                    k += 1;
                }
            }
            row
        });
        // Cofactor of the last row, column j.
        let cofactor = if (3 + j) % 2 == 0 { 1.0 } else { -1.0 };
        sign[j] * cofactor * det3(minor)
    }))
}

/// Whether `p` lies on the upper sheet `<p,p>_1 = -r^2`, `p0 > 0`.
pub fn on_hyperboloid<const N: usize>(p: &LorentzVec<N>, r: f64, tol: f64) -> bool {
    (p.norm_sq() + r * r).abs() <= tol && p.0[0] > 0.0
}

/// Natural inclusion H^2(r) -> H^3(r), `(x, y, z) -> (x, y, z, 0)`.
pub fn embed_h2_in_h3(p: &LorentzVec3) -> LorentzVec4 {
    LorentzVec::new([p.0[0], p.0[1], p.0[2], 0.0])
}

/// Hyperbolic distance between two points of the same hyperboloid.
///
/// Uses `|p - q|_1 = 2 r sinh(d / 2r)`, which stays accurate for nearby
/// points where `acosh(-<p,q>/r^2)` loses all digits.
pub fn geodesic_distance<const N: usize>(p: &LorentzVec<N>, q: &LorentzVec<N>, r: f64) -> f64 {
    let chord = (*p - *q).norm_sq().max(0.0).sqrt();
    2.0 * r * (chord / (2.0 * r)).asinh()
}

/// Causal character of a 2-plane of E^4_1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalCharacter {
    Lorentzian,
    Riemannian,
    Degenerate,
}

/// The three reference planes through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneType {
    /// `[e_x, e_y]`, Lorentzian.
    SpanXY,
    /// `[e_y, e_z]`, Riemannian.
    SpanYZ,
    /// `[(e_x + e_y)/sqrt 2, e_z]`, degenerate.
    SpanLight,
}

impl PlaneType {
    pub fn generators(self) -> [LorentzVec4; 2] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            PlaneType::SpanXY => [LorentzVec::basis(0), LorentzVec::basis(1)],
            PlaneType::SpanYZ => [LorentzVec::basis(1), LorentzVec::basis(2)],
            PlaneType::SpanLight => [LorentzVec::new([s, s, 0.0, 0.0]), LorentzVec::basis(2)],
        }
    }

    /// Gram matrix of the generators under `<,>_1`.
    pub fn gram(self) -> [[f64; 2]; 2] {
        let [a, b] = self.generators();
        [[a.inner(&a), a.inner(&b)], [b.inner(&a), b.inner(&b)]]
    }

    /// Causal character read off the Gram matrix signature.
    pub fn causal_character(self) -> CausalCharacter {
        let g = self.gram();
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let trace = g[0][0] + g[1][1];
        if det.abs() < 1e-14 {
            CausalCharacter::Degenerate
        } else if det < 0.0 {
            CausalCharacter::Lorentzian
        } else if trace > 0.0 {
            CausalCharacter::Riemannian
        } else {
            // Negative definite planes do not occur in E^4_1.
            CausalCharacter::Lorentzian
        }
    }
}

/// Ambient distance from a point of H^3(r) to one of the reference planes.
///
/// On embedded chart points `psi(u, v)` the three values are
/// `r sinh(u/r)`, `r cosh(u/r) cosh(v/r)` and `(r/sqrt 2) e^{-v/r} cosh(u/r)`.
/// A point lying on the plane (zero distance) is a domain error because
/// every consumer needs a strictly positive weight.
pub fn dist_to_plane(p: &LorentzVec4, plane: PlaneType, _r: f64) -> Result<f64> {
    let [x, y, z, w] = p.0;
    let d = match plane {
        PlaneType::SpanXY => (z * z + w * w).sqrt(),
        PlaneType::SpanYZ => (x * x - w * w).max(0.0).sqrt(),
        PlaneType::SpanLight => (x - y) * std::f64::consts::FRAC_1_SQRT_2,
    };
    if d > 0.0 && d.is_finite() {
        Ok(d)
    } else {
        Err(domain(format!("point {:?} lies on the reference plane {:?}", p.0, plane)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_examples() {
        let e0 = LorentzVec3::new([1.0, 0.0, 0.0]);
        assert_eq!(inner1(&e0, &e0), -1.0);
        let a = LorentzVec3::new([0.0, 1.0, 0.0]);
        let b = LorentzVec3::new([0.0, 0.0, 1.0]);
        assert_eq!(inner1(&a, &b), 0.0);
        let c = LorentzVec3::new([2.0, 1.0, 0.0]);
        assert_eq!(inner1(&c, &c), -3.0);
    }

    #[test]
    fn cross3_examples() {
        let a = LorentzVec3::new([1.0, 0.0, 0.0]);
        let b = LorentzVec3::new([0.0, 1.0, 0.0]);
        assert_eq!(cross3(&a, &b), LorentzVec3::new([0.0, 0.0, 1.0]));
        let v = LorentzVec3::new([1.0, 2.0, 3.0]);
        assert_eq!(cross3(&v, &v), LorentzVec3::zero());
        let a = LorentzVec3::new([2.0, 1.0, 1.0]);
        let b = LorentzVec3::new([0.0, 3.0, -1.0]);
        assert_eq!(cross3(&a, &b).inner(&a), 0.0);
    }

    #[test]
    fn cross4_orientation() {
        let ex = LorentzVec4::basis(0);
        let ey = LorentzVec4::basis(1);
        let ez = LorentzVec4::basis(2);
        let ew = LorentzVec4::basis(3);
        assert_eq!(cross4(&ex, &ey, &ez, 1.0), ew);
        // Tangent vectors at the vertex (r, 0, 0, 0).
        let r = 2.5;
        let vertex = LorentzVec4::new([r, 0.0, 0.0, 0.0]);
        assert_eq!(cross4(&ey, &ez, &vertex, r), ew);
        assert_eq!(cross4(&ey, &ey, &vertex, r), LorentzVec4::zero());
    }

    #[test]
    fn hyperboloid_membership() {
        let r = 1.7;
        assert!(on_hyperboloid(&LorentzVec3::new([r, 0.0, 0.0]), r, 1e-12));
        assert!(!on_hyperboloid(&LorentzVec3::new([-r, 0.0, 0.0]), r, 1e-12));
        let p = LorentzVec3::new([r * 1f64.cosh(), r * 1f64.sinh(), 0.0]);
        assert!(on_hyperboloid(&p, r, 1e-12));
    }

    #[test]
    fn plane_causal_characters() {
        assert_eq!(PlaneType::SpanXY.causal_character(), CausalCharacter::Lorentzian);
        assert_eq!(PlaneType::SpanYZ.causal_character(), CausalCharacter::Riemannian);
        assert_eq!(PlaneType::SpanLight.causal_character(), CausalCharacter::Degenerate);
    }

    #[test]
    fn distance_on_plane_is_rejected() {
        let p = LorentzVec4::new([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            dist_to_plane(&p, PlaneType::SpanXY, 1.0),
            Err(crate::Error::Domain(_))
        ));
        assert_eq!(dist_to_plane(&p, PlaneType::SpanYZ, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn embedding_pads_with_zero() {
        let p = LorentzVec3::new([3.0, 0.0, 0.0]);
        assert_eq!(embed_h2_in_h3(&p), LorentzVec4::new([3.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn geodesic_distance_along_reference_geodesic() {
        let r = 2.0;
        let l = |v: f64| LorentzVec3::new([r * (v / r).cosh(), r * (v / r).sinh(), 0.0]);
        let d = geodesic_distance(&l(-0.3), &l(1.2), r);
        assert!((d - 1.5).abs() < 1e-13);
    }
}

//! Geometry of the unit ball of C^n: Hermitian inner product, Mobius
//! automorphisms exchanging 0 and w, and the Bergman metric.

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Interior points keep |z| at least this far from the unit sphere.
pub const INTERIOR_MARGIN: f64 = 1e-12;

pub(crate) type Coords = SmallVec<[Complex64; 2]>;

/// A point of the open unit ball of C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Coords,
}

impl Point {
    /// Validates |z| <= 1 - 1e-12, n >= 1 and finite coordinates.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        Self::from_coords(coords.into())
    }

    pub(crate) fn from_coords(coords: Coords) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::param("coords", "dimension must be >= 1"));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::param("coords", "coordinates must be finite"));
        }
        let p = Point { coords };
        let norm = p.norm();
        if norm > 1.0 - INTERIOR_MARGIN {
            return Err(Error::NotInterior { norm });
        }
        Ok(p)
    }

    /// Skips the interior check; used by quadrature engines whose nodes are
    /// interior by construction.
    pub(crate) fn new_unchecked(coords: Coords) -> Self {
        Point { coords }
    }

    pub fn origin(n: usize) -> Self {
        Point {
            coords: std::iter::repeat(Complex64::new(0.0, 0.0)).take(n).collect(),
        }
    }

    /// One-variable point on the real axis.
    pub fn real_1d(x: f64) -> Result<Self> {
        Point::new(vec![Complex64::new(x, 0.0)])
    }

    pub fn complex_1d(z: Complex64) -> Result<Self> {
        Point::new(vec![z])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Scales the point toward the origin; |t| * |z| must stay interior.
    pub fn scale(&self, t: f64) -> Result<Self> {
        Point::from_coords(self.coords.iter().map(|c| c * t).collect())
    }
}

/// A unit vector of the sphere bounding the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDirection {
    coords: Coords,
}

impl BoundaryDirection {
    /// Accepts a vector within 1e-12 of unit length and renormalizes it.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::param("coords", "dimension must be >= 1"));
        }
        let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit { norm });
        }
        Ok(BoundaryDirection {
            coords: coords.into_iter().map(|c| c / norm).collect(),
        })
    }

    /// The direction (1,...,1)/sqrt(n), along which the Cesaro symbol acts.
    pub fn diagonal(n: usize) -> Self {
        let s = 1.0 / (n as f64).sqrt();
        BoundaryDirection {
            coords: std::iter::repeat(Complex64::new(s, 0.0)).take(n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Interior point at distance |z| = r along this direction.
    pub fn at_radius(&self, r: f64) -> Result<Point> {
        Point::from_coords(self.coords.iter().map(|c| c * r).collect())
    }
}

/// A Bergman-metric ball D(z, r).
#[derive(Debug, Clone)]
pub struct MetricBall {
    pub center: Point,
    pub radius: f64,
}

impl MetricBall {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::param("radius", "must be positive and finite"));
        }
        Ok(MetricBall { center, radius })
    }

    pub fn contains(&self, z: &Point) -> Result<bool> {
        Ok(bergman_distance(&self.center, z)? < self.radius)
    }
}

/// Hermitian inner product sum_k z_k conj(w_k).
pub fn inner(z: &Point, w: &Point) -> Result<Complex64> {
    if z.dim() != w.dim() {
        return Err(Error::DimensionMismatch(z.dim(), w.dim()));
    }
    Ok(inner_raw(z.coords(), w.coords()))
}

pub(crate) fn inner_raw(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// The automorphism of the ball taking 0 to w, applied to z.
///
/// For w != 0 this is (w - P_w z - s_w Q_w z) / (1 - <z,w>) with P_w the
/// projection onto span(w), Q_w = I - P_w and s_w = sqrt(1 - |w|^2); for
/// w = 0 it is the identity.
pub fn mobius(w: &Point, z: &Point) -> Result<Point> {
    if w.dim() != z.dim() {
        return Err(Error::DimensionMismatch(w.dim(), z.dim()));
    }
    let w_sq = w.norm_sq();
    if w_sq == 0.0 {
        return Ok(z.clone());
    }
    let zw = inner_raw(z.coords(), w.coords());
    let s = (1.0 - w_sq).sqrt();
    let proj = zw / w_sq;
    let denom = Complex64::new(1.0, 0.0) - zw;
    let coords: Coords = w
        .coords()
        .iter()
        .zip(z.coords())
        .map(|(wk, zk)| {
            let p = proj * wk;
            let q = zk - p;
            (wk - p - s * q) / denom
        })
        .collect();
    // The image of an interior point is interior; rounding can leave it a
    // hair outside the margin, so clamp instead of failing.
    let out = Point { coords };
    debug_assert!(out.norm() < 1.0);
    if out.norm() > 1.0 - INTERIOR_MARGIN {
        let shrink = (1.0 - INTERIOR_MARGIN) / out.norm();
        return out.scale(shrink);
    }
    Ok(out)
}

/// Bergman-metric distance (1/2) log (1+|phi_z(w)|)/(1-|phi_z(w)|).
pub fn bergman_distance(z: &Point, w: &Point) -> Result<f64> {
    let image = mobius(z, w)?;
    Ok(image.norm().atanh())
}

/// Distance of a point from the origin, atanh |z|.
pub fn bergman_distance_to_origin(z: &Point) -> f64 {
    z.norm().atanh()
}

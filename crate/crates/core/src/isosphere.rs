//! Isometric spheres of Moebius transformations.
//!
//! For g = [a, b; c, d] in PSL(2,C) not fixing infinity, the isometric
//! sphere I(g) is the Euclidean hemisphere centered at g^{-1}(oo) = -d/c
//! with radius 1/|c|. Only the boundary circle on C is stored; every
//! predicate needed here (disjointness, containment in a vertical domain)
//! is planar.

use num_complex::Complex64;
use thiserror::Error;

use crate::moebius::MoebiusMap;

/// Threshold below which the c-entry counts as zero (the element fixes oo).
pub const FIXES_INFINITY_TOL: f64 = 1e-12;

/// Default tolerance band for tangency detection.
pub const TANGENCY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    /// Upper-triangular (cusp) elements have no isometric sphere.
    #[error("element fixes infinity (|c| = {0:.3e}); no isometric sphere")]
    FixesInfinity(f64),
    /// The Moebius image of the circle passes through infinity.
    #[error("image circle degenerates to a line (curvature {0:.3e})")]
    ImageIsLine(f64),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
}

/// The boundary circle of an isometric hemisphere: center in C, radius > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometricSphere {
    center: Complex64,
    radius: f64,
}

impl IsometricSphere {
    pub fn new(center: Complex64, radius: f64) -> Result<Self, SphereError> {
        if radius > 0.0 {
            Ok(IsometricSphere { center, radius })
        } else {
            Err(SphereError::NonPositiveRadius(radius))
        }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The same circle translated by `t`.
    pub fn translated(&self, t: Complex64) -> IsometricSphere {
        IsometricSphere {
            center: self.center + t,
            radius: self.radius,
        }
    }

    pub fn approx_eq(&self, other: &IsometricSphere, tol: f64) -> bool {
        (self.center - other.center).norm() <= tol && (self.radius - other.radius).abs() <= tol
    }
}

/// The isometric sphere I(g): center -d/c, radius 1/|c|.
pub fn isometric_sphere(m: &MoebiusMap) -> Result<IsometricSphere, SphereError> {
    let c_norm = m.c().norm();
    if c_norm <= FIXES_INFINITY_TOL {
        return Err(SphereError::FixesInfinity(c_norm));
    }
    Ok(IsometricSphere {
        center: -m.d() / m.c(),
        radius: 1.0 / c_norm,
    })
}

/// Image of the circle `s` under `m`, as a circle.
///
/// The map is decomposed as z -> cz + d, then w -> 1/w, then
/// w -> a/c - w/c (or is affine outright when c = 0); the inversion step
/// uses the closed form for the image of a circle not through the origin.
/// Fails with `ImageIsLine` when `s` passes through the pole of `m` within
/// curvature 1e-12.
pub fn image_under(m: &MoebiusMap, s: &IsometricSphere) -> Result<IsometricSphere, SphereError> {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    if c.norm() <= FIXES_INFINITY_TOL {
        // Affine: z -> (a z + b)/d, determinant one so a/d = a^2 etc.
        let scale = a / d;
        return IsometricSphere::new(scale * s.center + b / d, scale.norm() * s.radius);
    }
    // After z -> cz + d the circle is (c1, r1); inversion sends it to
    // conj(c1)/(|c1|^2 - r1^2) with radius r1/||c1|^2 - r1^2|.
    let c1 = c * s.center + d;
    let r1 = c.norm() * s.radius;
    let denom = c1.norm_sqr() - r1 * r1;
    // Curvature of the final image: |denom| * |c| / r1.
    let curvature = denom.abs() * c.norm() / r1;
    if curvature < 1e-12 {
        return Err(SphereError::ImageIsLine(curvature));
    }
    let inv_center = c1.conj() / denom;
    let inv_radius = r1 / denom.abs();
    IsometricSphere::new(a / c - inv_center / c, inv_radius / c.norm())
}

/// Outcome of the planar disjointness test, carrying the signed margin
/// |c1 - c2| - (r1 + r2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Separation {
    Disjoint { margin: f64 },
    Tangent,
    Overlapping { depth: f64 },
}

impl Separation {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Separation::Disjoint { .. })
    }
}

/// Signed margin between two circles: |c1 - c2| - (r1 + r2).
pub fn margin(s1: &IsometricSphere, s2: &IsometricSphere) -> f64 {
    (s1.center - s2.center).norm() - (s1.radius + s2.radius)
}

/// Classifies a pair of circles as disjoint (margin > tol), tangent
/// (|margin| <= tol) or overlapping (depth = -margin).
pub fn disjoint(s1: &IsometricSphere, s2: &IsometricSphere, tol: f64) -> Separation {
    let m = margin(s1, s2);
    if m > tol {
        Separation::Disjoint { margin: m }
    } else if m >= -tol {
        Separation::Tangent
    } else {
        Separation::Overlapping { depth: -m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gamma1() -> MoebiusMap {
        MoebiusMap::from_real(2.0, -1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn gamma1_sphere_center_zero_radius_one() {
        let s = isometric_sphere(&gamma1()).unwrap();
        assert!((s.center() - c(0.0, 0.0)).norm() <= 1e-12);
        assert!((s.radius() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn gamma1_inverse_sphere_center_two_radius_one() {
        let s = isometric_sphere(&gamma1().inverse()).unwrap();
        assert!((s.center() - c(2.0, 0.0)).norm() <= 1e-12);
        assert!((s.radius() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn conjugation_by_translation_shifts_sphere() {
        // A gamma1 A^{-1} with A = [[1,5],[0,1]] has sphere at 5, radius 1.
        let a = MoebiusMap::translation(c(5.0, 0.0));
        let conj = a.compose(&gamma1()).compose(&a.inverse());
        let s = isometric_sphere(&conj).unwrap();
        assert!((s.center() - c(5.0, 0.0)).norm() <= 1e-12);
        assert!((s.radius() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn cusp_element_has_no_sphere() {
        let alpha = MoebiusMap::translation(c(4.0, 0.0));
        assert!(matches!(
            isometric_sphere(&alpha),
            Err(SphereError::FixesInfinity(_))
        ));
    }

    #[test]
    fn gamma_maps_own_sphere_to_inverse_sphere() {
        // I(g) is mapped isometrically to I(g^{-1}).
        let g = gamma1();
        let image = image_under(&g, &isometric_sphere(&g).unwrap()).unwrap();
        let expect = isometric_sphere(&g.inverse()).unwrap();
        assert!(image.approx_eq(&expect, 1e-12));
    }

    #[test]
    fn translation_shifts_circle() {
        let t = MoebiusMap::translation(c(5.0, 0.0));
        let s = IsometricSphere::new(c(0.0, 0.0), 1.0).unwrap();
        let image = image_under(&t, &s).unwrap();
        assert!(image.approx_eq(&s.translated(c(5.0, 0.0)), 1e-12));
    }

    #[test]
    fn identity_fixes_circle() {
        let s = IsometricSphere::new(c(0.3, -1.7), 2.5).unwrap();
        let image = image_under(&MoebiusMap::identity(), &s).unwrap();
        assert!(image.approx_eq(&s, 1e-12));
    }

    #[test]
    fn circle_through_pole_maps_to_line() {
        // gamma1 has pole 0; the circle centered at 1 with radius 1 passes
        // through it.
        let s = IsometricSphere::new(c(1.0, 0.0), 1.0).unwrap();
        assert!(matches!(
            image_under(&gamma1(), &s),
            Err(SphereError::ImageIsLine(_))
        ));
    }

    #[test]
    fn disjointness_trichotomy() {
        let s0 = IsometricSphere::new(c(0.0, 0.0), 1.0).unwrap();
        let s2 = IsometricSphere::new(c(2.0, 0.0), 1.0).unwrap();
        let s5 = IsometricSphere::new(c(5.0, 0.0), 1.0).unwrap();
        let s05 = IsometricSphere::new(c(0.5, 0.0), 1.0).unwrap();

        assert_eq!(disjoint(&s0, &s2, 1e-9), Separation::Tangent);
        match disjoint(&s0, &s5, 1e-9) {
            Separation::Disjoint { margin } => assert!((margin - 3.0).abs() <= 1e-12),
            other => panic!("expected disjoint, got {other:?}"),
        }
        match disjoint(&s0, &s05, 1e-9) {
            Separation::Overlapping { depth } => assert!((depth - 1.5).abs() <= 1e-12),
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn zero_radius_rejected() {
        assert!(IsometricSphere::new(c(0.0, 0.0), 0.0).is_err());
        assert!(IsometricSphere::new(c(0.0, 0.0), -1.0).is_err());
    }
}

//! Moebius transformations as normalized 2x2 complex matrices.
//!
//! An element of PSL(2,C) is represented by a matrix
//!
//! ```text
//!     [ a  b ]
//!     [ c  d ]        ad - bc = 1,
//! ```
//!
//! well defined up to a global sign. Construction normalizes the determinant
//! to one; composition preserves the sign of the chosen lifts so that traces
//! of words in fixed generator lifts are meaningful (parabolic words can have
//! trace -2 as well as +2). The sign-canonical representative, used for
//! equality testing and deduplication, flips the pair so that the first
//! nonzero entry in the order (a, b, c, d) has argument in (-pi/2, pi/2].

use num_complex::Complex64;
use thiserror::Error;

/// Determinant normalization tolerance: |ad - bc - 1| stays below this.
pub const DET_TOL: f64 = 1e-12;

/// Default tolerance for trace classification, on |tr^2 - 4|.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    /// The input matrix has (numerically) vanishing determinant.
    #[error("matrix is singular: |det| = {0:.3e}")]
    Singular(f64),
}

/// A point of the boundary sphere C u {oo}.
///
/// Infinity is an explicit tagged value, never a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(Complex64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        BoundaryPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Approximate equality; two infinities are equal, an infinity never
    /// equals a finite point.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => (z - w).norm() <= tol,
            _ => false,
        }
    }
}

impl From<Complex64> for BoundaryPoint {
    fn from(z: Complex64) -> Self {
        BoundaryPoint::Finite(z)
    }
}

/// Trace classification of a Moebius transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// An element of PSL(2,C), stored as a determinant-one lift.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    /// Builds a map from matrix entries, scaling to determinant one and
    /// applying the canonical sign.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        if det.norm() < 1e-30 {
            return Err(MoebiusError::Singular(det.norm()));
        }
        let s = det.sqrt();
        Ok(MoebiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        }
        .sign_canonical())
    }

    /// Convenience constructor from real entries.
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// The parabolic translation z -> z + t.
    pub fn translation(t: Complex64) -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: t,
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn c(&self) -> Complex64 {
        self.c
    }
    pub fn d(&self) -> Complex64 {
        self.d
    }

    /// Entries in the order (a, b, c, d).
    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// tr^2, invariant under the sign ambiguity of the lift.
    pub fn trace_sq(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    /// Matrix product `self * other`. The determinant is renormalized
    /// (its drift is multiplicative roundoff near 1, and the principal
    /// square root never flips the sign), so traces of long words keep
    /// the sign of the product of the chosen lifts.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        let s = (a * d - b * c).sqrt();
        MoebiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        }
    }

    /// Inverse with the same lift sign: [d, -b; -c, a].
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self^k` by repeated multiplication (k may be negative).
    pub fn power(&self, k: i64) -> MoebiusMap {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = MoebiusMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// The canonical sign representative: the first entry of (a, b, c, d)
    /// whose modulus exceeds 1e-12 times the largest modulus must have
    /// argument in (-pi/2, pi/2].
    pub fn sign_canonical(&self) -> MoebiusMap {
        let entries = self.entries();
        let max_norm = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lead = entries
            .iter()
            .find(|z| z.norm() > 1e-12 * max_norm)
            .copied()
            .unwrap_or_else(|| Complex64::new(1.0, 0.0));
        let keep = lead.re > 0.0 || (lead.re == 0.0 && lead.im > 0.0);
        if keep {
            *self
        } else {
            MoebiusMap {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        }
    }

    /// Full normalization: determinant one plus canonical sign. Idempotent.
    pub fn normalize(&self) -> MoebiusMap {
        let det = self.a * self.d - self.b * self.c;
        let s = det.sqrt();
        MoebiusMap {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
        .sign_canonical()
    }

    /// Entrywise distance between the sign-canonical representatives.
    pub fn canonical_distance(&self, other: &MoebiusMap) -> f64 {
        let x = self.sign_canonical();
        let y = other.sign_canonical();
        x.entries()
            .iter()
            .zip(y.entries().iter())
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max)
    }

    /// Equality as elements of PSL(2,C), up to `tol` entrywise.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        self.canonical_distance(other) <= tol
    }

    /// True if this is +-identity within `tol`.
    pub fn is_identity(&self, tol: f64) -> bool {
        let m = self.sign_canonical();
        (m.a - 1.0).norm() <= tol
            && (m.d - 1.0).norm() <= tol
            && m.b.norm() <= tol
            && m.c.norm() <= tol
    }

    /// Action on the boundary sphere: z -> (az + b)/(cz + d), with the
    /// usual conventions at infinity and at the pole -d/c.
    pub fn apply_boundary(&self, z: BoundaryPoint) -> BoundaryPoint {
        match z {
            BoundaryPoint::Infinity => {
                if self.c.norm() == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let denom = self.c * z + self.d;
                if denom.norm() == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * z + self.b) / denom)
                }
            }
        }
    }

    /// Classifies by trace with the default tolerance [`CLASSIFY_TOL`].
    pub fn classify(&self) -> MapClass {
        self.classify_with_tol(CLASSIFY_TOL)
    }

    /// Trace classification: identity if the matrix is +-Id; parabolic if
    /// tr^2 = 4 within `tol`; elliptic if tr^2 is real in [0, 4); otherwise
    /// loxodromic.
    pub fn classify_with_tol(&self, tol: f64) -> MapClass {
        if self.is_identity(tol) {
            return MapClass::Identity;
        }
        let t2 = self.trace_sq();
        if (t2 - 4.0).norm() <= tol {
            return MapClass::Parabolic;
        }
        if t2.im.abs() <= tol && t2.re >= -tol && t2.re < 4.0 {
            return MapClass::Elliptic;
        }
        MapClass::Loxodromic
    }
}

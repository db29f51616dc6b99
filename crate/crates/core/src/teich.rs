//! Cusp shapes in the Teichmueller space of the torus, the hyperbolic
//! metric on it, and slope censuses on flat tori.
//!
//! The Teichmueller space of the torus is the upper half-plane: a marked
//! lattice (a, b) has modulus tau = b/a (orientation-corrected), and the
//! distance between moduli is the hyperbolic distance
//! arccosh(1 + |t1 - t2|^2 / (2 Im t1 Im t2)). There is no reduction to the
//! modular fundamental domain: these are marked similarity classes, not
//! moduli space.

use num_complex::Complex64;
use thiserror::Error;

use crate::comprbody::{build_rep, suggest_scale, verify_structure, LATTICE_INDEPENDENCE_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TeichError {
    #[error("degenerate lattice: |Im(b/a)| = {0:.3e}")]
    DegenerateLattice(f64),
    #[error("slope ({p}, {q}) is not primitive")]
    NotPrimitive { p: i64, q: i64 },
    #[error("modulus must have positive imaginary part, got {0}")]
    NotUpperHalfPlane(f64),
}

/// A marked flat-torus similarity class: a point tau of the upper
/// half-plane, remembering the generating lattice pair when there is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusShape {
    tau: Complex64,
    lattice: Option<(Complex64, Complex64)>,
}

impl TorusShape {
    pub fn new(tau: Complex64) -> Result<Self, TeichError> {
        if tau.im > 0.0 {
            Ok(TorusShape { tau, lattice: None })
        } else {
            Err(TeichError::NotUpperHalfPlane(tau.im))
        }
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn lattice(&self) -> Option<(Complex64, Complex64)> {
        self.lattice
    }
}

/// A flat torus C / (Z u + Z v) with its marked generator pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatTorus {
    u: Complex64,
    v: Complex64,
}

impl FlatTorus {
    pub fn new(u: Complex64, v: Complex64) -> Result<Self, TeichError> {
        let area = (v.conj() * u).im.abs();
        if area > 0.0 {
            Ok(FlatTorus { u, v })
        } else {
            Err(TeichError::DegenerateLattice(0.0))
        }
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }
    pub fn v(&self) -> Complex64 {
        self.v
    }

    /// Covolume |Im(conj(u) v)| of the lattice.
    pub fn area(&self) -> f64 {
        (self.u.conj() * self.v).im.abs()
    }
}

/// The cusp shape of the lattice generated by a and b: tau = b/a when that
/// lies in the upper half-plane, a/b otherwise.
pub fn cusp_shape(a: Complex64, b: Complex64) -> Result<TorusShape, TeichError> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(TeichError::DegenerateLattice(0.0));
    }
    let ratio = b / a;
    if ratio.im.abs() <= LATTICE_INDEPENDENCE_TOL {
        return Err(TeichError::DegenerateLattice(ratio.im.abs()));
    }
    let tau = if ratio.im > 0.0 { ratio } else { a / b };
    Ok(TorusShape {
        tau,
        lattice: Some((a, b)),
    })
}

/// Hyperbolic distance between two moduli in the upper half-plane:
/// arccosh(1 + |t1 - t2|^2 / (2 Im t1 Im t2)).
pub fn teich_distance(t1: &TorusShape, t2: &TorusShape) -> f64 {
    let d2 = (t1.tau - t2.tau).norm_sqr();
    (1.0 + d2 / (2.0 * t1.tau.im * t2.tau.im)).acosh()
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

/// Euclidean length |p u + q v| of the primitive slope (p, q).
pub fn slope_length(t: &FlatTorus, slope: (i64, i64)) -> Result<f64, TeichError> {
    let (p, q) = slope;
    if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(TeichError::NotPrimitive { p, q });
    }
    Ok((p as f64 * t.u + q as f64 * t.v).norm())
}

/// A slope with its length on a given flat torus.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SlopeLength {
    pub p: i64,
    pub q: i64,
    pub length: f64,
}

/// All primitive slopes of length at most `max_len`, one representative per
/// +-pair (q > 0, or q = 0 and p = 1), sorted by length with ties broken by
/// (q, p). Complete: |p u + q v| >= |p| area/|v| and >= |q| area/|u| bound
/// the search window.
pub fn short_slopes(t: &FlatTorus, max_len: f64) -> Vec<SlopeLength> {
    let mut out = Vec::new();
    if max_len < 0.0 {
        return out;
    }
    let area = t.area();
    let p_max = (max_len * t.v.norm() / area).ceil() as i64;
    let q_max = (max_len * t.u.norm() / area).ceil() as i64;
    for q in 0..=q_max {
        for p in -p_max..=p_max {
            if q == 0 && p != 1 {
                continue;
            }
            if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
                continue;
            }
            let length = (p as f64 * t.u + q as f64 * t.v).norm();
            if length <= max_len {
                out.push(SlopeLength { p, q, length });
            }
        }
    }
    out.sort_by(|x, y| {
        x.length
            .total_cmp(&y.length)
            .then(x.q.cmp(&y.q))
            .then(x.p.cmp(&y.p))
    });
    out
}

/// Lattice parameters (a, b) = (s, s tau) realizing the target shape with a
/// verified hyperbolic structure on n handles. The scale s is a power of
/// two (so b/a reproduces tau exactly in floating point), doubled from the
/// suggested scale until the verifier accepts; termination is guaranteed by
/// scaling monotonicity.
pub fn params_for_shape(target: &TorusShape, n: usize) -> (Complex64, Complex64) {
    let tau = target.tau;
    assert!(
        tau.im > LATTICE_INDEPENDENCE_TOL,
        "target shape is numerically degenerate (Im tau = {})",
        tau.im
    );
    let threshold = suggest_scale(n);
    let mut s = 1.0f64;
    while s < threshold {
        s *= 2.0;
    }
    loop {
        let a = Complex64::new(s, 0.0);
        let b = s * tau;
        if let Ok(rep) = build_rep(n, a, b) {
            if verify_structure(&rep, 1e-9).is_verified() {
                return (a, b);
            }
        }
        s *= 2.0;
        assert!(s.is_finite(), "scale search overflowed for tau = {tau}");
    }
}

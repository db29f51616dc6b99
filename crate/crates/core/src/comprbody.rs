//! Explicit representations of (1;n+1)-compression-body groups and the
//! certificate that their isometric-sphere configuration satisfies the
//! disjointness hypotheses of the Poincare polyhedron theorem.
//!
//! The representation sends the peripheral generators to the translations
//! z -> z + a and z -> z + b, the first handle generator to
//! gamma_1 = [2, -1; 1, 0], and inductively gamma_{i+1} = A gamma_i A^{-1}
//! with A the translation by 5. The isometric spheres of gamma_j^{+-1} are
//! then unit hemispheres centered at 5(j-1) and 5(j-1)+2.
//!
//! `verify_structure` checks the computable content of the discreteness
//! argument: every sphere pair from distinct handles is disjoint, every
//! sphere disk sits inside a vertical fundamental domain, and the whole
//! configuration clears all of its peripheral lattice translates. The two
//! spheres of one handle are the glued face pair; they are tangent at the
//! parabolic fixed point by construction and are exempt from the strict
//! disjointness requirement.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::isosphere::{isometric_sphere, margin, IsometricSphere};
use crate::moebius::MoebiusMap;

/// Lattice generators must satisfy |Im(b/a)| above this bound.
pub const LATTICE_INDEPENDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    /// a and b are linearly dependent over R: no rank-2 cusp.
    #[error("degenerate lattice: |Im(b/a)| = {0:.3e}")]
    DegenerateLattice(f64),
    #[error("a compression body needs at least one 1-handle")]
    ZeroHandles,
}

/// The representation data for C(1;n+1): peripheral translations by a and b
/// plus n conjugate parabolic handle generators.
#[derive(Debug, Clone)]
pub struct CompressionBodyRep {
    n: usize,
    a: Complex64,
    b: Complex64,
    alpha: MoebiusMap,
    beta: MoebiusMap,
    gammas: Vec<MoebiusMap>,
}

impl CompressionBodyRep {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> Complex64 {
        self.a
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn alpha(&self) -> &MoebiusMap {
        &self.alpha
    }
    pub fn beta(&self) -> &MoebiusMap {
        &self.beta
    }
    pub fn gammas(&self) -> &[MoebiusMap] {
        &self.gammas
    }

    /// gamma_i, 1-based.
    pub fn gamma(&self, i: usize) -> Option<&MoebiusMap> {
        if i >= 1 {
            self.gammas.get(i - 1)
        } else {
            None
        }
    }

    /// The 2n isometric spheres I(gamma_j^{+-1}), in the order
    /// I(gamma_1), I(gamma_1^{-1}), I(gamma_2), ...
    pub fn spheres(&self) -> Vec<IsometricSphere> {
        self.gammas
            .iter()
            .flat_map(|g| {
                [
                    isometric_sphere(g).expect("handle generators never fix infinity"),
                    isometric_sphere(&g.inverse()).expect("handle generators never fix infinity"),
                ]
            })
            .collect()
    }
}

/// Builds the standard representation for n handles and cusp translations
/// a, b. Fails if the lattice is degenerate.
pub fn build_rep(n: usize, a: Complex64, b: Complex64) -> Result<CompressionBodyRep, BuildError> {
    if n == 0 {
        return Err(BuildError::ZeroHandles);
    }
    if a.norm() == 0.0 {
        return Err(BuildError::DegenerateLattice(0.0));
    }
    let skew = (b / a).im.abs();
    if skew <= LATTICE_INDEPENDENCE_TOL {
        return Err(BuildError::DegenerateLattice(skew));
    }
    let gamma1 = MoebiusMap::from_real(2.0, -1.0, 1.0, 0.0).expect("det 1");
    let conj = MoebiusMap::translation(Complex64::new(5.0, 0.0));
    let mut gammas = Vec::with_capacity(n);
    let mut g = gamma1;
    for i in 0..n {
        if i > 0 {
            g = conj.compose(&g).compose(&conj.inverse());
        }
        gammas.push(g);
    }
    Ok(CompressionBodyRep {
        n,
        a,
        b,
        alpha: MoebiusMap::translation(a),
        beta: MoebiusMap::translation(b),
        gammas,
    })
}

/// The parallelogram {basepoint + s a + t b : s, t in [0,1)} whose vertical
/// walls cut out a fundamental domain for the cusp group.
#[derive(Debug, Clone, Copy)]
pub struct VerticalFundamentalDomain {
    basepoint: Complex64,
    a: Complex64,
    b: Complex64,
}

impl VerticalFundamentalDomain {
    pub fn new(basepoint: Complex64, a: Complex64, b: Complex64) -> Result<Self, BuildError> {
        let area = cross(a, b).abs();
        if area == 0.0 {
            return Err(BuildError::DegenerateLattice(0.0));
        }
        Ok(VerticalFundamentalDomain { basepoint, a, b })
    }

    pub fn basepoint(&self) -> Complex64 {
        self.basepoint
    }
    pub fn spans(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }

    /// Corners in drawing order: base, base+a, base+a+b, base+b.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            self.basepoint,
            self.basepoint + self.a,
            self.basepoint + self.a + self.b,
            self.basepoint + self.b,
        ]
    }

    /// Skew coordinates (s, t) of z with z = basepoint + s a + t b.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        let w = z - self.basepoint;
        let s = cross(self.b, w) / cross(self.b, self.a);
        let t = cross(self.a, w) / cross(self.a, self.b);
        (s, t)
    }

    /// Whether (s, t) of z lies in the closed unit square, up to tol.
    pub fn contains_closed(&self, z: Complex64, tol: f64) -> bool {
        let (s, t) = self.coords(z);
        s >= -tol && s <= 1.0 + tol && t >= -tol && t <= 1.0 + tol
    }

    /// Minimum inward distance from z to the four wall lines. Positive
    /// inside, negative outside.
    pub fn inward_clearance(&self, z: Complex64) -> f64 {
        let center = self.basepoint + 0.5 * (self.a + self.b);
        let edges = [
            (self.basepoint, self.a),
            (self.basepoint + self.a, self.b),
            (self.basepoint + self.b, self.a),
            (self.basepoint, self.b),
        ];
        edges
            .iter()
            .map(|&(p, dir)| {
                let u = dir / dir.norm();
                let side = cross(u, center - p).signum();
                side * cross(u, z - p)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Verdict of the structure verifier. Rejection is a result, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Verified,
    Rejected { reason: String },
}

/// One checked constraint: a pair of sphere identifiers and its margin.
/// Translate copies carry an `@p,q` suffix; wall clearances pair a sphere
/// with `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginEntry {
    pub pair: [String; 2],
    pub margin: f64,
}

/// Certificate recording the checked hypotheses: verified iff every listed
/// margin exceeds the tolerance.
#[derive(Debug, Clone)]
pub struct StructureCertificate {
    pub verdict: Verdict,
    pub n: usize,
    pub a: Complex64,
    pub b: Complex64,
    pub tol: f64,
    pub margins: Vec<MarginEntry>,
    pub domain: VerticalFundamentalDomain,
}

impl StructureCertificate {
    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified)
    }

    /// Smallest checked margin, if any constraint was checked.
    pub fn min_margin(&self) -> Option<f64> {
        self.margins
            .iter()
            .map(|e| e.margin)
            .min_by(|x, y| x.total_cmp(y))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Identifier of the k-th sphere in the I(g1), I(g1^-1), I(g2), ... order:
/// lowercase for gamma_j, uppercase for its inverse.
fn sphere_id(index: usize) -> String {
    let j = index / 2 + 1;
    if index.is_multiple_of(2) {
        format!("g{j}")
    } else {
        format!("G{j}")
    }
}

/// Checks the hyperbolic-structure hypotheses for `rep` at tolerance `tol`.
///
/// Verified iff: (1) spheres of distinct handles are pairwise disjoint with
/// margin > tol, (2) every sphere disk clears the walls of the vertical
/// fundamental domain centered on the configuration, and (3) the sphere set
/// clears all peripheral translates p a + q b over a window wide enough
/// that farther translates cannot touch. All checked margins are reported,
/// sorted by pair identifier.
pub fn verify_structure(rep: &CompressionBodyRep, tol: f64) -> StructureCertificate {
    let spheres = rep.spheres();
    let centers: Vec<Complex64> = spheres.iter().map(|s| s.center()).collect();
    let max_radius = spheres.iter().map(|s| s.radius()).fold(0.0, f64::max);

    let centroid = centers.iter().sum::<Complex64>() / centers.len() as f64;
    let domain = VerticalFundamentalDomain::new(centroid - 0.5 * (rep.a + rep.b), rep.a, rep.b)
        .expect("rep lattice is nondegenerate");

    let mut margins: Vec<MarginEntry> = Vec::new();

    // (1) Pairwise disjointness across distinct handles. The two spheres of
    // one handle are glued to each other and tangent at the fixed point of
    // the parabolic, so same-handle pairs are not constraints.
    for i in 0..spheres.len() {
        for j in (i + 1)..spheres.len() {
            if i / 2 == j / 2 {
                continue;
            }
            margins.push(MarginEntry {
                pair: [sphere_id(i), sphere_id(j)],
                margin: margin(&spheres[i], &spheres[j]),
            });
        }
    }

    // (2) Containment of each disk in the open parallelogram.
    for (i, s) in spheres.iter().enumerate() {
        margins.push(MarginEntry {
            pair: [sphere_id(i), "domain".to_string()],
            margin: domain.inward_clearance(s.center()) - s.radius(),
        });
    }

    // (3) Translate window: any translate with |pa + qb| > span + 2 cannot
    // touch the configuration (span = center diameter + 2, radii <= 1).
    let diam = centers
        .iter()
        .flat_map(|x| centers.iter().map(move |y| (x - y).norm()))
        .fold(0.0, f64::max);
    let span = diam + 2.0 * max_radius;
    let window = span + 2.0 * max_radius;
    let translates = lattice_window(rep.a, rep.b, window);

    let translate_margins: Vec<MarginEntry> = translates
        .par_iter()
        .flat_map_iter(|&(p, q)| {
            let v = p as f64 * rep.a + q as f64 * rep.b;
            let spheres = &spheres;
            (0..spheres.len()).flat_map(move |i| {
                (0..spheres.len()).map(move |j| MarginEntry {
                    pair: [sphere_id(i), format!("{}@{},{}", sphere_id(j), p, q)],
                    margin: margin(&spheres[i], &spheres[j].translated(v)),
                })
            })
        })
        .collect();
    margins.extend(translate_margins);

    margins.sort_by(|x, y| x.pair.cmp(&y.pair));

    let verdict = match margins
        .iter()
        .filter(|e| e.margin <= tol)
        .min_by(|x, y| x.margin.total_cmp(&y.margin))
    {
        None => Verdict::Verified,
        Some(worst) => Verdict::Rejected {
            reason: if worst.pair[1] == "domain" {
                format!(
                    "sphere {} is not contained in the vertical fundamental domain (clearance {:.9})",
                    worst.pair[0], worst.margin
                )
            } else {
                format!(
                    "sphere {} meets {} (margin {:.9})",
                    worst.pair[0], worst.pair[1], worst.margin
                )
            },
        },
    };

    StructureCertificate {
        verdict,
        n: rep.n,
        a: rep.a,
        b: rep.b,
        tol,
        margins,
        domain,
    }
}

/// Canonical half-lattice window: all (p, q) != (0, 0) with q > 0, or q = 0
/// and p > 0, such that |p a + q b| <= radius. The opposite translates are
/// covered by checking ordered sphere pairs both ways.
fn lattice_window(a: Complex64, b: Complex64, radius: f64) -> Vec<(i64, i64)> {
    let area = cross(a, b).abs();
    let p_max = (radius * b.norm() / area).ceil() as i64;
    let q_max = (radius * a.norm() / area).ceil() as i64;
    let mut out = Vec::new();
    for q in 0..=q_max {
        for p in -p_max..=p_max {
            if q == 0 && p <= 0 {
                continue;
            }
            let v = p as f64 * a + q as f64 * b;
            if v.norm() <= radius {
                out.push((p, q));
            }
        }
    }
    out
}

/// Scale threshold for n handles: a value L such that the probe lattices
/// with |a| = |b| = L and angle at least 30 degrees all verify. Computed by
/// increasing search with the verifier as oracle; by scaling monotonicity
/// each probe ray verifies for every larger scale as well.
pub fn suggest_scale(n: usize) -> f64 {
    let probe_angles = [
        std::f64::consts::FRAC_PI_6,
        std::f64::consts::FRAC_PI_2,
        5.0 * std::f64::consts::FRAC_PI_6,
    ];
    let mut scale = 4.0;
    loop {
        let all_pass = probe_angles.iter().all(|&theta| {
            let a = Complex64::new(scale, 0.0);
            let b = scale * Complex64::new(theta.cos(), theta.sin());
            match build_rep(n, a, b) {
                Ok(rep) => verify_structure(&rep, 1e-9).is_verified(),
                Err(_) => false,
            }
        });
        if all_pass {
            return scale;
        }
        scale += 0.5;
        assert!(scale < 1e4, "scale search diverged for n = {n}");
    }
}

fn complex_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for MarginEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MarginEntry", 2)?;
        s.serialize_field("pair", &self.pair)?;
        s.serialize_field("margin", &self.margin)?;
        s.end()
    }
}

impl Serialize for VerticalFundamentalDomain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerticalFundamentalDomain", 3)?;
        s.serialize_field("basepoint", &complex_pair(self.basepoint))?;
        s.serialize_field("a", &complex_pair(self.a))?;
        s.serialize_field("b", &complex_pair(self.b))?;
        s.end()
    }
}

impl Serialize for StructureCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rejected_reason = match &self.verdict {
            Verdict::Verified => None,
            Verdict::Rejected { reason } => Some(reason.clone()),
        };
        let n_fields = if rejected_reason.is_some() { 8 } else { 7 };
        let mut s = serializer.serialize_struct("StructureCertificate", n_fields)?;
        s.serialize_field(
            "verdict",
            match self.verdict {
                Verdict::Verified => "verified",
                Verdict::Rejected { .. } => "rejected",
            },
        )?;
        if let Some(reason) = &rejected_reason {
            s.serialize_field("reason", reason)?;
        }
        s.serialize_field("n", &self.n)?;
        s.serialize_field("a", &complex_pair(self.a))?;
        s.serialize_field("b", &complex_pair(self.b))?;
        s.serialize_field("tol", &self.tol)?;
        s.serialize_field("margins", &self.margins)?;
        s.serialize_field("domain", &self.domain)?;
        s.end()
    }
}

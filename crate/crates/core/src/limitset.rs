//! Sphere orbits, dual circles and figure rendering.
//!
//! `orbit_spheres` enumerates the isometric spheres of all freely reduced
//! words up to a letter-length budget. `figure_packing` assembles the
//! fundamental-region picture: the parallelogram is based so that the
//! sphere row lies on its bottom edge (the peripheral translate row then
//! closes the picture along the top edge), every lattice translate whose
//! center falls in the closed parallelogram is drawn, and optionally one
//! dual circle per tangency-triangle class encloses each curvilinear
//! triangle. `render_svg` writes a byte-deterministic SVG document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::comprbody::{CompressionBodyRep, VerticalFundamentalDomain};
use crate::isosphere::IsometricSphere;
use crate::moebius::MoebiusMap;

/// Hard cap on orbit enumeration depth.
pub const ORBIT_BUDGET: usize = 10;

/// Tolerance used for tangency annotations on packings.
pub const ORBIT_TANGENCY_TOL: f64 = 1e-6;

/// Deduplication scale: centers and radii are keyed on 1e-9 grids.
const DEDUP_SCALE: f64 = 1e9;

#[derive(Debug, Error)]
pub enum LimitSetError {
    #[error("orbit budget exceeded: max_len {0} > {1}")]
    BudgetExceeded(usize, usize),
    #[error("circles are not pairwise externally tangent (margin {0:.3e})")]
    NotTangent(f64),
    #[error("tangency point at infinity; dual is undefined")]
    Collinear,
    #[error("packing is empty")]
    EmptyPacking,
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
}

/// A circle or a line on the boundary plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedCircle {
    Circle { center: Complex64, radius: f64 },
    Line { point: Complex64, direction: Complex64 },
}

impl ExtendedCircle {
    pub fn circle(center: Complex64, radius: f64) -> ExtendedCircle {
        ExtendedCircle::Circle { center, radius }
    }

    pub fn line(point: Complex64, direction: Complex64) -> ExtendedCircle {
        ExtendedCircle::Line {
            point,
            direction: direction / direction.norm(),
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, ExtendedCircle::Circle { .. })
    }

    /// Signed tangency defect between two extended circles: zero exactly at
    /// external tangency (circle/circle) or line tangency (line/circle).
    /// Parallel lines have no finite tangency and report infinity.
    pub fn tangency_defect(&self, other: &ExtendedCircle) -> f64 {
        match (self, other) {
            (
                ExtendedCircle::Circle { center: c1, radius: r1 },
                ExtendedCircle::Circle { center: c2, radius: r2 },
            ) => (c1 - c2).norm() - (r1 + r2),
            (ExtendedCircle::Circle { center, radius }, ExtendedCircle::Line { point, direction })
            | (ExtendedCircle::Line { point, direction }, ExtendedCircle::Circle { center, radius }) => {
                cross(*direction, center - point).abs() - radius
            }
            (ExtendedCircle::Line { .. }, ExtendedCircle::Line { .. }) => f64::INFINITY,
        }
    }
}

impl From<IsometricSphere> for ExtendedCircle {
    fn from(s: IsometricSphere) -> Self {
        ExtendedCircle::Circle {
            center: s.center(),
            radius: s.radius(),
        }
    }
}

impl Serialize for ExtendedCircle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedCircle::Circle { center, radius } => {
                let mut s = serializer.serialize_struct("Circle", 2)?;
                s.serialize_field("center", &[center.re, center.im])?;
                s.serialize_field("radius", radius)?;
                s.end()
            }
            ExtendedCircle::Line { point, direction } => {
                #[derive(serde::Serialize)]
                struct LineBody {
                    point: [f64; 2],
                    direction: [f64; 2],
                }
                let mut s = serializer.serialize_struct("Line", 1)?;
                s.serialize_field(
                    "line",
                    &LineBody {
                        point: [point.re, point.im],
                        direction: [direction.re, direction.im],
                    },
                )?;
                s.end()
            }
        }
    }
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

fn dedup_key(c: &ExtendedCircle) -> (i128, i128, i128) {
    match c {
        ExtendedCircle::Circle { center, radius } => (
            (center.re * DEDUP_SCALE).round() as i128,
            (center.im * DEDUP_SCALE).round() as i128,
            (radius * DEDUP_SCALE).round() as i128,
        ),
        ExtendedCircle::Line { point, direction } => (
            (point.re * DEDUP_SCALE).round() as i128,
            (point.im * DEDUP_SCALE).round() as i128,
            // Lines sort after every circle of comparable size.
            i128::MAX - (direction.re * DEDUP_SCALE).round() as i128,
        ),
    }
}

/// A finite circle configuration with tangency annotations.
#[derive(Debug, Clone)]
pub struct CirclePacking {
    circles: Vec<ExtendedCircle>,
    tangencies: Vec<[usize; 2]>,
    tol: f64,
}

impl CirclePacking {
    /// Annotates every pair whose tangency defect is within `tol`.
    pub fn new(circles: Vec<ExtendedCircle>, tol: f64) -> CirclePacking {
        let mut tangencies = Vec::new();
        for i in 0..circles.len() {
            for j in (i + 1)..circles.len() {
                let defect = circles[i].tangency_defect(&circles[j]);
                if defect.abs() <= tol {
                    tangencies.push([i, j]);
                }
            }
        }
        CirclePacking {
            circles,
            tangencies,
            tol,
        }
    }

    pub fn circles(&self) -> &[ExtendedCircle] {
        &self.circles
    }

    pub fn tangencies(&self) -> &[[usize; 2]] {
        &self.tangencies
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("packing serializes")
    }
}

impl Serialize for CirclePacking {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CirclePacking", 2)?;
        s.serialize_field("circles", &self.circles)?;
        s.serialize_field("tangencies", &self.tangencies)?;
        s.end()
    }
}

/// Isometric spheres of all freely reduced nonempty words of letter length
/// at most `max_len` that do not fix infinity, deduplicated on a 1e-9 grid
/// and sorted by center. Tangencies are annotated at tol 1e-6.
pub fn orbit_spheres(
    rep: &CompressionBodyRep,
    max_len: usize,
) -> Result<CirclePacking, LimitSetError> {
    if max_len > ORBIT_BUDGET {
        return Err(LimitSetError::BudgetExceeded(max_len, ORBIT_BUDGET));
    }
    let mut found: BTreeMap<(i128, i128, i128), ExtendedCircle> = BTreeMap::new();
    let mut orbit = OrbitWalk {
        rep,
        found: &mut found,
    };
    orbit.walk(Factor::None, MoebiusMap::identity(), max_len);
    Ok(CirclePacking::new(
        found.into_values().collect(),
        ORBIT_TANGENCY_TOL,
    ))
}

#[derive(Clone, Copy, PartialEq)]
enum Factor {
    None,
    Peripheral,
    Handle(usize),
}

struct OrbitWalk<'a> {
    rep: &'a CompressionBodyRep,
    found: &'a mut BTreeMap<(i128, i128, i128), ExtendedCircle>,
}

impl OrbitWalk<'_> {
    /// Extends the current product syllable by syllable; every nonempty
    /// prefix is a freely reduced word, recorded when it has a sphere.
    fn walk(&mut self, last: Factor, acc: MoebiusMap, remaining: usize) {
        if last != Factor::None {
            if let Ok(s) = crate::isosphere::isometric_sphere(&acc) {
                let circle = ExtendedCircle::from(s);
                self.found.entry(dedup_key(&circle)).or_insert(circle);
            }
        }
        if remaining == 0 {
            return;
        }
        if last != Factor::Peripheral {
            let r = remaining as i64;
            for m in -r..=r {
                let room = r - m.abs();
                for k in -room..=room {
                    if m == 0 && k == 0 {
                        continue;
                    }
                    let t = MoebiusMap::translation(
                        m as f64 * self.rep.a() + k as f64 * self.rep.b(),
                    );
                    self.walk(
                        Factor::Peripheral,
                        acc.compose(&t),
                        remaining - (m.unsigned_abs() + k.unsigned_abs()) as usize,
                    );
                }
            }
        }
        for (i, gamma) in self.rep.gammas().iter().enumerate() {
            if last == Factor::Handle(i) {
                continue;
            }
            for mag in 1..=remaining as i64 {
                for exp in [mag, -mag] {
                    self.walk(
                        Factor::Handle(i),
                        acc.compose(&gamma.power(exp)),
                        remaining - mag as usize,
                    );
                }
            }
        }
    }
}

/// The point where two externally tangent circles (or a tangent line and
/// circle) touch.
fn tangency_point(
    x: &ExtendedCircle,
    y: &ExtendedCircle,
    tol: f64,
) -> Result<Complex64, LimitSetError> {
    match (x, y) {
        (
            ExtendedCircle::Circle { center: c1, radius: r1 },
            ExtendedCircle::Circle { center: c2, radius: r2 },
        ) => {
            let d = (c2 - c1).norm();
            let external = d - (r1 + r2);
            if external.abs() <= tol {
                return Ok(c1 + r1 * (c2 - c1) / d);
            }
            // Internal tangency does not occur in these configurations and
            // is rejected rather than resolved.
            Err(LimitSetError::NotTangent(external))
        }
        (ExtendedCircle::Circle { center, radius }, line @ ExtendedCircle::Line { .. })
        | (line @ ExtendedCircle::Line { .. }, ExtendedCircle::Circle { center, radius }) => {
            let (point, direction) = match line {
                ExtendedCircle::Line { point, direction } => (*point, *direction),
                _ => unreachable!(),
            };
            let offset = cross(direction, center - point);
            let defect = offset.abs() - radius;
            if defect.abs() <= tol {
                let normal = Complex64::new(0.0, 1.0) * direction;
                Ok(center - offset * normal)
            } else {
                Err(LimitSetError::NotTangent(defect))
            }
        }
        (ExtendedCircle::Line { .. }, ExtendedCircle::Line { .. }) => Err(LimitSetError::Collinear),
    }
}

/// The dual circle through the three pairwise tangency points of `c1`,
/// `c2`, `c3`. Returns the line variant when the tangency points are
/// collinear within tol.
pub fn dual_circle(
    c1: &ExtendedCircle,
    c2: &ExtendedCircle,
    c3: &ExtendedCircle,
    tol: f64,
) -> Result<ExtendedCircle, LimitSetError> {
    let mut pts = [
        tangency_point(c1, c2, tol)?,
        tangency_point(c1, c3, tol)?,
        tangency_point(c2, c3, tol)?,
    ];
    // Sorting makes the circumcircle arithmetic independent of the input
    // permutation, bit for bit.
    pts.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    circumcircle(pts[0], pts[1], pts[2], tol)
}

fn circumcircle(
    p1: Complex64,
    p2: Complex64,
    p3: Complex64,
    tol: f64,
) -> Result<ExtendedCircle, LimitSetError> {
    let twice_area = cross(p2 - p1, p3 - p1);
    if twice_area.abs() <= tol {
        return Ok(ExtendedCircle::line(p1, p3 - p1));
    }
    let d = 2.0 * twice_area;
    let n1 = p1.norm_sqr();
    let n2 = p2.norm_sqr();
    let n3 = p3.norm_sqr();
    let ux = (n1 * (p2.im - p3.im) + n2 * (p3.im - p1.im) + n3 * (p1.im - p2.im)) / d;
    let uy = (n1 * (p3.re - p2.re) + n2 * (p1.re - p3.re) + n3 * (p2.re - p1.re)) / d;
    let center = Complex64::new(ux, uy);
    Ok(ExtendedCircle::circle(center, (center - p1).norm()))
}

/// The assembled fundamental-region figure.
#[derive(Debug, Clone)]
pub struct Figure {
    pub packing: CirclePacking,
    pub domain: VerticalFundamentalDomain,
    /// Number of leading circles in the packing that are orbit spheres;
    /// the remainder are dual circles.
    pub orbit_count: usize,
}

/// Builds the figure for `rep`: orbit spheres reduced modulo the cusp
/// lattice, every translate with center in the closed fundamental
/// parallelogram, and (optionally) one dual circle per triangle of mutually
/// tangent circle classes.
pub fn figure_packing(
    rep: &CompressionBodyRep,
    max_len: usize,
    include_duals: bool,
) -> Result<Figure, LimitSetError> {
    let orbit = orbit_spheres(rep, max_len)?;

    // Base the parallelogram so the sphere row lies on its bottom edge.
    let base_spheres = rep.spheres();
    let centroid = base_spheres
        .iter()
        .map(|s| s.center())
        .sum::<Complex64>()
        / base_spheres.len() as f64;
    let domain = VerticalFundamentalDomain::new(centroid - 0.5 * rep.a(), rep.a(), rep.b())
        .expect("rep lattice is nondegenerate");

    // Reduce orbit circles to one representative per lattice class.
    let mut classes: BTreeMap<(i128, i128, i128), ExtendedCircle> = BTreeMap::new();
    for circle in orbit.circles() {
        if let ExtendedCircle::Circle { center, radius } = circle {
            let (s, t) = domain.coords(*center);
            let reduced = center
                - (s + 1e-9).floor() * rep.a()
                - (t + 1e-9).floor() * rep.b();
            let rep_circle = ExtendedCircle::circle(reduced, *radius);
            classes.entry(dedup_key(&rep_circle)).or_insert(rep_circle);
        }
    }
    let class_circles: Vec<ExtendedCircle> = classes.into_values().collect();

    let mut drawn: BTreeMap<(i128, i128, i128), ExtendedCircle> = BTreeMap::new();
    for circle in &class_circles {
        for copy in closed_domain_copies(circle, &domain, rep.a(), rep.b()) {
            drawn.entry(dedup_key(&copy)).or_insert(copy);
        }
    }
    let mut circles: Vec<ExtendedCircle> = drawn.into_values().collect();
    let orbit_count = circles.len();

    if include_duals {
        let duals = dual_circles_of_classes(&class_circles, rep.a(), rep.b())?;
        let mut drawn_duals: BTreeMap<(i128, i128, i128), ExtendedCircle> = BTreeMap::new();
        for dual in &duals {
            match dual {
                ExtendedCircle::Circle { .. } => {
                    for copy in closed_domain_copies(dual, &domain, rep.a(), rep.b()) {
                        drawn_duals.entry(dedup_key(&copy)).or_insert(copy);
                    }
                }
                line => {
                    drawn_duals.entry(dedup_key(line)).or_insert(*line);
                }
            }
        }
        circles.extend(drawn_duals.into_values());
    }

    Ok(Figure {
        packing: CirclePacking::new(circles, ORBIT_TANGENCY_TOL),
        domain,
        orbit_count,
    })
}

/// All lattice translates of `circle` whose center lies in the closed
/// fundamental parallelogram, within 1e-9.
fn closed_domain_copies(
    circle: &ExtendedCircle,
    domain: &VerticalFundamentalDomain,
    a: Complex64,
    b: Complex64,
) -> Vec<ExtendedCircle> {
    let ExtendedCircle::Circle { center, radius } = circle else {
        return vec![*circle];
    };
    let tol = 1e-9;
    let (s, t) = domain.coords(*center);
    let mut out = Vec::new();
    let p_lo = (-tol - s).ceil() as i64;
    let p_hi = (1.0 + tol - s).floor() as i64;
    let q_lo = (-tol - t).ceil() as i64;
    let q_hi = (1.0 + tol - t).floor() as i64;
    for q in q_lo..=q_hi {
        for p in p_lo..=p_hi {
            out.push(ExtendedCircle::circle(
                center + p as f64 * a + q as f64 * b,
                *radius,
            ));
        }
    }
    out
}

/// One dual circle per class of mutually tangent circle triples modulo the
/// lattice.
fn dual_circles_of_classes(
    classes: &[ExtendedCircle],
    a: Complex64,
    b: Complex64,
) -> Result<Vec<ExtendedCircle>, LimitSetError> {
    let tol = ORBIT_TANGENCY_TOL;
    let circles: Vec<(Complex64, f64)> = classes
        .iter()
        .filter_map(|c| match c {
            ExtendedCircle::Circle { center, radius } => Some((*center, *radius)),
            ExtendedCircle::Line { .. } => None,
        })
        .collect();
    if circles.is_empty() {
        return Ok(Vec::new());
    }
    let diam = circles
        .iter()
        .flat_map(|(c1, _)| circles.iter().map(move |(c2, _)| (c1 - c2).norm()))
        .fold(0.0, f64::max);
    let max_r = circles.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    let window = diam + 2.0 * max_r + 1.0;

    // Tangency germs: class j at lattice offset (p, q) touching class i.
    let offsets = full_lattice_window(a, b, window);
    let mut neighbors: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); circles.len()];
    for i in 0..circles.len() {
        for j in 0..circles.len() {
            for &(p, q) in &offsets {
                if i == j && p == 0 && q == 0 {
                    continue;
                }
                let cj = circles[j].0 + p as f64 * a + q as f64 * b;
                let defect = (circles[i].0 - cj).norm() - (circles[i].1 + circles[j].1);
                if defect.abs() <= tol {
                    neighbors[i].push((j, p, q));
                }
            }
        }
    }

    let mut seen: BTreeSet<[(usize, i64, i64); 3]> = BTreeSet::new();
    let mut duals = Vec::new();
    for i in 0..circles.len() {
        for (jdx, &(j, p1, q1)) in neighbors[i].iter().enumerate() {
            for &(k, p2, q2) in neighbors[i].iter().skip(jdx + 1) {
                // The two neighbors must also touch each other.
                let cj = circles[j].0 + p1 as f64 * a + q1 as f64 * b;
                let ck = circles[k].0 + p2 as f64 * a + q2 as f64 * b;
                let defect = (cj - ck).norm() - (circles[j].1 + circles[k].1);
                if defect.abs() > tol {
                    continue;
                }
                let triple = [(i, 0i64, 0i64), (j, p1, q1), (k, p2, q2)];
                let key = canonical_triangle(triple);
                if !seen.insert(key) {
                    continue;
                }
                let ci = ExtendedCircle::circle(circles[i].0, circles[i].1);
                let cjc = ExtendedCircle::circle(cj, circles[j].1);
                let ckc = ExtendedCircle::circle(ck, circles[k].1);
                duals.push(dual_circle(&ci, &cjc, &ckc, tol)?);
            }
        }
    }
    Ok(duals)
}

/// Translation-normalized key of a tangency triangle: re-base at each of
/// its three members and take the least sorted tuple.
fn canonical_triangle(triple: [(usize, i64, i64); 3]) -> [(usize, i64, i64); 3] {
    let mut best: Option<[(usize, i64, i64); 3]> = None;
    for base in triple {
        let mut candidate =
            triple.map(|(c, p, q)| (c, p - base.1, q - base.2));
        candidate.sort();
        if best.is_none_or(|b| candidate < b) {
            best = Some(candidate);
        }
    }
    best.unwrap()
}

fn full_lattice_window(a: Complex64, b: Complex64, radius: f64) -> Vec<(i64, i64)> {
    let area = cross(a, b).abs();
    let p_max = (radius * b.norm() / area).ceil() as i64;
    let q_max = (radius * a.norm() / area).ceil() as i64;
    let mut out = Vec::new();
    for q in -q_max..=q_max {
        for p in -p_max..=p_max {
            if (p as f64 * a + q as f64 * b).norm() <= radius {
                out.push((p, q));
            }
        }
    }
    out
}

/// Stroke parameters for SVG output.
#[derive(Debug, Clone)]
pub struct RenderStyle {
    pub stroke_width: f64,
    pub circle_color: String,
    pub domain_color: String,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 0.05,
            circle_color: "black".to_string(),
            domain_color: "#808080".to_string(),
        }
    }
}

fn fmt_f(x: f64) -> String {
    // Normalize -0.000000 to 0.000000 so output does not depend on the
    // sign of a zero.
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Renders the packing (and the parallelogram outline, when given) as an
/// SVG document. One circle element per circle, deterministic order and
/// 6-decimal formatting, viewBox padded by 10%.
pub fn render_svg(
    packing: &CirclePacking,
    domain: Option<&VerticalFundamentalDomain>,
    style: &RenderStyle,
) -> Result<String, LimitSetError> {
    if packing.circles().is_empty() {
        return Err(LimitSetError::EmptyPacking);
    }

    // Bounding box in drawing coordinates (y flipped).
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut grow = |x: f64, y: f64| {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    };
    for c in packing.circles() {
        match c {
            ExtendedCircle::Circle { center, radius } => {
                grow(center.re - radius, -center.im - radius);
                grow(center.re + radius, -center.im + radius);
            }
            ExtendedCircle::Line { point, .. } => grow(point.re, -point.im),
        }
    }
    if let Some(d) = domain {
        for corner in d.corners() {
            grow(corner.re, -corner.im);
        }
    }
    let pad = 0.1 * (max_x - min_x).max(max_y - min_y);
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_f(x0),
        fmt_f(y0),
        fmt_f(w),
        fmt_f(h)
    )
    .unwrap();
    if let Some(d) = domain {
        let corners = d.corners();
        let mut path = String::new();
        for (i, corner) in corners.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(path, "{cmd} {} {} ", fmt_f(corner.re), fmt_f(-corner.im)).unwrap();
        }
        path.push('Z');
        writeln!(
            svg,
            "<path d=\"{path}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
            d_escape(&style.domain_color),
            fmt_f(style.stroke_width)
        )
        .unwrap();
    }
    for c in packing.circles() {
        match c {
            ExtendedCircle::Circle { center, radius } => {
                writeln!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    fmt_f(center.re),
                    fmt_f(-center.im),
                    fmt_f(*radius),
                    d_escape(&style.circle_color),
                    fmt_f(style.stroke_width)
                )
                .unwrap();
            }
            ExtendedCircle::Line { point, direction } => {
                let span = w + h;
                let p1 = point - span * direction;
                let p2 = point + span * direction;
                writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    fmt_f(p1.re),
                    fmt_f(-p1.im),
                    fmt_f(p2.re),
                    fmt_f(-p2.im),
                    d_escape(&style.circle_color),
                    fmt_f(style.stroke_width)
                )
                .unwrap();
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn d_escape(s: &str) -> String {
    s.replace('"', "")
}

/// Renders and writes the document to `path`.
pub fn render_svg_to_path(
    packing: &CirclePacking,
    domain: Option<&VerticalFundamentalDomain>,
    style: &RenderStyle,
    path: &Path,
) -> Result<(), LimitSetError> {
    let svg = render_svg(packing, domain, style)?;
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comprbody::{build_rep, verify_structure};
    use crate::pinch::max_pinched_example;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn centers(p: &CirclePacking) -> Vec<Complex64> {
        p.circles()
            .iter()
            .filter_map(|c| match c {
                ExtendedCircle::Circle { center, .. } => Some(*center),
                _ => None,
            })
            .collect()
    }

    fn has_circle(p: &CirclePacking, center: Complex64, radius: f64) -> bool {
        p.circles().iter().any(|cc| match cc {
            ExtendedCircle::Circle { center: c0, radius: r0 } => {
                (c0 - center).norm() <= 1e-9 && (r0 - radius).abs() <= 1e-9
            }
            _ => false,
        })
    }

    #[test]
    fn orbit_length_one_is_two_circles() {
        let rep = build_rep(1, c(5.0, 0.0), c(0.0, 5.0)).unwrap();
        let packing = orbit_spheres(&rep, 1).unwrap();
        assert_eq!(packing.circles().len(), 2);
        assert!(has_circle(&packing, c(0.0, 0.0), 1.0));
        assert!(has_circle(&packing, c(2.0, 0.0), 1.0));
    }

    #[test]
    fn orbit_length_two_contains_powers() {
        // gamma_1^2 = [[3,-2],[2,-1]] has sphere center 1/2, radius 1/2,
        // nested against I(gamma_1); likewise 3/2 for the inverse square.
        let rep = build_rep(1, c(5.0, 0.0), c(0.0, 5.0)).unwrap();
        let packing = orbit_spheres(&rep, 2).unwrap();
        assert!(has_circle(&packing, c(0.5, 0.0), 0.5));
        assert!(has_circle(&packing, c(1.5, 0.0), 0.5));
        assert!(has_circle(&packing, c(5.0, 0.0), 1.0));
        assert!(has_circle(&packing, c(2.0, 5.0), 1.0));
    }

    #[test]
    fn orbit_monotone_in_budget() {
        let rep = max_pinched_example();
        let small = orbit_spheres(&rep, 2).unwrap();
        let large = orbit_spheres(&rep, 3).unwrap();
        for circle in small.circles() {
            let present = large.circles().iter().any(|other| match (circle, other) {
                (
                    ExtendedCircle::Circle { center: c1, radius: r1 },
                    ExtendedCircle::Circle { center: c2, radius: r2 },
                ) => (c1 - c2).norm() <= 1e-9 && (r1 - r2).abs() <= 1e-9,
                _ => false,
            });
            assert!(present);
        }
        assert!(large.circles().len() >= small.circles().len());
    }

    #[test]
    fn orbit_budget_guard() {
        let rep = max_pinched_example();
        assert!(matches!(
            orbit_spheres(&rep, 11),
            Err(LimitSetError::BudgetExceeded(11, _))
        ));
    }

    #[test]
    fn pinched_orbit_has_tangencies() {
        let rep = max_pinched_example();
        let packing = orbit_spheres(&rep, 4).unwrap();
        assert!(!packing.tangencies().is_empty());
    }

    #[test]
    fn verified_rep_orbit_inside_certificate_domain() {
        let rep = build_rep(1, c(5.0, 0.0), c(0.0, 5.0)).unwrap();
        let cert = verify_structure(&rep, 1e-9);
        assert!(cert.is_verified());
        let packing = orbit_spheres(&rep, 1).unwrap();
        for circle in packing.circles() {
            if let ExtendedCircle::Circle { center, radius } = circle {
                assert!(cert.domain.inward_clearance(*center) - radius > 0.0);
            }
        }
    }

    #[test]
    fn dual_of_equilateral_unit_circles() {
        let c1 = ExtendedCircle::circle(c(0.0, 0.0), 1.0);
        let c2 = ExtendedCircle::circle(c(2.0, 0.0), 1.0);
        let c3 = ExtendedCircle::circle(c(1.0, 3.0f64.sqrt()), 1.0);
        let dual = dual_circle(&c1, &c2, &c3, 1e-9).unwrap();
        let ExtendedCircle::Circle { center, radius } = dual else {
            panic!("expected a circle");
        };
        let expect = c(1.0, 3.0f64.sqrt() / 3.0);
        assert!((center - expect).norm() <= 1e-9);
        assert!((radius - 3.0f64.sqrt() / 3.0).abs() <= 1e-9);
        // The dual touches every input: it passes through each pairwise
        // tangency point, and each of those sits on two of the inputs.
        for (x, y) in [(&c1, &c2), (&c1, &c3), (&c2, &c3)] {
            let p = tangency_point(x, y, 1e-9).unwrap();
            assert!(((p - center).norm() - radius).abs() <= 1e-8);
        }
    }

    #[test]
    fn dual_rejects_non_tangent_triple() {
        let c1 = ExtendedCircle::circle(c(0.0, 0.0), 1.0);
        let c2 = ExtendedCircle::circle(c(2.0, 0.0), 1.0);
        let c3 = ExtendedCircle::circle(c(1.0, 2.0), 1.0);
        assert!(matches!(
            dual_circle(&c1, &c2, &c3, 1e-9),
            Err(LimitSetError::NotTangent(_))
        ));
    }

    #[test]
    fn dual_permutation_invariant_bitwise() {
        let c1 = ExtendedCircle::circle(c(0.0, 0.0), 1.0);
        let c2 = ExtendedCircle::circle(c(2.0, 0.0), 1.0);
        let c3 = ExtendedCircle::circle(c(1.0, 3.0f64.sqrt()), 1.0);
        let d1 = dual_circle(&c1, &c2, &c3, 1e-9).unwrap();
        let d2 = dual_circle(&c3, &c1, &c2, 1e-9).unwrap();
        match (d1, d2) {
            (
                ExtendedCircle::Circle { center: a1, radius: r1 },
                ExtendedCircle::Circle { center: a2, radius: r2 },
            ) => {
                assert_eq!(a1.re.to_bits(), a2.re.to_bits());
                assert_eq!(a1.im.to_bits(), a2.im.to_bits());
                assert_eq!(r1.to_bits(), r2.to_bits());
            }
            _ => panic!("expected circles"),
        }
    }

    #[test]
    fn collinear_tangency_points_give_line() {
        // Genuine externally tangent triples never produce collinear
        // tangency points; force the degenerate branch with a loose
        // tolerance band on a row of circles.
        let c1 = ExtendedCircle::circle(c(0.0, 0.0), 1.0);
        let c2 = ExtendedCircle::circle(c(2.0, 0.0), 1.0);
        let c3 = ExtendedCircle::circle(c(4.0, 0.0), 1.0);
        let dual = dual_circle(&c1, &c2, &c3, 2.1).unwrap();
        assert!(matches!(dual, ExtendedCircle::Line { .. }));
    }

    #[test]
    fn parallel_lines_have_no_dual() {
        let l1 = ExtendedCircle::line(c(0.0, 1.0), c(1.0, 0.0));
        let l2 = ExtendedCircle::line(c(0.0, -1.0), c(1.0, 0.0));
        let circle = ExtendedCircle::circle(c(0.0, 0.0), 1.0);
        assert!(matches!(
            dual_circle(&l1, &l2, &circle, 1e-9),
            Err(LimitSetError::Collinear)
        ));
    }

    #[test]
    fn figure_max_pinched_counts() {
        let rep = max_pinched_example();
        let fig = figure_packing(&rep, 1, false).unwrap();
        assert_eq!(fig.packing.circles().len(), 4, "centers {:?}", centers(&fig.packing));
        let fig = figure_packing(&rep, 1, true).unwrap();
        assert_eq!(fig.packing.circles().len(), 8, "centers {:?}", centers(&fig.packing));
        assert_eq!(fig.orbit_count, 4);
    }

    #[test]
    fn figure_circles_match_hand_values() {
        let rep = max_pinched_example();
        let fig = figure_packing(&rep, 1, true).unwrap();
        let s3 = 3.0f64.sqrt();
        for expected in [c(0.0, 0.0), c(2.0, 0.0), c(-1.0, s3), c(1.0, s3)] {
            assert!(has_circle(&fig.packing, expected, 1.0), "missing {expected}");
        }
        // Dual circles: radius 1/sqrt(3) at the four curvilinear triangles.
        for expected in [
            c(1.0, 1.0 / s3),
            c(-1.0, 1.0 / s3),
            c(0.0, 2.0 / s3),
            c(2.0, 2.0 / s3),
        ] {
            assert!(
                has_circle(&fig.packing, expected, 1.0 / s3),
                "missing dual {expected}, have {:?}",
                centers(&fig.packing)
            );
        }
    }

    #[test]
    fn render_is_deterministic() {
        let rep = max_pinched_example();
        let fig = figure_packing(&rep, 1, true).unwrap();
        let style = RenderStyle::default();
        let one = render_svg(&fig.packing, Some(&fig.domain), &style).unwrap();
        let two = render_svg(&fig.packing, Some(&fig.domain), &style).unwrap();
        assert_eq!(one, two);
        assert_eq!(one.matches("<circle").count(), 8);
        assert!(one.contains("<path"));
    }

    #[test]
    fn render_rejects_empty_packing() {
        let packing = CirclePacking::new(Vec::new(), 1e-9);
        assert!(matches!(
            render_svg(&packing, None, &RenderStyle::default()),
            Err(LimitSetError::EmptyPacking)
        ));
    }

    #[test]
    fn packing_json_schema() {
        let packing = CirclePacking::new(
            vec![
                ExtendedCircle::circle(c(0.0, 0.0), 1.0),
                ExtendedCircle::circle(c(2.0, 0.0), 1.0),
                ExtendedCircle::line(c(0.0, 1.0), c(1.0, 0.0)),
            ],
            1e-9,
        );
        let json: serde_json::Value = serde_json::from_str(&packing.to_json()).unwrap();
        assert_eq!(json["circles"][0]["center"][0], 0.0);
        assert_eq!(json["circles"][0]["radius"], 1.0);
        assert!(json["circles"][2]["line"]["point"].is_array());
        // 0-2 tangency, plus the horizontal line touching both circles.
        assert!(!json["tangencies"].as_array().unwrap().is_empty());
    }
}

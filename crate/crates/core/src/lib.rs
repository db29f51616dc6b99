//! Geometry of Kleinian groups uniformizing (1;n+1)-compression bodies.
//!
//! The library builds the explicit parabolic representations
//! `rho: (Z x Z) * Z * ... * Z -> PSL(2,C)` whose quotients are hyperbolic
//! compression bodies, certifies the isometric-sphere disjointness hypotheses
//! that make them discrete, measures cusp shapes in the Teichmueller space of
//! the torus, hunts for pinched (trace +-2) words, enumerates short Dehn
//! filling slopes, and renders fundamental-region figures to SVG.
//!
//! Modules:
//! - [`moebius`]: normalized 2x2 complex matrices acting on the sphere at
//!   infinity, with trace classification.
//! - [`isosphere`]: isometric spheres `I(g)` and planar disjointness
//!   predicates.
//! - [`comprbody`]: the explicit compression-body representations and the
//!   structure verifier.
//! - [`teich`]: cusp shapes, the hyperbolic metric on the upper half-plane,
//!   and slope censuses.
//! - [`pinch`]: group words, trace reports, pinched-word enumeration and the
//!   Newton pinch search.
//! - [`limitset`]: sphere orbits, dual circles and SVG rendering.
//! - [`beltsum`]: rectangle arithmetic for belted sums of chain-link cusps.

pub mod beltsum;
pub mod comprbody;
pub mod isosphere;
pub mod limitset;
pub mod moebius;
pub mod pinch;
pub mod teich;

pub use beltsum::{augmentation_meridian, belt_sum_chain, chain_cusp_shape, RectCusp};
pub use comprbody::{
    build_rep, suggest_scale, verify_structure, CompressionBodyRep, StructureCertificate,
    Verdict, VerticalFundamentalDomain,
};
pub use isosphere::{disjoint, image_under, isometric_sphere, IsometricSphere, Separation};
pub use limitset::{
    dual_circle, figure_packing, orbit_spheres, render_svg, render_svg_to_path, CirclePacking,
    ExtendedCircle, Figure, RenderStyle,
};
pub use moebius::{BoundaryPoint, MapClass, MoebiusMap};
pub use pinch::{
    enumerate_pinched, max_pinched_example, pinch_report, pinch_search, word_matrix,
    FreeParams, GeneratorRep, GroupWord, Letter, PinchReport, PinchSolution,
};
pub use teich::{
    cusp_shape, params_for_shape, short_slopes, slope_length, teich_distance, FlatTorus,
    SlopeLength, TorusShape,
};

pub use num_complex::Complex64;

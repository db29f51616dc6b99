//! Rectangle arithmetic for belted sums of chain-link cusps: cut two cusp
//! cross-sections at their equidistant 3-punctured-sphere curves, keep half
//! of each, and reassemble. Stacking augmentation cusps adds meridian
//! lengths.

use num_complex::Complex64;
use thiserror::Error;

use crate::teich::{cusp_shape, TorusShape};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeltSumError {
    #[error("dimensions must be positive")]
    NonPositive,
    #[error("cut position {0} outside [0, width)")]
    CutOutOfRange(f64),
    #[error("cut positions not equidistant (gap spread {0:.3e})")]
    NotEquidistant(f64),
    #[error("incompatible cut: {0}")]
    IncompatibleCut(String),
}

/// A rectangular cusp cross-section, `width` in the cut/stack direction,
/// with equidistant cut positions marking 3-punctured-sphere intersections.
#[derive(Debug, Clone, PartialEq)]
pub struct RectCusp {
    width: f64,
    height: f64,
    cuts: Vec<f64>,
}

impl RectCusp {
    pub fn new(width: f64, height: f64, cuts: Vec<f64>) -> Result<Self, BeltSumError> {
        if width <= 0.0 || height <= 0.0 {
            return Err(BeltSumError::NonPositive);
        }
        let mut cuts = cuts;
        cuts.sort_by(f64::total_cmp);
        for &c in &cuts {
            if !(0.0..width).contains(&c) {
                return Err(BeltSumError::CutOutOfRange(c));
            }
        }
        if cuts.len() >= 2 {
            // Gaps around the circle of circumference `width`.
            let mut gaps: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
            gaps.push(width - cuts[cuts.len() - 1] + cuts[0]);
            let spread = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - gaps.iter().cloned().fold(f64::INFINITY, f64::min);
            if spread.abs() > 1e-9 {
                return Err(BeltSumError::NotEquidistant(spread));
            }
        }
        Ok(RectCusp {
            width,
            height,
            cuts,
        })
    }

    /// The 2x4 model rectangle shared by the chain cusps of the augmented 2-
    /// and 3-chain links: width 4 along the cut direction, height 2, cut at
    /// {0, 2}.
    pub fn chain_model() -> RectCusp {
        RectCusp::new(4.0, 2.0, vec![0.0, 2.0]).expect("model rectangle is valid")
    }

    pub fn width(&self) -> f64 {
        self.width
    }
    pub fn height(&self) -> f64 {
        self.height
    }
    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    /// Similarity class with the meridian (the side transverse to the cuts)
    /// as first generator.
    pub fn shape(&self) -> TorusShape {
        cusp_shape(
            Complex64::new(self.height, 0.0),
            Complex64::new(0.0, self.width),
        )
        .expect("rectangle lattice is nondegenerate")
    }
}

/// Belted sum of two chain cusps: half of each glued along the cut curves.
/// Both inputs need exactly two cuts and equal heights (the 3-punctured
/// sphere geometry is rigid).
pub fn belt_sum_chain(c1: &RectCusp, c2: &RectCusp) -> Result<RectCusp, BeltSumError> {
    if c1.cuts.len() != 2 || c2.cuts.len() != 2 {
        return Err(BeltSumError::IncompatibleCut(format!(
            "need exactly 2 cuts, got {} and {}",
            c1.cuts.len(),
            c2.cuts.len()
        )));
    }
    if (c1.height - c2.height).abs() > 1e-9 {
        return Err(BeltSumError::IncompatibleCut(format!(
            "heights differ: {} vs {}",
            c1.height, c2.height
        )));
    }
    let width = 0.5 * c1.width + 0.5 * c2.width;
    RectCusp::new(width, c1.height, vec![0.0, 0.5 * width])
}

/// Meridian length of the augmentation cusp after stacking one copy of the
/// 3-chain cusp and n-1 copies of the 2-chain cusp: m3 + (n-1) m2.
pub fn augmentation_meridian(n: usize, m3: f64, m2: f64) -> f64 {
    assert!(n >= 1, "n must be positive");
    m3 + (n - 1) as f64 * m2
}

/// Cusp shape of the chain-link component of the augmented (2n+1)-chain
/// link, obtained by iterated belted sums; always the 1x2 rectangle class
/// tau = 2i.
pub fn chain_cusp_shape(n: usize) -> TorusShape {
    assert!(n >= 1, "n must be positive");
    let two_chain = RectCusp::chain_model();
    let mut cusp = RectCusp::chain_model();
    for _ in 1..n {
        cusp = belt_sum_chain(&cusp, &two_chain).expect("model cusps are compatible");
    }
    cusp.shape()
}

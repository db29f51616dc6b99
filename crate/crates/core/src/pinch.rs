//! Pinched-word machinery: words in the free product (Z x Z) * Z * ... * Z,
//! trace reports, exhaustive enumeration of parabolic (trace +-2) words, and
//! a damped Newton search on representation parameters.
//!
//! Words are spelled over the alphabet `a A b B g1 G1 g2 G2 ...` (capital =
//! inverse). Construction reduces a word to free-product normal form: within
//! each maximal peripheral block the commuting relation is applied and alpha
//! letters precede beta letters; trivial syllables cancel and cascade. The
//! word itself is not cyclically reduced (that would change the group
//! element); enumeration canonicalizes classes up to cyclic rotation and
//! inversion, both of which preserve tr^2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::comprbody::{build_rep, CompressionBodyRep};
use crate::moebius::MoebiusMap;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PinchError {
    #[error("unknown generator {0} (representation has {1} handles)")]
    UnknownGenerator(String, usize),
    #[error("cannot parse word token '{0}'")]
    BadToken(String),
    #[error("enumeration budget exceeded: max_len {0} > {1}")]
    BudgetExceeded(usize, usize),
    #[error("over-constrained: {words} trace conditions, {params} free complex parameters")]
    OverConstrained { words: usize, params: usize },
    #[error("Newton search did not converge after {0} iterations (residual {1:.3e})")]
    NoConvergence(usize, f64),
    #[error("finite-difference Jacobian dropped rank ({rank} < {needed})")]
    Singular { rank: usize, needed: usize },
    #[error("gamma parameterization degenerated (|entry a| = {0:.3e})")]
    GammaDegenerate(f64),
}

/// Hard cap on enumeration depth.
pub const ENUMERATION_BUDGET: usize = 12;

/// One letter of a group word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    Alpha,
    AlphaInv,
    Beta,
    BetaInv,
    Gamma(u32),
    GammaInv(u32),
}

impl Letter {
    pub fn inverse(&self) -> Letter {
        match *self {
            Letter::Alpha => Letter::AlphaInv,
            Letter::AlphaInv => Letter::Alpha,
            Letter::Beta => Letter::BetaInv,
            Letter::BetaInv => Letter::Beta,
            Letter::Gamma(i) => Letter::GammaInv(i),
            Letter::GammaInv(i) => Letter::Gamma(i),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Alpha => write!(f, "a"),
            Letter::AlphaInv => write!(f, "A"),
            Letter::Beta => write!(f, "b"),
            Letter::BetaInv => write!(f, "B"),
            Letter::Gamma(i) => write!(f, "g{i}"),
            Letter::GammaInv(i) => write!(f, "G{i}"),
        }
    }
}

/// A syllable of the free product: a peripheral block alpha^m beta^k or a
/// handle power gamma_i^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Syllable {
    Peripheral { m: i64, k: i64 },
    Handle { idx: u32, exp: i64 },
}

impl Syllable {
    fn same_factor(&self, other: &Syllable) -> bool {
        match (self, other) {
            (Syllable::Peripheral { .. }, Syllable::Peripheral { .. }) => true,
            (Syllable::Handle { idx: i, .. }, Syllable::Handle { idx: j, .. }) => i == j,
            _ => false,
        }
    }

    fn merge(&self, other: &Syllable) -> Syllable {
        match (self, other) {
            (Syllable::Peripheral { m: m1, k: k1 }, Syllable::Peripheral { m: m2, k: k2 }) => {
                Syllable::Peripheral {
                    m: m1 + m2,
                    k: k1 + k2,
                }
            }
            (Syllable::Handle { idx, exp: e1 }, Syllable::Handle { exp: e2, .. }) => {
                Syllable::Handle {
                    idx: *idx,
                    exp: e1 + e2,
                }
            }
            _ => unreachable!("merge requires matching factors"),
        }
    }

    fn is_trivial(&self) -> bool {
        match *self {
            Syllable::Peripheral { m, k } => m == 0 && k == 0,
            Syllable::Handle { exp, .. } => exp == 0,
        }
    }

    fn letter_len(&self) -> usize {
        match *self {
            Syllable::Peripheral { m, k } => (m.unsigned_abs() + k.unsigned_abs()) as usize,
            Syllable::Handle { exp, .. } => exp.unsigned_abs() as usize,
        }
    }

    fn push_letters(&self, out: &mut Vec<Letter>) {
        match *self {
            Syllable::Peripheral { m, k } => {
                let la = if m >= 0 { Letter::Alpha } else { Letter::AlphaInv };
                out.extend(std::iter::repeat_n(la, m.unsigned_abs() as usize));
                let lb = if k >= 0 { Letter::Beta } else { Letter::BetaInv };
                out.extend(std::iter::repeat_n(lb, k.unsigned_abs() as usize));
            }
            Syllable::Handle { idx, exp } => {
                let l = if exp >= 0 {
                    Letter::Gamma(idx)
                } else {
                    Letter::GammaInv(idx)
                };
                out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
            }
        }
    }
}

fn letter_syllable(l: Letter) -> Syllable {
    match l {
        Letter::Alpha => Syllable::Peripheral { m: 1, k: 0 },
        Letter::AlphaInv => Syllable::Peripheral { m: -1, k: 0 },
        Letter::Beta => Syllable::Peripheral { m: 0, k: 1 },
        Letter::BetaInv => Syllable::Peripheral { m: 0, k: -1 },
        Letter::Gamma(i) => Syllable::Handle { idx: i, exp: 1 },
        Letter::GammaInv(i) => Syllable::Handle { idx: i, exp: -1 },
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Syllable> {
    let mut stack: Vec<Syllable> = Vec::new();
    for l in letters {
        let mut syl = letter_syllable(l);
        loop {
            match stack.last() {
                Some(top) if top.same_factor(&syl) => {
                    syl = stack.pop().unwrap().merge(&syl);
                    if syl.is_trivial() {
                        break;
                    }
                }
                _ => {
                    stack.push(syl);
                    break;
                }
            }
        }
    }
    stack
}

fn syllables_to_letters(syllables: &[Syllable]) -> Vec<Letter> {
    let mut out = Vec::new();
    for s in syllables {
        s.push_letters(&mut out);
    }
    out
}

/// A freely reduced word in normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    /// Reduces the letter sequence to free-product normal form.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> GroupWord {
        let syllables = reduce(letters);
        GroupWord {
            letters: syllables_to_letters(&syllables),
        }
    }

    pub fn empty() -> GroupWord {
        GroupWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(self.letters.iter().rev().map(|l| l.inverse()))
    }

    /// True if the word uses only the peripheral generators.
    pub fn is_peripheral(&self) -> bool {
        self.letters
            .iter()
            .all(|l| !matches!(l, Letter::Gamma(_) | Letter::GammaInv(_)))
    }

    fn syllables(&self) -> Vec<Syllable> {
        reduce(self.letters.iter().copied())
    }

    fn from_syllables(syllables: &[Syllable]) -> GroupWord {
        GroupWord {
            letters: syllables_to_letters(syllables),
        }
    }

    /// True if the first and last syllables lie in different free factors
    /// (or the word has at most one syllable).
    pub fn is_cyclically_reduced(&self) -> bool {
        let syl = self.syllables();
        match (syl.first(), syl.last()) {
            (Some(first), Some(last)) if syl.len() > 1 => !first.same_factor(last),
            _ => true,
        }
    }

    /// Largest gamma index appearing, or 0 for peripheral words.
    pub fn max_gamma_index(&self) -> u32 {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::Gamma(i) | Letter::GammaInv(i) => Some(*i),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Lexicographically least letter sequence among all syllable rotations
    /// of the word and of its inverse. Both operations preserve tr^2.
    fn canonical_class_rep(&self) -> GroupWord {
        let mut best: Option<Vec<Letter>> = None;
        for word in [self.clone(), self.inverse()] {
            let syl = word.syllables();
            let rotations = if syl.is_empty() { 1 } else { syl.len() };
            for r in 0..rotations {
                let mut rotated: Vec<Syllable> = Vec::with_capacity(syl.len());
                rotated.extend_from_slice(&syl[r..]);
                rotated.extend_from_slice(&syl[..r]);
                let letters = syllables_to_letters(&rotated);
                if best.as_ref().is_none_or(|b| letters < *b) {
                    best = Some(letters);
                }
            }
        }
        GroupWord {
            letters: best.unwrap_or_default(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = PinchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let letter = match token {
                "a" => Letter::Alpha,
                "A" => Letter::AlphaInv,
                "b" => Letter::Beta,
                "B" => Letter::BetaInv,
                _ => {
                    let (head, idx) = token.split_at(1);
                    let i: u32 = idx
                        .parse()
                        .map_err(|_| PinchError::BadToken(token.to_string()))?;
                    if i == 0 {
                        return Err(PinchError::BadToken(token.to_string()));
                    }
                    match head {
                        "g" => Letter::Gamma(i),
                        "G" => Letter::GammaInv(i),
                        _ => return Err(PinchError::BadToken(token.to_string())),
                    }
                }
            };
            letters.push(letter);
        }
        Ok(GroupWord::new(letters))
    }
}

/// A representation of the free product by generator matrices, without the
/// parabolicity invariants of [`CompressionBodyRep`]. Used to evaluate words
/// on search variants and test representations.
#[derive(Debug, Clone)]
pub struct GeneratorRep {
    alpha: MoebiusMap,
    beta: MoebiusMap,
    gammas: Vec<MoebiusMap>,
}

impl GeneratorRep {
    pub fn new(alpha: MoebiusMap, beta: MoebiusMap, gammas: Vec<MoebiusMap>) -> GeneratorRep {
        GeneratorRep { alpha, beta, gammas }
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
    pub fn n(&self) -> usize {
        self.gammas.len()
    }
}

impl From<&CompressionBodyRep> for GeneratorRep {
    fn from(rep: &CompressionBodyRep) -> Self {
        GeneratorRep {
            alpha: *rep.alpha(),
            beta: *rep.beta(),
            gammas: rep.gammas().to_vec(),
        }
    }
}

/// Ordered product of the generator matrices spelled by `w`.
pub fn word_matrix(rep: &GeneratorRep, w: &GroupWord) -> Result<MoebiusMap, PinchError> {
    let max_idx = w.max_gamma_index() as usize;
    if max_idx > rep.n() {
        return Err(PinchError::UnknownGenerator(
            format!("g{max_idx}"),
            rep.n(),
        ));
    }
    let mut acc = MoebiusMap::identity();
    for l in w.letters() {
        let m = match *l {
            Letter::Alpha => rep.alpha,
            Letter::AlphaInv => rep.alpha.inverse(),
            Letter::Beta => rep.beta,
            Letter::BetaInv => rep.beta.inverse(),
            Letter::Gamma(i) => rep.gammas[(i - 1) as usize],
            Letter::GammaInv(i) => rep.gammas[(i - 1) as usize].inverse(),
        };
        acc = acc.compose(&m);
    }
    Ok(acc)
}

/// Trace data for one word under one representation.
#[derive(Debug, Clone)]
pub struct PinchReport {
    pub word: GroupWord,
    pub trace: Complex64,
    pub parabolic: bool,
    pub tol: f64,
}

impl Serialize for PinchReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PinchReport", 4)?;
        s.serialize_field("word", &self.word.to_string())?;
        s.serialize_field("trace", &[self.trace.re, self.trace.im])?;
        s.serialize_field("parabolic", &self.parabolic)?;
        s.serialize_field("tol", &self.tol)?;
        s.end()
    }
}

/// Evaluates `w`, reporting its trace and whether it is parabolic:
/// |tr^2 - 4| <= tol and the matrix is not +-identity.
pub fn pinch_report(rep: &GeneratorRep, w: &GroupWord, tol: f64) -> Result<PinchReport, PinchError> {
    let m = word_matrix(rep, w)?;
    let parabolic = (m.trace_sq() - 4.0).norm() <= tol && !m.is_identity(tol);
    Ok(PinchReport {
        word: w.clone(),
        trace: m.trace(),
        parabolic,
        tol,
    })
}

/// All non-peripheral parabolic words of letter length at most `max_len`,
/// one representative per class under cyclic rotation and inversion, in
/// (length, spelling) order.
pub fn enumerate_pinched(
    rep: &GeneratorRep,
    max_len: usize,
    tol: f64,
) -> Result<Vec<PinchReport>, PinchError> {
    if max_len > ENUMERATION_BUDGET {
        return Err(PinchError::BudgetExceeded(max_len, ENUMERATION_BUDGET));
    }
    let mut classes: BTreeMap<(usize, Vec<Letter>), GroupWord> = BTreeMap::new();
    let mut stack: Vec<Syllable> = Vec::new();
    collect_words(rep.n() as u32, max_len, &mut stack, &mut classes);

    let mut out = Vec::new();
    for word in classes.values() {
        let report = pinch_report(rep, word, tol)?;
        if report.parabolic {
            out.push(report);
        }
    }
    Ok(out)
}

/// Depth-first generation of cyclically reduced normal-form words. Every
/// complete stack with at least one handle syllable and distinct first/last
/// factors is recorded if it is the canonical representative of its class.
fn collect_words(
    n: u32,
    budget: usize,
    stack: &mut Vec<Syllable>,
    classes: &mut BTreeMap<(usize, Vec<Letter>), GroupWord>,
) {
    let used: usize = stack.iter().map(|s| s.letter_len()).sum();
    let remaining = budget - used;
    if !stack.is_empty() {
        let has_handle = stack.iter().any(|s| matches!(s, Syllable::Handle { .. }));
        let cyclic_ok = stack.len() == 1 || !stack[0].same_factor(stack.last().unwrap());
        if has_handle && cyclic_ok {
            let word = GroupWord::from_syllables(stack);
            let canon = word.canonical_class_rep();
            if canon == word {
                classes.insert((word.len(), word.letters.clone()), word);
            }
        }
    }
    if remaining == 0 {
        return;
    }
    let last = stack.last().copied();
    // Peripheral syllables alpha^m beta^k with 1 <= |m| + |k| <= remaining.
    if !matches!(last, Some(Syllable::Peripheral { .. })) {
        let r = remaining as i64;
        for m in -r..=r {
            let room = r - m.abs();
            for k in -room..=room {
                if m == 0 && k == 0 {
                    continue;
                }
                stack.push(Syllable::Peripheral { m, k });
                collect_words(n, budget, stack, classes);
                stack.pop();
            }
        }
    }
    // Handle syllables gamma_i^e with 1 <= |e| <= remaining.
    for idx in 1..=n {
        if let Some(Syllable::Handle { idx: li, .. }) = last {
            if li == idx {
                continue;
            }
        }
        for mag in 1..=remaining as i64 {
            for exp in [mag, -mag] {
                stack.push(Syllable::Handle { idx, exp });
                collect_words(n, budget, stack, classes);
                stack.pop();
            }
        }
    }
}

/// The maximally pinched representation with cusp shape -1/4 + i sqrt(3)/4:
/// alpha = [[1,4],[0,1]], beta = [[1,-1+i sqrt 3],[0,1]],
/// gamma_1 = [[2,-1],[1,0]].
pub fn max_pinched_example() -> CompressionBodyRep {
    build_rep(
        1,
        Complex64::new(4.0, 0.0),
        Complex64::new(-1.0, 3.0f64.sqrt()),
    )
    .expect("example lattice is nondegenerate")
}

/// Which representation parameters the pinch search may move.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeParams {
    pub vary_a: bool,
    pub vary_b: bool,
    /// Frees the entries of gamma_1 (three complex parameters; the fourth
    /// entry is pinned by the determinant).
    pub vary_gamma: bool,
}

impl FreeParams {
    pub fn complex_dim(&self) -> usize {
        usize::from(self.vary_a) + usize::from(self.vary_b) + 3 * usize::from(self.vary_gamma)
    }
}

/// Result of a pinch search: the representation at the found parameters and
/// the per-word residuals |tr^2 - 4|.
#[derive(Debug, Clone)]
pub struct PinchSolution {
    pub a: Complex64,
    pub b: Complex64,
    pub gamma1: MoebiusMap,
    pub rep: GeneratorRep,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

const NEWTON_TOL: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 200;
const NEWTON_FD_STEP: f64 = 1e-7;

struct SearchSpace {
    free: FreeParams,
    n: usize,
    a: Complex64,
    b: Complex64,
    gamma: [Complex64; 3],
}

impl SearchSpace {
    fn pack(&self) -> DVector<f64> {
        let mut x = Vec::new();
        if self.free.vary_a {
            x.extend([self.a.re, self.a.im]);
        }
        if self.free.vary_b {
            x.extend([self.b.re, self.b.im]);
        }
        if self.free.vary_gamma {
            for g in self.gamma {
                x.extend([g.re, g.im]);
            }
        }
        DVector::from_vec(x)
    }

    fn rep_at(&self, x: &DVector<f64>) -> Result<(Complex64, Complex64, MoebiusMap, GeneratorRep), PinchError> {
        let mut i = 0;
        let mut next = || {
            let z = Complex64::new(x[i], x[i + 1]);
            i += 2;
            z
        };
        let a = if self.free.vary_a { next() } else { self.a };
        let b = if self.free.vary_b { next() } else { self.b };
        let g = if self.free.vary_gamma {
            [next(), next(), next()]
        } else {
            self.gamma
        };
        let (ga, gb, gc) = (g[0], g[1], g[2]);
        if ga.norm() < 1e-12 {
            return Err(PinchError::GammaDegenerate(ga.norm()));
        }
        let gd = (1.0 + gb * gc) / ga;
        let gamma1 = MoebiusMap::new(ga, gb, gc, gd)
            .map_err(|_| PinchError::GammaDegenerate(ga.norm()))?;
        let conj = MoebiusMap::translation(Complex64::new(5.0, 0.0));
        let mut gammas = Vec::with_capacity(self.n);
        let mut gm = gamma1;
        for i in 0..self.n {
            if i > 0 {
                gm = conj.compose(&gm).compose(&conj.inverse());
            }
            gammas.push(gm);
        }
        let rep = GeneratorRep::new(
            MoebiusMap::translation(a),
            MoebiusMap::translation(b),
            gammas,
        );
        Ok((a, b, gamma1, rep))
    }
}

fn residual_vector(
    space: &SearchSpace,
    words: &[GroupWord],
    x: &DVector<f64>,
) -> Result<DVector<f64>, PinchError> {
    let (_, _, _, rep) = space.rep_at(x)?;
    let mut r = DVector::zeros(2 * words.len());
    for (i, w) in words.iter().enumerate() {
        let t2 = word_matrix(&rep, w)?.trace_sq() - 4.0;
        r[2 * i] = t2.re;
        r[2 * i + 1] = t2.im;
    }
    Ok(r)
}

fn word_residuals(r: &DVector<f64>) -> Vec<f64> {
    (0..r.len() / 2)
        .map(|i| Complex64::new(r[2 * i], r[2 * i + 1]).norm())
        .collect()
}

fn max_word_residual(r: &DVector<f64>) -> f64 {
    word_residuals(r).into_iter().fold(0.0, f64::max)
}

/// Damped Newton iteration driving tr^2(w) - 4 to zero for every word, over
/// the chosen free parameters, from the initial cusp translations `init`.
/// The Jacobian is a forward finite difference with step 1e-7 and steps are
/// halved while the residual increases.
pub fn pinch_search(
    words: &[GroupWord],
    n: usize,
    init: (Complex64, Complex64),
    free: FreeParams,
) -> Result<PinchSolution, PinchError> {
    let dim = free.complex_dim();
    if words.len() > dim {
        return Err(PinchError::OverConstrained {
            words: words.len(),
            params: dim,
        });
    }
    for w in words {
        if w.max_gamma_index() as usize > n {
            return Err(PinchError::UnknownGenerator(
                format!("g{}", w.max_gamma_index()),
                n,
            ));
        }
    }
    let space = SearchSpace {
        free,
        n,
        a: init.0,
        b: init.1,
        gamma: [
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
    };
    let mut x = space.pack();
    let mut r = residual_vector(&space, words, &x)?;

    let solution = |x: &DVector<f64>, r: &DVector<f64>, iterations: usize| {
        let (a, b, gamma1, rep) = space.rep_at(x)?;
        Ok(PinchSolution {
            a,
            b,
            gamma1,
            rep,
            residuals: word_residuals(r),
            iterations,
        })
    };

    if max_word_residual(&r) <= NEWTON_TOL {
        return solution(&x, &r, 0);
    }

    for iter in 1..=NEWTON_MAX_ITER {
        // Forward finite-difference Jacobian.
        let rows = 2 * words.len();
        let cols = x.len();
        let mut jac = DMatrix::zeros(rows, cols);
        for j in 0..cols {
            let mut xj = x.clone();
            xj[j] += NEWTON_FD_STEP;
            let rj = residual_vector(&space, words, &xj)?;
            for i in 0..rows {
                jac[(i, j)] = (rj[i] - r[i]) / NEWTON_FD_STEP;
            }
        }
        let svd = jac.svd(true, true);
        let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-12 * max_sv.max(1.0))
            .count();
        if rank < rows {
            return Err(PinchError::Singular { rank, needed: rows });
        }
        let delta = svd
            .solve(&r, 1e-12 * max_sv.max(1.0))
            .map_err(|_| PinchError::Singular { rank, needed: rows })?;

        // Damping: halve the step while the residual norm increases.
        let current = r.norm();
        let mut scale = 1.0;
        let mut advanced = false;
        for _ in 0..40 {
            let candidate = &x - scale * &delta;
            match residual_vector(&space, words, &candidate) {
                Ok(rc) if rc.norm() < current => {
                    x = candidate;
                    r = rc;
                    advanced = true;
                    break;
                }
                _ => scale *= 0.5,
            }
        }
        if !advanced {
            return Err(PinchError::NoConvergence(iter, max_word_residual(&r)));
        }
        if max_word_residual(&r) <= NEWTON_TOL {
            return solution(&x, &r, iter);
        }
    }
    Err(PinchError::NoConvergence(
        NEWTON_MAX_ITER,
        max_word_residual(&r),
    ))
}

//! Alphabet-level analysis of the representable set: the arithmetic gap
//! criterion for convexity, an independent geometric convexity test for
//! unions of translates (horizontal slices), digit folding along `q^n = p^n`,
//! and a constructive convex-combination decomposition over the extreme
//! digit cube.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Point, Polygon, Tolerance};
use crate::hull::{base_polygon, Base, MAX_ENUM_ORDER};
use crate::ifs::{bbox_diag, cloud, CellIndex};
use crate::{Error, Result};

/// Weights below this threshold are omitted from decompositions.
pub const MIN_WEIGHT: f64 = 1e-15;

/// A strictly increasing finite list of real digits.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    digits: Vec<f64>,
}

impl Alphabet {
    pub fn new(digits: Vec<f64>) -> Result<Alphabet> {
        if digits.is_empty() || digits.iter().any(|d| !d.is_finite()) {
            return Err(Error::BadAlphabet);
        }
        if digits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadAlphabet);
        }
        Ok(Alphabet { digits })
    }

    pub fn digits(&self) -> &[f64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.digits[0]
    }

    pub fn max(&self) -> f64 {
        *self.digits.last().unwrap()
    }

    /// Largest gap between consecutive digits and its index; zero for a
    /// single digit.
    pub fn max_gap(&self) -> (f64, Option<usize>) {
        let mut best = 0.0;
        let mut idx = None;
        for (i, w) in self.digits.windows(2).enumerate() {
            let gap = w[1] - w[0];
            if gap > best {
                best = gap;
                idx = Some(i);
            }
        }
        (best, idx)
    }
}

/// Outcome of the arithmetic convexity criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub is_convex: bool,
    pub max_gap: f64,
    pub threshold: f64,
    pub witness_gap_index: Option<usize>,
}

/// The gap criterion: the representable set is reported convex iff
/// `max_i (a_{i+1} − a_i) ≤ (max A − min A)/(p^n − 1)`. Pure arithmetic, no
/// geometry. A single-digit alphabet is a point and is reported convex with
/// gap 0. The comparison carries a 1e-12 relative slack so that the exact
/// boundary cases (for instance p^n = 2 with digits {0, 1}) do not flip on
/// floating-point dust.
pub fn convexity_report(base: &Base, alphabet: &Alphabet) -> ConvexityReport {
    if alphabet.len() < 2 {
        return ConvexityReport {
            is_convex: true,
            max_gap: 0.0,
            threshold: 0.0,
            witness_gap_index: None,
        };
    }
    let (max_gap, witness_gap_index) = alphabet.max_gap();
    let threshold = (alphabet.max() - alphabet.min()) / (base.p_pow_n() - 1.0);
    let slack = 1e-12 * (max_gap.abs() + threshold.abs());
    ConvexityReport {
        is_convex: max_gap <= threshold + slack,
        max_gap,
        threshold,
        witness_gap_index,
    }
}

/// Interval covered by the polygon on the horizontal line at height y.
fn slice_interval(verts: &[Point], y: f64, eps: f64) -> Option<(f64, f64)> {
    let h = verts.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..h {
        let a = verts[i];
        let b = verts[(i + 1) % h];
        if (a.im - y).abs() <= eps {
            lo = lo.min(a.re);
            hi = hi.max(a.re);
        }
        let (ylo, yhi) = if a.im <= b.im {
            (a.im, b.im)
        } else {
            (b.im, a.im)
        };
        if yhi - ylo > eps && y >= ylo - eps && y <= yhi + eps {
            let t = ((y - a.im) / (b.im - a.im)).clamp(0.0, 1.0);
            let x = a.re + t * (b.re - a.re);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    if lo.is_finite() && hi >= lo {
        Some((lo, hi))
    } else {
        None
    }
}

/// Geometric convexity test for `⋃_i (P + t_i)` with real offsets, by
/// horizontal slices: the union is convex iff at every height the translated
/// slice intervals chain into a single interval. Slice endpoints are
/// piecewise linear in the height with breakpoints only at vertex heights,
/// so sampling every vertex height makes the test exact; the `samples`
/// uniform interior levels are redundancy.
///
/// The hypothesis of the underlying statement asks for two horizontal edges
/// of length at least 1 (up to tolerance) on the reduced polygon; this is
/// verified and violations are errors.
pub fn union_slices_convex(
    p: &Polygon,
    offsets: &[f64],
    samples: usize,
    tol: &Tolerance,
) -> Result<bool> {
    if !p.is_convex(tol) {
        return Err(Error::NotConvex);
    }
    if offsets.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidConfig("offsets must be finite".into()));
    }
    if offsets.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::UnsortedOffsets);
    }

    let reduced = p.reduced(tol);
    let verts = reduced.vertices();
    let scale = reduced.diameter().max(1.0);
    let eps = tol.coord * scale;

    let mut horizontal = 0usize;
    let e = verts.len();
    if e >= 2 {
        for i in 0..e {
            let d = verts[(i + 1) % e] - verts[i];
            if d.norm() > eps && d.im.abs() <= tol.angle * d.norm() && d.norm() >= 1.0 - eps {
                horizontal += 1;
            }
        }
    }
    if horizontal < 2 {
        return Err(Error::HypothesesNotMet(format!(
            "need two horizontal edges of length at least 1, found {horizontal}"
        )));
    }

    if offsets.len() < 2 {
        return Ok(true);
    }

    let m_p = verts.iter().map(|v| v.im).fold(f64::INFINITY, f64::min);
    let big_m_p = verts.iter().map(|v| v.im).fold(f64::NEG_INFINITY, f64::max);
    let mut heights: Vec<f64> = verts.iter().map(|v| v.im).collect();
    heights.push(m_p);
    heights.push(big_m_p);
    for s in 0..samples {
        let t = (s as f64 + 1.0) / (samples as f64 + 1.0);
        heights.push(m_p + t * (big_m_p - m_p));
    }
    heights.sort_by(|a, b| a.partial_cmp(b).unwrap());
    heights.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * scale);

    let max_gap = offsets
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    for &y in &heights {
        let Some((lo, hi)) = slice_interval(verts, y, eps) else {
            continue;
        };
        if max_gap > (hi - lo) + eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Folds a digit string of length J·n into the n block sums
/// `λ_k = Σ_{j=1..J} x_{jn−k}·p^{−jn}`, so that
/// `Σ_j x_j q^{−j} = Σ_k q^k λ_k`.
pub fn fold_expansion(digits: &[f64], base: &Base) -> Result<Vec<f64>> {
    let n = base.n() as usize;
    if !digits.len().is_multiple_of(n) {
        return Err(Error::BlockMismatch {
            got: digits.len(),
            block: n,
        });
    }
    if digits.iter().any(|d| !d.is_finite()) {
        return Err(Error::InvalidConfig("digits must be finite".into()));
    }
    let blocks = digits.len() / n;
    let pn_inv = base.p_pow_n().recip();
    let mut lambdas = vec![0.0f64; n];
    let mut weight = 1.0;
    for j in 1..=blocks {
        weight *= pn_inv;
        for (k, lambda) in lambdas.iter_mut().enumerate() {
            *lambda += digits[j * n - k - 1] * weight;
        }
    }
    Ok(lambdas)
}

/// Reconstructs `Σ_j x_j q^{−j}` directly, for cross-checking folds.
pub fn expansion_value(digits: &[f64], base: &Base) -> Point {
    let qinv = base.q_inv();
    let mut acc = Point::ZERO;
    let mut w = Point::ONE;
    for &d in digits {
        w = w * qinv;
        acc = acc + w.scale(d);
    }
    acc
}

/// A convex combination of extreme digit strings over {λ_min, λ_max}^n.
/// Entry masks have bit k set when position k takes λ_max.
#[derive(Debug, Clone)]
pub struct FarkasDecomposition {
    n: u32,
    lo: f64,
    hi: f64,
    entries: Vec<(u32, f64)>,
}

impl FarkasDecomposition {
    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// The digit sequence selected by a mask.
    pub fn sequence(&self, mask: u32) -> Vec<f64> {
        (0..self.n)
            .map(|k| if mask >> k & 1 == 1 { self.hi } else { self.lo })
            .collect()
    }

    pub fn weight_sum(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w).sum()
    }

    /// `Σ_h μ_h · Σ_k q^k x_k^{(h)}`.
    pub fn reconstruct(&self, base: &Base) -> Point {
        let mut acc = Point::ZERO;
        for &(mask, w) in &self.entries {
            let mut v = Point::ZERO;
            for k in 0..self.n {
                if mask >> k & 1 == 1 {
                    v = v + base.q_pow(k).scale(self.hi);
                } else {
                    v = v + base.q_pow(k).scale(self.lo);
                }
            }
            acc = acc + v.scale(w);
        }
        acc
    }
}

/// Writes `λ_k = α_k·λ_max + (1−α_k)·λ_min` per position and assigns each
/// extreme sequence the product of its per-position factors. The weights are
/// non-negative, sum to 1 (up to the omitted sub-1e-15 entries) and satisfy
/// `Σ_k q^k λ_k = Σ_h μ_h Σ_k q^k x_k^{(h)}`.
pub fn farkas_decompose(
    lambdas: &[f64],
    bounds: (f64, f64),
    base: &Base,
) -> Result<FarkasDecomposition> {
    let (lo, hi) = bounds;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::BadBounds(lo, hi));
    }
    let n = base.n();
    if lambdas.len() != n as usize {
        return Err(Error::InvalidConfig(format!(
            "need {} block values, got {}",
            n,
            lambdas.len()
        )));
    }
    if n > MAX_ENUM_ORDER {
        return Err(Error::EnumerationCap {
            detail: format!("2^{n} decomposition entries exceeds the cap"),
        });
    }
    let span_eps = 1e-12 * (hi - lo).abs().max(lo.abs()).max(hi.abs());
    let mut alphas = Vec::with_capacity(lambdas.len());
    for (index, &l) in lambdas.iter().enumerate() {
        if !(l >= lo - span_eps && l <= hi + span_eps) {
            return Err(Error::OutOfBounds {
                index,
                value: l,
                lo,
                hi,
            });
        }
        alphas.push(((l - lo) / (hi - lo)).clamp(0.0, 1.0));
    }

    let mut entries = Vec::new();
    // Factors never exceed 1, so a partial product below the cutoff cannot
    // recover; pruning is exactly leaf filtering.
    fn descend(alphas: &[f64], k: usize, mask: u32, weight: f64, out: &mut Vec<(u32, f64)>) {
        if weight < MIN_WEIGHT {
            return;
        }
        if k == alphas.len() {
            out.push((mask, weight));
            return;
        }
        descend(alphas, k + 1, mask, weight * (1.0 - alphas[k]), out);
        descend(alphas, k + 1, mask | (1 << k), weight * alphas[k], out);
    }
    descend(&alphas, 0, 0, 1.0, &mut entries);
    entries.sort_by_key(|&(mask, _)| mask);

    Ok(FarkasDecomposition { n, lo, hi, entries })
}

/// Compares the arithmetic criterion against the geometric slice test on
/// the base polygon with the offsets `t_i = a_i·(p^n − 1)/(max A − min A)`.
/// Returns whether the two verdicts agree.
pub fn criterion_matches_geometry(
    base: &Base,
    alphabet: &Alphabet,
    tol: &Tolerance,
) -> Result<bool> {
    if alphabet.len() < 2 {
        return Err(Error::InvalidConfig(
            "criterion comparison needs at least two digits".into(),
        ));
    }
    let report = convexity_report(base, alphabet);
    let factor = (base.p_pow_n() - 1.0) / (alphabet.max() - alphabet.min());
    let offsets: Vec<f64> = alphabet.digits().iter().map(|a| a * factor).collect();
    let geometric = union_slices_convex(&base_polygon(base), &offsets, 64, tol)?;
    Ok(report.is_convex == geometric)
}

/// Searches depth-d1 cloud midpoints for a convexity falsifier: a pair of
/// cloud points whose midpoint stays farther than `10·coord_tol` (relative
/// to the cloud extent) from every depth-d2 cloud point. Exhaustive over all
/// pairs when feasible, otherwise a seeded sample.
pub fn convexity_witness(
    base: &Base,
    alphabet: &Alphabet,
    depth_pair: (u32, u32),
    tol: &Tolerance,
) -> Result<Option<(Point, Point)>> {
    let (d1, d2) = depth_pair;
    let shallow = cloud(base, alphabet, d1, true, tol)?;
    let deep = cloud(base, alphabet, d2, true, tol)?;
    let scale = bbox_diag(&deep.points).max(1.0);
    let radius = 10.0 * tol.coord * scale;
    let index = CellIndex::new(&deep.points, radius);

    let pts = &shallow.points;
    let k = pts.len();
    const MAX_PAIRS: u64 = 4_000_000;
    let total = (k as u64) * (k as u64);
    let check = |a: Point, b: Point| -> Option<(Point, Point)> {
        let mid = (a + b).scale(0.5);
        if !index.has_within(mid, radius) {
            Some((a, b))
        } else {
            None
        }
    };
    if total <= MAX_PAIRS {
        for i in 0..k {
            for j in i..k {
                if let Some(w) = check(pts[i], pts[j]) {
                    return Ok(Some(w));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_caf3);
        for _ in 0..MAX_PAIRS {
            let i = rng.gen_range(0..k);
            let j = rng.gen_range(0..k);
            if let Some(w) = check(pts[i], pts[j]) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

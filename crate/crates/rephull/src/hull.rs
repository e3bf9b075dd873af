//! Hull construction for the finite binary power sums of a complex base and
//! the affine map to the hull of the representable set.
//!
//! The central objects are the base `q = p·e^{2πi/n}`, the 2^n sums
//! `Σ x_k q^k` with binary digits, and their convex hull. That hull is built
//! three independent ways: brute force over the enumerated sums, the
//! translation recursion `P_m = conv(P_{m−1} ∪ (P_{m−1} + q^{m−1}))`, and the
//! closed-form vertex families given by circular shifts of the words
//! `1^⌊n/2⌋0^…` and `1^⌈n/2⌉0^…`.

use crate::geom::{cross, perp, Orientation, Point, Polygon, Tolerance};
use crate::numsys::Alphabet;
use crate::{Error, Result};

/// Cap on 2^n enumerations.
pub const MAX_ENUM_ORDER: u32 = 24;

/// The pair (n, p) defining the base `q = p·e^{2πi/n}`, with the powers
/// `q^0..q^n` cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Base {
    n: u32,
    p: f64,
    pow: Vec<Point>,
}

/// `e^{2πi·k/n}` with exact values at quarter turns, so that real and
/// imaginary axes stay exact for n ∈ {1, 2, 4} and at half-turn powers.
fn unit_dir(k: u32, n: u32) -> Point {
    let r = k % n;
    if (4 * r).is_multiple_of(n) {
        return match ((4 * r) / n) % 4 {
            0 => Point { re: 1.0, im: 0.0 },
            1 => Point { re: 0.0, im: 1.0 },
            2 => Point { re: -1.0, im: 0.0 },
            _ => Point { re: 0.0, im: -1.0 },
        };
    }
    let theta = std::f64::consts::TAU * (r as f64) / (n as f64);
    Point {
        re: theta.cos(),
        im: theta.sin(),
    }
}

impl Base {
    pub fn new(n: u32, p: f64) -> Result<Base> {
        if n < 1 {
            return Err(Error::BadOrder);
        }
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::BadModulus(p));
        }
        let q = unit_dir(1, n).scale(p);
        let mut pow = Vec::with_capacity(n as usize + 1);
        pow.push(Point::ONE);
        for k in 1..=n {
            let mut v = pow[(k - 1) as usize] * q;
            // Quarter-turn powers are snapped to their exact axis values.
            if (4 * (k % n)).is_multiple_of(n) {
                v = unit_dir(k, n).scale(p.powi(k as i32));
            }
            pow.push(v);
        }
        Ok(Base { n, p, pow })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> Point {
        self.pow[1]
    }

    /// `q^k` for 0 ≤ k ≤ n, from the cache.
    pub fn q_pow(&self, k: u32) -> Point {
        self.pow[k as usize]
    }

    /// `q^n = p^n`.
    pub fn p_pow_n(&self) -> f64 {
        self.p.powi(self.n as i32)
    }

    /// `1/q`.
    pub fn q_inv(&self) -> Point {
        self.q().recip()
    }
}

/// A binary word of length n, digit k weighting `q^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(digits: Vec<u8>) -> Result<Word> {
        if digits.iter().all(|&d| d <= 1) {
            Ok(Word(digits))
        } else {
            Err(Error::InvalidConfig(
                "binary word digits must be 0 or 1".into(),
            ))
        }
    }

    /// `1^ones 0^(len−ones)`.
    pub fn ones_then_zeros(ones: usize, len: usize) -> Word {
        Word((0..len).map(|k| u8::from(k < ones)).collect())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(x_0⋯x_{n−1})_q = Σ x_k q^k`, accumulated in index order.
    pub fn value(&self, base: &Base) -> Result<Point> {
        if self.0.len() != base.n() as usize {
            return Err(Error::WordLength {
                got: self.0.len(),
                expected: base.n() as usize,
            });
        }
        let mut acc = Point::ZERO;
        for (k, &d) in self.0.iter().enumerate() {
            if d == 1 {
                acc = acc + base.q_pow(k as u32);
            }
        }
        Ok(acc)
    }

    /// The circular shift `σ^h`: digit j of the result is digit (j+h) mod n.
    pub fn shifted(&self, h: i64) -> Word {
        let n = self.0.len() as i64;
        if n == 0 {
            return self.clone();
        }
        let h = h.rem_euclid(n);
        Word((0..n).map(|j| self.0[((j + h) % n) as usize]).collect())
    }

    /// Values of the full shift orbit, deduplicated within `coord_tol`.
    pub fn orbit_values(&self, base: &Base, tol: &Tolerance) -> Result<Vec<Point>> {
        let n = base.n() as i64;
        let mut vals: Vec<Point> = Vec::new();
        for h in 0..n {
            let v = self.shifted(h).value(base)?;
            let eps = tol.coord * v.norm().max(1.0);
            if !vals.iter().any(|u| u.dist(v) <= eps) {
                vals.push(v);
            }
        }
        Ok(vals)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// All 2^n sums `Σ_{k<n} x_k q^k`, x binary, in lexicographic digit order
/// (digit 0 most significant). Duplicates are retained.
pub fn binary_power_sums(base: &Base) -> Result<Vec<Point>> {
    let n = base.n();
    if n > MAX_ENUM_ORDER {
        return Err(Error::EnumerationCap {
            detail: format!("2^{n} points exceeds the 2^{MAX_ENUM_ORDER} enumeration cap"),
        });
    }
    let count = 1usize << n;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut acc = Point::ZERO;
        for k in 0..n {
            if (i >> (n - 1 - k)) & 1 == 1 {
                acc = acc + base.q_pow(k);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Translation hull
// ---------------------------------------------------------------------------

/// Vertices rotated so the incoming-normal keys are non-decreasing from
/// index 0. Returns the rotated vertex list. Keys must admit such a rotation
/// (at most one strict cyclic descent).
fn rotate_monotone<K: Copy, F: Fn(K, K) -> bool>(
    verts: &mut [Point],
    keys: &mut [K],
    strictly_less: F,
) {
    let h = keys.len();
    let mut start = 0;
    for i in 0..h {
        if strictly_less(keys[(i + 1) % h], keys[i]) {
            start = (i + 1) % h;
        }
    }
    verts.rotate_left(start);
    keys.rotate_left(start);
}

/// Index of the last key ≤ the target under the supplied comparison, on a
/// non-decreasing list; the list end wraps when the target precedes all keys.
fn locate<K: Copy, F: Fn(K, K) -> bool>(keys: &[K], target: K, le: F) -> usize {
    let mut found = None;
    for (i, &k) in keys.iter().enumerate() {
        if le(k, target) {
            found = Some(i);
        }
    }
    found.unwrap_or(keys.len() - 1)
}

/// Assembles `conv(P ∪ (P+t))` from the two split indices: the untranslated
/// chain i1..=i2 followed by the translated chain i2..=i1 (cyclic,
/// inclusive). The result lists H+2 vertices, possibly degenerate.
fn assemble(verts: &[Point], i1: usize, i2: usize, t: Point) -> Vec<Point> {
    let h = verts.len();
    let mut out = Vec::with_capacity(h + 2);
    let mut i = i1;
    loop {
        out.push(verts[i]);
        if i == i2 {
            break;
        }
        i = (i + 1) % h;
    }
    let mut i = i2;
    loop {
        out.push(verts[i] + t);
        if i == i1 {
            break;
        }
        i = (i + 1) % h;
    }
    out
}

/// The convex hull of `P ∪ (P + t)` by the explicit vertex split along the
/// normal cycle. `P` must be convex with at least 2 vertices and `t` must be
/// non-zero. The result is counter-clockwise and has `P.len() + 2` listed
/// vertices, some possibly degenerate.
pub fn translate_hull(p: &Polygon, t: Point, tol: &Tolerance) -> Result<Polygon> {
    if !t.is_finite() {
        return Err(Error::NonFinitePoint(t.re, t.im));
    }
    if t.re == 0.0 && t.im == 0.0 {
        return Err(Error::ZeroTranslation);
    }
    let mut verts: Vec<Point> = match p.orientation(tol) {
        Orientation::Ccw => p.clone(),
        Orientation::Cw => p.reversed(),
        Orientation::Neither => return Err(Error::NotConvex),
    }
    .into_vertices();
    // Work on distinct consecutive vertices only.
    {
        let dedup = Polygon::new(verts)?;
        let eps = tol.coord * dedup.diameter().max(1.0);
        let mut v2: Vec<Point> = Vec::new();
        for &v in dedup.vertices() {
            if v2.last().is_none_or(|&u| u.dist(v) > eps) {
                v2.push(v);
            }
        }
        while v2.len() > 1 && v2[0].dist(*v2.last().unwrap()) <= eps {
            v2.pop();
        }
        verts = v2;
    }
    if verts.len() < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            got: verts.len(),
        });
    }
    let h = verts.len();
    let mut keys: Vec<f64> = (0..h)
        .map(|i| perp(verts[i] - verts[(i + h - 1) % h]).arg())
        .collect();
    rotate_monotone(&mut verts, &mut keys, |a, b| a < b - tol.angle);

    let tau = std::f64::consts::TAU;
    let a1 = (t.arg() + 0.25 * tau) % tau; // arg (−t)^⊥
    let a2 = (t.arg() + 0.75 * tau) % tau; // arg t^⊥
    let le = |k: f64, target: f64| k <= target + tol.angle;
    let i1 = locate(&keys, a1, le);
    let i2 = locate(&keys, a2, le);
    Polygon::new(assemble(&verts, i1, i2, t))
}

/// Edge and extremal-point counts of `conv(P ∪ (P+t))` without building it:
/// H+2 listed edges, and e + 2 − (number of sides of the reduced polygon
/// parallel to t).
pub fn predict_counts(p: &Polygon, t: Point, tol: &Tolerance) -> Result<(usize, usize)> {
    if t.re == 0.0 && t.im == 0.0 {
        return Err(Error::ZeroTranslation);
    }
    if !p.is_convex(tol) {
        return Err(Error::NotConvex);
    }
    if p.len() < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            got: p.len(),
        });
    }
    let reduced = p.reduced(tol);
    let e = reduced.len();
    let rv = reduced.vertices();
    let mut parallel = 0usize;
    for i in 0..e.max(2) {
        if e < 2 {
            break;
        }
        let d = rv[(i + 1) % e] - rv[i];
        if d.norm() == 0.0 {
            continue;
        }
        if cross(d, t).abs() <= tol.angle * d.norm() * t.norm() {
            parallel += 1;
        }
    }
    Ok((p.len() + 2, e + 2 - parallel.min(2)))
}

// ---------------------------------------------------------------------------
// Base polygon by exact-angle-class recursion
// ---------------------------------------------------------------------------
//
// Every edge of the recursion is parallel to some ±q^k, so normal directions
// live in the 4n classes c·π/(2n). Tracking the integer class alongside the
// float vertex makes the h1/h2 search exact for any n and any p > 1.

struct ClassedPolygon {
    verts: Vec<Point>,
    /// Incoming normal class of vertex i, in units of π/(2n), range [0, 4n).
    inc: Vec<u32>,
}

impl ClassedPolygon {
    fn normalize(&mut self) {
        let h = self.inc.len();
        let mut start = 0;
        for i in 0..h {
            if self.inc[(i + 1) % h] < self.inc[i] {
                start = (i + 1) % h;
            }
        }
        self.verts.rotate_left(start);
        self.inc.rotate_left(start);
    }

    /// One translation step by t with the given exact normal classes for the
    /// two new bridging edges.
    fn translate(&mut self, t: Point, class_neg_t_perp: u32, class_t_perp: u32) {
        let i1 = locate(&self.inc, class_neg_t_perp, |k, target| k <= target);
        let i2 = locate(&self.inc, class_t_perp, |k, target| k <= target);
        let verts = assemble(&self.verts, i1, i2, t);

        let h = self.verts.len();
        let mut inc = Vec::with_capacity(h + 2);
        inc.push(class_neg_t_perp);
        let mut i = i1;
        while i != i2 {
            i = (i + 1) % h;
            inc.push(self.inc[i]);
        }
        inc.push(class_t_perp);
        let mut i = i2;
        while i != i1 {
            i = (i + 1) % h;
            inc.push(self.inc[i]);
        }
        self.verts = verts;
        self.inc = inc;
        self.normalize();
    }
}

/// The polygon `P_{n,p}`: the convex hull of the 2^n binary power sums,
/// built by n−1 translation-hull steps from the segment [0, 1]. The result
/// lists 2n vertices for n ≥ 2 (degenerate ones included) in
/// counter-clockwise order.
pub fn base_polygon(base: &Base) -> Polygon {
    let n = base.n();
    if n == 1 {
        return Polygon::new(vec![Point::ZERO, Point::ONE]).unwrap();
    }
    // Segment [0, 1]: two overlapped edges parallel to q^0. Incoming normal
    // classes: vertex 0 gets (−q^0)^⊥ = n units, vertex 1 gets (q^0)^⊥ = 3n.
    let mut p = ClassedPolygon {
        verts: vec![Point::ZERO, Point::ONE],
        inc: vec![n, 3 * n],
    };
    for m in 1..n {
        let t = base.q_pow(m);
        let class_neg_t_perp = (4 * m + n) % (4 * n);
        let class_t_perp = (4 * m + 3 * n) % (4 * n);
        p.translate(t, class_neg_t_perp, class_t_perp);
    }
    Polygon::new(p.verts).unwrap()
}

// ---------------------------------------------------------------------------
// Closed-form vertices and normals
// ---------------------------------------------------------------------------

/// One family of extremal data for index h ∈ 1..=n: the two shifted words,
/// their values `v_{2h−1}` and `v_{2h}`, the power index sets selecting them,
/// and the closed-form normals of the edges arriving at each.
#[derive(Debug, Clone)]
pub struct VertexFamily {
    pub h: u32,
    pub low_word: Word,
    pub high_word: Word,
    pub low_vertex: Point,
    pub high_vertex: Point,
    pub low_indices: Vec<u32>,
    pub high_indices: Vec<u32>,
    pub odd_normal: Point,
    pub even_normal: Point,
}

fn family_indices(h: u32, n: u32, ones: u32) -> Vec<u32> {
    // k is selected when (k − h + 1) mod n < ones.
    (0..n)
        .filter(|&k| (k as i64 - h as i64 + 1).rem_euclid(n as i64) < ones as i64)
        .collect()
}

fn word_from_indices(indices: &[u32], n: u32) -> Word {
    let mut digits = vec![0u8; n as usize];
    for &k in indices {
        digits[k as usize] = 1;
    }
    Word(digits)
}

fn sum_powers(base: &Base, indices: &[u32]) -> Point {
    indices
        .iter()
        .fold(Point::ZERO, |acc, &k| acc + base.q_pow(k))
}

/// The n vertex families whose 2n values satisfy
/// `P_{n,p} = conv{v_1, …, v_{2n}}`. For even n the two vertices of each
/// family coincide and the even normal vanishes.
pub fn closed_form_vertices(base: &Base) -> Vec<VertexFamily> {
    let n = base.n();
    let p = base.p();
    let low_ones = n / 2;
    let high_ones = n - n / 2; // ⌈n/2⌉
    (1..=n)
        .map(|h| {
            let low_indices = family_indices(h, n, low_ones);
            let high_indices = family_indices(h, n, high_ones);
            let low_vertex = sum_powers(base, &low_indices);
            let high_vertex = sum_powers(base, &high_indices);
            let k_odd = (h as i64 - 2).rem_euclid(n as i64) as u32;
            let k_even = (h as i64 - 2 + high_ones as i64).rem_euclid(n as i64) as u32;
            let (odd_normal, even_normal) = if n % 2 == 1 {
                (perp(-base.q_pow(k_odd)), perp(base.q_pow(k_even)))
            } else {
                let shrink = 1.0 - p.powi(-((n / 2) as i32));
                (perp(-base.q_pow(k_odd)).scale(shrink), Point::ZERO)
            };
            VertexFamily {
                h,
                low_word: word_from_indices(&low_indices, n),
                high_word: word_from_indices(&high_indices, n),
                low_vertex,
                high_vertex,
                low_indices,
                high_indices,
                odd_normal,
                even_normal,
            }
        })
        .collect()
}

/// The closed-form normal pairs `(n_{2h−1}, n_{2h})` for h = 1..=n.
/// Undefined for n = 1, where the hull is a segment.
pub fn closed_form_normals(base: &Base) -> Result<Vec<(Point, Point)>> {
    if base.n() < 2 {
        return Err(Error::SegmentNormals);
    }
    Ok(closed_form_vertices(base)
        .into_iter()
        .map(|f| (f.odd_normal, f.even_normal))
        .collect())
}

/// The boundary cycle `v_1, v_2, …, v_{2n}` of the closed-form vertices.
/// For even n consecutive pairs coincide.
pub fn closed_form_cycle(base: &Base) -> Vec<Point> {
    closed_form_vertices(base)
        .iter()
        .flat_map(|f| [f.low_vertex, f.high_vertex])
        .collect()
}

/// The convex hull of the representable set for the given alphabet:
/// the base polygon scaled by `(max A − min A)/(p^n − 1)` and shifted by
/// `(min A)·Σ q^k/(p^n − 1)`. A single-digit alphabet collapses to the one
/// point `a/(q − 1)`.
pub fn lambda_hull(base: &Base, alphabet: &Alphabet) -> Polygon {
    let digits = alphabet.digits();
    if digits.len() == 1 {
        let a = digits[0];
        let fixed = (base.q() - Point::ONE).recip().scale(a);
        return Polygon::new(vec![fixed]).unwrap();
    }
    let n = base.n();
    let denom = base.p_pow_n() - 1.0;
    let scale = (alphabet.max() - alphabet.min()) / denom;
    let geo_sum = (0..n).fold(Point::ZERO, |acc, k| acc + base.q_pow(k));
    let shift = geo_sum.scale(alphabet.min() / denom);
    let families = closed_form_vertices(base);
    let verts: Vec<Point> = if n.is_multiple_of(2) {
        families
            .iter()
            .map(|f| f.high_vertex.scale(scale) + shift)
            .collect()
    } else {
        families
            .iter()
            .flat_map(|f| [f.low_vertex, f.high_vertex])
            .map(|v| v.scale(scale) + shift)
            .collect()
    };
    Polygon::new(verts).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{canonical_equal, convex_hull};

    const TOL: Tolerance = Tolerance {
        angle: 1e-9,
        coord: 1e-9,
    };

    fn pt(re: f64, im: f64) -> Point {
        Point::new(re, im).unwrap()
    }

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        Polygon::new(coords.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn base(n: u32, p: f64) -> Base {
        Base::new(n, p).unwrap()
    }

    fn cbrt2_base() -> Base {
        base(3, 2f64.powf(1.0 / 3.0))
    }

    #[test]
    fn word_value_examples() {
        let b = cbrt2_base();
        let one = Word::new(vec![1, 0, 0]).unwrap().value(&b).unwrap();
        assert!(one.dist(Point::ONE) < 1e-15);
        let v = Word::new(vec![1, 1, 0]).unwrap().value(&b).unwrap();
        assert!((v.re - 0.3700394751).abs() < 1e-9);
        assert!((v.im - 1.0911236359).abs() < 1e-9);
        let zero = Word::new(vec![0, 0, 0]).unwrap().value(&b).unwrap();
        assert_eq!(zero, Point::ZERO);
    }

    #[test]
    fn circular_shift_examples() {
        let w = Word::new(vec![1, 1, 0, 0]).unwrap();
        assert_eq!(w.shifted(1).digits(), &[1, 0, 0, 1]);
        assert_eq!(w.shifted(4).digits(), w.digits());
        let w3 = Word::new(vec![1, 0, 0]).unwrap();
        assert_eq!(w3.shifted(2).digits(), &[0, 1, 0]);
    }

    #[test]
    fn orbit_of_1100_matches_rectangle_vertices() {
        let b = base(4, 1.5);
        let orbit = Word::new(vec![1, 1, 0, 0])
            .unwrap()
            .orbit_values(&b, &TOL)
            .unwrap();
        let expect = [
            b.q_pow(0) + b.q_pow(1),
            b.q_pow(1) + b.q_pow(2),
            b.q_pow(2) + b.q_pow(3),
            b.q_pow(3) + b.q_pow(0),
        ];
        assert_eq!(orbit.len(), 4);
        for e in expect {
            assert!(orbit.iter().any(|v| v.dist(e) < 1e-12));
        }
    }

    #[test]
    fn orbit_of_zero_word_is_origin() {
        let b = cbrt2_base();
        let orbit = Word::new(vec![0, 0, 0])
            .unwrap()
            .orbit_values(&b, &TOL)
            .unwrap();
        assert_eq!(orbit, vec![Point::ZERO]);
    }

    #[test]
    fn binary_sums_n1() {
        let b = base(1, 2.0);
        let pts = binary_power_sums(&b).unwrap();
        assert_eq!(pts, vec![Point::ZERO, Point::ONE]);
    }

    #[test]
    fn binary_sums_n2_real_base() {
        // q = −√2, so the four sums are 0, q, 1, 1+q in digit order.
        let b = base(2, 2f64.sqrt());
        let pts = binary_power_sums(&b).unwrap();
        assert_eq!(pts.len(), 4);
        let root2 = std::f64::consts::SQRT_2;
        for (got, want) in pts.iter().zip([0.0, -root2, 1.0, 1.0 - root2]) {
            assert!((got.re - want).abs() < 1e-12, "{got:?} vs {want}");
            assert_eq!(got.im, 0.0);
        }
    }

    #[test]
    fn binary_sums_cap() {
        assert!(matches!(
            binary_power_sums(&base(25, 1.01)),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn hexagon_from_enumeration_matches_named_vertices() {
        let b = cbrt2_base();
        let hull = convex_hull(&binary_power_sums(&b).unwrap(), &TOL).unwrap();
        let q = b.q_pow(1);
        let q2 = b.q_pow(2);
        let expect = [Point::ONE, Point::ONE + q, q, q + q2, q2, q2 + Point::ONE];
        assert_eq!(hull.len(), 6);
        for e in expect {
            assert!(hull.vertices().iter().any(|v| v.dist(e) < 1e-12));
        }
    }

    #[test]
    fn translate_square_parallel_to_two_edges() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let t = pt(2.0, 0.0);
        let out = translate_hull(&sq, t, &TOL).unwrap();
        assert_eq!(out.len(), 6);
        let ex = out.extremal_points(&TOL);
        let expect = poly(&[(0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (0.0, 1.0)]);
        assert!(canonical_equal(&Polygon::new(ex).unwrap(), &expect, &TOL));
        // cross-check against the brute-force hull of both vertex sets
        let mut union: Vec<Point> = sq.vertices().to_vec();
        union.extend(sq.vertices().iter().map(|&v| v + t));
        let oracle = convex_hull(&union, &TOL).unwrap();
        assert!(canonical_equal(&out, &oracle, &TOL));
    }

    #[test]
    fn translate_segment_by_complex_base_gives_parallelogram() {
        let b = cbrt2_base();
        let seg = poly(&[(0.0, 0.0), (1.0, 0.0)]);
        let out = translate_hull(&seg, b.q_pow(1), &TOL).unwrap();
        let expect = Polygon::new(vec![
            Point::ZERO,
            Point::ONE,
            Point::ONE + b.q_pow(1),
            b.q_pow(1),
        ])
        .unwrap();
        assert!(canonical_equal(&out, &expect, &TOL));
    }

    #[test]
    fn translate_square_diagonal_has_six_extremals() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let out = translate_hull(&sq, pt(1.0, 1.0), &TOL).unwrap();
        assert_eq!(out.extremal_points(&TOL).len(), 6);
    }

    #[test]
    fn translate_rejects_zero_and_nonconvex() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(
            translate_hull(&sq, Point::ZERO, &TOL),
            Err(Error::ZeroTranslation)
        ));
        let l = poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 2.0),
            (0.0, 2.0),
        ]);
        assert!(matches!(
            translate_hull(&l, pt(1.0, 0.0), &TOL),
            Err(Error::NotConvex)
        ));
    }

    #[test]
    fn predicted_counts_examples() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(predict_counts(&sq, pt(1.0, 1.0), &TOL).unwrap(), (6, 6));
        assert_eq!(predict_counts(&sq, pt(2.0, 0.0), &TOL).unwrap(), (6, 4));
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(predict_counts(&tri, pt(-2.0, 0.0), &TOL).unwrap(), (5, 4));
    }

    #[test]
    fn base_polygon_matches_enumeration_hexagon() {
        let b = cbrt2_base();
        let built = base_polygon(&b);
        let oracle = convex_hull(&binary_power_sums(&b).unwrap(), &TOL).unwrap();
        assert!(canonical_equal(&built, &oracle, &TOL));
        assert_eq!(built.extremal_points(&TOL).len(), 6);
    }

    #[test]
    fn base_polygon_n4_is_rectangle_on_orbit_1100() {
        let b = base(4, 1.7);
        let built = base_polygon(&b);
        let ex = built.extremal_points(&TOL);
        assert_eq!(ex.len(), 4);
        let orbit = Word::new(vec![1, 1, 0, 0])
            .unwrap()
            .orbit_values(&b, &TOL)
            .unwrap();
        for v in &ex {
            assert!(orbit.iter().any(|o| o.dist(*v) < 1e-9));
        }
    }

    #[test]
    fn base_polygon_n1_is_unit_segment() {
        let b = base(1, 2.0);
        assert_eq!(base_polygon(&b).vertices(), &[Point::ZERO, Point::ONE]);
    }

    #[test]
    fn closed_form_orbits_match_named_unions() {
        // n = 3: shifts of 100 and 110.
        let b = cbrt2_base();
        let fams = closed_form_vertices(&b);
        let low: Vec<Point> = fams.iter().map(|f| f.low_vertex).collect();
        let high: Vec<Point> = fams.iter().map(|f| f.high_vertex).collect();
        let orbit_low = Word::new(vec![1, 0, 0])
            .unwrap()
            .orbit_values(&b, &TOL)
            .unwrap();
        let orbit_high = Word::new(vec![1, 1, 0])
            .unwrap()
            .orbit_values(&b, &TOL)
            .unwrap();
        for v in &low {
            assert!(orbit_low.iter().any(|o| o.dist(*v) < 1e-12));
        }
        for v in &high {
            assert!(orbit_high.iter().any(|o| o.dist(*v) < 1e-12));
        }

        // n = 5: shifts of 11000 and 11100 give 10 distinct points.
        let b5 = base(5, 1.3);
        let fams5 = closed_form_vertices(&b5);
        let mut all: Vec<Point> = fams5
            .iter()
            .flat_map(|f| [f.low_vertex, f.high_vertex])
            .collect();
        all.dedup_by(|a, b| a.dist(*b) < 1e-12);
        assert_eq!(all.len(), 10);

        // n = 6: the single orbit of 111000, 6 distinct points.
        let b6 = base(6, 1.2);
        let fams6 = closed_form_vertices(&b6);
        let orbit6 = Word::new(vec![1, 1, 1, 0, 0, 0])
            .unwrap()
            .orbit_values(&b6, &TOL)
            .unwrap();
        assert_eq!(orbit6.len(), 6);
        for f in &fams6 {
            assert!(f.low_vertex.dist(f.high_vertex) < 1e-12);
            assert!(orbit6.iter().any(|o| o.dist(f.high_vertex) < 1e-12));
        }
    }

    #[test]
    fn closed_form_cycle_is_hull_of_enumeration() {
        for (n, p) in [
            (2u32, 1.4),
            (3, 1.26),
            (4, 1.9),
            (5, 1.15),
            (7, 1.6),
            (8, 1.3),
        ] {
            let b = base(n, p);
            let cycle = Polygon::new(closed_form_cycle(&b)).unwrap();
            let oracle = convex_hull(&binary_power_sums(&b).unwrap(), &TOL).unwrap();
            assert!(
                canonical_equal(&cycle, &oracle, &TOL),
                "closed-form cycle differs from hull for n={n} p={p}"
            );
        }
    }

    #[test]
    fn closed_form_normals_examples() {
        // n = 4, h = 2: odd normal (1 − p^{-2})·(−q^0)^⊥ = (0, 1 − p^{-2}).
        let p = 1.5;
        let b = base(4, p);
        let normals = closed_form_normals(&b).unwrap();
        let n3 = normals[1].0;
        assert!(n3.dist(pt(0.0, 1.0 - p.powi(-2))) < 1e-12);
        // every even-n second normal vanishes
        for (_, even) in &normals {
            assert_eq!(*even, Point::ZERO);
        }

        // n = 3, h = 1: odd normal (−q^2)^⊥.
        let b3 = cbrt2_base();
        let n1 = closed_form_normals(&b3).unwrap()[0].0;
        assert!(n1.dist(perp(-b3.q_pow(2))) < 1e-12);
    }

    #[test]
    fn closed_form_normals_reject_segment() {
        assert!(matches!(
            closed_form_normals(&base(1, 2.0)),
            Err(Error::SegmentNormals)
        ));
    }

    #[test]
    fn normal_arguments_follow_closed_form_angle() {
        // arg n_{2h−1} = ((h−2 mod n)/n·2π + π/2) mod 2π
        let tau = std::f64::consts::TAU;
        for (n, p) in [(3u32, 1.26), (5, 1.5), (4, 1.5), (6, 1.2), (9, 1.1)] {
            let b = base(n, p);
            for f in closed_form_vertices(&b) {
                let k = (f.h as i64 - 2).rem_euclid(n as i64) as f64;
                let expect = (k / n as f64 * tau + 0.25 * tau) % tau;
                let got = f.odd_normal.arg();
                let diff = (got - expect).abs();
                assert!(
                    diff < 1e-9 || (tau - diff) < 1e-9,
                    "n={n} h={} got={got} expect={expect}",
                    f.h
                );
            }
        }
    }

    #[test]
    fn lambda_hull_scales_base_polygon_for_binary_alphabet() {
        let b = cbrt2_base();
        let alpha = Alphabet::new(vec![0.0, 1.0]).unwrap();
        let lam = lambda_hull(&b, &alpha);
        // p^3 = 2, so conv(Λ) = P_{n,p} exactly.
        assert!(canonical_equal(&lam, &base_polygon(&b), &TOL));
    }

    #[test]
    fn lambda_hull_n4_is_rectangle() {
        let b = base(4, 1.9);
        let alpha = Alphabet::new(vec![0.0, 1.0]).unwrap();
        let lam = lambda_hull(&b, &alpha);
        assert_eq!(lam.extremal_points(&TOL).len(), 4);
        assert!(lam.is_convex(&TOL));
    }

    #[test]
    fn lambda_hull_shifted_alphabet() {
        let b = cbrt2_base();
        let alpha = Alphabet::new(vec![3.0, 5.0]).unwrap();
        let lam = lambda_hull(&b, &alpha);
        // scale 2/(p³−1) = 2, shift 3(1+q+q²)/(p³−1)
        let geo = b.q_pow(0) + b.q_pow(1) + b.q_pow(2);
        let expect: Vec<Point> = base_polygon(&b)
            .vertices()
            .iter()
            .map(|v| v.scale(2.0) + geo.scale(3.0))
            .collect();
        assert!(canonical_equal(&lam, &Polygon::new(expect).unwrap(), &TOL));
    }

    #[test]
    fn lambda_hull_single_digit_is_fixed_point() {
        let b = cbrt2_base();
        let alpha = Alphabet::new(vec![2.0]).unwrap();
        let lam = lambda_hull(&b, &alpha);
        assert_eq!(lam.len(), 1);
        let fixed = lam.vertices()[0];
        // a/(q−1) is the fixed point of x ↦ (x + a)/q
        let mapped = (fixed + pt(2.0, 0.0)) * b.q_inv();
        assert!(mapped.dist(fixed) < 1e-12);
    }

    #[test]
    fn translation_recursion_matches_oracle_on_grid() {
        for n in 1..=8u32 {
            for p in [2f64.powf(1.0 / n as f64), 1.2, 1.5, 2.0] {
                let b = base(n, p);
                let built = base_polygon(&b);
                let oracle = convex_hull(&binary_power_sums(&b).unwrap(), &TOL).unwrap();
                assert!(
                    canonical_equal(&built, &oracle, &TOL),
                    "mismatch at n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn extremal_counts_follow_parity() {
        for n in 2..=10u32 {
            let b = base(n, 1.37);
            let e = base_polygon(&b).extremal_points(&TOL).len();
            let expect = if n % 2 == 1 {
                2 * n as usize
            } else {
                n as usize
            };
            assert_eq!(e, expect, "n={n}");
        }
        assert_eq!(base_polygon(&base(1, 1.7)).extremal_points(&TOL).len(), 2);
    }
}

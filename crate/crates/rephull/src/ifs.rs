//! Iterated-function-system view of the representable set: the contractions
//! `f_a(x) = (x + a)/q`, the Hutchinson operator, and depth-d point clouds of
//! truncated expansions `Σ_{j≤d} x_j q^{−j}`.
//!
//! Clouds are generated by direct digit-string enumeration rather than by
//! iterating the maps, so the fixed-point identity
//! `cloud(d+1) = F(cloud(d))` is a genuine cross-check between two
//! computation paths.

use std::collections::HashMap;

use crate::geom::{Point, Tolerance};
use crate::hull::{lambda_hull, Base};
use crate::numsys::Alphabet;
use crate::{Error, Result};

/// Cap on m^depth cloud enumerations.
pub const MAX_CLOUD_POINTS: u64 = 1 << 24;

/// One contraction `x ↦ (x + a)/q` of the base's IFS.
#[derive(Debug, Clone)]
pub struct IfsMap {
    pub digit: f64,
    pub base: Base,
}

impl IfsMap {
    pub fn new(digit: f64, base: Base) -> Result<IfsMap> {
        if !digit.is_finite() {
            return Err(Error::InvalidConfig("IFS digit must be finite".into()));
        }
        Ok(IfsMap { digit, base })
    }

    /// The contraction factor 1/p.
    pub fn contraction(&self) -> f64 {
        1.0 / self.base.p()
    }

    pub fn apply(&self, x: Point) -> Point {
        let shift = Point {
            re: self.digit,
            im: 0.0,
        };
        (x + shift) * self.base.q_inv()
    }
}

/// A finite approximation of the representable set: all truncated expansions
/// of the given depth.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub points: Vec<Point>,
    pub depth: u32,
    pub base: Base,
    pub alphabet: Alphabet,
}

/// One application of the Hutchinson operator `F(X) = ⋃_a f_a(X)`, digits in
/// alphabet order, deduplicated within `coord_tol`.
pub fn hutchinson_step(
    base: &Base,
    alphabet: &Alphabet,
    points: &[Point],
    tol: &Tolerance,
) -> Vec<Point> {
    let qinv = base.q_inv();
    let mut out = Vec::with_capacity(points.len() * alphabet.digits().len());
    for &a in alphabet.digits() {
        let shift = Point { re: a, im: 0.0 };
        for &x in points {
            out.push((x + shift) * qinv);
        }
    }
    let scale = bbox_diag(&out).max(1.0);
    dedup_points(&out, tol.coord * scale)
}

/// All m^depth truncated expansions `Σ_{j=1}^{depth} x_j q^{−j}` in
/// lexicographic digit order (x_1 most significant). With `dedup` the list is
/// thinned within `coord_tol`, keeping first occurrences; duplicates are
/// informative for density renderings, so thinning is optional.
pub fn cloud(
    base: &Base,
    alphabet: &Alphabet,
    depth: u32,
    dedup: bool,
    tol: &Tolerance,
) -> Result<PointCloud> {
    let m = alphabet.digits().len() as u64;
    let mut count: u64 = 1;
    for d in 1..=depth {
        count = count.saturating_mul(m);
        if count > MAX_CLOUD_POINTS {
            return Err(Error::EnumerationCap {
                detail: format!(
                    "cloud of {m}^{depth} points exceeds the cap; depth {d} is already over {MAX_CLOUD_POINTS} points"
                ),
            });
        }
    }

    let qinv = base.q_inv();
    let mut qinv_pow = Vec::with_capacity(depth as usize + 1);
    qinv_pow.push(Point::ONE);
    for j in 1..=depth {
        qinv_pow.push(qinv_pow[(j - 1) as usize] * qinv);
    }

    let digits = alphabet.digits();
    let mut points = Vec::with_capacity(count as usize);
    // Depth-first over digit strings; the partial sum is extended one digit
    // at a time so each point costs O(1) arithmetic.
    let mut stack: Vec<(u32, Point)> = vec![(0, Point::ZERO)];
    if depth == 0 {
        points.push(Point::ZERO);
    } else {
        while let Some((level, partial)) = stack.pop() {
            if level == depth {
                points.push(partial);
                continue;
            }
            // Reverse digit order on the stack keeps the output lexicographic.
            for &a in digits.iter().rev() {
                stack.push((level + 1, partial + qinv_pow[(level + 1) as usize].scale(a)));
            }
        }
    }

    let points = if dedup {
        let scale = bbox_diag(&points).max(1.0);
        dedup_points(&points, tol.coord * scale)
    } else {
        points
    };
    Ok(PointCloud {
        points,
        depth,
        base: base.clone(),
        alphabet: alphabet.clone(),
    })
}

/// Max over hull extremal points of the distance to the nearest cloud point.
/// Bounded by the truncation tail `max|A|·p^{−depth}/(p − 1)` whenever every
/// extremal point of the hull is a limit of expansions.
pub fn hausdorff_to_hull(cloud: &PointCloud, tol: &Tolerance) -> f64 {
    let hull = lambda_hull(&cloud.base, &cloud.alphabet);
    let mut worst: f64 = 0.0;
    for v in hull.extremal_points(tol) {
        let mut best = f64::INFINITY;
        for p in &cloud.points {
            best = best.min(p.dist(v));
        }
        worst = worst.max(best);
    }
    worst
}

/// The tail radius `max|A|·p^{−depth}/(p − 1)`.
pub fn tail_radius(base: &Base, alphabet: &Alphabet, depth: u32) -> f64 {
    let amax = alphabet
        .digits()
        .iter()
        .fold(0.0f64, |acc, a| acc.max(a.abs()));
    amax * base.p().powi(-(depth as i32)) / (base.p() - 1.0)
}

pub(crate) fn bbox_diag(points: &[Point]) -> f64 {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.0 = lo.0.min(p.re);
        lo.1 = lo.1.min(p.im);
        hi.0 = hi.0.max(p.re);
        hi.1 = hi.1.max(p.im);
    }
    if points.is_empty() {
        0.0
    } else {
        ((hi.0 - lo.0).powi(2) + (hi.1 - lo.1).powi(2)).sqrt()
    }
}

/// Uniform-grid point index for O(1) nearest-within-radius queries at a fixed
/// radius. Cell size equals the query radius, so the 3×3 neighborhood
/// suffices.
pub(crate) struct CellIndex {
    cell: f64,
    map: HashMap<(i64, i64), Vec<Point>>,
}

impl CellIndex {
    pub(crate) fn new(points: &[Point], radius: f64) -> CellIndex {
        let cell = radius.max(1e-300);
        let mut map: HashMap<(i64, i64), Vec<Point>> = HashMap::new();
        for &p in points {
            map.entry(Self::key(p, cell)).or_default().push(p);
        }
        CellIndex { cell, map }
    }

    fn key(p: Point, cell: f64) -> (i64, i64) {
        ((p.re / cell).floor() as i64, (p.im / cell).floor() as i64)
    }

    pub(crate) fn has_within(&self, p: Point, radius: f64) -> bool {
        let (cx, cy) = Self::key(p, self.cell);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = self.map.get(&(cx + dx, cy + dy)) {
                    if bucket.iter().any(|q| q.dist(p) <= radius) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Order-preserving deduplication: a point is dropped when an earlier point
/// lies within `eps`.
pub(crate) fn dedup_points(points: &[Point], eps: f64) -> Vec<Point> {
    let cell = eps.max(1e-300);
    let mut map: HashMap<(i64, i64), Vec<Point>> = HashMap::new();
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let (cx, cy) = ((p.re / cell).floor() as i64, (p.im / cell).floor() as i64);
        let mut seen = false;
        'outer: for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = map.get(&(cx + dx, cy + dy)) {
                    if bucket.iter().any(|q: &Point| q.dist(p) <= eps) {
                        seen = true;
                        break 'outer;
                    }
                }
            }
        }
        if !seen {
            map.entry((cx, cy)).or_default().push(p);
            out.push(p);
        }
    }
    out
}

/// Set equality within an absolute tolerance, both directions.
pub fn point_sets_equal(a: &[Point], b: &[Point], eps: f64) -> bool {
    let ia = CellIndex::new(a, eps);
    let ib = CellIndex::new(b, eps);
    a.iter().all(|&p| ib.has_within(p, eps)) && b.iter().all(|&p| ia.has_within(p, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    const TOL: Tolerance = Tolerance {
        angle: 1e-9,
        coord: 1e-9,
    };

    fn base(n: u32, p: f64) -> Base {
        Base::new(n, p).unwrap()
    }

    fn alpha(digits: &[f64]) -> Alphabet {
        Alphabet::new(digits.to_vec()).unwrap()
    }

    #[test]
    fn map_fixed_points() {
        let b = base(3, 2f64.powf(1.0 / 3.0));
        let f0 = IfsMap::new(0.0, b.clone()).unwrap();
        assert_eq!(f0.apply(Point::ZERO), Point::ZERO);

        let fa = IfsMap::new(1.7, b.clone()).unwrap();
        let fixed = (b.q() - Point::ONE).recip().scale(1.7);
        assert!(fa.apply(fixed).dist(fixed) < 1e-12);

        let b1 = base(1, 2.0);
        let f1 = IfsMap::new(1.0, b1).unwrap();
        assert!(f1.apply(Point::ZERO).dist(Point { re: 0.5, im: 0.0 }) < 1e-15);
    }

    #[test]
    fn map_contracts_distances_exactly() {
        let b = base(5, 1.8);
        let f = IfsMap::new(0.6, b.clone()).unwrap();
        let x = Point { re: 0.3, im: -1.2 };
        let y = Point { re: -0.9, im: 0.4 };
        let lhs = f.apply(x).dist(f.apply(y));
        assert!((lhs - x.dist(y) / b.p()).abs() < 1e-12);
    }

    #[test]
    fn hutchinson_of_origin() {
        let b = base(3, 2f64.powf(1.0 / 3.0));
        let a = alpha(&[0.0, 1.0]);
        let step = hutchinson_step(&b, &a, &[Point::ZERO], &TOL);
        assert_eq!(step.len(), 2);
        assert!(step[0].dist(Point::ZERO) < 1e-15);
        assert!(step[1].dist(b.q_inv()) < 1e-15);
    }

    #[test]
    fn two_steps_enumerate_depth_two_sums() {
        let b = base(4, 1.5);
        let a = alpha(&[0.0, 1.0]);
        let two = hutchinson_step(&b, &a, &hutchinson_step(&b, &a, &[Point::ZERO], &TOL), &TOL);
        let qi = b.q_inv();
        let qi2 = qi * qi;
        let expect = [Point::ZERO, qi2, qi, qi + qi2];
        assert_eq!(two.len(), 4);
        for e in expect {
            assert!(two.iter().any(|p| p.dist(e) < 1e-12));
        }
    }

    #[test]
    fn cloud_depth_zero_and_one() {
        let b = base(3, 2f64.powf(1.0 / 3.0));
        let a = alpha(&[0.0, 1.0]);
        let c0 = cloud(&b, &a, 0, false, &TOL).unwrap();
        assert_eq!(c0.points, vec![Point::ZERO]);
        let c1 = cloud(&b, &a, 1, false, &TOL).unwrap();
        assert_eq!(c1.points.len(), 2);
        assert!(c1.points[0].dist(Point::ZERO) < 1e-15);
        assert!(c1.points[1].dist(b.q_inv()) < 1e-15);
    }

    #[test]
    fn cloud_respects_cap_with_minimal_depth_in_message() {
        let b = base(4, 2.0);
        let a = alpha(&[0.0, 1.0, 2.0, 3.0]);
        let err = cloud(&b, &a, 14, false, &TOL).unwrap_err();
        match err {
            Error::EnumerationCap { detail } => assert!(detail.contains("depth 13")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn cloud_equals_iterated_hutchinson() {
        let b = base(3, 1.4);
        let a = alpha(&[0.0, 0.8, 1.9]);
        let mut set = vec![Point::ZERO];
        for d in 1..=5u32 {
            set = hutchinson_step(&b, &a, &set, &TOL);
            let direct = cloud(&b, &a, d, true, &TOL).unwrap();
            let scale = bbox_diag(&direct.points).max(1.0);
            assert!(
                point_sets_equal(&set, &direct.points, 1e-12 * scale),
                "depth {d}"
            );
        }
    }

    #[test]
    fn twin_dragon_cloud_shape() {
        // q = 1 + i at n = 8, p = √2.
        let b = base(8, 2f64.sqrt());
        assert!(b.q().dist(Point { re: 1.0, im: 1.0 }) < 1e-12);
        let a = alpha(&[0.0, 1.0]);
        let c = cloud(&b, &a, 14, false, &TOL).unwrap();
        assert_eq!(c.points.len(), 1 << 14);
        let hull = lambda_hull(&b, &a);
        for p in c.points.iter().step_by(7) {
            assert!(hull.contains(*p, &TOL).unwrap());
        }
    }

    #[test]
    fn hausdorff_bounded_by_tail() {
        let b = base(3, 2f64.powf(1.0 / 3.0));
        let a = alpha(&[0.0, 1.0]);
        for d in [0u32, 4, 8, 12] {
            let c = cloud(&b, &a, d, false, &TOL).unwrap();
            let h = hausdorff_to_hull(&c, &TOL);
            let bound = tail_radius(&b, &a, d);
            assert!(
                h <= bound * (1.0 + 1e-9) + 1e-12,
                "depth {d}: {h} > {bound}"
            );
        }
    }

    #[test]
    fn hausdorff_decreases_for_single_digit() {
        let b = base(4, 1.6);
        let a = alpha(&[1.0]);
        let mut prev = f64::INFINITY;
        for d in 1..=6u32 {
            let c = cloud(&b, &a, d, false, &TOL).unwrap();
            let h = hausdorff_to_hull(&c, &TOL);
            assert!(h <= prev + 1e-15, "depth {d}");
            prev = h;
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Each map scales every diameter by exactly 1/p.
            #[test]
            fn maps_scale_diameters(
                n in 1u32..=8,
                p in 1.05f64..2.5,
                digit in -2.0f64..2.0,
                raw in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..12)
            ) {
                let b = base(n, p);
                let f = IfsMap::new(digit, b.clone()).unwrap();
                let pts: Vec<Point> = raw.iter().map(|&(x, y)| Point { re: x, im: y }).collect();
                let mapped: Vec<Point> = pts.iter().map(|&x| f.apply(x)).collect();
                let diam = |s: &[Point]| {
                    let mut d = 0.0f64;
                    for i in 0..s.len() {
                        for j in i + 1..s.len() {
                            d = d.max(s[i].dist(s[j]));
                        }
                    }
                    d
                };
                let before = diam(&pts);
                let after = diam(&mapped);
                prop_assert!((after - before / p).abs() <= 1e-12 * (1.0 + before));
            }
        }
    }

    #[test]
    fn cloud_points_inside_hull_when_origin_contained() {
        let b = base(3, 2f64.powf(1.0 / 3.0));
        for digits in [vec![0.0, 1.0], vec![3.0, 5.0]] {
            let a = alpha(&digits);
            let hull = lambda_hull(&b, &a);
            let c = cloud(&b, &a, 12, false, &TOL).unwrap();
            let inside = Polygon::new(hull.vertices().to_vec()).unwrap();
            for p in &c.points {
                assert!(
                    inside.contains(*p, &TOL).unwrap(),
                    "point {p:?} escaped for alphabet {digits:?}"
                );
            }
        }
    }
}

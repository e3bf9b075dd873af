//! Planar geometry kernel.
//!
//! Complex numbers are treated as 2-vectors. Polygons are ordered vertex
//! lists with cyclic index arithmetic; a 1-vertex polygon is a point and a
//! 2-vertex polygon is a segment (two overlapped edges). Orientation is
//! decided from the cyclic sequence of edge-normal arguments: counter
//! clockwise means some cyclic shift makes the sequence non-decreasing,
//! which is equivalent to having at most one strict descent.

use crate::{Error, Result};

/// A point (or vector) of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl Point {
    pub const ZERO: Point = Point { re: 0.0, im: 0.0 };
    pub const ONE: Point = Point { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Point> {
        if re.is_finite() && im.is_finite() {
            Ok(Point { re, im })
        } else {
            Err(Error::NonFinitePoint(re, im))
        }
    }

    /// Complex reciprocal. The caller must not pass zero.
    pub fn recip(self) -> Point {
        let d = self.norm_sq();
        Point {
            re: self.re / d,
            im: -self.im / d,
        }
    }

    pub fn scale(self, s: f64) -> Point {
        Point {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Argument normalized to [0, 2π). The argument of the zero vector is 0.
    pub fn arg(self) -> f64 {
        let a = self.im.atan2(self.re);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Complex product.
impl std::ops::Mul for Point {
    type Output = Point;
    fn mul(self, rhs: Point) -> Point {
        Point {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

/// Euclidean scalar product `u·v = |u||v|cos(arg u − arg v)`.
pub fn dot(u: Point, v: Point) -> f64 {
    u.re * v.re + u.im * v.im
}

/// Signed parallelogram area; positive when `v` lies counter-clockwise of `u`.
pub fn cross(u: Point, v: Point) -> f64 {
    u.re * v.im - u.im * v.re
}

/// The normal vector `v^⊥ = −i·v`, a rotation by −π/2.
pub fn perp(v: Point) -> Point {
    Point {
        re: v.im,
        im: -v.re,
    }
}

/// Comparison tolerances. `angle` is in radians, `coord` is relative to the
/// extent of the figure at hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub angle: f64,
    pub coord: f64,
}

impl Tolerance {
    pub fn new(angle: f64, coord: f64) -> Result<Tolerance> {
        let ok = |t: f64| t > 0.0 && t < 1e-3 && t.is_finite();
        if ok(angle) && ok(coord) {
            Ok(Tolerance { angle, coord })
        } else {
            Err(Error::BadTolerance)
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            angle: 1e-9,
            coord: 1e-9,
        }
    }
}

/// Vertex ordering of a polygon, decided from edge-normal arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Neither,
}

/// An ordered list of at least one vertex, indices cyclic modulo the count.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    verts: Vec<Point>,
}

impl Polygon {
    pub fn new(verts: Vec<Point>) -> Result<Polygon> {
        if verts.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        for v in &verts {
            if !v.is_finite() {
                return Err(Error::NonFinitePoint(v.re, v.im));
            }
        }
        Ok(Polygon { verts })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.verts
    }

    pub fn reversed(&self) -> Polygon {
        let mut verts = self.verts.clone();
        verts.reverse();
        Polygon { verts }
    }

    pub fn translated(&self, t: Point) -> Polygon {
        Polygon {
            verts: self.verts.iter().map(|&v| v + t).collect(),
        }
    }

    /// Bounding-box diagonal, used to scale relative tolerances.
    pub fn diameter(&self) -> f64 {
        bbox_diag(&self.verts)
    }

    /// Outgoing edge normals: entry `i` is `(v_{i+1} − v_i)^⊥`, cyclically.
    /// Requires at least two vertices and no coincident consecutive pair.
    pub fn edge_normals(&self, tol: &Tolerance) -> Result<Vec<Point>> {
        let h = self.verts.len();
        if h < 2 {
            return Err(Error::TooFewVertices { needed: 2, got: h });
        }
        let eps = tol.coord * self.diameter().max(1.0);
        let mut normals = Vec::with_capacity(h);
        for i in 0..h {
            let j = (i + 1) % h;
            let e = self.verts[j] - self.verts[i];
            if e.norm() <= eps {
                return Err(Error::ZeroLengthEdge(i, j));
            }
            normals.push(perp(e));
        }
        Ok(normals)
    }

    /// Distinct consecutive vertices (cyclic), coincident pairs removed.
    fn deduped(&self, tol: &Tolerance) -> Vec<Point> {
        let eps = tol.coord * self.diameter().max(1.0);
        let mut out: Vec<Point> = Vec::with_capacity(self.verts.len());
        for &v in &self.verts {
            if out.last().is_none_or(|&u| u.dist(v) > eps) {
                out.push(v);
            }
        }
        while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= eps {
            out.pop();
        }
        out
    }

    /// Counter-clockwise iff some cyclic shift makes the normal arguments
    /// non-decreasing (at most one strict descent); clockwise symmetrically.
    /// Points and segments report `Ccw` by convention.
    pub fn orientation(&self, tol: &Tolerance) -> Orientation {
        let verts = self.deduped(tol);
        if verts.len() < 3 {
            return Orientation::Ccw;
        }
        let h = verts.len();
        let args: Vec<f64> = (0..h)
            .map(|i| perp(verts[(i + 1) % h] - verts[i]).arg())
            .collect();
        let mut descents = 0usize;
        let mut ascents = 0usize;
        for i in 0..h {
            let cur = args[i];
            let next = args[(i + 1) % h];
            if next < cur - tol.angle {
                descents += 1;
            } else if next > cur + tol.angle {
                ascents += 1;
            }
        }
        if descents <= 1 {
            Orientation::Ccw
        } else if ascents <= 1 {
            Orientation::Cw
        } else {
            Orientation::Neither
        }
    }

    pub fn is_convex(&self, tol: &Tolerance) -> bool {
        self.orientation(tol) != Orientation::Neither
    }

    /// Point-in-polygon by the half-plane inequalities `(x − v_h)·n_h ≤ 0`,
    /// with additive slack `coord_tol · diameter`. Points and segments are
    /// tested by distance. Errors on non-convex input.
    pub fn contains(&self, x: Point, tol: &Tolerance) -> Result<bool> {
        if !self.is_convex(tol) {
            return Err(Error::NotConvex);
        }
        let verts = self.deduped(tol);
        let slack = tol.coord * self.diameter().max(1.0);
        match verts.len() {
            1 => Ok(x.dist(verts[0]) <= slack),
            2 => Ok(dist_point_segment(x, verts[0], verts[1]) <= slack),
            h => {
                let oriented: Vec<Point> = match self.orientation(tol) {
                    Orientation::Cw => verts.iter().rev().copied().collect(),
                    _ => verts,
                };
                for i in 0..h {
                    let n = perp(oriented[(i + 1) % h] - oriented[i]);
                    let signed = dot(x - oriented[i], n) / n.norm();
                    if signed > slack {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Vertices whose adjacent edges are not parallel within `angle_tol`,
    /// in cyclic order. Segment endpoints are kept (their edges reverse
    /// direction, they do not continue straight).
    pub fn extremal_points(&self, tol: &Tolerance) -> Vec<Point> {
        let verts = self.deduped(tol);
        let h = verts.len();
        if h < 3 {
            return verts;
        }
        let mut out = Vec::with_capacity(h);
        for i in 0..h {
            let prev = verts[(i + h - 1) % h];
            let next = verts[(i + 1) % h];
            let e_in = verts[i] - prev;
            let e_out = next - verts[i];
            let turn = cross(e_in, e_out).atan2(dot(e_in, e_out));
            if turn.abs() > tol.angle {
                out.push(verts[i]);
            }
        }
        if out.is_empty() {
            // All turns flat: the vertices are collinear, keep the extreme pair.
            return collinear_extremes(&verts);
        }
        out
    }

    /// The polygon reduced to its extremal points.
    pub fn reduced(&self, tol: &Tolerance) -> Polygon {
        Polygon {
            verts: self.extremal_points(tol),
        }
    }
}

fn bbox_diag(points: &[Point]) -> f64 {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.0 = lo.0.min(p.re);
        lo.1 = lo.1.min(p.im);
        hi.0 = hi.0.max(p.re);
        hi.1 = hi.1.max(p.im);
    }
    ((hi.0 - lo.0).powi(2) + (hi.1 - lo.1).powi(2)).sqrt()
}

fn dist_point_segment(x: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return x.dist(a);
    }
    let t = (dot(x - a, ab) / len_sq).clamp(0.0, 1.0);
    x.dist(a + ab.scale(t))
}

fn collinear_extremes(verts: &[Point]) -> Vec<Point> {
    let mut lo = verts[0];
    let mut hi = verts[0];
    for &v in verts {
        if (v.re, v.im) < (lo.re, lo.im) {
            lo = v;
        }
        if (v.re, v.im) > (hi.re, hi.im) {
            hi = v;
        }
    }
    if lo == hi {
        vec![lo]
    } else {
        vec![lo, hi]
    }
}

/// Brute-force convex hull (Andrew's monotone chain) returning a CCW polygon
/// with no degenerate vertices. Collinear input yields a 2-vertex segment, a
/// single distinct point yields a 1-vertex polygon. Near-duplicate inputs are
/// merged within `coord_tol` before processing.
pub fn convex_hull(points: &[Point], tol: &Tolerance) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::EmptyPolygon);
    }
    for p in points {
        if !p.is_finite() {
            return Err(Error::NonFinitePoint(p.re, p.im));
        }
    }
    let scale = bbox_diag(points).max(1.0);
    let eps = tol.coord * scale;

    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) <= eps);

    if pts.len() == 1 {
        return Polygon::new(pts);
    }

    // Strictly convex turns only: collinear points within tolerance are
    // dropped, so the hull has no degenerate vertices.
    let eps_turn = tol.coord * scale * scale;
    let turn_ok = |a: Point, b: Point, c: Point| cross(b - a, c - b) > eps_turn;

    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && !turn_ok(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turn_ok(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    if lower.len() == 1 && upper.len() == 1 {
        // All points collinear: chains collapse to the two extremes.
        return Polygon::new(vec![lower[0], upper[0]]);
    }
    lower.extend(upper);
    Polygon::new(lower)
}

/// Shape equality up to degenerate vertices, starting vertex and listed
/// orientation: both polygons are reduced to extremal points, normalized to
/// CCW, and compared pairwise under the best cyclic rotation within
/// `coord_tol` relative to the common diameter.
pub fn canonical_equal(p: &Polygon, q: &Polygon, tol: &Tolerance) -> bool {
    let pv = normalize_ccw(p, tol);
    let qv = normalize_ccw(q, tol);
    if pv.len() != qv.len() {
        return false;
    }
    let h = pv.len();
    let scale = bbox_diag(&pv).max(bbox_diag(&qv)).max(1.0);
    let eps = tol.coord * scale;
    if h == 1 {
        return pv[0].dist(qv[0]) <= eps;
    }
    (0..h).any(|shift| (0..h).all(|i| pv[i].dist(qv[(i + shift) % h]) <= eps))
}

fn normalize_ccw(p: &Polygon, tol: &Tolerance) -> Vec<Point> {
    let reduced = p.reduced(tol);
    match reduced.orientation(tol) {
        Orientation::Cw => reduced.reversed().into_vertices(),
        _ => reduced.into_vertices(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> Point {
        Point::new(re, im).unwrap()
    }

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        Polygon::new(coords.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn unit_square() -> Polygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    /// Non-convex L-shape.
    fn l_hexagon() -> Polygon {
        poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 2.0),
            (0.0, 2.0),
        ])
    }

    const TOL: Tolerance = Tolerance {
        angle: 1e-9,
        coord: 1e-9,
    };

    #[test]
    fn dot_product_examples() {
        assert_eq!(dot(pt(1.0, 0.0), pt(0.0, 1.0)), 0.0);
        assert_eq!(dot(pt(1.0, 0.0), pt(1.0, 0.0)), 1.0);
        let third = pt(
            (2.0 * std::f64::consts::FRAC_PI_3).cos(),
            (2.0 * std::f64::consts::FRAC_PI_3).sin(),
        );
        assert!((dot(pt(1.0, 0.0), third) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp(pt(1.0, 0.0)), pt(0.0, -1.0));
        assert_eq!(perp(pt(0.0, 1.0)), pt(1.0, 0.0));
        assert_eq!(perp(pt(1.0, 1.0)), pt(1.0, -1.0));
    }

    #[test]
    fn perp_shifts_argument_by_three_half_pi() {
        let t = pt(0.3, 0.8);
        let tau = std::f64::consts::TAU;
        let expect = (t.arg() + 0.75 * tau) % tau;
        assert!((perp(t).arg() - expect).abs() < 1e-12);
        let expect_neg = (t.arg() + 0.25 * tau) % tau;
        assert!((perp(-t).arg() - expect_neg).abs() < 1e-12);
    }

    #[test]
    fn edge_normals_square() {
        let n = unit_square().edge_normals(&TOL).unwrap();
        assert_eq!(
            n,
            vec![pt(0.0, -1.0), pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0)]
        );
    }

    #[test]
    fn edge_normals_segment() {
        let n = poly(&[(0.0, 0.0), (1.0, 0.0)]).edge_normals(&TOL).unwrap();
        assert_eq!(n, vec![pt(0.0, -1.0), pt(0.0, 1.0)]);
    }

    #[test]
    fn edge_normals_triangle() {
        let n = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
            .edge_normals(&TOL)
            .unwrap();
        assert_eq!(n, vec![pt(0.0, -1.0), pt(1.0, 1.0), pt(-1.0, 0.0)]);
    }

    #[test]
    fn edge_normals_rejects_coincident_vertices() {
        let p = poly(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(
            p.edge_normals(&TOL),
            Err(Error::ZeroLengthEdge(0, 1))
        ));
    }

    #[test]
    fn orientation_square_both_ways() {
        assert_eq!(unit_square().orientation(&TOL), Orientation::Ccw);
        assert_eq!(unit_square().reversed().orientation(&TOL), Orientation::Cw);
    }

    #[test]
    fn orientation_l_shape_is_neither() {
        assert_eq!(l_hexagon().orientation(&TOL), Orientation::Neither);
        assert!(!l_hexagon().is_convex(&TOL));
    }

    #[test]
    fn degenerate_vertex_keeps_convexity() {
        let p = poly(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(p.is_convex(&TOL));
        assert_eq!(p.orientation(&TOL), Orientation::Ccw);
    }

    #[test]
    fn contains_square_cases() {
        let sq = unit_square();
        assert!(sq.contains(pt(0.5, 0.5), &TOL).unwrap());
        assert!(sq.contains(pt(1.0, 1.0), &TOL).unwrap());
        assert!(!sq.contains(pt(1.5, 0.5), &TOL).unwrap());
    }

    #[test]
    fn contains_rejects_non_convex() {
        assert!(matches!(
            l_hexagon().contains(pt(0.5, 0.5), &TOL),
            Err(Error::NotConvex)
        ));
    }

    #[test]
    fn contains_segment_respects_extent() {
        let seg = poly(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(seg.contains(pt(0.5, 0.0), &TOL).unwrap());
        assert!(seg.contains(pt(1.0, 0.0), &TOL).unwrap());
        assert!(!seg.contains(pt(2.0, 0.0), &TOL).unwrap());
        assert!(!seg.contains(pt(0.5, 0.1), &TOL).unwrap());
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(
            &[
                pt(0.0, 0.0),
                pt(1.0, 0.0),
                pt(1.0, 1.0),
                pt(0.0, 1.0),
                pt(0.5, 0.5),
            ],
            &TOL,
        )
        .unwrap();
        assert!(canonical_equal(&h, &unit_square(), &TOL));
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn hull_collinear_gives_segment() {
        let h = convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)], &TOL).unwrap();
        assert_eq!(h.vertices(), &[pt(0.0, 0.0), pt(2.0, 0.0)]);
    }

    #[test]
    fn hull_single_point() {
        let h = convex_hull(&[pt(0.25, -1.0), pt(0.25, -1.0)], &TOL).unwrap();
        assert_eq!(h.vertices(), &[pt(0.25, -1.0)]);
    }

    #[test]
    fn extremal_points_drop_midpoint() {
        let p = poly(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(
            p.extremal_points(&TOL),
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]
        );
    }

    #[test]
    fn extremal_points_keep_clean_hexagon() {
        let hexa = poly(&[
            (1.0, 0.0),
            (0.5, 0.9),
            (-0.5, 0.9),
            (-1.0, 0.0),
            (-0.5, -0.9),
            (0.5, -0.9),
        ]);
        assert_eq!(hexa.extremal_points(&TOL).len(), 6);
    }

    #[test]
    fn canonical_equal_examples() {
        let a = unit_square();
        let b = poly(&[(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]);
        assert!(canonical_equal(&a, &b, &TOL));
        let with_mid = poly(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(canonical_equal(&a, &with_mid, &TOL));
        let perturbed = poly(&[(0.0, 0.0), (1.001, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(!canonical_equal(&a, &perturbed, &TOL));
    }

    #[test]
    fn canonical_equal_ignores_listed_orientation() {
        assert!(canonical_equal(
            &unit_square(),
            &unit_square().reversed(),
            &TOL
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn point_strategy() -> impl Strategy<Value = Point> {
            (-100.0f64..100.0, -100.0f64..100.0).prop_map(|(x, y)| pt(x, y))
        }

        proptest! {
            #[test]
            fn perp_twice_negates(p in point_strategy()) {
                let pp = perp(perp(p));
                prop_assert!((pp.re + p.re).abs() < 1e-12 && (pp.im + p.im).abs() < 1e-12);
            }

            #[test]
            fn perp_is_orthogonal(p in point_strategy()) {
                prop_assert_eq!(dot(p, perp(p)), 0.0);
            }

            #[test]
            fn hull_contains_inputs_and_uses_only_inputs(
                pts in prop::collection::vec(point_strategy(), 1..64)
            ) {
                let h = convex_hull(&pts, &TOL).unwrap();
                for &p in &pts {
                    prop_assert!(h.contains(p, &TOL).unwrap());
                }
                let eps = 1e-9 * 300.0;
                for v in h.vertices() {
                    prop_assert!(pts.iter().any(|p| p.dist(*v) <= eps));
                }
            }

            #[test]
            fn hull_is_idempotent(pts in prop::collection::vec(point_strategy(), 1..64)) {
                let h = convex_hull(&pts, &TOL).unwrap();
                let hh = convex_hull(h.vertices(), &TOL).unwrap();
                prop_assert!(canonical_equal(&h, &hh, &TOL));
            }

            #[test]
            fn hull_vertices_are_inside_hull(pts in prop::collection::vec(point_strategy(), 3..32)) {
                let h = convex_hull(&pts, &TOL).unwrap();
                for &v in h.vertices() {
                    prop_assert!(h.contains(v, &TOL).unwrap());
                }
            }

            #[test]
            fn reverse_flips_orientation(pts in prop::collection::vec(point_strategy(), 3..32)) {
                let h = convex_hull(&pts, &TOL).unwrap();
                if h.len() >= 3 {
                    prop_assert_eq!(h.orientation(&TOL), Orientation::Ccw);
                    prop_assert_eq!(h.reversed().orientation(&TOL), Orientation::Cw);
                }
            }
        }
    }
}

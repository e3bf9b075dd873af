//! Seeded verification suites shared by the CLI `verify` command and the
//! acceptance tests. Each suite checks one family of structural claims on a
//! deterministic grid and reports the first few counterexamples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{canonical_equal, convex_hull, dot, Point, Tolerance};
use crate::hull::{
    base_polygon, binary_power_sums, closed_form_cycle, predict_counts, translate_hull, Base,
};
use crate::ifs::{
    bbox_diag, cloud, hausdorff_to_hull, hutchinson_step, point_sets_equal, tail_radius,
};
use crate::numsys::{convexity_report, criterion_matches_geometry, farkas_decompose, Alphabet};

/// Result of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> SuiteOutcome {
        SuiteOutcome {
            name,
            passed: true,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }

    pub fn summary(&self) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        let mut s = format!("{}: {} ({} cases)", self.name, status, self.cases);
        for f in &self.failures {
            s.push_str("\n    counterexample: ");
            s.push_str(f);
        }
        s
    }
}

/// The (n, p) grid used by the structural suites.
pub fn standard_grid(n_max: u32) -> Vec<(u32, f64)> {
    let mut grid = Vec::new();
    for n in 1..=n_max {
        for p in [2f64.powf(1.0 / n as f64), 1.2, 1.5, 2.0] {
            grid.push((n, p));
        }
    }
    grid
}

/// The three hull routes agree: translation recursion, brute force over the
/// enumerated sums, and the closed-form vertex families.
pub fn oracle_equivalence_suite(tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("oracle-equivalence");
    for (n, p) in standard_grid(12) {
        let base = Base::new(n, p).unwrap();
        out.cases += 1;
        let recursion = base_polygon(&base);
        let brute = convex_hull(&binary_power_sums(&base).unwrap(), tol).unwrap();
        let closed = convex_hull(&closed_form_cycle(&base), tol).unwrap();
        if !canonical_equal(&recursion, &brute, tol) {
            out.fail(format!("n={n} p={p}: recursion differs from brute force"));
        }
        if !canonical_equal(&closed, &brute, tol) {
            out.fail(format!("n={n} p={p}: closed form differs from brute force"));
        }
        if !canonical_equal(&recursion, &closed, tol) {
            out.fail(format!("n={n} p={p}: recursion differs from closed form"));
        }
    }
    out
}

/// Extremal counts follow the parity rule (2n for odd n ≥ 3, n for even,
/// 2 for n = 1) and every edge is parallel to some power q^k.
pub fn extremal_count_suite(tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("extremal-counts");
    let tau = std::f64::consts::TAU;
    for (n, p) in standard_grid(12) {
        let base = Base::new(n, p).unwrap();
        out.cases += 1;
        let poly = base_polygon(&base);
        let e = poly.extremal_points(tol).len();
        let expect = match n {
            1 => 2,
            n if n % 2 == 1 => 2 * n as usize,
            n => n as usize,
        };
        if e != expect {
            out.fail(format!(
                "n={n} p={p}: {e} extremal points, expected {expect}"
            ));
        }
        let verts = poly.vertices();
        let h = verts.len();
        for i in 0..h {
            let d = verts[(i + 1) % h] - verts[i];
            if d.norm() < tol.coord {
                continue;
            }
            let dir = d.arg() % (0.5 * tau);
            let aligned = (0..n).any(|k| {
                let target = (tau * k as f64 / n as f64) % (0.5 * tau);
                let diff = (dir - target).abs();
                diff <= tol.angle || (0.5 * tau - diff) <= tol.angle
            });
            if !aligned {
                out.fail(format!("n={n} p={p}: edge {i} not parallel to any power"));
            }
        }
    }
    out
}

/// Random convex polygons translated by random offsets: the explicit vertex
/// split agrees with the brute-force hull of the union, and the edge and
/// extremal counts match the predictions.
pub fn translation_suite(seed: u64, cases: usize, tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("translation-hull");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.cases < cases {
        let k = rng.gen_range(3..=12);
        let pts: Vec<Point> = (0..k)
            .map(|_| Point {
                re: rng.gen_range(-1.0..1.0),
                im: rng.gen_range(-1.0..1.0),
            })
            .collect();
        let p = convex_hull(&pts, tol).unwrap();
        if p.len() < 2 {
            continue;
        }
        let t = Point {
            re: rng.gen_range(-2.0..2.0),
            im: rng.gen_range(-2.0..2.0),
        };
        if t.norm() < 1e-3 {
            continue;
        }
        out.cases += 1;
        let built = match translate_hull(&p, t, tol) {
            Ok(poly) => poly,
            Err(e) => {
                out.fail(format!("case {}: translate failed: {e}", out.cases));
                continue;
            }
        };
        let mut union: Vec<Point> = p.vertices().to_vec();
        union.extend(p.vertices().iter().map(|&v| v + t));
        let oracle = convex_hull(&union, tol).unwrap();
        if !canonical_equal(&built, &oracle, tol) {
            out.fail(format!(
                "case {}: split construction differs from union hull (H={}, t=({}, {}))",
                out.cases,
                p.len(),
                t.re,
                t.im
            ));
            continue;
        }
        let (edges, extremals) = predict_counts(&p, t, tol).unwrap();
        if built.len() != edges {
            out.fail(format!(
                "case {}: listed {} vertices, predicted {edges}",
                out.cases,
                built.len()
            ));
        }
        let observed = built.extremal_points(tol).len();
        if observed != extremals {
            out.fail(format!(
                "case {}: {observed} extremal points, predicted {extremals}",
                out.cases
            ));
        }
    }
    out
}

/// Index-set and support inequalities for the closed-form vertices: powers
/// selected by a family have non-negative projection on its normal (and
/// non-positive otherwise), and every enumerated sum satisfies the two
/// half-plane inequalities per family. Comparisons are normalized, slack
/// `coord_tol`.
pub fn support_suite(tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("support-inequalities");
    for n in 2..=12u32 {
        for p in [2f64.powf(1.0 / n as f64), 1.2, 1.5, 2.0] {
            let base = Base::new(n, p).unwrap();
            out.cases += 1;
            let families = crate::hull::closed_form_vertices(&base);
            let points = binary_power_sums(&base).unwrap();
            for f in &families {
                for k in 0..n {
                    let qk = base.q_pow(k);
                    for (normal, indices) in [
                        (f.odd_normal, &f.low_indices),
                        (f.even_normal, &f.high_indices),
                    ] {
                        let denom = qk.norm() * normal.norm();
                        let value = if denom == 0.0 {
                            0.0
                        } else {
                            dot(qk, normal) / denom
                        };
                        let selected = indices.contains(&k);
                        if selected && value < -tol.coord {
                            out.fail(format!(
                                "n={n} p={p} h={} k={k}: selected power has negative projection {value}",
                                f.h
                            ));
                        }
                        if !selected && value > tol.coord {
                            out.fail(format!(
                                "n={n} p={p} h={} k={k}: unselected power has positive projection {value}",
                                f.h
                            ));
                        }
                    }
                }
                for (vertex, normal) in
                    [(f.low_vertex, f.odd_normal), (f.high_vertex, f.even_normal)]
                {
                    for &x in &points {
                        let diff = x - vertex;
                        let denom = diff.norm() * normal.norm();
                        let value = if denom == 0.0 {
                            0.0
                        } else {
                            dot(diff, normal) / denom
                        };
                        if value > tol.coord {
                            out.fail(format!(
                                "n={n} p={p} h={}: support inequality violated by {value}",
                                f.h
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Draws a random alphabet of 2..=max_len digits with comfortably separated
/// values.
pub fn random_alphabet(rng: &mut ChaCha8Rng, max_len: usize) -> Alphabet {
    loop {
        let m = rng.gen_range(2..=max_len);
        let mut digits: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        digits.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if digits.windows(2).all(|w| w[1] - w[0] > 1e-3) {
            return Alphabet::new(digits).unwrap();
        }
    }
}

/// The deterministic (base, alphabet) grid used for criterion/geometry
/// agreement checks: n ∈ 2..=8, p ∈ (1, 2.5], alphabets of 2..=5 digits.
pub fn agreement_grid(seed: u64, cases: usize) -> Vec<(Base, Alphabet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let n = rng.gen_range(2..=8u32);
            let p = rng.gen_range(1.02..=2.5f64);
            let alphabet = random_alphabet(&mut rng, 5);
            (Base::new(n, p).unwrap(), alphabet)
        })
        .collect()
}

/// Agreement between the arithmetic gap criterion and the geometric slice
/// test over a seeded grid of (n, p, alphabet) triples. The report lists
/// disagreements split by the parity of n.
pub fn criterion_agreement_suite(seed: u64, cases: usize, tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("criterion-agreement");
    let mut odd_disagreements = 0usize;
    let mut even_disagreements = 0usize;
    for (base, alphabet) in agreement_grid(seed, cases) {
        let (n, p) = (base.n(), base.p());
        out.cases += 1;
        match criterion_matches_geometry(&base, &alphabet, tol) {
            Ok(true) => {}
            Ok(false) => {
                if n % 2 == 0 {
                    even_disagreements += 1;
                } else {
                    odd_disagreements += 1;
                }
                let rep = convexity_report(&base, &alphabet);
                out.fail(format!(
                    "n={n} p={p:.4} A={:?}: criterion says convex={}, slice geometry says {}",
                    alphabet.digits(),
                    rep.is_convex,
                    !rep.is_convex
                ));
            }
            Err(e) => out.fail(format!("n={n} p={p:.4}: {e}")),
        }
    }
    if even_disagreements + odd_disagreements > 0 {
        out.failures.push(format!(
            "disagreements by parity of n: odd={odd_disagreements}, even={even_disagreements} of {} cases",
            out.cases
        ));
    }
    out
}

/// Random convex-decomposition instances: weights non-negative, summing to
/// one, reconstructing the folded value to 1e-12 relative.
pub fn farkas_suite(seed: u64, cases: usize, tol: &Tolerance) -> SuiteOutcome {
    let _ = tol;
    let mut out = SuiteOutcome::new("farkas-decomposition");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(1..=8u32);
        let p = rng.gen_range(1.05..=2.5f64);
        let base = Base::new(n, p).unwrap();
        let lo = rng.gen_range(-2.0..0.0);
        let hi = lo + rng.gen_range(0.1..3.0);
        let lambdas: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        out.cases += 1;
        let d = match farkas_decompose(&lambdas, (lo, hi), &base) {
            Ok(d) => d,
            Err(e) => {
                out.fail(format!("case {case}: {e}"));
                continue;
            }
        };
        if d.entries().iter().any(|&(_, w)| w < 0.0) {
            out.fail(format!("case {case}: negative weight"));
        }
        if (d.weight_sum() - 1.0).abs() > 1e-12 {
            out.fail(format!("case {case}: weights sum to {}", d.weight_sum()));
        }
        let target = lambdas
            .iter()
            .enumerate()
            .fold(Point::ZERO, |acc, (k, &l)| {
                acc + base.q_pow(k as u32).scale(l)
            });
        let residual = d.reconstruct(&base).dist(target);
        if residual > 1e-12 * (1.0 + target.norm()) {
            out.fail(format!("case {case}: reconstruction residual {residual}"));
        }
    }
    out
}

/// Fixed-point behaviour of the cloud generator: one Hutchinson step turns
/// the depth-d cloud into the depth-(d+1) cloud, clouds stay inside the
/// hull whenever the origin does, and for convex cases the distance from the
/// hull vertices decays with the truncation tail.
pub fn fixed_point_suite(tol: &Tolerance) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("ifs-fixed-point");
    let bases = [
        (1u32, 2.0f64),
        (2, 1.4),
        (3, 2f64.powf(1.0 / 3.0)),
        (3, 1.7),
        (4, 1.5),
        (5, 1.2),
        (6, 2f64.powf(1.0 / 6.0)),
    ];
    let alphabets: [&[f64]; 3] = [&[0.0, 1.0], &[0.0, 0.7, 1.9], &[0.0, 2.0]];
    for &(n, p) in &bases {
        let base = Base::new(n, p).unwrap();
        for digits in alphabets {
            let alphabet = Alphabet::new(digits.to_vec()).unwrap();
            out.cases += 1;
            let hull = crate::hull::lambda_hull(&base, &alphabet);
            let mut prev = cloud(&base, &alphabet, 0, true, tol).unwrap().points;
            for d in 0..=8u32 {
                let next = cloud(&base, &alphabet, d + 1, true, tol).unwrap().points;
                let stepped = hutchinson_step(&base, &alphabet, &prev, tol);
                let scale = bbox_diag(&next).max(1.0);
                if !point_sets_equal(&stepped, &next, 1e-12 * scale) {
                    out.fail(format!(
                        "n={n} p={p} A={digits:?}: step from depth {d} misses the depth {} cloud",
                        d + 1
                    ));
                }
                for pt in &next {
                    if !hull.contains(*pt, tol).unwrap() {
                        out.fail(format!(
                            "n={n} p={p} A={digits:?}: depth {} point escapes the hull",
                            d + 1
                        ));
                        break;
                    }
                }
                prev = next;
            }
        }
    }
    // Tail-rate coverage for two-digit cases where the criterion holds
    // (p^n ≤ 2 when the gap is 1): the boundary base and one inside it.
    for n in 1..=6u32 {
        let boundary = 2f64.powf(1.0 / n as f64);
        for p in [boundary, 1.0 + 0.5 * (boundary - 1.0)] {
            let base = Base::new(n, p).unwrap();
            let alphabet = Alphabet::new(vec![0.0, 1.0]).unwrap();
            if !convexity_report(&base, &alphabet).is_convex {
                out.fail(format!("n={n} p={p}: expected the criterion to hold"));
                continue;
            }
            out.cases += 1;
            for d in [6u32, 10, 14] {
                let c = cloud(&base, &alphabet, d, true, tol).unwrap();
                let h = hausdorff_to_hull(&c, tol);
                let bound = tail_radius(&base, &alphabet, d);
                if h > bound * (1.0 + 1e-9) + 1e-12 {
                    out.fail(format!(
                        "n={n} p={p}: hull distance {h} exceeds tail bound {bound} at depth {d}"
                    ));
                }
            }
        }
    }
    out
}

/// Runs every suite with its standard sizes.
pub fn run_all(seed: u64, tol: &Tolerance) -> Vec<SuiteOutcome> {
    vec![
        oracle_equivalence_suite(tol),
        extremal_count_suite(tol),
        translation_suite(seed, 1000, tol),
        support_suite(tol),
        criterion_agreement_suite(seed, 200, tol),
        farkas_suite(seed, 500, tol),
        fixed_point_suite(tol),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance {
        angle: 1e-9,
        coord: 1e-9,
    };

    #[test]
    fn structural_suites_pass() {
        for suite in [
            oracle_equivalence_suite(&TOL),
            extremal_count_suite(&TOL),
            support_suite(&TOL),
        ] {
            assert!(suite.passed, "{}", suite.summary());
        }
    }

    #[test]
    fn randomized_suites_pass() {
        let t = translation_suite(0xC0FFEE, 300, &TOL);
        assert!(t.passed, "{}", t.summary());
        let f = farkas_suite(0xC0FFEE, 200, &TOL);
        assert!(f.passed, "{}", f.summary());
    }

    #[test]
    fn agreement_suite_on_odd_orders_passes() {
        // Restricted to odd rotation orders the two verdicts always match;
        // the general suite is exercised by the acceptance tests, where the
        // even-order behaviour is reported.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 120 {
            let n = 2 * rng.gen_range(1..=4u32) + 1;
            let p = rng.gen_range(1.02..=2.5f64);
            let alphabet = random_alphabet(&mut rng, 5);
            let base = Base::new(n, p).unwrap();
            assert!(
                criterion_matches_geometry(&base, &alphabet, &TOL).unwrap(),
                "odd-order disagreement at n={n} p={p} A={:?}",
                alphabet.digits()
            );
            checked += 1;
        }
    }
}

//! Chain construction generalized to convex n-gons.
//!
//! The one-edge recursion is the same as for triangles (it only involves one
//! edge and its two half-angles), but for `n > 3` there is no coupling
//! identity tying the recursion to a semiperimeter, no angle-coordinate
//! reduction, and generically no eventual periodicity: parallelogram chains
//! settle into 4-cycles while pentagon chains wander chaotically.

use crate::chain::{
    advance_u, detect_periodicity_mod, place_circle, AngleCircle, ChainRecord, ChainStep, Choice,
    CycleTracker, Policy, SignCase, Termination, CYCLE_TOL,
};
use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    edge_lengths: Vec<f64>,
    half_angles: Vec<f64>,
    tan_half_angles: Vec<f64>,
    edge_couplings: Vec<f64>,
}

impl ConvexPolygon {
    /// Builds a polygon from counterclockwise vertices; rejects anything that
    /// is not strictly convex. Edge `i` joins vertex `i` to vertex `i+1`.
    pub fn new(vertices: Vec<Point>) -> Result<ConvexPolygon> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let edge = |i: usize| vertices[(i + 1) % n] - vertices[i];
        let mut negatives = 0;
        for i in 0..n {
            let cross = edge((i + n - 1) % n).cross(edge(i));
            if cross == 0.0 {
                return Err(Error::NotConvex(i));
            }
            if cross < 0.0 {
                negatives += 1;
            }
        }
        if negatives == n {
            return Err(Error::NotCounterClockwise);
        }
        if negatives > 0 {
            let i = (0..n)
                .find(|&i| edge((i + n - 1) % n).cross(edge(i)) < 0.0)
                .unwrap();
            return Err(Error::NotConvex(i));
        }

        let edge_lengths: Vec<f64> = (0..n).map(|i| edge(i).norm()).collect();
        let mut half_angles = Vec::with_capacity(n);
        let mut tan_half_angles = Vec::with_capacity(n);
        for i in 0..n {
            let to_next = edge(i);
            let to_prev = vertices[(i + n - 1) % n] - vertices[i];
            let dot = to_next.dot(to_prev);
            let cross = to_next.cross(to_prev).abs();
            // tan(theta/2) = sin(theta) / (1 + cos(theta))
            let scale = to_next.norm() * to_prev.norm();
            let tan_half = cross / (scale + dot);
            tan_half_angles.push(tan_half);
            half_angles.push(tan_half.atan());
        }
        let edge_couplings = (0..n)
            .map(|i| (tan_half_angles[i] * tan_half_angles[(i + 1) % n]).sqrt())
            .collect();

        Ok(ConvexPolygon {
            vertices,
            edge_lengths,
            half_angles,
            tan_half_angles,
            edge_couplings,
        })
    }

    /// Parallelogram with side lengths `a`, `b` and the angle at the origin
    /// vertex, counterclockwise from the positive x-axis.
    pub fn parallelogram(a: f64, b: f64, angle: f64) -> Result<ConvexPolygon> {
        let d = Point::new(b * angle.cos(), b * angle.sin());
        ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(a, 0.0),
            Point::new(a, 0.0) + d,
            d,
        ])
    }

    /// Regular n-gon with the given side length, centered at the origin.
    pub fn regular(n: usize, side: f64) -> Result<ConvexPolygon> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let r = side / (2.0 * (std::f64::consts::PI / n as f64).sin());
        let vertices = (0..n)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(r * theta.cos(), r * theta.sin())
            })
            .collect();
        ConvexPolygon::new(vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    /// Length of the edge from vertex `i` to vertex `i+1`.
    pub fn edge_length(&self, i: usize) -> f64 {
        self.edge_lengths[i]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn half_angle(&self, i: usize) -> f64 {
        self.half_angles[i]
    }

    pub fn tan_half_angle(&self, i: usize) -> f64 {
        self.tan_half_angles[i]
    }

    /// Coupling of edge `i`: `sqrt(tan(alpha_i) * tan(alpha_{i+1}))`.
    pub fn edge_coupling(&self, i: usize) -> f64 {
        self.edge_couplings[i]
    }

    pub fn bisector_direction(&self, i: usize) -> Point {
        let n = self.len();
        let to_next = (self.vertices[(i + 1) % n] - self.vertices[i]).normalized();
        let to_prev = (self.vertices[(i + n - 1) % n] - self.vertices[i]).normalized();
        (to_next + to_prev).normalized()
    }

    /// Circle with tangent length `u^2` inscribed in the angle at vertex `i`.
    pub fn circle_from_u(&self, i: usize, u: f64) -> AngleCircle {
        let n = self.len();
        place_circle(
            i,
            u,
            self.tan_half_angles[i],
            self.half_angles[i].sin(),
            self.vertices[i],
            self.bisector_direction(i),
            self.edge_lengths[i],
            self.edge_lengths[(i + n - 1) % n],
        )
    }

    pub fn circle_from_radius(&self, i: usize, r: f64) -> AngleCircle {
        self.circle_from_u(i, (r / self.tan_half_angles[i]).sqrt())
    }
}

/// One step of the chain along edge `vertex -> vertex + 1`, same root
/// formulas as the triangle recursion.
pub fn polygon_step(
    poly: &ConvexPolygon,
    vertex: usize,
    u: f64,
    choice: Choice,
) -> Result<(f64, SignCase)> {
    advance_u(
        poly.edge_length(vertex),
        poly.edge_coupling(vertex),
        u,
        choice,
    )
}

/// Runs a chain around the polygon. Parallelograms settle into 4-cycles under
/// the smaller choice; generic pentagons typically exhaust `max_steps` with
/// no cycle detected.
pub fn polygon_chain(
    poly: &ConvexPolygon,
    initial: AngleCircle,
    policy: &Policy,
    max_steps: usize,
) -> ChainRecord<ConvexPolygon> {
    let n = poly.len();
    let mut detector = CycleTracker::new(n, CYCLE_TOL, policy.is_deterministic());
    detector.push(initial.vertex, initial.u);
    let degenerate_start = initial.degenerate;
    let mut steps = vec![ChainStep {
        index: 1,
        circle: initial,
        choice: None,
        sign_case: None,
    }];
    let mut chooser = policy.chooser();
    let mut pre_period = None;
    let mut period = None;

    let termination = if degenerate_start {
        Termination::DegenerateCircle
    } else {
        loop {
            if steps.len() >= max_steps {
                break Termination::MaxSteps;
            }
            let Some(choice) = chooser.next() else {
                break Termination::MaxSteps;
            };
            let current = &steps.last().unwrap().circle;
            match polygon_step(poly, current.vertex, current.u, choice) {
                Ok((u_next, sign)) => {
                    let next_vertex = (current.vertex + 1) % n;
                    let circle = poly.circle_from_u(next_vertex, u_next);
                    let hit = detector.push(circle.vertex, circle.u);
                    let degenerate = circle.degenerate;
                    steps.push(ChainStep {
                        index: steps.len() + 1,
                        circle,
                        choice: Some(choice),
                        sign_case: Some(sign),
                    });
                    if degenerate {
                        break Termination::DegenerateCircle;
                    }
                    if let Some((m, q)) = hit {
                        pre_period = Some(m);
                        period = Some(q);
                        break Termination::CycleDetected;
                    }
                }
                Err(_) => break Termination::NotConstructible,
            }
        }
    };

    ChainRecord {
        shape: poly.clone(),
        steps,
        termination,
        pre_period,
        period,
    }
}

/// Offline recurrence scan for polygon chains (period a multiple of the
/// vertex count).
pub fn detect_polygon_periodicity(
    poly: &ConvexPolygon,
    steps: &[ChainStep],
    tol: f64,
) -> Option<(usize, usize)> {
    detect_periodicity_mod(steps, poly.len(), tol)
}

/// Two-orbit estimate of the per-step exponential separation rate under the
/// smaller choice: advance `u0` and `u0 + delta0` together, renormalizing the
/// separation to `delta0` after every step, and average the log growth.
pub fn divergence_rate(poly: &ConvexPolygon, u0: f64, delta0: f64, steps: usize) -> Result<f64> {
    assert!(delta0 > 0.0, "separation must be positive");
    let n = poly.len();
    let mut u = u0;
    let mut v = u0 + delta0;
    let mut vertex = 0;
    let mut sum = 0.0;
    for k in 0..steps {
        let advance = |x: f64| polygon_step(poly, vertex, x, Choice::Smaller).map(|(y, _)| y);
        match (advance(u), advance(v)) {
            (Ok(a), Ok(b)) => {
                u = a;
                v = b;
            }
            (Err(e), _) | (_, Err(e)) => {
                return Err(Error::OrbitTerminated {
                    completed: k,
                    requested: steps,
                    reason: e.to_string(),
                });
            }
        }
        vertex = (vertex + 1) % n;
        let d = (v - u).abs().max(1e-300);
        sum += (d / delta0).ln();
        v = u + if v >= u { delta0 } else { -delta0 };
    }
    Ok(sum / steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{next_u, tangent_segment_length};
    use crate::triangle::Triangle;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_vertex_lists() {
        assert!(matches!(
            ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]),
            Err(Error::TooFewVertices(2))
        ));
        // clockwise square
        assert!(matches!(
            ConvexPolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 0.0),
            ]),
            Err(Error::NotCounterClockwise)
        ));
        // dent
        assert!(matches!(
            ConvexPolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(1.0, 0.1),
                Point::new(1.0, 2.0),
            ]),
            Err(Error::NotConvex(_))
        ));
    }

    #[test]
    fn unit_square_symmetric_fixed_point() {
        let sq = ConvexPolygon::regular(4, 1.0).unwrap();
        assert!((sq.edge_coupling(0) - 1.0).abs() < 1e-12);
        // u^2 (2 + 2e) = s solves the symmetric 1-cycle
        let u = (1.0 / (2.0 * (1.0 + sq.edge_coupling(0)))).sqrt();
        let (u_next, sign) = polygon_step(&sq, 0, u, Choice::Smaller).unwrap();
        assert_eq!(sign, SignCase::PlusOnSide);
        assert!((u_next - u).abs() < 1e-12);
    }

    #[test]
    fn regular_pentagon_point_circle_maps_to_full_edge() {
        let pent = ConvexPolygon::regular(5, 1.0).unwrap();
        let (u_next, _) = polygon_step(&pent, 0, 0.0, Choice::Smaller).unwrap();
        assert!((u_next - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pentagon_orbit_runs_without_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x706f);
        let pent = random_pentagon(&mut rng);
        let mut u = 0.05;
        let mut vertex = 0;
        for _ in 0..1000 {
            let (next, _) = polygon_step(&pent, vertex, u, Choice::Smaller).unwrap();
            u = next;
            vertex = (vertex + 1) % 5;
        }
    }

    #[test]
    fn triangle_special_case_matches_chain_recursion() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let poly = ConvexPolygon::new(tri.vertices().to_vec()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x7472);
        for _ in 0..200 {
            let from = rng.random_range(0..3);
            let u = rng.random_range(0.0..(0.98 * tri.semiperimeter()).sqrt());
            for choice in [Choice::Smaller, Choice::Larger] {
                let (a, sa) = next_u(&tri, from, u, choice).unwrap();
                let (b, sb) = polygon_step(&poly, from, u, choice).unwrap();
                assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
                assert_eq!(sa, sb);
            }
        }
        // identity 1 - e^2 = opposite/p holds for the n = 3 case
        for i in 0..3 {
            let e = poly.edge_coupling(i);
            let opposite = tri.sides()[tri.side_to_next(i)];
            assert!((1.0 - e * e - opposite / tri.semiperimeter()).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_steps_stay_tangent_in_the_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7063);
        let pent = random_pentagon(&mut rng);
        let record = polygon_chain(
            &pent,
            pent.circle_from_u(0, 0.4),
            &Policy::AlwaysSmaller,
            200,
        );
        assert!(record.steps.len() >= 20);
        for pair in record.steps.windows(2) {
            let (a, b) = (&pair[0].circle, &pair[1].circle);
            let d = a.center.dist(b.center);
            assert!((d - (a.radius + b.radius)).abs() <= 1e-9 * (a.radius + b.radius + 1.0));
            // the tangency equation with the recorded sign
            let s = pent.edge_length(a.vertex);
            let residual = match pair[1].sign_case.unwrap() {
                SignCase::PlusOnSide => {
                    a.tangent_length + tangent_segment_length(a.radius, b.radius) + b.tangent_length
                        - s
                }
                SignCase::MinusOnExtension => {
                    a.tangent_length - tangent_segment_length(a.radius, b.radius) + b.tangent_length
                        - s
                }
            };
            assert!(residual.abs() <= 1e-9, "residual = {residual}");
        }
    }

    #[test]
    fn parallelogram_chains_reach_period_four() {
        let para = ConvexPolygon::parallelogram(2.0, 1.0, std::f64::consts::FRAC_PI_3).unwrap();
        let record = polygon_chain(
            &para,
            para.circle_from_u(0, 0.05),
            &Policy::AlwaysSmaller,
            10_000,
        );
        assert_eq!(record.termination, Termination::CycleDetected);
        assert_eq!(record.period, Some(4));
    }

    #[test]
    fn rectangle_symmetric_start_is_immediately_periodic() {
        let rect = ConvexPolygon::parallelogram(2.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        // fixed point of x -> ||x - sqrt(L)| - sqrt(W)|
        let u0 = (2.0f64.sqrt() - 1.0) / 2.0;
        let record = polygon_chain(
            &rect,
            rect.circle_from_u(0, u0),
            &Policy::AlwaysSmaller,
            100,
        );
        assert_eq!(record.pre_period, Some(0));
        assert_eq!(record.period, Some(4));
    }

    #[test]
    fn divergence_rate_is_nonpositive_for_triangles() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let poly = ConvexPolygon::new(tri.vertices().to_vec()).unwrap();
        let rate = divergence_rate(&poly, 0.4, 1e-9, 3000).unwrap();
        assert!(rate <= 1e-6, "rate = {rate}");
    }

    #[test]
    fn divergence_rate_is_flat_for_parallelograms() {
        let para = ConvexPolygon::parallelogram(2.0, 1.0, 1.0).unwrap();
        let rate = divergence_rate(&para, 0.3, 1e-9, 3000).unwrap();
        assert!(rate.abs() <= 1e-3, "rate = {rate}");
    }

    /// Pentagons inscribed in a 2:1 ellipse with radial and angular jitter;
    /// couplings well away from zero keep the chains long-lived.
    pub(super) fn random_pentagon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
        loop {
            let vertices: Vec<Point> = (0..5)
                .map(|k| {
                    let theta =
                        std::f64::consts::TAU * k as f64 / 5.0 + rng.random_range(-0.25..0.25);
                    let r = 1.0 + rng.random_range(-0.3..0.3);
                    Point::new(2.0 * r * theta.cos(), r * theta.sin())
                })
                .collect();
            if let Ok(p) = ConvexPolygon::new(vertices) {
                if (0..5).all(|i| p.edge_coupling(i) > 0.97) {
                    return p;
                }
            }
        }
    }

    #[test]
    fn random_pentagon_rate_is_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pent = random_pentagon(&mut rng);
        let u0 = 0.3 * pent.edge_length(0).sqrt();
        // past the transient, separations grow
        let mut u = u0;
        for k in 0..1000 {
            u = polygon_step(&pent, k % 5, u, Choice::Smaller).unwrap().0;
        }
        let rate = divergence_rate(&pent, u, 1e-8, 5000).unwrap();
        assert!(rate > 0.0, "rate = {rate}");
        // and the chain shows no confirmed cycle in ten thousand steps
        let record = polygon_chain(
            &pent,
            pent.circle_from_u(0, u0),
            &Policy::AlwaysSmaller,
            10_000,
        );
        assert_eq!(record.termination, Termination::MaxSteps);
    }
}

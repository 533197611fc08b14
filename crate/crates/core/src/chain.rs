//! Chains of circles inscribed in the vertex angles of a triangle.
//!
//! Circle `k+1` is inscribed in the next vertex angle (vertices cycle
//! `0 -> 1 -> 2 -> 0`) and is externally tangent to circle `k`. Writing
//! `t = r cot(alpha)` for the tangent length and `u = sqrt(t)`, tangency to
//! the shared side of length `s` with coupling `e` reads
//!
//! ```text
//! u1^2 + 2 e u1 u2 + u2^2 = s   (tangency point of circle 1 on the side)
//! u1^2 - 2 e u1 u2 + u2^2 = s   (tangency point on the side's extension)
//! ```
//!
//! Of the two circles tangent to the previous one, the `Smaller` choice takes
//! the one nearer the new vertex, the `Larger` choice the one farther away.
//! With the smaller choice the chain is eventually 6-periodic; the engine
//! detects the cycle and the pre-period in `(vertex, u)` space.

use crate::error::{Error, Result};
use crate::geom::{dist_to_line, foot_parameter, Point};
use crate::plmap::phi_from_u;
use crate::triangle::Triangle;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Absolute tolerance for cycle detection in `u`.
pub const CYCLE_TOL: f64 = 1e-9;

/// Default step cap; far above any pre-period reachable at double precision
/// for non-adversarial parameters.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// Which of the two tangent circles to take at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Smaller,
    Larger,
}

/// Which sign of the tangency equation a step satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCase {
    PlusOnSide,
    MinusOnExtension,
}

/// Whether a tangency point falls on the shape's side segment or beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tangency {
    OnSide,
    OnExtension,
}

/// A circle inscribed in one vertex angle: tangent to both lines bounding the
/// angle, centered on the interior bisector.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleCircle {
    pub vertex: usize,
    pub radius: f64,
    /// Distance from the vertex to either tangency point, `r cot(alpha)`.
    pub tangent_length: f64,
    /// `sqrt(tangent_length)`.
    pub u: f64,
    pub center: Point,
    /// Classification against the side toward the next vertex.
    pub tangency_to_next: Tangency,
    /// Classification against the side toward the previous vertex.
    pub tangency_to_prev: Tangency,
    pub degenerate: bool,
}

impl AngleCircle {
    pub fn has_side_tangency(&self) -> bool {
        self.tangency_to_next == Tangency::OnSide || self.tangency_to_prev == Tangency::OnSide
    }
}

/// Places a circle of tangent length `u^2` in a vertex angle. Shared by the
/// triangle and polygon paths.
#[allow(clippy::too_many_arguments)]
pub(crate) fn place_circle(
    vertex: usize,
    u: f64,
    tan_alpha: f64,
    sin_alpha: f64,
    vertex_pos: Point,
    bisector: Point,
    side_next: f64,
    side_prev: f64,
) -> AngleCircle {
    let t = u * u;
    let r = t * tan_alpha;
    let classify = |side: f64| {
        if t <= side {
            Tangency::OnSide
        } else {
            Tangency::OnExtension
        }
    };
    AngleCircle {
        vertex,
        radius: r,
        tangent_length: t,
        u,
        center: vertex_pos + bisector * (r / sin_alpha),
        tangency_to_next: classify(side_next),
        tangency_to_prev: classify(side_prev),
        degenerate: r == 0.0,
    }
}

/// Realizes the circle of radius `r` inscribed in the angle at `vertex`,
/// with tangency classification against both adjacent sides.
pub fn circle_from_radius(tri: &Triangle, vertex: usize, r: f64) -> AngleCircle {
    let t = r / tri.tan_half_angle(vertex);
    circle_from_u(tri, vertex, t.sqrt())
}

/// Same circle parameterized by `u = sqrt(r cot alpha)`.
pub fn circle_from_u(tri: &Triangle, vertex: usize, u: f64) -> AngleCircle {
    place_circle(
        vertex,
        u,
        tri.tan_half_angle(vertex),
        tri.half_angle(vertex).sin(),
        tri.vertex(vertex),
        tri.bisector_direction(vertex),
        tri.sides()[tri.side_to_next(vertex)],
        tri.sides()[tri.side_to_prev(vertex)],
    )
}

/// Circle at `vertex` with angle coordinate `phi`, i.e. `u = sqrt(p) sin(phi)`.
pub fn circle_from_phi(tri: &Triangle, vertex: usize, phi: f64) -> AngleCircle {
    circle_from_u(
        tri,
        vertex,
        crate::plmap::u_from_phi(phi, tri.semiperimeter()),
    )
}

/// Length of the common external tangent segment of two externally tangent
/// circles: `2 sqrt(r1 r2)`.
pub fn tangent_segment_length(r1: f64, r2: f64) -> f64 {
    2.0 * (r1 * r2).sqrt()
}

/// Core one-edge recursion, shared with the polygon generalization.
///
/// `s` is the length of the edge being crossed and `e` its coupling. The sign
/// case is fixed by the incoming circle (tangent point on the side iff
/// `u^2 <= s`); the smaller root of the matching equation is
/// `-e u + sqrt(s - (1-e^2) u^2)` in the plus case and
/// `e u - sqrt(...)` in the minus case. The larger of the two tangent
/// circles is `e u + sqrt(...)` in both cases, matching the reverse-direction
/// formula (running the chain backwards picks the greater circle).
pub(crate) fn advance_u(s: f64, e: f64, u: f64, choice: Choice) -> Result<(f64, SignCase)> {
    let radicand = s - (1.0 - e * e) * u * u;
    if radicand < 0.0 {
        return Err(Error::RadicandNegative { radicand });
    }
    let root = radicand.sqrt();
    match choice {
        Choice::Smaller => {
            if u * u <= s {
                // -e u + root >= 0 exactly when u^2 <= s; clamp rounding dust
                Ok(((-e * u + root).max(0.0), SignCase::PlusOnSide))
            } else {
                let v = e * u - root;
                if v < -1e-12 * (1.0 + u) {
                    return Err(Error::NegativeRoot(v));
                }
                Ok((v.max(0.0), SignCase::MinusOnExtension))
            }
        }
        Choice::Larger => {
            let sign = if u == 0.0 {
                SignCase::PlusOnSide
            } else {
                SignCase::MinusOnExtension
            };
            Ok((e * u + root, sign))
        }
    }
}

/// The u-recursion along the side from `from_vertex` to the next vertex.
///
/// Fails with `RadicandNegative` when no tangent circle exists in the next
/// angle (for a triangle this happens exactly when `u^2 > p`).
pub fn next_u(
    tri: &Triangle,
    from_vertex: usize,
    u: f64,
    choice: Choice,
) -> Result<(f64, SignCase)> {
    let k = tri.side_to_next(from_vertex);
    advance_u(tri.sides()[k], tri.coupling(k), u, choice)
}

/// Outcome of the reachability test for a circle tangent to the extensions
/// of both adjacent sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constructibility {
    /// At least one tangency point lies on a side; no further test needed.
    Ok,
    /// The circle reaches the opposite side, so the next circle exists and
    /// touches that side.
    NextTouchesOppositeSide,
    NotConstructible,
}

/// Tests whether the chain can continue from `circle`. Only circles tangent
/// to the extensions of both adjacent sides can fail; they do exactly when
/// they miss the opposite side segment.
pub fn constructibility(tri: &Triangle, circle: &AngleCircle) -> Constructibility {
    if circle.has_side_tangency() {
        return Constructibility::Ok;
    }
    let a = tri.vertex((circle.vertex + 1) % 3);
    let b = tri.vertex((circle.vertex + 2) % 3);
    if dist_to_line(circle.center, a, b) > circle.radius {
        return Constructibility::NotConstructible;
    }
    let t = foot_parameter(circle.center, a, b);
    if (0.0..=1.0).contains(&t)
        || circle.center.dist(a) <= circle.radius
        || circle.center.dist(b) <= circle.radius
    {
        Constructibility::NextTouchesOppositeSide
    } else {
        Constructibility::NotConstructible
    }
}

/// Builds the next circle of the chain. The returned circle satisfies the
/// tangency equation with the sign of the returned case.
pub fn step(
    tri: &Triangle,
    current: &AngleCircle,
    choice: Choice,
) -> Result<(AngleCircle, SignCase)> {
    if current.degenerate {
        return Err(Error::DegenerateCircle);
    }
    if !current.has_side_tangency()
        && constructibility(tri, current) == Constructibility::NotConstructible
    {
        return Err(Error::NotConstructible);
    }
    let (u_next, sign) = next_u(tri, current.vertex, current.u, choice)?;
    let next_vertex = (current.vertex + 1) % 3;
    Ok((circle_from_u(tri, next_vertex, u_next), sign))
}

/// How the next circle is chosen at each step.
#[derive(Debug, Clone, PartialEq)]
pub enum Policy {
    AlwaysSmaller,
    AlwaysLarger,
    /// Coin toss per step, seeded for reproducibility.
    Random {
        seed: u64,
    },
    /// Fixed list of choices; the chain stops when the script runs out.
    Scripted(Vec<Choice>),
}

pub(crate) enum Chooser {
    Fixed(Choice),
    Coin(Box<ChaCha8Rng>),
    Script(std::vec::IntoIter<Choice>),
}

impl Policy {
    /// Whether the choice sequence is a pure function of the step index.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Policy::Random { .. })
    }

    pub(crate) fn chooser(&self) -> Chooser {
        match self {
            Policy::AlwaysSmaller => Chooser::Fixed(Choice::Smaller),
            Policy::AlwaysLarger => Chooser::Fixed(Choice::Larger),
            Policy::Random { seed } => Chooser::Coin(Box::new(ChaCha8Rng::seed_from_u64(*seed))),
            Policy::Scripted(list) => Chooser::Script(list.clone().into_iter()),
        }
    }
}

impl Chooser {
    pub(crate) fn next(&mut self) -> Option<Choice> {
        match self {
            Chooser::Fixed(c) => Some(*c),
            Chooser::Coin(rng) => Some(if rng.random::<bool>() {
                Choice::Larger
            } else {
                Choice::Smaller
            }),
            Chooser::Script(it) => it.next(),
        }
    }
}

/// Why a chain stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxSteps,
    CycleDetected,
    NotConstructible,
    DegenerateCircle,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Termination::MaxSteps => "max_steps",
            Termination::CycleDetected => "cycle_detected",
            Termination::NotConstructible => "not_constructible",
            Termination::DegenerateCircle => "degenerate_circle",
        };
        f.write_str(s)
    }
}

/// One element of a chain. `choice` and `sign_case` describe the step that
/// produced the circle and are absent for the initial circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainStep {
    /// 1-based position in the chain.
    pub index: usize,
    pub circle: AngleCircle,
    pub choice: Option<Choice>,
    pub sign_case: Option<SignCase>,
}

/// Full trajectory of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRecord<S> {
    pub shape: S,
    pub steps: Vec<ChainStep>,
    pub termination: Termination,
    /// Number of circles before the first circle of the detected cycle.
    pub pre_period: Option<usize>,
    /// Cycle length in chain steps.
    pub period: Option<usize>,
}

impl<S> ChainRecord<S> {
    /// Angle coordinate of step `i`, when defined (`u^2 <= p`).
    pub fn phi(&self, i: usize, p: f64) -> Option<f64> {
        phi_from_u(self.steps[i].circle.u, p).ok()
    }
}

/// Online first-recurrence detector in `(vertex, u)` space.
///
/// Entries are bucketed by `u / tol` so each push is O(1); a hit at entry `n`
/// against an earlier entry `i` (same vertex, index gap a multiple of the
/// vertex count) yields pre-period `i - 1` and period `n - i`.
pub(crate) struct CycleDetector {
    modulus: usize,
    tol: f64,
    entries: Vec<(usize, f64)>,
    buckets: HashMap<i64, Vec<usize>>,
}

impl CycleDetector {
    pub(crate) fn new(modulus: usize, tol: f64) -> Self {
        CycleDetector {
            modulus,
            tol,
            entries: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    /// 1-based lookup.
    fn entry(&self, i: usize) -> (usize, f64) {
        self.entries[i - 1]
    }

    /// Records `(vertex, u)` and reports `(pre_period, period)` on the first
    /// recurrence, choosing the earliest matching entry.
    pub(crate) fn push(&mut self, vertex: usize, u: f64) -> Option<(usize, usize)> {
        let n = self.entries.len() + 1;
        let key = (u / self.tol).floor() as i64;
        let mut earliest: Option<usize> = None;
        for k in [key - 1, key, key + 1] {
            if let Some(bucket) = self.buckets.get(&k) {
                for &i in bucket {
                    if (n - i).is_multiple_of(self.modulus)
                        && self.entries[i - 1].0 == vertex
                        && (self.entries[i - 1].1 - u).abs() <= self.tol
                    {
                        earliest = Some(earliest.map_or(i, |e| e.min(i)));
                    }
                }
            }
        }
        self.entries.push((vertex, u));
        self.buckets.entry(key).or_default().push(n);
        earliest.map(|i| (i - 1, n - i))
    }
}

/// Recurrence detector with optional confirmation.
///
/// With a deterministic policy a recurrence in `(vertex, u)` is only reported
/// as a cycle after one further full period re-matches, which rejects the
/// near-returns a weakly diverging orbit produces by chance. Random-choice
/// chains keep plain first-recurrence semantics: their future does not repeat,
/// so the first recurrence is the measured quantity.
pub(crate) struct CycleTracker {
    detector: CycleDetector,
    confirm: bool,
    pending: Option<(usize, usize, usize)>,
}

impl CycleTracker {
    pub(crate) fn new(modulus: usize, tol: f64, confirm: bool) -> Self {
        CycleTracker {
            detector: CycleDetector::new(modulus, tol),
            confirm,
            pending: None,
        }
    }

    pub(crate) fn push(&mut self, vertex: usize, u: f64) -> Option<(usize, usize)> {
        let tol = self.detector.tol;
        let hit = self.detector.push(vertex, u);
        if !self.confirm {
            return hit;
        }
        let n = self.detector.len();
        if let Some((m, q, confirmed)) = self.pending {
            let (pv, pu) = self.detector.entry(n - q);
            if pv == vertex && (pu - u).abs() <= tol {
                let confirmed = confirmed + 1;
                if confirmed >= q {
                    return Some((m, q));
                }
                self.pending = Some((m, q, confirmed));
            } else {
                self.pending = None;
            }
        }
        if self.pending.is_none() {
            if let Some((m, q)) = hit {
                if q == 1 {
                    return Some((m, q));
                }
                // the hit itself verified one point of the second loop
                self.pending = Some((m, q, 1));
            }
        }
        None
    }
}

/// Runs a chain from `initial` until a cycle is detected, the chain becomes
/// degenerate or non-constructible, or `max_steps` circles were built.
///
/// With a deterministic policy the record may extend one period past the
/// first recurrence: the cycle is reported only once it has re-matched for a
/// full period.
pub fn run_chain(
    tri: &Triangle,
    initial: AngleCircle,
    policy: &Policy,
    max_steps: usize,
) -> ChainRecord<Triangle> {
    let mut detector = CycleTracker::new(3, CYCLE_TOL, policy.is_deterministic());
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
            match step(tri, &steps.last().unwrap().circle, choice) {
                Ok((circle, sign)) => {
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
        shape: tri.clone(),
        steps,
        termination,
        pre_period,
        period,
    }
}

/// Offline recurrence scan over a finished chain: the smallest `m >= 0`, then
/// the smallest `q` (a positive multiple of 3) with `u_{m+1+q} = u_{m+1}` to
/// within `tol` at the same vertex.
pub fn detect_periodicity(steps: &[ChainStep], tol: f64) -> Option<(usize, usize)> {
    detect_periodicity_mod(steps, 3, tol)
}

pub(crate) fn detect_periodicity_mod(
    steps: &[ChainStep],
    modulus: usize,
    tol: f64,
) -> Option<(usize, usize)> {
    let n = steps.len();
    for m in 0..n {
        let mut q = modulus;
        while m + q < n {
            let a = &steps[m].circle;
            let b = &steps[m + q].circle;
            if a.vertex == b.vertex && (a.u - b.u).abs() <= tol {
                return Some((m, q));
            }
            q += modulus;
        }
    }
    None
}

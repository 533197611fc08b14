//! The piecewise-linear interval map `f(x) = |||x - 1| - a| - b|` and the
//! angle-coordinate reduction of the chain step.
//!
//! A chain step in angle coordinates is `phi -> |phi - beta|`. Composing
//! three steps and scaling so the smallest beta becomes 1 yields `f` with
//! parameters `1 <= a <= b < a + 1`. Every orbit of `f` is eventually
//! 2-periodic: the window `I2 = [b - a, 1]` consists of 2-periodic points
//! (`f` restricted to it is the involution `x -> (1 + b - a) - x`), and
//! iteration drives every starting point into `I2`.
//!
//! Floating-point orbits live here; the exact rational engine is in
//! [`crate::oracles`].

use crate::error::{Error, Result};
use crate::triangle::Triangle;
use std::f64::consts::FRAC_PI_2;

/// Default absolute tolerance for float-mode cycle classification.
pub const FLOAT_CYCLE_TOL: f64 = 1e-9;

/// Scaled parameters of `f(x) = |||x - 1| - a| - b|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlParams {
    a: f64,
    b: f64,
}

impl PlParams {
    /// Validates `1 <= a <= b < a + 1`.
    pub fn new(a: f64, b: f64) -> Result<PlParams> {
        if !(1.0 <= a && a <= b && b < a + 1.0) {
            return Err(Error::InvalidMapParams { a, b });
        }
        Ok(PlParams { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Closed interval on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Which piece of the partition an iterate landed in. Shared endpoints go to
/// the lower-indexed interval so traces are deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalLabel {
    I1,
    I2,
    I3,
    AboveB,
}

impl std::fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IntervalLabel::I1 => "I1",
            IntervalLabel::I2 => "I2",
            IntervalLabel::I3 => "I3",
            IntervalLabel::AboveB => "above_b",
        };
        f.write_str(s)
    }
}

/// Full description of one orbit: where it started, what it visited, when it
/// entered the periodic window and what it cycles on afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport<T> {
    pub x0: T,
    pub trajectory: Vec<T>,
    /// First index whose iterate lies in `I2`.
    pub pre_period: usize,
    /// 1 for the fixed point, 2 otherwise.
    pub period: usize,
    pub cycle: Vec<T>,
    pub interval_trace: Vec<IntervalLabel>,
}

/// `phi = arcsin(u / sqrt(p))`, defined for `u^2 <= p`.
pub fn phi_from_u(u: f64, p: f64) -> Result<f64> {
    let u_squared = u * u;
    if u_squared > p {
        return Err(Error::DomainExceeded { u_squared, p });
    }
    Ok((u / p.sqrt()).min(1.0).asin())
}

/// Inverse of [`phi_from_u`]: `u = sqrt(p) * sin(phi)` for `phi` in `[0, pi/2]`.
pub fn u_from_phi(phi: f64, p: f64) -> f64 {
    debug_assert!((0.0..=FRAC_PI_2 + 1e-12).contains(&phi));
    p.sqrt() * phi.sin()
}

/// One chain step in angle coordinates.
pub fn step_map(phi: f64, beta: f64) -> f64 {
    (phi - beta).abs()
}

/// Scaled parameters of the three-step composite: betas sorted ascending and
/// divided by the smallest. `b < a + 1` is guaranteed by the beta triangle
/// inequality.
pub fn composite_params(tri: &Triangle) -> PlParams {
    let mut b = tri.betas();
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    PlParams::new(b[1] / b[0], b[2] / b[0])
        .expect("betas of a valid triangle always yield valid parameters")
}

/// `f(x) = |||x - 1| - a| - b|`.
pub fn f_eval(params: PlParams, x: f64) -> f64 {
    (((x - 1.0).abs() - params.a).abs() - params.b).abs()
}

/// The partition `I1 = [0, b-a]`, `I2 = [b-a, 1]`, `I3 = [1, b]`.
pub fn intervals(params: PlParams) -> (Interval, Interval, Interval) {
    let ba = params.b - params.a;
    (
        Interval { lo: 0.0, hi: ba },
        Interval { lo: ba, hi: 1.0 },
        Interval {
            lo: 1.0,
            hi: params.b,
        },
    )
}

/// Classifies `x`, sending shared endpoints to the lower-indexed interval.
pub fn interval_label(params: PlParams, x: f64) -> IntervalLabel {
    let ba = params.b - params.a;
    if x <= ba {
        IntervalLabel::I1
    } else if x <= 1.0 {
        IntervalLabel::I2
    } else if x <= params.b {
        IntervalLabel::I3
    } else {
        IntervalLabel::AboveB
    }
}

fn in_window(params: PlParams, x: f64) -> bool {
    params.b - params.a <= x && x <= 1.0
}

/// Iterates `f` from `x0` until the orbit enters `I2`, then classifies the
/// cycle. `tol` decides fixed-point vs 2-cycle in float arithmetic.
pub fn orbit(params: PlParams, x0: f64, tol: f64, max_iter: usize) -> Result<OrbitReport<f64>> {
    let mut trajectory = vec![x0];
    let mut interval_trace = vec![interval_label(params, x0)];
    let mut x = x0;
    let mut pre_period = None;
    for k in 0..=max_iter {
        if in_window(params, x) {
            pre_period = Some(k);
            break;
        }
        if k == max_iter {
            return Err(Error::MaxIterExceeded(max_iter));
        }
        x = f_eval(params, x);
        trajectory.push(x);
        interval_trace.push(interval_label(params, x));
    }
    let pre_period = pre_period.unwrap();
    let y = f_eval(params, x);
    if trajectory.len() == pre_period + 1 {
        trajectory.push(y);
        interval_trace.push(interval_label(params, y));
    }
    let (period, cycle) = if (y - x).abs() <= tol {
        (1, vec![x])
    } else {
        (2, vec![x, y])
    };
    Ok(OrbitReport {
        x0,
        trajectory,
        pre_period,
        period,
        cycle,
        interval_trace,
    })
}

/// The unique fixed point `(1 + b - a) / 2`, midpoint of `I2`. Chains pinned
/// to it are the Malfatti configuration.
pub fn fixed_point(params: PlParams) -> f64 {
    (1.0 + params.b - params.a) / 2.0
}

/// Upper bound on the number of iterations needed to reach `I2` from `x0`:
/// a descent phase (each iterate above `a + b + 1` drops by `a + b + 1`)
/// plus at most `ceil((b - 1) / (1 + a - b)) + 2` further iterates, since
/// each pass chops a segment of length `1 + a - b` off `I3`.
pub fn preperiod_bound(params: PlParams, x0: f64) -> usize {
    let shift = params.a + params.b + 1.0;
    let descent = if x0 > params.b {
        ((x0 - params.b) / shift).ceil() as usize
    } else {
        0
    };
    let window = 1.0 + params.a - params.b;
    let chops = ((params.b - 1.0) / window).ceil() as usize;
    descent + chops + 2
}

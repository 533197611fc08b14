use thiserror::Error;

/// Everything that can go wrong while building shapes, stepping chains or
/// iterating the interval map.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("side {index} is not positive (got {value})")]
    NonPositiveSide { index: usize, value: f64 },

    #[error("triangle inequality violated: semiperimeter {p} <= side {side}")]
    TriangleInequalityViolated { p: f64, side: f64 },

    #[error("polygon must have at least 3 vertices (got {0})")]
    TooFewVertices(usize),

    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),

    #[error("polygon vertices must be counterclockwise")]
    NotCounterClockwise,

    #[error("no tangent circle in the next angle: radicand {radicand} < 0")]
    RadicandNegative { radicand: f64 },

    #[error("selected root is negative ({0})")]
    NegativeRoot(f64),

    #[error("next circle cannot be constructed from this configuration")]
    NotConstructible,

    #[error("degenerate point circle cannot be stepped")]
    DegenerateCircle,

    #[error("u^2 = {u_squared} exceeds the semiperimeter {p}")]
    DomainExceeded { u_squared: f64, p: f64 },

    #[error("invalid interval-map parameters: need 1 <= a <= b < a+1 (a={a}, b={b})")]
    InvalidMapParams { a: f64, b: f64 },

    #[error("orbit did not reach the periodic window within {0} iterations")]
    MaxIterExceeded(usize),

    #[error("tangency solver found no root in (0, {r_max}]")]
    NoRoot { r_max: f64 },

    #[error("fixed-point iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("orbit terminated after {completed} of {requested} steps: {reason}")]
    OrbitTerminated {
        completed: usize,
        requested: usize,
        reason: String,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;

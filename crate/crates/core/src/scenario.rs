//! Versioned JSON scenario files consumed by the CLI.
//!
//! A scenario pins one shape, one initial condition, one policy and the step
//! cap, so a run can be reproduced from the file alone. Vertex indices in
//! scenario files are 1-based, matching the CLI and reports.

use crate::chain::{Choice, Policy};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::polygon::ConvexPolygon;
use crate::triangle::Triangle;
use serde::{Deserialize, Serialize};

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub shape: ShapeSpec,
    pub initial: InitialSpec,
    pub policy: PolicySpec,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
}

fn default_max_steps() -> usize {
    crate::chain::DEFAULT_MAX_STEPS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Triangle { sides: [f64; 3] },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    /// Angle coordinate; triangles only.
    Phi0 {
        value: f64,
        start_vertex: usize,
    },
    R0 {
        value: f64,
        start_vertex: usize,
    },
    U0 {
        value: f64,
        start_vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolicySpec {
    Smaller,
    Larger,
    Random {
        seed: u64,
    },
    /// One letter per step: `s` for smaller, `l` for larger.
    Scripted {
        script: String,
    },
}

/// A scenario's shape, ready to run.
#[derive(Debug, Clone)]
pub enum BuiltShape {
    Triangle(Triangle),
    Polygon(ConvexPolygon),
}

impl Scenario {
    pub fn from_json(json: &str) -> Result<Scenario> {
        let scenario: Scenario =
            serde_json::from_str(json).map_err(|e| Error::InvalidScenario(e.to_string()))?;
        if scenario.version != SCENARIO_VERSION {
            return Err(Error::InvalidScenario(format!(
                "unsupported version {} (expected {SCENARIO_VERSION})",
                scenario.version
            )));
        }
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn build_shape(&self) -> Result<BuiltShape> {
        match &self.shape {
            ShapeSpec::Triangle { sides } => Ok(BuiltShape::Triangle(Triangle::from_sides(
                sides[0], sides[1], sides[2],
            )?)),
            ShapeSpec::Polygon { vertices } => {
                let pts = vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
                Ok(BuiltShape::Polygon(ConvexPolygon::new(pts)?))
            }
        }
    }

    /// 0-based start vertex, validated against the shape.
    pub fn start_vertex(&self, vertex_count: usize) -> Result<usize> {
        let v = match self.initial {
            InitialSpec::Phi0 { start_vertex, .. }
            | InitialSpec::R0 { start_vertex, .. }
            | InitialSpec::U0 { start_vertex, .. } => start_vertex,
        };
        if v == 0 || v > vertex_count {
            return Err(Error::InvalidScenario(format!(
                "start_vertex {v} out of range 1..={vertex_count}"
            )));
        }
        Ok(v - 1)
    }

    pub fn policy(&self) -> Result<Policy> {
        Ok(match &self.policy {
            PolicySpec::Smaller => Policy::AlwaysSmaller,
            PolicySpec::Larger => Policy::AlwaysLarger,
            PolicySpec::Random { seed } => Policy::Random { seed: *seed },
            PolicySpec::Scripted { script } => Policy::Scripted(parse_script(script)?),
        })
    }
}

/// Parses a choice script like `"slls"`.
pub fn parse_script(script: &str) -> Result<Vec<Choice>> {
    script
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_ascii_lowercase() {
            's' => Ok(Choice::Smaller),
            'l' => Ok(Choice::Larger),
            other => Err(Error::InvalidScenario(format!(
                "script characters must be 's' or 'l', got {other:?}"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let scenario = Scenario {
            version: 1,
            shape: ShapeSpec::Triangle {
                sides: [3.0, 4.0, 5.0],
            },
            initial: InitialSpec::Phi0 {
                value: 0.3,
                start_vertex: 1,
            },
            policy: PolicySpec::Random { seed: 12 },
            max_steps: 100,
        };
        let json = scenario.to_json();
        let back = Scenario::from_json(&json).unwrap();
        assert_eq!(scenario, back);
        assert_eq!(json, back.to_json());
    }

    #[test]
    fn rejects_unknown_version_and_fields() {
        let json = r#"{"version":2,"shape":{"kind":"triangle","sides":[3,4,5]},
            "initial":{"kind":"phi0","value":0.3,"start_vertex":1},
            "policy":{"kind":"smaller"},"max_steps":10}"#;
        assert!(Scenario::from_json(json).is_err());
        let json = r#"{"version":1,"shape":{"kind":"triangle","sides":[3,4,5],"extra":1},
            "initial":{"kind":"phi0","value":0.3,"start_vertex":1},
            "policy":{"kind":"smaller"},"max_steps":10}"#;
        assert!(Scenario::from_json(json).is_err());
    }

    #[test]
    fn builds_shapes_and_policies() {
        let scenario = Scenario {
            version: 1,
            shape: ShapeSpec::Polygon {
                vertices: vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]],
            },
            initial: InitialSpec::U0 {
                value: 0.2,
                start_vertex: 4,
            },
            policy: PolicySpec::Scripted {
                script: "sls".into(),
            },
            max_steps: 50,
        };
        match scenario.build_shape().unwrap() {
            BuiltShape::Polygon(p) => assert_eq!(p.len(), 4),
            _ => panic!("expected polygon"),
        }
        assert_eq!(scenario.start_vertex(4).unwrap(), 3);
        assert!(scenario.start_vertex(3).is_err());
        assert_eq!(
            scenario.policy().unwrap(),
            Policy::Scripted(vec![Choice::Smaller, Choice::Larger, Choice::Smaller])
        );
        assert!(parse_script("sx").is_err());
    }
}

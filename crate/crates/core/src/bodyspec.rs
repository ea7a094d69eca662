//! JSON body files.
//!
//! ```json
//! {"type": "vertices", "dim": 2, "points": [[0, 0], [1, 0], [0, 1]]}
//! {"type": "ball", "dim": 3, "radius": 1.0, "center": [0, 0, 0]}
//! {"type": "cube", "dim": 3, "side": 2.0}
//! {"type": "simplex", "dim": 4}
//! {"type": "random", "dim": 3, "vertices": 10, "seed": 1}
//! {"type": "ball_approx", "dim": 3, "radius": 1.0, "points": 200, "seed": 7}
//! ```
//!
//! `center` is optional and defaults to the origin.

use std::path::Path;

use serde::Deserialize;

use crate::error::{invalid, Error, Result};
use crate::format::{json_string, num};
use crate::geometry::{ball_approx, convex_hull, Body};
use crate::rng::SampleStream;
use crate::verify::random_polytope;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Vertices {
        dim: usize,
        points: Vec<Vec<f64>>,
    },
    Ball {
        dim: usize,
        radius: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    Cube {
        dim: usize,
        side: f64,
    },
    Simplex {
        dim: usize,
    },
    Random {
        dim: usize,
        vertices: usize,
        seed: u64,
    },
    BallApprox {
        dim: usize,
        radius: f64,
        points: usize,
        seed: u64,
    },
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<BodySpec> {
        serde_json::from_str(text).map_err(|e| invalid(format!("body spec: {e}")))
    }

    pub fn read(path: &Path) -> Result<BodySpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::InvalidArgument(msg) => invalid(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn dim(&self) -> usize {
        match *self {
            BodySpec::Vertices { dim, .. }
            | BodySpec::Ball { dim, .. }
            | BodySpec::Cube { dim, .. }
            | BodySpec::Simplex { dim }
            | BodySpec::Random { dim, .. }
            | BodySpec::BallApprox { dim, .. } => dim,
        }
    }

    pub fn to_body(&self) -> Result<Body> {
        match self {
            BodySpec::Vertices { dim, points } => convex_hull(points, *dim),
            BodySpec::Ball {
                dim,
                radius,
                center,
            } => Body::ball(
                *dim,
                *radius,
                center.clone().unwrap_or_else(|| vec![0.0; *dim]),
            ),
            BodySpec::Cube { dim, side } => Body::cube(*dim, *side),
            BodySpec::Simplex { dim } => Body::simplex(*dim),
            BodySpec::Random {
                dim,
                vertices,
                seed,
            } => {
                if *dim == 0 {
                    return Err(invalid("dimension must be positive"));
                }
                random_polytope(SampleStream::new(*seed, 0), *dim, *vertices)
            }
            BodySpec::BallApprox {
                dim,
                radius,
                points,
                seed,
            } => ball_approx(*dim, *radius, *points, *seed),
        }
    }

    /// Body-file description of a concrete body: polytopes as `vertices`, balls as `ball`.
    pub fn from_body(body: &Body) -> BodySpec {
        match body {
            Body::Polytope(p) => BodySpec::Vertices {
                dim: p.dim(),
                points: p.vertices().map(<[f64]>::to_vec).collect(),
            },
            Body::Ball(b) => BodySpec::Ball {
                dim: b.dim,
                radius: b.radius,
                center: Some(b.center.clone()),
            },
        }
    }

    /// Canonical JSON text, one body per file, numbers with 17 significant digits.
    pub fn to_json(&self) -> String {
        let list = |v: &[f64]| {
            format!(
                "[{}]",
                v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
            )
        };
        let tag = |t: &str| format!("\"type\":{}", json_string(t));
        let fields = match self {
            BodySpec::Vertices { dim, points } => {
                let pts: Vec<String> = points.iter().map(|p| list(p)).collect();
                format!(
                    "{},\"dim\":{dim},\"points\":[{}]",
                    tag("vertices"),
                    pts.join(",")
                )
            }
            BodySpec::Ball {
                dim,
                radius,
                center,
            } => {
                let c = center
                    .as_ref()
                    .map(|c| format!(",\"center\":{}", list(c)))
                    .unwrap_or_default();
                format!(
                    "{},\"dim\":{dim},\"radius\":{}{c}",
                    tag("ball"),
                    num(*radius)
                )
            }
            BodySpec::Cube { dim, side } => {
                format!("{},\"dim\":{dim},\"side\":{}", tag("cube"), num(*side))
            }
            BodySpec::Simplex { dim } => format!("{},\"dim\":{dim}", tag("simplex")),
            BodySpec::Random {
                dim,
                vertices,
                seed,
            } => {
                format!(
                    "{},\"dim\":{dim},\"vertices\":{vertices},\"seed\":{seed}",
                    tag("random")
                )
            }
            BodySpec::BallApprox {
                dim,
                radius,
                points,
                seed,
            } => format!(
                "{},\"dim\":{dim},\"radius\":{},\"points\":{points},\"seed\":{seed}",
                tag("ball_approx"),
                num(*radius)
            ),
        };
        format!("{{{fields}}}\n")
    }
}

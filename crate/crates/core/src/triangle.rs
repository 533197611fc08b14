//! Triangle domain model.
//!
//! A [`Triangle`] is built once from its three side lengths and carries every
//! derived quantity the rest of the crate needs: semiperimeter, half-angles,
//! the `beta` angles `arcsin(sqrt(a_i/p))`, per-edge couplings
//! `sqrt(tan(alpha_i) * tan(alpha_j))`, incircle tangent lengths `p - a_i`,
//! and a canonical planar embedding. The struct is immutable after
//! construction, so all identities can be checked once and then trusted.
//!
//! Index conventions: everything is 0-based in code; side `k` is opposite
//! vertex `k`, so side `k` joins the other two vertices.

use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    sides: [f64; 3],
    semiperimeter: f64,
    half_angles: [f64; 3],
    tan_half_angles: [f64; 3],
    betas: [f64; 3],
    couplings: [f64; 3],
    tangent_lengths: [f64; 3],
    vertices: [Point; 3],
}

impl Triangle {
    /// Builds a triangle from its side lengths, side `k` opposite vertex `k`.
    ///
    /// The canonical embedding places vertex 0 at the origin, vertex 1 at
    /// `(a3, 0)` and vertex 2 in the upper half-plane, so renderings and
    /// tangency points are reproducible bit-for-bit.
    ///
    /// The triangle inequality is checked exactly, with no epsilon slack:
    /// the caller controls degeneracy explicitly.
    pub fn from_sides(a1: f64, a2: f64, a3: f64) -> Result<Triangle> {
        let sides = [a1, a2, a3];
        for (index, &value) in sides.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveSide { index, value });
            }
        }
        let p = (a1 + a2 + a3) / 2.0;
        for &side in &sides {
            if p <= side {
                return Err(Error::TriangleInequalityViolated { p, side });
            }
        }

        // Half-angle tangents via tan(alpha) = (1 - cos 2a) / sin 2a with
        // cos 2a from the law of cosines. Factoring both 1 - cos and 1 + cos
        // against the law of cosines gives tan(alpha_k) in the product form
        // sqrt((p-b)(p-c) / (p(p-a))), which stays accurate at extreme
        // aspect ratios where the raw subtraction would cancel.
        let mut tan_half_angles = [0.0; 3];
        let mut half_angles = [0.0; 3];
        for k in 0..3 {
            let a = sides[k];
            let b = sides[(k + 1) % 3];
            let c = sides[(k + 2) % 3];
            tan_half_angles[k] = ((p - b) * (p - c) / (p * (p - a))).sqrt();
            half_angles[k] = tan_half_angles[k].atan();
        }

        let mut betas = [0.0; 3];
        let mut couplings = [0.0; 3];
        let mut tangent_lengths = [0.0; 3];
        for k in 0..3 {
            betas[k] = (sides[k] / p).sqrt().asin();
            couplings[k] = (tan_half_angles[(k + 1) % 3] * tan_half_angles[(k + 2) % 3]).sqrt();
            tangent_lengths[k] = p - sides[k];
        }

        let x = (a3 * a3 + a2 * a2 - a1 * a1) / (2.0 * a3);
        let y = ((a2 - x) * (a2 + x)).max(0.0).sqrt();
        let vertices = [Point::new(0.0, 0.0), Point::new(a3, 0.0), Point::new(x, y)];

        Ok(Triangle {
            sides,
            semiperimeter: p,
            half_angles,
            tan_half_angles,
            betas,
            couplings,
            tangent_lengths,
            vertices,
        })
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn semiperimeter(&self) -> f64 {
        self.semiperimeter
    }

    /// Half the interior angle at vertex `k`, in radians.
    pub fn half_angle(&self, k: usize) -> f64 {
        self.half_angles[k]
    }

    pub fn half_angles(&self) -> [f64; 3] {
        self.half_angles
    }

    pub fn tan_half_angle(&self, k: usize) -> f64 {
        self.tan_half_angles[k]
    }

    /// `beta_k = arcsin(sqrt(a_k / p))`.
    pub fn beta(&self, k: usize) -> f64 {
        self.betas[k]
    }

    pub fn betas(&self) -> [f64; 3] {
        self.betas
    }

    /// Edge coupling of side `k`: `sqrt(tan(alpha_i) * tan(alpha_j))` for the
    /// two half-angles adjacent to that side. Equals `cos(beta_k)`.
    pub fn coupling(&self, k: usize) -> f64 {
        self.couplings[k]
    }

    pub fn couplings(&self) -> [f64; 3] {
        self.couplings
    }

    /// Incircle tangent length from vertex `k`: `p - a_k`.
    pub fn tangent_length(&self, k: usize) -> f64 {
        self.tangent_lengths[k]
    }

    pub fn tangent_lengths(&self) -> [f64; 3] {
        self.tangent_lengths
    }

    pub fn vertex(&self, k: usize) -> Point {
        self.vertices[k]
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Index of the side joining vertex `v` and the next vertex `v+1`.
    pub fn side_to_next(&self, v: usize) -> usize {
        (v + 2) % 3
    }

    /// Index of the side joining vertex `v` and the previous vertex `v-1`.
    pub fn side_to_prev(&self, v: usize) -> usize {
        (v + 1) % 3
    }

    /// Unit vector from vertex `v` toward vertex `w`.
    pub fn edge_direction(&self, v: usize, w: usize) -> Point {
        (self.vertices[w] - self.vertices[v]).normalized()
    }

    /// Unit vector along the interior angle bisector at vertex `v`.
    pub fn bisector_direction(&self, v: usize) -> Point {
        let d1 = self.edge_direction(v, (v + 1) % 3);
        let d2 = self.edge_direction(v, (v + 2) % 3);
        (d1 + d2).normalized()
    }

    /// Residual of the identity `1 - tan(alpha_i) tan(alpha_j) = a_k / p`
    /// tying the coupling of side `k` to the opposite side length.
    /// Zero (up to rounding) for every valid triangle.
    pub fn coupling_identity_residual(&self, k: usize) -> f64 {
        let e2 = self.tan_half_angles[(k + 1) % 3] * self.tan_half_angles[(k + 2) % 3];
        1.0 - e2 - self.sides[k] / self.semiperimeter
    }

    /// `(beta_i + beta_j) - beta_k` where `beta_k` is the largest.
    /// Strictly positive for every valid triangle: the betas satisfy the
    /// triangle inequality.
    pub fn beta_inequality_margin(&self) -> f64 {
        let mut b = self.betas;
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b[0] + b[1] - b[2]
    }
}

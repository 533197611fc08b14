//! Deterministic SVG rendering of a shape outline with its circle chain:
//! every circle, its center labeled by step index, and the tangency points.
//! All coordinates are printed with 6 decimal places, so identical inputs
//! give byte-identical documents. The y axis is flipped on output to keep
//! the mathematical orientation.

use crate::chain::ChainStep;
use crate::geom::Point;
use crate::polygon::ConvexPolygon;
use crate::triangle::Triangle;
use std::fmt::Write;

fn f6(x: f64) -> String {
    // normalize negative zero so output never depends on rounding direction
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

struct Canvas {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn cover(&mut self, x: f64, y: f64, pad: f64) {
        self.min_x = self.min_x.min(x - pad);
        self.min_y = self.min_y.min(y - pad);
        self.max_x = self.max_x.max(x + pad);
        self.max_y = self.max_y.max(y + pad);
    }
}

fn render(outline: &[Point], steps: &[ChainStep], touch_points: &[Point]) -> String {
    let mut canvas = Canvas::new();
    for p in outline {
        canvas.cover(p.x, -p.y, 0.0);
    }
    for s in steps {
        let c = &s.circle;
        canvas.cover(c.center.x, -c.center.y, c.radius);
    }

    let span = (canvas.max_x - canvas.min_x).max(canvas.max_y - canvas.min_y);
    let stroke = span * 0.004;
    let dot = span * 0.008;
    let font = span * 0.035;

    let points: Vec<String> = outline
        .iter()
        .map(|p| format!("{},{}", f6(p.x), f6(-p.y)))
        .collect();
    let mut body = String::new();
    writeln!(
        body,
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
        points.join(" "),
        f6(stroke)
    )
    .unwrap();
    for s in steps {
        let c = &s.circle;
        writeln!(
            body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#3465a4\" stroke-width=\"{}\"/>",
            f6(c.center.x),
            f6(-c.center.y),
            f6(c.radius),
            f6(stroke)
        )
        .unwrap();
    }
    for p in touch_points {
        writeln!(
            body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#cc0000\" stroke=\"none\"/>",
            f6(p.x),
            f6(-p.y),
            f6(dot)
        )
        .unwrap();
    }
    for s in steps {
        let c = &s.circle;
        writeln!(
            body,
            "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\" \
             text-anchor=\"middle\" fill=\"#1a1a1a\">{}</text>",
            f6(c.center.x),
            f6(-c.center.y),
            f6(font),
            s.index
        )
        .unwrap();
    }

    let margin = span * 0.05;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
        f6(canvas.min_x - margin),
        f6(canvas.min_y - margin),
        f6(canvas.max_x - canvas.min_x + 2.0 * margin),
        f6(canvas.max_y - canvas.min_y + 2.0 * margin),
        body
    )
}

fn triangle_touch_points(tri: &Triangle, steps: &[ChainStep]) -> Vec<Point> {
    let mut out = Vec::new();
    for s in steps {
        let c = &s.circle;
        for w in [(c.vertex + 1) % 3, (c.vertex + 2) % 3] {
            out.push(tri.vertex(c.vertex) + tri.edge_direction(c.vertex, w) * c.tangent_length);
        }
    }
    out
}

pub fn render_triangle_chain(tri: &Triangle, steps: &[ChainStep]) -> String {
    render(&tri.vertices(), steps, &triangle_touch_points(tri, steps))
}

pub fn render_polygon_chain(poly: &ConvexPolygon, steps: &[ChainStep]) -> String {
    let n = poly.len();
    let mut touches = Vec::new();
    for s in steps {
        let c = &s.circle;
        for w in [(c.vertex + 1) % n, (c.vertex + n - 1) % n] {
            let dir = (poly.vertex(w) - poly.vertex(c.vertex)).normalized();
            touches.push(poly.vertex(c.vertex) + dir * c.tangent_length);
        }
    }
    render(poly.vertices(), steps, &touches)
}

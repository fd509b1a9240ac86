//! Small SVG emitter for exponent-plane diagrams: region polygons with
//! lattice dots, the diagonal s = t, and vertex labels. Output only; no
//! computation depends on it.

use num_traits::ToPrimitive;

use crate::exact::Rational;
use crate::newton::NewtonPolygon;
use crate::regions::Polygon;

const SCALE: f64 = 28.0;
const MARGIN: f64 = 30.0;

fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Canvas {
    width: f64,
    height: f64,
    max: f64,
    body: String,
}

impl Canvas {
    fn new(max_coord: f64) -> Canvas {
        let max = max_coord.max(1.0);
        let side = max * SCALE + 2.0 * MARGIN;
        Canvas {
            width: side,
            height: side,
            max,
            body: String::new(),
        }
    }

    fn x(&self, s: f64) -> f64 {
        MARGIN + s * SCALE
    }

    fn y(&self, t: f64) -> f64 {
        self.height - MARGIN - t * SCALE
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        self.body.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" {style}/>\n",
            self.x(a.0),
            self.y(a.1),
            self.x(b.0),
            self.y(b.1)
        ));
    }

    fn finish(mut self) -> String {
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" \
             viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            self.width, self.height, self.width, self.height
        );
        // Axes and the diagonal s = t.
        let axis = "stroke=\"#444\" stroke-width=\"1\"";
        let max = self.max;
        self.line((0.0, 0.0), (max, 0.0), axis);
        self.line((0.0, 0.0), (0.0, max), axis);
        self.line(
            (0.0, 0.0),
            (max, max),
            "stroke=\"#b44\" stroke-width=\"1\" stroke-dasharray=\"4 3\"",
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn polygon_path(canvas: &Canvas, vertices: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (i, (s, t)) in vertices.iter().enumerate() {
        d.push_str(if i == 0 { "M" } else { "L" });
        d.push_str(&format!("{:.2},{:.2} ", canvas.x(*s), canvas.y(*t)));
    }
    d.push('Z');
    d
}

/// Render a union of instantiated region pieces with lattice dots.
pub fn render_regions(pieces: &[Polygon], lattice: &[(i64, i64)], labels: bool) -> String {
    let mut max = 1.0f64;
    for p in pieces {
        for (s, t) in &p.vertices {
            max = max.max(approx(s)).max(approx(t));
        }
    }
    let mut canvas = Canvas::new(max + 1.0);
    let mut shapes = String::new();
    for p in pieces {
        let vs: Vec<(f64, f64)> = p
            .vertices
            .iter()
            .map(|(s, t)| (approx(s), approx(t)))
            .collect();
        if vs.len() >= 2 {
            shapes.push_str(&format!(
                "<path d=\"{}\" fill=\"#9bd\" fill-opacity=\"0.35\" stroke=\"#369\" stroke-width=\"1.5\"/>\n",
                polygon_path(&canvas, &vs)
            ));
        }
        if labels {
            for ((s, t), (sq, tq)) in vs.iter().zip(&p.vertices) {
                shapes.push_str(&format!(
                    "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"#146\">({sq}, {tq})</text>\n",
                    canvas.x(*s) + 3.0,
                    canvas.y(*t) - 3.0
                ));
            }
        }
    }
    for (s, t) in lattice {
        shapes.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#222\"/>\n",
            canvas.x(*s as f64),
            canvas.y(*t as f64)
        ));
    }
    canvas.body.push_str(&shapes);
    canvas.finish()
}

/// Render a Newton polygon's lower-left boundary over its support.
pub fn render_newton(np: &NewtonPolygon, support: &[(u32, u32)]) -> String {
    let mut max = 1.0f64;
    for (s, t) in support {
        max = max.max(*s as f64).max(*t as f64);
    }
    let mut canvas = Canvas::new(max + 1.0);
    let mut shapes = String::new();
    let vs = np.vertices();
    for w in vs.windows(2) {
        shapes.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#369\" stroke-width=\"2\"/>\n",
            canvas.x(w[0].s as f64),
            canvas.y(w[0].t as f64),
            canvas.x(w[1].s as f64),
            canvas.y(w[1].t as f64)
        ));
    }
    for (s, t) in support {
        shapes.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"#222\"/>\n",
            canvas.x(*s as f64),
            canvas.y(*t as f64)
        ));
    }
    for v in vs {
        shapes.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#b44\"/>\n",
            canvas.x(v.s as f64),
            canvas.y(v.t as f64)
        ));
    }
    canvas.body.push_str(&shapes);
    canvas.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_bipoly;
    use crate::newton::newton_polygon;
    use crate::regions::{instantiate, RegionSpec};

    #[test]
    fn region_svg_is_wellformed() {
        let region =
            RegionSpec::from_slopes(&[((0, 1), (0, 1)), ((1, 1), (0, 1)), ((0, 1), (1, 1))]);
        let poly = instantiate(&region, 3).unwrap();
        let svg = render_regions(&[poly], &[(0, 0), (1, 1)], true);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<path"));
    }

    #[test]
    fn newton_svg_marks_vertices() {
        let f = parse_bipoly("x^2 + x*y + y^3").unwrap();
        let np = newton_polygon(&f).unwrap();
        let support: Vec<(u32, u32)> = f.support().map(|m| (m.s, m.t)).collect();
        let svg = render_newton(&np, &support);
        assert_eq!(svg.matches("fill=\"#b44\"").count(), 3);
    }
}

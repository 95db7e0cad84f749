//! Deterministic SVG rendering of the certifying geometry: the two
//! evaluation points, the ratio-q_k circle, the shrunken sqrt-ratio
//! circle, and numeric root markers. Byte-identical output for identical
//! inputs: every coordinate is formatted with fixed precision and nothing
//! depends on time or randomness.

use num_traits::{One, Signed, ToPrimitive, Zero};

use factorcert::arith::{FactorConfig, Int, Rat, rat_str};
use factorcert::divisors::{DivisorClass, divisor_set};
use factorcert::poly::{IntPoly, print_canonical};
use factorcert::ratio::compute_qk;
use factorcert::roots::{ApolloniusCircle, numeric_roots, sqrt_lower_bound};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 60.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn x(&self, x: f64) -> String {
        fmt(MARGIN + (x - self.min_x) * self.scale)
    }
    fn y(&self, y: f64) -> String {
        fmt(self.height - MARGIN - (y - self.min_y) * self.scale)
    }
    fn len(&self, d: f64) -> String {
        fmt(d * self.scale)
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

pub fn render_plot(
    f: &IntPoly,
    a: &Int,
    b: &Int,
    k: u32,
    class: DivisorClass,
) -> Result<String, String> {
    if f.degree() < Some(1) {
        return Err("plot requires a polynomial of degree at least 1".into());
    }
    let fa = f.eval(a);
    let fb = f.eval(b);
    if fa.is_zero() || fb.is_zero() {
        return Err(format!(
            "q_{k} is not computable: f({a}) = {fa}, f({b}) = {fb} (values must be nonzero)"
        ));
    }
    if fa.abs() >= fb.abs() {
        return Err(format!(
            "q_{k} is not computable: need |f(a)| < |f(b)|, got |{fa}| >= |{fb}|"
        ));
    }
    let df = f.derivative();
    let cfg = FactorConfig::default();
    let da = divisor_set(&fa, &df.eval(a), &cfg).map_err(|e| e.to_string())?;
    let db = divisor_set(&fb, &df.eval(b), &cfg).map_err(|e| e.to_string())?;
    let qk = compute_qk(&da, &db, k, class).map_err(|e| e.to_string())?;

    let af = a.to_f64().unwrap();
    let bf = b.to_f64().unwrap();
    let roots = numeric_roots(f);

    // World-space geometry to display.
    enum Shape {
        Circle { cx: f64, cy: f64, r: f64, color: &'static str, dashed: bool, label: String },
        VLine { x: f64, label: String },
    }
    let mut shapes = Vec::new();
    if qk.q > Rat::one() {
        let c1 = ApolloniusCircle::new(a, b, &qk.q).expect("q > 1, a != b");
        shapes.push(Shape::Circle {
            cx: c1.center.to_f64().unwrap(),
            cy: 0.0,
            r: c1.radius_sq.to_f64().unwrap().sqrt(),
            color: "#1f6fb2",
            dashed: false,
            label: format!("ratio q = {}", rat_str(&qk.q)),
        });
        let c2 = ApolloniusCircle::with_sqrt_ratio(a, b, &qk.q).expect("q > 1");
        let r_lower = sqrt_lower_bound(&qk.q, 12);
        let denom = &qk.q - Rat::one();
        let radius = (r_lower * Rat::from_integer((b - a).abs()) / denom).to_f64().unwrap();
        shapes.push(Shape::Circle {
            cx: c2.center.to_f64().unwrap(),
            cy: 0.0,
            r: radius,
            color: "#2a8f4e",
            dashed: true,
            label: "ratio sqrt(q), radius from the rational lower bound".into(),
        });
    } else {
        shapes.push(Shape::VLine {
            x: (af + bf) / 2.0,
            label: "q = 1: the circle degenerates to x = (a+b)/2".into(),
        });
    }

    // Frame bounds over everything drawn.
    let mut xs = vec![af, bf];
    let mut ys = vec![0.0];
    for z in &roots.roots {
        xs.push(z.re);
        ys.push(z.im);
    }
    for s in &shapes {
        match s {
            Shape::Circle { cx, cy, r, .. } => {
                xs.push(cx - r);
                xs.push(cx + r);
                ys.push(cy - r);
                ys.push(cy + r);
            }
            Shape::VLine { x, .. } => xs.push(*x),
        }
    }
    let (min_x, max_x) = bounds(&xs);
    let (min_y, max_y) = bounds(&ys);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-6);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let height = SIZE;
    let fr = Frame { min_x, min_y, scale, height };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{height}\" viewBox=\"0 0 {SIZE} {height}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes where they cross the frame.
    if min_y <= 0.0 && 0.0 <= max_y {
        out.push_str(&format!(
            "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
            fr.x(min_x), fr.y(0.0), fr.x(max_x), fr.y(0.0)
        ));
    }
    if min_x <= 0.0 && 0.0 <= max_x {
        out.push_str(&format!(
            "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
            fr.x(0.0), fr.y(min_y), fr.x(0.0), fr.y(max_y)
        ));
    }

    let mut legend: Vec<(String, &'static str)> = Vec::new();
    for s in &shapes {
        match s {
            Shape::Circle { cx, cy, r, color, dashed, label } => {
                let dash = if *dashed { " stroke-dasharray=\"6 4\"" } else { "" };
                out.push_str(&format!(
                    "<circle class=\"apollonius\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>\n",
                    fr.x(*cx), fr.y(*cy), fr.len(*r)
                ));
                legend.push((label.clone(), color));
            }
            Shape::VLine { x, label } => {
                out.push_str(&format!(
                    "<line class=\"bisector\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
                    fr.x(*x), fr.y(min_y), fr.x(*x), fr.y(max_y)
                ));
                legend.push((label.clone(), "#1f6fb2"));
            }
        }
    }

    for (x, name) in [(af, "a"), (bf, "b")] {
        out.push_str(&format!(
            "<circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#222222\"/>\n",
            fr.x(x), fr.y(0.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" fill=\"#222222\">{name} = {x}</text>\n",
            fr.x(x), fmt(fr.y(0.0).parse::<f64>().unwrap() + 18.0)
        ));
    }
    for z in &roots.roots {
        out.push_str(&format!(
            "<circle class=\"root\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#c03030\"/>\n",
            fr.x(z.re), fr.y(z.im)
        ));
    }

    out.push_str(&format!(
        "<text x=\"{}\" y=\"22\" font-family=\"monospace\" font-size=\"14\" fill=\"#111111\">f = {}; q_{k} = {} ({} divisors)</text>\n",
        fmt(MARGIN), xml_escape(&print_canonical(f)), rat_str(&qk.q), class
    ));
    let mut ly = 40.0;
    for (label, color) in legend {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            fmt(MARGIN), fmt(ly), xml_escape(&label)
        ));
        ly += 16.0;
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"#666666\">root markers are numeric and illustrative only; certificates are exact</text>\n",
        fmt(MARGIN), fmt(height - 18.0)
    ));
    if !roots.converged {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"#c03030\">warning: root iteration did not converge</text>\n",
            fmt(MARGIN), fmt(height - 34.0)
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn bounds(vs: &[f64]) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in vs {
        min = min.min(v);
        max = max.max(v);
    }
    // Pad by 8% so strokes are not clipped at the frame.
    let pad = ((max - min) * 0.08).max(0.5);
    (min - pad, max + pad)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

//! Deterministic SVG drawings of plane tropical curves.
//!
//! Rays are cut where they leave a frame: the bounding box of the drawing,
//! or with `frame` set, a scaled copy of the Newton polygon, whose sides are
//! orthogonal to the rays that cross them.

use std::fmt::Write;

use tropico::diagram::DiagramSpec;
use tropico::lattice::Sl2;
use tropico::rational::{int, to_f64};
use tropico::realize::PointConfig;
use tropico::tropical::{DualSubdivision, PlaneTropicalCurve};
use tropico::{LatticePolygon, LatticeVector, Point};

type V2 = (f64, f64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub weight_labels: bool,
    pub marking_labels: bool,
    pub frame: bool,
}

impl RenderStyle {
    pub fn new(
        width: u32,
        height: u32,
        margin: u32,
        weight_labels: bool,
        marking_labels: bool,
        frame: bool,
    ) -> Result<Self, String> {
        if width == 0 || height == 0 || 2 * margin >= width.min(height) {
            return Err(format!("drawing area {width}x{height} with margin {margin} is empty"));
        }
        Ok(RenderStyle { width, height, margin, weight_labels, marking_labels, frame })
    }
}

/// What to draw besides the curve.
pub struct Scene<'a> {
    pub curve: &'a PlaneTropicalCurve,
    /// Marked points with their labels.
    pub points: Vec<(Point, String)>,
    /// Full lines given by a point and a direction.
    pub lines: Vec<(Point, LatticeVector)>,
    /// Drawn in a second panel to the right.
    pub subdivision: Option<(&'a DualSubdivision, &'a LatticePolygon)>,
}

impl<'a> Scene<'a> {
    pub fn new(curve: &'a PlaneTropicalCurve) -> Self {
        Scene { curve, points: Vec::new(), lines: Vec::new(), subdivision: None }
    }
}

/// The lines holding the fixed tangency points of a configuration.
pub fn alpha_lines(cfg: &PointConfig, spec: &DiagramSpec) -> tropico::Result<Vec<(Point, LatticeVector)>> {
    let back = Sl2::normalizing(spec.direction())?.inverse();
    Ok(cfg
        .omega_minus
        .iter()
        .chain(&cfg.omega_plus)
        .map(|w| (Point::new(w.clone(), int(0)).transform(&back.0), spec.direction()))
        .collect())
}

fn f(p: &Point) -> V2 {
    (to_f64(&p.x), to_f64(&p.y))
}

fn vf(v: LatticeVector) -> V2 {
    (v.x as f64, v.y as f64)
}

fn dot(a: V2, b: V2) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn along(p: V2, u: V2, t: f64) -> V2 {
    (p.0 + t * u.0, p.1 + t * u.1)
}

/// A convex polygon, counterclockwise.
struct Frame {
    corners: Vec<V2>,
}

impl Frame {
    fn rectangle(lo: V2, hi: V2) -> Frame {
        Frame { corners: vec![lo, (hi.0, lo.1), hi, (lo.0, hi.1)] }
    }

    fn sides(&self) -> impl Iterator<Item = (V2, V2)> + '_ {
        let n = self.corners.len();
        (0..n).map(move |i| {
            let (a, b) = (self.corners[i], self.corners[(i + 1) % n]);
            (a, (b.1 - a.1, a.0 - b.0))
        })
    }

    /// Parameter range of `p + t·u` inside the frame.
    fn clip(&self, p: V2, u: V2) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (a, n) in self.sides() {
            let (num, den) = (dot(n, sub(a, p)), dot(n, u));
            if den > 0.0 {
                hi = hi.min(num / den);
            } else if den < 0.0 {
                lo = lo.max(num / den);
            }
        }
        (lo, hi)
    }

    fn bounds(&self) -> (V2, V2) {
        let xs = self.corners.iter().map(|c| c.0);
        let ys = self.corners.iter().map(|c| c.1);
        (
            (xs.clone().fold(f64::INFINITY, f64::min), ys.clone().fold(f64::INFINITY, f64::min)),
            (xs.fold(f64::NEG_INFINITY, f64::max), ys.fold(f64::NEG_INFINITY, f64::max)),
        )
    }
}

fn bounding_frame(pts: &[V2]) -> Frame {
    let lo = pts.iter().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
    let hi = pts.iter().fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
    let pad = (0.25 * (hi.0 - lo.0).max(hi.1 - lo.1)).max(1.0);
    Frame::rectangle((lo.0 - pad, lo.1 - pad), (hi.0 + pad, hi.1 + pad))
}

/// `c + s·(Δ − g)` with `c` the centre of the points and `g` the centroid
/// of `Δ`, scaled to hold every point with room to spare.
fn polygon_frame(pts: &[V2], newton: &LatticePolygon) -> Frame {
    let verts: Vec<V2> = newton.vertices().iter().map(|&v| vf(v)).collect();
    let n = verts.len() as f64;
    let g = (verts.iter().map(|v| v.0).sum::<f64>() / n, verts.iter().map(|v| v.1).sum::<f64>() / n);
    let c = (
        pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64,
        pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64,
    );
    let unit = Frame { corners: verts.iter().map(|&v| sub(v, g)).collect() };
    let mut need: f64 = 0.0;
    for (a, normal) in unit.sides() {
        let h = dot(normal, a);
        for &p in pts {
            need = need.max(dot(normal, sub(p, c)) / h);
        }
    }
    let (lo, hi) = unit.bounds();
    let size = (hi.0 - lo.0).max(hi.1 - lo.1);
    let s = 1.3 * need + 2.0 / size;
    Frame { corners: unit.corners.iter().map(|&v| along(c, v, s)).collect() }
}

/// World-to-pixel map of one panel.
struct View {
    scale: f64,
    origin: V2,
    lo: V2,
    height: f64,
}

impl View {
    fn fit(lo: V2, hi: V2, x0: f64, style: &RenderStyle) -> View {
        let m = style.margin as f64;
        let (w, h) = (style.width as f64 - 2.0 * m, style.height as f64 - 2.0 * m);
        let (bw, bh) = ((hi.0 - lo.0).max(1e-9), (hi.1 - lo.1).max(1e-9));
        let scale = (w / bw).min(h / bh);
        let origin = (x0 + m + (w - scale * bw) / 2.0, m + (h - scale * bh) / 2.0);
        View { scale, origin, lo, height: scale * bh }
    }

    fn px(&self, p: V2) -> String {
        let x = self.origin.0 + self.scale * (p.0 - self.lo.0);
        let y = self.origin.1 + self.height - self.scale * (p.1 - self.lo.1);
        format!("{x:.2},{y:.2}")
    }

    fn xy(&self, p: V2) -> String {
        let (x, y) = self.px(p).split_once(',').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
        format!("x=\"{x}\" y=\"{y}\"")
    }
}

fn line(out: &mut String, view: &View, a: V2, b: V2, attrs: &str) {
    let (p, q) = (view.px(a), view.px(b));
    let (x1, y1) = p.split_once(',').unwrap();
    let (x2, y2) = q.split_once(',').unwrap();
    let _ = writeln!(out, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {attrs}/>");
}

fn polygon(out: &mut String, view: &View, corners: &[V2], attrs: &str) {
    let pts: Vec<String> = corners.iter().map(|&c| view.px(c)).collect();
    let _ = writeln!(out, "<polygon points=\"{}\" {attrs}/>", pts.join(" "));
}

fn stroke(weight: u64) -> String {
    format!("stroke=\"black\" stroke-width=\"{:.1}\"", 1.5 * weight as f64)
}

fn draw_curve(out: &mut String, scene: &Scene, style: &RenderStyle) {
    let c = scene.curve;
    let verts: Vec<V2> = c.vertices.iter().map(f).collect();
    let mut anchors = verts.clone();
    anchors.extend(scene.points.iter().map(|(p, _)| f(p)));
    let frame = match (style.frame, c.newton_polygon_of()) {
        (true, Ok(newton)) => polygon_frame(&anchors, &newton),
        _ => bounding_frame(&anchors),
    };
    let (lo, hi) = frame.bounds();
    let view = View::fit(lo, hi, 0.0, style);

    let attrs = if style.frame { "fill=\"none\" stroke=\"#888\"" } else { "fill=\"none\" stroke=\"#ddd\"" };
    polygon(out, &view, &frame.corners, attrs);
    for (p, u) in &scene.lines {
        let (p, u) = (f(p), vf(*u));
        let (t0, t1) = frame.clip(p, u);
        line(out, &view, along(p, u, t0), along(p, u, t1), "stroke=\"#36c\" stroke-dasharray=\"6 4\"");
    }
    for s in &c.segments {
        let (a, b) = (verts[s.from], verts[s.to]);
        line(out, &view, a, b, &stroke(s.weight));
        if style.weight_labels && s.weight > 1 {
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let _ = writeln!(out, "<text {} font-size=\"12\" fill=\"#c30\">{}</text>", view.xy(mid), s.weight);
        }
    }
    for r in &c.rays {
        let (p, u) = (verts[r.base], vf(r.direction));
        let (_, t) = frame.clip(p, u);
        let end = along(p, u, t.max(0.0));
        line(out, &view, p, end, &stroke(r.weight));
        if style.weight_labels && r.weight > 1 {
            let mid = along(p, u, t.max(0.0) / 2.0);
            let _ = writeln!(out, "<text {} font-size=\"12\" fill=\"#c30\">{}</text>", view.xy(mid), r.weight);
        }
    }
    for (p, label) in &scene.points {
        let q = f(p);
        let (x, y) = view.px(q).split_once(',').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"3.5\" fill=\"#c00\"/>");
        if style.marking_labels {
            let _ =
                writeln!(out, "<text {} dx=\"5\" dy=\"-5\" font-size=\"11\" fill=\"#c00\">{label}</text>", view.xy(q));
        }
    }
}

fn draw_subdivision(out: &mut String, sub: &DualSubdivision, newton: &LatticePolygon, style: &RenderStyle) {
    let (lo, hi) = newton.bounding_box();
    let view = View::fit(vf(lo), vf(hi), style.width as f64, style);
    for cell in &sub.cells {
        let corners: Vec<V2> = cell.vertices().iter().map(|&v| vf(v)).collect();
        polygon(out, &view, &corners, "fill=\"#f4f4f4\" stroke=\"black\"");
    }
    for (a, b) in &sub.segment_edges {
        line(out, &view, vf(*a), vf(*b), "stroke=\"black\" stroke-width=\"2\"");
    }
    for p in newton.lattice_points() {
        let (x, y) = view.px(vf(p)).split_once(',').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.5\" fill=\"black\"/>");
    }
}

pub fn render(scene: &Scene, style: &RenderStyle) -> String {
    let panels = if scene.subdivision.is_some() { 2 } else { 1 };
    let (w, h) = (style.width * panels, style.height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    draw_curve(&mut out, scene, style);
    if let Some((sub, newton)) = scene.subdivision {
        draw_subdivision(&mut out, sub, newton, style);
    }
    out.push_str("</svg>\n");
    out
}

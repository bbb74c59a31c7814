use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::constructions::FamilyTag;
use crate::error::{Error, Result};
use crate::formulas::RatioReport;
use crate::geometry::Point;
use crate::layout::FoldedLayout;
use crate::program::Presentation;

const PANEL_FILLS: [&str; 6] = [
    "#dbe9f6", "#f6e3c8", "#d9f0d3", "#eadcf2", "#f8d7d7", "#e8e8e8",
];
const STROKE: &str = "#1f2d3d";
const CREASE: &str = "#b03a2e";
const CENTERLINE: &str = "#2e86c1";
const CIRCLE: &str = "#7f8c8d";
const SERIES: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    /// Sideways offset per layer applied to each panel, in length units, so
    /// coincident edges can be told apart.
    pub epsilon_display: f64,
    pub show_creases: bool,
    pub show_circumcircle: bool,
    pub show_centerline: bool,
    /// Document units per length unit.
    pub scale: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            epsilon_display: 0.0,
            show_creases: true,
            show_circumcircle: false,
            show_centerline: true,
            scale: 100.0,
        }
    }
}

/// Fixed-point coordinate text; negative zero prints as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Maps layout coordinates to document coordinates with the y axis pointing down.
struct Frame {
    min: Point,
    max: Point,
    scale: f64,
}

impl Frame {
    fn around(points: &[Point], scale: f64) -> Self {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Point::new(min.x.min(p.x), min.y.min(p.y));
            max = Point::new(max.x.max(p.x), max.y.max(p.y));
        }
        let margin = 0.05 * (max.x - min.x).max(max.y - min.y).max(1e-9);
        Frame {
            min: min - Point::new(margin, margin),
            max: max + Point::new(margin, margin),
            scale,
        }
    }

    fn map(&self, p: Point) -> (String, String) {
        (
            num((p.x - self.min.x) * self.scale),
            num((self.max.y - p.y) * self.scale),
        )
    }

    fn size(&self) -> (String, String) {
        (
            num((self.max.x - self.min.x) * self.scale),
            num((self.max.y - self.min.y) * self.scale),
        )
    }

    fn header(&self) -> String {
        let (w, h) = self.size();
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
        )
    }

    fn points_attr(&self, points: &[Point]) -> String {
        points
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn path(&self, points: &[Point], closed: bool) -> String {
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x} {y}", if i == 0 { "M" } else { " L" });
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }

    fn line(&self, a: Point, b: Point, stroke: &str, width: f64) -> String {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        format!("<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n", num(width))
    }
}

/// SVG drawing of a folded layout. Panels are painted from the lowest layer
/// up, so upper layers cover lower ones.
pub fn to_svg(layout: &FoldedLayout, options: &RenderOptions) -> Result<String> {
    if layout.panels.is_empty() {
        return Err(Error::InvalidInput(
            "nothing to render: layout has no panels".into(),
        ));
    }
    if !(options.scale > 0.0 && options.scale.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "scale must be positive, got {}",
            options.scale
        )));
    }
    if !(options.epsilon_display >= 0.0) {
        return Err(Error::InvalidInput(
            "display epsilon must be nonnegative".into(),
        ));
    }

    let shifts: Vec<Point> = layout
        .panels
        .iter()
        .zip(&layout.centerline)
        .map(|(panel, c)| {
            c.direction().normalized().perp() * (options.epsilon_display * panel.layer as f64)
        })
        .collect();
    let placed: Vec<[Point; 4]> = layout
        .panels
        .iter()
        .zip(&shifts)
        .map(|(panel, &s)| panel.vertices.map(|v| v + s))
        .collect();

    let all: Vec<Point> = placed.iter().flatten().copied().collect();
    let count = all.len() as f64;
    let centroid = all.iter().fold(Point::ORIGIN, |acc, &p| acc + p) * (1.0 / count);
    let radius = all.iter().map(|p| p.distance(centroid)).fold(0.0, f64::max);
    let mut extent = all.clone();
    if options.show_circumcircle {
        extent.push(centroid - Point::new(radius, radius));
        extent.push(centroid + Point::new(radius, radius));
    }
    let frame = Frame::around(&extent, options.scale);
    let stroke_width = 0.01 * layout.source.width * options.scale;

    let mut out = frame.header();
    if options.show_circumcircle {
        let (cx, cy) = frame.map(centroid);
        let _ = writeln!(
            out,
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"none\" stroke=\"{CIRCLE}\" stroke-width=\"{}\"/>",
            num(radius * options.scale),
            num(stroke_width)
        );
    }
    let mut order: Vec<usize> = (0..layout.panels.len()).collect();
    order.sort_by_key(|&i| (layout.panels[i].layer, i));
    for &i in &order {
        let fill =
            PANEL_FILLS[layout.panels[i].layer.rem_euclid(PANEL_FILLS.len() as i64) as usize];
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"0.85\" stroke=\"{STROKE}\" stroke-width=\"{}\"/>",
            frame.points_attr(&placed[i]),
            num(stroke_width)
        );
        if options.show_creases {
            let v = placed[i];
            out.push_str(&frame.line(v[1], v[2], CREASE, stroke_width));
        }
    }
    if options.show_centerline {
        let mut points: Vec<Point> = layout
            .centerline
            .iter()
            .zip(&shifts)
            .map(|(c, &s)| c.start + s)
            .collect();
        let last = layout.centerline.len() - 1;
        points.push(layout.centerline[last].end + shifts[last]);
        let closed = layout.source.is_closed();
        if closed {
            points.pop();
        }
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"{CENTERLINE}\" stroke-width=\"{}\"/>",
            frame.path(&points, closed),
            num(stroke_width)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Chart of quotient against family parameter, one colour per family and
/// presentation, with horizontal guides at `4/π` and `2/π`. Rows without a
/// parameter are placed at their crossing number.
pub fn render_table_figure(reports: &[RatioReport]) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::InvalidInput("no rows to plot".into()));
    }
    let x_of = |r: &RatioReport| {
        r.family
            .parameter
            .map_or(r.crossing_number as f64, f64::from)
    };
    let xs: Vec<f64> = reports.iter().map(x_of).collect();
    let (x_lo, x_hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let y_hi = reports
        .iter()
        .map(|r| r.kusner_quotient)
        .fold(4.0 / PI, f64::max)
        * 1.1;
    let (width, height) = (6.0, 4.0);
    let to_plot = |x: f64, y: f64| {
        let span = (x_hi - x_lo).max(1.0);
        Point::new((x - x_lo + 0.5) / (span + 1.0) * width, y / y_hi * height)
    };
    let frame = Frame::around(&[Point::ORIGIN, Point::new(width, height)], 100.0);

    let mut out = frame.header();
    out.push_str(&frame.line(Point::ORIGIN, Point::new(width, 0.0), STROKE, 1.0));
    out.push_str(&frame.line(Point::ORIGIN, Point::new(0.0, height), STROKE, 1.0));
    for guide in [4.0 / PI, 2.0 / PI] {
        let y = to_plot(x_lo, guide).y;
        out.push_str(&frame.line(Point::new(0.0, y), Point::new(width, y), CIRCLE, 0.75));
    }

    let mut series: BTreeMap<(FamilyTag, bool), Vec<Point>> = BTreeMap::new();
    for (r, &x) in reports.iter().zip(&xs) {
        let truncated = r.presentation == Presentation::Truncated;
        series
            .entry((r.family.tag, truncated))
            .or_default()
            .push(to_plot(x, r.kusner_quotient));
    }
    for (k, points) in series.values_mut().enumerate() {
        let colour = SERIES[k % SERIES.len()];
        points.sort_by(|a, b| a.x.total_cmp(&b.x));
        if points.len() > 1 {
            let _ = writeln!(
                out,
                "<path d=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.0000\"/>",
                frame.path(points, false)
            );
        }
        for &p in points.iter() {
            let (cx, cy) = frame.map(p);
            let _ = writeln!(
                out,
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3.0000\" fill=\"{colour}\"/>"
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

use crate::angle::ExactAngle;
use crate::error::{Error, Result};
use crate::geometry::{Isometry, Point, Segment};
use crate::program::{CreaseSpec, FoldProgram, Presentation, StripLine};

/// Absolute tolerance on the closure of a closed ribbon (position and direction).
pub const CLOSURE_TOL: f64 = 1e-9;

/// One flat panel of a folded ribbon: the piece between consecutive creases.
///
/// Vertices run `bottom-left, bottom-right, top-right, top-left` in strip
/// terms, so sides 0 and 2 lie along the ribbon edges and are parallel.
#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    pub vertices: [Point; 4],
    pub parallel_pair: (usize, usize),
    pub layer: i64,
    /// Arclength interval of the panel's centerline on the unfolded strip.
    pub span: (f64, f64),
}

impl Panel {
    pub fn side(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[(i + 1) % 4])
    }

    /// The longer of the two parallel sides; the other may shrink to a point.
    fn reference_side(&self) -> (Segment, Segment) {
        let a = self.side(self.parallel_pair.0);
        let b = self.side(self.parallel_pair.1);
        if a.length() >= b.length() {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Perpendicular distance between the two parallel sides.
    pub fn separation(&self) -> f64 {
        let (long, short) = self.reference_side();
        let u = long.direction().normalized();
        u.cross(short.start - long.start).abs()
    }

    /// Whether the parallel pair really is parallel; a side of zero length
    /// is parallel to anything.
    pub fn is_parallel_pair_parallel(&self, tol: f64) -> bool {
        let (long, short) = self.reference_side();
        let u = long.direction().normalized();
        u.cross(short.direction()).abs() <= tol * long.length()
    }

    pub fn is_isosceles(&self, tol: f64) -> bool {
        let (l1, l2) = (self.side(1).length(), self.side(3).length());
        (l1 - l2).abs() <= tol * l1.max(l2).max(1.0)
    }

    /// Lengths of the two parallel sides, shorter first.
    pub fn parallel_lengths(&self) -> (f64, f64) {
        let a = self.side(self.parallel_pair.0).length();
        let b = self.side(self.parallel_pair.1).length();
        (a.min(b), a.max(b))
    }

    /// Sorted multiset of the six vertex-to-vertex distances, a congruence fingerprint.
    pub fn distance_signature(&self) -> [f64; 6] {
        let v = &self.vertices;
        let mut d = [
            v[0].distance(v[1]),
            v[1].distance(v[2]),
            v[2].distance(v[3]),
            v[3].distance(v[0]),
            v[0].distance(v[2]),
            v[1].distance(v[3]),
        ];
        d.sort_by(f64::total_cmp);
        d
    }
}

/// The placed panels of a folded ribbon together with its centerline.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldedLayout {
    pub panels: Vec<Panel>,
    /// One centerline segment per panel, in ribbon order.
    pub centerline: Vec<Segment>,
    pub source: FoldProgram,
}

/// Anything with a measurable centerline and width.
pub trait Measured {
    fn centerline_length(&self) -> f64;
    fn ribbon_width(&self) -> f64;

    /// Length-to-width ratio.
    fn ratio(&self) -> Result<f64> {
        let w = self.ribbon_width();
        if !(w > 0.0) {
            return Err(Error::InvalidInput(format!(
                "width must be positive, got {w}"
            )));
        }
        Ok(self.centerline_length() / w)
    }
}

impl Measured for FoldProgram {
    fn centerline_length(&self) -> f64 {
        self.length
    }
    fn ribbon_width(&self) -> f64 {
        self.width
    }
}

impl Measured for FoldedLayout {
    fn centerline_length(&self) -> f64 {
        self.centerline.iter().map(Segment::length).sum()
    }
    fn ribbon_width(&self) -> f64 {
        self.source.width
    }
}

pub fn centerline_length(item: &impl Measured) -> f64 {
    item.centerline_length()
}

pub fn ratio(item: &impl Measured) -> Result<f64> {
    item.ratio()
}

fn crease_reflection(c: &CreaseSpec) -> Isometry {
    Isometry::reflection_at(Point::new(c.position, 0.0), c.angle.radians())
}

/// Folds the strip along every crease in turn and places the panels.
pub fn layout(program: &FoldProgram) -> Result<FoldedLayout> {
    program.validate()?;
    let h = program.width / 2.0;
    let lines = program.boundary_lines();
    let layers = program.layers();

    // maps[i] carries panel i from strip coordinates to the plane.
    let mut maps = Vec::with_capacity(program.creases.len() + 1);
    maps.push(Isometry::IDENTITY);
    for c in &program.creases {
        let next = maps.last().unwrap().compose(&crease_reflection(c));
        maps.push(next);
    }

    if program.is_closed() {
        let end = maps[program.creases.len()];
        let seam = end.apply(Point::new(program.length, 0.0));
        let heading = end.apply_linear(Point::new(1.0, 0.0));
        let gap = seam.norm().max(heading.distance(Point::new(1.0, 0.0)));
        if !(gap <= CLOSURE_TOL) {
            return Err(Error::Closure(format!(
                "ribbon end misses its start by {gap:.3e}"
            )));
        }
    }

    let panel_count = program.panel_count();
    let mut panels = Vec::with_capacity(panel_count);
    let mut centerline = Vec::with_capacity(panel_count);
    for i in 0..panel_count {
        let (a, b): (StripLine, StripLine) = (lines[i], lines[i + 1]);
        let m = maps[i];
        let vertices = [
            m.apply(Point::new(a.at_height(-h), -h)),
            m.apply(Point::new(b.at_height(-h), -h)),
            m.apply(Point::new(b.at_height(h), h)),
            m.apply(Point::new(a.at_height(h), h)),
        ];
        centerline.push(Segment::new(
            m.apply(Point::new(a.position, 0.0)),
            m.apply(Point::new(b.position, 0.0)),
        ));
        panels.push(Panel {
            vertices,
            parallel_pair: (0, 2),
            layer: layers[i],
            span: (a.position, b.position),
        });
    }
    Ok(FoldedLayout {
        panels,
        centerline,
        source: program.clone(),
    })
}

/// Recovers the crease program from placed panels.
pub fn unfold(layout: &FoldedLayout) -> Result<FoldProgram> {
    let panels = &layout.panels;
    let first = panels
        .first()
        .ok_or_else(|| Error::InvalidInput("layout has no panels".into()))?;
    if panels.len() != layout.centerline.len() {
        return Err(Error::Inconsistent(
            "panel and centerline counts differ".into(),
        ));
    }
    let width = first.separation();
    for (i, p) in panels.iter().enumerate() {
        let w = p.separation();
        if (w - width).abs() > 1e-9 * width || !p.is_parallel_pair_parallel(1e-9) {
            return Err(Error::Inconsistent(format!(
                "panel {i} has width {w}, expected {width}"
            )));
        }
    }

    let closed = layout.source.presentation == Presentation::Closed;
    let crease_count = if closed {
        panels.len()
    } else {
        panels.len() - 1
    };
    let mut creases = Vec::with_capacity(crease_count);
    let mut position = first.span.1;
    for i in 0..crease_count {
        let panel = &panels[i];
        let seg = layout.centerline[i];
        if i > 0 {
            position += seg.length();
        }
        let e_s = seg.direction().normalized();
        let mut e_v = e_s.perp();
        if (panel.vertices[3] - panel.vertices[0]).dot(e_v) < 0.0 {
            e_v = -e_v;
        }
        let leg = panel.vertices[2] - panel.vertices[1];
        let theta = leg
            .dot(e_v)
            .atan2(leg.dot(e_s))
            .rem_euclid(std::f64::consts::PI);
        let angle = ExactAngle::from_radians(theta, 1_000_000, 1e-9).ok_or_else(|| {
            Error::Inconsistent(format!(
                "crease {i} angle {theta} is not a rational multiple of π"
            ))
        })?;
        let next_layer = panels[(i + 1) % panels.len()].layer;
        creases.push(CreaseSpec::new(position, angle, next_layer - panel.layer));
    }
    let length = if closed {
        layout.centerline.iter().map(Segment::length).sum()
    } else {
        creases.last().map_or(0.0, |c| c.position) + layout.centerline.last().unwrap().length()
    };
    FoldProgram::new(
        width,
        length,
        creases,
        layout.source.presentation,
        layout.source.label.clone(),
    )
}

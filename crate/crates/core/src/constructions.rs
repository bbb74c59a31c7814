use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::angle::ExactAngle;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::layout::FoldedLayout;
use crate::program::{CreaseSpec, FoldProgram, Presentation};

/// The `(p, q)` of a torus knot, with `p > q ≥ 2` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusKnotParams {
    pub p: u32,
    pub q: u32,
}

impl TorusKnotParams {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q < 2 || p <= q {
            return Err(Error::InvalidInput(format!(
                "torus knot ({p}, {q}) needs p > q ≥ 2"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!(
                "({p}, {q}) is a link, not a knot"
            )));
        }
        Ok(TorusKnotParams { p, q })
    }
}

impl fmt::Display for TorusKnotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    OddWrap,
    StarPolygon,
    Pinwheel,
    EvenWrapPlus2,
    EvenWrapPlus4,
    Short52,
    Short72,
    Rect74,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 8] = [
        FamilyTag::OddWrap,
        FamilyTag::StarPolygon,
        FamilyTag::Pinwheel,
        FamilyTag::EvenWrapPlus2,
        FamilyTag::EvenWrapPlus4,
        FamilyTag::Short52,
        FamilyTag::Short72,
        FamilyTag::Rect74,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::OddWrap => "odd_wrap",
            FamilyTag::StarPolygon => "star_polygon",
            FamilyTag::Pinwheel => "pinwheel",
            FamilyTag::EvenWrapPlus2 => "even_wrap_plus2",
            FamilyTag::EvenWrapPlus4 => "even_wrap_plus4",
            FamilyTag::Short52 => "short_52",
            FamilyTag::Short72 => "short_72",
            FamilyTag::Rect74 => "rect_74",
        }
    }

    /// Whether the family takes an integer parameter.
    pub fn is_parametric(self) -> bool {
        !matches!(
            self,
            FamilyTag::Short52 | FamilyTag::Short72 | FamilyTag::Rect74
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    /// Accepts the canonical names, with `-` in place of `_` and without the
    /// underscore before digits (`rect74`, `even-wrap-plus2`).
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .collect::<String>()
            .to_ascii_lowercase();
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().replace('_', "") == key)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

/// A construction family together with its parameter (`q`, or `p` for star polygons).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub tag: FamilyTag,
    pub parameter: Option<u32>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag, parameter: Option<u32>) -> Result<Self> {
        let id = FamilyId { tag, parameter };
        match (tag.is_parametric(), parameter) {
            (true, None) => return Err(Error::Parameter(format!("{tag} needs a parameter"))),
            (false, Some(_)) => return Err(Error::Parameter(format!("{tag} takes no parameter"))),
            _ => {}
        }
        if let Some(k) = parameter {
            let ok = match tag {
                FamilyTag::OddWrap | FamilyTag::Pinwheel => k >= 2,
                FamilyTag::StarPolygon => k >= 7 && k % 2 == 1,
                FamilyTag::EvenWrapPlus2 | FamilyTag::EvenWrapPlus4 => k >= 3 && k % 2 == 1,
                _ => true,
            };
            if !ok {
                return Err(Error::Parameter(format!(
                    "{tag} does not accept parameter {k}"
                )));
            }
        }
        Ok(id)
    }

    pub fn fixed(tag: FamilyTag) -> Result<Self> {
        Self::new(tag, None)
    }

    /// Number of sides of the polygon the ribbon wraps, for polygon families.
    pub fn polygon_sides(&self) -> Option<u32> {
        let k = self.parameter?;
        Some(match self.tag {
            FamilyTag::OddWrap | FamilyTag::Pinwheel => 2 * k + 1,
            FamilyTag::StarPolygon => k,
            FamilyTag::EvenWrapPlus2 => 2 * k + 2,
            FamilyTag::EvenWrapPlus4 => 2 * k + 4,
            _ => return None,
        })
    }

    /// The torus knot the construction claims to tie; `None` for 7₄.
    pub fn knot(&self) -> Option<TorusKnotParams> {
        let (p, q) = match (self.tag, self.parameter) {
            (FamilyTag::OddWrap, Some(q)) => (q + 1, q),
            (FamilyTag::StarPolygon, Some(p)) => (p, 2),
            (FamilyTag::Pinwheel, Some(q)) => (2 * q + 1, q),
            (FamilyTag::EvenWrapPlus2, Some(q)) => (2 * q + 2, q),
            (FamilyTag::EvenWrapPlus4, Some(q)) => (2 * q + 4, q),
            (FamilyTag::Short52, None) => (5, 2),
            (FamilyTag::Short72, None) => (7, 2),
            _ => return None,
        };
        TorusKnotParams::new(p, q).ok()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(k) => write!(f, "{}({k})", self.tag),
            None => write!(f, "{}", self.tag),
        }
    }
}

/// Default ε for the short presentations, as a fraction of the width.
pub const DEFAULT_SHORT_EPSILON: f64 = 1e-3;

/// Builds any family's program. `epsilon` is used only by the short
/// presentations, as an absolute gap.
pub fn build(
    family: &FamilyId,
    presentation: Presentation,
    epsilon: Option<f64>,
) -> Result<FoldProgram> {
    if presentation == Presentation::Truncated && family.tag != FamilyTag::OddWrap {
        return Err(Error::NotApplicable(format!(
            "{family} has no truncated presentation"
        )));
    }
    let k = family.parameter.unwrap_or(0);
    let short_epsilon = |w: f64| epsilon.unwrap_or(DEFAULT_SHORT_EPSILON * w);
    match family.tag {
        FamilyTag::OddWrap => build_odd_wrap(k, presentation),
        FamilyTag::StarPolygon => build_star_polygon(k),
        FamilyTag::Pinwheel => build_pinwheel(k),
        FamilyTag::EvenWrapPlus2 => build_even_wrap(k, EvenVariant::Plus2),
        FamilyTag::EvenWrapPlus4 => build_even_wrap(k, EvenVariant::Plus4),
        FamilyTag::Short52 => build_short_52(short_epsilon(SHORT_WIDTH)),
        FamilyTag::Short72 => build_short_72(short_epsilon(SHORT_WIDTH)),
        FamilyTag::Rect74 => build_74(),
    }
}

/// Assembles a program from per-panel centerline lengths, the turn of the
/// centerline at each fold, and per-panel layers.
///
/// Closed programs have one fold per panel (the last returns to panel 0)
/// and the seam sits at the middle of panel 0. Truncated programs have one
/// fold fewer than panels.
fn program_from_turns(
    width: f64,
    lengths: &[f64],
    turns: &[ExactAngle],
    layers: &[i64],
    presentation: Presentation,
    label: String,
) -> Result<FoldProgram> {
    let n = lengths.len();
    let folds = match presentation {
        Presentation::Closed => n,
        Presentation::Truncated => n - 1,
    };
    assert_eq!(turns.len(), folds, "one turn per fold");
    assert_eq!(layers.len(), n, "one layer per panel");
    let mut position = match presentation {
        Presentation::Closed => lengths[0] / 2.0,
        Presentation::Truncated => lengths[0],
    };
    let mut creases = Vec::with_capacity(folds);
    for (k, turn) in turns.iter().enumerate() {
        // Folding at angle θ turns the centerline by ±2θ, the sign
        // alternating with each reflection of the strip.
        let half = turn.scale(1, 2)?;
        let angle = if k % 2 == 0 { half } else { half.supplement() };
        if !angle.is_open_half_turn() {
            return Err(Error::Parameter(format!(
                "fold {k} does not turn the ribbon"
            )));
        }
        creases.push(CreaseSpec::new(
            position,
            angle,
            layers[(k + 1) % n] - layers[k],
        ));
        if k + 1 < n {
            position += lengths[k + 1];
        }
    }
    let total = lengths.iter().sum();
    FoldProgram::new(width, total, creases, presentation, label)
}

fn polygon_turn(steps: u32, sides: u32) -> ExactAngle {
    ExactAngle::new(2 * steps as i64, sides as i64).expect("positive side count")
}

/// Dimensions of one wrap panel. `base` is the long parallel side and `top`
/// the short one; for odd wraps the polygon has unit sides.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PanelShape {
    pub width: f64,
    pub centerline: f64,
    pub base: f64,
    pub top: f64,
}

pub fn odd_wrap_shape(q: u32) -> PanelShape {
    let n = (2 * q + 1) as f64;
    let width = (PI / (2.0 * n)).cos();
    PanelShape {
        width,
        centerline: width / (PI / n).tan(),
        base: 1.0 / (2.0 * (PI / (2.0 * n)).sin()),
        top: (3.0 * PI / (2.0 * n)).cos() / (PI / n).sin(),
    }
}

pub fn star_polygon_shape(p: u32) -> PanelShape {
    let x = 2.0 * PI / p as f64;
    PanelShape {
        width: x.sin(),
        centerline: 1.0 + x.cos(),
        base: 1.0 + 2.0 * x.cos(),
        top: 1.0,
    }
}

pub fn pinwheel_shape(q: u32) -> PanelShape {
    let n = (2 * q + 1) as f64;
    let width = (PI / (2.0 * n)).cos();
    let top = 2.0 * width / (PI / n).tan();
    let base = 2.0 * width / (PI / n).sin();
    PanelShape {
        width,
        centerline: (base + top) / 2.0,
        base,
        top,
    }
}

pub fn even_wrap_shape(q: u32, variant: EvenVariant) -> PanelShape {
    let n = variant.sides(q) as f64;
    let alpha = q as f64 * PI / n;
    let width = alpha.sin();
    let centerline = width / (PI / n).tan();
    let slant = width / alpha.tan();
    PanelShape {
        width,
        centerline,
        base: centerline + slant,
        top: centerline - slant,
    }
}

/// Radius of the circle through the vertices of a unit-side regular `n`-gon.
pub fn circumradius(sides: u32) -> f64 {
    1.0 / (2.0 * (PI / sides as f64).sin())
}

/// Layers of the closed `(q+1, q)` wrap: every second panel counted back
/// from the last one sits one layer up, `q − 1` of them in all.
fn odd_wrap_layers(q: u32) -> Vec<i64> {
    let n = (2 * q + 1) as usize;
    let mut layers = vec![0; n];
    for k in 0..(q as usize - 1) {
        layers[n - 1 - 2 * k] = 1;
    }
    layers
}

pub fn build_odd_wrap(q: u32, presentation: Presentation) -> Result<FoldProgram> {
    FamilyId::new(FamilyTag::OddWrap, Some(q))?;
    let sides = 2 * q + 1;
    let shape = odd_wrap_shape(q);
    let panels = match presentation {
        Presentation::Closed => sides as usize,
        Presentation::Truncated => 2 * q as usize,
    };
    let folds = if presentation == Presentation::Closed {
        panels
    } else {
        panels - 1
    };
    let mut layers = odd_wrap_layers(q);
    layers.truncate(panels);
    program_from_turns(
        shape.width,
        &vec![shape.centerline; panels],
        &vec![polygon_turn(q, sides); folds],
        &layers,
        presentation,
        format!("odd_wrap q={q} ({},{}) {presentation}", q + 1, q),
    )
}

pub fn build_star_polygon(p: u32) -> Result<FoldProgram> {
    FamilyId::new(FamilyTag::StarPolygon, Some(p))?;
    let shape = star_polygon_shape(p);
    let n = p as usize;
    program_from_turns(
        shape.width,
        &vec![shape.centerline; n],
        &vec![polygon_turn(2, p); n],
        &vec![0; n],
        Presentation::Closed,
        format!("star_polygon p={p} ({p},2) closed"),
    )
}

pub fn build_pinwheel(q: u32) -> Result<FoldProgram> {
    FamilyId::new(FamilyTag::Pinwheel, Some(q))?;
    let sides = 2 * q + 1;
    let shape = pinwheel_shape(q);
    let n = sides as usize;
    program_from_turns(
        shape.width,
        &vec![shape.centerline; n],
        &vec![polygon_turn(q, sides); n],
        &vec![0; n],
        Presentation::Closed,
        format!("pinwheel q={q} ({sides},{q}) closed"),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvenVariant {
    Plus2,
    Plus4,
}

impl EvenVariant {
    pub fn sides(self, q: u32) -> u32 {
        match self {
            EvenVariant::Plus2 => 2 * q + 2,
            EvenVariant::Plus4 => 2 * q + 4,
        }
    }

    pub fn tag(self) -> FamilyTag {
        match self {
            EvenVariant::Plus2 => FamilyTag::EvenWrapPlus2,
            EvenVariant::Plus4 => FamilyTag::EvenWrapPlus4,
        }
    }
}

pub fn build_even_wrap(q: u32, variant: EvenVariant) -> Result<FoldProgram> {
    FamilyId::new(variant.tag(), Some(q))?;
    let sides = variant.sides(q);
    let shape = even_wrap_shape(q, variant);
    let n = sides as usize;
    program_from_turns(
        shape.width,
        &vec![shape.centerline; n],
        &vec![polygon_turn(q, sides); n],
        &vec![0; n],
        Presentation::Closed,
        format!("{} q={q} ({sides},{q}) closed", variant.tag()),
    )
}

/// Width shared by both short presentations: the pentagram wrap of a unit pentagon.
pub const SHORT_WIDTH: f64 = 0.951_056_516_295_153_5;

/// A closed ribbon given by panel headings (in units of π/5), centerline
/// lengths, and layers.
fn pentagram_ribbon(
    headings: &[i64],
    lengths: &[f64],
    layers: &[i64],
    label: String,
) -> Result<FoldProgram> {
    let n = headings.len();
    let turns: Vec<ExactAngle> = (0..n)
        .map(|k| ExactAngle::new(headings[(k + 1) % n] - headings[k], 5))
        .collect::<Result<_>>()?;
    program_from_turns(
        SHORT_WIDTH,
        lengths,
        &turns,
        layers,
        Presentation::Closed,
        label,
    )
}

fn check_short_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.1 * SHORT_WIDTH) {
        return Err(Error::Parameter(format!(
            "epsilon {epsilon} outside (0, 0.1·w)"
        )));
    }
    Ok(())
}

/// Headings of the short `(5, 2)` ribbon: a pentagram whose first side is
/// run three times, out and back and out again, with hairpin folds.
const SHORT_52_HEADINGS: [i64; 7] = [0, 4, 8, 2, 6, 0, 5];
const SHORT_52_LAYERS: [i64; 7] = [0, 0, 2, 0, 2, 2, 1];

pub fn build_short_52(epsilon: f64) -> Result<FoldProgram> {
    check_short_epsilon(epsilon)?;
    let a = star_polygon_shape(5).centerline;
    let lengths = [a + epsilon, a, a, a, a, a + epsilon, a + 2.0 * epsilon];
    pentagram_ribbon(
        &SHORT_52_HEADINGS,
        &lengths,
        &SHORT_52_LAYERS,
        format!("short_52 (5,2) epsilon={epsilon}"),
    )
}

/// Headings of the short `(7, 2)` ribbon: a pentagram with two sides run three times.
const SHORT_72_HEADINGS: [i64; 9] = [0, 5, 0, 4, 9, 4, 8, 2, 6];
const SHORT_72_LAYERS: [i64; 9] = [0, 3, 1, 1, 0, 2, 1, 1, 1];

pub fn build_short_72(epsilon: f64) -> Result<FoldProgram> {
    check_short_epsilon(epsilon)?;
    let a = star_polygon_shape(5).centerline;
    let e = epsilon;
    let lengths = [
        a + e,
        a + 2.0 * e,
        a + e,
        a + e,
        a + 2.0 * e,
        a + e,
        a,
        a,
        a,
    ];
    pentagram_ribbon(
        &SHORT_72_HEADINGS,
        &lengths,
        &SHORT_72_LAYERS,
        format!("short_72 (7,2) epsilon={epsilon}"),
    )
}

/// Per-panel layers of the 7₄ ribbon: four laps of a 1×2 rectangular circuit.
pub(crate) const RECT_74_LAYERS: [i64; 16] = [0, 4, 2, 5, 1, 0, 1, 0, 3, 2, 5, 4, 4, 1, 4, 1];

/// The 7₄ ribbon: a unit-width ribbon wound four times around the centres
/// of a 2×3 block of unit cells, folding at 45° in every corner.
pub fn build_74() -> Result<FoldProgram> {
    let lengths: Vec<f64> = (0..16)
        .map(|k| if k % 2 == 0 { 1.0 } else { 2.0 })
        .collect();
    let turns = vec![ExactAngle::RIGHT; 16];
    program_from_turns(
        1.0,
        &lengths,
        &turns,
        &RECT_74_LAYERS,
        Presentation::Closed,
        "rect_74 7_4 closed".into(),
    )
}

/// Centroid of all panel vertices; the polygon centre for the symmetric wraps.
pub fn layout_center(layout: &FoldedLayout) -> Point {
    let count = (4 * layout.panels.len()) as f64;
    let sum = layout
        .panels
        .iter()
        .flat_map(|p| p.vertices)
        .fold(Point::ORIGIN, |acc, v| acc + v);
    sum * (1.0 / count)
}

/// The uncovered region around the centre of a wrap, as a convex polygon in
/// counterclockwise order, or `None` when some panel covers the centre
/// (touching counts as covering).
pub fn central_hole(layout: &FoldedLayout, tol: f64) -> Option<Vec<Point>> {
    let center = layout_center(layout);
    // For each panel, the side line that separates it from the centre,
    // stored as (unit normal pointing away from the centre, distance).
    let mut walls: Vec<(Point, f64)> = Vec::new();
    for panel in &layout.panels {
        let orientation = (panel.vertices[1] - panel.vertices[0])
            .cross(panel.vertices[2] - panel.vertices[0])
            .signum();
        let mut best: Option<(Point, f64)> = None;
        for i in 0..4 {
            let side = panel.side(i);
            let inward = side.direction().normalized().perp() * orientation;
            // Positive when the centre lies outside this side.
            let outside = -(center - side.start).dot(inward);
            if best.is_none_or(|(_, d)| outside > d) {
                best = Some((-inward, outside));
            }
        }
        let (_, gap) = best?;
        if gap <= tol {
            return None;
        }
        let (normal, _) = best.unwrap();
        // `normal` points from the panel towards the centre; flip it to face outward.
        walls.push((-normal, gap));
    }
    walls.sort_by(|a, b| a.0.y.atan2(a.0.x).total_cmp(&b.0.y.atan2(b.0.x)));
    walls.dedup_by(|a, b| a.0.distance(b.0) < 1e-9 && (a.1 - b.1).abs() < tol);
    if walls.len() < 3 {
        return None;
    }
    let m = walls.len();
    let vertices = (0..m)
        .map(|i| {
            let (n1, d1) = walls[i];
            let (n2, d2) = walls[(i + 1) % m];
            let det = n1.cross(n2);
            let x = (d1 * n2.y - d2 * n1.y) / det;
            let y = (n1.x * d2 - n2.x * d1) / det;
            center + Point::new(x, y)
        })
        .collect();
    Some(vertices)
}

/// Whether a polygon is regular and centred at `center`: equal radii and equal
/// angular steps, both to `tol`.
pub fn is_regular_about(vertices: &[Point], center: Point, tol: f64) -> bool {
    let m = vertices.len();
    if m < 3 {
        return false;
    }
    let radius = vertices[0].distance(center);
    let step = 2.0 * PI / m as f64;
    (0..m).all(|i| {
        let a = vertices[i] - center;
        let b = vertices[(i + 1) % m] - center;
        let turn = a.cross(b).atan2(a.dot(b));
        (a.norm() - radius).abs() <= tol && (turn - step).abs() <= tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{layout, Measured};

    #[test]
    fn family_names_round_trip() {
        for tag in FamilyTag::ALL {
            assert_eq!(tag.name().parse::<FamilyTag>().unwrap(), tag);
        }
        assert_eq!("odd-wrap".parse::<FamilyTag>().unwrap(), FamilyTag::OddWrap);
        assert_eq!("rect74".parse::<FamilyTag>().unwrap(), FamilyTag::Rect74);
        assert!("hexagon".parse::<FamilyTag>().is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(FamilyId::new(FamilyTag::OddWrap, Some(1)).is_err());
        assert!(FamilyId::new(FamilyTag::StarPolygon, Some(9)).is_ok());
        assert!(FamilyId::new(FamilyTag::StarPolygon, Some(8)).is_err());
        assert!(FamilyId::new(FamilyTag::StarPolygon, Some(5)).is_err());
        assert!(FamilyId::new(FamilyTag::EvenWrapPlus2, Some(4)).is_err());
        assert!(FamilyId::new(FamilyTag::Rect74, Some(1)).is_err());
        assert!(matches!(
            build_odd_wrap(1, Presentation::Closed),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(build_short_52(0.0), Err(Error::Parameter(_))));
        assert!(matches!(build_short_72(0.2), Err(Error::Parameter(_))));
    }

    #[test]
    fn knots_claimed_by_families() {
        let knot = |tag, k| FamilyId::new(tag, k).unwrap().knot().unwrap();
        assert_eq!(
            knot(FamilyTag::OddWrap, Some(3)),
            TorusKnotParams { p: 4, q: 3 }
        );
        assert_eq!(
            knot(FamilyTag::EvenWrapPlus4, Some(3)),
            TorusKnotParams { p: 10, q: 3 }
        );
        assert_eq!(
            knot(FamilyTag::Short72, None),
            TorusKnotParams { p: 7, q: 2 }
        );
        assert!(FamilyId::fixed(FamilyTag::Rect74).unwrap().knot().is_none());
        assert!(TorusKnotParams::new(6, 3).is_err());
    }

    #[test]
    fn short_width_is_the_pentagram_width() {
        assert!((SHORT_WIDTH - star_polygon_shape(5).width).abs() < 1e-15);
    }

    #[test]
    fn truncated_only_for_odd_wraps() {
        let star = FamilyId::new(FamilyTag::StarPolygon, Some(7)).unwrap();
        assert!(matches!(
            build(&star, Presentation::Truncated, None),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn heptagon_truncated_ratio() {
        let program = build_odd_wrap(3, Presentation::Truncated).unwrap();
        assert_eq!(program.panel_count(), 6);
        let l = layout(&program).unwrap();
        let expected = 6.0 / (PI / 7.0).tan();
        assert!((l.ratio().unwrap() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn rectangle_ratio_is_24() {
        let l = layout(&build_74().unwrap()).unwrap();
        assert!((l.ratio().unwrap() - 24.0).abs() < 1e-12);
    }
}

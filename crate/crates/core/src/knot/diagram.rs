use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{collinear_overlap, Point, Segment};
use crate::layout::FoldedLayout;

/// Default displacement between adjacent layers, as a fraction of the ribbon width.
pub const DEFAULT_PERTURBATION: f64 = 1e-3;

/// Crossings closer than this (in segment parameter) to a vertex are rejected.
const VERTEX_MARGIN: f64 = 1e-9;
/// Heights closer than this at a crossing cannot be ordered.
const HEIGHT_TOL: f64 = 1e-9;

/// One passage of the knot through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub id: usize,
    pub over_arc: usize,
    pub under_in_arc: usize,
    pub under_out_arc: usize,
    pub sign: i8,
    pub position: Point,
}

/// A knot diagram as a signed Gauss code plus derived arc incidences.
///
/// Arcs are numbered from 0 starting just after the first under-passage, so
/// arc `k` ends at the `(k + 1)`-th under-passage.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotDiagram {
    pub gauss: Vec<GaussEntry>,
    pub crossings: Vec<Crossing>,
    pub arcs: usize,
}

impl KnotDiagram {
    /// Validates a Gauss code and derives arcs. Crossing ids must be `0..n`.
    pub fn from_gauss(gauss: Vec<GaussEntry>) -> Result<Self> {
        Self::with_positions(gauss, &[])
    }

    fn with_positions(gauss: Vec<GaussEntry>, positions: &[Point]) -> Result<Self> {
        if !gauss.len().is_multiple_of(2) {
            return Err(Error::InvalidDiagram("gauss code has odd length".into()));
        }
        let n = gauss.len() / 2;
        let mut seen = vec![(0usize, 0usize, 0i8); n];
        for e in &gauss {
            if e.crossing >= n {
                return Err(Error::InvalidDiagram(format!(
                    "crossing id {} out of range",
                    e.crossing
                )));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {} has sign {}",
                    e.crossing, e.sign
                )));
            }
            let slot = &mut seen[e.crossing];
            if e.over {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
            if slot.2 != 0 && slot.2 != e.sign {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {} has inconsistent signs",
                    e.crossing
                )));
            }
            slot.2 = e.sign;
        }
        if let Some(id) = seen.iter().position(|&(o, u, _)| o != 1 || u != 1) {
            return Err(Error::InvalidDiagram(format!(
                "crossing {id} is not passed once over and once under"
            )));
        }

        let len = gauss.len();
        let mut arc_of = vec![0usize; len];
        if n > 0 {
            let start = gauss
                .iter()
                .position(|e| !e.over)
                .expect("an under-passage exists");
            let mut arc = usize::MAX;
            for off in 0..len {
                let idx = (start + off) % len;
                if !gauss[idx].over {
                    arc = arc.wrapping_add(1);
                }
                arc_of[idx] = arc;
            }
        }
        let arcs = n.max(1);
        let mut crossings: Vec<Crossing> = (0..n)
            .map(|id| Crossing {
                id,
                over_arc: 0,
                under_in_arc: 0,
                under_out_arc: 0,
                sign: seen[id].2,
                position: positions.get(id).copied().unwrap_or(Point::ORIGIN),
            })
            .collect();
        for (idx, e) in gauss.iter().enumerate() {
            let c = &mut crossings[e.crossing];
            if e.over {
                c.over_arc = arc_of[idx];
            } else {
                c.under_out_arc = arc_of[idx];
                c.under_in_arc = (arc_of[idx] + arcs - 1) % arcs;
            }
        }
        Ok(KnotDiagram {
            gauss,
            crossings,
            arcs,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Gauss code as signed 1-based ids: positive for over, negative for under.
    pub fn signed_code(&self) -> Vec<i64> {
        self.gauss
            .iter()
            .map(|e| {
                let id = e.crossing as i64 + 1;
                if e.over {
                    id
                } else {
                    -id
                }
            })
            .collect()
    }

    /// Crossing signs indexed by crossing id.
    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code: Vec<String> = self.signed_code().iter().map(i64::to_string).collect();
        write!(f, "{}", code.join(" "))
    }
}

/// A straight piece of the perturbed centerline with linearly varying height.
#[derive(Clone, Copy, Debug)]
struct Piece {
    segment: Segment,
    heights: (f64, f64),
}

impl Piece {
    fn height(&self, t: f64) -> f64 {
        self.heights.0 + t * (self.heights.1 - self.heights.0)
    }
}

/// Ribbon heights: each panel sits at its integer layer and descends by half
/// a layer along its length, so equal-layer panels still stack consistently.
fn height_on_panel(layer: i64, fraction: f64) -> f64 {
    layer as f64 - fraction / 2.0
}

fn line_intersection(p: Point, u: Point, q: Point, v: Point) -> Point {
    let t = (q - p).cross(v) / u.cross(v);
    p + u * t
}

/// Closed polygon of the centerline with each panel pushed sideways in
/// proportion to its layer.
fn perturbed_pieces(layout: &FoldedLayout, offset: f64) -> Result<Vec<Piece>> {
    let n = layout.panels.len();
    let dirs: Vec<Point> = layout
        .centerline
        .iter()
        .map(|s| s.direction().normalized())
        .collect();
    let shifted: Vec<Point> = (0..n)
        .map(|i| {
            layout.centerline[i].start + dirs[i].perp() * (offset * layout.panels[i].layer as f64)
        })
        .collect();

    // Vertices where panel i hands over to panel i + 1.
    let mut folds: Vec<Vec<Point>> = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (u, v) = (dirs[i], dirs[j]);
        if u.cross(v).abs() > 1e-9 {
            folds.push(vec![line_intersection(shifted[i], u, shifted[j], v)]);
        } else if u.dot(v) < 0.0 {
            let fold = layout.centerline[i].end;
            folds.push(vec![
                fold + (shifted[i] - layout.centerline[i].start),
                fold + (shifted[j] - layout.centerline[j].start),
            ]);
        } else {
            return Err(Error::DegenerateDiagram(format!(
                "fold {i} does not change direction"
            )));
        }
    }

    let fraction = |i: usize, p: Point| {
        let c = layout.centerline[i];
        (p - c.start).dot(dirs[i]) / c.length()
    };
    let mut pieces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let layer = layout.panels[i].layer;
        let from = *folds[(i + n - 1) % n].last().unwrap();
        let to = folds[i][0];
        pieces.push(Piece {
            segment: Segment::new(from, to),
            heights: (
                height_on_panel(layer, fraction(i, from)),
                height_on_panel(layer, fraction(i, to)),
            ),
        });
        if folds[i].len() == 2 {
            let j = (i + 1) % n;
            let (a, b) = (folds[i][0], folds[i][1]);
            pieces.push(Piece {
                segment: Segment::new(a, b),
                heights: (
                    height_on_panel(layer, fraction(i, a)),
                    height_on_panel(layout.panels[j].layer, fraction(j, b)),
                ),
            });
        }
    }
    Ok(pieces)
}

/// Raw intersection parameters of two non-parallel segments' supporting lines.
fn segment_parameters(a: &Segment, b: &Segment) -> Option<(f64, f64)> {
    let (d1, d2) = (a.direction(), b.direction());
    let den = d1.cross(d2);
    if den.abs() <= 1e-12 * d1.norm() * d2.norm() {
        return None;
    }
    let w = b.start - a.start;
    Some((w.cross(d2) / den, w.cross(d1) / den))
}

fn trace_diagram(pieces: &[Piece], tol: f64) -> Result<KnotDiagram> {
    let m = pieces.len();
    // (position along the curve, crossing, over?)
    let mut events: Vec<(f64, usize, bool)> = Vec::new();
    let mut found: Vec<(i8, Point)> = Vec::new();
    let inside = |s: f64| s > -VERTEX_MARGIN && s < 1.0 + VERTEX_MARGIN;
    let interior = |s: f64| s > VERTEX_MARGIN && s < 1.0 - VERTEX_MARGIN;
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (&pieces[i], &pieces[j]);
            if collinear_overlap(&a.segment, &b.segment, tol) {
                return Err(Error::DegenerateDiagram(format!(
                    "pieces {i} and {j} overlap"
                )));
            }
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let Some((s, t)) = segment_parameters(&a.segment, &b.segment) else {
                continue;
            };
            if !(inside(s) && inside(t)) {
                continue;
            }
            if adjacent {
                // Neighbours meet only at their shared vertex.
                let shared = if j == i + 1 { (s, t) } else { (t, s) };
                if (shared.0 - 1.0).abs() <= VERTEX_MARGIN && shared.1.abs() <= VERTEX_MARGIN {
                    continue;
                }
                return Err(Error::DegenerateDiagram(format!(
                    "neighbouring pieces {i} and {j} cross"
                )));
            }
            if !(interior(s) && interior(t)) {
                return Err(Error::DegenerateDiagram(format!(
                    "pieces {i} and {j} meet at a vertex"
                )));
            }
            let (hi, hj) = (a.height(s), b.height(t));
            if (hi - hj).abs() < HEIGHT_TOL {
                return Err(Error::Layering(format!(
                    "pieces {i} and {j} cross at equal height {hi}"
                )));
            }
            let (over, under) = if hi > hj { (a, b) } else { (b, a) };
            let sign = if over.segment.direction().cross(under.segment.direction()) > 0.0 {
                1
            } else {
                -1
            };
            let id = found.len();
            found.push((sign, a.segment.at(s)));
            events.push((i as f64 + s, id, hi > hj));
            events.push((j as f64 + t, id, hj > hi));
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Renumber crossings by first appearance along the curve.
    let mut relabel = vec![usize::MAX; found.len()];
    let mut positions = Vec::with_capacity(found.len());
    let mut gauss = Vec::with_capacity(events.len());
    for &(_, id, over) in &events {
        if relabel[id] == usize::MAX {
            relabel[id] = positions.len();
            positions.push(found[id].1);
        }
        gauss.push(GaussEntry {
            crossing: relabel[id],
            over,
            sign: found[id].0,
        });
    }
    KnotDiagram::with_positions(gauss, &positions)
}

/// Rejects folds whose layer jump passes through another panel lying across the fold point.
fn check_fold_points(layout: &FoldedLayout, tol: f64) -> Result<()> {
    let n = layout.panels.len();
    for i in 0..n {
        let j = (i + 1) % n;
        let fold = layout.centerline[i].end;
        let before = height_on_panel(layout.panels[i].layer, 1.0);
        let after = height_on_panel(layout.panels[j].layer, 0.0);
        let (lo, hi) = (before.min(after), before.max(after));
        for (k, c) in layout.centerline.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (dist, t) = c.closest(fold);
            if dist > tol || t <= VERTEX_MARGIN || t >= 1.0 - VERTEX_MARGIN {
                continue;
            }
            let h = height_on_panel(layout.panels[k].layer, t);
            if h >= lo - HEIGHT_TOL && h <= hi + HEIGHT_TOL {
                return Err(Error::Layering(format!(
                    "fold {i} passes through panel {k}"
                )));
            }
        }
    }
    Ok(())
}

/// Extracts the knot diagram of a closed ribbon. `perturbation` is the
/// sideways displacement per layer as a fraction of the width; the result
/// must be unchanged at half the displacement.
pub fn extract_diagram(layout: &FoldedLayout, perturbation: f64) -> Result<KnotDiagram> {
    if !layout.source.is_closed() {
        return Err(Error::NotApplicable(
            "knot diagrams need a closed ribbon".into(),
        ));
    }
    if !(perturbation > 0.0 && perturbation < 0.1) {
        return Err(Error::InvalidInput(format!(
            "perturbation {perturbation} outside (0, 0.1)"
        )));
    }
    let width = layout.source.width;
    let scale = layout
        .centerline
        .iter()
        .map(Segment::length)
        .fold(width, f64::max);
    let tol = 1e-9 * scale;
    check_fold_points(layout, tol)?;
    let coarse = trace_diagram(&perturbed_pieces(layout, perturbation * width)?, tol)?;
    let fine = trace_diagram(&perturbed_pieces(layout, perturbation * width / 2.0)?, tol)?;
    if coarse.gauss != fine.gauss {
        return Err(Error::DegenerateDiagram(
            "diagram changes when the perturbation is halved".into(),
        ));
    }
    Ok(coarse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(crossing: usize, over: bool, sign: i8) -> GaussEntry {
        GaussEntry {
            crossing,
            over,
            sign,
        }
    }

    #[test]
    fn trefoil_code_has_three_arcs() {
        let g = vec![
            entry(0, true, 1),
            entry(1, false, 1),
            entry(2, true, 1),
            entry(0, false, 1),
            entry(1, true, 1),
            entry(2, false, 1),
        ];
        let d = KnotDiagram::from_gauss(g).unwrap();
        assert_eq!(d.arcs, 3);
        assert_eq!(d.signed_code(), vec![1, -2, 3, -1, 2, -3]);
        assert_eq!(d.to_string(), "1 -2 3 -1 2 -3");
        for c in &d.crossings {
            assert_ne!(c.under_in_arc, c.under_out_arc);
        }
    }

    #[test]
    fn malformed_codes_are_rejected() {
        let twice_over = vec![entry(0, true, 1), entry(0, true, 1)];
        assert!(matches!(
            KnotDiagram::from_gauss(twice_over),
            Err(Error::InvalidDiagram(_))
        ));
        let mixed_sign = vec![entry(0, true, 1), entry(0, false, -1)];
        assert!(matches!(
            KnotDiagram::from_gauss(mixed_sign),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(KnotDiagram::from_gauss(vec![entry(0, true, 1)]).is_err());
    }

    #[test]
    fn empty_code_is_the_unknot() {
        let d = KnotDiagram::from_gauss(vec![]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arcs, 1);
    }
}

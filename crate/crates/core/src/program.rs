use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::ExactAngle;
use crate::error::{Error, Result};

/// Geometric slack used when validating strip geometry.
pub(crate) const STRIP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    Closed,
    Truncated,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Presentation::Closed => "closed",
            Presentation::Truncated => "truncated",
        })
    }
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Presentation::Closed),
            "truncated" => Ok(Presentation::Truncated),
            other => Err(Error::InvalidInput(format!(
                "unknown presentation `{other}`"
            ))),
        }
    }
}

/// A fold line across the ribbon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CreaseSpec {
    /// Arclength along the unfolded centerline where the crease crosses it.
    pub position: f64,
    /// Angle between the crease line and the ribbon's forward edge direction.
    pub angle: ExactAngle,
    /// Layer change of the following panel relative to this one.
    pub layer_shift: i64,
}

impl CreaseSpec {
    pub fn new(position: f64, angle: ExactAngle, layer_shift: i64) -> Self {
        CreaseSpec {
            position,
            angle,
            layer_shift,
        }
    }
}

/// A line across the strip, in strip coordinates `(s, v)` with `v ∈ [-w/2, w/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct StripLine {
    pub position: f64,
    pub angle: f64,
}

impl StripLine {
    /// Arclength coordinate where the line meets the edge at height `v`.
    pub fn at_height(&self, v: f64) -> f64 {
        self.position + v * self.angle.cos() / self.angle.sin()
    }
}

/// A ribbon's crease sequence: the portable description of one construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldProgram {
    pub width: f64,
    /// Total centerline length of the ribbon (the loop length when closed).
    pub length: f64,
    pub creases: Vec<CreaseSpec>,
    pub presentation: Presentation,
    pub label: String,
}

impl FoldProgram {
    pub fn new(
        width: f64,
        length: f64,
        creases: Vec<CreaseSpec>,
        presentation: Presentation,
        label: impl Into<String>,
    ) -> Result<Self> {
        let program = FoldProgram {
            width,
            length,
            creases,
            presentation,
            label: label.into(),
        };
        program.validate()?;
        Ok(program)
    }

    pub fn is_closed(&self) -> bool {
        self.presentation == Presentation::Closed
    }

    pub fn panel_count(&self) -> usize {
        match self.presentation {
            Presentation::Closed => self.creases.len(),
            Presentation::Truncated => self.creases.len() + 1,
        }
    }

    /// Integer layer of every panel, accumulated from the crease shifts.
    /// For closed ribbons panel 0 straddles the seam.
    pub fn layers(&self) -> Vec<i64> {
        let mut layers = Vec::with_capacity(self.panel_count());
        let mut layer = 0;
        layers.push(layer);
        for c in self.creases.iter().take(self.panel_count() - 1) {
            layer += c.layer_shift;
            layers.push(layer);
        }
        layers
    }

    /// Boundary lines of each panel in strip coordinates, in order. Truncated
    /// strips get end cuts that mirror the neighbouring crease, so end panels
    /// are isosceles; a strip without creases has square ends.
    pub(crate) fn boundary_lines(&self) -> Vec<StripLine> {
        let mut lines = Vec::with_capacity(self.creases.len() + 2);
        let crease_lines = self.creases.iter().map(|c| StripLine {
            position: c.position,
            angle: c.angle.radians(),
        });
        match self.presentation {
            Presentation::Truncated => {
                let first = self
                    .creases
                    .first()
                    .map_or(std::f64::consts::FRAC_PI_2, |c| {
                        c.angle.supplement().radians()
                    });
                let last = self
                    .creases
                    .last()
                    .map_or(std::f64::consts::FRAC_PI_2, |c| {
                        c.angle.supplement().radians()
                    });
                lines.push(StripLine {
                    position: 0.0,
                    angle: first,
                });
                lines.extend(crease_lines);
                lines.push(StripLine {
                    position: self.length,
                    angle: last,
                });
            }
            Presentation::Closed => {
                let last = self.creases.last().expect("closed program has creases");
                // The last crease seen through the seam, flipped when the loop is one-sided.
                let angle = if self.creases.len() % 2 == 1 {
                    last.angle.supplement()
                } else {
                    last.angle
                };
                lines.push(StripLine {
                    position: last.position - self.length,
                    angle: angle.radians(),
                });
                lines.extend(crease_lines);
            }
        }
        lines
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedProgram(m));
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "width must be positive, got {}",
                self.width
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return bad(format!("length must be positive, got {}", self.length));
        }
        let mut prev = 0.0;
        for (i, c) in self.creases.iter().enumerate() {
            if !(c.position.is_finite() && c.position > prev) {
                return bad(format!(
                    "crease {i} position {} is not strictly increasing and positive",
                    c.position
                ));
            }
            if !c.angle.is_open_half_turn() {
                return bad(format!("crease {i} angle {} is outside (0, π)", c.angle));
            }
            prev = c.position;
        }
        if prev >= self.length {
            return bad(format!(
                "last crease at {prev} lies beyond the ribbon length {}",
                self.length
            ));
        }
        if self.is_closed() {
            if self.creases.len() < 2 {
                return bad("a closed ribbon needs at least two creases".into());
            }
            let total: i64 = self.creases.iter().map(|c| c.layer_shift).sum();
            if total != 0 {
                return bad(format!(
                    "layer shifts of a closed ribbon must sum to zero, got {total}"
                ));
            }
        }
        let h = self.width / 2.0;
        let lines = self.boundary_lines();
        for (i, pair) in lines.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            for v in [-h, h] {
                if b.at_height(v) - a.at_height(v) < -STRIP_TOL * self.length.max(1.0) {
                    return bad(format!(
                        "crease segment {i} crosses the next one inside the ribbon"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ProgramDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ProgramDoc = serde_json::from_str(text)?;
        doc.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreaseDoc {
    position: f64,
    angle_num: i64,
    angle_den: i64,
    layer_shift: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProgramDoc {
    width: f64,
    length: f64,
    presentation: Presentation,
    label: String,
    creases: Vec<CreaseDoc>,
}

impl From<&FoldProgram> for ProgramDoc {
    fn from(p: &FoldProgram) -> Self {
        ProgramDoc {
            width: p.width,
            length: p.length,
            presentation: p.presentation,
            label: p.label.clone(),
            creases: p
                .creases
                .iter()
                .map(|c| CreaseDoc {
                    position: c.position,
                    angle_num: c.angle.numerator(),
                    angle_den: c.angle.denominator() as i64,
                    layer_shift: c.layer_shift,
                })
                .collect(),
        }
    }
}

impl TryFrom<ProgramDoc> for FoldProgram {
    type Error = Error;
    fn try_from(doc: ProgramDoc) -> Result<Self> {
        if doc
            .creases
            .windows(2)
            .any(|w| !(w[0].position < w[1].position))
        {
            return Err(Error::MalformedProgram(
                "creases must be sorted by position".into(),
            ));
        }
        let creases = doc
            .creases
            .iter()
            .map(|c| {
                Ok(CreaseSpec::new(
                    c.position,
                    ExactAngle::new(c.angle_num, c.angle_den)?,
                    c.layer_shift,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        FoldProgram::new(doc.width, doc.length, creases, doc.presentation, doc.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(n: i64, d: i64) -> ExactAngle {
        ExactAngle::new(n, d).unwrap()
    }

    fn zigzag() -> FoldProgram {
        let creases = vec![
            CreaseSpec::new(1.0, angle(1, 3), 1),
            CreaseSpec::new(2.5, angle(2, 3), -1),
            CreaseSpec::new(4.0, angle(1, 3), 1),
        ];
        FoldProgram::new(1.0, 5.0, creases, Presentation::Truncated, "zigzag").unwrap()
    }

    #[test]
    fn json_round_trip() {
        let p = zigzag();
        let text = p.to_json().unwrap();
        assert!(text.contains("\"angle_num\": 2"));
        assert_eq!(FoldProgram::from_json(&text).unwrap(), p);
    }

    #[test]
    fn unsorted_json_rejected() {
        let text = r#"{"width":1,"length":5,"presentation":"truncated","label":"x","creases":[
            {"position":2,"angle_num":1,"angle_den":3,"layer_shift":1},
            {"position":1,"angle_num":2,"angle_den":3,"layer_shift":1}]}"#;
        assert!(matches!(
            FoldProgram::from_json(text),
            Err(Error::MalformedProgram(_))
        ));
    }

    #[test]
    fn rejects_bad_programs() {
        assert!(matches!(
            FoldProgram::new(0.0, 1.0, vec![], Presentation::Truncated, ""),
            Err(Error::InvalidInput(_))
        ));
        let flat = vec![CreaseSpec::new(1.0, ExactAngle::ZERO, 0)];
        assert!(FoldProgram::new(1.0, 2.0, flat, Presentation::Truncated, "").is_err());
        // Creases too close for their slant: the crease segments cross.
        let crossing = vec![
            CreaseSpec::new(1.0, angle(1, 6), 0),
            CreaseSpec::new(1.1, angle(5, 6), 0),
        ];
        assert!(matches!(
            FoldProgram::new(1.0, 3.0, crossing, Presentation::Truncated, ""),
            Err(Error::MalformedProgram(_))
        ));
        let beyond = vec![CreaseSpec::new(3.0, angle(1, 2), 0)];
        assert!(FoldProgram::new(1.0, 3.0, beyond, Presentation::Truncated, "").is_err());
        let unbalanced = vec![
            CreaseSpec::new(1.0, angle(1, 2), 1),
            CreaseSpec::new(2.0, angle(1, 2), 0),
        ];
        assert!(FoldProgram::new(1.0, 3.0, unbalanced, Presentation::Closed, "").is_err());
    }

    #[test]
    fn layers_accumulate() {
        assert_eq!(zigzag().layers(), vec![0, 1, 0, 1]);
        assert_eq!(zigzag().panel_count(), 4);
    }
}

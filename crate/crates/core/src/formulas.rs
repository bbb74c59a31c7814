use std::f64::consts::PI;
use std::fmt;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::angle::ExactAngle;
use crate::constructions::{build, FamilyId, FamilyTag, TorusKnotParams};
use crate::error::{Error, Result};
use crate::layout::{layout, Measured};
use crate::program::Presentation;

/// Crossing number of the 7₄ knot, which is not a torus knot.
pub const CROSSING_NUMBER_74: u64 = 7;

/// Conjectured truncated ribbonlength of the figure-eight knot. An imported
/// constant: no builder here produces this presentation.
pub const FIGURE_EIGHT_TRUNCATED_RIBBONLENGTH: f64 = 6.0 + 2.0 * std::f64::consts::SQRT_2;
pub const FIGURE_EIGHT_CROSSING_NUMBER: u64 = 4;

/// A value of the form `(numerator/denominator)·cot(angle)`, or a plain
/// rational when there is no angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub numerator: i64,
    pub denominator: i64,
    pub angle: Option<ExactAngle>,
}

impl ClosedForm {
    pub fn cot(coefficient: i64, angle: ExactAngle) -> Self {
        ClosedForm {
            numerator: coefficient,
            denominator: 1,
            angle: Some(angle),
        }
    }

    pub fn rational(numerator: i64, denominator: i64) -> Self {
        ClosedForm {
            numerator,
            denominator,
            angle: None,
        }
        .reduced()
    }

    fn reduced(self) -> Self {
        let g = self.numerator.gcd(&self.denominator).max(1);
        let sign = if self.denominator < 0 { -1 } else { 1 };
        ClosedForm {
            numerator: sign * self.numerator / g,
            denominator: sign * self.denominator / g,
            angle: self.angle,
        }
    }

    pub fn divided_by(self, k: u64) -> Self {
        ClosedForm {
            denominator: self.denominator * k as i64,
            ..self
        }
        .reduced()
    }

    pub fn value(&self) -> f64 {
        let c = self.numerator as f64 / self.denominator as f64;
        self.angle.map_or(c, |a| c * a.cot())
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coefficient = if self.denominator == 1 {
            self.numerator.to_string()
        } else if self.angle.is_some() {
            format!("({}/{})", self.numerator, self.denominator)
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        };
        match self.angle {
            None => f.write_str(&coefficient),
            Some(a) if self.numerator == 1 && self.denominator == 1 => write!(f, "cot({a})"),
            Some(a) => write!(f, "{coefficient}cot({a})"),
        }
    }
}

fn pi_over(n: u32) -> ExactAngle {
    ExactAngle::pi_over(n as i64).expect("positive denominator")
}

/// The closed-form length-to-width ratio of a construction.
pub fn closed_form_ratio(family: &FamilyId, presentation: Presentation) -> Result<ClosedForm> {
    let family = FamilyId::new(family.tag, family.parameter)?;
    if presentation == Presentation::Truncated && family.tag != FamilyTag::OddWrap {
        return Err(Error::NotApplicable(format!(
            "{family} has no truncated presentation"
        )));
    }
    let k = family.parameter.unwrap_or(0);
    Ok(match family.tag {
        FamilyTag::OddWrap => match presentation {
            Presentation::Truncated => ClosedForm::cot(2 * k as i64, pi_over(2 * k + 1)),
            Presentation::Closed => ClosedForm::cot((2 * k + 1) as i64, pi_over(2 * k + 1)),
        },
        FamilyTag::StarPolygon => ClosedForm::cot(k as i64, pi_over(k)),
        FamilyTag::Pinwheel => ClosedForm::cot((2 * k + 1) as i64, pi_over(2 * (2 * k + 1))),
        FamilyTag::EvenWrapPlus2 | FamilyTag::EvenWrapPlus4 => {
            let n = family.polygon_sides().expect("polygon family");
            ClosedForm::cot(n as i64, pi_over(n))
        }
        FamilyTag::Short52 => ClosedForm::cot(7, pi_over(5)),
        FamilyTag::Short72 => ClosedForm::cot(9, pi_over(5)),
        FamilyTag::Rect74 => ClosedForm::rational(24, 1),
    })
}

/// `min{p(q−1), q(p−1)}` for the `(p, q)` torus knot.
pub fn crossing_number(p: u64, q: u64) -> Result<u64> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!(
            "({p}, {q}) is not a nontrivial torus knot"
        )));
    }
    Ok((p * (q - 1)).min(q * (p - 1)))
}

pub fn family_crossing_number(family: &FamilyId) -> Result<u64> {
    match family.knot() {
        Some(TorusKnotParams { p, q }) => crossing_number(p as u64, q as u64),
        None if family.tag == FamilyTag::Rect74 => Ok(CROSSING_NUMBER_74),
        None => Err(Error::Parameter(format!("{family} does not name a knot"))),
    }
}

/// Closed-form ratio divided by the crossing number.
pub fn kusner_quotient(family: &FamilyId, presentation: Presentation) -> Result<ClosedForm> {
    Ok(closed_form_ratio(family, presentation)?.divided_by(family_crossing_number(family)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limit {
    Finite { value: f64, symbol: &'static str },
    Divergent,
}

/// Limit of the family's quotient as its parameter grows.
pub fn limit_constant(tag: FamilyTag) -> Result<Limit> {
    match tag {
        FamilyTag::OddWrap | FamilyTag::Pinwheel => Ok(Limit::Finite {
            value: 4.0 / PI,
            symbol: "4/π",
        }),
        FamilyTag::EvenWrapPlus2 | FamilyTag::EvenWrapPlus4 => Ok(Limit::Finite {
            value: 2.0 / PI,
            symbol: "2/π",
        }),
        FamilyTag::StarPolygon => Ok(Limit::Divergent),
        _ => Err(Error::NotApplicable(format!(
            "{tag} is a single construction, not a family"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundConstant {
    C1Closed,
    C1Truncated,
    C2Closed,
    C2Truncated,
}

impl BoundConstant {
    pub fn name(self) -> &'static str {
        match self {
            BoundConstant::C1Closed => "c1_closed",
            BoundConstant::C1Truncated => "c1_truncated",
            BoundConstant::C2Closed => "c2_closed",
            BoundConstant::C2Truncated => "c2_truncated",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub constant: BoundConstant,
    /// `≤` for the lower-bound constant c1, `≥` for c2.
    pub relation: &'static str,
    pub symbolic: String,
    pub value: f64,
    pub witness: String,
    pub note: &'static str,
}

/// Bounds on the constants of the linear crossing-number relation implied
/// by the constructions.
pub fn bounds_table() -> Vec<BoundsRow> {
    let trefoil = FamilyId::new(FamilyTag::OddWrap, Some(2)).expect("valid family");
    let trefoil_quotient =
        kusner_quotient(&trefoil, Presentation::Closed).expect("trefoil quotient");
    vec![
        BoundsRow {
            constant: BoundConstant::C1Closed,
            relation: "≤",
            symbolic: "2/π".into(),
            value: 2.0 / PI,
            witness: "even wraps (2q+2,q) and (2q+4,q), q → ∞".into(),
            note: "limit of quotients; an upper bound on c1, not attained",
        },
        BoundsRow {
            constant: BoundConstant::C1Truncated,
            relation: "≤",
            symbolic: "4/π".into(),
            value: 4.0 / PI,
            witness: "odd wraps (q+1,q) truncated, q → ∞".into(),
            note: "limit of quotients; an upper bound on c1, not attained",
        },
        BoundsRow {
            constant: BoundConstant::C2Closed,
            relation: "≥",
            symbolic: trefoil_quotient.to_string(),
            value: trefoil_quotient.value(),
            witness: "closed trefoil (3,2), pentagon wrap".into(),
            note: "attained by a construction",
        },
        BoundsRow {
            constant: BoundConstant::C2Truncated,
            relation: "≥",
            symbolic: "(3+√2)/2".into(),
            value: FIGURE_EIGHT_TRUNCATED_RIBBONLENGTH / FIGURE_EIGHT_CROSSING_NUMBER as f64,
            witness: "truncated figure-eight 4_1".into(),
            note: "imported constant 6+2√2, not built here",
        },
    ]
}

/// One row of the quotient table.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub family: FamilyId,
    pub params: Option<TorusKnotParams>,
    pub presentation: Presentation,
    pub geometric_ratio: Option<f64>,
    pub closed_form: ClosedForm,
    pub closed_form_ratio: f64,
    pub crossing_number: u64,
    pub kusner_quotient: f64,
}

impl RatioReport {
    /// Report for one construction; `measure` also lays out the built
    /// program and records its geometric ratio.
    pub fn new(family: FamilyId, presentation: Presentation, measure: bool) -> Result<Self> {
        let closed_form = closed_form_ratio(&family, presentation)?;
        let crossing = family_crossing_number(&family)?;
        let geometric_ratio = if measure {
            Some(layout(&build(&family, presentation, None)?)?.ratio()?)
        } else {
            None
        };
        let ratio = closed_form.value();
        Ok(RatioReport {
            family,
            params: family.knot(),
            presentation,
            geometric_ratio,
            closed_form,
            closed_form_ratio: ratio,
            crossing_number: crossing,
            kusner_quotient: ratio / crossing as f64,
        })
    }

    /// Every ratio bounds the ribbonlength from above. The odd wraps and the
    /// gap-free (8,3) wrap are also put forward as the ribbonlength itself.
    pub fn standing(&self) -> &'static str {
        match (self.family.tag, self.family.parameter) {
            (FamilyTag::OddWrap, _) | (FamilyTag::EvenWrapPlus2, Some(3)) => {
                "conjectured ribbonlength"
            }
            _ => "upper bound",
        }
    }
}

/// Quotient rows for every family, ordered by family then parameter. Wrap
/// families run up to `q_max`, star polygons up to `p_max`.
pub fn quotient_table(q_max: u32, p_max: u32, measure: bool) -> Result<Vec<RatioReport>> {
    if q_max < 2 || p_max < 7 {
        return Err(Error::Parameter(format!(
            "table needs q_max ≥ 2 and p_max ≥ 7, got {q_max} and {p_max}"
        )));
    }
    let mut rows = Vec::new();
    let mut push = |tag: FamilyTag, k: Option<u32>, presentation: Presentation| -> Result<()> {
        rows.push(RatioReport::new(
            FamilyId::new(tag, k)?,
            presentation,
            measure,
        )?);
        Ok(())
    };
    for q in 2..=q_max {
        push(FamilyTag::OddWrap, Some(q), Presentation::Closed)?;
        push(FamilyTag::OddWrap, Some(q), Presentation::Truncated)?;
    }
    for p in (7..=p_max).step_by(2) {
        push(FamilyTag::StarPolygon, Some(p), Presentation::Closed)?;
    }
    for q in 2..=q_max {
        push(FamilyTag::Pinwheel, Some(q), Presentation::Closed)?;
    }
    for tag in [FamilyTag::EvenWrapPlus2, FamilyTag::EvenWrapPlus4] {
        for q in (3..=q_max).step_by(2) {
            push(tag, Some(q), Presentation::Closed)?;
        }
    }
    for tag in [FamilyTag::Short52, FamilyTag::Short72, FamilyTag::Rect74] {
        push(tag, None, Presentation::Closed)?;
    }
    Ok(rows)
}

/// `x` with six significant digits.
pub fn six_digits(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn knot_columns(row: &RatioReport) -> (String, String) {
    match row.params {
        Some(k) => (k.p.to_string(), k.q.to_string()),
        None => (String::new(), String::new()),
    }
}

pub fn quotient_csv(rows: &[RatioReport]) -> String {
    let mut out = String::from("family,p,q,presentation,ratio,crossing,quotient\n");
    for row in rows {
        let (p, q) = knot_columns(row);
        let family = match row.family.parameter {
            Some(k) => format!("{}({k})", row.family.tag),
            None => row.family.tag.to_string(),
        };
        let _ = writeln!(
            out,
            "{family},{p},{q},{},{},{},{}",
            row.presentation, row.closed_form_ratio, row.crossing_number, row.kusner_quotient
        );
    }
    out
}

pub fn quotient_markdown(rows: &[RatioReport]) -> String {
    let mut out = String::from(
        "| family | p | q | presentation | ratio | closed form | crossing | quotient | standing |\n|---|---|---|---|---|---|---|---|---|\n",
    );
    for row in rows {
        let (p, q) = knot_columns(row);
        let _ = writeln!(
            out,
            "| {} | {p} | {q} | {} | {} | {} | {} | {} | {} |",
            row.family,
            row.presentation,
            six_digits(row.closed_form_ratio),
            row.closed_form,
            row.crossing_number,
            six_digits(row.kusner_quotient),
            row.standing()
        );
    }
    out
}

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("constant,relation,symbolic,value,value_6,witness,note\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},\"{}\",\"{}\"",
            row.constant.name(),
            row.relation,
            row.symbolic,
            row.value,
            six_digits(row.value),
            row.witness,
            row.note
        );
    }
    out
}

pub fn bounds_markdown(rows: &[BoundsRow]) -> String {
    let mut out =
        String::from("| constant | bound | value | witness | note |\n|---|---|---|---|---|\n");
    for row in rows {
        let _ = writeln!(
            out,
            "| {} | {} {} | {} | {} | {} |",
            row.constant.name(),
            row.relation,
            row.symbolic,
            six_digits(row.value),
            row.witness,
            row.note
        );
    }
    out
}

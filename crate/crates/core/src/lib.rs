//! Folded-ribbon torus knots: fold programs, their flat layouts, closed-form
//! ribbonlength formulas and knot-type certification of the folded diagrams.

pub mod angle;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod knot;
pub mod layout;
pub mod program;
pub mod render;

pub use angle::ExactAngle;
pub use error::{Error, Result};
pub use geometry::{Isometry, Point, Segment};
pub use layout::{centerline_length, layout, ratio, unfold, FoldedLayout, Measured, Panel};
pub use program::{CreaseSpec, FoldProgram, Presentation};

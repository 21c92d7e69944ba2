//! Weierstrass gap sets, pure gap sets, and AG code parameters at totally
//! ramified places of Kummer extensions y^m = prod (x - alpha_i)^(lambda_i).
//!
//! The `curve` module holds the arithmetic kernel (floor sums over places),
//! `gaps` and `puregaps` enumerate gap and pure-gap sets with independent
//! brute-force referees, `closedform` provides direct set constructors for
//! the equal-multiplicity case, and `codes` turns boxes of consecutive
//! pure gaps into differential AG-code parameters.

pub mod closedform;
pub mod codes;
pub mod curve;
pub mod error;
pub mod gaps;
pub mod puregaps;

pub use closedform::PureGapBox;
pub use codes::{CodeDesign, CurveFamilyInstance, FamilySpec, TableRow};
pub use curve::{KummerCurve, PlaceRef, PlaceSelection};
pub use error::{Error, Result};
pub use gaps::GapSet;
pub use puregaps::{BottomEntry, BottomSet, GapTuple};

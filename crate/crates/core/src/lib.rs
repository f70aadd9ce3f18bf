//! Exact minimum distances of power-trace codes over F_p, point counts of
//! Artin-Schreier curves y^p - y = f(x) over F_q, and the comparison of the
//! code-based bound N_f <= 1 + p(q - d) with the Hasse-Weil and Serre bounds.
//!
//! Module map:
//! - [`gf`]: F_q arithmetic, trace, fixed element enumeration.
//! - [`powcode`]: the code, its dimension and exhaustive minimum distance.
//! - [`ascurve`]: point counting and the maximal-point search.
//! - [`quadform`]: closed forms for deg f = 2 via diagonal quadratic forms.
//! - [`unitgroup`]: the group of truncated units 1 + a_1 T + ... + a_r T^r.
//! - [`bounds`]: integer evaluators for every bound formula.
//! - [`table`]: one comparison row per (p, m, r).
//! - [`selftest`]: randomized invariant suites shared by tests and the CLI.

pub mod ascurve;
pub mod bounds;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod powcode;
pub mod quadform;
pub mod selftest;
pub mod table;
pub mod unitgroup;

pub use ascurve::{count_points, max_points, zero_set_size, CurveSpec, MaxPoints};
pub use bounds::BoundRow;
pub use error::{Error, Result};
pub use gf::{FieldCtx, FqElem};
pub use powcode::{FqPoly, MinDistance, PowerTraceCode, SearchOptions, Strategy};
pub use unitgroup::{TruncatedUnit, UnitGroup};

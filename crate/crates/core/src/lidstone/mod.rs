//! Two-point q-Lidstone bases, kernel decompositions, expansion engines,
//! and growth classification of the expanded functions.

mod basis;
pub mod catalog;
mod expand;
mod growth;
mod report;

pub use basis::{build_basis, LidstoneBasis, LidstoneKind};
pub(crate) use basis::{check_basis, check_kernel};
pub use expand::{basis_values, delta_tower, expand_numeric, expand_symbolic, ExpansionInput};
pub use growth::{admissibility, classify_growth, type_bound, Admissibility, GrowthEstimate};
pub use report::{run_expansion, unit_grid, ExpansionReport, QValue};

//! Grids, grid moments, the reference table and contour data.

mod contour;
mod grid;
mod moments;
mod table1;

pub use contour::{contour_grid, total_variation, ContourGrid, PmfKind};
pub use grid::{default_grid, marginal_range, GridSpec, Offsets, DEFAULT_SIGMAS};
pub use moments::{moments_from_pmf, moments_from_samples, moments_from_values, MomentSummary, Normalization};
pub use table1::{reproduce_case, reproduce_table1, Table1Case, Table1Options, Table1Row, Table1Values, TABLE1_CASES};

//! Ordinary cohomology of quotients `Z_K / H`.

pub mod census;
pub mod cubical;
pub mod koszul;
pub mod trc;

pub use census::{cw_census, Census};
pub use cubical::{cubical_cell_counts, cubical_chains, cubical_quotient_cohomology};
pub use koszul::{koszul_cohomology, koszul_cohomology_with, KoszulComplex, KoszulOptions};
pub use trc::{trc_report, TrcReport};

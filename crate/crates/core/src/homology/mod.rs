//! Smith normal form (co)homology of chain complexes, reduced simplicial
//! cohomology and limits of diagrams over face posets.

pub mod complex;
pub mod graded;
pub mod limit;
pub mod sparse;

pub use complex::{group_at, reduced_cohomology, reduced_homology, simplicial_chains, ChainComplex, Coefficients};
pub use graded::GradedAbGroup;
pub use limit::{compatibility_matrix, derived_limits, limit_graded, limit_slice, restriction, DiagramSlice, PosetDiagram, Presented, Relations};
pub use sparse::{rank_mod_p, smith_invariants, SmithSummary, SparseMatrix};

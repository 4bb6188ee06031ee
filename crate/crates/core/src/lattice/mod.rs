//! Integer lattices, finite abelian groups and closed subgroups of tori.

pub mod binary;
pub mod group;
pub mod matrix;
pub mod subgroup;
pub mod sublattice;

pub use binary::BinarySubspace;
pub use group::FinAbGroup;
pub use matrix::{hnf, kernel, snf, IntMatrix, Smith};
pub use subgroup::{CoordinateJoin, CoordinateMeet, ExactRowReport, TorusSubgroup};
pub use sublattice::{annihilator_of, parametrize, Lattice, QuasitorusParams};

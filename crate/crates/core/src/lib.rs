//! Exact cohomology computations for quotients of moment-angle complexes by
//! closed subgroups of the torus `T^m` and of `(Z/2)^m`.

pub mod constructions;
pub mod equivariant;
pub mod error;
pub mod homology;
pub mod int;
pub mod io;
pub mod lattice;
pub mod moment_angle;
pub mod oracle;
pub mod quotient;
pub mod random;
pub mod simplicial;

pub use error::{MaqError, Result};

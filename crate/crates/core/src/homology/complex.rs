use super::graded::GradedAbGroup;
use super::sparse::{rank_mod_p, smith_invariants, SmithSummary, SparseMatrix};
use crate::error::{MaqError, Result};
use crate::int::int;
use crate::lattice::FinAbGroup;
use crate::simplicial::{bits, SimplicialComplex, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    /// `F_p` for a prime `p`.
    Prime(u64),
}

/// Free chain complex `C_lo <- C_lo+1 <- ... <- C_hi`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    /// `boundaries[k]` maps degree `min_degree + k + 1` to `min_degree + k`.
    boundaries: Vec<SparseMatrix>,
}

/// Group at one spot of a complex from the ranks of the outgoing and
/// incoming maps; torsion comes from the incoming map.
pub fn group_at(dim: usize, incoming: Option<&SmithSummary>, outgoing: Option<&SmithSummary>) -> FinAbGroup {
    let rin = incoming.map_or(0, |s| s.rank);
    let rout = outgoing.map_or(0, |s| s.rank);
    let tors = incoming.map(|s| s.torsion.clone()).unwrap_or_default();
    FinAbGroup::new(dim - rin - rout, tors)
}

impl ChainComplex {
    pub fn new(min_degree: i64, dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(MaqError::pre("need one boundary matrix between each pair of adjacent degrees"));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.nrows() != dims[k] || b.ncols() != dims[k + 1] {
                return Err(MaqError::pre(format!(
                    "boundary {} has shape {}x{}, expected {}x{}",
                    k,
                    b.nrows(),
                    b.ncols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(MaqError::pre(format!(
                    "composite of boundaries into degree {} is nonzero",
                    min_degree + k as i64 - 1
                )));
            }
        }
        Ok(ChainComplex { min_degree, dims, boundaries })
    }

    pub fn zero() -> Self {
        ChainComplex { min_degree: 0, dims: Vec::new(), boundaries: Vec::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    fn summaries(&self, coeffs: Coefficients) -> Vec<SmithSummary> {
        self.boundaries
            .iter()
            .map(|b| match coeffs {
                Coefficients::Integers => smith_invariants(b),
                Coefficients::Prime(p) => SmithSummary { rank: rank_mod_p(b, p), torsion: Vec::new() },
            })
            .collect()
    }

    fn assemble(&self, coeffs: Coefficients, cohomology: bool) -> GradedAbGroup {
        let s = self.summaries(coeffs);
        let mut out = GradedAbGroup::new();
        for (k, &dim) in self.dims.iter().enumerate() {
            let below = if k > 0 { s.get(k - 1) } else { None }; // C_k -> C_{k-1}
            let above = s.get(k); // C_{k+1} -> C_k
            let g = if cohomology { group_at(dim, below, above) } else { group_at(dim, above, below) };
            let g = match coeffs {
                Coefficients::Integers => g,
                Coefficients::Prime(p) => FinAbGroup::elementary(p, g.free_rank()),
            };
            out.set(self.min_degree + k as i64, g);
        }
        out
    }

    pub fn homology(&self, coeffs: Coefficients) -> GradedAbGroup {
        self.assemble(coeffs, false)
    }

    pub fn cohomology(&self, coeffs: Coefficients) -> GradedAbGroup {
        self.assemble(coeffs, true)
    }
}

/// Faces of each dimension `-1..=dim`, in the order used for chain bases.
fn faces_by_size(k: &SimplicialComplex, augmented: bool) -> Vec<Vec<VertexSet>> {
    let faces = k.faces();
    let top = faces.last().map_or(0, |f| f.count_ones() as usize);
    let mut by: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    for f in faces {
        by[f.count_ones() as usize].push(f);
    }
    if !augmented {
        by.remove(0);
    }
    by
}

/// Simplicial chain complex of `K`; with `augmented` the empty face sits in degree -1.
pub fn simplicial_chains(k: &SimplicialComplex, augmented: bool) -> ChainComplex {
    if k.is_void() {
        return ChainComplex::zero();
    }
    let by = faces_by_size(k, augmented);
    let index: Vec<HashMap<VertexSet, usize>> =
        by.iter().map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
    let mut boundaries = Vec::new();
    for s in 1..by.len() {
        let mut b = SparseMatrix::zeros(by[s - 1].len(), by[s].len());
        for (j, &f) in by[s].iter().enumerate() {
            for (pos, v) in bits(f).into_iter().enumerate() {
                let g = f & !(1 << v);
                if let Some(&i) = index[s - 1].get(&g) {
                    b.add(i, j, int(if pos % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        b.normalize();
        boundaries.push(b);
    }
    ChainComplex {
        min_degree: if augmented { -1 } else { 0 },
        dims: by.iter().map(|f| f.len()).collect(),
        boundaries,
    }
}

/// Reduced cohomology `H̃^*(K)`; `{∅}` has `H̃^{-1}` equal to the coefficients.
pub fn reduced_cohomology(k: &SimplicialComplex, coeffs: Coefficients) -> GradedAbGroup {
    simplicial_chains(k, true).cohomology(coeffs)
}

pub fn reduced_homology(k: &SimplicialComplex, coeffs: Coefficients) -> GradedAbGroup {
    simplicial_chains(k, true).homology(coeffs)
}

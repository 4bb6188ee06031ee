//! The real moment-angle complex as a cubical subcomplex of `[-1, 1]^m` and
//! its quotient by a freely acting `H ⊆ (Z/2)^m`.
//!
//! A cell is a face `C` with a sign vector on `[m] \ C`, stored as the set
//! `s` of coordinates at `-1`. An element `h` flips the signs in `h \ C` and
//! reflects the free coordinates in `h ∩ C`, which changes orientation by
//! `(-1)^{|h ∩ C|}`.

use crate::equivariant::check_free;
use crate::error::{MaqError, Result};
use crate::homology::{ChainComplex, Coefficients, GradedAbGroup, SparseMatrix};
use crate::int::Int;
use crate::lattice::TorusSubgroup;
use crate::simplicial::{bits, full_set, SimplicialComplex, VertexSet};
use std::collections::HashMap;

pub const CUBICAL_CELL_BOUND: usize = 2_000_000;

/// Reduces sign vectors outside a face to canonical orbit representatives.
struct OrbitReducer {
    /// `(h \ C, h)` in echelon form on the first component.
    rows: Vec<(u64, u64)>,
}

impl OrbitReducer {
    fn new(generators: &[u64], face: VertexSet) -> Self {
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for &h in generators {
            let mut v = (h & !face, h);
            for &(p, full) in &rows {
                let pivot = p & p.wrapping_neg();
                if v.0 & pivot != 0 {
                    v = (v.0 ^ p, v.1 ^ full);
                }
            }
            if v.0 != 0 {
                let pivot = v.0 & v.0.wrapping_neg();
                for r in rows.iter_mut() {
                    if r.0 & pivot != 0 {
                        *r = (r.0 ^ v.0, r.1 ^ v.1);
                    }
                }
                rows.push(v);
            }
        }
        OrbitReducer { rows }
    }

    /// Canonical representative of the orbit of `s` and the group element
    /// `g` with `s = rep ^ (g \ C)`.
    fn reduce(&self, s: u64) -> (u64, u64) {
        let mut s = s;
        let mut g = 0u64;
        for &(p, full) in &self.rows {
            let pivot = p & p.wrapping_neg();
            if s & pivot != 0 {
                s ^= p;
                g ^= full;
            }
        }
        (s, g)
    }
}

/// Cellular cochain complex of `RZ_K / H` in dimensions `0..=dim K + 1`.
pub fn cubical_chains(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<ChainComplex> {
    let sub = h.subspace().ok_or_else(|| MaqError::pre("the cubical model needs d = 1"))?;
    let report = check_free(k, h)?;
    if let Some(w) = report.witness {
        return Err(MaqError::NotFree(format!("H meets the coordinate subgroup of facet {w:?}")));
    }
    if k.is_void() {
        return Ok(ChainComplex::zero());
    }
    let m = k.m();
    let all = full_set(m);
    let faces = k.faces();
    let order = 1usize << sub.dim();
    let cells: usize = faces.iter().map(|f| (1usize << (m - f.count_ones() as usize)) / order).sum();
    if cells > CUBICAL_CELL_BOUND {
        return Err(MaqError::bound(format!("cubical quotient has {cells} cells, above {CUBICAL_CELL_BOUND}")));
    }
    let gens = sub.basis().to_vec();
    let top = faces.last().map_or(0, |f| f.count_ones() as usize);
    let reducers: HashMap<VertexSet, OrbitReducer> = faces.iter().map(|&f| (f, OrbitReducer::new(&gens, f))).collect();
    // representatives per dimension
    let mut index: Vec<HashMap<(VertexSet, u64), usize>> = vec![HashMap::new(); top + 1];
    for &f in &faces {
        let dim = f.count_ones() as usize;
        let free = all & !f;
        let red = &reducers[&f];
        let mut s = free;
        loop {
            let (rep, _) = red.reduce(s);
            if rep == s {
                let next = index[dim].len();
                index[dim].insert((f, s), next);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
    }
    let mut boundaries = Vec::new();
    for dim in 1..=top {
        let mut d = SparseMatrix::zeros(index[dim - 1].len(), index[dim].len());
        for (&(f, s), &col) in &index[dim] {
            for (pos, i) in bits(f).into_iter().enumerate() {
                let lower = f & !(1 << i);
                let red = &reducers[&lower];
                for minus in [false, true] {
                    let s2 = if minus { s | 1 << i } else { s };
                    let (rep, g) = red.reduce(s2);
                    let mut sign = if pos % 2 == 0 { 1 } else { -1 };
                    if minus {
                        sign = -sign;
                    }
                    if (g & lower).count_ones() % 2 == 1 {
                        sign = -sign;
                    }
                    d.add(index[dim - 1][&(lower, rep)], col, Int::from(sign));
                }
            }
        }
        d.normalize();
        boundaries.push(d);
    }
    let dims = index.iter().map(|x| x.len()).collect();
    ChainComplex::new(0, dims, boundaries)
}

/// Integral cohomology of `RZ_K / H` for a free `H ⊆ (Z/2)^m`.
pub fn cubical_quotient_cohomology(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<GradedAbGroup> {
    Ok(cubical_chains(k, h)?.cohomology(Coefficients::Integers))
}

/// Number of cells per dimension of the quotient.
pub fn cubical_cell_counts(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<Vec<usize>> {
    Ok(cubical_chains(k, h)?.dims().to_vec())
}

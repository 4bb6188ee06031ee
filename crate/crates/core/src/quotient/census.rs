//! Cell census of the homotopy colimit model for d = 1: a chain
//! `I_0 ⊃ ... ⊃ I_s` in `cat K` contributes `|Q(I_s)|` cells of dimension
//! `s`, where `Q(I) = (Z/2)^m / (H · (Z/2)^I)` and `I_s` is the smallest face.

use crate::error::{MaqError, Result};
use crate::lattice::{BinarySubspace, TorusSubgroup};
use crate::simplicial::SimplicialComplex;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// `cells[s]`: number of `s`-cells.
    pub cells: Vec<u128>,
    pub euler_characteristic: i128,
}

pub fn cw_census(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<Census> {
    let sub = h.subspace().ok_or_else(|| MaqError::pre("the census counts finite orbits and needs d = 1"))?;
    h.check_ambient(k.m())?;
    let m = k.m();
    let faces = k.faces();
    let orbit = |f: u64| -> u128 { 1u128 << (m - sub.sum(&BinarySubspace::coordinate(m, f)).dim()) };
    // chains[f][s]: chains of length s + 1 whose smallest element is f
    let mut chains: HashMap<u64, Vec<u128>> = HashMap::new();
    for &f in faces.iter().rev() {
        let mut counts = vec![1u128];
        for &g in &faces {
            if g != f && f & !g == 0 {
                for (s, c) in chains[&g].iter().enumerate() {
                    if counts.len() <= s + 1 {
                        counts.resize(s + 2, 0);
                    }
                    counts[s + 1] += c;
                }
            }
        }
        chains.insert(f, counts);
    }
    let mut cells: Vec<u128> = Vec::new();
    for &f in &faces {
        let size = orbit(f);
        for (s, c) in chains[&f].iter().enumerate() {
            if cells.len() <= s {
                cells.resize(s + 1, 0);
            }
            cells[s] += c * size;
        }
    }
    let euler_characteristic =
        cells.iter().enumerate().map(|(s, &c)| if s % 2 == 0 { c as i128 } else { -(c as i128) }).sum();
    Ok(Census { cells, euler_characteristic })
}

//! Stanley-Reisner counts, Hochster's decomposition of `H^*(Z_K)`, the
//! skeleton family and toral rank bookkeeping.

use crate::error::{MaqError, Result};
use crate::homology::{reduced_cohomology, Coefficients, GradedAbGroup};
use crate::int::{binomial, binomial_i};
use crate::simplicial::{SimplicialComplex, VertexSet};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub const DEFAULT_BOUND_M: usize = 14;

/// Degree -> rank.
pub type PoincareSeries = BTreeMap<i64, u128>;

/// `R_d[K]` with `deg v_i = d`.
#[derive(Clone, Debug)]
pub struct SrRing<'a> {
    pub complex: &'a SimplicialComplex,
    pub d: u8,
}

impl SrRing<'_> {
    /// Number of monomials of degree `n` whose support is a face.
    pub fn dimension(&self, n: i64) -> u128 {
        sr_dimension(self.complex, self.d, n)
    }
}

/// Rank of `R_d[K]` in degree `n`: monomials of degree `n` with support in `K`.
pub fn sr_dimension(k: &SimplicialComplex, d: u8, n: i64) -> u128 {
    if n < 0 || k.is_void() || n % d as i64 != 0 {
        return 0;
    }
    let total = n / d as i64;
    if total == 0 {
        return 1;
    }
    // a monomial of degree `total` with support exactly σ: C(total - 1, |σ| - 1) of them
    k.faces()
        .into_iter()
        .filter(|&f| f != 0)
        .map(|f| binomial_i(total - 1, f.count_ones() as i64 - 1))
        .sum()
}

/// `H^p(Z_K) = ⊕_I H̃^{p-|I|-1}(K_I)` up to `max_degree`.
pub fn hochster(k: &SimplicialComplex, max_degree: i64, bound_m: usize) -> Result<GradedAbGroup> {
    if k.m() > bound_m {
        return Err(MaqError::bound(format!("hochster needs 2^m subcomplexes; m = {} exceeds {}", k.m(), bound_m)));
    }
    let parts: Vec<GradedAbGroup> = (0..1u64 << k.m())
        .into_par_iter()
        .map(|set: VertexSet| {
            let shift = set.count_ones() as i64 + 1;
            if k.is_void() {
                return GradedAbGroup::new();
            }
            let sub = k.full_subcomplex(set);
            reduced_cohomology(&sub, Coefficients::Integers).shift(shift).truncate(max_degree)
        })
        .collect();
    Ok(parts.iter().fold(GradedAbGroup::new(), |acc, g| acc.direct_sum(g)))
}

/// Betti numbers of `Z` over the `k`-skeleton of the simplex on `[m]`.
pub fn skeleton_wedge(m: usize, k: usize) -> Result<PoincareSeries> {
    if m < 2 || k + 2 > m {
        return Err(MaqError::pre(format!("skeleton needs m >= 2 and 0 <= k <= m-2, got m={m}, k={k}")));
    }
    let mut p = PoincareSeries::new();
    p.insert(0, 1);
    for j in k + 2..=m {
        let c = binomial(m as u64, j as u64) * binomial(j as u64 - 1, k as u64 + 1);
        if c > 0 {
            *p.entry((k + j + 1) as i64).or_default() += c;
        }
    }
    Ok(p)
}

/// Total rank of `Z` over the `k`-skeleton of the simplex on `[m]`, also
/// allowing the full simplex (`k = m - 1`, contractible).
pub fn skeleton_hrk(m: usize, k: usize) -> u128 {
    if k + 1 >= m {
        return 1;
    }
    skeleton_wedge(m, k).expect("range checked").values().sum()
}

/// Total rank of the suspension of `T^n`, from the splitting
/// `Σ(T^{n-1} × S^1) ≃ ΣT^{n-1} ∨ S^2 ∨ Σ^2 T^{n-1}`.
pub fn suspended_torus_hrk(n: u32) -> u128 {
    let mut reduced: u128 = 0;
    for _ in 0..n {
        reduced = 1 + 2 * reduced;
    }
    reduced + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonQuotientHrk {
    pub m: usize,
    pub k: usize,
    pub hrk: u128,
    pub bound: u128,
    pub verdict: bool,
}

/// Evaluates the rank recursion for the quotient of `Z` over the
/// `k`-skeleton by a free circle, and compares with `2^{m-k-1}`.
pub fn skeleton_quotient_hrk(m: usize, k: usize) -> Result<SkeletonQuotientHrk> {
    if m < 2 || k + 2 > m {
        return Err(MaqError::pre(format!("skeleton needs m >= 2 and 0 <= k <= m-2, got m={m}, k={k}")));
    }
    let mut hrk: u128 = 1 + (k as u128 + 1);
    hrk += skeleton_hrk(m - 1, k) - 1;
    for i in 1..=k {
        hrk += skeleton_hrk(m - i - 1, k - i) - 1;
    }
    hrk += suspended_torus_hrk((m - k - 2) as u32) - 1;
    let bound = 1u128 << (m - k - 1);
    Ok(SkeletonQuotientHrk { m, k, hrk, bound, verdict: hrk >= bound })
}

/// `trk(Z_K) = m - n` with `n = dim K + 1`.
pub fn trk_moment_angle(k: &SimplicialComplex) -> Result<usize> {
    let dim = k.dim().ok_or_else(|| MaqError::pre("toral rank of the void complex"))?;
    Ok(k.m() - (dim + 1) as usize)
}

pub fn trc_verdict(hrk: u128, trk: usize) -> bool {
    trk < 128 && hrk >= 1u128 << trk
}

pub const BUCHSTABER_BOUND_M: usize = 12;

/// Largest `r` such that some `H ⊆ F_2^m` of dimension `r` meets every
/// `F_2^I`, `I` a facet, trivially.
///
/// Searches for the smallest `t` admitting a map `[m] -> F_2^t` that is
/// injective with independent image on every facet; then `r = m - t`.
pub fn buchstaber_real(k: &SimplicialComplex) -> Result<usize> {
    let m = k.m();
    if m > BUCHSTABER_BOUND_M {
        return Err(MaqError::bound(format!("buchstaber_real supports m <= {BUCHSTABER_BOUND_M}, got {m}")));
    }
    if k.is_void() {
        return Ok(m);
    }
    let max_facet = k.facets().iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let facets_of: Vec<Vec<VertexSet>> =
        (0..m).map(|v| k.facets().iter().copied().filter(|f| f >> v & 1 == 1).collect()).collect();
    for t in max_facet..=m {
        let mut cols = vec![0u32; m];
        if color(0, 0, t, k.vertex_set(), &facets_of, &mut cols) {
            return Ok(m - t);
        }
    }
    unreachable!("t = m always works with the standard basis")
}

/// Assigns `cols[v]`; `span` is the number of basis vectors used so far.
fn color(v: usize, span: usize, t: usize, verts: VertexSet, facets_of: &[Vec<VertexSet>], cols: &mut [u32]) -> bool {
    let m = cols.len();
    if v == m {
        return true;
    }
    if verts >> v & 1 == 0 {
        cols[v] = 0;
        return color(v + 1, span, t, verts, facets_of, cols);
    }
    let mut candidates: Vec<(u32, usize)> = (1..1u32 << span).map(|c| (c, span)).collect();
    if span < t {
        candidates.push((1 << span, span + 1));
    }
    for (c, next_span) in candidates {
        cols[v] = c;
        if facets_of[v].iter().all(|&f| independent(f & ((1u64 << (v + 1)) - 1), cols)) && color(v + 1, next_span, t, verts, facets_of, cols) {
            return true;
        }
    }
    false
}

fn independent(set: VertexSet, cols: &[u32]) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        let mut x = cols[v];
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x == 0 {
            return false;
        }
        basis.push(x);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

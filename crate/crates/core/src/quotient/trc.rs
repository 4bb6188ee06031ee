use super::koszul::koszul_cohomology;
use crate::equivariant::check_free;
use crate::error::Result;
use crate::lattice::TorusSubgroup;
use crate::simplicial::SimplicialComplex;
use serde::Serialize;

/// Rank check `hrk(Z_K / H) >= 2^{rank H}` for one action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrcReport {
    pub hrk: u128,
    /// Dimension of the torus part of `H`.
    pub rank_h: usize,
    pub bound: u128,
    pub free: bool,
    pub verdict: bool,
}

pub fn trc_report(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<TrcReport> {
    let free = check_free(k, h)?.free;
    let top = k.m() as i64 + k.dim().unwrap_or(-1) + 1;
    let g = koszul_cohomology(k, h, top.max(0))?;
    let hrk = g.total_rank() as u128;
    let rank_h = h.rank();
    let bound = 1u128 << rank_h;
    Ok(TrcReport { hrk, rank_h, bound, free, verdict: hrk >= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn examples() {
        let k = SimplicialComplex::skeleton(4, 0).unwrap();
        let r = trc_report(&k, &TorusSubgroup::trivial(4, 2)).unwrap();
        assert_eq!((r.hrk, r.bound, r.verdict), (18, 1, true));
        let two = SimplicialComplex::skeleton(2, 0).unwrap();
        let rp3 = TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, 1], vec![0, 2]]));
        let r = trc_report(&two, &rp3).unwrap();
        assert_eq!((r.hrk, r.rank_h, r.verdict), (2, 0, true));
        let tri = SimplicialComplex::boundary_simplex(3).unwrap();
        let circle = TorusSubgroup::from_annihilator(Lattice::from_i64(3, &[vec![1, -1, 0], vec![0, 1, -1]]));
        let r = trc_report(&tri, &circle).unwrap();
        assert_eq!((r.hrk, r.rank_h, r.bound, r.verdict), (3, 1, 2, true));
    }
}

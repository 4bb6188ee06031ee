//! Closed subgroups of `G^m`, `G = S^1` (d = 2) or `G = Z/2` (d = 1).

use super::binary::{full_mask, BinarySubspace};
use super::group::FinAbGroup;
use super::matrix::snf;
use super::sublattice::Lattice;
use crate::error::{MaqError, Result};
use crate::simplicial::{bits, VertexSet};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusSubgroup {
    /// d = 2: stored through its annihilator `H^⊥ ⊆ Z^m`.
    Torus { annihilator: Lattice },
    /// d = 1: the subspace `H ⊆ F_2^m` itself.
    Binary { subspace: BinarySubspace },
}

/// Character groups of `H ∩ G^I` and `S(I) = G^I / (H ∩ G^I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateMeet {
    pub intersection: FinAbGroup,
    pub quotient: FinAbGroup,
}

/// Character data of `Q(I) = G^m / (H · G^I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateJoin {
    pub characters: FinAbGroup,
    /// `Z^m` modulo the annihilator of `H · G^I` (d = 2 only; trivial for d = 1).
    pub cokernel: FinAbGroup,
}

/// Bookkeeping for the two exact rows through `S(I)`, `L`, `Q(I)` and through
/// `H ∩ G^I`, `H`, `H / (H ∩ G^I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactRowReport {
    pub rank_additive: bool,
    pub kernel_identity: bool,
    pub torsion_divides: bool,
}

impl ExactRowReport {
    pub fn holds(&self) -> bool {
        self.rank_additive && self.kernel_identity && self.torsion_divides
    }
}

impl TorusSubgroup {
    pub fn from_annihilator(annihilator: Lattice) -> Self {
        TorusSubgroup::Torus { annihilator }
    }

    pub fn from_subspace(subspace: BinarySubspace) -> Self {
        TorusSubgroup::Binary { subspace }
    }

    pub fn trivial(m: usize, d: u8) -> Self {
        match d {
            2 => Self::from_annihilator(Lattice::full(m)),
            _ => Self::from_subspace(BinarySubspace::zero(m)),
        }
    }

    /// `G^{I0}` for the vertex set `I0`.
    pub fn coordinate(m: usize, d: u8, set: VertexSet) -> Self {
        match d {
            2 => {
                let rest: Vec<usize> = (0..m).filter(|i| set >> i & 1 == 0).collect();
                Self::from_annihilator(Lattice::coordinate(m, &rest))
            }
            _ => Self::from_subspace(BinarySubspace::coordinate(m, set)),
        }
    }

    pub fn d(&self) -> u8 {
        match self {
            TorusSubgroup::Torus { .. } => 2,
            TorusSubgroup::Binary { .. } => 1,
        }
    }

    pub fn ambient(&self) -> usize {
        match self {
            TorusSubgroup::Torus { annihilator } => annihilator.ambient(),
            TorusSubgroup::Binary { subspace } => subspace.ambient(),
        }
    }

    /// Dimension of `H` (torus rank for d = 2, F_2 dimension for d = 1).
    pub fn rank(&self) -> usize {
        match self {
            TorusSubgroup::Torus { annihilator } => annihilator.ambient() - annihilator.rank(),
            TorusSubgroup::Binary { subspace } => subspace.dim(),
        }
    }

    pub fn annihilator(&self) -> Option<&Lattice> {
        match self {
            TorusSubgroup::Torus { annihilator } => Some(annihilator),
            _ => None,
        }
    }

    pub fn subspace(&self) -> Option<&BinarySubspace> {
        match self {
            TorusSubgroup::Binary { subspace } => Some(subspace),
            _ => None,
        }
    }

    /// Character group of `H` itself.
    pub fn characters(&self) -> FinAbGroup {
        match self {
            TorusSubgroup::Torus { annihilator } => annihilator.cokernel(),
            TorusSubgroup::Binary { subspace } => FinAbGroup::elementary(2, subspace.dim()),
        }
    }

    pub fn meet_coordinate(&self, set: VertexSet) -> CoordinateMeet {
        match self {
            TorusSubgroup::Torus { annihilator } => {
                let coords = bits(set);
                let proj = annihilator.basis().select_columns(&coords);
                let d = snf(&proj).diagonal();
                CoordinateMeet {
                    intersection: FinAbGroup::new(coords.len() - d.len(), d.clone()),
                    quotient: FinAbGroup::free(d.len()),
                }
            }
            TorusSubgroup::Binary { subspace } => {
                let m = subspace.ambient();
                let joined = subspace.sum(&BinarySubspace::coordinate(m, set)).dim();
                let meet = subspace.dim() + set.count_ones() as usize - joined;
                CoordinateMeet {
                    intersection: FinAbGroup::elementary(2, meet),
                    quotient: FinAbGroup::elementary(2, set.count_ones() as usize - meet),
                }
            }
        }
    }

    /// Annihilator of `H · G^I`, i.e. `H^⊥ ∩ Z^{[m] \ I}` (d = 2).
    pub fn join_annihilator(&self, set: VertexSet) -> Option<Lattice> {
        let a = self.annihilator()?;
        let rest: Vec<usize> = (0..a.ambient()).filter(|i| set >> i & 1 == 0).collect();
        Some(a.restrict(&rest))
    }

    pub fn join_coordinate(&self, set: VertexSet) -> CoordinateJoin {
        match self {
            TorusSubgroup::Torus { .. } => {
                let l = self.join_annihilator(set).expect("d = 2");
                CoordinateJoin { characters: FinAbGroup::free(l.rank()), cokernel: l.cokernel() }
            }
            TorusSubgroup::Binary { subspace } => {
                let m = subspace.ambient();
                let q = m - subspace.sum(&BinarySubspace::coordinate(m, set)).dim();
                CoordinateJoin { characters: FinAbGroup::elementary(2, q), cokernel: FinAbGroup::trivial() }
            }
        }
    }

    pub fn exact_row_check(&self, set: VertexSet) -> ExactRowReport {
        match self {
            TorusSubgroup::Torus { annihilator } => {
                let m = annihilator.ambient();
                let coords = bits(set);
                let rest: Vec<usize> = (0..m).filter(|i| set >> i & 1 == 0).collect();
                let s = self.meet_coordinate(set);
                let q = self.join_annihilator(set).expect("d = 2");
                let rank_additive = s.quotient.free_rank() + q.rank() == annihilator.rank();
                let kernel_identity = annihilator.projection_kernel(&coords) == q;
                // chars: 0 -> Z^{I^c}/(H^⊥ ∩ Z^{I^c}) -> Z^m/H^⊥ -> Z^I/p_I(H^⊥) -> 0
                let left = Lattice::new(
                    rest.len(),
                    q.basis().rows().iter().map(|r| rest.iter().map(|&c| r[c].clone()).collect()).collect(),
                )
                .cokernel();
                let mid = annihilator.cokernel();
                let right = s.intersection;
                let ranks_ok = left.free_rank() + right.free_rank() == mid.free_rank();
                let prod = left.torsion_order() * right.torsion_order();
                let divides = (&prod % mid.torsion_order()).is_zero();
                ExactRowReport { rank_additive, kernel_identity, torsion_divides: ranks_ok && divides }
            }
            TorusSubgroup::Binary { subspace } => {
                let m = subspace.ambient();
                let k = set.count_ones() as usize;
                let s = self.meet_coordinate(set);
                let q = self.join_coordinate(set);
                let l = m - subspace.dim();
                let dim = |g: &FinAbGroup| g.torsion().len();
                let rank_additive = dim(&s.quotient) + dim(&q.characters) == l;
                let kernel_identity = dim(&s.intersection) + dim(&s.quotient) == k;
                let comp = full_mask(m) & !set;
                let image = subspace.project(comp).dim();
                let torsion_divides = dim(&s.intersection) + image == subspace.dim();
                ExactRowReport { rank_additive, kernel_identity, torsion_divides }
            }
        }
    }

    /// Whether `1 -> H -> G^m -> L -> 1` splits: always for d = 1, and for
    /// d = 2 exactly when `H` is connected.
    pub fn splits(&self) -> bool {
        match self {
            TorusSubgroup::Torus { annihilator } => annihilator.is_saturated(),
            TorusSubgroup::Binary { .. } => true,
        }
    }

    /// Applies a vertex permutation (`perm[i]` is the new position of vertex `i`).
    pub fn relabel(&self, perm: &[usize]) -> TorusSubgroup {
        match self {
            TorusSubgroup::Torus { annihilator } => {
                let m = annihilator.ambient();
                let gens = annihilator
                    .basis()
                    .rows()
                    .iter()
                    .map(|r| {
                        let mut v = vec![num_traits::Zero::zero(); m];
                        for (i, x) in r.iter().enumerate() {
                            v[perm[i]] = x.clone();
                        }
                        v
                    })
                    .collect();
                Self::from_annihilator(Lattice::new(m, gens))
            }
            TorusSubgroup::Binary { subspace } => {
                let m = subspace.ambient();
                let map = |v: u64| {
                    (0..m).filter(|i| v >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << perm[i])
                };
                Self::from_subspace(BinarySubspace::new(m, subspace.basis().iter().map(|&v| map(v))))
            }
        }
    }

    pub fn check_ambient(&self, m: usize) -> Result<()> {
        if self.ambient() != m {
            return Err(MaqError::pre(format!(
                "subgroup lives in G^{} but the complex has {} vertices",
                self.ambient(),
                m
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::int;

    fn order_two_diagonal() -> TorusSubgroup {
        TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, 1], vec![0, 2]]))
    }

    #[test]
    fn meet_examples() {
        let h = order_two_diagonal();
        let a = h.meet_coordinate(0b01);
        assert!(a.intersection.is_trivial());
        assert_eq!(a.quotient, FinAbGroup::free(1));
        let b = h.meet_coordinate(0b11);
        assert_eq!(b.intersection, FinAbGroup::new(0, vec![int(2)]));
        assert!(h.meet_coordinate(0).intersection.is_trivial());
        let t = TorusSubgroup::trivial(4, 2);
        assert_eq!(t.meet_coordinate(0b1011).quotient, FinAbGroup::free(3));
    }

    #[test]
    fn join_examples() {
        let t = TorusSubgroup::trivial(3, 2);
        assert_eq!(t.join_coordinate(0b001).characters, FinAbGroup::free(2));
        let full = TorusSubgroup::from_annihilator(Lattice::zero(3));
        assert!(full.join_coordinate(0b010).characters.is_trivial());
        let diag = TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, -1]]));
        assert_eq!(diag.join_coordinate(0).characters, FinAbGroup::free(1));
        let b = TorusSubgroup::from_subspace(BinarySubspace::new(3, [0b011]));
        assert_eq!(b.join_coordinate(0b100).characters, FinAbGroup::elementary(2, 1));
    }

    #[test]
    fn exact_rows_small() {
        assert!(TorusSubgroup::trivial(3, 2).exact_row_check(0b101).holds());
        let h = order_two_diagonal();
        for s in 0..4 {
            assert!(h.exact_row_check(s).holds());
        }
        let b = TorusSubgroup::from_subspace(BinarySubspace::new(3, [0b011, 0b110]));
        for s in 0..8 {
            assert!(b.exact_row_check(s).holds());
        }
    }

    #[test]
    fn splitting() {
        assert!(!order_two_diagonal().splits());
        assert!(TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, -1]])).splits());
        assert!(TorusSubgroup::trivial(2, 1).splits());
    }

    #[test]
    fn rank_of_subgroups() {
        assert_eq!(order_two_diagonal().rank(), 0);
        assert_eq!(TorusSubgroup::coordinate(4, 2, 0b0110).rank(), 2);
        assert_eq!(TorusSubgroup::coordinate(4, 1, 0b0110).rank(), 2);
    }
}

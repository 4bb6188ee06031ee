//! Sublattices of `Z^m` in canonical Hermite form.

use super::group::FinAbGroup;
use super::matrix::{hnf, kernel, snf, solve_in_basis, IntMatrix};
use crate::error::{MaqError, Result};
use crate::int::Int;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn new(ambient: usize, generators: Vec<Vec<Int>>) -> Self {
        Lattice { ambient, basis: hnf(&IntMatrix::from_rows(ambient, generators)) }
    }

    pub fn from_i64(ambient: usize, generators: &[Vec<i64>]) -> Self {
        Lattice { ambient, basis: hnf(&IntMatrix::from_i64(ambient, generators)) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::new(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::identity(ambient) }
    }

    /// `Z^S` for the coordinates in `coords` (0-based).
    pub fn coordinate(ambient: usize, coords: &[usize]) -> Self {
        let gens = coords
            .iter()
            .map(|&c| (0..ambient).map(|j| if j == c { Int::one() } else { Int::zero() }).collect())
            .collect();
        Self::new(ambient, gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Hermite basis, one generator per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.ambient && solve_in_basis(&self.basis, v).is_some()
    }

    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        solve_in_basis(&self.basis, v)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && self.basis.rows().iter().all(|r| other.contains(r))
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(MaqError::pre(format!(
                "ambient rank mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let mut gens = self.basis.rows().to_vec();
        gens.extend(other.basis.rows().iter().cloned());
        Ok(Lattice::new(self.ambient, gens))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let r1 = self.rank();
        if r1 == 0 || other.rank() == 0 {
            return Ok(Lattice::zero(self.ambient));
        }
        // x*B1 = y*B2  <=>  (x, y) in the left kernel of [B1; -B2]
        let mut stacked = self.basis.rows().to_vec();
        stacked.extend(other.basis.rows().iter().map(|r| r.iter().map(|x| -x).collect()));
        let left = kernel(&IntMatrix::from_rows(self.ambient, stacked).transpose());
        let gens = left
            .rows()
            .iter()
            .map(|c| {
                let mut v = vec![Int::zero(); self.ambient];
                for (k, ck) in c[..r1].iter().enumerate() {
                    for (vj, bj) in v.iter_mut().zip(self.basis.row(k)) {
                        *vj += ck * bj;
                    }
                }
                v
            })
            .collect();
        Ok(Lattice::new(self.ambient, gens))
    }

    /// `Z^m / L` in invariant factors.
    pub fn cokernel(&self) -> FinAbGroup {
        let d = snf(&self.basis).diagonal();
        FinAbGroup::new(self.ambient - d.len(), d)
    }

    pub fn is_saturated(&self) -> bool {
        self.cokernel().is_free()
    }

    /// Image under the coordinate projection that zeroes every coordinate
    /// outside `coords`; stays inside `Z^m`.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        let gens = self
            .basis
            .rows()
            .iter()
            .map(|r| {
                let mut v = vec![Int::zero(); self.ambient];
                for &c in coords {
                    v[c] = r[c].clone();
                }
                v
            })
            .collect();
        Lattice::new(self.ambient, gens)
    }

    /// `L ∩ Z^S`.
    pub fn restrict(&self, coords: &[usize]) -> Lattice {
        self.intersection(&Lattice::coordinate(self.ambient, coords)).expect("same ambient")
    }

    /// Kernel of the projection onto `coords`, restricted to `L`, computed
    /// from the coefficient side (independent of [`Lattice::restrict`]).
    pub fn projection_kernel(&self, coords: &[usize]) -> Lattice {
        let proj = self.basis.select_columns(coords);
        let coeffs = kernel(&proj.transpose());
        let gens = coeffs
            .rows()
            .iter()
            .map(|c| {
                let mut v = vec![Int::zero(); self.ambient];
                for (k, ck) in c.iter().enumerate() {
                    for (vj, bj) in v.iter_mut().zip(self.basis.row(k)) {
                        *vj += ck * bj;
                    }
                }
                v
            })
            .collect();
        Lattice::new(self.ambient, gens)
    }

    /// Applies a matrix acting on row vectors: `v -> v * t`.
    pub fn transform(&self, t: &IntMatrix) -> Lattice {
        Lattice { ambient: t.ncols(), basis: hnf(&self.basis.mul(t)) }
    }
}

/// Explicit generators of the closed subgroup `H ⊆ T^m` annihilated by a
/// lattice: points `x ∈ R^m/Z^m` of the form `sum c_i v_i / d_i + sum s_j w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasitorusParams {
    pub ambient: usize,
    /// Finite generators `v_i / d_i` as `(v_i, d_i)` with `d_i >= 2`.
    pub finite: Vec<(Vec<Int>, Int)>,
    /// Directions of the identity component.
    pub directions: Vec<Vec<Int>>,
}

/// Parametrizes the subgroup annihilated by `lat` using a Smith form of its basis.
pub fn parametrize(lat: &Lattice) -> QuasitorusParams {
    let b = lat.basis();
    let m = lat.ambient();
    if b.nrows() == 0 {
        return QuasitorusParams {
            ambient: m,
            finite: Vec::new(),
            directions: IntMatrix::identity(m).into_rows(),
        };
    }
    let s = snf(b);
    let d = s.diagonal();
    let r = d.len();
    let col = |j: usize| -> Vec<Int> { (0..m).map(|i| s.v.get(i, j).clone()).collect() };
    QuasitorusParams {
        ambient: m,
        finite: (0..r).filter(|&i| !d[i].is_one()).map(|i| (col(i), d[i].clone())).collect(),
        directions: (r..m).map(col).collect(),
    }
}

/// Characters trivial on every generator of `params`.
pub fn annihilator_of(params: &QuasitorusParams) -> Lattice {
    let m = params.ambient;
    // characters vanishing on the directions
    let base = if params.directions.is_empty() {
        IntMatrix::identity(m)
    } else {
        kernel(&IntMatrix::from_rows(m, params.directions.clone()))
    };
    let k = base.nrows();
    if params.finite.is_empty() || k == 0 {
        return Lattice::new(m, base.into_rows());
    }
    // c in Z^k with (c * base) . v_i = 0 mod d_i: kernel of [A | diag(d)]
    let f = params.finite.len();
    let mut rows = Vec::with_capacity(f);
    for (i, (v, di)) in params.finite.iter().enumerate() {
        let mut row: Vec<Int> = base.rows().iter().map(|b| super::matrix::dot(b, v)).collect();
        row.extend((0..f).map(|j| if j == i { di.clone() } else { Int::zero() }));
        rows.push(row);
    }
    let ker = kernel(&IntMatrix::from_rows(k + f, rows));
    let gens = ker
        .rows()
        .iter()
        .map(|c| {
            let mut v = vec![Int::zero(); m];
            for (t, ct) in c[..k].iter().enumerate() {
                for (vj, bj) in v.iter_mut().zip(base.row(t)) {
                    *vj += ct * bj;
                }
            }
            v
        })
        .collect();
    Lattice::new(m, gens)
}

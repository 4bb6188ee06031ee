//! Subspaces of `F_2^m` with vectors packed into `u64` (bit `i` is coordinate `i + 1`).

use serde::{Deserialize, Serialize};

/// A subspace stored as its reduced row echelon basis. The pivot of a row is
/// its lowest set bit; rows are ordered by pivot and pivots are cleared from
/// every other row, so equal subspaces have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinarySubspace {
    m: usize,
    basis: Vec<u64>,
}

pub fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn rref(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut rows: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            let p = r & r.wrapping_neg();
            if v & p != 0 {
                v ^= r;
            }
        }
        if v == 0 {
            continue;
        }
        let p = v & v.wrapping_neg();
        for r in rows.iter_mut() {
            if *r & p != 0 {
                *r ^= v;
            }
        }
        rows.push(v);
    }
    rows.sort_by_key(|r| r.trailing_zeros());
    rows
}

impl BinarySubspace {
    pub fn new(m: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mask = full_mask(m);
        let basis = rref(vectors.into_iter().inspect(|v| assert_eq!(v & !mask, 0, "vector outside F_2^{m}")));
        BinarySubspace { m, basis }
    }

    pub fn zero(m: usize) -> Self {
        BinarySubspace { m, basis: Vec::new() }
    }

    pub fn full(m: usize) -> Self {
        Self::coordinate(m, full_mask(m))
    }

    /// `F_2^I` for the coordinate set `I` (a bitmask).
    pub fn coordinate(m: usize, set: u64) -> Self {
        Self::new(m, (0..m).filter(|i| set >> i & 1 == 1).map(|i| 1u64 << i))
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coefficients of `v` in the basis, packed as a bitmask over basis rows.
    pub fn coordinates(&self, mut v: u64) -> Option<u64> {
        let mut c = 0u64;
        for (k, &r) in self.basis.iter().enumerate() {
            let p = r & r.wrapping_neg();
            if v & p != 0 {
                v ^= r;
                c |= 1 << k;
            }
        }
        (v == 0).then_some(c)
    }

    pub fn sum(&self, other: &BinarySubspace) -> BinarySubspace {
        assert_eq!(self.m, other.m);
        BinarySubspace::new(self.m, self.basis.iter().chain(&other.basis).copied())
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self) -> BinarySubspace {
        // free coordinates are the non pivots; each gives one kernel vector
        let pivots: u64 = self.basis.iter().map(|r| r & r.wrapping_neg()).fold(0, |a, b| a | b);
        let mut out = Vec::new();
        for j in 0..self.m {
            let bit = 1u64 << j;
            if pivots & bit != 0 {
                continue;
            }
            let mut v = bit;
            for r in &self.basis {
                if r & bit != 0 {
                    v |= r & r.wrapping_neg();
                }
            }
            out.push(v);
        }
        BinarySubspace::new(self.m, out)
    }

    pub fn intersection(&self, other: &BinarySubspace) -> BinarySubspace {
        self.perp().sum(&other.perp()).perp()
    }

    /// Image under the coordinate projection onto the set `I`.
    pub fn project(&self, set: u64) -> BinarySubspace {
        BinarySubspace::new(self.m, self.basis.iter().map(|r| r & set))
    }

    /// Every element of the subspace, starting with 0.
    pub fn elements(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        for &r in &self.basis {
            let n = out.len();
            for i in 0..n {
                out.push(out[i] ^ r);
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &BinarySubspace) -> bool {
        self.basis.iter().all(|&v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_basis() {
        let a = BinarySubspace::new(3, [0b011, 0b110]);
        let b = BinarySubspace::new(3, [0b101, 0b011, 0b110]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), &[0b101, 0b110]);
    }

    #[test]
    fn perp_of_diagonal() {
        let diag = BinarySubspace::new(3, [0b111]);
        let p = diag.perp();
        assert_eq!(p.dim(), 2);
        for v in p.elements() {
            assert_eq!((v & 0b111).count_ones() % 2, 0);
        }
        assert_eq!(p.perp(), diag);
    }

    #[test]
    fn perp_brute_force() {
        // oracle: enumerate all vectors orthogonal to every basis element
        for seed in 0u64..200 {
            let m = 1 + (seed % 6) as usize;
            let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
            let mut vs = Vec::new();
            for _ in 0..3 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                vs.push(x & full_mask(m));
            }
            let s = BinarySubspace::new(m, vs);
            let brute: Vec<u64> = (0..1u64 << m)
                .filter(|&v| s.basis().iter().all(|&r| (r & v).count_ones() % 2 == 0))
                .collect();
            assert_eq!(BinarySubspace::new(m, brute.clone()), s.perp());
            assert_eq!(1usize << s.perp().dim(), brute.len());
        }
    }

    #[test]
    fn coordinates_and_projection() {
        let s = BinarySubspace::new(4, [0b0011, 0b1100]);
        assert_eq!(s.coordinates(0b1111), Some(0b11));
        assert_eq!(s.coordinates(0b0001), None);
        assert_eq!(s.project(0b0101), BinarySubspace::new(4, [0b0001, 0b0100]));
        let t = BinarySubspace::new(4, [0b0011, 0b0110]);
        assert_eq!(s.intersection(&t), BinarySubspace::new(4, [0b0011]));
    }
}

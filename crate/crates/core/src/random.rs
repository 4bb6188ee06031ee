//! Seeded generators for complexes, matrices and subgroups used by the
//! property batteries and the oracle suite.

use crate::equivariant::{check_condition1, check_free};
use crate::int::int;
use crate::lattice::{BinarySubspace, IntMatrix, Lattice, TorusSubgroup};
use crate::simplicial::{full_set, SimplicialComplex, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonvoid complex on `[m]`, generated by a few random faces.
/// Ghost vertices are allowed.
pub fn random_complex(rng: &mut TestRng, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=m + 1);
    let mut gens: Vec<VertexSet> = Vec::with_capacity(count);
    for _ in 0..count {
        let size = rng.gen_range(0..=m.min(4));
        let mut verts: Vec<usize> = (0..m).collect();
        verts.shuffle(rng);
        gens.push(verts[..size].iter().fold(0u64, |a, &v| a | 1 << v));
    }
    SimplicialComplex::new(m, gens).expect("vertices in range")
}

/// `count` random complexes with `1 <= m <= max_m`.
pub fn small_complexes(max_m: usize, count: usize, seed: u64) -> Vec<SimplicialComplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let m = r.gen_range(1..=max_m);
            random_complex(&mut r, m)
        })
        .collect()
}

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> =
        (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_i64(cols, &data)
}

/// A random unimodular matrix built from elementary operations.
pub fn random_unimodular(rng: &mut TestRng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    for _ in 0..3 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let f = int(rng.gen_range(-2..=2));
                let mut rows = u.clone().into_rows();
                let add: Vec<_> = rows[j].iter().map(|x| x * &f).collect();
                for (a, b) in rows[i].iter_mut().zip(add) {
                    *a += b;
                }
                u = IntMatrix::from_rows(n, rows);
            }
            1 => {
                let mut rows = u.clone().into_rows();
                rows.swap(i, j);
                u = IntMatrix::from_rows(n, rows);
            }
            _ => {
                let mut rows = u.clone().into_rows();
                for x in rows[i].iter_mut() {
                    *x = -x.clone();
                }
                u = IntMatrix::from_rows(n, rows);
            }
        }
    }
    u
}

/// Random sublattice of `Z^m` with small generators.
pub fn random_lattice(rng: &mut TestRng, m: usize) -> Lattice {
    let r = rng.gen_range(0..=m + 1);
    let gens: Vec<Vec<i64>> = (0..r).map(|_| (0..m).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    Lattice::from_i64(m, &gens)
}

pub fn random_binary_subspace(rng: &mut TestRng, m: usize, max_dim: usize) -> BinarySubspace {
    let k = rng.gen_range(0..=max_dim);
    BinarySubspace::new(m, (0..k).map(|_| rng.gen::<u64>() & full_set(m)))
}

/// A random subgroup acting freely on the moment-angle complex of `k`.
/// Falls back to the trivial subgroup after a bounded number of attempts.
pub fn random_free_subgroup(rng: &mut TestRng, k: &SimplicialComplex, d: u8) -> TorusSubgroup {
    let m = k.m();
    for _ in 0..64 {
        let h = match d {
            2 => {
                let corank = rng.gen_range(0..=m.min(3));
                let rank = m - corank;
                let mut gens: Vec<Vec<i64>> = Vec::new();
                // start from the identity on a random coordinate subset, then perturb
                let mut coords: Vec<usize> = (0..m).collect();
                coords.shuffle(rng);
                for &c in coords.iter().take(rank) {
                    let mut v: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
                    v[c] = 1;
                    gens.push(v);
                }
                TorusSubgroup::from_annihilator(Lattice::from_i64(m, &gens))
            }
            _ => TorusSubgroup::from_subspace(random_binary_subspace(rng, m, m.min(3))),
        };
        if check_free(k, &h).map(|r| r.free).unwrap_or(false) {
            return h;
        }
    }
    TorusSubgroup::trivial(m, d)
}

/// A random subgroup satisfying Condition 1 on `k`. Mixes coordinate
/// subgroups, free subgroups and random lattices that pass the check.
pub fn random_condition1_subgroup(rng: &mut TestRng, k: &SimplicialComplex, d: u8) -> TorusSubgroup {
    let m = k.m();
    match rng.gen_range(0..4) {
        0 => TorusSubgroup::coordinate(m, d, rng.gen::<u64>() & full_set(m)),
        1 => random_free_subgroup(rng, k, d),
        _ => {
            for _ in 0..64 {
                let h = match d {
                    2 => TorusSubgroup::from_annihilator(random_lattice(rng, m)),
                    _ => TorusSubgroup::from_subspace(random_binary_subspace(rng, m, m)),
                };
                if check_condition1(k, &h).map(|r| r.holds).unwrap_or(false) {
                    return h;
                }
            }
            TorusSubgroup::coordinate(m, d, rng.gen::<u64>() & full_set(m))
        }
    }
}

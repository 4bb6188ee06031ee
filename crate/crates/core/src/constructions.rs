//! Building a simple polytope and a free circle whose quotient carries
//! prescribed torsion: subdivide a Moore-space triangulation, truncate the
//! simplex along its minimal non-faces, and take the circle `λ_α` attached
//! to a non-edge.

use crate::equivariant::{check_condition1, check_free};
use crate::error::{MaqError, Result};
use crate::homology::{reduced_cohomology, Coefficients, GradedAbGroup};
use crate::int::Int;
use crate::lattice::{Lattice, TorusSubgroup};
use crate::quotient::koszul_cohomology;
use crate::simplicial::{vertices_of, SimplicialComplex, SphereSanity, VertexSet};
use num_traits::{One, Zero};
use serde::Serialize;

/// Truncates the face of the dual simple polytope that corresponds to
/// `sigma`, i.e. subdivides the sphere stellarly at `sigma`.
pub fn truncate_face(sphere: &SimplicialComplex, sigma: VertexSet) -> Result<SimplicialComplex> {
    if !sphere.checked_is_face(sigma)? {
        return Err(MaqError::pre(format!("{:?} is not a face of the sphere", vertices_of(sigma))));
    }
    if !sphere.sphere_sanity().passes() {
        return Err(MaqError::pre("truncation needs a sphere"));
    }
    let out = sphere.stellar_subdivision(sigma)?;
    debug_assert!(!out.is_face(sigma));
    Ok(out)
}

/// The nerve `K̃` of the simplex on `[m]` truncated at every minimal
/// non-face of `K'`, processed in the given order.
pub fn truncate_along(k: &SimplicialComplex, order: &[VertexSet]) -> Result<SimplicialComplex> {
    let m = k.m();
    if m < 3 {
        return Err(MaqError::pre(format!("the truncation needs m >= 3, got {m}")));
    }
    let mut sphere = SimplicialComplex::boundary_simplex(m)?;
    for &sigma in order {
        if !sphere.is_face(sigma) {
            return Err(MaqError::Internal(format!(
                "minimal non-face {:?} is no longer a face during truncation",
                vertices_of(sigma)
            )));
        }
        sphere = truncate_face(&sphere, sigma)?;
    }
    Ok(sphere)
}

/// `K̃` with the minimal non-faces of `K'` taken in lexicographic order.
pub fn bosio_meersseman_nerve(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let mf = k.minimal_non_faces();
    if k.is_void() || mf.is_empty() {
        return Err(MaqError::pre("the complex needs a minimal non-face"));
    }
    if mf.contains(&crate::simplicial::full_set(k.m())) {
        return Err(MaqError::pre("a minimal non-face equal to [m] cannot be truncated"));
    }
    truncate_along(k, &mf)
}

/// The circle in `T^M` with annihilator `{χ : χ_i = χ_j}` (1-based `i`, `j`).
pub fn lambda_alpha_subgroup(big_m: usize, i: usize, j: usize) -> Result<TorusSubgroup> {
    if i == j || i == 0 || j == 0 || i > big_m || j > big_m {
        return Err(MaqError::pre(format!("need two distinct vertices in 1..={big_m}, got {i} and {j}")));
    }
    let (i, j) = (i - 1, j - 1);
    let gens = (0..big_m)
        .filter(|&k| k != j)
        .map(|k| {
            let mut v = vec![Int::zero(); big_m];
            v[k] = Int::one();
            if k == i {
                v[j] = Int::one();
            }
            v
        })
        .collect();
    Ok(TorusSubgroup::from_annihilator(Lattice::new(big_m, gens)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionPipelineReport {
    /// Vertices of the input triangulation.
    pub input_m: usize,
    /// Vertices of `K'`.
    pub m: usize,
    pub k_prime_facets: Vec<Vec<usize>>,
    pub mf_count: usize,
    pub big_m: usize,
    pub nerve_dimension: i64,
    pub sphere_sanity: SphereSanity,
    pub pair: [usize; 2],
    pub subgroup: TorusSubgroup,
    pub free: bool,
    pub condition1: bool,
    pub mf_preserved: bool,
    /// Reduced cohomology of the input, to confirm the Moore space.
    pub input_cohomology: GradedAbGroup,
    pub p: i64,
    /// Predicted degree of the torsion summand, `p + m`.
    pub q: i64,
    /// `2m + |MF(K')| - 2`, i.e. `dim Z_P - 1`.
    pub quotient_dimension: i64,
    /// Present only when the cohomology of the quotient was computed.
    pub verified_cohomology: Option<GradedAbGroup>,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub verify_cohomology: bool,
    /// Largest `M` for which the verification is attempted.
    pub verify_bound: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { verify_cohomology: false, verify_bound: 14 }
    }
}

pub fn torsion_pipeline(k: &SimplicialComplex, p: i64, opts: &PipelineOptions) -> Result<TorsionPipelineReport> {
    if k.m() < 3 {
        return Err(MaqError::pre(format!("the pipeline needs m >= 3, got {}", k.m())));
    }
    let first = *k.facets().first().ok_or_else(|| MaqError::pre("the input complex is void"))?;
    let k_prime = k.stellar_subdivision(first)?;
    let m = k_prime.m();
    let pair = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .find(|&(a, b)| !k_prime.is_face(1 << a | 1 << b))
        .ok_or_else(|| MaqError::Internal("subdivided complex has no non-edge".into()))?;
    let mf = k_prime.minimal_non_faces();
    let nerve = bosio_meersseman_nerve(&k_prime)?;
    let big_m = nerve.m();
    if big_m != m + mf.len() {
        return Err(MaqError::Internal(format!("nerve has {big_m} vertices, expected {}", m + mf.len())));
    }
    let mf_preserved = mf.iter().all(|&s| nerve.is_minimal_non_face(s));
    let pair_sets = 1u64 << pair.0 | 1 << pair.1;
    if nerve.is_face(pair_sets) {
        return Err(MaqError::Internal("chosen pair is a face of the nerve".into()));
    }
    let h = lambda_alpha_subgroup(big_m, pair.0 + 1, pair.1 + 1)?;
    let free = check_free(&nerve, &h)?.free;
    if !free {
        return Err(MaqError::Internal("the circle does not act freely on the truncated polytope".into()));
    }
    let condition1 = check_condition1(&nerve, &h)?.holds;
    let verified_cohomology = if opts.verify_cohomology {
        if big_m > opts.verify_bound {
            return Err(MaqError::bound(format!(
                "verifying the quotient cohomology needs M <= {}, got {big_m}",
                opts.verify_bound
            )));
        }
        Some(koszul_cohomology(&nerve, &h, p + m as i64 + 1)?)
    } else {
        None
    };
    Ok(TorsionPipelineReport {
        input_m: k.m(),
        m,
        k_prime_facets: k_prime.facets().iter().map(|&f| vertices_of(f)).collect(),
        mf_count: mf.len(),
        big_m,
        nerve_dimension: nerve.dim().unwrap_or(-1),
        sphere_sanity: nerve.sphere_sanity(),
        pair: [pair.0 + 1, pair.1 + 1],
        subgroup: h,
        free,
        condition1,
        mf_preserved,
        input_cohomology: reduced_cohomology(k, Coefficients::Integers),
        p,
        q: p + m as i64,
        quotient_dimension: 2 * m as i64 + mf.len() as i64 - 2,
        verified_cohomology,
        provenance: vec![
            "torsion in degree q = p + m is a prediction of the construction, not recomputed".into(),
            "the nerve is certified only by the sphere sanity battery, not as polytopal".into(),
            "the identification of the restricted nerve with K' is not checked".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FinAbGroup;
    use crate::int::int;
    use crate::simplicial::{rp2_6, set_of};

    #[test]
    fn truncating_an_edge_of_a_triangle() {
        let tri = SimplicialComplex::boundary_simplex(3).unwrap();
        let out = truncate_face(&tri, set_of(&[1, 2])).unwrap();
        assert_eq!(out.m(), 4);
        assert!(!out.is_face(set_of(&[1, 2])));
        assert!(out.sphere_sanity().passes());
        assert!(truncate_face(&out, set_of(&[1, 2])).is_err());
    }

    #[test]
    fn three_points_give_a_hexagon() {
        let k = SimplicialComplex::skeleton(3, 0).unwrap();
        let nerve = bosio_meersseman_nerve(&k).unwrap();
        assert_eq!(nerve.m(), 6);
        assert_eq!(nerve.facets().len(), 6);
        assert_eq!(nerve.dim(), Some(1));
        assert!(nerve.sphere_sanity().passes());
        assert!(bosio_meersseman_nerve(&SimplicialComplex::skeleton(2, 0).unwrap()).is_err());
        assert!(bosio_meersseman_nerve(&SimplicialComplex::simplex(4)).is_err());
    }

    #[test]
    fn nerve_keeps_minimal_non_faces() {
        for k in crate::random::small_complexes(6, 30, 401) {
            let mf = k.minimal_non_faces();
            if k.m() < 3 || mf.is_empty() || mf.contains(&crate::simplicial::full_set(k.m())) || mf.contains(&0) {
                continue;
            }
            let nerve = bosio_meersseman_nerve(&k).unwrap();
            assert_eq!(nerve.m(), k.m() + mf.len());
            assert!(mf.iter().all(|&s| nerve.is_minimal_non_face(s)), "{k:?}");
            assert!(nerve.sphere_sanity().passes());
        }
    }

    #[test]
    fn lambda_alpha() {
        let h = lambda_alpha_subgroup(2, 1, 2).unwrap();
        assert_eq!(h.annihilator().unwrap(), &Lattice::from_i64(2, &[vec![1, 1]]));
        assert_eq!(h.rank(), 1);
        let h = lambda_alpha_subgroup(5, 2, 4).unwrap();
        assert_eq!(h.rank(), 1);
        for set in 0..32u64 {
            let meet = h.meet_coordinate(set).intersection;
            if set & 0b1010 == 0b1010 {
                assert_eq!(meet, FinAbGroup::free(1));
            } else {
                assert!(meet.is_trivial());
            }
        }
        assert!(lambda_alpha_subgroup(3, 2, 2).is_err());
    }

    #[test]
    fn projective_plane_pipeline() {
        let r = torsion_pipeline(&rp2_6(), 2, &PipelineOptions::default()).unwrap();
        assert_eq!((r.input_m, r.m, r.mf_count, r.big_m), (6, 7, 14, 21));
        assert_eq!((r.q, r.quotient_dimension, r.nerve_dimension), (9, 26, 5));
        assert!(r.free && r.condition1 && r.mf_preserved);
        assert!(r.sphere_sanity.passes());
        assert_eq!(r.input_cohomology.get(2), FinAbGroup::new(0, vec![int(2)]));
        assert_eq!(r.input_cohomology.iter().count(), 1);
        let verify = PipelineOptions { verify_cohomology: true, ..PipelineOptions::default() };
        assert!(matches!(torsion_pipeline(&rp2_6(), 2, &verify), Err(MaqError::BoundExceeded(_))));
    }

    #[test]
    fn circle_pipeline() {
        let r = torsion_pipeline(&SimplicialComplex::boundary_simplex(3).unwrap(), 1, &PipelineOptions::default()).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(r.q, 5);
        assert_eq!(r.big_m, r.m + r.mf_count);
    }
}

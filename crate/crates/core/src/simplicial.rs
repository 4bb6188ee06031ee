//! Finite simplicial complexes on `[m]` with faces packed into bitmasks.
//!
//! Vertex `i` (1-based) is bit `i - 1`. A complex is stored by its facets,
//! kept inclusion maximal and sorted lexicographically. The void complex has
//! no facets at all; the complex `{∅}` has the single facet `0`.

use crate::error::{MaqError, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 64;

/// 0-based positions of the set bits.
pub fn bits(set: VertexSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut s = set;
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

/// 1-based vertex list of a set.
pub fn vertices_of(set: VertexSet) -> Vec<usize> {
    bits(set).into_iter().map(|i| i + 1).collect()
}

/// Set from 1-based vertices.
pub fn set_of(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | 1 << (v - 1))
}

/// Lexicographic order of sorted vertex lists.
pub fn lex_cmp(a: VertexSet, b: VertexSet) -> Ordering {
    vertices_of(a).cmp(&vertices_of(b))
}

/// Iterates over all subsets of `set`, including `0` and `set` itself.
pub fn subsets(set: VertexSet) -> impl Iterator<Item = VertexSet> {
    let mut next = Some(set);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & set) };
        Some(cur)
    })
}

/// Packs the bits of `set` selected by `support` into consecutive low bits.
pub fn compress(set: VertexSet, support: VertexSet) -> VertexSet {
    bits(support)
        .into_iter()
        .enumerate()
        .fold(0, |acc, (k, i)| if set >> i & 1 == 1 { acc | 1 << k } else { acc })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

/// A strictly decreasing chain of faces, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceChain {
    faces: Vec<VertexSet>,
}

impl FaceChain {
    pub fn new(faces: Vec<VertexSet>) -> Result<Self> {
        for w in faces.windows(2) {
            if w[1] & !w[0] != 0 || w[1] == w[0] {
                return Err(MaqError::pre("chain is not strictly decreasing"));
            }
        }
        Ok(FaceChain { faces })
    }

    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    /// Number of strict steps `s` of `I0 ⊃ ... ⊃ Is`.
    pub fn length(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn is_in(&self, k: &SimplicialComplex) -> bool {
        self.faces.iter().all(|&f| k.is_face(f))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereSanity {
    pub dimension: i64,
    pub pure: bool,
    pub pseudomanifold: bool,
    pub euler_characteristic: i64,
    pub euler_matches_sphere: bool,
    /// `None` below dimension 2, where vertex links of spheres are disconnected.
    pub links_connected: Option<bool>,
}

impl SphereSanity {
    pub fn passes(&self) -> bool {
        self.pure && self.pseudomanifold && self.euler_matches_sphere && self.links_connected != Some(false)
    }
}

fn maximalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept.sort_by(|&a, &b| lex_cmp(a, b));
    kept
}

impl SimplicialComplex {
    /// Builds a complex from generating faces; non-maximal ones are dropped.
    pub fn new(m: usize, faces: Vec<VertexSet>) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(MaqError::pre(format!("at most {MAX_VERTICES} vertices are supported, got {m}")));
        }
        let mask = full_set(m);
        if let Some(bad) = faces.iter().find(|&&f| f & !mask != 0) {
            return Err(MaqError::pre(format!("face {:?} has a vertex outside [{m}]", vertices_of(*bad))));
        }
        Ok(SimplicialComplex { m, facets: maximalize(faces) })
    }

    pub fn from_facets(m: usize, facets: &[&[usize]]) -> Result<Self> {
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(MaqError::pre(format!("vertex {v} outside [{m}]")));
            }
        }
        Self::new(m, facets.iter().map(|f| set_of(f)).collect())
    }

    /// The complex with no faces at all.
    pub fn void(m: usize) -> Self {
        SimplicialComplex { m, facets: Vec::new() }
    }

    /// The complex whose only face is `∅`.
    pub fn empty_face(m: usize) -> Self {
        SimplicialComplex { m, facets: vec![0] }
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Self {
        SimplicialComplex { m, facets: vec![full_set(m)] }
    }

    /// `k`-skeleton of the simplex on `[m]`: every `(k+1)`-subset is a facet.
    pub fn skeleton(m: usize, k: usize) -> Result<Self> {
        if m < 2 || k + 2 > m {
            return Err(MaqError::pre(format!("skeleton needs m >= 2 and 0 <= k <= m-2, got m={m}, k={k}")));
        }
        Ok(Self::skeleton_unchecked(m, k))
    }

    /// Like [`Self::skeleton`] but also allows the full simplex (`k = m - 1`).
    pub fn skeleton_unchecked(m: usize, k: usize) -> Self {
        let facets = subsets(full_set(m)).filter(|s| s.count_ones() as usize == k + 1).collect();
        SimplicialComplex { m, facets: maximalize(facets) }
    }

    pub fn boundary_simplex(m: usize) -> Result<Self> {
        Self::skeleton(m, m.saturating_sub(2))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for `{∅}` and `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max()
    }

    pub fn is_face(&self, set: VertexSet) -> bool {
        self.facets.iter().any(|&f| set & !f == 0)
    }

    pub fn checked_is_face(&self, set: VertexSet) -> Result<bool> {
        if set & !full_set(self.m) != 0 {
            return Err(MaqError::pre(format!("vertex outside [{}]", self.m)));
        }
        Ok(self.is_face(set))
    }

    /// Vertices `i` with `{i} ∈ K`.
    pub fn vertex_set(&self) -> VertexSet {
        self.facets.iter().fold(0, |a, &f| a | f)
    }

    /// Every face including `∅`, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut set: HashSet<VertexSet> = HashSet::new();
        for &f in &self.facets {
            set.extend(subsets(f));
        }
        let mut v: Vec<VertexSet> = set.into_iter().collect();
        v.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then(lex_cmp(a, b)));
        v
    }

    pub fn face_set(&self) -> HashSet<VertexSet> {
        let mut set = HashSet::new();
        for &f in &self.facets {
            set.extend(subsets(f));
        }
        set
    }

    /// `f_0, f_1, ..., f_dim` (the empty face is not counted).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dim().map_or(0, |d| (d + 1).max(0) as usize)];
        for s in self.faces() {
            if s != 0 {
                f[s.count_ones() as usize - 1] += 1;
            }
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Inclusion-minimal non-faces, sorted lexicographically.
    pub fn minimal_non_faces(&self) -> Vec<VertexSet> {
        let faces = self.face_set();
        if faces.is_empty() {
            // void complex: ∅ itself is the only minimal non-face
            return vec![0];
        }
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for &g in &faces {
            for x in 0..self.m {
                if g >> x & 1 == 1 {
                    continue;
                }
                let s = g | 1 << x;
                if !seen.insert(s) || faces.contains(&s) {
                    continue;
                }
                if bits(s).into_iter().all(|y| faces.contains(&(s & !(1 << y)))) {
                    out.insert(vertices_of(s));
                }
            }
        }
        out.into_iter().map(|v| set_of(&v)).collect()
    }

    pub fn is_minimal_non_face(&self, set: VertexSet) -> bool {
        !self.is_face(set) && bits(set).into_iter().all(|y| self.is_face(set & !(1 << y)))
    }

    /// `K_I = {J ∈ K : J ⊆ I}` re-indexed on the vertices of `I` in order.
    pub fn full_subcomplex(&self, set: VertexSet) -> SimplicialComplex {
        let faces: Vec<VertexSet> = if self.is_void() {
            Vec::new()
        } else {
            self.facets.iter().map(|&f| compress(f & set, set)).collect()
        };
        SimplicialComplex { m: set.count_ones() as usize, facets: maximalize(faces) }
    }

    /// Faces of `K` inside `set`, keeping the ambient labels.
    pub fn restrict(&self, set: VertexSet) -> SimplicialComplex {
        SimplicialComplex { m: self.m, facets: maximalize(self.facets.iter().map(|&f| f & set).collect()) }
    }

    /// `K / I0 = {I \ I0 : I ∈ K}` on `[m] \ I0`, re-indexed.
    pub fn contraction(&self, set: VertexSet) -> SimplicialComplex {
        self.full_subcomplex(full_set(self.m) & !set)
    }

    /// Cone with apex `m + 1`.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = 1u64 << self.m;
        SimplicialComplex::new(self.m + 1, self.facets.iter().map(|&f| f | apex).collect())
    }

    /// Nonempty faces in the vertex order used by [`Self::order_complex`].
    pub fn nonempty_faces(&self) -> Vec<VertexSet> {
        self.faces().into_iter().filter(|&f| f != 0).collect()
    }

    /// Barycentric subdivision: vertices are the nonempty faces (ordered as in
    /// [`Self::nonempty_faces`]), faces are chains.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        let verts = self.nonempty_faces();
        if verts.len() > MAX_VERTICES {
            return Err(MaqError::bound(format!("order complex would have {} vertices", verts.len())));
        }
        if self.is_void() {
            return Ok(SimplicialComplex::void(0));
        }
        let index: HashMap<VertexSet, usize> = verts.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut chains = Vec::new();
        for &f in &self.facets {
            flags(f, 0, &index, &mut chains);
        }
        SimplicialComplex::new(verts.len(), chains)
    }

    pub fn link(&self, sigma: VertexSet) -> SimplicialComplex {
        let faces = self.facets.iter().filter(|&&f| sigma & !f == 0).map(|&f| f & !sigma).collect();
        SimplicialComplex { m: self.m, facets: maximalize(faces) }
    }

    /// Stellar subdivision at the face `sigma`, with new vertex `m + 1`.
    pub fn stellar_subdivision(&self, sigma: VertexSet) -> Result<SimplicialComplex> {
        if sigma == 0 {
            return Err(MaqError::pre("stellar subdivision needs a nonempty face"));
        }
        if !self.checked_is_face(sigma)? {
            return Err(MaqError::pre(format!("{:?} is not a face", vertices_of(sigma))));
        }
        let apex = 1u64 << self.m;
        let mut out = Vec::new();
        for &f in &self.facets {
            if sigma & !f != 0 {
                out.push(f);
                continue;
            }
            for x in bits(sigma) {
                out.push((f & !(1 << x)) | apex);
            }
        }
        SimplicialComplex::new(self.m + 1, out)
    }

    /// Applies a vertex relabelling, `perm[i]` being the new 0-based index of vertex `i + 1`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        let map = |f: VertexSet| bits(f).into_iter().fold(0u64, |a, i| a | 1 << perm[i]);
        SimplicialComplex { m: self.m, facets: maximalize(self.facets.iter().map(|&f| map(f)).collect()) }
    }

    pub fn sphere_sanity(&self) -> SphereSanity {
        let Some(dim) = self.dim() else {
            return SphereSanity {
                dimension: -2,
                pure: false,
                pseudomanifold: false,
                euler_characteristic: 0,
                euler_matches_sphere: false,
                links_connected: None,
            };
        };
        let pure = self.facets.iter().all(|f| f.count_ones() as i64 == dim + 1);
        let mut ridges: HashMap<VertexSet, usize> = HashMap::new();
        for &f in &self.facets {
            for x in bits(f) {
                *ridges.entry(f & !(1 << x)).or_default() += 1;
            }
        }
        let pseudomanifold = dim >= 0 && ridges.values().all(|&c| c == 2);
        let chi = self.euler_characteristic();
        let sphere_chi = if dim % 2 == 0 { 2 } else { 0 };
        let links_connected = (dim >= 2).then(|| {
            bits(self.vertex_set()).into_iter().all(|v| self.link(1 << v).is_connected())
        });
        SphereSanity {
            dimension: dim,
            pure,
            pseudomanifold,
            euler_characteristic: chi,
            euler_matches_sphere: chi == sphere_chi,
            links_connected,
        }
    }

    /// Whether the 1-skeleton on the non-ghost vertices is connected.
    pub fn is_connected(&self) -> bool {
        let verts = bits(self.vertex_set());
        if verts.is_empty() {
            return true;
        }
        let mut reach: VertexSet = 1 << verts[0];
        loop {
            let grown = self.facets.iter().filter(|&&f| f & reach != 0).fold(reach, |a, &f| a | f);
            if grown == reach {
                break;
            }
            reach = grown;
        }
        reach == self.vertex_set()
    }

    /// Isomorphism test up to vertex relabelling (ghost vertices included).
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        if self.m != other.m || self.facets.len() != other.facets.len() || self.f_vector() != other.f_vector() {
            return false;
        }
        let sig = |k: &SimplicialComplex, v: usize| {
            let mut s: Vec<u32> = k.facets.iter().filter(|&&f| f >> v & 1 == 1).map(|f| f.count_ones()).collect();
            s.sort_unstable();
            s
        };
        let sa: Vec<Vec<u32>> = (0..self.m).map(|v| sig(self, v)).collect();
        let sb: Vec<Vec<u32>> = (0..other.m).map(|v| sig(other, v)).collect();
        let mut ca = sa.clone();
        let mut cb = sb.clone();
        ca.sort();
        cb.sort();
        if ca != cb {
            return false;
        }
        let target: HashSet<VertexSet> = other.facets.iter().copied().collect();
        let mut perm = vec![usize::MAX; self.m];
        let mut used = vec![false; self.m];
        iso_search(self, &target, &sa, &sb, 0, &mut perm, &mut used)
    }
}

fn iso_search(
    a: &SimplicialComplex,
    target: &HashSet<VertexSet>,
    sa: &[Vec<u32>],
    sb: &[Vec<u32>],
    v: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v > 0 {
        let assigned = full_set(v);
        let newest = 1u64 << (v - 1);
        // facets completed by the newest vertex must land on facets
        for &f in a.facets() {
            if f & newest != 0 && f & !assigned == 0 {
                let img = bits(f).into_iter().fold(0u64, |acc, i| acc | 1 << perm[i]);
                if !target.contains(&img) {
                    return false;
                }
            }
        }
    }
    if v == a.m() {
        return true;
    }
    for w in 0..a.m() {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        perm[v] = w;
        used[w] = true;
        if iso_search(a, target, sa, sb, v + 1, perm, used) {
            return true;
        }
        used[w] = false;
    }
    perm[v] = usize::MAX;
    false
}

fn flags(rest: VertexSet, acc: VertexSet, index: &HashMap<VertexSet, usize>, out: &mut Vec<VertexSet>) {
    // complete flags of the facet, built by removing one vertex at a time
    if rest == 0 {
        out.push(acc);
        return;
    }
    let here = acc | 1 << index[&rest];
    for x in bits(rest) {
        flags(rest & !(1 << x), here, index, out);
    }
}

pub fn full_set(m: usize) -> VertexSet {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// `ℝP^2` on six vertices.
pub fn rp2_6() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    )
    .expect("static complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap()
    }

    /// Brute force face list from the facets.
    fn brute_faces(k: &SimplicialComplex) -> BTreeSet<VertexSet> {
        (0..1u64 << k.m()).filter(|&s| k.facets().iter().any(|&f| s & !f == 0)).collect()
    }

    #[test]
    fn face_queries() {
        let k = two_points();
        assert!(!k.is_face(0b11));
        assert!(k.is_face(0));
        let pts = SimplicialComplex::skeleton(4, 0).unwrap();
        assert!(pts.is_face(0b0100));
        assert!(k.checked_is_face(0b100).is_err());
        assert!(!SimplicialComplex::void(3).is_face(0));
        assert!(SimplicialComplex::empty_face(3).is_face(0));
        assert_ne!(SimplicialComplex::void(2), SimplicialComplex::empty_face(2));
    }

    #[test]
    fn minimal_non_faces_examples() {
        assert_eq!(two_points().minimal_non_faces(), vec![0b11]);
        let mf = rp2_6().minimal_non_faces();
        assert_eq!(mf.len(), 10);
        assert!(mf.iter().all(|s| s.count_ones() == 3));
        let sk = SimplicialComplex::skeleton(5, 1).unwrap();
        let mf = sk.minimal_non_faces();
        assert_eq!(mf.len(), 10);
        assert!(mf.iter().all(|s| s.count_ones() == 3));
    }

    #[test]
    fn minimal_non_faces_regenerate() {
        for k in crate::random::small_complexes(6, 60, 11) {
            let mf = k.minimal_non_faces();
            for s in 0..1u64 << k.m() {
                let contains_mf = mf.iter().any(|&n| n & !s == 0);
                assert_eq!(k.is_face(s), !contains_mf, "{k:?} {s:b}");
            }
            for w in mf.iter() {
                for v in mf.iter() {
                    assert!(w == v || w & !v != 0);
                }
            }
        }
    }

    #[test]
    fn rp2_f_vector() {
        let k = rp2_6();
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(!k.sphere_sanity().euler_matches_sphere);
        assert!(k.sphere_sanity().pseudomanifold);
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(SimplicialComplex::skeleton(4, 0).unwrap().facets().len(), 4);
        assert_eq!(SimplicialComplex::skeleton(5, 1).unwrap().facets().len(), 10);
        assert_eq!(SimplicialComplex::skeleton(4, 2).unwrap(), SimplicialComplex::boundary_simplex(4).unwrap());
        assert!(SimplicialComplex::skeleton(4, 3).is_err());
        assert!(SimplicialComplex::skeleton(1, 0).is_err());
    }

    #[test]
    fn full_subcomplex_examples() {
        let k = two_points();
        assert_eq!(k.full_subcomplex(0b01), SimplicialComplex::from_facets(1, &[&[1]]).unwrap());
        let pts = SimplicialComplex::skeleton(4, 0).unwrap();
        assert_eq!(pts.full_subcomplex(0b0011), two_points());
        assert_eq!(rp2_6().full_subcomplex(0b111111), rp2_6());
    }

    #[test]
    fn full_subcomplex_brute_force() {
        for k in crate::random::small_complexes(6, 40, 3) {
            for set in 0..1u64 << k.m() {
                let sub = k.full_subcomplex(set);
                let expect: BTreeSet<VertexSet> =
                    brute_faces(&k).into_iter().filter(|&f| f & !set == 0).map(|f| compress(f, set)).collect();
                assert_eq!(brute_faces(&sub), expect);
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let k = two_points();
        assert_eq!(k.contraction(0b01), SimplicialComplex::from_facets(1, &[&[1]]).unwrap());
        assert_eq!(k.contraction(0), k);
        let base = rp2_6();
        let cone = base.cone().unwrap();
        assert_eq!(cone.contraction(1 << 6), base);
    }

    #[test]
    fn contraction_composes() {
        for k in crate::random::small_complexes(5, 30, 5) {
            for i0 in 0..1u64 << k.m() {
                for i1 in subsets(full_set(k.m())).filter(|s| i0 & !s == 0) {
                    let step = k.contraction(i0);
                    let rest = compress(i1 & !i0, full_set(k.m()) & !i0);
                    assert_eq!(step.contraction(rest), k.contraction(i1));
                }
            }
        }
    }

    #[test]
    fn cone_and_order_complex() {
        let edge = SimplicialComplex::simplex(2);
        let oc = edge.order_complex().unwrap();
        assert_eq!(oc.f_vector(), vec![3, 2]);
        let cone = two_points().cone().unwrap();
        assert_eq!(cone, SimplicialComplex::from_facets(3, &[&[1, 3], &[2, 3]]).unwrap());
        let hex = SimplicialComplex::boundary_simplex(3).unwrap().order_complex().unwrap();
        assert_eq!(hex.f_vector(), vec![6, 6]);
        for k in crate::random::small_complexes(5, 30, 9) {
            let oc = k.order_complex().unwrap();
            assert_eq!(oc.m(), k.faces().len() - 1);
            assert_eq!(oc.euler_characteristic(), k.euler_characteristic());
        }
    }

    #[test]
    fn stellar_examples() {
        let tri = SimplicialComplex::simplex(3);
        let s = tri.stellar_subdivision(0b111).unwrap();
        assert_eq!(s.m(), 4);
        assert_eq!(s.facets().len(), 3);
        let k = rp2_6().stellar_subdivision(0b111).unwrap();
        assert_eq!(k.m(), 7);
        assert_eq!(k.f_vector()[2], 12);
        assert!(rp2_6().stellar_subdivision(0b1011).is_err());
        for k in crate::random::small_complexes(6, 60, 2) {
            for f in k.nonempty_faces() {
                let s = k.stellar_subdivision(f).unwrap();
                assert_eq!(s.m(), k.m() + 1);
                assert_eq!(s.euler_characteristic(), k.euler_characteristic());
            }
        }
    }

    #[test]
    fn sphere_sanity_examples() {
        let s = SimplicialComplex::boundary_simplex(4).unwrap().sphere_sanity();
        assert!(s.passes());
        assert_eq!(s.dimension, 2);
        let s = two_points().sphere_sanity();
        assert!(s.euler_matches_sphere && s.pseudomanifold);
        let bad = SimplicialComplex::from_facets(4, &[&[1, 2, 3], &[2, 3, 4]]).unwrap().sphere_sanity();
        assert!(!bad.pseudomanifold);
    }

    #[test]
    fn isomorphism() {
        let a = SimplicialComplex::from_facets(4, &[&[1, 2], &[2, 3], &[3, 4]]).unwrap();
        let b = SimplicialComplex::from_facets(4, &[&[2, 4], &[4, 1], &[1, 3]]).unwrap();
        let c = SimplicialComplex::from_facets(4, &[&[1, 2], &[1, 3], &[1, 4]]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
        let r = rp2_6();
        assert!(r.is_isomorphic(&r.relabel(&[3, 5, 0, 1, 4, 2])));
    }

    #[test]
    fn chains() {
        assert!(FaceChain::new(vec![0b111, 0b011, 0]).is_ok());
        assert!(FaceChain::new(vec![0b011, 0b101]).is_err());
        assert_eq!(FaceChain::new(vec![0b111, 0b011, 0]).unwrap().length(), 2);
    }
}

//! Freeness and Condition 1 checks, cohomology of classifying spaces of
//! quasitori, and the equivariant cohomology of `(D^d, S^{d-1})^K / H` as an
//! inverse limit over `cat K`.
//!
//! For a face `I` put `S(I) = G^I / (H ∩ G^I)`. Its character group is
//! `Λ_I = p_I(H^⊥)`, the projection of the annihilator of `H`. For d = 2 this
//! is a lattice and `H^*(BS(I); Z) = Sym(Λ_I)` with generators in degree 2.
//! For d = 1 the diagram is taken with `F_2` coefficients, where
//! `H^*(BS(I); F_2) = Sym(Λ_I ⊗ F_2)` with generators in degree 1.

use crate::error::{MaqError, Result};
use crate::homology::{derived_limits, limit_graded, DiagramSlice, GradedAbGroup, PosetDiagram, Presented, SparseMatrix};
use crate::int::{int, Int};
use crate::lattice::{BinarySubspace, FinAbGroup, Lattice, TorusSubgroup};
use crate::moment_angle::sr_dimension;
use crate::simplicial::{bits, subsets, vertices_of, SimplicialComplex, VertexSet};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeReport {
    pub free: bool,
    /// First facet (1-based vertices) where `H ∩ G^I` is nontrivial.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition1Report {
    pub holds: bool,
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub free: FreeReport,
    pub condition1: Condition1Report,
}

pub fn check_free(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<FreeReport> {
    h.check_ambient(k.m())?;
    let bad = k.facets().iter().copied().find(|&f| !h.meet_coordinate(f).intersection.is_trivial());
    Ok(FreeReport { free: bad.is_none(), witness: bad.map(vertices_of) })
}

/// Whether `p_I(H ∩ G^J) ⊆ H ∩ G^I` for the pair `I ⊂ J`.
fn pair_holds(h: &TorusSubgroup, lower: VertexSet, upper: VertexSet) -> bool {
    match h {
        // dually: Λ_I ⊆ Λ_J inside Z^J
        TorusSubgroup::Torus { annihilator } => {
            char_lattice(annihilator, lower).is_sublattice_of(&char_lattice(annihilator, upper))
        }
        TorusSubgroup::Binary { subspace } => {
            let m = subspace.ambient();
            let top = subspace.intersection(&BinarySubspace::coordinate(m, upper));
            let bottom = subspace.intersection(&BinarySubspace::coordinate(m, lower));
            top.basis().iter().all(|&v| bottom.contains(v & lower))
        }
    }
}

/// Condition 1 on covering pairs, scanned by upper face and then by lower
/// face in lexicographic order; the first failure is the witness.
pub fn check_condition1(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<Condition1Report> {
    h.check_ambient(k.m())?;
    for upper in k.faces() {
        for v in bits(upper).into_iter().rev() {
            let lower = upper & !(1 << v);
            if !pair_holds(h, lower, upper) {
                return Ok(failure(lower, upper));
            }
        }
    }
    Ok(Condition1Report { holds: true, witness: None })
}

/// Condition 1 on every pair `I ⊂ J` of faces, not only covers.
pub fn check_condition1_all_pairs(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<Condition1Report> {
    h.check_ambient(k.m())?;
    for upper in k.faces() {
        for lower in subsets(upper).filter(|&s| s != upper) {
            if !pair_holds(h, lower, upper) {
                return Ok(failure(lower, upper));
            }
        }
    }
    Ok(Condition1Report { holds: true, witness: None })
}

fn failure(lower: VertexSet, upper: VertexSet) -> Condition1Report {
    Condition1Report {
        holds: false,
        witness: Some(PairWitness { lower: vertices_of(lower), upper: vertices_of(upper) }),
    }
}

pub fn action_report(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<ActionReport> {
    let free = check_free(k, h)?;
    let condition1 = check_condition1(k, h)?;
    if free.free && !condition1.holds {
        return Err(MaqError::Internal("free action fails Condition 1".into()));
    }
    Ok(ActionReport { free, condition1 })
}

/// `p_I(H^⊥)`, kept inside `Z^m`.
fn char_lattice(annihilator: &Lattice, face: VertexSet) -> Lattice {
    annihilator.project(&bits(face))
}

/// `H^*(BG; Z)` up to `max_degree` for the quasitorus `G` with character
/// group `chars`, by Künneth over the cyclic and circle factors.
pub fn classifying_cohomology(chars: &FinAbGroup, max_degree: i64) -> GradedAbGroup {
    let mut factors: Vec<GradedAbGroup> = Vec::new();
    for _ in 0..chars.free_rank() {
        let mut g = GradedAbGroup::new();
        for n in (0..=max_degree).step_by(2) {
            g.add(n, &FinAbGroup::free(1));
        }
        factors.push(g);
    }
    for order in chars.torsion() {
        let mut g = GradedAbGroup::new();
        g.add(0, &FinAbGroup::free(1));
        for n in (2..=max_degree).step_by(2) {
            g.add(n, &FinAbGroup::new(0, vec![order.clone()]));
        }
        factors.push(g);
    }
    let mut point = GradedAbGroup::new();
    if max_degree >= 0 {
        point.add(0, &FinAbGroup::free(1));
    }
    factors.iter().fold(point, |acc, f| kunneth(&acc, f, max_degree))
}

/// Cohomology of a product from that of the factors (finite type, free
/// in degree 0): tensor terms in degree `p + q`, Tor terms in `p + q - 1`.
pub fn kunneth(a: &GradedAbGroup, b: &GradedAbGroup, max_degree: i64) -> GradedAbGroup {
    let mut out = GradedAbGroup::new();
    for (p, x) in a.iter() {
        for (q, y) in b.iter() {
            if p + q <= max_degree {
                out.add(p + q, &x.tensor(y));
            }
            if p + q - 1 <= max_degree {
                out.add(p + q - 1, &x.tor(y));
            }
        }
    }
    out
}

/// `H^*(B(Z/2)^r; F_2)`: a polynomial ring on `r` classes of degree 1.
pub fn classifying_cohomology_f2(rank: usize, max_degree: i64) -> GradedAbGroup {
    let mut out = GradedAbGroup::new();
    for n in 0..=max_degree {
        let dim = if rank == 0 { usize::from(n == 0) } else { crate::int::binomial_i(n + rank as i64 - 1, n) as usize };
        out.add(n, &FinAbGroup::elementary(2, dim));
    }
    out
}

/// Non-decreasing index sequences of length `n` over `0..k`.
fn monomials(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(k: usize, n: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i as u8);
            rec(k, n, i, cur, out);
            cur.pop();
        }
    }
    rec(k, n, 0, &mut cur, &mut out);
    out
}

/// `Sym^n(a)` for a linear map `a: Z^{cols} -> Z^{rows}` in monomial bases.
fn sym_power(a: &[Vec<Int>], rows: usize, cols: usize, n: usize, modulus: Option<&Int>) -> SparseMatrix {
    let targets = monomials(rows, n);
    let index: HashMap<&[u8], usize> = targets.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let sources = monomials(cols, n);
    let mut out = SparseMatrix::zeros(targets.len(), sources.len());
    for (col, mono) in sources.iter().enumerate() {
        let mut poly: HashMap<Vec<u8>, Int> = HashMap::from([(Vec::new(), Int::one())]);
        for &b in mono {
            let mut next: HashMap<Vec<u8>, Int> = HashMap::new();
            for (m, c) in &poly {
                for (r, row) in a.iter().enumerate() {
                    let x = &row[b as usize];
                    if x.is_zero() {
                        continue;
                    }
                    let mut m2 = m.clone();
                    let at = m2.partition_point(|&y| y <= r as u8);
                    m2.insert(at, r as u8);
                    *next.entry(m2).or_insert_with(Int::zero) += c * x;
                }
            }
            poly = next;
        }
        for (m, c) in poly {
            let c = match modulus {
                Some(p) => ((c % p) + p) % p,
                None => c,
            };
            if !c.is_zero() {
                out.add(index[m.as_slice()], col, c);
            }
        }
    }
    out.normalize();
    out
}

/// Per face, the character basis; per cover, the restriction `Λ_J -> Λ_I`
/// written in those bases as a dense `rank(Λ_I) x rank(Λ_J)` matrix.
struct CharacterData {
    ranks: Vec<usize>,
    arrows: Vec<Vec<Vec<Int>>>,
}

fn character_data(diagram: &PosetDiagram, h: &TorusSubgroup) -> Result<CharacterData> {
    let faces = diagram.faces();
    match h {
        TorusSubgroup::Torus { annihilator } => {
            let lats: Vec<Lattice> = faces.iter().map(|&f| char_lattice(annihilator, f)).collect();
            let arrows = diagram
                .covers()
                .iter()
                .map(|&(i, j)| {
                    let coords = bits(faces[i]);
                    let mut a = vec![vec![Int::zero(); lats[j].rank()]; lats[i].rank()];
                    for (b, row) in lats[j].basis().rows().iter().enumerate() {
                        let mut v = vec![Int::zero(); annihilator.ambient()];
                        for &c in &coords {
                            v[c] = row[c].clone();
                        }
                        let x = lats[i]
                            .coordinates(&v)
                            .ok_or_else(|| MaqError::Internal("projection leaves the character lattice".into()))?;
                        for (r, xr) in x.into_iter().enumerate() {
                            a[r][b] = xr;
                        }
                    }
                    Ok(a)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CharacterData { ranks: lats.iter().map(|l| l.rank()).collect(), arrows })
        }
        TorusSubgroup::Binary { subspace } => {
            let perp = subspace.perp();
            let spaces: Vec<BinarySubspace> = faces.iter().map(|&f| perp.project(f)).collect();
            let arrows = diagram
                .covers()
                .iter()
                .map(|&(i, j)| {
                    let mut a = vec![vec![Int::zero(); spaces[j].dim()]; spaces[i].dim()];
                    for (b, &v) in spaces[j].basis().iter().enumerate() {
                        let x = spaces[i]
                            .coordinates(v & faces[i])
                            .ok_or_else(|| MaqError::Internal("projection leaves the character space".into()))?;
                        for (r, row) in a.iter_mut().enumerate() {
                            if x >> r & 1 == 1 {
                                row[b] = Int::one();
                            }
                        }
                    }
                    Ok(a)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CharacterData { ranks: spaces.iter().map(|s| s.dim()).collect(), arrows })
        }
    }
}

/// The diagram `I -> H^*(BS(I))` over `cat K` in degrees `0..=max_degree`
/// (integral for d = 2, mod 2 for d = 1). Does not check Condition 1.
pub fn classifying_diagram(k: &SimplicialComplex, h: &TorusSubgroup, max_degree: i64) -> Result<PosetDiagram> {
    h.check_ambient(k.m())?;
    if max_degree < 0 {
        return Err(MaqError::pre("max_degree must be nonnegative"));
    }
    let mut diagram = PosetDiagram::new(k);
    let data = character_data(&diagram, h)?;
    let step = if h.d() == 2 { 2 } else { 1 };
    let two = int(2);
    let modulus = (h.d() == 1).then_some(&two);
    for degree in (0..=max_degree).step_by(step) {
        let n = (degree / step as i64) as usize;
        let objects: Vec<Presented> = data
            .ranks
            .iter()
            .map(|&r| {
                let gens = monomials(r, n).len();
                match modulus {
                    Some(p) => Presented::modulo(gens, p.clone()),
                    None => Presented::free(gens),
                }
            })
            .collect();
        let arrows = diagram
            .covers()
            .iter()
            .zip(&data.arrows)
            .map(|(&(i, j), a)| sym_power(a, data.ranks[i], data.ranks[j], n, modulus))
            .collect();
        diagram.insert_slice(degree, DiagramSlice { objects, arrows })?;
    }
    Ok(diagram)
}

fn require_condition1(k: &SimplicialComplex, h: &TorusSubgroup) -> Result<()> {
    let report = check_condition1(k, h)?;
    match report.witness {
        Some(w) => Err(MaqError::Condition1 { lower: w.lower, upper: w.upper }),
        None => Ok(()),
    }
}

/// `H^*_L((D^d, S^{d-1})^K / H)` as `lim H^*(BS(I))` up to `max_degree`;
/// `F_2` coefficients for d = 1 (each group reported as `(Z/2)^k`).
pub fn equivariant_limit(k: &SimplicialComplex, h: &TorusSubgroup, max_degree: i64) -> Result<GradedAbGroup> {
    h.check_ambient(k.m())?;
    require_condition1(k, h)?;
    Ok(limit_graded(&classifying_diagram(k, h, max_degree)?, max_degree))
}

/// All derived limits: entry `s` is `lim^s H^*(BS(-))` by degree.
pub fn derived_limit_page(k: &SimplicialComplex, h: &TorusSubgroup, max_degree: i64) -> Result<Vec<GradedAbGroup>> {
    let diagram = classifying_diagram(k, h, max_degree)?;
    let mut page: Vec<GradedAbGroup> = Vec::new();
    for degree in diagram.degrees().collect::<Vec<_>>() {
        let lims = derived_limits(&diagram, diagram.slice(degree).expect("stored degree"))?;
        for (s, g) in lims.into_iter().enumerate() {
            if page.len() <= s {
                page.resize(s + 1, GradedAbGroup::new());
            }
            page[s].set(degree, g);
        }
    }
    Ok(page)
}

/// Whether `lim H^*(BS(-); Z)` for `H = G^{I0}` matches `R_d[K / I0]`
/// degreewise up to `max_degree`.
pub fn coordinate_quotient_check(k: &SimplicialComplex, d: u8, i0: VertexSet, max_degree: i64) -> Result<bool> {
    let h = TorusSubgroup::coordinate(k.m(), d, i0);
    let lim = equivariant_limit(k, &h, max_degree)?;
    let quotient = k.contraction(i0);
    Ok((0..=max_degree).all(|n| {
        let g = lim.get(n);
        let dim = if d == 2 {
            if !g.is_free() {
                return false;
            }
            g.free_rank()
        } else {
            g.torsion().len()
        };
        dim as u128 == sr_dimension(&quotient, d, n)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{compatibility_matrix, ChainComplex, Coefficients};
    use crate::lattice::kernel;
    use crate::lattice::IntMatrix;
    use crate::random::{random_condition1_subgroup, random_free_subgroup, rng, small_complexes};
    use crate::simplicial::full_set;
    use rand::Rng;

    fn torus(gens: &[Vec<i64>], m: usize) -> TorusSubgroup {
        TorusSubgroup::from_annihilator(Lattice::from_i64(m, gens))
    }

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::skeleton(2, 0).unwrap()
    }

    #[test]
    fn freeness_examples() {
        let diag2 = torus(&[vec![1, 1], vec![0, 2]], 2);
        assert!(check_free(&two_points(), &diag2).unwrap().free);
        let k = SimplicialComplex::from_facets(3, &[&[1, 2], &[3]]).unwrap();
        let r = check_free(&k, &TorusSubgroup::coordinate(3, 2, 0b011)).unwrap();
        assert_eq!(r.witness, Some(vec![1, 2]));
        // anti-diagonal circle in coordinates {1, 2}, which is a non-face
        let anti = torus(&[vec![1, 1, 0], vec![0, 0, 1]], 3);
        let k = SimplicialComplex::from_facets(3, &[&[1, 3], &[2, 3]]).unwrap();
        assert!(check_free(&k, &anti).unwrap().free);
        assert!(check_free(&k, &TorusSubgroup::trivial(4, 2)).is_err());
    }

    #[test]
    fn condition1_examples() {
        let diag = torus(&[vec![1, -1]], 2);
        let r = check_condition1(&SimplicialComplex::simplex(2), &diag).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(PairWitness { lower: vec![1], upper: vec![1, 2] }));
        assert!(matches!(
            equivariant_limit(&SimplicialComplex::simplex(2), &diag, 4),
            Err(MaqError::Condition1 { .. })
        ));
        let mut r = rng(3);
        for k in small_complexes(5, 40, 8) {
            let i0 = r.gen::<u64>() & full_set(k.m());
            for d in [1, 2] {
                assert!(check_condition1(&k, &TorusSubgroup::coordinate(k.m(), d, i0)).unwrap().holds);
            }
        }
    }

    #[test]
    fn free_implies_condition1() {
        let mut r = rng(5);
        for k in small_complexes(5, 60, 9) {
            for d in [1, 2] {
                let h = random_free_subgroup(&mut r, &k, d);
                let report = action_report(&k, &h).unwrap();
                assert!(report.free.free);
                assert!(report.condition1.holds);
            }
        }
    }

    #[test]
    fn covers_suffice() {
        let mut r = rng(17);
        for k in small_complexes(5, 80, 10) {
            for d in [1, 2] {
                let h = match d {
                    2 => TorusSubgroup::from_annihilator(crate::random::random_lattice(&mut r, k.m())),
                    _ => TorusSubgroup::from_subspace(crate::random::random_binary_subspace(&mut r, k.m(), k.m())),
                };
                assert_eq!(
                    check_condition1(&k, &h).unwrap().holds,
                    check_condition1_all_pairs(&k, &h).unwrap().holds,
                    "{k:?} {h:?}"
                );
            }
        }
    }

    #[test]
    fn classifying_examples() {
        let c = classifying_cohomology(&FinAbGroup::free(1), 4);
        assert_eq!(c.ranks(), [(0, 1), (2, 1), (4, 1)].into_iter().collect());
        assert!(c.is_torsion_free());
        let z2 = classifying_cohomology(&FinAbGroup::new(0, vec![int(2)]), 4);
        assert_eq!(z2.get(0), FinAbGroup::free(1));
        assert!(z2.get(1).is_trivial() && z2.get(3).is_trivial());
        assert_eq!(z2.get(2), FinAbGroup::new(0, vec![int(2)]));
        assert_eq!(z2.get(4), FinAbGroup::new(0, vec![int(2)]));
        let pt = classifying_cohomology(&FinAbGroup::trivial(), 6);
        assert_eq!(pt.iter().count(), 1);
        let f2 = classifying_cohomology_f2(2, 3);
        assert_eq!(f2.elementary_dims().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    /// Cellular cochains of a product of `BS^1`s and `BZ/n`s as a tensor
    /// product of chain complexes.
    fn cellular_oracle(chars: &FinAbGroup, max_degree: i64) -> GradedAbGroup {
        let top = (max_degree + 1) as usize;
        // each factor: dims and boundary scalars d_k: C_k -> C_{k-1}
        type Factor = (Vec<usize>, Vec<Int>);
        let mut factors: Vec<Factor> = Vec::new();
        for _ in 0..chars.free_rank() {
            factors.push(((0..=top).map(|k| usize::from(k % 2 == 0)).collect(), vec![Int::zero(); top + 1]));
        }
        for n in chars.torsion() {
            let d = (0..=top).map(|k| if k >= 2 && k % 2 == 0 { n.clone() } else { Int::zero() }).collect();
            factors.push((vec![1; top + 1], d));
        }
        // basis of the product: tuples of cell degrees with total <= top
        let mut cells: Vec<Vec<usize>> = vec![Vec::new()];
        for (dims, _) in &factors {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    let used: usize = c.iter().sum();
                    (0..=top - used).filter(|&k| dims[k] == 1).map(move |k| {
                        let mut c2 = c.clone();
                        c2.push(k);
                        c2
                    })
                })
                .collect();
        }
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        for c in cells {
            by_degree[c.iter().sum::<usize>()].push(c);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> =
            by_degree.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
        let mut boundaries = Vec::new();
        for n in 1..=top {
            let mut b = SparseMatrix::zeros(by_degree[n - 1].len(), by_degree[n].len());
            for (j, c) in by_degree[n].iter().enumerate() {
                let mut before = 0;
                for (f, &k) in c.iter().enumerate() {
                    let x = &factors[f].1[k];
                    if k > 0 && !x.is_zero() {
                        let mut c2 = c.clone();
                        c2[f] -= 1;
                        let sign = if before % 2 == 0 { x.clone() } else { -x.clone() };
                        b.add(index[n - 1][&c2], j, sign);
                    }
                    before += k;
                }
            }
            b.normalize();
            boundaries.push(b);
        }
        let dims = by_degree.iter().map(|v| v.len()).collect();
        let h = ChainComplex::new(0, dims, boundaries).unwrap().cohomology(Coefficients::Integers);
        h.truncate(max_degree)
    }

    #[test]
    fn kunneth_matches_cellular_model() {
        let cases = [
            FinAbGroup::new(0, vec![int(2), int(2)]),
            FinAbGroup::new(1, vec![int(3)]),
            FinAbGroup::new(0, vec![int(2), int(4)]),
            FinAbGroup::new(2, vec![int(6)]),
            FinAbGroup::elementary(2, 3),
        ];
        for g in &cases {
            assert_eq!(classifying_cohomology(g, 7), cellular_oracle(g, 7), "{g}");
        }
    }

    #[test]
    fn kunneth_is_associative_on_products() {
        let a = FinAbGroup::new(1, vec![int(2)]);
        let b = FinAbGroup::new(0, vec![int(4), int(6)]);
        let direct = classifying_cohomology(&a.direct_sum(&b), 8);
        let paired = kunneth(&classifying_cohomology(&a, 8), &classifying_cohomology(&b, 8), 8);
        assert_eq!(direct, paired);
    }

    #[test]
    fn sym_power_of_identity_and_swap() {
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let s = sym_power(&id, 2, 2, 3, None);
        assert_eq!(s.nrows(), 4);
        assert_eq!(s.to_dense(), (0..4).map(|i| (0..4).map(|j| int((i == j) as i64)).collect::<Vec<_>>()).collect::<Vec<_>>());
        // x -> x + y on Z^1 -> Z^2 in degree 2: x^2 -> x^2 + 2xy + y^2
        let a = vec![vec![int(1)], vec![int(1)]];
        assert_eq!(sym_power(&a, 2, 1, 2, None).to_dense(), vec![vec![int(1)], vec![int(2)], vec![int(1)]]);
        assert_eq!(sym_power(&a, 2, 1, 2, Some(&int(2))).to_dense(), vec![vec![int(1)], vec![int(0)], vec![int(1)]]);
    }

    #[test]
    fn trivial_subgroup_gives_stanley_reisner() {
        for k in small_complexes(5, 30, 14) {
            for d in [1, 2] {
                let lim = equivariant_limit(&k, &TorusSubgroup::trivial(k.m(), d), 8).unwrap();
                for n in 0..=8 {
                    let g = lim.get(n);
                    let dim = if d == 2 { g.free_rank() } else { g.torsion().len() };
                    assert!(d == 1 || g.is_free());
                    assert_eq!(dim as u128, sr_dimension(&k, d, n), "{k:?} d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn coordinate_quotients() {
        // cone with apex 3 over two points, contracted at the apex
        let k = SimplicialComplex::from_facets(3, &[&[1, 3], &[2, 3]]).unwrap();
        assert!(coordinate_quotient_check(&k, 2, 0b100, 10).unwrap());
        assert!(coordinate_quotient_check(&k, 2, 0, 10).unwrap());
        let mut r = rng(41);
        for k in small_complexes(5, 30, 15) {
            let i0 = r.gen::<u64>() & full_set(k.m());
            for d in [1, 2] {
                assert!(coordinate_quotient_check(&k, d, i0, 8).unwrap(), "{k:?} {i0:b} d={d}");
            }
        }
    }

    #[test]
    fn odd_degrees_vanish_under_condition1() {
        let mut r = rng(77);
        for k in small_complexes(5, 25, 16) {
            let h = random_condition1_subgroup(&mut r, &k, 2);
            let lim = equivariant_limit(&k, &h, 9).unwrap();
            assert!(lim.iter().all(|(n, _)| n % 2 == 0), "{k:?}");
        }
    }

    #[test]
    fn higher_limits_vanish_for_free_actions() {
        let mut r = rng(78);
        for k in small_complexes(4, 12, 17) {
            let h = random_free_subgroup(&mut r, &k, 2);
            let page = derived_limit_page(&k, &h, 6).unwrap();
            assert!(page[1..].iter().all(|g| g.is_zero()), "{k:?} {h:?}");
        }
    }

    #[test]
    fn restriction_to_subcomplex_is_compatible() {
        let mut r = rng(79);
        for k in small_complexes(4, 12, 18) {
            let h = random_condition1_subgroup(&mut r, &k, 2);
            let sub = SimplicialComplex::new(k.m(), k.facets()[1..].to_vec()).unwrap();
            if sub.is_void() {
                continue;
            }
            let big = classifying_diagram(&k, &h, 4).unwrap();
            let small = classifying_diagram(&sub, &h, 4).unwrap();
            for degree in [0, 2, 4] {
                let (d_big, off_big) = compatibility_matrix(&big, big.slice(degree).unwrap());
                let (d_small, off_small) = compatibility_matrix(&small, small.slice(degree).unwrap());
                let dense = d_big.to_dense();
                let sols = kernel(&IntMatrix::from_rows(d_big.ncols(), dense));
                let objects = &small.slice(degree).unwrap().objects;
                for v in sols.rows() {
                    let mut w = vec![Int::zero(); d_small.ncols()];
                    for (fi, &f) in small.faces().iter().enumerate() {
                        let bi = big.faces().iter().position(|&g| g == f).unwrap();
                        for t in 0..objects[fi].gens {
                            w[off_small[fi] + t] = v[off_big[bi] + t].clone();
                        }
                    }
                    let image: Vec<Int> = d_small.to_dense().iter().map(|row| row.iter().zip(&w).map(|(a, b)| a * b).sum()).collect();
                    assert!(image.iter().all(|x| x.is_zero()));
                }
            }
        }
    }
}

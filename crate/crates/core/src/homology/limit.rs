//! Diagrams of finitely presented abelian groups over the face poset
//! `cat K` (faces including `∅`, arrows are restrictions `A(J) -> A(I)` for
//! `I ⊂ J`) and their degreewise inverse limits.

use super::complex::{ChainComplex, Coefficients};
use super::graded::GradedAbGroup;
use super::sparse::{rank_mod_p, smith_invariants, SparseMatrix};
use crate::error::{MaqError, Result};
use crate::int::Int;
use crate::lattice::{kernel, snf, FinAbGroup, IntMatrix, Lattice};
use crate::simplicial::{bits, vertices_of, SimplicialComplex, VertexSet};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relations {
    /// No relations: `Z^g`.
    Free,
    /// `(Z/n)^g`.
    Modulus(Int),
    /// Relation vectors (rows) in `Z^g`.
    Matrix(IntMatrix),
}

/// `Z^gens / relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presented {
    pub gens: usize,
    pub relations: Relations,
}

impl Presented {
    pub fn free(gens: usize) -> Self {
        Presented { gens, relations: Relations::Free }
    }

    pub fn modulo(gens: usize, n: Int) -> Self {
        Presented { gens, relations: Relations::Modulus(n) }
    }

    /// Relation vectors as rows.
    fn relation_rows(&self) -> Vec<Vec<Int>> {
        match &self.relations {
            Relations::Free => Vec::new(),
            Relations::Modulus(n) => (0..self.gens)
                .map(|i| (0..self.gens).map(|j| if i == j { n.clone() } else { Int::zero() }).collect())
                .collect(),
            Relations::Matrix(m) => m.rows().to_vec(),
        }
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::new(self.gens, self.relation_rows())
    }

    pub fn group(&self) -> FinAbGroup {
        self.relation_lattice().cokernel()
    }
}

/// One degree of a diagram: an object per face and a matrix per covering pair.
#[derive(Clone, Debug)]
pub struct DiagramSlice {
    pub objects: Vec<Presented>,
    /// Per cover `(I, J)`: matrix of shape `gens(I) x gens(J)` acting on columns.
    pub arrows: Vec<SparseMatrix>,
}

#[derive(Clone, Debug)]
pub struct PosetDiagram {
    faces: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    covers: Vec<(usize, usize)>,
    slices: BTreeMap<i64, DiagramSlice>,
}

impl PosetDiagram {
    /// Empty diagram shape over `cat K`.
    pub fn new(k: &SimplicialComplex) -> Self {
        let faces = k.faces();
        let index: HashMap<VertexSet, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut covers = Vec::new();
        for (j, &f) in faces.iter().enumerate() {
            // dropping the largest vertex first lists lower faces lex ascending
            for v in bits(f).into_iter().rev() {
                covers.push((index[&(f & !(1 << v))], j));
            }
        }
        PosetDiagram { faces, index, covers, slices: BTreeMap::new() }
    }

    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    /// Covering pairs `(lower, upper)` as face indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn slice(&self, degree: i64) -> Option<&DiagramSlice> {
        self.slices.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.slices.keys().copied()
    }

    /// Object group at face `face` in `degree`.
    pub fn object(&self, degree: i64, face: VertexSet) -> Option<FinAbGroup> {
        let s = self.slices.get(&degree)?;
        Some(s.objects[*self.index.get(&face)?].group())
    }

    /// Inserts one degree after checking shapes, well-definedness on
    /// relations and commutativity of every square of covers.
    pub fn insert_slice(&mut self, degree: i64, slice: DiagramSlice) -> Result<()> {
        if slice.objects.len() != self.faces.len() || slice.arrows.len() != self.covers.len() {
            return Err(MaqError::pre("slice does not match the diagram shape"));
        }
        let rel: Vec<Lattice> = slice.objects.iter().map(|o| o.relation_lattice()).collect();
        for (c, &(i, j)) in self.covers.iter().enumerate() {
            let a = &slice.arrows[c];
            if a.nrows() != slice.objects[i].gens || a.ncols() != slice.objects[j].gens {
                return Err(MaqError::pre(format!("arrow {c} has the wrong shape")));
            }
            for r in slice.objects[j].relation_rows() {
                let img = apply(a, &r);
                if !rel[i].contains(&img) {
                    return Err(MaqError::pre(format!(
                        "arrow {:?} -> {:?} does not respect relations",
                        vertices_of(self.faces[j]),
                        vertices_of(self.faces[i])
                    )));
                }
            }
        }
        let cover_index: HashMap<(usize, usize), usize> =
            self.covers.iter().enumerate().map(|(c, &p)| (p, c)).collect();
        for (l, &top) in self.faces.iter().enumerate() {
            let vs = bits(top);
            for x in 0..vs.len() {
                for y in x + 1..vs.len() {
                    let a = self.index[&(top & !(1 << vs[x]))];
                    let b = self.index[&(top & !(1 << vs[y]))];
                    let i = self.index[&(top & !(1 << vs[x]) & !(1 << vs[y]))];
                    let p = slice.arrows[cover_index[&(i, a)]].mul(&slice.arrows[cover_index[&(a, l)]]);
                    let q = slice.arrows[cover_index[&(i, b)]].mul(&slice.arrows[cover_index[&(b, l)]]);
                    let diff = p.to_dense();
                    let qd = q.to_dense();
                    for col in 0..slice.objects[l].gens {
                        let v: Vec<Int> = (0..slice.objects[i].gens).map(|r| &diff[r][col] - &qd[r][col]).collect();
                        if !rel[i].contains(&v) {
                            return Err(MaqError::pre(format!(
                                "diagram is not functorial on the square below {:?} in degree {degree}",
                                vertices_of(top)
                            )));
                        }
                    }
                }
            }
        }
        self.slices.insert(degree, slice);
        Ok(())
    }

    /// Same diagram with the covering pairs listed in another order.
    pub fn permute_covers(&self, order: &[usize]) -> PosetDiagram {
        assert_eq!(order.len(), self.covers.len());
        PosetDiagram {
            faces: self.faces.clone(),
            index: self.index.clone(),
            covers: order.iter().map(|&c| self.covers[c]).collect(),
            slices: self
                .slices
                .iter()
                .map(|(&d, s)| {
                    (d, DiagramSlice { objects: s.objects.clone(), arrows: order.iter().map(|&c| s.arrows[c].clone()).collect() })
                })
                .collect(),
        }
    }
}

fn apply(a: &SparseMatrix, v: &[Int]) -> Vec<Int> {
    (0..a.nrows()).map(|r| a.row(r).iter().map(|(c, x)| x * &v[*c as usize]).sum()).collect()
}

fn is_small_prime(n: &Int) -> Option<u64> {
    let p = n.to_u64()?;
    if p < 2 {
        return None;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return None;
        }
        d += 1;
    }
    Some(p)
}

/// The map `⊕_I A(I) -> ⊕_{covers (I, J)} A(I)`, `x -> x_I - r(x_J)`, whose
/// kernel (modulo relations) is the limit; also returns the column offset of
/// each face.
pub fn compatibility_matrix(diagram: &PosetDiagram, slice: &DiagramSlice) -> (SparseMatrix, Vec<usize>) {
    let offsets: Vec<usize> = slice
        .objects
        .iter()
        .scan(0usize, |acc, o| {
            let s = *acc;
            *acc += o.gens;
            Some(s)
        })
        .collect();
    let total: usize = slice.objects.iter().map(|o| o.gens).sum();
    let target_rows: usize = diagram.covers.iter().map(|&(i, _)| slice.objects[i].gens).sum();
    let mut d = SparseMatrix::zeros(target_rows, total);
    let mut row0 = 0;
    for (c, &(i, j)) in diagram.covers.iter().enumerate() {
        let gi = slice.objects[i].gens;
        for t in 0..gi {
            d.add(row0 + t, offsets[i] + t, Int::one());
        }
        let a = &slice.arrows[c];
        for r in 0..a.nrows() {
            for (col, x) in a.row(r) {
                d.add(row0 + r, offsets[j] + *col as usize, -x);
            }
        }
        row0 += gi;
    }
    d.normalize();
    (d, offsets)
}

/// Inverse limit of one slice over `cat K`.
pub fn limit_slice(diagram: &PosetDiagram, slice: &DiagramSlice) -> FinAbGroup {
    let (d, offsets) = compatibility_matrix(diagram, slice);
    let total = d.ncols();
    if total == 0 {
        return FinAbGroup::trivial();
    }

    let kinds: Vec<&Relations> = slice.objects.iter().filter(|o| o.gens > 0).map(|o| &o.relations).collect();
    if kinds.iter().all(|r| matches!(r, Relations::Free)) {
        return FinAbGroup::free(total - smith_invariants(&d).rank);
    }
    if let Some(Relations::Modulus(n)) = kinds.first() {
        if let Some(p) = is_small_prime(n) {
            if kinds.iter().all(|r| matches!(r, Relations::Modulus(x) if x == n)) {
                return FinAbGroup::elementary(p, total - rank_mod_p(&d, p));
            }
        }
    }
    general_limit(&d, slice, diagram, &offsets, total)
}

/// Kernel of `⊕ A(I) -> ⊕_covers A(I)` for arbitrary presentations:
/// lift to free covers, take the preimage of the target relations, divide
/// by the source relations.
fn general_limit(d: &SparseMatrix, slice: &DiagramSlice, diagram: &PosetDiagram, offsets: &[usize], total: usize) -> FinAbGroup {
    let mut target_rel: Vec<Vec<Int>> = Vec::new(); // columns of the target relation block
    let mut row0 = 0;
    let nrows = d.nrows();
    for &(i, _) in &diagram.covers {
        let o = &slice.objects[i];
        for r in o.relation_rows() {
            let mut col = vec![Int::zero(); nrows];
            for (t, x) in r.into_iter().enumerate() {
                col[row0 + t] = x;
            }
            target_rel.push(col);
        }
        row0 += o.gens;
    }
    let dense = d.to_dense();
    let ncols = total + target_rel.len();
    let rows: Vec<Vec<Int>> = (0..nrows)
        .map(|r| {
            let mut v = dense[r].clone();
            v.extend(target_rel.iter().map(|c| -&c[r]));
            v
        })
        .collect();
    let ker = kernel(&IntMatrix::from_rows(ncols, rows));
    let x = Lattice::new(total, ker.rows().iter().map(|v| v[..total].to_vec()).collect());
    let mut src_rel = Vec::new();
    for (i, o) in slice.objects.iter().enumerate() {
        for r in o.relation_rows() {
            let mut v = vec![Int::zero(); total];
            for (t, val) in r.into_iter().enumerate() {
                v[offsets[i] + t] = val;
            }
            src_rel.push(v);
        }
    }
    // coordinates of the source relations in the basis of X
    let coords: Vec<Vec<Int>> = src_rel
        .iter()
        .map(|v| x.coordinates(v).expect("relations map into the limit"))
        .collect();
    if coords.is_empty() {
        return FinAbGroup::free(x.rank());
    }
    let diag = snf(&IntMatrix::from_rows(x.rank(), coords)).diagonal();
    FinAbGroup::new(x.rank() - diag.len(), diag.into_iter().map(|d| d.abs()).collect())
}

/// Arrow `A(upper) -> A(lower)` for any pair of faces `lower ⊆ upper`,
/// composed along covers.
pub fn restriction(diagram: &PosetDiagram, slice: &DiagramSlice, lower: usize, upper: usize) -> SparseMatrix {
    let cover_index: HashMap<(usize, usize), usize> =
        diagram.covers.iter().enumerate().map(|(c, &p)| (p, c)).collect();
    restriction_with(diagram, slice, &cover_index, lower, upper)
}

fn restriction_with(
    diagram: &PosetDiagram,
    slice: &DiagramSlice,
    cover_index: &HashMap<(usize, usize), usize>,
    lower: usize,
    upper: usize,
) -> SparseMatrix {
    let g = slice.objects[upper].gens;
    let mut r = SparseMatrix::from_triplets(g, g, (0..g).map(|i| (i, i, Int::one())));
    let mut cur = diagram.faces[upper];
    for v in bits(cur & !diagram.faces[lower]) {
        let next = cur & !(1 << v);
        let c = cover_index[&(diagram.index[&next], diagram.index[&cur])];
        r = slice.arrows[c].mul(&r);
        cur = next;
    }
    r
}

/// `lim^s` of one slice for `s = 0, 1, ...`, from the cochain complex of
/// chains `J_0 ⊃ ... ⊃ J_s` in `cat K` with values `A(J_s)`. Objects must all
/// be free or all `(Z/p)^g` for one prime `p`.
pub fn derived_limits(diagram: &PosetDiagram, slice: &DiagramSlice) -> Result<Vec<FinAbGroup>> {
    let coeffs = slice_coefficients(slice)?;
    let n = diagram.faces.len();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| i != j && diagram.faces[i] & !diagram.faces[j] == 0)
                .collect()
        })
        .collect();
    // chains[s] lists the chains with s + 1 faces
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|j| vec![j]).collect()];
    loop {
        let next: Vec<Vec<usize>> = chains
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(|c| {
                let last = *c.last().expect("nonempty chain");
                below[last].iter().map(move |&i| {
                    let mut d = c.clone();
                    d.push(i);
                    d
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }
    let gens = |c: &Vec<usize>| slice.objects[*c.last().expect("nonempty chain")].gens;
    let offsets: Vec<HashMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|level| {
            let mut off = 0;
            level
                .iter()
                .map(|c| {
                    let o = off;
                    off += gens(c);
                    (c.clone(), o)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = chains.iter().map(|level| level.iter().map(gens).sum()).collect();
    let cover_index: HashMap<(usize, usize), usize> =
        diagram.covers.iter().enumerate().map(|(c, &p)| (p, c)).collect();
    let mut restrictions: HashMap<(usize, usize), SparseMatrix> = HashMap::new();
    // delta[s]: C^s -> C^{s+1}
    let mut delta: Vec<SparseMatrix> = Vec::new();
    for s in 0..chains.len() - 1 {
        let mut d = SparseMatrix::zeros(dims[s + 1], dims[s]);
        for c in &chains[s + 1] {
            let row0 = offsets[s + 1][c];
            let last = c[s + 1];
            for i in 0..=s {
                let mut face = c.clone();
                face.remove(i);
                let col0 = offsets[s][&face];
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                for t in 0..slice.objects[last].gens {
                    d.add(row0 + t, col0 + t, sign.clone());
                }
            }
            let col0 = offsets[s][&c[..=s].to_vec()];
            let r = restrictions
                .entry((last, c[s]))
                .or_insert_with(|| restriction_with(diagram, slice, &cover_index, last, c[s]));
            let sign = if (s + 1) % 2 == 0 { Int::one() } else { -Int::one() };
            for row in 0..r.nrows() {
                for (col, x) in r.row(row) {
                    d.add(row0 + row, col0 + *col as usize, &sign * x);
                }
            }
        }
        d.normalize();
        delta.push(d);
    }
    // reverse into a chain complex: degree -s holds C^s
    let top = chains.len() - 1;
    let rev_dims: Vec<usize> = dims.iter().rev().copied().collect();
    let boundaries: Vec<SparseMatrix> = delta.into_iter().rev().collect();
    let complex = ChainComplex::new(-(top as i64), rev_dims, boundaries)?;
    let h = complex.homology(coeffs);
    Ok((0..=top).map(|s| h.get(-(s as i64))).collect())
}

fn slice_coefficients(slice: &DiagramSlice) -> Result<Coefficients> {
    let mut coeffs = None;
    for o in slice.objects.iter().filter(|o| o.gens > 0) {
        let c = match &o.relations {
            Relations::Free => Coefficients::Integers,
            Relations::Modulus(n) => Coefficients::Prime(
                is_small_prime(n).ok_or_else(|| MaqError::pre("derived limits need a prime modulus"))?,
            ),
            Relations::Matrix(_) => return Err(MaqError::pre("derived limits need free or elementary objects")),
        };
        if coeffs.is_some_and(|x| x != c) {
            return Err(MaqError::pre("derived limits need uniform coefficients"));
        }
        coeffs = Some(c);
    }
    Ok(coeffs.unwrap_or(Coefficients::Integers))
}

/// Degreewise limits for every stored degree up to `max_degree`.
pub fn limit_graded(diagram: &PosetDiagram, max_degree: i64) -> GradedAbGroup {
    let mut out = GradedAbGroup::new();
    for (&deg, slice) in diagram.slices.range(..=max_degree) {
        out.set(deg, limit_slice(diagram, slice));
    }
    out
}

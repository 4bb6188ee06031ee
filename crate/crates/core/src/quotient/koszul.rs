//! `gr H^*(Z_K / H)` as `Tor` over `H^*(BL)` of the module
//! `M = lim H^*(BS(I))`, computed by the Koszul complex `Λ[u_1..u_l] ⊗ M`
//! with `d u_j = ℓ_j` for a basis `ℓ_1..ℓ_l` of `H^⊥`.
//!
//! `M` sits inside `Z[K]`: it is all of `Z[K]` for free actions, and in
//! general the elements whose restriction to each facet `F` lies in
//! `Sym(p_F(H^⊥))`. Group coordinates into blocks, the connected
//! components of the supports of the forms. The differential preserves the
//! block weight (count of `u_j` plus polynomial degree per block), so the
//! complex splits into finite pieces, one per weight vector.

use crate::equivariant::{check_condition1, check_free};
use crate::error::{MaqError, Result};
use crate::homology::{ChainComplex, Coefficients, GradedAbGroup, SparseMatrix};
use crate::int::Int;
use crate::lattice::{matrix::solve_in_basis, IntMatrix, Lattice, TorusSubgroup};
use crate::simplicial::{SimplicialComplex, VertexSet};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulOptions {
    /// Largest number of generators allowed in one piece.
    pub max_piece_size: usize,
    /// Skip pieces that are acyclic for a trivial reason (free module only).
    pub prune_acyclic: bool,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions { max_piece_size: 400_000, prune_acyclic: true }
    }
}

#[derive(Clone, Debug)]
struct Block {
    coords: Vec<usize>,
    forms: Vec<usize>,
    /// The single form is `±e_i` for the single coordinate `i`.
    coordinate_form: bool,
}

type Exponents = Vec<u8>;
type Poly = HashMap<Exponents, Int>;

/// Weight-`a` part of `M`: a monomial basis of `Z[K]_a` and, when `M` is
/// a proper sublattice, a basis of it in those coordinates.
struct ModulePart {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    basis: Option<IntMatrix>,
}

impl ModulePart {
    fn rank(&self) -> usize {
        self.basis.as_ref().map_or(self.monomials.len(), |b| b.nrows())
    }
}

pub struct KoszulComplex<'a> {
    k: &'a SimplicialComplex,
    forms: Vec<Vec<Int>>,
    blocks: Vec<Block>,
    block_of_form: Vec<usize>,
    /// `M = Z[K]`, which holds for free actions.
    free_module: bool,
}

impl<'a> KoszulComplex<'a> {
    /// Uses the Hermite basis of `H^⊥`.
    pub fn new(k: &'a SimplicialComplex, h: &TorusSubgroup) -> Result<Self> {
        let a = h.annihilator().ok_or_else(|| MaqError::pre("the Koszul computation needs d = 2"))?;
        Self::with_forms(k, h, a.basis().rows().to_vec())
    }

    /// Uses the given forms, which must be a basis of `H^⊥`.
    pub fn with_forms(k: &'a SimplicialComplex, h: &TorusSubgroup, forms: Vec<Vec<Int>>) -> Result<Self> {
        let ann = h.annihilator().ok_or_else(|| MaqError::pre("the Koszul computation needs d = 2"))?;
        h.check_ambient(k.m())?;
        let m = k.m();
        if forms.iter().any(|f| f.len() != m) || forms.len() != ann.rank() || Lattice::new(m, forms.clone()) != *ann {
            return Err(MaqError::pre("linear forms must be a basis of the annihilator"));
        }
        let report = check_condition1(k, h)?;
        if let Some(w) = report.witness {
            return Err(MaqError::Condition1 { lower: w.lower, upper: w.upper });
        }
        let free = check_free(k, h)?.free;
        let (blocks, block_of_form) = blocks_of(&forms, m);
        Ok(KoszulComplex { k, forms, blocks, block_of_form, free_module: free })
    }

    pub fn forms(&self) -> &[Vec<Int>] {
        &self.forms
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `gr H^n` for `0 <= n <= max_degree`.
    pub fn cohomology(&self, max_degree: i64, opts: &KoszulOptions) -> Result<GradedAbGroup> {
        let l = self.forms.len();
        let mut out = GradedAbGroup::new();
        let mut cache: HashMap<Vec<usize>, ModulePart> = HashMap::new();
        let mut total = 0usize;
        while 2 * total as i64 - total.min(l) as i64 <= max_degree {
            for w in compositions(total, self.blocks.len()) {
                if opts.prune_acyclic && self.free_module && self.trivially_acyclic(&w) {
                    continue;
                }
                let h = self.piece(&w, max_degree, opts, &mut cache)?;
                out = out.direct_sum(&h);
            }
            if self.blocks.is_empty() {
                break;
            }
            total += 1;
        }
        Ok(out)
    }

    fn trivially_acyclic(&self, w: &[usize]) -> bool {
        self.blocks.iter().zip(w).any(|(b, &x)| b.coordinate_form && x >= 2)
    }

    /// Cohomology of the piece of block weight `w`, in total degrees `<= max_degree`.
    fn piece(
        &self,
        w: &[usize],
        max_degree: i64,
        opts: &KoszulOptions,
        cache: &mut HashMap<Vec<usize>, ModulePart>,
    ) -> Result<GradedAbGroup> {
        let weight: usize = w.iter().sum();
        let keep_from = (2 * weight as i64 - max_degree).max(0) as usize;
        let lowest = keep_from.saturating_sub(1);
        // generators grouped by |J|
        let mut by_size: Vec<Vec<(u64, Vec<usize>)>> = vec![Vec::new(); self.forms.len() + 1];
        for j in self.exterior_sets(w) {
            let size = j.count_ones() as usize;
            if size < lowest {
                continue;
            }
            let mut a = w.to_vec();
            for f in bits64(j) {
                a[self.block_of_form[f]] -= 1;
            }
            by_size[size].push((j, a));
        }
        let top = match (0..by_size.len()).rev().find(|&s| !by_size[s].is_empty()) {
            Some(t) if t >= keep_from => t,
            _ => return Ok(GradedAbGroup::new()),
        };
        let mut offsets: Vec<HashMap<u64, usize>> = vec![HashMap::new(); top + 1];
        let mut dims = vec![0usize; top + 1];
        for s in lowest..=top {
            for (j, a) in &by_size[s] {
                if !cache.contains_key(a) {
                    let part = self.module_part(a, opts)?;
                    cache.insert(a.clone(), part);
                }
                offsets[s].insert(*j, dims[s]);
                dims[s] += cache[a].rank();
            }
        }
        let size: usize = dims.iter().sum();
        if size > opts.max_piece_size {
            return Err(MaqError::bound(format!(
                "Koszul piece of weight {w:?} has {size} generators, above the cap {}",
                opts.max_piece_size
            )));
        }
        let mut boundaries = Vec::new();
        for s in lowest + 1..=top {
            let mut d = SparseMatrix::zeros(dims[s - 1], dims[s]);
            for (j, a) in &by_size[s] {
                let src = &cache[a];
                for (pos, f) in bits64(*j).into_iter().enumerate() {
                    let sign = if pos % 2 == 0 { Int::one() } else { -Int::one() };
                    let mut a2 = a.clone();
                    a2[self.block_of_form[f]] += 1;
                    let dst = &cache[&a2];
                    let row0 = offsets[s - 1][&(j & !(1 << f))];
                    for t in 0..src.rank() {
                        for (r, x) in self.multiply(f, src, t, dst)? {
                            d.add(row0 + r, offsets[s][j] + t, &sign * x);
                        }
                    }
                }
            }
            d.normalize();
            boundaries.push(d);
        }
        let complex = ChainComplex::new(lowest as i64, dims[lowest..=top].to_vec(), boundaries)
            .map_err(|e| MaqError::Internal(format!("Koszul piece {w:?}: {e}")))?;
        let h = complex.homology(Coefficients::Integers);
        let mut out = GradedAbGroup::new();
        for (s, g) in h.iter() {
            let n = 2 * weight as i64 - s;
            if s as usize >= keep_from && n <= max_degree {
                out.add(n, g);
            }
        }
        Ok(out)
    }

    /// Subsets `J` of the forms with at most `w_b` forms from block `b`.
    fn exterior_sets(&self, w: &[usize]) -> Vec<u64> {
        let mut sets = vec![0u64];
        for (b, block) in self.blocks.iter().enumerate() {
            let n = block.forms.len();
            let mut next = Vec::new();
            for mask in 0..1u64 << n {
                if mask.count_ones() as usize > w[b] {
                    continue;
                }
                let j = bits64(mask).into_iter().fold(0u64, |acc, i| acc | 1 << block.forms[i]);
                next.extend(sets.iter().map(|s| s | j));
            }
            sets = next;
        }
        sets
    }

    /// Coordinates of `ℓ_f · x_t` in the basis of `dst`.
    fn multiply(&self, f: usize, src: &ModulePart, t: usize, dst: &ModulePart) -> Result<Vec<(usize, Int)>> {
        let mut image: HashMap<usize, Int> = HashMap::new();
        let mut add_term = |mono: &Exponents, c: &Int| {
            for (i, x) in self.forms[f].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut m2 = mono.clone();
                m2[i] += 1;
                if let Some(&r) = dst.index.get(&m2) {
                    *image.entry(r).or_insert_with(Int::zero) += c * x;
                }
            }
        };
        match &src.basis {
            None => add_term(&src.monomials[t], &Int::one()),
            Some(b) => {
                for (p, c) in b.row(t).iter().enumerate() {
                    if !c.is_zero() {
                        add_term(&src.monomials[p], c);
                    }
                }
            }
        }
        match &dst.basis {
            None => Ok(image.into_iter().filter(|(_, c)| !c.is_zero()).collect()),
            Some(b) => {
                let mut v = vec![Int::zero(); dst.monomials.len()];
                for (r, c) in image {
                    v[r] = c;
                }
                let x = solve_in_basis(b, &v)
                    .ok_or_else(|| MaqError::Internal("a form maps the module outside itself".into()))?;
                Ok(x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            }
        }
    }

    fn module_part(&self, a: &[usize], opts: &KoszulOptions) -> Result<ModulePart> {
        let monomials = self.monomials(a);
        if monomials.len() > opts.max_piece_size {
            return Err(MaqError::bound(format!("module part of weight {a:?} is too large")));
        }
        let index: HashMap<Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let basis = if self.free_module { None } else { Some(self.sublattice(a, &monomials, &index)?) };
        Ok(ModulePart { monomials, index, basis })
    }

    /// Monomials of block weight `a` whose support is a face.
    fn monomials(&self, a: &[usize]) -> Vec<Exponents> {
        let m = self.k.m();
        let slots: Vec<(usize, usize, bool)> = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| {
                let n = block.coords.len();
                block.coords.iter().enumerate().map(move |(i, &c)| (b, c, i + 1 == n))
            })
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u8; m];
        let mut left = a.to_vec();
        self.fill(&slots, 0, 0, &mut exps, &mut left, &mut out);
        out
    }

    fn fill(
        &self,
        slots: &[(usize, usize, bool)],
        at: usize,
        support: VertexSet,
        exps: &mut Exponents,
        left: &mut [usize],
        out: &mut Vec<Exponents>,
    ) {
        if at == slots.len() {
            out.push(exps.clone());
            return;
        }
        let (b, c, last) = slots[at];
        let range = if last { left[b]..=left[b] } else { 0..=left[b] };
        for e in range {
            let s = if e > 0 { support | 1 << c } else { support };
            if e > 0 && !self.k.is_face(s) {
                continue;
            }
            exps[c] = e as u8;
            left[b] -= e;
            self.fill(slots, at + 1, s, exps, left, out);
            left[b] += e;
            exps[c] = 0;
        }
    }

    /// `M_a`: elements of `Z[K]_a` restricting into `Sym(p_F(H^⊥))` on every facet.
    fn sublattice(
        &self,
        a: &[usize],
        monomials: &[Exponents],
        index: &HashMap<Exponents, usize>,
    ) -> Result<IntMatrix> {
        let n = monomials.len();
        let mut lat = Lattice::full(n);
        for &facet in self.k.facets() {
            let mut gens: Vec<Vec<Int>> = Vec::new();
            for (p, e) in monomials.iter().enumerate() {
                if support(e) & !facet != 0 {
                    let mut v = vec![Int::zero(); n];
                    v[p] = Int::one();
                    gens.push(v);
                }
            }
            // Sym(p_F(H^⊥)) in weight a, block by block
            let mut products: Vec<Poly> = vec![Poly::from([(vec![0u8; self.k.m()], Int::one())])];
            for (b, block) in self.blocks.iter().enumerate() {
                let projected: Vec<Vec<Int>> = block
                    .forms
                    .iter()
                    .map(|&f| {
                        let mut v = vec![Int::zero(); self.k.m()];
                        for &c in &block.coords {
                            if facet >> c & 1 == 1 {
                                v[c] = self.forms[f][c].clone();
                            }
                        }
                        v
                    })
                    .collect();
                let basis = Lattice::new(self.k.m(), projected);
                let linear: Vec<Poly> = basis.basis().rows().iter().map(|r| linear_poly(r)).collect();
                let powers = sym_products(&linear, a[b], self.k.m());
                products = products.iter().flat_map(|p| powers.iter().map(move |q| poly_mul(p, q))).collect();
            }
            for p in products {
                let mut v = vec![Int::zero(); n];
                for (e, c) in p {
                    if c.is_zero() {
                        continue;
                    }
                    let pos = *index.get(&e).ok_or_else(|| MaqError::Internal("restriction leaves Z[K]".into()))?;
                    v[pos] = c;
                }
                gens.push(v);
            }
            lat = lat.intersection(&Lattice::new(n, gens))?;
        }
        Ok(lat.basis().clone())
    }
}

fn support(e: &[u8]) -> VertexSet {
    e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

fn linear_poly(v: &[Int]) -> Poly {
    let m = v.len();
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let mut e = vec![0u8; m];
            e[i] = 1;
            (e, x.clone())
        })
        .collect()
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Int::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All products of `n` of the given linear polynomials, with repetition.
fn sym_products(linear: &[Poly], n: usize, m: usize) -> Vec<Poly> {
    let one = Poly::from([(vec![0u8; m], Int::one())]);
    let mut level: Vec<(usize, Poly)> = vec![(0, one)];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|(start, p)| (*start..linear.len()).map(move |i| (i, poly_mul(p, &linear[i]))))
            .collect();
    }
    level.into_iter().map(|(_, p)| p).collect()
}

fn bits64(mut x: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while x != 0 {
        out.push(x.trailing_zeros() as usize);
        x &= x - 1;
    }
    out
}

/// Connected components of the form supports; coordinates in no support
/// are left out.
fn blocks_of(forms: &[Vec<Int>], m: usize) -> (Vec<Block>, Vec<usize>) {
    let supports: Vec<VertexSet> = forms
        .iter()
        .map(|f| f.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    let mut groups: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    for (j, &s) in supports.iter().enumerate() {
        let (touching, rest): (Vec<_>, Vec<_>) = groups.into_iter().partition(|(g, _)| g & s != 0);
        let mut merged = (s, vec![j]);
        for (g, fs) in touching {
            merged.0 |= g;
            merged.1.extend(fs);
        }
        merged.1.sort_unstable();
        groups = rest;
        groups.push(merged);
    }
    groups.sort_by_key(|(g, _)| g.trailing_zeros());
    let mut block_of_form = vec![0; forms.len()];
    let blocks = groups
        .into_iter()
        .enumerate()
        .map(|(b, (g, fs))| {
            for &f in &fs {
                block_of_form[f] = b;
            }
            let coords: Vec<usize> = (0..m).filter(|&i| g >> i & 1 == 1).collect();
            let coordinate_form = coords.len() == 1 && fs.len() == 1 && forms[fs[0]][coords[0]].abs().is_one();
            Block { coords, forms: fs, coordinate_form }
        })
        .collect();
    (blocks, block_of_form)
}

/// Weak compositions of `total` into `parts` parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// `gr H^*(Z_K / H)` up to `max_degree` with default options.
pub fn koszul_cohomology(k: &SimplicialComplex, h: &TorusSubgroup, max_degree: i64) -> Result<GradedAbGroup> {
    koszul_cohomology_with(k, h, max_degree, &KoszulOptions::default())
}

pub fn koszul_cohomology_with(
    k: &SimplicialComplex,
    h: &TorusSubgroup,
    max_degree: i64,
    opts: &KoszulOptions,
) -> Result<GradedAbGroup> {
    if k.is_void() {
        return Ok(GradedAbGroup::new());
    }
    KoszulComplex::new(k, h)?.cohomology(max_degree, opts)
}

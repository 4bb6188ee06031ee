//! Sparse integer matrices and their Smith invariants.
//!
//! Elimination runs on `i64` with checked arithmetic first and restarts on
//! big integers if any intermediate value overflows. Unit pivots are taken
//! greedily (short rows first); whatever remains is handed to a dense Smith
//! reduction.

use crate::int::Int;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, Int)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, Int)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            m.add(r, c, v);
        }
        m.normalize();
        m
    }

    pub fn from_dense(rows: &[Vec<Int>], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols);
            m.rows[i] = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j as u32, x.clone())).collect();
        }
        m
    }

    /// Adds `v` at `(r, c)`. Call [`Self::normalize`] before reading.
    pub fn add(&mut self, r: usize, c: usize, v: Int) {
        assert!(r < self.nrows && c < self.ncols, "entry ({r}, {c}) outside {}x{}", self.nrows, self.ncols);
        if !v.is_zero() {
            self.rows[r].push((c as u32, v));
        }
    }

    /// Sorts rows, merges duplicates and drops zeros.
    pub fn normalize(&mut self) {
        for row in &mut self.rows {
            row.sort_by_key(|e| e.0);
            let mut out: Vec<(u32, Int)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|e| !e.1.is_zero());
            *row = out;
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(u32, Int)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        self.rows[r]
            .binary_search_by_key(&(c as u32), |e| e.0)
            .map(|k| self.rows[r][k].1.clone())
            .unwrap_or_else(|_| Int::zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (c, v) in r {
                t.rows[*c as usize].push((i as u32, v.clone()));
            }
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in sparse product");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, a) in r {
                for (j, b) in &other.rows[*k as usize] {
                    out.rows[i].push((*j, a * b));
                }
            }
        }
        out.normalize();
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (c, v) in r {
                d[i][*c as usize] = v.clone();
            }
        }
        d
    }

    /// Matrix with the row blocks of `blocks` stacked; all must share `ncols`.
    pub fn vstack(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let ncols = blocks.first().map_or(0, |b| b.ncols);
        let mut rows = Vec::new();
        for b in blocks {
            assert_eq!(b.ncols, ncols);
            rows.extend(b.rows.iter().cloned());
        }
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SmithSummary {
    pub rank: usize,
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion: Vec<Int>,
}

#[derive(Debug)]
struct Overflow;

trait Entry: Clone + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn invertible(&self) -> bool;
    /// `self - f * x`
    fn sub_mul(&self, f: &Self, x: &Self) -> Result<Self, Overflow>;
    fn times(&self, x: &Self) -> Result<Self, Overflow>;
    /// Floor quotient and remainder.
    fn div_rem_floor(&self, d: &Self) -> Result<(Self, Self), Overflow>;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn to_int(&self) -> Int;
    fn zero_like(&self) -> Self;
}

impl Entry for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn invertible(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Result<Self, Overflow> {
        f.checked_mul(*x).and_then(|p| self.checked_sub(p)).ok_or(Overflow)
    }
    fn times(&self, x: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*x).ok_or(Overflow)
    }
    fn div_rem_floor(&self, d: &Self) -> Result<(Self, Self), Overflow> {
        if *self == i64::MIN || *d == i64::MIN {
            return Err(Overflow);
        }
        Ok((self.div_floor(d), self.mod_floor(d)))
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn to_int(&self) -> Int {
        Int::from(*self)
    }
    fn zero_like(&self) -> Self {
        0
    }
}

impl Entry for Int {
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn invertible(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Result<Self, Overflow> {
        Ok(self - f * x)
    }
    fn times(&self, x: &Self) -> Result<Self, Overflow> {
        Ok(self * x)
    }
    fn div_rem_floor(&self, d: &Self) -> Result<(Self, Self), Overflow> {
        Ok(self.div_mod_floor(d))
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn to_int(&self) -> Int {
        self.clone()
    }
    fn zero_like(&self) -> Self {
        Int::zero()
    }
}

/// Residue modulo a prime; every nonzero residue is a unit.
#[derive(Clone, Copy, Debug)]
struct ModP {
    v: u64,
    p: u64,
}

impl ModP {
    fn inv(&self) -> u64 {
        // Fermat: v^(p-2)
        let mut base = self.v as u128;
        let mut e = self.p - 2;
        let mut acc: u128 = 1;
        let p = self.p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u64
    }
}

impl Entry for ModP {
    fn vanishes(&self) -> bool {
        self.v == 0
    }
    fn invertible(&self) -> bool {
        self.v != 0
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Result<Self, Overflow> {
        let p = self.p as u128;
        let prod = f.v as u128 * x.v as u128 % p;
        Ok(ModP { v: ((self.v as u128 + p - prod) % p) as u64, p: self.p })
    }
    fn times(&self, x: &Self) -> Result<Self, Overflow> {
        Ok(ModP { v: (self.v as u128 * x.v as u128 % self.p as u128) as u64, p: self.p })
    }
    fn div_rem_floor(&self, d: &Self) -> Result<(Self, Self), Overflow> {
        let q = ModP { v: d.inv(), p: self.p }.times(self)?;
        Ok((q, ModP { v: 0, p: self.p }))
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        (self.v == 0).cmp(&(other.v == 0)).reverse()
    }
    fn to_int(&self) -> Int {
        Int::from(self.v)
    }
    fn zero_like(&self) -> Self {
        ModP { v: 0, p: self.p }
    }
}

/// Multiplier turning the pivot into 1 for the row update `row_i -= f * row_r`.
trait PivotInverse: Entry {
    fn factor(a_ic: &Self, pivot: &Self) -> Result<Self, Overflow>;
}

impl PivotInverse for i64 {
    fn factor(a_ic: &Self, pivot: &Self) -> Result<Self, Overflow> {
        a_ic.times(pivot) // pivot is ±1
    }
}

impl PivotInverse for Int {
    fn factor(a_ic: &Self, pivot: &Self) -> Result<Self, Overflow> {
        Ok(a_ic * pivot)
    }
}

impl PivotInverse for ModP {
    fn factor(a_ic: &Self, pivot: &Self) -> Result<Self, Overflow> {
        a_ic.times(&ModP { v: pivot.inv(), p: pivot.p })
    }
}

type Row<T> = Vec<(u32, T)>;

/// `a - f * b` for sorted sparse rows.
fn axpy<T: Entry>(a: &Row<T>, f: &T, b: &Row<T>) -> Result<Row<T>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = b[j].1.zero_like().sub_mul(f, &b[j].1)?;
            if !v.vanishes() {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub_mul(f, &b[j].1)?;
            if !v.vanishes() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Greedy unit-pivot elimination. Returns the number of pivots and the rows
/// that are left over (none of which contains a unit).
fn eliminate<T: PivotInverse>(ncols: usize, mut rows: Vec<Row<T>>) -> Result<(usize, Vec<Row<T>>), Overflow> {
    let n = rows.len();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c as usize].push(i as u32);
        }
    }
    let mut alive = vec![true; n];
    let mut stamp = vec![0u32; n];
    let mut version = vec![0u32; n];
    let mut heap: BinaryHeap<Reverse<(usize, u32, u32)>> =
        rows.iter().enumerate().map(|(i, r)| Reverse((r.len(), 0, i as u32))).collect();
    let mut pivots = 0;
    let mut tick = 0u32;
    while let Some(Reverse((len, ver, i))) = heap.pop() {
        let i = i as usize;
        if !alive[i] || ver != version[i] || len != rows[i].len() {
            continue;
        }
        if rows[i].is_empty() {
            alive[i] = false;
            continue;
        }
        // unit entry whose column is the sparsest
        let Some(k) = rows[i]
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1.invertible())
            .min_by_key(|(_, e)| col_rows[e.0 as usize].len())
            .map(|(k, _)| k)
        else {
            continue; // stays alive; pushed again if it is ever modified
        };
        let (c, pivot) = rows[i][k].clone();
        alive[i] = false;
        pivots += 1;
        tick += 1;
        let pivot_row = std::mem::take(&mut rows[i]);
        let users = std::mem::take(&mut col_rows[c as usize]);
        for &t in &users {
            let t = t as usize;
            if !alive[t] || stamp[t] == tick {
                continue;
            }
            stamp[t] = tick;
            let Ok(pos) = rows[t].binary_search_by_key(&c, |e| e.0) else { continue };
            let f = T::factor(&rows[t][pos].1, &pivot)?;
            let before: Vec<u32> = rows[t].iter().map(|e| e.0).collect();
            let updated = axpy(&rows[t], &f, &pivot_row)?;
            for (cc, _) in &updated {
                if before.binary_search(cc).is_err() {
                    col_rows[*cc as usize].push(t as u32);
                }
            }
            rows[t] = updated;
            version[t] += 1;
            heap.push(Reverse((rows[t].len(), version[t], t as u32)));
        }
    }
    let rest = rows.into_iter().zip(alive).filter(|(r, a)| *a && !r.is_empty()).map(|(r, _)| r).collect();
    Ok((pivots, rest))
}

/// Diagonal entries (absolute values, unordered) from dense Smith-style reduction.
fn dense_diagonal<T: Entry>(rows: Vec<Row<T>>, zero: T) -> Result<Vec<Int>, Overflow> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let k = cols.len();
    let n = rows.len();
    let mut a: Vec<Vec<T>> = vec![vec![zero.clone(); k]; n];
    for (i, r) in rows.into_iter().enumerate() {
        for (c, v) in r {
            let j = cols.binary_search(&c).expect("collected column");
            a[i][j] = v;
        }
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n.min(k) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.vanishes() && best.is_none_or(|(bi, bj)| x.abs_cmp(&a[bi][bj]) == Ordering::Less) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].vanishes() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem_floor(&a[t][t])?;
                let (top, bottom) = a.split_at_mut(i);
                for (x, p) in bottom[0][t..k].iter_mut().zip(&top[t][t..k]) {
                    *x = x.sub_mul(&q, p)?;
                }
                if !r.vanishes() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                if a[t][j].vanishes() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem_floor(&a[t][t])?;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].sub_mul(&q, &row[t])?;
                    row[j] = v;
                }
                if !r.vanishes() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let mut best = (t, t);
            for i in t + 1..n {
                if !a[i][t].vanishes() && a[i][t].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                    best = (i, t);
                }
            }
            for j in t + 1..k {
                if !a[t][j].vanishes() && a[t][j].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].to_int().abs());
        t += 1;
    }
    Ok(diag)
}

fn summarize(pivots: usize, diag: Vec<Int>) -> SmithSummary {
    let rank = pivots + diag.len();
    let g = crate::lattice::FinAbGroup::new(0, diag);
    SmithSummary { rank, torsion: g.torsion().to_vec() }
}

fn run<T: PivotInverse>(ncols: usize, rows: Vec<Row<T>>, zero: T) -> Result<SmithSummary, Overflow> {
    let (pivots, rest) = eliminate(ncols, rows)?;
    let diag = dense_diagonal(rest, zero)?;
    Ok(summarize(pivots, diag))
}

/// Rank and invariant factors over `Z`.
pub fn smith_invariants(m: &SparseMatrix) -> SmithSummary {
    let small: Option<Vec<Row<i64>>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().filter(|x| *x != i64::MIN).map(|x| (*c, x))).collect())
        .collect();
    if let Some(rows) = small {
        if let Ok(s) = run(m.ncols, rows, 0i64) {
            return s;
        }
    }
    run(m.ncols, m.rows.clone(), Int::zero()).expect("big integers do not overflow")
}

/// Rank over `F_p` for a prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be a prime");
    let pi = Int::from(p);
    let rows: Vec<Row<ModP>> = m
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|(c, v)| {
                    let x = v.mod_floor(&pi).to_u64().expect("reduced residue");
                    (x != 0).then_some((*c, ModP { v: x, p }))
                })
                .collect()
        })
        .collect();
    run(m.ncols, rows, ModP { v: 0, p }).expect("residues do not overflow").rank
}

//! Dense integer matrices with exact normal forms.
//!
//! Row conventions: a matrix is read as a list of row vectors, so `hnf`
//! returns the canonical basis of the lattice spanned by the rows.

use crate::int::{div_floor, int, Int};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<Vec<Int>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]({}x{})", self.nrows(), self.ncols)
    }
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { ncols, rows: vec![vec![Int::zero(); ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `ncols` entries.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<Int>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { ncols, rows }
    }

    pub fn from_i64(ncols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(ncols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.rows[i][j] = v;
    }

    pub fn push_row(&mut self, row: Vec<Int>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.nrows(), other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.ncols);
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix {
            ncols: cols.len(),
            rows: self.rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect(),
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    /// `col[a] += f * col[b]`
    fn col_addmul(&mut self, a: usize, b: usize, f: &Int) {
        for r in &mut self.rows {
            let t = &r[b] * f;
            r[a] += t;
        }
    }

    fn row_addmul(&mut self, a: usize, b: usize, f: &Int) {
        row_addmul(&mut self.rows, a, b, f);
    }

    fn negate_row(&mut self, a: usize) {
        for x in &mut self.rows[a] {
            *x = -&*x;
        }
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut s = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// `rows[a] += f * rows[b]`
fn row_addmul(rows: &mut [Vec<Int>], a: usize, b: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    let (ra, rb) = if a < b {
        let (x, y) = rows.split_at_mut(b);
        (&mut x[a], &y[0])
    } else {
        let (x, y) = rows.split_at_mut(a);
        (&mut y[0], &x[b])
    };
    for (x, y) in ra.iter_mut().zip(rb.iter()) {
        if !y.is_zero() {
            *x += f * y;
        }
    }
}

/// Row echelon reduction over the first `pivot_cols` columns of `rows`.
/// Produces positive pivots and reduces the entries above each pivot into
/// `[0, pivot)`. Zero rows (in the pivot columns) are moved to the end.
/// Returns the number of pivots.
fn echelon(rows: &mut [Vec<Int>], pivot_cols: usize) -> usize {
    let n = rows.len();
    let mut p = 0;
    for c in 0..pivot_cols {
        if p == n {
            break;
        }
        loop {
            // smallest nonzero entry at or below p in column c
            let mut best: Option<usize> = None;
            for i in p..n {
                if !rows[i][c].is_zero()
                    && best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(p, b);
            let mut clean = true;
            for i in p + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = div_floor(&rows[i][c], &rows[p][c].abs()) * rows[p][c].signum();
                row_addmul(rows, i, p, &(-q));
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if p < n && !rows[p][c].is_zero() {
            if rows[p][c].is_negative() {
                for x in &mut rows[p] {
                    *x = -&*x;
                }
            }
            for i in 0..p {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = div_floor(&rows[i][c], &rows[p][c]);
                row_addmul(rows, i, p, &(-q));
            }
            p += 1;
        }
    }
    p
}

/// Hermite normal form of the row lattice, zero rows removed.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut rows = m.rows.clone();
    let r = echelon(&mut rows, m.ncols);
    rows.truncate(r);
    IntMatrix { ncols: m.ncols, rows }
}

/// Returns `(H, U)` with `U * m = H`, `U` unimodular and `H` in Hermite form
/// (zero rows kept at the bottom).
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = m.nrows();
    let k = m.ncols;
    let mut rows: Vec<Vec<Int>> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
            v
        })
        .collect();
    echelon(&mut rows, k);
    let h = IntMatrix { ncols: k, rows: rows.iter().map(|r| r[..k].to_vec()).collect() };
    let u = IntMatrix { ncols: n, rows: rows.iter().map(|r| r[k..].to_vec()).collect() };
    (h, u)
}

pub fn rank(m: &IntMatrix) -> usize {
    hnf(m).nrows()
}

/// Basis (rows, in Hermite form) of `{x : m x = 0}`.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf_with_transform(&m.transpose());
    let r = h.rows.iter().take_while(|row| row.iter().any(|x| !x.is_zero())).count();
    let basis = IntMatrix { ncols: m.ncols, rows: u.rows[r..].to_vec() };
    hnf(&basis)
}

/// Coordinates of `target` in the lattice with echelon basis `basis`
/// (as produced by [`hnf`]); `None` when `target` is outside the lattice.
pub fn solve_in_basis(basis: &IntMatrix, target: &[Int]) -> Option<Vec<Int>> {
    let mut rest: Vec<Int> = target.to_vec();
    let mut coords = Vec::with_capacity(basis.nrows());
    for row in &basis.rows {
        let c = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = num_integer::Integer::div_rem(&rest[c], &row[c]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        coords.push(q);
    }
    if rest.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// Smith form with certificates: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries in divisibility order, including 1s.
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn snf(m: &IntMatrix) -> Smith {
    let n = m.nrows();
    let k = m.ncols;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(k);
    let mut t = 0;
    while t < n.min(k) {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                let x = &a.rows[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.rows[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.rows.swap(t, bi);
        u.rows.swap(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..n {
                if a.rows[i][t].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a.rows[i][t], &a.rows[t][t]);
                a.row_addmul(i, t, &(-&q));
                u.row_addmul(i, t, &(-&q));
                if !a.rows[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                if a.rows[t][j].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a.rows[t][j], &a.rows[t][t]);
                a.col_addmul(j, t, &(-&q));
                v.col_addmul(j, t, &(-&q));
                if !a.rows[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the trailing block by the pivot
                let p = a.rows[t][t].clone();
                let bad = (t + 1..n).find(|&i| {
                    (t + 1..k).any(|j| !num_integer::Integer::is_multiple_of(&a.rows[i][j], &p))
                });
                match bad {
                    None => break,
                    Some(i) => {
                        a.row_addmul(t, i, &Int::one());
                        u.row_addmul(t, i, &Int::one());
                        continue;
                    }
                }
            }
            // move the smallest remainder into the pivot position
            let mut best = (t, t);
            for i in t + 1..n {
                let x = &a.rows[i][t];
                if !x.is_zero() && x.abs() < a.rows[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..k {
                let x = &a.rows[t][j];
                if !x.is_zero() && x.abs() < a.rows[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.rows.swap(t, best.0);
                u.rows.swap(t, best.0);
            } else if best.1 != t {
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if a.rows[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { u, d: a, v }
}

/// Integer determinant by fraction free elimination (square matrices only).
pub fn determinant(m: &IntMatrix) -> Int {
    assert_eq!(m.nrows(), m.ncols, "determinant of a non-square matrix");
    bareiss(m)
}

fn bareiss(m: &IntMatrix) -> Int {
    let n = m.nrows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.rows.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

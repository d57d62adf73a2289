//! Gauss–Jordan elimination engines shared by the rational and prime-field paths.
//!
//! Both engines choose the pivot in the leftmost unresolved column with minimal
//! [`Arith::cost`], ties going to the lowest row index. Sparse rows are sorted
//! `(column, value)` vectors; dense rows are plain vectors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::{inv_mod, mul_mod, sub_mod};

pub(crate) trait Arith: Sync {
    type E: Clone + Send + Sync;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    fn neg_mul(&self, f: &Self::E, b: &Self::E) -> Self::E;
    fn cost(&self, a: &Self::E) -> u64;
}

pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
    fn neg_mul(&self, f: &BigRational, b: &BigRational) -> BigRational {
        -(f * b)
    }
    fn cost(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModArith {
    pub p: u64,
}

impl Arith for ModArith {
    type E = u64;
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    #[inline]
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        sub_mod(*a, mul_mod(*f, *b, self.p), self.p)
    }
    #[inline]
    fn neg_mul(&self, f: &u64, b: &u64) -> u64 {
        sub_mod(0, mul_mod(*f, *b, self.p), self.p)
    }
    fn cost(&self, _a: &u64) -> u64 {
        0
    }
}

pub(crate) type SparseRow<E> = Vec<(usize, E)>;

/// Reduced row-echelon form: `rows[i]` has a leading one at `pivots[i]`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<E> {
    pub rows: Vec<SparseRow<E>>,
    pub pivots: Vec<usize>,
}

/// `row - f * pivot` over sorted sparse rows.
fn sparse_sub_mul<A: Arith>(a: &A, row: &[(usize, A::E)], f: &A::E, piv: &[(usize, A::E)]) -> SparseRow<A::E> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            let v = a.neg_mul(f, &piv[j].1);
            if !a.is_zero(&v) {
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = a.sub_mul(&row[i].1, f, &piv[j].1);
            if !a.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry_at<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Sparse Gauss–Jordan elimination.
pub(crate) fn rref_sparse<A: Arith>(a: &A, rows: Vec<SparseRow<A::E>>) -> Echelon<A::E> {
    let mut store: Vec<Option<SparseRow<A::E>>> = rows.into_iter().map(Some).collect();
    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, r) in store.iter().enumerate() {
        if let Some(r) = r {
            if let Some(&(c, _)) = r.first() {
                buckets.entry(c).or_default().push(id);
            }
        }
    }
    let mut pivot_rows: Vec<SparseRow<A::E>> = Vec::new();
    let mut pivots = Vec::new();
    while let Some((col, mut ids)) = buckets.pop_first() {
        ids.sort_unstable();
        let (best, _) = ids
            .iter()
            .enumerate()
            .map(|(k, id)| (k, a.cost(&store[*id].as_ref().unwrap()[0].1)))
            .min_by_key(|&(k, c)| (c, k))
            .unwrap();
        let pid = ids.remove(best);
        let mut prow = store[pid].take().unwrap();
        let inv = a.inv(&prow[0].1);
        for e in prow.iter_mut() {
            e.1 = a.mul(&e.1, &inv);
        }
        for id in ids {
            let row = store[id].take().unwrap();
            let f = row[0].1.clone();
            let reduced = sparse_sub_mul(a, &row, &f, &prow);
            if let Some(&(c, _)) = reduced.first() {
                debug_assert!(c > col);
                buckets.entry(c).or_default().push(id);
                store[id] = Some(reduced);
            }
        }
        pivots.push(col);
        pivot_rows.push(prow);
    }
    // back substitution, last pivot first
    for k in (0..pivot_rows.len()).rev() {
        let col = pivots[k];
        let (head, tail) = pivot_rows.split_at_mut(k);
        let prow = &tail[0];
        for row in head.iter_mut() {
            if let Some(f) = entry_at(row, col).cloned() {
                *row = sparse_sub_mul(a, row, &f, prow);
            }
        }
    }
    Echelon {
        rows: pivot_rows,
        pivots,
    }
}

/// Dense Gauss–Jordan elimination for matrices above the density threshold.
pub(crate) fn rref_dense<A: Arith>(a: &A, rows: Vec<SparseRow<A::E>>, ncols: usize) -> Echelon<A::E> {
    let mut m: Vec<Vec<A::E>> = rows
        .into_iter()
        .map(|r| {
            let mut d = vec![a.zero(); ncols];
            for (c, v) in r {
                d[c] = v;
            }
            d
        })
        .collect();
    let nrows = m.len();
    let mut used = vec![false; nrows];
    let mut order = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let best = (0..nrows)
            .filter(|&r| !used[r] && !a.is_zero(&m[r][col]))
            .min_by_key(|&r| (a.cost(&m[r][col]), r));
        let Some(pr) = best else { continue };
        used[pr] = true;
        let inv = a.inv(&m[pr][col]);
        for v in m[pr][col..].iter_mut() {
            *v = a.mul(v, &inv);
        }
        let prow = std::mem::take(&mut m[pr]);
        for (r, row) in m.iter_mut().enumerate() {
            if r == pr || a.is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !a.is_zero(&prow[c]) {
                    row[c] = a.sub_mul(&row[c], &f, &prow[c]);
                }
            }
        }
        m[pr] = prow;
        order.push(pr);
        pivots.push(col);
    }
    let rows = order
        .into_iter()
        .map(|r| {
            std::mem::take(&mut m[r])
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !a.is_zero(v))
                .collect()
        })
        .collect();
    Echelon { rows, pivots }
}

/// Dense fallback kicks in when more than a third of the entries are nonzero.
pub(crate) fn rref_auto<A: Arith>(a: &A, rows: Vec<SparseRow<A::E>>, ncols: usize) -> Echelon<A::E> {
    let nnz: usize = rows.iter().map(|r| r.len()).sum();
    let cells = rows.len().saturating_mul(ncols);
    if cells > 0 && nnz * 3 > cells {
        rref_dense(a, rows, ncols)
    } else {
        rref_sparse(a, rows)
    }
}

/// Incremental echelon basis used for orbit closures and membership tests.
#[derive(Clone, Debug)]
pub(crate) struct Incremental<E> {
    /// Fully reduced rows keyed by pivot column.
    pub rows: BTreeMap<usize, SparseRow<E>>,
}

impl<E: Clone + Send + Sync> Incremental<E> {
    pub fn new() -> Self {
        Incremental {
            rows: BTreeMap::new(),
        }
    }

    pub fn reduce<A: Arith<E = E>>(&self, a: &A, v: SparseRow<E>) -> SparseRow<E> {
        let mut v = v;
        // reduce against every pivot present in v, scanning left to right
        let mut idx = 0;
        while idx < v.len() {
            let c = v[idx].0;
            if let Some(prow) = self.rows.get(&c) {
                let f = v[idx].1.clone();
                v = sparse_sub_mul(a, &v, &f, prow);
                // entries before idx unchanged; entry idx removed
            } else {
                idx += 1;
            }
        }
        v
    }

    /// Adds `v` to the span; returns true if it was independent.
    pub fn insert<A: Arith<E = E>>(&mut self, a: &A, v: SparseRow<E>) -> bool {
        let mut r = self.reduce(a, v);
        if r.is_empty() {
            return false;
        }
        let inv = a.inv(&r[0].1);
        for e in r.iter_mut() {
            e.1 = a.mul(&e.1, &inv);
        }
        let col = r[0].0;
        for row in self.rows.values_mut() {
            if let Some(f) = entry_at(row, col).cloned() {
                *row = sparse_sub_mul(a, row, &f, &r);
            }
        }
        self.rows.insert(col, r);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

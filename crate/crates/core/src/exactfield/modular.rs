//! Multimodular reduced row-echelon form over the rationals.
//!
//! The matrix is scaled row-wise to integers and eliminated modulo a sequence of
//! 32-bit primes. Residues of the reduced form are combined by CRT and lifted by
//! rational reconstruction. A candidate is accepted only after every kernel
//! vector it implies is checked against the integer matrix exactly: with
//! `r = rank mod p <= rank over Q` and `ncols - r` independent exact kernel
//! vectors, the rank over Q is `r` and the candidate row space is the true one,
//! so the candidate is the unique reduced form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::elim::{rref_auto, Echelon, ModArith, SparseRow};
use super::scalar::{bigint_mod, inv_mod, mul_mod, primes_below, sub_mod};
use crate::error::{Error, Result};

const MAX_PRIMES: usize = 4096;

pub(crate) fn rref_multimodular(rows: &[SparseRow<BigRational>], ncols: usize) -> Result<Echelon<BigRational>> {
    let int_rows: Vec<SparseRow<BigInt>> = rows.iter().map(|r| scale_to_integers(r)).collect();
    let columns = column_index(&int_rows, ncols);

    let mut best: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    // residues[i][k] is entry (pivot row i, free column free_cols[k])
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut free_cols: Vec<usize> = Vec::new();
    let mut previous: Option<Vec<Vec<BigRational>>> = None;

    for (used, p) in primes_below(1 << 32).enumerate() {
        if used >= MAX_PRIMES {
            break;
        }
        let a = ModArith { p };
        let reduced: Vec<SparseRow<u64>> = int_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| (*c, bigint_mod(v, p)))
                    .filter(|(_, v)| *v != 0)
                    .collect()
            })
            .collect();
        let ech = rref_auto(&a, reduced, ncols);
        match &best {
            Some(b) if worse(b, &ech.pivots) => continue,
            Some(b) if *b == ech.pivots => {}
            _ => {
                // first prime, or a strictly better pivot pattern: restart
                best = Some(ech.pivots.clone());
                modulus = BigInt::one();
                free_cols = free_columns(&ech.pivots, ncols);
                residues = vec![vec![BigInt::zero(); free_cols.len()]; ech.pivots.len()];
                previous = None;
            }
        }
        let pivots = best.clone().unwrap();
        if free_cols.is_empty() {
            // full column rank is certified by a single prime
            return Ok(assemble(&pivots, &free_cols, &vec![vec![]; pivots.len()]));
        }
        if pivots.is_empty() {
            if int_rows.iter().all(|r| r.is_empty()) {
                return Ok(assemble(&pivots, &free_cols, &[]));
            }
            // every entry vanished mod p; try the next prime
            continue;
        }
        combine(&mut residues, &mut modulus, &ech, &free_cols, p);
        if modulus.bits() < 64 {
            continue;
        }
        let Some(candidate) = reconstruct(&residues, &modulus) else {
            continue;
        };
        let stable = previous.as_ref() == Some(&candidate);
        previous = Some(candidate);
        if !stable {
            continue;
        }
        let cand = previous.as_ref().unwrap();
        if verify_kernel(&columns, &pivots, &free_cols, cand, int_rows.len()) {
            return Ok(assemble(&pivots, &free_cols, cand));
        }
    }
    Err(Error::Internal(
        "multimodular reduction did not converge".to_string(),
    ))
}

/// Unlucky primes only lose pivots or push them right, so the true pattern has
/// the most pivots and, among those, the lexicographically smallest sequence.
fn worse(current: &[usize], candidate: &[usize]) -> bool {
    candidate.len() < current.len() || (candidate.len() == current.len() && candidate > current)
}

fn free_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols).filter(|&c| !is_pivot[c]).collect()
}

fn scale_to_integers(row: &[(usize, BigRational)]) -> SparseRow<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect()
}

fn column_index(rows: &[SparseRow<BigInt>], ncols: usize) -> Vec<Vec<(usize, BigInt)>> {
    let mut cols = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            cols[*c].push((r, v.clone()));
        }
    }
    cols
}

fn combine(residues: &mut [Vec<BigInt>], modulus: &mut BigInt, ech: &Echelon<u64>, free_cols: &[usize], p: u64) {
    let pb = BigInt::from(p);
    // x = a + M * ((r - a) * M^{-1} mod p)
    let m_mod_p = bigint_mod(modulus, p);
    let m_inv = inv_mod(m_mod_p, p);
    residues.par_iter_mut().zip(ech.rows.par_iter()).for_each(|(res, row)| {
        let mut j = 0;
        for (k, &c) in free_cols.iter().enumerate() {
            while j < row.len() && row[j].0 < c {
                j += 1;
            }
            let r = if j < row.len() && row[j].0 == c { row[j].1 } else { 0 };
            let a = bigint_mod(&res[k], p);
            let t = mul_mod(sub_mod(r, a, p), m_inv, p);
            if t != 0 {
                res[k] += &*modulus * BigInt::from(t);
            }
        }
    });
    *modulus *= pb;
}

fn reconstruct(residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<BigRational>>> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    residues
        .par_iter()
        .map(|row| {
            row.iter()
                .map(|a| rational_reconstruction(a, modulus, &bound))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Finds `n/d` with `|n|, d <= bound` and `n = a d (mod m)`.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a <= *bound {
        return Some(BigRational::from_integer(a));
    }
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > *bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Checks `M v = 0` for the kernel vector of every free column.
fn verify_kernel(
    columns: &[Vec<(usize, BigInt)>],
    pivots: &[usize],
    free_cols: &[usize],
    cand: &[Vec<BigRational>],
    nrows: usize,
) -> bool {
    (0..free_cols.len()).into_par_iter().all(|k| {
        // v[f] = 1, v[pivot_i] = -cand[i][k]; scale by the common denominator
        let den = cand
            .iter()
            .fold(BigInt::one(), |acc, row| acc.lcm(row[k].denom()));
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); nrows];
        let add_col = |c: usize, coef: &BigInt, acc: &mut Vec<BigInt>| {
            for (r, v) in &columns[c] {
                acc[*r] += v * coef;
            }
        };
        add_col(free_cols[k], &den, &mut acc);
        for (i, row) in cand.iter().enumerate() {
            let e = &row[k];
            if e.is_zero() {
                continue;
            }
            let coef = -(e.numer() * (&den / e.denom()));
            add_col(pivots[i], &coef, &mut acc);
        }
        acc.iter().all(|v| v.is_zero())
    })
}

fn assemble(pivots: &[usize], free_cols: &[usize], cand: &[Vec<BigRational>]) -> Echelon<BigRational> {
    let rows = pivots
        .iter()
        .enumerate()
        .map(|(i, &pc)| {
            let mut row: SparseRow<BigRational> = vec![(pc, BigRational::one())];
            if let Some(vals) = cand.get(i) {
                for (k, &c) in free_cols.iter().enumerate() {
                    if let Some(v) = vals.get(k) {
                        if !v.is_zero() {
                            row.push((c, v.clone()));
                        }
                    }
                }
            }
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    Echelon {
        rows,
        pivots: pivots.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let bound = (&m / BigInt::from(2)).sqrt();
        let inv7 = BigInt::from(7).extended_gcd(&m).x.mod_floor(&m);
        let a = (BigInt::from(-3) * inv7).mod_floor(&m);
        let r = rational_reconstruction(&a, &m, &bound).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(-3), BigInt::from(7)));
    }
}

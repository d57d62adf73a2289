use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{mul_mod, rank, FieldSpec, SparseMatrix};
use crate::graphalg::{enumerate_noncrossing, pack, straighten_packed, GraphMonomial, Packed, ValenceVector};

use super::dense::DenseBasis;
use super::expand::{eval_residue, sample_residues};
use super::space::SAMPLE_MARGIN;

/// Prime used for the sampled rank certificate.
pub const KEMPE_PRIME: u64 = 2_147_483_647;

/// How a Kempe verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KempeMethod {
    /// Odd total weight: the ring has nothing in degree one.
    Vacuous,
    /// The target piece is zero.
    ZeroTarget,
    /// Products evaluated at random points reached full rank modulo a prime.
    SampledRank,
    /// Products straightened into the non-crossing basis, rank over Q.
    Straightening,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeVerdict {
    pub holds: bool,
    pub vacuous: bool,
    pub method: KempeMethod,
    /// Size of the non-crossing basis of `R_{k·w}`.
    pub target_dim: usize,
    /// Rank reached by the products `R_{(k-1)w} · R_w`.
    pub image_rank: usize,
}

/// Whether `R_{(k-1)w} · R_w` spans `R_{k·w}`.
///
/// The sampled certificate is sound: evaluations of integer invariants at
/// integer points have rank mod p at most their rank over Q, and the
/// non-crossing graphs span `R_{k·w}`, so reaching that many independent
/// evaluations proves spanning. If sampling falls short, the answer comes
/// from exact straightening.
pub fn kempe_check(n: usize, w: &ValenceVector, k: usize, seed: u64) -> Result<KempeVerdict> {
    if k < 2 {
        return Err(Error::Invalid("kempe_check needs k >= 2".to_string()));
    }
    if w.n() != n || w.0.contains(&0) {
        return Err(Error::Invalid(format!("{w} is not a positive weight vector on {n} points")));
    }
    if w.total() % 2 == 1 {
        return Ok(KempeVerdict {
            holds: true,
            vacuous: true,
            method: KempeMethod::Vacuous,
            target_dim: 0,
            image_rank: 0,
        });
    }
    let target = enumerate_noncrossing(n, &w.scaled(k));
    if target.is_empty() {
        return Ok(KempeVerdict {
            holds: true,
            vacuous: false,
            method: KempeMethod::ZeroTarget,
            target_dim: 0,
            image_rank: 0,
        });
    }
    let left = enumerate_noncrossing(n, &w.scaled(k - 1));
    let right = enumerate_noncrossing(n, w);
    let mut pairs: Vec<(usize, usize)> = (0..left.len())
        .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);

    let sampled = sampled_rank(n, &left, &right, &pairs, target.len(), &mut rng);
    if sampled == target.len() {
        return Ok(KempeVerdict {
            holds: true,
            vacuous: false,
            method: KempeMethod::SampledRank,
            target_dim: target.len(),
            image_rank: sampled,
        });
    }
    let exact = straightened_rank(&target, &left, &right, &pairs)?;
    Ok(KempeVerdict {
        holds: exact == target.len(),
        vacuous: false,
        method: KempeMethod::Straightening,
        target_dim: target.len(),
        image_rank: exact,
    })
}

fn sampled_rank(
    n: usize,
    left: &[GraphMonomial],
    right: &[GraphMonomial],
    pairs: &[(usize, usize)],
    goal: usize,
    rng: &mut ChaCha8Rng,
) -> usize {
    let p = KEMPE_PRIME;
    let points = sample_residues(n, goal + SAMPLE_MARGIN, p, rng);
    let table = |gs: &[GraphMonomial]| -> Vec<Vec<u64>> {
        gs.par_iter()
            .map(|g| points.iter().map(|xs| eval_residue(g, xs, p)).collect())
            .collect()
    };
    let (lv, rv) = (table(left), table(right));
    let mut basis = DenseBasis::new(p);
    for &(i, j) in pairs {
        let v: Vec<u64> = lv[i].iter().zip(&rv[j]).map(|(a, b)| mul_mod(*a, *b, p)).collect();
        basis.insert(v);
        if basis.rank() == goal {
            break;
        }
    }
    basis.rank()
}

fn straightened_rank(
    target: &[GraphMonomial],
    left: &[GraphMonomial],
    right: &[GraphMonomial],
    pairs: &[(usize, usize)],
) -> Result<usize> {
    let row: HashMap<Packed, usize> = target.iter().enumerate().map(|(i, g)| (pack(g), i)).collect();
    let q = FieldSpec::Rationals;
    let cols = pairs
        .par_iter()
        .map(|&(i, j)| {
            let g = left[i].superpose(&right[j])?;
            let s = straighten_packed([(pack(&g), 1i128)])?;
            Ok(s.into_iter().map(|(p, c)| (row[&p], q.from_i128(c))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(&SparseMatrix::from_columns(target.len(), q, &cols)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weights() {
        for (n, ks) in [(4usize, vec![2, 3, 4]), (6, vec![2, 3])] {
            for k in ks {
                let v = kempe_check(n, &ValenceVector::uniform(n, 1), k, 0).unwrap();
                assert!(v.holds, "n={n} k={k}");
                assert_eq!(v.method, KempeMethod::SampledRank);
            }
        }
    }

    #[test]
    fn non_unit_weights_and_vacuous_case() {
        let w = ValenceVector(vec![2, 1, 1, 1, 1]);
        for k in [2, 3] {
            assert!(kempe_check(5, &w, k, 0).unwrap().holds);
        }
        let odd = kempe_check(3, &ValenceVector(vec![1, 1, 1]), 2, 0).unwrap();
        assert!(odd.holds && odd.vacuous);
    }

    #[test]
    fn straightening_route_agrees() {
        let w = ValenceVector(vec![2, 1, 1, 1, 1]);
        let target = enumerate_noncrossing(5, &w.scaled(2));
        let left = enumerate_noncrossing(5, &w);
        let pairs: Vec<(usize, usize)> = (0..left.len())
            .flat_map(|i| (0..left.len()).map(move |j| (i, j)))
            .collect();
        assert_eq!(straightened_rank(&target, &left, &left, &pairs).unwrap(), target.len());
    }
}

//! Bracket expansion and point evaluation of graph monomials.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{bigint_mod, mul_mod, primes_below, sub_mod, FieldSpec, Scalar};
use crate::graphalg::{GraphMonomial, ValenceVector};

/// Exponent keys hold one byte per vertex.
pub const MAX_EXPANSION_VERTICES: usize = 16;

/// The coefficients of a bracket product as a bihomogeneous form.
///
/// A key packs the exponent of `x_i` into byte `i - 1`; the exponent of `y_i`
/// is `v_i` minus that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub valence: ValenceVector,
    pub terms: BTreeMap<u128, i128>,
}

impl Expansion {
    /// Exponents of `x_1, ..., x_n` for a key.
    pub fn exponents(&self, key: u128) -> Vec<usize> {
        (0..self.valence.n())
            .map(|i| ((key >> (8 * i)) & 0xff) as usize)
            .collect()
    }

    /// Mixed-radix position of a key in the `∏ (v_i + 1)` coefficient space.
    pub fn coordinate_index(&self, key: u128) -> u128 {
        let mut idx = 0u128;
        let mut radix = 1u128;
        for (i, &v) in self.valence.0.iter().enumerate() {
            idx += ((key >> (8 * i)) & 0xff) * radix;
            radix *= v as u128 + 1;
        }
        idx
    }

    pub fn coefficient(&self, x_exponents: &[usize]) -> i128 {
        let key = x_exponents
            .iter()
            .enumerate()
            .fold(0u128, |k, (i, &e)| k | ((e as u128) << (8 * i)));
        self.terms.get(&key).copied().unwrap_or(0)
    }
}

fn expand_map(g: &GraphMonomial) -> Result<HashMap<u128, i128>> {
    if g.n() > MAX_EXPANSION_VERTICES {
        return Err(Error::Invalid(format!(
            "coefficient expansion supports at most {MAX_EXPANSION_VERTICES} vertices"
        )));
    }
    if g.valence().0.iter().any(|&v| v > 255) {
        return Err(Error::Invalid("valence above 255".to_string()));
    }
    let mut acc: HashMap<u128, i128> = HashMap::from([(0u128, g.sign() as i128)]);
    for e in g.edges() {
        let (ua, ub) = (1u128 << (8 * (e.tail - 1)), 1u128 << (8 * (e.head - 1)));
        let mut next: HashMap<u128, i128> = HashMap::with_capacity(acc.len() * 2);
        for (k, c) in acc {
            // [ab] = x_a y_b - y_a x_b
            let slot = next.entry(k + ua).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            let slot = next.entry(k + ub).or_insert(0);
            *slot = slot.checked_sub(c).ok_or(Error::Overflow)?;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    Ok(acc)
}

/// Expands `∏ (x_a y_b - y_a x_b)` over the edges, times the monomial's sign.
pub fn bracket_expand(g: &GraphMonomial) -> Result<Expansion> {
    Ok(Expansion {
        valence: g.valence(),
        terms: expand_map(g)?.into_iter().collect(),
    })
}

/// Value of `g` at the points `(x_i, y_i)`.
pub fn eval_point(g: &GraphMonomial, points: &[(Scalar, Scalar)]) -> Result<Scalar> {
    if points.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: points.len(),
        });
    }
    let field = points.first().map(|p| p.0.field()).unwrap_or(FieldSpec::Rationals);
    let mut acc = field.from_i64(g.sign() as i64);
    for e in g.edges() {
        let (xa, ya) = &points[e.tail - 1];
        let (xb, yb) = &points[e.head - 1];
        acc = &acc * &(&(xa * yb) - &(ya * xb));
    }
    Ok(acc)
}

/// Values of `g` at each sample.
pub fn eval_at(g: &GraphMonomial, samples: &[Vec<(Scalar, Scalar)>]) -> Result<Vec<Scalar>> {
    samples.iter().map(|s| eval_point(g, s)).collect()
}

/// Affine sample points `(x_i, 1)` with pairwise distinct `x_i`, drawn from a
/// seeded generator: residues below `p` over a prime field, integers in
/// `[-bound, bound]` over the rationals.
pub fn sample_points(n: usize, count: usize, field: FieldSpec, seed: u64) -> Result<Vec<Vec<(Scalar, Scalar)>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = (4 * n as i64).max(64);
    if let FieldSpec::PrimeField(p) = field {
        if p < 1 << 26 {
            return Err(Error::Invalid(format!(
                "sampled evaluation needs a prime above 2^26, got {p}"
            )));
        }
    }
    (0..count)
        .map(|_| {
            let xs: Vec<i64> = match field {
                FieldSpec::PrimeField(p) => distinct(n, || rng.gen_range(0..p) as i64),
                FieldSpec::Rationals => distinct(n, || rng.gen_range(-bound..=bound)),
            };
            Ok(xs
                .into_iter()
                .map(|x| (field.from_i64(x), field.one()))
                .collect())
        })
        .collect()
}

fn distinct(n: usize, mut draw: impl FnMut() -> i64) -> Vec<i64> {
    let mut xs: Vec<i64> = Vec::with_capacity(n);
    while xs.len() < n {
        let x = draw();
        // coincident points annihilate every bracket joining them; redraw
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs
}

/// Affine sample x-coordinates modulo `p`, as raw residues.
pub(crate) fn sample_residues(n: usize, count: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    (0..count)
        .map(|_| {
            let mut xs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            xs.sort_unstable();
            xs.dedup();
            while xs.len() < n {
                let x = rng.gen_range(0..p);
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            xs.shuffle(rng);
            xs
        })
        .collect()
}

/// `g` at the affine points `(x_i, 1)` modulo `p`.
pub(crate) fn eval_residue(g: &GraphMonomial, xs: &[u64], p: u64) -> u64 {
    let mut acc = if g.sign() < 0 { p - 1 } else { 1 };
    for e in g.edges() {
        acc = mul_mod(acc, sub_mod(xs[e.tail - 1], xs[e.head - 1], p), p);
    }
    acc
}

/// Bracket expansions of a list of graphs, stored as sparse integer columns
/// over a shared row index.
#[derive(Clone, Debug)]
pub struct ExpansionMatrix {
    pub keys: Vec<u128>,
    pub columns: Vec<Vec<(u32, i128)>>,
}

impl ExpansionMatrix {
    pub fn build(graphs: &[GraphMonomial]) -> Result<Self> {
        let maps: Vec<HashMap<u128, i128>> = graphs
            .par_iter()
            .map(expand_map)
            .collect::<Result<Vec<_>>>()?;
        let mut keys: Vec<u128> = maps.iter().flat_map(|m| m.keys().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        let row: HashMap<u128, u32> = keys.iter().enumerate().map(|(i, k)| (*k, i as u32)).collect();
        let columns = maps
            .into_iter()
            .map(|m| {
                let mut col: Vec<(u32, i128)> = m.into_iter().map(|(k, c)| (row[&k], c)).collect();
                col.sort_unstable();
                col
            })
            .collect();
        Ok(ExpansionMatrix { keys, columns })
    }

    /// Exactly decides whether `Σ v_j · column_j` vanishes.
    ///
    /// Over Q the vector is scaled to integers and the sum is checked modulo
    /// enough 62-bit primes that their product exceeds twice the largest
    /// possible absolute entry, which makes the test exact.
    pub fn combination_vanishes(&self, v: &[(usize, Scalar)]) -> bool {
        if v.is_empty() {
            return true;
        }
        match v[0].1.field() {
            FieldSpec::PrimeField(p) => {
                let ints: Vec<(usize, BigInt)> = v
                    .iter()
                    .map(|(j, s)| match s {
                        Scalar::Residue { value, .. } => (*j, BigInt::from(*value)),
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect();
                self.vanishes_mod(&ints, p)
            }
            FieldSpec::Rationals => {
                let den = v.iter().fold(BigInt::one(), |acc, (_, s)| {
                    acc.lcm(s.as_rational().expect("rational").denom())
                });
                let ints: Vec<(usize, BigInt)> = v
                    .iter()
                    .map(|(j, s)| {
                        let r = s.as_rational().unwrap();
                        (*j, r.numer() * (&den / r.denom()))
                    })
                    .collect();
                let max_entry = self
                    .columns
                    .iter()
                    .flat_map(|c| c.iter().map(|e| e.1.unsigned_abs()))
                    .max()
                    .unwrap_or(0);
                let l1: BigInt = ints.iter().map(|(_, c)| c.abs()).sum();
                let bound = BigInt::from(2) * l1 * BigInt::from(max_entry) + 1;
                let mut modulus = BigInt::one();
                for p in primes_below(1 << 62) {
                    if !self.vanishes_mod(&ints, p) {
                        return false;
                    }
                    modulus *= p;
                    if modulus > bound {
                        return true;
                    }
                }
                unreachable!("ran out of primes")
            }
        }
    }

    fn vanishes_mod(&self, v: &[(usize, BigInt)], p: u64) -> bool {
        let mut acc = vec![0u64; self.keys.len()];
        for (j, c) in v {
            let c = bigint_mod(c, p);
            if c == 0 {
                continue;
            }
            for &(r, e) in &self.columns[*j] {
                let e = e.rem_euclid(p as i128) as u64;
                let slot = &mut acc[r as usize];
                *slot = crate::exactfield::add_mod(*slot, mul_mod(c, e, p), p);
            }
        }
        acc.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GraphMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_edge() {
        let e = bracket_expand(&g("n=2; 1-2")).unwrap();
        assert_eq!(e.coefficient(&[1, 0]), 1);
        assert_eq!(e.coefficient(&[0, 1]), -1);
        assert_eq!(e.terms.len(), 2);
        let r = bracket_expand(&g("n=2; 2-1")).unwrap();
        assert_eq!(r.coefficient(&[1, 0]), -1);
        assert_eq!(r.coefficient(&[0, 1]), 1);
    }

    #[test]
    fn doubled_edge() {
        // (x1 y2 - x2 y1)^2 = x1^2 y2^2 - 2 x1 x2 y1 y2 + x2^2 y1^2
        let e = bracket_expand(&g("n=2; 1-2 1-2")).unwrap();
        assert_eq!(e.coefficient(&[2, 0]), 1);
        assert_eq!(e.coefficient(&[1, 1]), -2);
        assert_eq!(e.coefficient(&[0, 2]), 1);
    }

    #[test]
    fn evaluation() {
        let q = FieldSpec::Rationals;
        let pts = vec![(q.one(), q.zero()), (q.zero(), q.one())];
        assert_eq!(eval_point(&g("n=2; 1-2"), &pts).unwrap(), q.one());
        let same = vec![(q.from_i64(3), q.one()), (q.from_i64(3), q.one()), (q.zero(), q.one())];
        assert!(eval_point(&g("n=3; 1-2 2-3"), &same).unwrap().is_zero());
        let samples = sample_points(4, 5, q, 7).unwrap();
        let (a, b) = (g("n=4; 1-3 2-4"), g("n=4; 1-2 3-4"));
        let prod = a.superpose(&b).unwrap();
        for s in &samples {
            let lhs = eval_point(&prod, s).unwrap();
            assert_eq!(lhs, &eval_point(&a, s).unwrap() * &eval_point(&b, s).unwrap());
        }
    }

    #[test]
    fn exact_vanishing_test() {
        let q = FieldSpec::Rationals;
        let graphs = vec![g("n=4; 1-2 3-4"), g("n=4; 1-3 2-4"), g("n=4; 1-4 2-3")];
        let m = ExpansionMatrix::build(&graphs).unwrap();
        let rel = vec![(0, q.from_i64(1)), (1, q.from_i64(-1)), (2, q.from_i64(1))];
        assert!(m.combination_vanishes(&rel));
        let not = vec![(0, q.from_i64(1)), (1, q.from_i64(1)), (2, q.from_i64(1))];
        assert!(!m.combination_vanishes(&not));
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::partition::{factorial, Partition};
use crate::error::{Error, Result};
use crate::graphalg::ValenceVector;
use crate::invring::SymPower;

/// Largest `n` for which character tables are built.
pub const MAX_TABLE_N: usize = 14;

/// Integer values on the conjugacy classes of `S_n`, in [`Partition::all`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    pub values: Vec<i128>,
}

impl ClassFunction {
    pub fn classes(&self) -> Vec<Partition> {
        Partition::all(self.n)
    }

    /// Value at the identity class `(1^n)`, which comes last.
    pub fn degree(&self) -> i128 {
        *self.values.last().expect("nonempty")
    }

    pub fn value(&self, class: &Partition) -> Option<i128> {
        let pos = self.classes().iter().position(|c| c == class)?;
        Some(self.values[pos])
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(ClassFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Irreducible characters indexed by partitions.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// `rows[i]` is the character of `partitions[i]`.
    pub rows: Vec<ClassFunction>,
}

/// Characters by the Murnaghan–Nakayama rule on beta-sets, memoized on
/// (beta-set, number of cycle parts already removed).
struct MurnaghanNakayama<'a> {
    cycle: &'a [usize],
    memo: HashMap<(Vec<usize>, usize), i128>,
}

impl MurnaghanNakayama<'_> {
    fn value(&mut self, beta: &[usize], k: usize) -> i128 {
        if k == self.cycle.len() {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(beta.to_vec(), k)) {
            return v;
        }
        let r = self.cycle[k];
        let mut total = 0i128;
        for (i, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            // the leg length is the number of beads jumped over
            let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
            let mut next = beta.to_vec();
            next[i] = b - r;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let v = self.value(&next, k + 1);
            total += if jumped % 2 == 0 { v } else { -v };
        }
        self.memo.insert((beta.to_vec(), k), total);
        total
    }
}

fn beta_set(lambda: &Partition) -> Vec<usize> {
    let len = lambda.len();
    lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect()
}

/// `χ^λ(μ)`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> i128 {
    let mut mn = MurnaghanNakayama {
        cycle: mu.parts(),
        memo: HashMap::new(),
    };
    mn.value(&beta_set(lambda), 0)
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    if n > MAX_TABLE_N {
        return Err(Error::CapExceeded(format!("character tables are limited to n <= {MAX_TABLE_N}")));
    }
    let partitions = Partition::all(n);
    // one memo per class, shared across all rows
    let columns: Vec<Vec<i128>> = partitions
        .par_iter()
        .map(|mu| {
            let mut mn = MurnaghanNakayama {
                cycle: mu.parts(),
                memo: HashMap::new(),
            };
            partitions.iter().map(|l| mn.value(&beta_set(l), 0)).collect()
        })
        .collect();
    let rows = (0..partitions.len())
        .map(|i| ClassFunction {
            n,
            values: columns.iter().map(|c| c[i]).collect(),
        })
        .collect();
    Ok(CharacterTable { n, partitions, rows })
}

impl CharacterTable {
    pub fn character(&self, lambda: &Partition) -> Option<&ClassFunction> {
        self.partitions.iter().position(|p| p == lambda).map(|i| &self.rows[i])
    }

    /// `⟨χ, ψ⟩ = (1/n!) Σ |C| χ ψ` as an exact rational.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> BigRational {
        let sum: BigInt = self
            .partitions
            .iter()
            .zip(a.values.iter().zip(&b.values))
            .map(|(c, (x, y))| BigInt::from(c.class_size()) * BigInt::from(*x) * BigInt::from(*y))
            .sum();
        BigRational::new(sum, BigInt::from(factorial(self.n)))
    }

    /// Multiplicities of the irreducibles in a genuine character.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<MultiplicityVector> {
        if chi.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: chi.n,
            });
        }
        let mut out = BTreeMap::new();
        for (lambda, row) in self.partitions.iter().zip(&self.rows) {
            let m = self.inner_product(chi, row);
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Internal(format!("multiplicity {m} of {lambda} is not a natural number")));
            }
            let m = m.to_integer().to_u64().ok_or(Error::Overflow)?;
            if m > 0 {
                out.insert(lambda.clone(), m);
            }
        }
        Ok(MultiplicityVector(out))
    }

    /// Multiplicity of the sign character `(1^n)`.
    pub fn sign_multiplicity(&self, chi: &ClassFunction) -> Result<u64> {
        let sign = Partition::new(vec![1; self.n])?;
        Ok(self.decompose(chi)?.0.get(&sign).copied().unwrap_or(0))
    }
}

/// Irreducible multiplicities keyed by partition.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiplicityVector(pub BTreeMap<Partition, u64>);

impl MultiplicityVector {
    /// `Σ m_λ · dim λ`.
    pub fn dimension(&self) -> u128 {
        self.0
            .iter()
            .map(|(l, m)| *m as u128 * super::partition::hook_dimension(l))
            .sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.0.values().all(|&m| m == 1)
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.0.keys().cloned().collect()
    }
}

impl fmt::Display for MultiplicityVector {
    /// Aligned `partition  multiplicity  dimension` rows plus the total.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.0.keys().map(|p| p.to_string().len()).max().unwrap_or(9).max(9);
        writeln!(f, "{:<width$}  {:>4}  {:>10}", "partition", "mult", "dim")?;
        for (l, m) in self.0.iter().rev() {
            writeln!(f, "{:<width$}  {:>4}  {:>10}", l.to_string(), m, super::partition::hook_dimension(l))?;
        }
        write!(f, "{:<width$}  {:>4}  {:>10}", "total", "", self.dimension())
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.partitions.iter().map(|p| p.to_string()).collect();
        let w = labels.iter().map(|s| s.len()).max().unwrap_or(1);
        let cell = self
            .rows
            .iter()
            .flat_map(|r| r.values.iter().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(w);
        write!(f, "{:<w$}", "")?;
        for l in &labels {
            write!(f, " {l:>cell$}")?;
        }
        for (l, row) in labels.iter().zip(&self.rows) {
            write!(f, "\n{l:<w$}")?;
            for v in &row.values {
                write!(f, " {v:>cell$}")?;
            }
        }
        Ok(())
    }
}

/// Symmetric square or cube of a character.
pub fn sym_power_character(chi: &ClassFunction, d: usize) -> Result<ClassFunction> {
    let classes = chi.classes();
    let lookup = |c: &Partition| chi.values[classes.iter().position(|x| x == c).expect("class")];
    let values = classes
        .iter()
        .map(|mu| {
            let a = lookup(mu);
            let (num, den) = match d {
                2 => (a * a + lookup(&mu.power(2)), 2),
                3 => (a * a * a + 3 * a * lookup(&mu.power(2)) + 2 * lookup(&mu.power(3)), 6),
                _ => return Err(Error::Invalid(format!("symmetric power {d} is not supported"))),
            };
            if num % den != 0 {
                return Err(Error::Internal(format!("Sym^{d} value {num}/{den} is not an integer")));
            }
            Ok(num / den)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { n: chi.n, values })
}

/// Character of `S_n` acting on `R_{k·1^n}`, by traces in the non-crossing basis.
pub fn module_character(n: usize, w: &ValenceVector) -> Result<ClassFunction> {
    if w.n() != n || w.0.iter().any(|&x| x != w.0[0]) {
        return Err(Error::Invalid(format!("{w} is not invariant under permutations")));
    }
    let space = SymPower::new(n, w, 1);
    let values = Partition::all(n)
        .par_iter()
        .map(|mu| {
            let sigma = mu.representative();
            let mut trace = 0i128;
            for (i, b) in space.basis().iter().enumerate() {
                let image = space.degree_one_coordinates(&b.apply_permutation(&sigma)?)?;
                if let Ok(k) = image.binary_search_by_key(&i, |e| e.0) {
                    trace += image[k].1;
                }
            }
            Ok(trace)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { n, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign() {
        let t = character_table(6).unwrap();
        assert!(t.character(&p(&[6])).unwrap().values.iter().all(|&v| v == 1));
        let sign = t.character(&p(&[1; 6])).unwrap();
        for (mu, v) in t.partitions.iter().zip(&sign.values) {
            assert_eq!(*v, mu.representative().sign() as i128);
        }
    }

    #[test]
    fn orthogonality_n5() {
        let t = character_table(5).unwrap();
        for (i, a) in t.rows.iter().enumerate() {
            for (j, b) in t.rows.iter().enumerate() {
                let ip = t.inner_product(a, b);
                assert_eq!(ip.is_one(), i == j);
                assert!(i == j || ip.is_zero());
            }
        }
        // columns: Σ_λ χ(μ) χ(ν) = δ z_μ
        for (a, mu) in t.partitions.iter().enumerate() {
            for b in 0..t.partitions.len() {
                let s: i128 = t.rows.iter().map(|r| r.values[a] * r.values[b]).sum();
                assert_eq!(s, if a == b { mu.centralizer_order() as i128 } else { 0 });
            }
        }
    }

    #[test]
    fn identity_column_is_hook_dimension() {
        let t = character_table(8).unwrap();
        for (l, row) in t.partitions.iter().zip(&t.rows) {
            assert_eq!(row.degree() as u128, super::super::partition::hook_dimension(l));
        }
    }

    #[test]
    fn symmetric_powers() {
        let t = character_table(8).unwrap();
        let triv = t.character(&p(&[8])).unwrap();
        assert_eq!(&sym_power_character(triv, 2).unwrap(), triv);
        let r1 = t.character(&p(&[4, 4])).unwrap();
        assert_eq!(sym_power_character(r1, 2).unwrap().degree(), 105);
        assert_eq!(sym_power_character(r1, 3).unwrap().degree(), 560);
        assert!(sym_power_character(r1, 4).is_err());
    }

    #[test]
    fn degree_one_piece_is_irreducible() {
        let chi = module_character(6, &ValenceVector::uniform(6, 1)).unwrap();
        let t = character_table(6).unwrap();
        assert_eq!(&chi, t.character(&p(&[3, 3])).unwrap());
    }
}

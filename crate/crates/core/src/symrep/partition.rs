use std::fmt;

use crate::error::{Error, Result};
use crate::graphalg::Permutation;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, largest first in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + conj.0[j] - i - 1).collect())
            .collect()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the centralizer order of the class of cycle type `λ`.
    pub fn centralizer_order(&self) -> u128 {
        let mut z = 1u128;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let m = self.0[i..].iter().take_while(|&&x| x == part).count();
            for k in 1..=m {
                z *= part as u128 * k as u128;
            }
            i += m;
        }
        z
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u128 {
        factorial(self.size()) / self.centralizer_order()
    }

    /// Cycle type of `σ^k` for `σ` of this cycle type.
    pub fn power(&self, k: usize) -> Partition {
        let mut parts = Vec::new();
        for &l in &self.0 {
            let g = gcd(l, k);
            parts.extend(std::iter::repeat_n(l / g, g));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The canonical element of the class: cycles in decreasing length on consecutive labels.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for &l in &self.0 {
            cycles.push((next..next + l).collect::<Vec<_>>());
            next += l;
        }
        Permutation::from_cycles(self.size(), &cycles).expect("consecutive cycles")
    }

    /// Every part even.
    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `n! / ∏ hooks`, the dimension of the irreducible representation.
pub fn hook_dimension(lambda: &Partition) -> u128 {
    let hooks: u128 = lambda
        .hook_lengths()
        .iter()
        .flatten()
        .map(|&h| h as u128)
        .product();
    factorial(lambda.size()) / hooks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_examples() {
        assert_eq!(p(&[4, 4]).hook_lengths(), vec![vec![5, 4, 3, 2], vec![4, 3, 2, 1]]);
        assert_eq!(hook_dimension(&p(&[4, 4])), 14);
        assert_eq!(hook_dimension(&p(&[3, 3])), 5);
        assert_eq!(hook_dimension(&p(&[7])), 1);
        assert_eq!(hook_dimension(&p(&[4, 2, 2, 2])), 300);
        assert_eq!(hook_dimension(&p(&[2, 2, 2, 2])), 14);
    }

    #[test]
    fn counts_and_classes() {
        assert_eq!(Partition::all(10).len(), 42);
        assert_eq!(Partition::all(14).len(), 135);
        let total: u128 = Partition::all(6).iter().map(|m| m.class_size()).sum();
        assert_eq!(total, 720);
        assert_eq!(p(&[4, 2]).power(2), p(&[2, 2, 1, 1]));
        assert_eq!(p(&[3, 2, 1]).representative().cycle_type(), vec![3, 2, 1]);
    }
}

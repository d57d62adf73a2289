use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation: `images[i - 1]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || used[a] {
                    return Err(Error::Invalid(format!("bad cycle {cycle:?} for n = {n}")));
                }
                used[a] = true;
                images[a - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// The rotation `i -> i + 1 (mod n)`.
    pub fn rotation(n: usize) -> Self {
        Permutation {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        (0..k).fold(Self::identity(self.n()), |acc, _| self.compose(&acc))
    }

    /// Cycle lengths in weakly decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut lens = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `1..=n` with their signs, in Heap's-algorithm order.
    pub fn all_with_sign(n: usize) -> impl Iterator<Item = (Permutation, i32)> {
        HeapIter::new(n)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

struct HeapIter {
    current: Vec<usize>,
    counters: Vec<usize>,
    sign: i32,
    index: usize,
    started: bool,
}

impl HeapIter {
    fn new(n: usize) -> Self {
        HeapIter {
            current: (1..=n).collect(),
            counters: vec![0; n],
            sign: 1,
            index: 1,
            started: false,
        }
    }
}

impl Iterator for HeapIter {
    type Item = (Permutation, i32);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some((Permutation { images: self.current.clone() }, self.sign));
        }
        let n = self.current.len();
        while self.index < n {
            let i = self.index;
            if self.counters[i] < i {
                let j = if i.is_multiple_of(2) { 0 } else { self.counters[i] };
                self.current.swap(j, i);
                self.sign = -self.sign;
                self.counters[i] += 1;
                self.index = 1;
                return Some((Permutation { images: self.current.clone() }, self.sign));
            }
            self.counters[i] = 0;
            self.index += 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heap_enumerates_all_with_correct_sign() {
        let all: Vec<_> = Permutation::all_with_sign(5).collect();
        assert_eq!(all.len(), 120);
        let mut distinct: Vec<_> = all.iter().map(|(p, _)| p.clone()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 120);
        for (p, s) in &all {
            assert_eq!(p.sign(), *s);
        }
    }

    #[test]
    fn compose_and_inverse() {
        let r = Permutation::rotation(5);
        assert_eq!(r.pow(5), Permutation::identity(5));
        assert_eq!(r.compose(&r.inverse()), Permutation::identity(5));
        let c = Permutation::from_cycles(6, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(c.cycle_type(), vec![3, 2, 1]);
        assert_eq!(c.sign(), -1);
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }
}

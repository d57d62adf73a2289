//! Symmetric powers of a graded piece, coordinatized by monomials in its
//! non-crossing basis, and the relations living there.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::graphalg::{
    enumerate_noncrossing, pack, signed_coefficient, straighten_packed, unpack, GraphMonomial, GraphPolynomial,
    Packed, Permutation, ValenceVector,
};

/// Sparse vector: sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sparse integer vector.
pub type IntVec = Vec<(usize, i128)>;

/// `Sym^d` of the piece `R_w`, with coordinates indexed by weakly decreasing
/// `d`-tuples of basis indices.
#[derive(Clone, Debug)]
pub struct SymPower {
    n: usize,
    weight: ValenceVector,
    degree: usize,
    basis: Vec<GraphMonomial>,
    basis_index: HashMap<Packed, usize>,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn decreasing_tuples(m: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..m {
        for mut rest in decreasing_tuples(first + 1, d - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl SymPower {
    pub fn new(n: usize, weight: &ValenceVector, degree: usize) -> Self {
        let basis = enumerate_noncrossing(n, weight);
        Self::with_basis(n, weight, degree, basis)
    }

    fn with_basis(n: usize, weight: &ValenceVector, degree: usize, basis: Vec<GraphMonomial>) -> Self {
        let basis_index = basis.iter().enumerate().map(|(i, g)| (pack(g), i)).collect();
        let monomials = decreasing_tuples(basis.len(), degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        SymPower {
            n,
            weight: weight.clone(),
            degree,
            basis,
            basis_index,
            monomials,
            index,
        }
    }

    /// The same degree-one basis in another degree.
    pub fn with_degree(&self, degree: usize) -> SymPower {
        Self::with_basis(self.n, &self.weight, degree, self.basis.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> &ValenceVector {
        &self.weight
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[GraphMonomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomial(&self, i: usize) -> &[usize] {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    /// Coordinate of a tuple in any order.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        let mut t = tuple.to_vec();
        t.sort_unstable_by(|a, b| b.cmp(a));
        self.index.get(&t).copied()
    }

    /// Integer coordinates of a degree-one graph in the non-crossing basis.
    pub fn degree_one_coordinates(&self, g: &GraphMonomial) -> Result<IntVec> {
        if g.n() != self.n || g.valence() != self.weight {
            return Err(Error::Invalid(format!(
                "graph {g} does not have valence {}",
                self.weight
            )));
        }
        let straight = straighten_packed([(pack(g), g.sign() as i128)])?;
        let mut out: IntVec = straight
            .into_iter()
            .map(|(p, c)| {
                self.basis_index
                    .get(&p)
                    .map(|&i| (i, c))
                    .ok_or_else(|| Error::Internal("straightened graph outside the basis".to_string()))
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// Sym^d coordinates of the product of degree-one vectors.
    pub fn product(&self, factors: &[IntVec]) -> Result<IntVec> {
        if factors.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: factors.len(),
            });
        }
        let mut acc: BTreeMap<Vec<usize>, i128> = BTreeMap::from([(Vec::new(), 1)]);
        for f in factors {
            let mut next: BTreeMap<Vec<usize>, i128> = BTreeMap::new();
            for (t, c) in &acc {
                for &(i, x) in f {
                    let mut t2 = t.clone();
                    let pos = t2.partition_point(|&y| y > i);
                    t2.insert(pos, i);
                    let prod = c.checked_mul(x).ok_or(Error::Overflow)?;
                    let slot = next.entry(t2).or_insert(0);
                    *slot = slot.checked_add(prod).ok_or(Error::Overflow)?;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        let mut out: IntVec = acc.into_iter().map(|(t, c)| (self.index[&t], c)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Product of a vector of `Sym^a` with one of `Sym^b`, landing in `self = Sym^(a+b)`.
    pub fn multiply(&self, left: &SymPower, a: &SparseVec, right: &SymPower, b: &SparseVec) -> SparseVec {
        debug_assert_eq!(left.degree + right.degree, self.degree);
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let mut t = left.monomials[*i].clone();
                t.extend_from_slice(&right.monomials[*j]);
                let k = self.index_of(&t).expect("product tuple");
                let v = x * y;
                let slot = acc.entry(k).or_insert_with(|| v.field().zero());
                *slot = &*slot + &v;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Action of `sigma` on the degree-one basis: column `i` is `sigma(B_i)`.
    pub fn action_matrix(&self, sigma: &Permutation) -> Result<Vec<IntVec>> {
        self.basis
            .par_iter()
            .map(|b| self.degree_one_coordinates(&b.apply_permutation(sigma)?))
            .collect()
    }

    /// Applies a degree-one action (from [`SymPower::action_matrix`]) to a Sym^d vector.
    pub fn act(&self, action: &[IntVec], v: &SparseVec) -> Result<SparseVec> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in v {
            let factors: Vec<IntVec> = self.monomials[*k].iter().map(|&i| action[i].clone()).collect();
            for (j, x) in self.product(&factors)? {
                let add = c * &c.field().from_i128(x);
                let slot = acc.entry(j).or_insert_with(|| c.field().zero());
                *slot = &*slot + &add;
            }
        }
        Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// The invariant of multidegree `d·w` a monomial maps to (superposition of its factors).
    pub fn monomial_graph(&self, k: usize) -> GraphMonomial {
        self.monomials[k]
            .iter()
            .fold(GraphMonomial::empty(self.n), |acc, &i| {
                acc.superpose(&self.basis[i]).expect("same vertex count")
            })
    }

    /// Columns of the multiplication map `Sym^d R_w -> R_{d·w}` in the
    /// non-crossing basis of the target, computed by straightening.
    pub fn multiplication_columns(&self) -> Result<(Vec<GraphMonomial>, Vec<IntVec>)> {
        let target = enumerate_noncrossing(self.n, &self.weight.scaled(self.degree));
        let row: HashMap<Packed, usize> = target.iter().enumerate().map(|(i, g)| (pack(g), i)).collect();
        let columns = (0..self.dim())
            .into_par_iter()
            .map(|k| {
                let g = self.monomial_graph(k);
                let straight = straighten_packed([(pack(&g), 1i128)])?;
                let mut col: IntVec = straight
                    .into_iter()
                    .map(|(p, c)| (row[&p], c))
                    .collect();
                col.sort_unstable();
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((target, columns))
    }

    /// Formal partial derivative with respect to basis coordinate `i`,
    /// landing in `lower = Sym^(d-1)`.
    pub fn partial(&self, lower: &SymPower, v: &SparseVec, i: usize) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in v {
            let t = &self.monomials[*k];
            let mult = t.iter().filter(|&&x| x == i).count();
            if mult == 0 {
                continue;
            }
            let mut rest = t.clone();
            let pos = rest.iter().position(|&x| x == i).unwrap();
            rest.remove(pos);
            let j = lower.index[&rest];
            let add = c * &c.field().from_i64(mult as i64);
            let slot = acc.entry(j).or_insert_with(|| c.field().zero());
            *slot = &*slot + &add;
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Reads coordinates back as a relation whose factors are basis graphs.
    pub fn relation_from_vector(&self, v: &SparseVec, field: FieldSpec) -> SymbolicRelation {
        let mut terms = BTreeMap::new();
        for (k, c) in v {
            let factors: Vec<GraphMonomial> = self.monomials[*k].iter().map(|&i| self.basis[i].clone()).collect();
            terms.insert(factors, c.clone());
        }
        SymbolicRelation {
            n: self.n,
            degree: self.degree,
            field,
            terms,
        }
    }

    /// Coordinates of a relation: each factor is straightened and the product expanded.
    pub fn vector_of(&self, rel: &SymbolicRelation) -> Result<SparseVec> {
        if rel.degree != self.degree || rel.n != self.n {
            return Err(Error::Invalid("relation does not live in this symmetric power".to_string()));
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (factors, c) in &rel.terms {
            let coords: Vec<IntVec> = factors
                .iter()
                .map(|g| self.degree_one_coordinates(g))
                .collect::<Result<_>>()?;
            for (k, x) in self.product(&coords)? {
                let add = c * &rel.field.from_i128(x);
                let slot = acc.entry(k).or_insert_with(|| rel.field.zero());
                *slot = &*slot + &add;
            }
        }
        Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }
}

/// Converts an integer vector into field scalars.
pub fn to_field(v: &IntVec, field: FieldSpec) -> SparseVec {
    v.iter()
        .map(|(i, c)| (*i, field.from_i128(*c)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// A polynomial of degree `d` in degree-one graph monomials.
///
/// Each term is a weakly decreasing list of unsigned canonical factors;
/// factor signs are folded into the coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicRelation {
    pub n: usize,
    pub degree: usize,
    pub field: FieldSpec,
    pub terms: BTreeMap<Vec<GraphMonomial>, Scalar>,
}

impl SymbolicRelation {
    pub fn zero(n: usize, degree: usize, field: FieldSpec) -> Self {
        SymbolicRelation {
            n,
            degree,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c · ∏ factors`.
    pub fn add_product(&mut self, c: &Scalar, factors: &[GraphMonomial]) -> Result<()> {
        if factors.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: factors.len(),
            });
        }
        if factors.iter().any(|g| g.n() != self.n) {
            return Err(Error::Invalid("factor on the wrong vertex count".to_string()));
        }
        let negative = factors.iter().filter(|g| g.sign() < 0).count() % 2 == 1;
        let c = if negative { -c } else { c.clone() };
        let mut key: Vec<GraphMonomial> = factors.iter().map(|g| g.unsigned()).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    /// A binomial `∏ lhs - ∏ rhs`.
    pub fn binomial(lhs: &[GraphMonomial], rhs: &[GraphMonomial], field: FieldSpec) -> Result<Self> {
        let n = lhs.first().map(|g| g.n()).unwrap_or(0);
        let mut r = Self::zero(n, lhs.len(), field);
        r.add_product(&field.one(), lhs)?;
        r.add_product(&field.from_i64(-1), rhs)?;
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Self> {
        let mut out = Self::zero(self.n, self.degree, self.field);
        for (factors, c) in &self.terms {
            let moved: Vec<GraphMonomial> = factors
                .iter()
                .map(|g| g.apply_permutation(sigma))
                .collect::<Result<_>>()?;
            out.add_product(c, &moved)?;
        }
        Ok(out)
    }

    /// The invariant the relation maps to: superpose each product, then straighten.
    pub fn image(&self) -> Result<GraphPolynomial> {
        let mut p = GraphPolynomial::zero(self.n, self.field);
        for (factors, c) in &self.terms {
            let g = factors
                .iter()
                .try_fold(GraphMonomial::empty(self.n), |acc, f| acc.superpose(f))?;
            p.add_term(&g, c)?;
        }
        let out = straighten_packed(p.terms().iter().map(|(g, c)| (pack(g), c.clone())))?;
        let mut result = GraphPolynomial::zero(self.n, self.field);
        for (edges, c) in out {
            result.add_term(&unpack(self.n, &edges, 1), &c)?;
        }
        Ok(result)
    }

    /// Exact check that the bracket expansion of the relation is zero.
    pub fn expands_to_zero(&self) -> Result<bool> {
        let products: Vec<GraphMonomial> = self
            .terms
            .keys()
            .map(|factors| {
                factors
                    .iter()
                    .try_fold(GraphMonomial::empty(self.n), |acc, f| acc.superpose(f))
            })
            .collect::<Result<_>>()?;
        let m = super::expand::ExpansionMatrix::build(&products)?;
        let v: SparseVec = self.terms.values().cloned().enumerate().collect();
        Ok(m.combination_vanishes(&v))
    }
}

impl fmt::Display for SymbolicRelation {
    /// `+1·[1-2 3-4][1-4 2-3] −1·[...][...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(factors, c)| {
                let body: String = factors
                    .iter()
                    .map(|g| format!("[{}]", g.to_string().split_once("; ").map(|x| x.1).unwrap_or("")))
                    .collect();
                format!("{}·{}", signed_coefficient(c), body)
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_indexing() {
        let s = SymPower::new(6, &ValenceVector::uniform(6, 1), 2);
        assert_eq!(s.basis().len(), 5);
        assert_eq!(s.dim(), 15);
        assert_eq!(s.index_of(&[1, 3]), s.index_of(&[3, 1]));
        let t = s.with_degree(3);
        assert_eq!(t.dim(), 35);
    }

    #[test]
    fn product_of_basis_vectors() {
        let s = SymPower::new(4, &ValenceVector::uniform(4, 1), 2);
        let e0: IntVec = vec![(0, 1)];
        let e1: IntVec = vec![(1, 2)];
        let p = s.product(&[e0.clone(), e1]).unwrap();
        assert_eq!(p, vec![(s.index_of(&[1, 0]).unwrap(), 2)]);
        let sq = s.product(&[e0.clone(), e0]).unwrap();
        assert_eq!(sq, vec![(s.index_of(&[0, 0]).unwrap(), 1)]);
    }

    #[test]
    fn partial_derivative_of_a_square() {
        let q = FieldSpec::Rationals;
        let s3 = SymPower::new(4, &ValenceVector::uniform(4, 1), 3);
        let s2 = s3.with_degree(2);
        // z0^2 z1 -> d/dz0 = 2 z0 z1
        let v = vec![(s3.index_of(&[0, 0, 1]).unwrap(), q.one())];
        let d = s3.partial(&s2, &v, 0);
        assert_eq!(d, vec![(s2.index_of(&[0, 1]).unwrap(), q.from_i64(2))]);
    }
}

use crate::error::{Error, Result};
use crate::exactfield::{kernel_basis, rank, FieldSpec, SparseMatrix};
use crate::graphalg::{GraphMonomial, ValenceVector};

use super::expand::ExpansionMatrix;
use super::space::{Mode, FULL_COEFFICIENT_LIMIT};
use super::sym::{to_field, IntVec, SparseVec, SymPower, SymbolicRelation};

/// Limits for kernel computations.
#[derive(Clone, Debug)]
pub struct KernelOptions {
    /// Largest accepted `rows × columns` of the multiplication matrix.
    pub cell_cap: usize,
    /// Re-check every kernel vector by exact bracket expansion.
    pub verify_by_expansion: bool,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            cell_cap: 50_000_000,
            verify_by_expansion: true,
        }
    }
}

/// The multiplication map `Sym^d R_w -> R_{d·w}` in integer form.
#[derive(Clone, Debug)]
pub struct MultiplicationMap {
    pub sym: SymPower,
    pub target: Vec<GraphMonomial>,
    /// One integer column per Sym^d monomial, in target-basis coordinates.
    pub columns: Vec<IntVec>,
}

impl MultiplicationMap {
    pub fn new(n: usize, w: &ValenceVector, d: usize, cell_cap: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::Invalid("degree must be at least 1".to_string()));
        }
        if w.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.n(),
            });
        }
        let sym = SymPower::new(n, w, d);
        let target_dim = super::space::noncrossing_count(n, &w.scaled(d));
        let cells = sym.dim().saturating_mul(target_dim);
        if cells > cell_cap {
            return Err(Error::CapExceeded(format!(
                "multiplication matrix {target_dim} x {} exceeds {cell_cap} cells",
                sym.dim()
            )));
        }
        let (target, columns) = sym.multiplication_columns()?;
        Ok(MultiplicationMap { sym, target, columns })
    }

    pub fn matrix(&self, field: FieldSpec) -> Result<SparseMatrix> {
        let cols: Vec<SparseVec> = self.columns.iter().map(|c| to_field(c, field)).collect();
        SparseMatrix::from_columns(self.target.len(), field, &cols)
    }

    /// Exact image of a Sym^d vector in target coordinates.
    pub fn apply(&self, v: &SparseVec, field: FieldSpec) -> SparseVec {
        let mut acc = vec![field.zero(); self.target.len()];
        for (k, c) in v {
            for (r, x) in &self.columns[*k] {
                acc[*r] = &acc[*r] + &(c * &field.from_i128(*x));
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Bracket expansions of every Sym^d monomial, when the coefficient space is small enough.
    pub fn expansions(&self) -> Result<Option<ExpansionMatrix>> {
        let target_valence = self.sym.weight().scaled(self.sym.degree());
        if target_valence.coefficient_count() > FULL_COEFFICIENT_LIMIT
            || Mode::auto(&target_valence) != Mode::FullCoefficients
        {
            return Ok(None);
        }
        let graphs: Vec<GraphMonomial> = (0..self.sym.dim()).map(|k| self.sym.monomial_graph(k)).collect();
        Ok(Some(ExpansionMatrix::build(&graphs)?))
    }
}

/// Basis of the relations of degree `d` among the degree-one generators `R_w`.
#[derive(Clone, Debug)]
pub struct RelationKernel {
    pub map: MultiplicationMap,
    pub field: FieldSpec,
    pub rank: usize,
    pub vectors: Vec<SparseVec>,
    /// Whether every vector was re-checked by bracket expansion.
    pub expansion_verified: bool,
}

impl RelationKernel {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn sym(&self) -> &SymPower {
        &self.map.sym
    }

    pub fn relations(&self) -> Vec<SymbolicRelation> {
        self.vectors
            .iter()
            .map(|v| self.map.sym.relation_from_vector(v, self.field))
            .collect()
    }
}

/// Kernel of `Sym^d R_w -> R_{d·w}` over `field`.
pub fn relation_kernel(n: usize, w: &ValenceVector, d: usize, field: FieldSpec) -> Result<RelationKernel> {
    relation_kernel_with(n, w, d, field, &KernelOptions::default())
}

pub fn relation_kernel_with(
    n: usize,
    w: &ValenceVector,
    d: usize,
    field: FieldSpec,
    opts: &KernelOptions,
) -> Result<RelationKernel> {
    if d < 2 {
        return Err(Error::Invalid("relations start in degree 2".to_string()));
    }
    let map = MultiplicationMap::new(n, w, d, opts.cell_cap)?;
    let m = map.matrix(field)?;
    let vectors: Vec<SparseVec> = kernel_basis(&m)
        .into_iter()
        .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let rank = map.sym.dim() - vectors.len();
    let mut expansion_verified = false;
    if opts.verify_by_expansion && !vectors.is_empty() {
        if let Some(e) = map.expansions()? {
            if let Some(bad) = vectors.iter().position(|v| !e.combination_vanishes(v)) {
                return Err(Error::Internal(format!(
                    "kernel vector {bad} does not expand to zero"
                )));
            }
            expansion_verified = true;
        }
    }
    Ok(RelationKernel {
        map,
        field,
        rank,
        vectors,
        expansion_verified,
    })
}

/// Rank of the multiplication matrix over `field` (no kernel basis).
pub fn multiplication_rank(map: &MultiplicationMap, field: FieldSpec) -> Result<usize> {
    Ok(rank(&map.matrix(field)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_points() {
        let q = FieldSpec::Rationals;
        let w = ValenceVector::uniform(6, 1);
        assert_eq!(relation_kernel(6, &w, 2, q).unwrap().dim(), 0);
        let k3 = relation_kernel(6, &w, 3, q).unwrap();
        assert_eq!(k3.dim(), 1);
        assert!(k3.expansion_verified);
        for r in k3.relations() {
            assert!(r.image().unwrap().is_zero());
            assert!(r.expands_to_zero().unwrap());
        }
    }

    #[test]
    fn five_points_in_degree_two() {
        let k = relation_kernel(5, &ValenceVector::uniform(5, 2), 2, FieldSpec::Rationals).unwrap();
        assert_eq!(k.sym().basis().len(), 6);
        assert_eq!(k.dim(), 5);
    }
}

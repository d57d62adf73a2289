use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactfield::{EchelonBasis, FieldSpec};
use crate::graphalg::{Permutation, ValenceVector};
use crate::invring::{relation_kernel_with, KernelOptions, RelationKernel, SparseVec, SymPower};

use super::skew::reduce_vector;

/// A subspace of `Sym^d` coordinates spanned by permuted copies of one relation.
#[derive(Clone, Debug)]
pub struct OrbitSpan {
    pub basis: EchelonBasis,
    /// Exact rational vectors `σ·rel`, each independent of the earlier ones over the working field.
    pub witnesses: Vec<(Permutation, SparseVec)>,
}

impl OrbitSpan {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }
}

/// Span of `{σ·rel : σ ∈ S_n}`, grown until closed under the generators
/// `(1 2)` and `(1 2 ... n)`.
///
/// Witness vectors are kept exact over Q; only the running span lives in `field`.
pub fn orbit_span(sym: &SymPower, rel: &SparseVec, field: FieldSpec) -> Result<OrbitSpan> {
    let n = sym.n();
    let mut basis = EchelonBasis::new(sym.dim(), field);
    let mut witnesses = Vec::new();
    if n < 2 {
        return Err(Error::Invalid("orbit spans need at least two points".to_string()));
    }
    let gens = [Permutation::transposition(n, 1, 2), Permutation::rotation(n)];
    let actions: Vec<_> = gens.iter().map(|g| sym.action_matrix(g)).collect::<Result<_>>()?;
    let mut queue = VecDeque::new();
    if basis.insert(&reduce_vector(rel, field)?)? {
        witnesses.push((Permutation::identity(n), rel.clone()));
        queue.push_back(0);
    }
    while let Some(idx) = queue.pop_front() {
        let (tau, v) = witnesses[idx].clone();
        for (g, act) in gens.iter().zip(&actions) {
            let w = sym.act(act, &v)?;
            if basis.insert(&reduce_vector(&w, field)?)? {
                witnesses.push((g.compose(&tau), w));
                queue.push_back(witnesses.len() - 1);
            }
        }
    }
    Ok(OrbitSpan { basis, witnesses })
}

/// Outcome of comparing degree-d relations with those generated by quadrics.
#[derive(Clone, Debug)]
pub struct GenerationVerdict {
    pub n: usize,
    pub degree: usize,
    pub field: FieldSpec,
    pub kernel2_dim: usize,
    pub kernel_dim: usize,
    /// Dimension of the span of quadric relations times degree-(d-2) monomials.
    pub generated_dim: usize,
    pub kernel: RelationKernel,
    pub generated: EchelonBasis,
}

impl GenerationVerdict {
    pub fn equal(&self) -> bool {
        self.generated_dim == self.kernel_dim
    }

    pub fn defect(&self) -> usize {
        self.kernel_dim - self.generated_dim
    }
}

/// Compares `ker(Sym^d R_1 -> R_d)` with the ideal generated by its degree-2 part.
pub fn generation_check(n: usize, d: usize, field: FieldSpec) -> Result<GenerationVerdict> {
    generation_check_with(n, d, field, &KernelOptions::default())
}

pub fn generation_check_with(n: usize, d: usize, field: FieldSpec, opts: &KernelOptions) -> Result<GenerationVerdict> {
    if d < 3 {
        return Err(Error::Invalid("generation is checked from degree 3".to_string()));
    }
    let w = ValenceVector::uniform(n, 1);
    let k2 = relation_kernel_with(n, &w, 2, field, opts)?;
    let kd = relation_kernel_with(n, &w, d, field, opts)?;
    let symd = kd.sym().clone();
    let sym2 = k2.sym().clone();
    let rest = symd.with_degree(d - 2);
    let mut generated = EchelonBasis::new(symd.dim(), field);
    for q in &k2.vectors {
        for m in 0..rest.dim() {
            let mono = vec![(m, field.one())];
            let prod = symd.multiply(&sym2, q, &rest, &mono);
            if !kd.map.apply(&prod, field).is_empty() {
                return Err(Error::Internal("a multiple of a quadric relation is not a relation".to_string()));
            }
            generated.insert(&prod)?;
        }
    }
    Ok(GenerationVerdict {
        n,
        degree: d,
        field,
        kernel2_dim: k2.dim(),
        kernel_dim: kd.dim(),
        generated_dim: generated.rank(),
        kernel: kd,
        generated,
    })
}

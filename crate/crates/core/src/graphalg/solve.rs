use std::collections::HashMap;

use super::{enumerate_noncrossing, GraphPolynomial};
use crate::error::{Error, Result};
use crate::exactfield::{rref, SparseMatrix};
use crate::invring::bracket_expand;

/// Rewrites `p` in the non-crossing basis by solving a linear system on bracket
/// expansions, independently of the rewriting engine in [`super::straighten`].
pub fn straighten_by_solve(p: &GraphPolynomial) -> Result<GraphPolynomial> {
    let Some(valence) = p.valence() else {
        return Ok(p.clone());
    };
    let field = p.field();
    let basis = enumerate_noncrossing(p.n(), &valence);
    let mut rows: HashMap<u128, usize> = HashMap::new();
    let mut triplets = Vec::new();
    let mut push = |key: u128, col: usize, value, triplets: &mut Vec<_>| {
        let next = rows.len();
        let r = *rows.entry(key).or_insert(next);
        triplets.push((r, col, value));
    };
    for (j, g) in basis.iter().enumerate() {
        for (k, c) in bracket_expand(g)?.terms {
            push(k, j, field.from_i128(c), &mut triplets);
        }
    }
    // the right-hand side is the last column of the augmented system
    let rhs = basis.len();
    for (g, c) in p.terms() {
        for (k, e) in bracket_expand(g)?.terms {
            push(k, rhs, c * &field.from_i128(e), &mut triplets);
        }
    }
    let augmented = SparseMatrix::from_triplets(rows.len(), rhs + 1, field, triplets)?;
    let reduced = rref(&augmented);
    if reduced.pivots.last() == Some(&rhs) {
        return Err(Error::Internal("non-crossing graphs do not span the input".to_string()));
    }
    if reduced.rank != basis.len() && reduced.rank != 0 {
        return Err(Error::Internal("non-crossing graphs are dependent".to_string()));
    }
    let mut out = GraphPolynomial::zero(p.n(), field);
    for (i, &col) in reduced.pivots.iter().enumerate() {
        if let Some(c) = reduced.matrix.get(i, rhs) {
            out.add_term(&basis[col], c)?;
        }
    }
    Ok(out)
}

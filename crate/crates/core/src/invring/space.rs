use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{kernel_basis, rank, FieldSpec, Scalar, SparseMatrix};
use crate::graphalg::{enumerate_noncrossing, enumerate_spanning, GraphMonomial, GraphPolynomial, ValenceVector};

use super::dense::DenseBasis;
use super::expand::{eval_at, eval_residue, sample_points, sample_residues, ExpansionMatrix};
use super::kempe::KEMPE_PRIME;
use super::sym::SparseVec;

/// Coefficient spaces up to this size are used directly.
pub const FULL_COEFFICIENT_LIMIT: u128 = 1 << 20;

/// Extra sample points beyond the dimension bound.
pub const SAMPLE_MARGIN: usize = 32;

/// Default cap on spanning-set enumeration.
pub const SPANNING_CAP: usize = 2_000_000;

/// How invariants are turned into coordinate vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact coefficients of the bihomogeneous form.
    FullCoefficients,
    /// Values at seeded random points.
    SampledEvaluations,
}

impl Mode {
    pub fn auto(v: &ValenceVector) -> Mode {
        if v.coefficient_count() <= FULL_COEFFICIENT_LIMIT && v.n() <= super::expand::MAX_EXPANSION_VERTICES {
            Mode::FullCoefficients
        } else {
            Mode::SampledEvaluations
        }
    }
}

/// The graded piece `R_v` with a coordinatization and its non-crossing basis.
#[derive(Clone, Debug)]
pub struct MultidegreeSpace {
    pub n: usize,
    pub valence: ValenceVector,
    pub field: FieldSpec,
    pub mode: Mode,
    /// Sample points, empty in coefficient mode.
    pub points: Vec<Vec<(Scalar, Scalar)>>,
    pub basis: Vec<GraphMonomial>,
}

impl MultidegreeSpace {
    pub fn new(n: usize, valence: &ValenceVector, field: FieldSpec, mode: Option<Mode>, seed: u64) -> Result<Self> {
        if valence.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: valence.n(),
            });
        }
        let mode = mode.unwrap_or_else(|| Mode::auto(valence));
        let basis = enumerate_noncrossing(n, valence);
        let points = match mode {
            Mode::FullCoefficients => Vec::new(),
            Mode::SampledEvaluations => sample_points(n, basis.len() + SAMPLE_MARGIN, field, seed)?,
        };
        Ok(MultidegreeSpace {
            n,
            valence: valence.clone(),
            field,
            mode,
            points,
            basis,
        })
    }

    /// Coordinate matrix whose columns are the given invariants, with all-zero
    /// coefficient rows dropped.
    pub fn coordinate_matrix(&self, graphs: &[GraphMonomial]) -> Result<SparseMatrix> {
        for g in graphs {
            if g.valence() != self.valence {
                return Err(Error::Invalid(format!("{g} does not lie in R_{}", self.valence)));
            }
        }
        match self.mode {
            Mode::FullCoefficients => {
                let e = ExpansionMatrix::build(graphs)?;
                let cols: Vec<SparseVec> = e
                    .columns
                    .iter()
                    .map(|c| c.iter().map(|(r, x)| (*r as usize, self.field.from_i128(*x))).collect())
                    .collect();
                let cols: Vec<SparseVec> = cols
                    .into_iter()
                    .map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect())
                    .collect();
                SparseMatrix::from_columns(e.keys.len(), self.field, &cols)
            }
            Mode::SampledEvaluations => {
                let cols: Vec<Vec<Scalar>> = graphs
                    .iter()
                    .map(|g| eval_at(g, &self.points))
                    .collect::<Result<_>>()?;
                SparseMatrix::from_dense_columns(self.points.len(), self.field, &cols)
            }
        }
    }
}

/// Dimension of `R_v`: the rank of the coordinates of the full spanning set.
pub fn graded_dimension(n: usize, v: &ValenceVector, field: FieldSpec) -> Result<usize> {
    graded_dimension_with(n, v, field, None, 0, SPANNING_CAP)
}

pub fn graded_dimension_with(
    n: usize,
    v: &ValenceVector,
    field: FieldSpec,
    mode: Option<Mode>,
    seed: u64,
    cap: usize,
) -> Result<usize> {
    let spanning = enumerate_spanning(n, v, cap);
    if spanning.truncated {
        return Err(Error::Truncated(cap));
    }
    if spanning.graphs.is_empty() {
        return Ok(0);
    }
    let basis = enumerate_noncrossing(n, v);
    if mode.is_none() && sampled_rank_reaches(n, &basis, &spanning.graphs, field, seed) {
        return Ok(basis.len());
    }
    let space = MultidegreeSpace::new(n, v, field, mode, seed)?;
    Ok(rank(&space.coordinate_matrix(&spanning.graphs)?))
}

/// Cheap certificate that the spanning graphs have rank `|basis|`.
///
/// Straightening writes every spanning graph as an integer combination of the
/// non-crossing ones, so the rank never exceeds `|basis|` in any
/// characteristic. Evaluations at points modulo a large prime can only lose
/// rank, so reaching `|basis|` there settles the question. Non-crossing graphs
/// go first so that the generic case stops after `|basis|` insertions.
fn sampled_rank_reaches(
    n: usize,
    basis: &[GraphMonomial],
    spanning: &[GraphMonomial],
    field: FieldSpec,
    seed: u64,
) -> bool {
    let p = match field {
        FieldSpec::Rationals => KEMPE_PRIME,
        FieldSpec::PrimeField(p) if p >= 1 << 26 => p,
        FieldSpec::PrimeField(_) => return false,
    };
    let goal = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_residues(n, goal + SAMPLE_MARGIN, p, &mut rng);
    let mut dense = DenseBasis::new(p);
    const CHUNK: usize = 4096;
    for chunk in basis.chunks(CHUNK).chain(spanning.chunks(CHUNK)) {
        let values: Vec<Vec<u64>> = chunk
            .par_iter()
            .map(|g| points.iter().map(|xs| eval_residue(g, xs, p)).collect())
            .collect();
        for v in values {
            dense.insert(v);
            if dense.rank() == goal {
                return true;
            }
        }
    }
    false
}

/// Linear relations among the spanning monomials of valence `v`.
pub fn linear_relation_space(n: usize, v: &ValenceVector, field: FieldSpec) -> Result<Vec<GraphPolynomial>> {
    let spanning = enumerate_spanning(n, v, SPANNING_CAP);
    if spanning.truncated {
        return Err(Error::Truncated(SPANNING_CAP));
    }
    if spanning.graphs.is_empty() {
        return Ok(Vec::new());
    }
    let space = MultidegreeSpace::new(n, v, field, Some(Mode::FullCoefficients), 0)?;
    let m = space.coordinate_matrix(&spanning.graphs)?;
    kernel_basis(&m)
        .into_iter()
        .map(|k| {
            GraphPolynomial::from_terms(
                n,
                field,
                spanning
                    .graphs
                    .iter()
                    .zip(k)
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect()
}

/// Number of non-crossing graphs of valence `v`.
pub fn noncrossing_count(n: usize, v: &ValenceVector) -> usize {
    enumerate_noncrossing(n, v).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphalg::straighten;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(graded_dimension(6, &ValenceVector::uniform(6, 1), q()).unwrap(), 5);
        assert_eq!(graded_dimension(5, &ValenceVector::uniform(5, 1), q()).unwrap(), 0);
        assert_eq!(graded_dimension(5, &ValenceVector::uniform(5, 2), q()).unwrap(), 6);
        assert_eq!(graded_dimension(2, &ValenceVector::uniform(2, 1), q()).unwrap(), 1);
    }

    #[test]
    fn sampled_mode_agrees() {
        let v = ValenceVector::uniform(6, 2);
        let full = graded_dimension_with(6, &v, q(), Some(Mode::FullCoefficients), 0, SPANNING_CAP).unwrap();
        let fp = FieldSpec::prime(2_147_483_647).unwrap();
        let sampled = graded_dimension_with(6, &v, fp, Some(Mode::SampledEvaluations), 3, SPANNING_CAP).unwrap();
        assert_eq!(full, 15);
        assert_eq!(sampled, 15);
    }

    #[test]
    fn linear_relations() {
        let four = linear_relation_space(4, &ValenceVector::uniform(4, 1), q()).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].len(), 3);
        assert!(four[0].terms().values().all(|c| *c == q().one() || *c == q().from_i64(-1)));
        assert!(linear_relation_space(2, &ValenceVector::uniform(2, 1), q()).unwrap().is_empty());
        let six = linear_relation_space(6, &ValenceVector::uniform(6, 1), q()).unwrap();
        assert_eq!(six.len(), 10);
        for r in &six {
            assert!(straighten(r).unwrap().is_zero());
        }
    }
}

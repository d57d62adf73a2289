use num_rational::BigRational;

use super::elim::{rref_auto, Echelon, Incremental, ModArith, RatArith, SparseRow};
use super::modular::rref_multimodular;
use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Rational matrices with more cells than this go through the multimodular path.
const DIRECT_RATIONAL_CELLS: usize = 20_000;

/// A sparse matrix over an exact field, stored row-major.
///
/// Each row is sorted by column and holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    field: FieldSpec,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize, field: FieldSpec) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            field,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Builds a matrix from `(row, col, value)` triples. Zeros are dropped;
    /// repeated positions are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        field: FieldSpec,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            rows[r].push((c, v));
        }
        for row in rows.iter_mut() {
            *row = normalize_row(std::mem::take(row));
        }
        Ok(SparseMatrix {
            nrows,
            ncols,
            field,
            rows,
        })
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(nrows: usize, field: FieldSpec, columns: &[Vec<(usize, Scalar)>]) -> Result<Self> {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())));
        Self::from_triplets(nrows, columns.len(), field, trip)
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_dense_columns(nrows: usize, field: FieldSpec, columns: &[Vec<Scalar>]) -> Result<Self> {
        for col in columns {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch {
                    expected: nrows,
                    found: col.len(),
                });
            }
        }
        let sparse: Vec<Vec<(usize, Scalar)>> = columns
            .iter()
            .map(|c| c.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self::from_columns(nrows, field, &sparse)
    }

    /// Convenience constructor from small integer rows.
    pub fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let trip = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, field.from_i64(*v)))
        });
        Self::from_triplets(rows.len(), ncols, field, trip).expect("well-formed integer rows")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        let row = self.rows.get(r)?;
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| ((r, *c), v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for ((r, c), v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            field: self.field,
            rows,
        }
    }

    /// Column `c` as a dense vector.
    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.nrows)
            .map(|r| self.get(r, c).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hconcat(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.nrows != other.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: other.nrows,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.ncols, v.clone())));
                row
            })
            .collect();
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            field: self.field,
            rows,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(self.field.zero(), |acc, (c, x)| &acc + &(x * &v[*c]))
            })
            .collect())
    }
}

fn normalize_row(mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn to_rational_rows(m: &SparseMatrix) -> Vec<SparseRow<BigRational>> {
    m.rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, v)| (*c, v.as_rational().expect("rational entry").clone()))
                .collect()
        })
        .collect()
}

fn to_residue_rows(m: &SparseMatrix) -> Vec<SparseRow<u64>> {
    m.rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, v)| match v {
                    Scalar::Residue { value, .. } => (*c, *value),
                    Scalar::Rational(_) => unreachable!("residue matrix holds rationals"),
                })
                .collect()
        })
        .collect()
}

fn echelon_to_rref<E>(m: &SparseMatrix, ech: Echelon<E>, lift: impl Fn(E) -> Scalar) -> Rref {
    let rank = ech.pivots.len();
    let mut rows: Vec<Vec<(usize, Scalar)>> = ech
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, lift(v))).collect())
        .collect();
    rows.resize(m.nrows, Vec::new());
    Rref {
        matrix: SparseMatrix {
            nrows: m.nrows,
            ncols: m.ncols,
            field: m.field,
            rows,
        },
        pivots: ech.pivots,
        rank,
    }
}

/// Reduced row-echelon form over the matrix's field.
///
/// Small rational matrices are eliminated directly; larger ones use the
/// certified multimodular path, which yields the same (unique) reduced form.
pub fn rref(m: &SparseMatrix) -> Rref {
    match m.field {
        FieldSpec::Rationals => {
            let rows = to_rational_rows(m);
            let ech = if m.nrows.saturating_mul(m.ncols) <= DIRECT_RATIONAL_CELLS {
                rref_auto(&RatArith, rows, m.ncols)
            } else {
                rref_multimodular(&rows, m.ncols).expect("multimodular elimination converges")
            };
            echelon_to_rref(m, ech, Scalar::Rational)
        }
        FieldSpec::PrimeField(p) => {
            let ech = rref_auto(&ModArith { p }, to_residue_rows(m), m.ncols);
            echelon_to_rref(m, ech, |value| Scalar::Residue { value, modulus: p })
        }
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    // rank is transpose-invariant; eliminate along the shorter side
    if m.field == FieldSpec::Rationals && m.nrows > m.ncols {
        return rref(&m.transpose()).rank;
    }
    rref(m).rank
}

/// Basis of the right null space, one dense vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let r = rref(m);
    let mut is_pivot = vec![false; m.ncols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    (0..m.ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![m.field.zero(); m.ncols];
            v[f] = m.field.one();
            for (i, &pc) in r.pivots.iter().enumerate() {
                if let Some(x) = r.matrix.get(i, f) {
                    v[pc] = -x;
                }
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the column span of `columns`.
pub fn span_contains(columns: &SparseMatrix, v: &[Scalar]) -> Result<bool> {
    if v.len() != columns.nrows {
        return Err(Error::DimensionMismatch {
            expected: columns.nrows,
            found: v.len(),
        });
    }
    let vm = SparseMatrix::from_dense_columns(columns.nrows, columns.field, &[v.to_vec()])?;
    let aug = columns.hconcat(&vm)?;
    Ok(rank(columns) == rank(&aug))
}

/// Whether the column spans of `a` and `b` coincide.
pub fn subspace_equal(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool> {
    let ab = a.hconcat(b)?;
    let rab = rank(&ab);
    Ok(rank(a) == rab && rank(b) == rab)
}

/// A subspace of `F^dim` grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    field: FieldSpec,
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Rational(Incremental<BigRational>),
    Residue(Incremental<u64>, ModArith),
}

impl EchelonBasis {
    pub fn new(dim: usize, field: FieldSpec) -> Self {
        let inner = match field {
            FieldSpec::Rationals => Inner::Rational(Incremental::new()),
            FieldSpec::PrimeField(p) => Inner::Residue(Incremental::new(), ModArith { p }),
        };
        EchelonBasis { dim, field, inner }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Dimension of the span so far.
    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Rational(b) => b.dim(),
            Inner::Residue(b, _) => b.dim(),
        }
    }

    fn check(&self, v: &[(usize, Scalar)]) -> Result<()> {
        for (c, x) in v {
            if *c >= self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: c + 1,
                });
            }
            if x.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(())
    }

    /// Inserts a sparse vector (sorted or not); returns whether the span grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Result<bool> {
        self.check(v)?;
        let v = normalize_row(v.to_vec());
        Ok(match &mut self.inner {
            Inner::Rational(b) => b.insert(&RatArith, rational_row(&v)),
            Inner::Residue(b, a) => {
                let a = *a;
                b.insert(&a, residue_row(&v))
            }
        })
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> Result<bool> {
        self.check(v)?;
        let v = normalize_row(v.to_vec());
        Ok(match &self.inner {
            Inner::Rational(b) => b.reduce(&RatArith, rational_row(&v)).is_empty(),
            Inner::Residue(b, a) => b.reduce(a, residue_row(&v)).is_empty(),
        })
    }

    /// The reduced basis rows, sorted by pivot column.
    pub fn basis(&self) -> Vec<Vec<(usize, Scalar)>> {
        match &self.inner {
            Inner::Rational(b) => b
                .rows
                .values()
                .map(|r| r.iter().map(|(c, v)| (*c, Scalar::Rational(v.clone()))).collect())
                .collect(),
            Inner::Residue(b, a) => b
                .rows
                .values()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, Scalar::Residue { value: *v, modulus: a.p }))
                        .collect()
                })
                .collect(),
        }
    }
}

fn rational_row(v: &[(usize, Scalar)]) -> SparseRow<BigRational> {
    v.iter()
        .map(|(c, x)| (*c, x.as_rational().unwrap().clone()))
        .collect()
}

fn residue_row(v: &[(usize, Scalar)]) -> SparseRow<u64> {
    v.iter()
        .map(|(c, x)| match x {
            Scalar::Residue { value, .. } => (*c, *value),
            _ => unreachable!(),
        })
        .collect()
}

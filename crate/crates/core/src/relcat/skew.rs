use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::graphalg::{pack, unpack, GraphMonomial, Packed, Permutation, ValenceVector};
use crate::invring::{to_field, SparseVec, SymPower, SymbolicRelation};

/// Largest `n` for which the alternating sum runs over all of `S_n`.
pub const MAX_SKEW_N: usize = 10;

/// `Σ_σ sgn(σ) (σΓ)^3` in `Sym^3 R_1` coordinates.
///
/// The sum over `S_n` is first collected by the matching `σΓ` it produces;
/// each distinct matching is then straightened once and cubed.
pub fn skew_cubic_vector(sym3: &SymPower, gamma: &GraphMonomial) -> Result<SparseVec> {
    let n = gamma.n();
    if !gamma.is_perfect_matching() || n % 2 == 1 {
        return Err(Error::Invalid(format!("{gamma} is not a perfect matching")));
    }
    if n > MAX_SKEW_N {
        return Err(Error::CapExceeded(format!("alternating sums are limited to n <= {MAX_SKEW_N}")));
    }
    if sym3.degree() != 3 || sym3.weight() != &ValenceVector::uniform(n, 1) {
        return Err(Error::Invalid("expected Sym^3 of the degree-one piece".to_string()));
    }
    let mut by_matching: HashMap<Packed, i128> = HashMap::new();
    for (sigma, sign) in Permutation::all_with_sign(n) {
        let m = gamma.apply_permutation(&sigma)?;
        // the cube of a reoriented matching carries the orientation sign cubed
        *by_matching.entry(pack(&m)).or_insert(0) += (sign * m.sign() as i32) as i128;
    }
    let mut entries: Vec<(Packed, i128)> = by_matching.into_iter().filter(|(_, c)| *c != 0).collect();
    entries.sort_unstable();
    let mut acc: HashMap<usize, i128> = HashMap::new();
    for (p, c) in entries {
        let coords = sym3.degree_one_coordinates(&unpack(n, &p, 1))?;
        for (k, x) in sym3.product(&[coords.clone(), coords.clone(), coords])? {
            let v = acc.entry(k).or_insert(0);
            *v = v
                .checked_add(x.checked_mul(c).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
    }
    let mut out: Vec<(usize, i128)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort_unstable();
    Ok(to_field(&out, FieldSpec::Rationals))
}

/// The alternating symmetrization of `Γ^3` as a relation on the non-crossing basis.
pub fn skew_cubic(n: usize, gamma: &GraphMonomial) -> Result<SymbolicRelation> {
    if gamma.n() != n {
        return Err(Error::VertexCountMismatch(n, gamma.n()));
    }
    let sym3 = SymPower::new(n, &ValenceVector::uniform(n, 1), 3);
    let v = skew_cubic_vector(&sym3, gamma)?;
    Ok(sym3.relation_from_vector(&v, FieldSpec::Rationals))
}

/// Scales a rational vector to coprime integers (first nonzero entry kept positive).
pub fn primitive_part(v: &SparseVec) -> SparseVec {
    let Some(first) = v.first() else {
        return Vec::new();
    };
    let rats: Vec<&BigRational> = v.iter().map(|(_, c)| c.as_rational().expect("rational vector")).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if first.1.as_rational().map(|r| r < &BigRational::zero()).unwrap_or(false) {
        g = -g;
    }
    v.iter()
        .zip(ints)
        .map(|((k, _), x)| (*k, Scalar::Rational(BigRational::from_integer(x / &g))))
        .collect()
}

/// Maps a rational vector into `field`, dropping entries that vanish.
pub fn reduce_vector(v: &SparseVec, field: FieldSpec) -> Result<SparseVec> {
    Ok(v
        .iter()
        .map(|(k, c)| Ok((*k, field.convert(c)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Formal partials of a cubic with respect to each basis coordinate.
pub fn partial_vectors(sym3: &SymPower, cubic: &SparseVec) -> Vec<SparseVec> {
    let sym2 = sym3.with_degree(2);
    (0..sym3.basis().len())
        .map(|i| sym3.partial(&sym2, cubic, i))
        .collect()
}

/// Partials taken in the basis `σ(B)`, written back in the basis `B`.
///
/// If `F = Σ c'_α (σB)^α` then `c'` are the coordinates of `σ⁻¹F`, and the
/// partial in direction `σB_i` is `σ(∂_i σ⁻¹F)`.
pub fn partial_vectors_in_basis(sym3: &SymPower, cubic: &SparseVec, sigma: &Permutation) -> Result<Vec<SparseVec>> {
    let sym2 = sym3.with_degree(2);
    let inv = sym3.action_matrix(&sigma.inverse())?;
    let fwd = sym3.action_matrix(sigma)?;
    let pulled = sym3.act(&inv, cubic)?;
    (0..sym3.basis().len())
        .map(|i| sym2.act(&fwd, &sym3.partial(&sym2, &pulled, i)))
        .collect()
}

/// The partials of a cubic relation, as quadric relations.
pub fn partials(cubic: &SymbolicRelation) -> Result<Vec<SymbolicRelation>> {
    if cubic.degree != 3 {
        return Err(Error::Invalid(format!("expected a cubic, got degree {}", cubic.degree)));
    }
    let w = cubic
        .terms
        .keys()
        .next()
        .map(|f| f[0].valence())
        .unwrap_or_else(|| ValenceVector::uniform(cubic.n, 1));
    let sym3 = SymPower::new(cubic.n, &w, 3);
    let sym2 = sym3.with_degree(2);
    let v = sym3.vector_of(cubic)?;
    Ok(partial_vectors(&sym3, &v)
        .iter()
        .map(|p| sym2.relation_from_vector(p, cubic.field))
        .collect())
}

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::graphalg::{GraphMonomial, Permutation};
use crate::invring::SymbolicRelation;

/// The named families of relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogName {
    SignRelation,
    Plucker,
    ExtendedPlucker,
    SimpleQuadric,
    ExtendedSimpleQuadric,
    DelPezzoQuadric,
    SegreBinomialCubic,
    SkewCubic,
    SkewCubicPartial,
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CatalogName::SignRelation => "sign-relation",
            CatalogName::Plucker => "plucker",
            CatalogName::ExtendedPlucker => "extended-plucker",
            CatalogName::SimpleQuadric => "simple-quadric",
            CatalogName::ExtendedSimpleQuadric => "extended-simple-quadric",
            CatalogName::DelPezzoQuadric => "del-pezzo-quadric",
            CatalogName::SegreBinomialCubic => "segre-binomial-cubic",
            CatalogName::SkewCubic => "skew-cubic",
            CatalogName::SkewCubicPartial => "skew-cubic-partial",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub relation: SymbolicRelation,
    pub note: String,
}

impl fmt::Display for CatalogEntry {
    /// `name | n | degree | terms`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {}",
            self.name, self.relation.n, self.relation.degree, self.relation
        )
    }
}

pub(crate) fn graph(n: usize, edges: &[(usize, usize)]) -> GraphMonomial {
    GraphMonomial::normalize(n, edges).expect("hard-coded graph is valid")
}

/// `[ab] + [ba] = 0`; after sign folding the relation is identically zero.
pub fn sign_relation() -> SymbolicRelation {
    let q = FieldSpec::Rationals;
    let mut r = SymbolicRelation::zero(2, 1, q);
    r.add_product(&q.one(), &[graph(2, &[(1, 2)])]).unwrap();
    r.add_product(&q.one(), &[graph(2, &[(2, 1)])]).unwrap();
    r
}

/// The three-term relation `[12][34] - [13][24] + [14][23] = 0` on four points.
pub fn plucker_relation() -> SymbolicRelation {
    let q = FieldSpec::Rationals;
    let mut r = SymbolicRelation::zero(4, 1, q);
    r.add_product(&q.one(), &[graph(4, &[(1, 2), (3, 4)])]).unwrap();
    r.add_product(&q.from_i64(-1), &[graph(4, &[(1, 3), (2, 4)])]).unwrap();
    r.add_product(&q.one(), &[graph(4, &[(1, 4), (2, 3)])]).unwrap();
    r
}

/// The four matchings of the default simple quadric on eight points.
pub fn simple_quadric_factors() -> [GraphMonomial; 4] {
    [
        graph(8, &[(1, 2), (3, 4), (5, 6), (7, 8)]),
        graph(8, &[(1, 4), (2, 3), (5, 8), (6, 7)]),
        graph(8, &[(1, 2), (3, 4), (5, 8), (6, 7)]),
        graph(8, &[(1, 4), (2, 3), (5, 6), (7, 8)]),
    ]
}

/// `Γ1 Γ2 - Γ3 Γ4`: two ways of splitting one 4-regular multigraph into matchings.
pub fn simple_quadric() -> SymbolicRelation {
    let [a, b, c, d] = simple_quadric_factors();
    SymbolicRelation::binomial(&[a, b], &[c, d], FieldSpec::Rationals).unwrap()
}

/// Adds the same edges on new vertices `n+1..` to every factor.
pub fn extend_relation(rel: &SymbolicRelation, extra: &GraphMonomial) -> Result<SymbolicRelation> {
    let n = rel.n;
    let n2 = extra.n();
    if n2 <= n {
        return Err(Error::Invalid("extension must add vertices".to_string()));
    }
    if extra.edges().iter().any(|e| e.tail <= n) {
        return Err(Error::Invalid(format!("extra edges must avoid vertices 1..={n}")));
    }
    if extra.valence().0[n..].contains(&0) {
        return Err(Error::Invalid(format!("extra edges must cover vertices {}..={n2}", n + 1)));
    }
    let mut out = SymbolicRelation::zero(n2, rel.degree, rel.field);
    for (factors, c) in &rel.terms {
        let lifted: Vec<GraphMonomial> = factors
            .iter()
            .map(|g| {
                let raw: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
                graph(n2, &raw).superpose(extra)
            })
            .collect::<Result<_>>()?;
        out.add_product(c, &lifted)?;
    }
    Ok(out)
}

/// The base binomial among degree-(2,2,2,2,2) generators on five points.
pub fn del_pezzo_base() -> SymbolicRelation {
    let g1 = graph(5, &[(1, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
    let g2 = graph(5, &[(1, 5), (1, 5), (2, 3), (2, 4), (3, 4)]);
    let g3 = graph(5, &[(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
    let g4 = graph(5, &[(1, 2), (1, 5), (2, 4), (3, 4), (3, 5)]);
    SymbolicRelation::binomial(&[g1, g2], &[g3, g4], FieldSpec::Rationals).unwrap()
}

/// The five rotations of [`del_pezzo_base`] under `i -> i + 1 (mod 5)`.
pub fn del_pezzo_quadrics() -> Vec<SymbolicRelation> {
    let rot = Permutation::rotation(5);
    let mut out = vec![del_pezzo_base()];
    for _ in 1..5 {
        let next = out.last().unwrap().apply_permutation(&rot).unwrap();
        out.push(next);
    }
    out
}

/// `Γ1 Γ2 Γ3 - Γ4 Γ5 Γ6` for six points, both sides superposing to the same 3-regular graph.
pub fn segre_binomial_cubic() -> SymbolicRelation {
    let lhs = [
        graph(6, &[(1, 2), (3, 6), (4, 5)]),
        graph(6, &[(1, 4), (2, 3), (5, 6)]),
        graph(6, &[(1, 6), (2, 5), (3, 4)]),
    ];
    let rhs = [
        graph(6, &[(1, 4), (2, 5), (3, 6)]),
        graph(6, &[(1, 2), (3, 4), (5, 6)]),
        graph(6, &[(1, 6), (2, 3), (4, 5)]),
    ];
    SymbolicRelation::binomial(&lhs, &rhs, FieldSpec::Rationals).unwrap()
}

/// Superposition of each side of a binomial, or `None` for other shapes.
pub fn binomial_sides(rel: &SymbolicRelation) -> Option<(GraphMonomial, GraphMonomial)> {
    if rel.terms.len() != 2 {
        return None;
    }
    let mut sides = rel.terms.keys().map(|factors| {
        factors
            .iter()
            .try_fold(GraphMonomial::empty(rel.n), |acc, g| acc.superpose(g))
            .ok()
    });
    Some((sides.next()??.unsigned(), sides.next()??.unsigned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_have_equal_superpositions() {
        for rel in [simple_quadric(), del_pezzo_base(), segre_binomial_cubic()] {
            let (a, b) = binomial_sides(&rel).unwrap();
            assert_eq!(a, b);
            assert!(rel.expands_to_zero().unwrap());
        }
    }

    #[test]
    fn sign_relation_folds_away() {
        assert!(sign_relation().is_zero());
        assert!(plucker_relation().expands_to_zero().unwrap());
    }

    #[test]
    fn rotations_cycle() {
        let rots = del_pezzo_quadrics();
        assert_eq!(rots.len(), 5);
        let back = rots[4].apply_permutation(&Permutation::rotation(5)).unwrap();
        assert_eq!(back, rots[0]);
    }

    #[test]
    fn extension() {
        let extra = graph(6, &[(5, 6)]);
        let ext = extend_relation(&plucker_relation(), &extra).unwrap();
        assert_eq!(ext.n, 6);
        assert!(ext.terms.keys().all(|f| f[0].edges().iter().any(|e| (e.tail, e.head) == (5, 6))));
        assert!(ext.expands_to_zero().unwrap());
        assert!(extend_relation(&plucker_relation(), &graph(6, &[(4, 5)])).is_err());
        let twelve = extend_relation(&simple_quadric(), &graph(12, &[(9, 10), (11, 12)])).unwrap();
        let (a, b) = binomial_sides(&twelve).unwrap();
        assert_eq!(a, b);
    }
}

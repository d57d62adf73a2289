//! Plücker straightening into the non-crossing basis.
//!
//! For `a < c < b < d` the three-term identity reads
//! `[ab][cd] = [ac][bd] + [ad][cb]` with every edge on the right canonical, so a
//! rewrite never changes coefficients. Termination: the disjoint term shortens
//! the total chord length `L = Σ (head - tail)`, the nested term keeps `L` and
//! raises `S = Σ (head - tail)^2`. Monomials are queued by `(L, -S)` and the
//! largest is processed first, so each monomial is visited at most once.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::{crosses, Edge, GraphMonomial};
use super::polynomial::GraphPolynomial;
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

/// Hard bound on the number of rewrites in one straightening call.
pub const STEP_LIMIT: usize = 10_000_000;

/// Edges packed as byte pairs for the hot loop.
pub(crate) type Packed = Vec<[u8; 2]>;

pub(crate) fn pack(g: &GraphMonomial) -> Packed {
    g.edges()
        .iter()
        .map(|e| [e.tail as u8, e.head as u8])
        .collect()
}

pub(crate) fn unpack(n: usize, p: &[[u8; 2]], sign: i8) -> GraphMonomial {
    let edges = p
        .iter()
        .map(|e| Edge::new(e[0] as usize, e[1] as usize))
        .collect();
    GraphMonomial::from_canonical(n, edges, sign)
}

/// Coefficient types the engine can accumulate.
pub(crate) trait Coeff: Clone {
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, other: &Self) -> Result<()>;
}

impl Coeff for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn accumulate(&mut self, other: &Self) -> Result<()> {
        *self = self.checked_add(*other).ok_or(Error::Overflow)?;
        Ok(())
    }
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) -> Result<()> {
        *self += other;
        Ok(())
    }
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) -> Result<()> {
        *self = &*self + other;
        Ok(())
    }
}

type QueueKey = (u32, Reverse<u64>, Packed);

fn queue_key(edges: Packed) -> QueueKey {
    let (mut l, mut s) = (0u32, 0u64);
    for e in &edges {
        let len = (e[1] - e[0]) as u32;
        l += len;
        s += (len * len) as u64;
    }
    (l, Reverse(s), edges)
}

fn packed_crosses(e: [u8; 2], f: [u8; 2]) -> bool {
    let (a, b, c, d) = (e[0], e[1], f[0], f[1]);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// The crossing pair `(i, j)`, `i < j`, whose edges are lexicographically largest.
fn largest_crossing(edges: &[[u8; 2]]) -> Option<(usize, usize)> {
    for i in (0..edges.len()).rev() {
        for j in (i + 1..edges.len()).rev() {
            if packed_crosses(edges[i], edges[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The two monomials replacing the crossing pair `(i, j)`: disjoint, then nested.
fn resolve(edges: &[[u8; 2]], i: usize, j: usize) -> [Packed; 2] {
    let (mut e, mut f) = (edges[i], edges[j]);
    if f[0] < e[0] {
        std::mem::swap(&mut e, &mut f);
    }
    let [a, b] = e;
    let [c, d] = f;
    let rest = edges
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, x)| *x);
    let with = |x: [u8; 2], y: [u8; 2]| {
        let mut v: Packed = rest.clone().chain([x, y]).collect();
        v.sort_unstable();
        v
    };
    [with([a, c], [b, d]), with([a, d], [c, b])]
}

/// Straightens a combination of packed monomials on `n` vertices.
pub(crate) fn straighten_packed<C: Coeff>(
    input: impl IntoIterator<Item = (Packed, C)>,
) -> Result<BTreeMap<Packed, C>> {
    let mut queue: BTreeMap<QueueKey, C> = BTreeMap::new();
    let push = |queue: &mut BTreeMap<QueueKey, C>, edges: Packed, c: &C| -> Result<()> {
        match queue.entry(queue_key(edges)) {
            std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().accumulate(c),
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
                Ok(())
            }
        }
    };
    for (edges, c) in input {
        push(&mut queue, edges, &c)?;
    }
    let mut out: BTreeMap<Packed, C> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some(((_, _, edges), c)) = queue.pop_last() {
        if c.is_zero() {
            continue;
        }
        match largest_crossing(&edges) {
            None => {
                out.insert(edges, c);
            }
            Some((i, j)) => {
                steps += 1;
                if steps > STEP_LIMIT {
                    return Err(Error::StepLimit(STEP_LIMIT));
                }
                for child in resolve(&edges, i, j) {
                    push(&mut queue, child, &c)?;
                }
            }
        }
    }
    Ok(out)
}

/// Integer straightening of one monomial, sign included.
pub fn straighten_monomial(g: &GraphMonomial) -> Result<Vec<(GraphMonomial, i128)>> {
    let out = match straighten_packed([(pack(g), g.sign() as i128)]) {
        Ok(out) => out
            .into_iter()
            .map(|(p, c)| (unpack(g.n(), &p, 1), c))
            .collect(),
        Err(Error::Overflow) => {
            let big = straighten_packed([(pack(g), BigInt::from(g.sign()))])?;
            big.into_iter()
                .map(|(p, c)| {
                    let c: i128 = c.try_into().map_err(|_| Error::Overflow)?;
                    Ok((unpack(g.n(), &p, 1), c))
                })
                .collect::<Result<Vec<_>>>()?
        }
        Err(e) => return Err(e),
    };
    Ok(out)
}

/// Rewrites `p` as a combination of non-crossing monomials.
pub fn straighten(p: &GraphPolynomial) -> Result<GraphPolynomial> {
    let field = p.field();
    let out = straighten_packed(p.terms().iter().map(|(g, c)| (pack(g), c.clone())))?;
    let mut result = GraphPolynomial::zero(p.n(), field);
    for (edges, c) in out {
        result.add_term(&unpack(p.n(), &edges, 1), &c)?;
    }
    Ok(result)
}

/// One Plücker rewrite of the crossing edges at positions `pair` of `g`.
pub fn plucker_step(g: &GraphMonomial, pair: (usize, usize), field: FieldSpec) -> Result<GraphPolynomial> {
    let (i, j) = pair;
    let edges = g.edges();
    if i >= edges.len() || j >= edges.len() || i == j || !crosses(edges[i], edges[j]) {
        return Err(Error::NotCrossing(i, j));
    }
    let packed = pack(g);
    let mut out = GraphPolynomial::zero(g.n(), field);
    let c = field.from_i64(g.sign() as i64);
    for child in resolve(&packed, i, j) {
        out.add_term(&unpack(g.n(), &child, 1), &c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn g(s: &str) -> GraphMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_crossing() {
        let p = plucker_step(&g("n=4; 1-3 2-4"), (0, 1), q()).unwrap();
        assert_eq!(p.to_string(), "+1·[1-2 3-4] +1·[1-4 2-3]");
        let s = straighten(&GraphPolynomial::from_monomial(&g("n=4; 1-3 2-4"), q())).unwrap();
        assert_eq!(s, p);
        assert!(plucker_step(&g("n=4; 1-2 3-4"), (0, 1), q()).is_err());
    }

    #[test]
    fn bystanders_are_kept() {
        let p = plucker_step(&g("n=6; 1-3 2-4 5-6"), (0, 1), q()).unwrap();
        assert_eq!(p.to_string(), "+1·[1-2 3-4 5-6] +1·[1-4 2-3 5-6]");
    }

    #[test]
    fn three_term_relation_vanishes() {
        let p = GraphPolynomial::parse("n=4; +1·[1-2 3-4] −1·[1-3 2-4] +1·[1-4 2-3]", q()).unwrap();
        assert!(straighten(&p).unwrap().is_zero());
    }

    #[test]
    fn noncrossing_input_is_fixed() {
        let p = GraphPolynomial::parse("n=6; +2·[1-2 3-6 4-5] −1·[1-6 2-3 4-5]", q()).unwrap();
        assert_eq!(straighten(&p).unwrap(), p);
    }

    #[test]
    fn monomial_path_agrees_with_polynomial_path() {
        let m = g("n=8; 1-5 2-6 3-7 4-8");
        let ints = straighten_monomial(&m).unwrap();
        let poly = straighten(&GraphPolynomial::from_monomial(&m, q())).unwrap();
        assert_eq!(ints.len(), poly.len());
        for (h, c) in ints {
            assert!(h.is_noncrossing());
            assert_eq!(poly.coefficient(&h), q().from_i128(c));
        }
    }
}

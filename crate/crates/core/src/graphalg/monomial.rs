use std::fmt;
use std::str::FromStr;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest vertex count accepted; edges are packed into bytes in hot loops.
pub const MAX_VERTICES: usize = 255;

/// An edge stored with `tail < head` once it sits inside a [`GraphMonomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }
}

/// Two canonical chords cross when exactly one endpoint of one lies strictly
/// inside the other. Chords sharing an endpoint never cross.
pub fn crosses(e: Edge, f: Edge) -> bool {
    let (a, b, c, d) = (e.tail, e.head, f.tail, f.head);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Vertex degrees of a graph, i.e. the multidegree of its invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValenceVector(pub Vec<usize>);

impl ValenceVector {
    pub fn uniform(n: usize, k: usize) -> Self {
        ValenceVector(vec![k; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: usize) -> Self {
        ValenceVector(self.0.iter().map(|v| v * k).collect())
    }

    pub fn plus(&self, other: &ValenceVector) -> Self {
        ValenceVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Whether some loop-free multigraph has these degrees: the sum is even
    /// and no vertex needs more partners than the others provide.
    pub fn is_realizable(&self) -> bool {
        let total = self.total();
        let max = self.0.iter().copied().max().unwrap_or(0);
        total.is_multiple_of(2) && 2 * max <= total
    }

    /// Number of coefficients of a form of this multidegree, `∏ (v_i + 1)`.
    pub fn coefficient_count(&self) -> u128 {
        self.0.iter().map(|&v| v as u128 + 1).product()
    }
}

impl fmt::Display for ValenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The product of brackets `[ab]` over the edges of a loop-free multigraph.
///
/// Edges are kept canonical (`tail < head`, sorted); reorienting an edge
/// negates the bracket, which is tracked in `sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphMonomial {
    n: usize,
    edges: Vec<Edge>,
    sign: i8,
}

impl GraphMonomial {
    /// Canonicalizes a list of directed edges on vertices `1..=n`.
    pub fn normalize(n: usize, raw: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Invalid(format!("at most {MAX_VERTICES} vertices are supported")));
        }
        let mut sign = 1i8;
        let mut edges = Vec::with_capacity(raw.len());
        for &(a, b) in raw {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            if a > b {
                sign = -sign;
                edges.push(Edge::new(b, a));
            } else {
                edges.push(Edge::new(a, b));
            }
        }
        edges.sort_unstable();
        Ok(GraphMonomial { n, edges, sign })
    }

    /// Builds a monomial from edges already known to be canonical and sorted.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Edge>, sign: i8) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(edges.iter().all(|e| e.tail < e.head && e.head <= n));
        GraphMonomial { n, edges, sign }
    }

    /// The edgeless monomial (the constant 1).
    pub fn empty(n: usize) -> Self {
        GraphMonomial {
            n,
            edges: Vec::new(),
            sign: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The same multigraph with sign `+1`.
    pub fn unsigned(&self) -> GraphMonomial {
        GraphMonomial {
            n: self.n,
            edges: self.edges.clone(),
            sign: 1,
        }
    }

    pub fn negated(&self) -> GraphMonomial {
        GraphMonomial {
            n: self.n,
            edges: self.edges.clone(),
            sign: -self.sign,
        }
    }

    /// Multiplication of invariants: the union of the edge multisets.
    pub fn superpose(&self, other: &GraphMonomial) -> Result<GraphMonomial> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        Ok(GraphMonomial {
            n: self.n,
            edges,
            sign: self.sign * other.sign,
        })
    }

    pub fn valence(&self) -> ValenceVector {
        let mut v = vec![0; self.n];
        for e in &self.edges {
            v[e.tail - 1] += 1;
            v[e.head - 1] += 1;
        }
        ValenceVector(v)
    }

    /// Index pairs `(i, j)`, `i < j`, of crossing edges.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if crosses(self.edges[i], self.edges[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        let e = &self.edges;
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| !crosses(e[i], e[j])))
    }

    /// Relabels vertex `i` as `sigma(i)` and renormalizes.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<GraphMonomial> {
        if sigma.n() != self.n {
            return Err(Error::VertexCountMismatch(self.n, sigma.n()));
        }
        let raw: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (sigma.apply(e.tail), sigma.apply(e.head)))
            .collect();
        let mut g = GraphMonomial::normalize(self.n, &raw)?;
        g.sign *= self.sign;
        Ok(g)
    }

    /// Whether every vertex has degree exactly one.
    pub fn is_perfect_matching(&self) -> bool {
        self.valence().0.iter().all(|&d| d == 1)
    }

    /// Edges as `a-b` tokens, reversing the first edge when the sign is negative.
    pub(crate) fn edge_tokens(&self) -> String {
        let mut parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}-{}", e.tail, e.head))
            .collect();
        if self.sign < 0 {
            match self.edges.first() {
                Some(e) => parts[0] = format!("{}-{}", e.head, e.tail),
                None => parts.push("-".to_string()),
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for GraphMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens = self.edge_tokens();
        if tokens.is_empty() {
            write!(f, "n={};", self.n)
        } else {
            write!(f, "n={}; {}", self.n, tokens)
        }
    }
}

/// Parses the edge tokens `a-b c-d ...` starting at byte `offset` of the input.
pub(crate) fn parse_edges(text: &str, offset: usize) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    let mut pos = offset;
    for token in text.split(|c: char| c.is_whitespace()) {
        let here = pos;
        pos += token.len() + 1;
        if token.is_empty() {
            continue;
        }
        let parse_err = |msg: &str| Error::Parse {
            pos: here,
            msg: format!("{msg} in `{token}`"),
        };
        let (a, b) = token
            .split_once('-')
            .ok_or_else(|| parse_err("expected an edge `a-b`"))?;
        let a: usize = a.parse().map_err(|_| parse_err("bad vertex"))?;
        let b: usize = b.parse().map_err(|_| parse_err("bad vertex"))?;
        edges.push((a, b));
    }
    Ok(edges)
}

impl FromStr for GraphMonomial {
    type Err = Error;

    /// Parses `n=<int>; a-b a-b ...`; `b-a` denotes a reversed edge.
    fn from_str(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let body = s.trim_start();
        let rest = body.strip_prefix("n=").ok_or(Error::Parse {
            pos: lead,
            msg: "expected `n=`".to_string(),
        })?;
        let semi = rest.find(';').ok_or(Error::Parse {
            pos: lead + 2 + rest.len(),
            msg: "expected `;` after the vertex count".to_string(),
        })?;
        let n: usize = rest[..semi].trim().parse().map_err(|_| Error::Parse {
            pos: lead + 2,
            msg: format!("bad vertex count `{}`", rest[..semi].trim()),
        })?;
        let edge_start = lead + 2 + semi + 1;
        let raw = parse_edges(&s[edge_start..], edge_start)?;
        GraphMonomial::normalize(n, &raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GraphMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let m = GraphMonomial::normalize(2, &[(2, 1)]).unwrap();
        assert_eq!(m.edges(), &[Edge::new(1, 2)]);
        assert_eq!(m.sign(), -1);
        let m = GraphMonomial::normalize(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(m.sign(), 1);
        let m = GraphMonomial::normalize(4, &[(2, 1), (4, 3)]).unwrap();
        assert_eq!(m.edges(), &[Edge::new(1, 2), Edge::new(3, 4)]);
        assert_eq!(m.sign(), 1);
        assert_eq!(GraphMonomial::normalize(3, &[(2, 2)]), Err(Error::LoopEdge(2)));
        assert!(matches!(
            GraphMonomial::normalize(3, &[(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn superpose_examples() {
        let e = g("n=2; 1-2");
        let d = e.superpose(&e).unwrap();
        assert_eq!(d.edges().len(), 2);
        assert_eq!(d.sign(), 1);
        assert_eq!(d.valence(), ValenceVector(vec![2, 2]));
        let s = g("n=4; 1-2 3-4").superpose(&g("n=4; 1-3 2-4")).unwrap();
        assert_eq!(s.valence(), ValenceVector::uniform(4, 2));
        assert!(e.superpose(&g("n=3; 1-2")).is_err());
    }

    #[test]
    fn valence_examples() {
        assert_eq!(g("n=6; 1-2 3-4 5-6").valence(), ValenceVector::uniform(6, 1));
        assert_eq!(g("n=4; 1-2 1-3 1-4").valence(), ValenceVector(vec![3, 1, 1, 1]));
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(g("n=4; 1-3 2-4").crossings(), vec![(0, 1)]);
        assert!(g("n=4; 1-2 3-4").crossings().is_empty());
        assert!(g("n=4; 1-4 2-3").crossings().is_empty());
        assert!(g("n=4; 1-3 1-4 3-4").crossings().is_empty());
    }

    #[test]
    fn permutation_examples() {
        let m = g("n=2; 1-2");
        assert_eq!(m.apply_permutation(&Permutation::identity(2)).unwrap(), m);
        let swapped = m.apply_permutation(&Permutation::transposition(2, 1, 2)).unwrap();
        assert_eq!(swapped, m.negated());
        let four = Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        let r = g("n=4; 1-2 3-4").apply_permutation(&four).unwrap();
        assert_eq!(r.edges(), &[Edge::new(1, 4), Edge::new(2, 3)]);
        assert_eq!(r.sign(), -1);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["n=4; 1-3 2-4", "n=2; 2-1", "n=5; 1-2 1-2 3-5", "n=3;"] {
            let m = g(s);
            assert_eq!(m.to_string(), s);
            assert_eq!(g(&m.to_string()), m);
        }
        assert_eq!(g("n=2; 1-2 2-1").to_string(), "n=2; 2-1 1-2");
        let err = "n=4; 1-3 2x4".parse::<GraphMonomial>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 9, .. }), "{err:?}");
    }
}

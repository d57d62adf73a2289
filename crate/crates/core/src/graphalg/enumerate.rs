use super::monomial::{crosses, Edge, GraphMonomial, ValenceVector};

/// Result of a capped enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub graphs: Vec<GraphMonomial>,
    /// Set when the cap stopped the search before it finished.
    pub truncated: bool,
}

struct Search<'a> {
    n: usize,
    residual: Vec<usize>,
    edges: Vec<Edge>,
    noncrossing: bool,
    cap: usize,
    out: &'a mut Vec<GraphMonomial>,
    truncated: bool,
}

impl Search<'_> {
    /// Vertices after `a` can still be paired among themselves.
    fn suffix_realizable(&self, a: usize) -> bool {
        let rest = &self.residual[a..];
        let total: usize = rest.iter().sum();
        let max = rest.iter().copied().max().unwrap_or(0);
        total.is_multiple_of(2) && 2 * max <= total
    }

    /// Chooses the edges from vertex `a` to vertices `b >= from`.
    fn run(&mut self, a: usize, from: usize) {
        if self.truncated {
            return;
        }
        if a > self.n {
            if self.out.len() == self.cap {
                self.truncated = true;
                return;
            }
            self.out
                .push(GraphMonomial::from_canonical(self.n, self.edges.clone(), 1));
            return;
        }
        let need = self.residual[a - 1];
        if need == 0 {
            if self.suffix_realizable(a) {
                self.run(a + 1, a + 2);
            }
            return;
        }
        let available: usize = self.residual[from.min(self.n + 1) - 1..].iter().sum();
        if from > self.n || available < need {
            return;
        }
        for b in from..=self.n {
            let rb = self.residual[b - 1];
            if rb == 0 {
                continue;
            }
            let e = Edge::new(a, b);
            if self.noncrossing && self.edges.iter().any(|&f| crosses(e, f)) {
                // a later head crosses every edge this one crosses
                break;
            }
            for m in (1..=need.min(rb)).rev() {
                for _ in 0..m {
                    self.edges.push(e);
                }
                self.residual[a - 1] -= m;
                self.residual[b - 1] -= m;
                self.run(a, b + 1);
                self.residual[a - 1] += m;
                self.residual[b - 1] += m;
                self.edges.truncate(self.edges.len() - m);
            }
        }
    }
}

fn enumerate(n: usize, v: &ValenceVector, noncrossing: bool, cap: usize) -> Enumeration {
    let mut out = Vec::new();
    if v.n() != n || !v.is_realizable() {
        return Enumeration {
            graphs: out,
            truncated: false,
        };
    }
    let mut search = Search {
        n,
        residual: v.0.clone(),
        edges: Vec::new(),
        noncrossing,
        cap,
        out: &mut out,
        truncated: false,
    };
    search.run(1, 2);
    let truncated = search.truncated;
    out.sort();
    Enumeration {
        graphs: out,
        truncated,
    }
}

/// All non-crossing loop-free multigraphs of valence `v`, sorted.
///
/// These monomials form a basis of the invariants of multidegree `v`.
pub fn enumerate_noncrossing(n: usize, v: &ValenceVector) -> Vec<GraphMonomial> {
    enumerate(n, v, true, usize::MAX).graphs
}

/// All loop-free multigraphs of valence `v`, stopping after `cap` graphs.
pub fn enumerate_spanning(n: usize, v: &ValenceVector, cap: usize) -> Enumeration {
    enumerate(n, v, false, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(k: usize) -> usize {
        (0..k).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn noncrossing_matchings_are_catalan() {
        for n in (2..=12).step_by(2) {
            let nc = enumerate_noncrossing(n, &ValenceVector::uniform(n, 1));
            assert_eq!(nc.len(), catalan(n / 2), "n = {n}");
            assert!(nc.iter().all(|g| g.is_noncrossing()));
        }
    }

    #[test]
    fn small_examples() {
        let nc = enumerate_noncrossing(4, &ValenceVector::uniform(4, 1));
        let lit: Vec<String> = nc.iter().map(|g| g.to_string()).collect();
        assert_eq!(lit, vec!["n=4; 1-2 3-4", "n=4; 1-4 2-3"]);
        assert_eq!(enumerate_spanning(4, &ValenceVector::uniform(4, 1), 100).graphs.len(), 3);
        assert_eq!(enumerate_spanning(2, &ValenceVector(vec![2, 2]), 100).graphs.len(), 1);
        assert_eq!(enumerate_spanning(6, &ValenceVector::uniform(6, 1), 100).graphs.len(), 15);
        assert_eq!(enumerate_noncrossing(5, &ValenceVector::uniform(5, 2)).len(), 6);
        assert!(enumerate_noncrossing(5, &ValenceVector::uniform(5, 1)).is_empty());
        assert!(enumerate_noncrossing(3, &ValenceVector(vec![3, 1, 1])).is_empty());
    }

    #[test]
    fn cap_reports_truncation() {
        let e = enumerate_spanning(8, &ValenceVector::uniform(8, 1), 10);
        assert!(e.truncated);
        assert_eq!(e.graphs.len(), 10);
        let full = enumerate_spanning(8, &ValenceVector::uniform(8, 1), 105);
        assert!(!full.truncated);
        assert_eq!(full.graphs.len(), 105);
    }

    #[test]
    fn six_point_counts() {
        // R_{k·1^6} has dimension C(k+4,4) - C(k+1,4)
        for (k, dim) in [(1, 5), (2, 15), (3, 34), (9, 505)] {
            assert_eq!(enumerate_noncrossing(6, &ValenceVector::uniform(6, k)).len(), dim, "k = {k}");
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::monomial::{parse_edges, GraphMonomial, ValenceVector};
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

/// A homogeneous linear combination of graph monomials.
///
/// Keys are unsigned canonical monomials; signs are folded into the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPolynomial {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<GraphMonomial, Scalar>,
}

impl GraphPolynomial {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        GraphPolynomial {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(g: &GraphMonomial, field: FieldSpec) -> Self {
        let mut p = Self::zero(g.n(), field);
        p.terms.insert(g.unsigned(), field.from_i64(g.sign() as i64));
        p
    }

    pub fn from_terms<'a>(
        n: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (&'a GraphMonomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, field);
        for (g, c) in terms {
            p.add_term(g, &c)?;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<GraphMonomial, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common valence, or `None` for the zero polynomial.
    pub fn valence(&self) -> Option<ValenceVector> {
        self.terms.keys().next().map(|g| g.valence())
    }

    pub fn coefficient(&self, g: &GraphMonomial) -> Scalar {
        let c = self
            .terms
            .get(&g.unsigned())
            .cloned()
            .unwrap_or_else(|| self.field.zero());
        if g.sign() < 0 {
            -&c
        } else {
            c
        }
    }

    /// Adds `c · g`, folding the monomial's sign into the coefficient.
    pub fn add_term(&mut self, g: &GraphMonomial, c: &Scalar) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::VertexCountMismatch(self.n, g.n()));
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if let Some(v) = self.valence() {
            if g.valence() != v {
                return Err(Error::Invalid(format!(
                    "term of valence {} added to a polynomial of valence {v}",
                    g.valence()
                )));
            }
        }
        let c = if g.sign() < 0 { -c } else { c.clone() };
        let key = g.unsigned();
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &GraphPolynomial) -> Result<GraphPolynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> GraphPolynomial {
        let mut out = Self::zero(self.n, self.field);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect();
        out
    }

    pub fn sub(&self, other: &GraphPolynomial) -> Result<GraphPolynomial> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    /// Product of invariants, by superposing every pair of terms.
    pub fn mul(&self, other: &GraphPolynomial) -> Result<GraphPolynomial> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n, self.field);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(&g.superpose(h)?, &(a * b))?;
            }
        }
        Ok(out)
    }

    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<GraphPolynomial> {
        let mut out = Self::zero(self.n, self.field);
        for (g, c) in &self.terms {
            out.add_term(&g.apply_permutation(sigma)?, c)?;
        }
        Ok(out)
    }

    /// Maps rational coefficients into `field`.
    pub fn convert(&self, field: FieldSpec) -> Result<GraphPolynomial> {
        let mut out = Self::zero(self.n, field);
        for (g, c) in &self.terms {
            out.add_term(g, &field.convert(c)?)?;
        }
        Ok(out)
    }

    /// Parses `n=<int>; <coef>·[a-b ...] <coef>·[...] ...`, or a bare graph
    /// literal `n=<int>; a-b ...` (coefficient 1). `*` may replace `·`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<GraphPolynomial> {
        if !text.contains('[') {
            let g: GraphMonomial = text.parse()?;
            return Ok(Self::from_monomial(&g, field));
        }
        let body = text.trim_start();
        let lead = text.len() - body.len();
        let rest = body.strip_prefix("n=").ok_or(Error::Parse {
            pos: lead,
            msg: "expected `n=`".to_string(),
        })?;
        let semi = rest.find(';').ok_or(Error::Parse {
            pos: lead + 2,
            msg: "expected `;` after the vertex count".to_string(),
        })?;
        let n: usize = rest[..semi].trim().parse().map_err(|_| Error::Parse {
            pos: lead + 2,
            msg: "bad vertex count".to_string(),
        })?;
        let mut out = Self::zero(n, field);
        let mut pos = lead + 2 + semi + 1;
        loop {
            let tail = &text[pos..];
            let skipped = tail.len() - tail.trim_start().len();
            pos += skipped;
            if pos >= text.len() {
                break;
            }
            let open = text[pos..].find('[').ok_or(Error::Parse {
                pos,
                msg: "expected `[`".to_string(),
            })? + pos;
            let close = text[open..].find(']').ok_or(Error::Parse {
                pos: open,
                msg: "unclosed `[`".to_string(),
            })? + open;
            let coef_text = text[pos..open].trim().trim_end_matches(['·', '*']).trim();
            let coef = parse_coefficient(coef_text, field).ok_or(Error::Parse {
                pos,
                msg: format!("bad coefficient `{coef_text}`"),
            })?;
            let raw = parse_edges(&text[open + 1..close], open + 1)?;
            let g = GraphMonomial::normalize(n, &raw)?;
            out.add_term(&g, &coef)?;
            pos = close + 1;
        }
        Ok(out)
    }
}

fn parse_coefficient(s: &str, field: FieldSpec) -> Option<Scalar> {
    let s = s.replace('−', "-");
    let s = s.strip_prefix('+').unwrap_or(&s);
    let s = if s.is_empty() || s == "-" { format!("{s}1") } else { s.to_string() };
    let r: num_rational::BigRational = s.parse().ok()?;
    field.from_ratio(&r).ok()
}

/// Signed coefficient text: `+3`, `−1/2`, or `+v` for residues.
pub(crate) fn signed_coefficient(c: &Scalar) -> String {
    match c {
        Scalar::Rational(r) if r.is_negative() => format!("−{}", Scalar::Rational(r.abs())),
        other => format!("+{other}"),
    }
}

impl fmt::Display for GraphPolynomial {
    /// `+1·[1-2 3-4] −1·[1-4 2-3]`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("{}·[{}]", signed_coefficient(c), g.edge_tokens()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_folds_into_coefficient() {
        let q = FieldSpec::Rationals;
        let g: GraphMonomial = "n=2; 1-2 2-1".parse().unwrap();
        let p = GraphPolynomial::from_monomial(&g, q);
        assert_eq!(p.to_string(), "−1·[1-2 1-2]");
        let mut z = p.clone();
        z.add_term(&g.negated(), &q.one()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let q = FieldSpec::Rationals;
        let p = GraphPolynomial::parse("n=4; +1·[1-2 3-4] −3/2*[1-4 2-3]", q).unwrap();
        assert_eq!(p.to_string(), "+1·[1-2 3-4] −3/2·[1-4 2-3]");
        let again = GraphPolynomial::parse(&format!("n=4; {p}"), q).unwrap();
        assert_eq!(again, p);
        assert!(GraphPolynomial::parse("n=4; +1·[1-2 3-4] +1·[1-2]", q).is_err());
    }
}

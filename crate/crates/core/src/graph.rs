//! 0/1-weighted graphs and their randomly substituted Tutte matrices.
//!
//! A [`WeightedGraph`] is the disjoint union of a weight-0 graph and a
//! weight-1 graph on the same vertices `0..n`, so a vertex pair may carry
//! one edge of each weight. The integer order on vertices fixes the sign
//! convention of the Tutte matrix: entry `(u, v)` is `+r_e` for `u < v`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeModulus};
use crate::matching::SkewPencil;
use crate::matrix::SkewMatrix;

/// An edge `{u, v}` with `u < v` and weight `w` in `{0, 1}`. The triple is
/// the edge's identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u8,
}

impl Edge {
    /// Orders the endpoints; rejects selfloops and weights other than 0 and 1.
    pub fn new(a: usize, b: usize, w: u8) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGraph(format!("selfloop at vertex {a}")));
        }
        if w > 1 {
            return Err(Error::InvalidGraph(format!(
                "edge weight {w} is not 0 or 1"
            )));
        }
        Ok(Self {
            u: a.min(b),
            v: a.max(b),
            w,
        })
    }

    #[inline]
    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// True when the two edges share an endpoint.
    pub fn intersects(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.u, self.v, self.w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.u >= e.v {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} is not ordered u < v"
                )));
            }
            if e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} leaves vertex range 0..{n}"
                )));
            }
            if e.w > 1 {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} has weight outside {{0, 1}}"
                )));
            }
            if !seen.insert(*e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e}")));
            }
        }
        Ok(Self { n, edges })
    }

    /// Convenience constructor from `(u, v, w)` triples in any endpoint order.
    pub fn from_triples(n: usize, triples: &[(usize, usize, u8)]) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(a, b, w)| Edge::new(a, b, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// `delta_i(v)`: edges of weight `w` incident to `v`.
    pub fn incident_by_weight(&self, v: usize, w: u8) -> Vec<Edge> {
        self.edges
            .iter()
            .filter(|e| e.w == w && e.touches(v))
            .copied()
            .collect()
    }

    pub fn incident(&self, v: usize) -> Vec<Edge> {
        self.edges
            .iter()
            .filter(|e| e.touches(v))
            .copied()
            .collect()
    }
}

impl fmt::Display for WeightedGraph {
    /// The graph file format: `n m` followed by one `u v w` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_fields<T: FromStr>(line: usize, s: &str, expected: usize) -> Result<Vec<T>> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line,
            msg: format!("expected {expected} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<T>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid number {f:?}"),
            })
        })
        .collect()
}

impl FromStr for WeightedGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing \"n m\" header".into(),
        })?;
        let nm: Vec<usize> = parse_fields(hl, header, 2)?;
        let (n, m) = (nm[0], nm[1]);

        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = lines.next().ok_or(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {m} edge lines, found {}", edges.len()),
            })?;
            let f: Vec<usize> = parse_fields(ln, l, 3)?;
            let (u, v, w) = (f[0], f[1], f[2]);
            let bad = |msg: String| Error::Parse { line: ln, msg };
            if u >= v {
                return Err(bad(format!("need u < v, got {u} {v}")));
            }
            if v >= n {
                return Err(bad(format!("vertex {v} out of range 0..{n}")));
            }
            if w > 1 {
                return Err(bad(format!("weight {w} is not 0 or 1")));
            }
            let e = Edge { u, v, w: w as u8 };
            if !seen.insert(e) {
                return Err(bad(format!("duplicate edge {e}")));
            }
            edges.push(e);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("more than the declared {m} edges"),
            });
        }
        Ok(Self { n, edges })
    }
}

#[derive(Debug)]
struct Source {
    graph: WeightedGraph,
    index: HashMap<Edge, usize>,
}

/// The Tutte pencil `T0 + y T1` of a graph after substituting a field value
/// `r_e` for every edge indeterminate. Deleting an edge substitutes zero for
/// it; the sampled values themselves never change.
#[derive(Clone, Debug)]
pub struct SubstitutedTutte {
    source: Arc<Source>,
    values: Vec<FieldElement>,
    live: Vec<bool>,
    pencil: SkewPencil,
}

impl SubstitutedTutte {
    /// Samples one uniform value per edge, in edge order. Requires `p > 4 n^2`.
    pub fn substitute<R: RngCore + ?Sized>(
        g: &WeightedGraph,
        rng: &mut R,
        modulus: PrimeModulus,
    ) -> Result<Self> {
        modulus.check_instance_size(g.n())?;
        Ok(Self::sample(g, rng, modulus))
    }

    /// Like [`substitute`](Self::substitute) but without the prime-size check.
    pub fn sample<R: RngCore + ?Sized>(
        g: &WeightedGraph,
        rng: &mut R,
        modulus: PrimeModulus,
    ) -> Self {
        let values = g.edges().iter().map(|_| modulus.sample(rng)).collect();
        Self::with_values(g, values, modulus).expect("one value per edge")
    }

    /// Uses the given edge values (parallel to `g.edges()`).
    pub fn with_values(
        g: &WeightedGraph,
        values: Vec<FieldElement>,
        modulus: PrimeModulus,
    ) -> Result<Self> {
        if values.len() != g.edges().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} edges",
                values.len(),
                g.edges().len()
            )));
        }
        let n = g.n();
        let mut t0 = SkewMatrix::zeros(modulus, n);
        let mut t1 = SkewMatrix::zeros(modulus, n);
        for (e, &r) in g.edges().iter().zip(&values) {
            let t = if e.w == 0 { &mut t0 } else { &mut t1 };
            t.set_pair(e.u, e.v, r);
        }
        let index = g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(Self {
            source: Arc::new(Source {
                graph: g.clone(),
                index,
            }),
            live: vec![true; values.len()],
            values,
            pencil: SkewPencil::new(t0, t1)?,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.pencil.modulus()
    }

    pub fn n(&self) -> usize {
        self.source.graph.n()
    }

    /// The substituted weight-0 part.
    pub fn t0(&self) -> &SkewMatrix {
        self.pencil.low()
    }

    /// The substituted weight-1 part.
    pub fn t1(&self) -> &SkewMatrix {
        self.pencil.high()
    }

    pub fn pencil(&self) -> &SkewPencil {
        &self.pencil
    }

    /// `T0 + T1`, the substituted Tutte matrix of the whole current graph.
    pub fn sum(&self) -> SkewMatrix {
        self.pencil.at(self.modulus().one())
    }

    /// The graph this substitution was drawn for, before any deletion.
    pub fn source(&self) -> &WeightedGraph {
        &self.source.graph
    }

    /// The value `r_e` drawn for `e`, whether or not `e` is still present.
    pub fn value(&self, e: &Edge) -> Option<FieldElement> {
        self.source.index.get(e).map(|&i| self.values[i])
    }

    pub fn is_live(&self, e: &Edge) -> bool {
        self.source.index.get(e).is_some_and(|&i| self.live[i])
    }

    pub fn live_edges(&self) -> Vec<Edge> {
        self.source
            .graph
            .edges()
            .iter()
            .zip(&self.live)
            .filter(|(_, &l)| l)
            .map(|(e, _)| *e)
            .collect()
    }

    /// The current graph: the source minus everything deleted so far.
    pub fn current_graph(&self) -> WeightedGraph {
        WeightedGraph {
            n: self.n(),
            edges: self.live_edges(),
        }
    }

    /// Live edges of weight `w` at `v`.
    pub fn live_incident_by_weight(&self, v: usize, w: u8) -> Vec<Edge> {
        self.live_edges()
            .into_iter()
            .filter(|e| e.w == w && e.touches(v))
            .collect()
    }

    /// A copy with `r_e` replaced by zero for every listed edge.
    pub fn delete_edges(&self, edges: &[Edge]) -> Result<Self> {
        let mut out = self.clone();
        let zero = self.modulus().zero();
        for e in edges {
            let &i = self.source.index.get(e).ok_or(Error::UnknownEdge {
                u: e.u,
                v: e.v,
                w: e.w,
            })?;
            out.live[i] = false;
            let t = if e.w == 0 {
                out.pencil.low_mut()
            } else {
                out.pencil.high_mut()
            };
            t.set_pair(e.u, e.v, zero);
        }
        Ok(out)
    }
}

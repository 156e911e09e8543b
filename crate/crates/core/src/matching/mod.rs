//! Randomized algebraic matching.
//!
//! All algorithms work on one random substitution of the Tutte matrix per
//! attempt. Self-reductions only ever replace sampled values by zero, so the
//! pfaffian identities relating the reduced instances hold exactly for that
//! substitution.
//!
//! Errors are one-sided: a reported matching or a feasible weight is always
//! certified by a nonzero determinant or coefficient, while a negative answer
//! is wrong with probability at most `n / p` per test.

mod pencil;

use std::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::gf::PrimeModulus;
use crate::graph::{Edge, SubstitutedTutte, WeightedGraph};
use crate::poly::Polynomial;

pub use pencil::{
    det_pencil, det_pencil_at, pencil_determinant, pencil_pfaffian, pf_pencil, SkewPencil,
};

/// Default number of fresh substitutions after the first one fails.
pub const DEFAULT_RETRIES: usize = 3;

/// Result of a search that may legitimately find nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// `probable` is set when the answer comes from exhausting the retry
    /// budget rather than from a single failed algebraic test.
    Infeasible {
        probable: bool,
    },
}

impl<T> Outcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

/// A perfect matching and its weight (the number of weight-1 edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub edges: Vec<Edge>,
    pub weight: usize,
}

impl MatchingResult {
    fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        let weight = edges.iter().filter(|e| e.w == 1).count();
        Self { edges, weight }
    }

    /// True if the edges belong to `g`, are pairwise disjoint and cover
    /// every vertex.
    pub fn is_perfect_in(&self, g: &WeightedGraph) -> bool {
        is_perfect_matching(g, &self.edges)
    }
}

pub fn is_perfect_matching(g: &WeightedGraph, edges: &[Edge]) -> bool {
    let mut covered = vec![false; g.n()];
    for e in edges {
        if !g.contains(e) || covered[e.u] || covered[e.v] {
            return false;
        }
        covered[e.u] = true;
        covered[e.v] = true;
    }
    covered.into_iter().all(|c| c)
}

/// Which weights `k = 0..=n/2` admit a perfect matching (or parity base).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub feasible: Vec<bool>,
    /// The pfaffian of the pencil, up to sign; zero if no trial succeeded.
    pub pf_poly: Polynomial,
    /// Substitutions drawn, including singular ones.
    pub trials: usize,
}

impl WeightProfile {
    pub fn feasible_weights(&self) -> Vec<usize> {
        (0..self.feasible.len())
            .filter(|&k| self.feasible[k])
            .collect()
    }

    pub fn is_feasible(&self, k: usize) -> bool {
        self.feasible.get(k).copied().unwrap_or(false)
    }

    pub fn any(&self) -> bool {
        self.feasible.iter().any(|&b| b)
    }
}

impl fmt::Display for WeightProfile {
    /// `k=0:1 k=1:0 ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .feasible
            .iter()
            .enumerate()
            .map(|(k, &b)| format!("k={k}:{}", b as u8))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Shared parameters of the randomized algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solver {
    modulus: PrimeModulus,
    retries: usize,
    check_prime: bool,
}

impl Solver {
    pub fn new(modulus: PrimeModulus) -> Self {
        Self {
            modulus,
            retries: DEFAULT_RETRIES,
            check_prime: true,
        }
    }

    /// Solver over the default prime for `n`-vertex instances.
    pub fn for_instance_size(n: usize) -> Self {
        Self::new(PrimeModulus::for_instance_size(n))
    }

    pub fn with_retries(mut self, retries: usize) -> Self {
        self.retries = retries;
        self
    }

    /// Skips the `p > 4 n^2` check, e.g. to measure failure rates at
    /// deliberately small primes.
    pub fn allow_small_prime(mut self) -> Self {
        self.check_prime = false;
        self
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn retries(&self) -> usize {
        self.retries
    }

    pub(crate) fn check_size(&self, n: usize) -> Result<()> {
        if self.check_prime {
            self.modulus.check_instance_size(n)?;
        }
        Ok(())
    }

    pub fn substitute<R: RngCore + ?Sized>(
        &self,
        g: &WeightedGraph,
        rng: &mut R,
    ) -> Result<SubstitutedTutte> {
        self.check_size(g.n())?;
        Ok(SubstitutedTutte::sample(g, rng, self.modulus))
    }

    /// One substitution; `det(T0 + T1) != 0`. Never a false positive.
    pub fn has_perfect_matching<R: RngCore + ?Sized>(
        &self,
        g: &WeightedGraph,
        rng: &mut R,
    ) -> Result<bool> {
        self.check_size(g.n())?;
        if g.n() % 2 == 1 {
            return Ok(false);
        }
        let st = self.substitute(g, rng)?;
        Ok(!st.sum().determinant().is_zero())
    }

    /// Edge-by-edge self-reduction: drop an edge if the determinant
    /// survives, otherwise keep it and drop everything touching it.
    pub fn find_perfect_matching<R: RngCore + ?Sized>(
        &self,
        g: &WeightedGraph,
        rng: &mut R,
    ) -> Result<Outcome<MatchingResult>> {
        self.check_size(g.n())?;
        if g.n() % 2 == 1 {
            return Ok(Outcome::Infeasible { probable: false });
        }
        for _ in 0..=self.retries {
            let st = self.substitute(g, rng)?;
            if st.sum().determinant().is_zero() {
                return Ok(Outcome::Infeasible { probable: false });
            }
            if let Some(edges) = extract_perfect_matching(&st)? {
                let result = MatchingResult::new(edges);
                if result.is_perfect_in(g) {
                    return Ok(Outcome::Found(result));
                }
            }
        }
        Ok(Outcome::Infeasible { probable: true })
    }

    /// Coefficient test on `pf(T0 + y T1)` for every `k = 0..=n/2`.
    pub fn weight_profile<R: RngCore + ?Sized>(
        &self,
        g: &WeightedGraph,
        rng: &mut R,
    ) -> Result<WeightProfile> {
        self.check_size(g.n())?;
        let n = g.n();
        self.profile_with(n, rng, |rng| {
            Ok(SubstitutedTutte::sample(g, rng, self.modulus)
                .pencil()
                .clone())
        })
    }

    /// Draws pencils until `low + high` is nonsingular (at most
    /// `1 + retries` draws) and reads the weight profile off its pfaffian.
    pub(crate) fn profile_with<R, F>(
        &self,
        n: usize,
        rng: &mut R,
        mut draw: F,
    ) -> Result<WeightProfile>
    where
        R: RngCore + ?Sized,
        F: FnMut(&mut R) -> Result<SkewPencil>,
    {
        let slots = n / 2 + 1;
        let empty = |trials| WeightProfile {
            feasible: vec![false; slots],
            pf_poly: Polynomial::zero(self.modulus),
            trials,
        };
        if n % 2 == 1 {
            return Ok(empty(0));
        }
        for trial in 1..=self.retries + 1 {
            let pencil = draw(rng)?;
            let det = match det_pencil(&pencil) {
                Err(Error::Singular) => continue,
                other => other?,
            };
            let pf = det.sqrt(rng)?;
            let feasible = (0..slots).map(|k| !pf.coeff(k).is_zero()).collect();
            return Ok(WeightProfile {
                feasible,
                pf_poly: pf,
                trials: trial,
            });
        }
        Ok(empty(self.retries + 1))
    }

    /// A perfect matching of weight exactly `k`, by fixing for every vertex
    /// the weight of its matching edge and then extracting a perfect
    /// matching of what remains.
    pub fn find_exact_matching<R: RngCore + ?Sized>(
        &self,
        g: &WeightedGraph,
        k: usize,
        rng: &mut R,
    ) -> Result<Outcome<MatchingResult>> {
        self.check_size(g.n())?;
        let n = g.n();
        if k > n / 2 {
            return Err(Error::WeightOutOfRange { k, max: n / 2 });
        }
        if n % 2 == 1 {
            return Ok(Outcome::Infeasible { probable: false });
        }
        for _ in 0..=self.retries {
            let st = self.substitute(g, rng)?;
            let pf = match pf_pencil(st.pencil(), rng) {
                Err(Error::Singular) => continue,
                other => other?,
            };
            if pf.coeff(k).is_zero() {
                return Ok(Outcome::Infeasible { probable: false });
            }
            let mut h = st;
            for v in 0..n {
                h = fix_vertex_weight(&h, v, k, rng)?.0;
            }
            if let Some(edges) = extract_perfect_matching(&h)? {
                let result = MatchingResult::new(edges);
                if result.weight == k && result.is_perfect_in(g) {
                    return Ok(Outcome::Found(result));
                }
            }
        }
        Ok(Outcome::Infeasible { probable: true })
    }
}

/// One vertex step of the exact-matching reduction. Returns the reduced
/// substitution and the weight assigned to `v`: 1 if `[y^k]` survives
/// removing the weight-0 edges at `v` (which are then removed), 0 otherwise
/// (the weight-1 edges at `v` are removed instead).
pub fn fix_vertex_weight<R: RngCore + ?Sized>(
    h: &SubstitutedTutte,
    v: usize,
    k: usize,
    rng: &mut R,
) -> Result<(SubstitutedTutte, u8)> {
    let without_light = h.delete_edges(&h.live_incident_by_weight(v, 0))?;
    let pf = pencil_pfaffian(without_light.pencil(), rng)?;
    if !pf.coeff(k).is_zero() {
        Ok((without_light, 1))
    } else {
        Ok((h.delete_edges(&h.live_incident_by_weight(v, 1))?, 0))
    }
}

/// Perfect matching of the live graph of `st`, reusing its substitution.
/// `None` if `det(T0 + T1) = 0` or the reduction hits an inconsistency.
pub fn extract_perfect_matching(st: &SubstitutedTutte) -> Result<Option<Vec<Edge>>> {
    let alive = |s: &SubstitutedTutte| !s.sum().determinant().is_zero();
    if !alive(st) {
        return Ok(None);
    }
    let mut cur = st.clone();
    let mut matched = Vec::new();
    for e in st.live_edges() {
        if !cur.is_live(&e) {
            continue;
        }
        let without = cur.delete_edges(&[e])?;
        if alive(&without) {
            cur = without;
            continue;
        }
        let touching: Vec<Edge> = cur
            .live_edges()
            .into_iter()
            .filter(|f| *f != e && f.intersects(&e))
            .collect();
        let with = cur.delete_edges(&touching)?;
        if !alive(&with) {
            return Ok(None);
        }
        cur = with;
        matched.push(e);
    }
    Ok(Some(matched))
}

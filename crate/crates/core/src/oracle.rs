//! Brute-force references for small inputs.
//!
//! Nothing here uses elimination except the rank test in
//! [`enum_parity_bases`]. Each routine has a hard size guard.

use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::graph::{Edge, WeightedGraph};
use crate::lmp::LmpInstance;
use crate::matrix::SkewMatrix;

pub const MAX_MATCHING_VERTICES: usize = 12;
pub const MAX_PFAFFIAN_SIZE: usize = 10;
pub const MAX_PARITY_LINES: usize = 12;
pub const MAX_PARITY_VERTICES: usize = 10;

/// Every perfect matching of a graph, with weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingEnumeration {
    pub matchings: Vec<Vec<Edge>>,
    pub weights: Vec<usize>,
}

impl MatchingEnumeration {
    pub fn count(&self) -> usize {
        self.matchings.len()
    }

    /// `feasible[k]` for `k = 0..=n/2`.
    pub fn weight_set(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; n / 2 + 1];
        for &w in &self.weights {
            out[w] = true;
        }
        out
    }
}

pub fn enum_perfect_matchings(g: &WeightedGraph) -> Result<MatchingEnumeration> {
    if g.n() > MAX_MATCHING_VERTICES {
        return Err(Error::SizeGuard {
            what: "matching enumeration vertices",
            actual: g.n(),
            limit: MAX_MATCHING_VERTICES,
        });
    }
    let mut out = MatchingEnumeration {
        matchings: Vec::new(),
        weights: Vec::new(),
    };
    if g.n().is_multiple_of(2) {
        let mut covered = vec![false; g.n()];
        let mut stack = Vec::new();
        branch(g, &mut covered, &mut stack, &mut out);
    }
    Ok(out)
}

fn branch(
    g: &WeightedGraph,
    covered: &mut [bool],
    stack: &mut Vec<Edge>,
    out: &mut MatchingEnumeration,
) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        out.weights.push(stack.iter().map(|e| e.w as usize).sum());
        out.matchings.push(stack.clone());
        return;
    };
    for &e in g.edges() {
        let other = if e.u == v {
            e.v
        } else if e.v == v {
            e.u
        } else {
            continue;
        };
        if covered[other] {
            continue;
        }
        covered[v] = true;
        covered[other] = true;
        stack.push(e);
        branch(g, covered, stack, out);
        stack.pop();
        covered[v] = false;
        covered[other] = false;
    }
}

/// Sum over the perfect matchings `{i1 j1}, ..., {ih jh}` of `0..n` (each
/// `i < j`, listed by increasing `i`) of `sgn(i1 j1 ... ih jh) prod a[i][j]`.
pub fn brute_pfaffian(a: &SkewMatrix) -> Result<FieldElement> {
    let n = a.n();
    if n > MAX_PFAFFIAN_SIZE {
        return Err(Error::SizeGuard {
            what: "pfaffian expansion size",
            actual: n,
            limit: MAX_PFAFFIAN_SIZE,
        });
    }
    let md = a.modulus();
    if n % 2 == 1 {
        return Ok(md.zero());
    }
    let mut total = md.zero();
    let mut seq = Vec::with_capacity(n);
    let mut used = vec![false; n];
    pair_up(&mut used, &mut seq, &mut |seq| {
        let inversions = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| seq[i] > seq[j])
            .count();
        let mut term = md.one();
        for pair in seq.chunks(2) {
            term *= a.as_matrix()[(pair[0], pair[1])];
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    Ok(total)
}

fn pair_up(used: &mut [bool], seq: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let Some(i) = used.iter().position(|&u| !u) else {
        visit(seq);
        return;
    };
    used[i] = true;
    for j in (i + 1)..used.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        seq.push(i);
        seq.push(j);
        pair_up(used, seq, visit);
        seq.truncate(seq.len() - 2);
        used[j] = false;
    }
    used[i] = false;
}

/// All parity bases as `(sorted lines, weight)`, in lexicographic order.
pub fn enum_parity_bases(inst: &LmpInstance) -> Result<Vec<(Vec<usize>, usize)>> {
    if inst.m() > MAX_PARITY_LINES {
        return Err(Error::SizeGuard {
            what: "parity enumeration lines",
            actual: inst.m(),
            limit: MAX_PARITY_LINES,
        });
    }
    if inst.nv() > MAX_PARITY_VERTICES {
        return Err(Error::SizeGuard {
            what: "parity enumeration rows",
            actual: inst.nv(),
            limit: MAX_PARITY_VERTICES,
        });
    }
    let mut out = Vec::new();
    if inst.nv() % 2 == 1 {
        return Ok(out);
    }
    let h = inst.nv() / 2;
    let mut subset = Vec::with_capacity(h);
    subsets(inst.m(), h, 0, &mut subset, &mut |s| {
        if inst.columns_of(s).rank() == inst.nv() {
            out.push((s.to_vec(), inst.weight_of(s)));
        }
    });
    Ok(out)
}

fn subsets(m: usize, h: usize, from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == h {
        visit(cur);
        return;
    }
    for l in from..m {
        cur.push(l);
        subsets(m, h, l + 1, cur, visit);
        cur.pop();
    }
}

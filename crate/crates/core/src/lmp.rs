//! Linear matroid parity over a prime field.
//!
//! An instance is a `|V| x 2m` matrix whose columns come in pairs (lines),
//! each line carrying a weight in `{0, 1}`. A parity base is a set of
//! `|V|/2` lines whose `|V|` columns are linearly independent.
//!
//! The algebraic handle is the skew matrix `Y = sum_l x_l (a_l ^ b_l)`, with
//! `a ^ b = a b^T - b a^T`, split into a weight-0 and a weight-1 part so that
//! `Y0 + y Y1` plays the role of the Tutte pencil.

use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeModulus};
use crate::graph::{content_lines, parse_fields, WeightedGraph};
use crate::matching::{Outcome, SkewPencil, Solver, WeightProfile};
use crate::matrix::{FieldMatrix, SkewMatrix};

/// Lines of a parity instance over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmpInstance {
    z: FieldMatrix,
    line_weights: Vec<u8>,
}

impl LmpInstance {
    /// `z` has columns `2l, 2l + 1` for line `l`.
    pub fn new(z: FieldMatrix, line_weights: Vec<u8>) -> Result<Self> {
        if z.cols() != 2 * line_weights.len() {
            return Err(Error::InvalidInstance(format!(
                "{} columns for {} lines",
                z.cols(),
                line_weights.len()
            )));
        }
        if let Some(l) = line_weights.iter().position(|&w| w > 1) {
            return Err(Error::InvalidInstance(format!(
                "line {l} has weight {}",
                line_weights[l]
            )));
        }
        Ok(Self { z, line_weights })
    }

    /// One line per edge, with columns `1_u, 1_v` and the edge's weight.
    pub fn embed_matching(g: &WeightedGraph, modulus: PrimeModulus) -> Self {
        let m = g.edges().len();
        let mut z = FieldMatrix::zeros(modulus, g.n(), 2 * m);
        for (l, e) in g.edges().iter().enumerate() {
            z[(e.u, 2 * l)] = modulus.one();
            z[(e.v, 2 * l + 1)] = modulus.one();
        }
        let line_weights = g.edges().iter().map(|e| e.w).collect();
        Self { z, line_weights }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.z.modulus()
    }

    /// `|V|`.
    pub fn nv(&self) -> usize {
        self.z.rows()
    }

    /// Number of lines.
    pub fn m(&self) -> usize {
        self.line_weights.len()
    }

    pub fn z(&self) -> &FieldMatrix {
        &self.z
    }

    pub fn line_weights(&self) -> &[u8] {
        &self.line_weights
    }

    /// The two columns of line `l`.
    pub fn line(&self, l: usize) -> (Vec<FieldElement>, Vec<FieldElement>) {
        (self.z.column(2 * l), self.z.column(2 * l + 1))
    }

    /// Number of weight-1 lines among `lines`.
    pub fn weight_of(&self, lines: &[usize]) -> usize {
        lines.iter().filter(|&&l| self.line_weights[l] == 1).count()
    }

    /// The `|V| x 2|lines|` matrix of the selected columns.
    pub fn columns_of(&self, lines: &[usize]) -> FieldMatrix {
        FieldMatrix::from_fn(self.modulus(), self.nv(), 2 * lines.len(), |i, j| {
            self.z[(i, 2 * lines[j / 2] + j % 2)]
        })
    }

    /// True if `lines` has `|V|/2` members with independent columns.
    pub fn is_parity_base(&self, lines: &[usize]) -> bool {
        let mut sorted = lines.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.nv().is_multiple_of(2)
            && sorted.len() == lines.len()
            && 2 * lines.len() == self.nv()
            && lines.iter().all(|&l| l < self.m())
            && self.columns_of(lines).rank() == self.nv()
    }
}

/// `a b^T - b a^T`.
pub fn wedge(a: &[FieldElement], b: &[FieldElement]) -> Result<SkewMatrix> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "wedge of vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    let Some(first) = a.first() else {
        return Err(Error::DimensionMismatch("wedge of empty vectors".into()));
    };
    let mut s = SkewMatrix::zeros(first.modulus(), a.len());
    add_wedge(&mut s, a, b, first.modulus().one());
    Ok(s)
}

fn add_wedge(s: &mut SkewMatrix, a: &[FieldElement], b: &[FieldElement], r: FieldElement) {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let v = a[i] * b[j] - b[i] * a[j];
            if !v.is_zero() {
                s.add_pair(i, j, r * v);
            }
        }
    }
}

/// `Y0 + y Y1` with the given per-line values.
pub fn build_y_with_values(inst: &LmpInstance, values: &[FieldElement]) -> Result<SkewPencil> {
    if values.len() != inst.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} lines",
            values.len(),
            inst.m()
        )));
    }
    let md = inst.modulus();
    let mut y0 = SkewMatrix::zeros(md, inst.nv());
    let mut y1 = SkewMatrix::zeros(md, inst.nv());
    for (l, &r) in values.iter().enumerate() {
        let (a, b) = inst.line(l);
        let y = if inst.line_weights[l] == 0 {
            &mut y0
        } else {
            &mut y1
        };
        add_wedge(y, &a, &b, r);
    }
    SkewPencil::new(y0, y1)
}

/// Draws one uniform value per line, in line order, and builds the pencil.
pub fn build_y<R: RngCore + ?Sized>(
    inst: &LmpInstance,
    rng: &mut R,
) -> (SkewPencil, Vec<FieldElement>) {
    let md = inst.modulus();
    let values: Vec<_> = (0..inst.m()).map(|_| md.sample(rng)).collect();
    let pencil = build_y_with_values(inst, &values).expect("one value per line");
    (pencil, values)
}

/// A parity base as sorted line indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityBase {
    pub lines: Vec<usize>,
    pub weight: usize,
}

impl Solver {
    fn check_lmp(&self, inst: &LmpInstance) -> Result<()> {
        if inst.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch {
                left: inst.modulus().p(),
                right: self.modulus().p(),
            });
        }
        self.check_size(inst.nv())
    }

    /// One substitution; `det(Y0 + Y1) != 0`.
    pub fn has_parity_base<R: RngCore + ?Sized>(
        &self,
        inst: &LmpInstance,
        rng: &mut R,
    ) -> Result<bool> {
        self.check_lmp(inst)?;
        let (pencil, _) = build_y(inst, rng);
        Ok(!pencil.at(self.modulus().one()).determinant().is_zero())
    }

    /// Which parity-base weights occur, by the same coefficient test as
    /// [`Solver::weight_profile`].
    pub fn lmp_weight_profile<R: RngCore + ?Sized>(
        &self,
        inst: &LmpInstance,
        rng: &mut R,
    ) -> Result<WeightProfile> {
        self.check_lmp(inst)?;
        self.profile_with(inst.nv(), rng, |rng| Ok(build_y(inst, rng).0))
    }

    /// Greedy line deletion: zero each line's value in turn and keep it
    /// zeroed while `Y0 + Y1` stays nonsingular.
    pub fn find_parity_base<R: RngCore + ?Sized>(
        &self,
        inst: &LmpInstance,
        rng: &mut R,
    ) -> Result<Outcome<ParityBase>> {
        self.check_lmp(inst)?;
        let md = self.modulus();
        for _ in 0..=self.retries() {
            let (pencil, values) = build_y(inst, rng);
            let mut y = pencil.at(md.one());
            if y.determinant().is_zero() {
                return Ok(Outcome::Infeasible { probable: false });
            }
            let mut kept = Vec::new();
            for (l, &r) in values.iter().enumerate() {
                let (a, b) = inst.line(l);
                let mut without = y.clone();
                add_wedge(&mut without, &a, &b, -r);
                if without.determinant().is_zero() {
                    kept.push(l);
                } else {
                    y = without;
                }
            }
            if inst.is_parity_base(&kept) {
                let weight = inst.weight_of(&kept);
                return Ok(Outcome::Found(ParityBase {
                    lines: kept,
                    weight,
                }));
            }
        }
        Ok(Outcome::Infeasible { probable: true })
    }
}

/// An instance as written in a file: plain integers, reduced into a field
/// on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmpFile {
    pub nv: usize,
    /// `(first column, second column, weight)` per line.
    pub lines: Vec<(Vec<i64>, Vec<i64>, u8)>,
}

impl LmpFile {
    pub fn to_instance(&self, modulus: PrimeModulus) -> LmpInstance {
        let m = self.lines.len();
        let mut z = FieldMatrix::zeros(modulus, self.nv, 2 * m);
        for (l, (a, b, _)) in self.lines.iter().enumerate() {
            for i in 0..self.nv {
                z[(i, 2 * l)] = modulus.from_i64(a[i]);
                z[(i, 2 * l + 1)] = modulus.from_i64(b[i]);
            }
        }
        let weights = self.lines.iter().map(|l| l.2).collect();
        LmpInstance::new(z, weights).expect("weights validated on parse")
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        let unit = |x| (0..g.n()).map(|i| i64::from(i == x)).collect::<Vec<_>>();
        Self {
            nv: g.n(),
            lines: g
                .edges()
                .iter()
                .map(|e| (unit(e.u), unit(e.v), e.w))
                .collect(),
        }
    }
}

impl fmt::Display for LmpFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "{} {}", self.nv, self.lines.len())?;
        for (a, b, w) in &self.lines {
            writeln!(f, "{}", row(a))?;
            writeln!(f, "{}", row(b))?;
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for LmpFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header \"nv m\"".into(),
        })?;
        let head: Vec<usize> = parse_fields(ln, header, 2)?;
        let (nv, m) = (head[0], head[1]);
        let mut out = Vec::with_capacity(m);
        let mut last = ln;
        for l in 0..m {
            let mut column = |which: &str| -> Result<Vec<i64>> {
                let (ln, s) = lines.next().ok_or(Error::Parse {
                    line: last + 1,
                    msg: format!("missing {which} column of line {l}"),
                })?;
                last = ln;
                parse_fields(ln, s, nv)
            };
            let a = column("first")?;
            let b = column("second")?;
            let (ln, s) = lines.next().ok_or(Error::Parse {
                line: last + 1,
                msg: format!("missing weight of line {l}"),
            })?;
            last = ln;
            let w: Vec<u8> = parse_fields(ln, s, 1)?;
            if w[0] > 1 {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("weight {} is not 0 or 1", w[0]),
                });
            }
            out.push((a, b, w[0]));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("more than the declared {m} lines"),
            });
        }
        Ok(Self { nv, lines: out })
    }
}

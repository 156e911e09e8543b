//! Dense univariate polynomials over GF(p), coefficients stored low to high.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeModulus};

/// A polynomial with normalized coefficients: the last stored coefficient is
/// nonzero, and the zero polynomial stores none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
    modulus: PrimeModulus,
}

impl Polynomial {
    pub fn zero(modulus: PrimeModulus) -> Self {
        Self {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(c.modulus(), vec![c])
    }

    /// `c * y^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![c.modulus().zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(c.modulus(), coeffs)
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(modulus: PrimeModulus, coeffs: Vec<FieldElement>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.modulus() == modulus),
            "coefficient from a different field"
        );
        let mut p = Self { coeffs, modulus };
        p.normalize();
        p
    }

    pub fn from_u64s(modulus: PrimeModulus, coeffs: &[u64]) -> Self {
        Self::from_coeffs(modulus, coeffs.iter().map(|&c| modulus.elem(c)).collect())
    }

    pub fn from_i64s(modulus: PrimeModulus, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            modulus,
            coeffs.iter().map(|&c| modulus.from_i64(c)).collect(),
        )
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `[y^k] f`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(self.modulus.zero())
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(self.modulus.zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, a: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.modulus.zero(), |acc, &c| acc * a + c)
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::from_coeffs(self.modulus, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Lagrange interpolation through pairwise distinct abscissae; the result
    /// has degree below `points.len()`.
    pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<Self> {
        let Some(&(x0, _)) = points.first() else {
            return Err(Error::NoPoints);
        };
        let m = x0.modulus();
        let mut seen = HashSet::with_capacity(points.len());
        for &(x, _) in points {
            if !seen.insert(x.value()) {
                return Err(Error::DuplicateAbscissa(x.value()));
            }
        }

        // master(y) = prod (y - x_i)
        let master = points.iter().fold(Polynomial::one(m), |acc, &(x, _)| {
            &acc * &Polynomial::from_coeffs(m, vec![-x, m.one()])
        });

        let mut acc = vec![m.zero(); points.len()];
        for &(xi, yi) in points {
            // q = master / (y - xi) by synthetic division
            let mc = master.coeffs();
            let mut q = vec![m.zero(); mc.len() - 1];
            let mut carry = m.zero();
            for k in (1..mc.len()).rev() {
                carry = mc[k] + carry * xi;
                q[k - 1] = carry;
            }
            let denom = q.iter().rev().fold(m.zero(), |a, &c| a * xi + c);
            let w = yi * denom.inv()?;
            for (a, &c) in acc.iter_mut().zip(&q) {
                *a += w * c;
            }
        }
        Ok(Self::from_coeffs(m, acc))
    }

    /// `g(y) = f(y + c)` by repeated synthetic division, O(deg^2).
    pub fn taylor_shift(&self, c: FieldElement) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let hi = a[j + 1];
                a[j] += c * hi;
            }
        }
        Self::from_coeffs(self.modulus, a)
    }

    /// `y^n f(1/y)`: the coefficient mirror against length `n`.
    pub fn reverse(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeBound {
                    degree: d,
                    bound: n,
                });
            }
        }
        let coeffs = (0..=n).map(|i| self.coeff(n - i)).collect();
        Ok(Self::from_coeffs(self.modulus, coeffs))
    }

    /// A square root in GF(p)[y], determined up to sign.
    ///
    /// The leading coefficient comes from a field square root; the remaining
    /// ones are solved top-down from the coefficients of `f^2`, and the
    /// result is checked by squaring.
    pub fn sqrt<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<Self> {
        let m = self.modulus;
        let Some(d) = self.degree() else {
            return Ok(self.clone());
        };
        if d % 2 == 1 {
            return Err(Error::NotASquare);
        }
        let h = d / 2;
        let lead = self.leading().sqrt(rng).ok_or(Error::NotASquare)?;
        let inv_two_lead = (lead + lead).inv()?;

        let mut f = vec![m.zero(); h + 1];
        f[h] = lead;
        for j in (0..h).rev() {
            // [y^(h+j)] f^2 = 2 f_h f_j + sum_{a+b=h+j, j<a,b<h} f_a f_b
            let target = h + j;
            let mut partial = m.zero();
            for a in (j + 1)..h {
                let b = target - a;
                if b > j && b < h {
                    partial += f[a] * f[b];
                }
            }
            f[j] = (self.coeff(target) - partial) * inv_two_lead;
        }

        let root = Self::from_coeffs(m, f);
        if &(&root * &root) == self {
            Ok(root)
        } else {
            Err(Error::NotASquare)
        }
    }
}

impl fmt::Display for Polynomial {
    /// `<degree> c_0 c_1 ... c_d`; the zero polynomial prints as `-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            None => write!(f, "-1"),
            Some(d) => {
                write!(f, "{d}")?;
                for c in &self.coeffs {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(self.modulus, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(self.modulus, coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.modulus, rhs.modulus);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.modulus);
        }
        let mut out = vec![self.modulus.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(self.modulus, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.modulus, self.coeffs.iter().map(|&c| -c).collect())
    }
}

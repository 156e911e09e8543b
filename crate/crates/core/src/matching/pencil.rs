//! Determinants and pfaffians of skew pencils `L + y H` through a single
//! characteristic polynomial.
//!
//! With `A = L + a H` nonsingular and `s = y - a`,
//!
//! ```text
//! det(L + y H) = det(A + s H) = det(A) * s^n * det(t I + A^{-1} H),  t = 1/s
//! ```
//!
//! so the pencil determinant is `det(A)` times the reversed characteristic
//! polynomial of `-A^{-1} H`, shifted back from `s` to `y`.

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeModulus};
use crate::matrix::SkewMatrix;
use crate::poly::Polynomial;

/// A pair of equally sized skew matrices read as `low + y * high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPencil {
    low: SkewMatrix,
    high: SkewMatrix,
}

impl SkewPencil {
    pub fn new(low: SkewMatrix, high: SkewMatrix) -> Result<Self> {
        if low.n() != high.n() {
            return Err(Error::DimensionMismatch(format!(
                "pencil parts of size {} and {}",
                low.n(),
                high.n()
            )));
        }
        if low.modulus() != high.modulus() {
            return Err(Error::ModulusMismatch {
                left: low.modulus().p(),
                right: high.modulus().p(),
            });
        }
        Ok(Self { low, high })
    }

    pub fn n(&self) -> usize {
        self.low.n()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.low.modulus()
    }

    pub fn low(&self) -> &SkewMatrix {
        &self.low
    }

    pub fn high(&self) -> &SkewMatrix {
        &self.high
    }

    pub(crate) fn low_mut(&mut self) -> &mut SkewMatrix {
        &mut self.low
    }

    pub(crate) fn high_mut(&mut self) -> &mut SkewMatrix {
        &mut self.high
    }

    /// The pencil evaluated at `y = alpha`.
    pub fn at(&self, alpha: FieldElement) -> SkewMatrix {
        self.low
            .add(&self.high.scale(alpha))
            .expect("pencil parts share a shape")
    }
}

/// `det(low + y high)` expanded around `y = 1`; fails with
/// [`Error::Singular`] when `low + high` is singular.
pub fn det_pencil(pencil: &SkewPencil) -> Result<Polynomial> {
    det_pencil_at(pencil, pencil.modulus().one())
}

/// `det(low + y high)` expanded around `y = alpha`; requires
/// `low + alpha high` to be nonsingular.
pub fn det_pencil_at(pencil: &SkewPencil, alpha: FieldElement) -> Result<Polynomial> {
    let n = pencil.n();
    let a = pencil.at(alpha);
    let (det_a, inv) = a.as_matrix().det_inv()?;
    let inv = inv.ok_or(Error::Singular)?;
    let m = inv.matmul(pencil.high.as_matrix())?.neg();
    // charpoly(-A^{-1}H)(t) = det(tI + A^{-1}H)
    let c = m.charpoly()?;
    let q = c.reverse(n)?;
    Ok(q.taylor_shift(-alpha).scale(det_a))
}

/// `det(low + y high)` for any pencil. Tries expansion points
/// `1, 0, 2, 3, ..., n` in turn; a nonzero pencil determinant of degree at
/// most `n` cannot vanish at all `n + 1` of them, so if every one is
/// singular the determinant is identically zero.
pub fn pencil_determinant(pencil: &SkewPencil) -> Result<Polynomial> {
    let m = pencil.modulus();
    let n = pencil.n() as u64;
    let points = std::iter::once(1u64).chain(std::iter::once(0)).chain(2..=n);
    for a in points.take(pencil.n() + 1) {
        match det_pencil_at(pencil, m.elem(a)) {
            Err(Error::Singular) => continue,
            other => return other,
        }
    }
    Ok(Polynomial::zero(m))
}

/// `pf(low + y high)` up to sign, from [`det_pencil`]. Same precondition.
pub fn pf_pencil<R: RngCore + ?Sized>(pencil: &SkewPencil, rng: &mut R) -> Result<Polynomial> {
    det_pencil(pencil)?.sqrt(rng)
}

/// `pf(low + y high)` up to sign for any pencil, from [`pencil_determinant`].
pub fn pencil_pfaffian<R: RngCore + ?Sized>(
    pencil: &SkewPencil,
    rng: &mut R,
) -> Result<Polynomial> {
    pencil_determinant(pencil)?.sqrt(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn md() -> PrimeModulus {
        PrimeModulus::new(1_048_583).unwrap()
    }

    fn random_skew(m: PrimeModulus, n: usize, density: u64, rng: &mut ChaCha8Rng) -> SkewMatrix {
        let mut s = SkewMatrix::zeros(m, n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.next_u64() % 100 < density {
                    s.set_pair(i, j, m.sample(rng));
                }
            }
        }
        s
    }

    fn interpolated_det(p: &SkewPencil) -> Polynomial {
        let m = p.modulus();
        let pts: Vec<_> = (0..=p.n() as u64)
            .map(|a| (m.elem(a + 17), p.at(m.elem(a + 17)).determinant()))
            .collect();
        Polynomial::interpolate(&pts).unwrap()
    }

    #[test]
    fn det_pencil_matches_interpolation() {
        let m = md();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in [2usize, 4, 6, 8] {
            for _ in 0..10 {
                let p = SkewPencil::new(
                    random_skew(m, n, 50, &mut rng),
                    random_skew(m, n, 50, &mut rng),
                )
                .unwrap();
                match det_pencil(&p) {
                    Ok(d) => assert_eq!(d, interpolated_det(&p)),
                    Err(Error::Singular) => assert!(p.at(m.one()).determinant().is_zero()),
                    Err(e) => panic!("{e}"),
                }
                assert_eq!(pencil_determinant(&p).unwrap(), interpolated_det(&p));
            }
        }
    }

    #[test]
    fn singular_at_one_falls_back_to_other_points() {
        let m = md();
        // low = -high makes low + high = 0, but low + 0*high is nonsingular
        let high = SkewMatrix::from_upper(m, 2, &[5]).unwrap();
        let low = high.scale(-m.one());
        let p = SkewPencil::new(low, high).unwrap();
        assert_eq!(det_pencil(&p), Err(Error::Singular));
        // det([[0, 5y-5], [5-5y, 0]]) = 25 (y - 1)^2
        let expected = Polynomial::from_i64s(m, &[25, -50, 25]);
        assert_eq!(pencil_determinant(&p).unwrap(), expected);
    }

    #[test]
    fn zero_pencil_has_zero_determinant() {
        let m = md();
        let p = SkewPencil::new(SkewMatrix::zeros(m, 4), SkewMatrix::zeros(m, 4)).unwrap();
        assert!(pencil_determinant(&p).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(pencil_pfaffian(&p, &mut rng).unwrap().is_zero());
    }

    #[test]
    fn pf_pencil_squares_back() {
        let m = md();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2usize, 4, 6] {
            let p = SkewPencil::new(
                random_skew(m, n, 70, &mut rng),
                random_skew(m, n, 70, &mut rng),
            )
            .unwrap();
            if let Ok(f) = pf_pencil(&p, &mut rng) {
                assert_eq!(&f * &f, det_pencil(&p).unwrap());
                assert!(f.degree().is_none_or(|d| d <= n / 2));
            }
        }
    }

    #[test]
    fn mismatched_parts_are_rejected() {
        let m = md();
        assert!(SkewPencil::new(SkewMatrix::zeros(m, 2), SkewMatrix::zeros(m, 4)).is_err());
    }
}

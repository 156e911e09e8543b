//! Arithmetic in the prime field GF(p) for odd primes p < 2^64.
//!
//! Elements carry their modulus so that mixing fields is caught at runtime.
//! Products are formed in 128-bit arithmetic and reduced immediately.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand_core::RngCore;

use crate::error::{Error, Result};

/// Smallest prime the default selection will ever return.
const DEFAULT_PRIME_FLOOR: u64 = 1 << 20;

/// An odd prime, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// Default modulus for an instance on `n` vertices: the smallest prime
    /// exceeding `max(2^20, 4 n^3)`.
    pub fn for_instance_size(n: usize) -> Self {
        Self {
            p: default_prime(n),
        }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    /// Checks `p > 4 n^2`, the minimum the randomized tests are run with.
    pub fn check_instance_size(self, n: usize) -> Result<()> {
        let required = 4u128 * (n as u128) * (n as u128);
        if (self.p as u128) > required {
            Ok(())
        } else {
            Err(Error::PrimeTooSmall {
                p: self.p,
                n,
                required: required.min(u64::MAX as u128) as u64,
            })
        }
    }

    /// Reduces `v` into the field.
    #[inline]
    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            p: self.p,
        }
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        let r = (v as i128).rem_euclid(self.p as i128);
        FieldElement {
            value: r as u64,
            p: self.p,
        }
    }

    #[inline]
    pub fn zero(self) -> FieldElement {
        FieldElement {
            value: 0,
            p: self.p,
        }
    }

    #[inline]
    pub fn one(self) -> FieldElement {
        FieldElement {
            value: 1,
            p: self.p,
        }
    }

    /// Uniform sample over all of GF(p). Draws whole 64-bit words and
    /// rejects the low `2^64 mod p` values so that every residue class is
    /// hit by exactly the same number of words.
    pub fn sample<R: RngCore + ?Sized>(self, rng: &mut R) -> FieldElement {
        let threshold = (u64::MAX % self.p + 1) % self.p;
        loop {
            let x = rng.next_u64();
            if x >= threshold {
                return FieldElement {
                    value: x % self.p,
                    p: self.p,
                };
            }
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Canonical representative in `[0, p)` together with `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

/// The three ring operations dispatched by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic: fails instead of panicking on a modulus mismatch.
pub fn arith(a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch {
            left: a.p,
            right: b.p,
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        PrimeModulus { p: self.p }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.modulus().one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(FieldElement {
            value: s0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }

    /// `self / rhs`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: FieldElement) -> Result<FieldElement> {
        Ok(self * rhs.inv()?)
    }

    /// Euler's criterion: `1` for nonzero squares, `p - 1` for non-squares, `0` for zero.
    pub fn legendre(self) -> FieldElement {
        self.pow((self.p - 1) / 2)
    }

    pub fn is_square(self) -> bool {
        self.legendre().value != self.p - 1
    }

    /// A square root by Tonelli-Shanks, or `None` for a non-residue.
    /// The non-residue needed by the general case is found by random search.
    pub fn sqrt<R: RngCore + ?Sized>(self, rng: &mut R) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let p = self.p;
        let m = self.modulus();
        if p % 4 == 3 {
            return Some(self.pow((p + 1) / 4));
        }

        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }

        // about two draws expected
        let z = loop {
            let z = m.sample(rng);
            if !z.is_zero() && !z.is_square() {
                break z;
            }
        };

        let mut order = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while !t.is_one() {
            // least i with t^(2^i) = 1
            let mut i = 0u32;
            let mut t2 = t;
            while !t2.is_one() {
                t2 *= t2;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(order - i - 1) {
                b *= b;
            }
            order = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        Some(r)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(a.p, b.p, "field elements from different moduli");
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        same_field(&self, &rhs);
        let (s, overflow) = self.value.overflowing_add(rhs.value);
        let value = if overflow || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        };
        FieldElement { value, p: self.p }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        same_field(&self, &rhs);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + (self.p - rhs.value)
        };
        FieldElement { value, p: self.p }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        same_field(&self, &rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        let value = if self.value == 0 {
            0
        } else {
            self.p - self.value
        };
        FieldElement { value, p: self.p }
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    #[inline]
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
///
/// Panics if no such prime fits in 64 bits.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.checked_add(1).expect("prime search overflow");
    loop {
        if is_prime(c) {
            return c;
        }
        c = c.checked_add(1).expect("prime search overflow");
    }
}

/// Smallest prime exceeding `max(2^20, 4 n^3)`.
pub fn default_prime(n: usize) -> u64 {
    let cube = 4u128 * (n as u128).pow(3);
    let floor = cube.max(DEFAULT_PRIME_FLOOR as u128);
    next_prime(u64::try_from(floor).expect("instance too large for a 64-bit prime"))
}

//! Coefficient domains: the rationals, or a prime field of odd characteristic.
//!
//! Coefficients are always carried as `BigRational`; a prime-field domain
//! normalizes after every operation to a denominator-free representative in
//! `[0, p)`. Keeping one concrete coefficient type lets the whole kernel stay
//! monomorphic while the constant `1/2` (required by the chart relations)
//! remains exact in both domains for odd `p`.

use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::KernelError;

/// The coefficient domain of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoeffDomain {
    /// Arbitrary-precision rationals.
    Rationals,
    /// The prime field with `p` elements, `p` an odd prime.
    PrimeField(u64),
}

impl CoeffDomain {
    /// Builds a prime-field domain, rejecting `2` and composites.
    pub fn prime_field(p: u64) -> Result<Self, KernelError> {
        if p == 2 {
            return Err(KernelError::BadModulus(
                "characteristic 2 is excluded (the relations use 1/2)".to_string(),
            ));
        }
        if !is_prime(p) {
            return Err(KernelError::BadModulus(p.to_string()));
        }
        Ok(CoeffDomain::PrimeField(p))
    }

    /// Characteristic of the domain (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffDomain::Rationals => 0,
            CoeffDomain::PrimeField(p) => *p,
        }
    }

    /// Canonical representative of a rational in this domain.
    ///
    /// Over the rationals this is the identity (values are already reduced).
    /// Over `F_p` the value is `num * den^{-1} mod p` in `[0, p)`; a
    /// denominator divisible by `p` is an error.
    pub fn normalize(&self, c: BigRational) -> Result<BigRational, KernelError> {
        match self {
            CoeffDomain::Rationals => Ok(c),
            CoeffDomain::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let num = c.numer().mod_floor_big(&p_big);
                let den = c.denom().mod_floor_big(&p_big);
                if den.is_zero() {
                    return Err(KernelError::CharacteristicClash(alloc::format!(
                        "denominator {} is divisible by {}",
                        c.denom(),
                        p
                    )));
                }
                let inv = mod_inverse(&den, &p_big).ok_or(KernelError::DivisionByZero)?;
                let r = (num * inv) % &p_big;
                let r = if r.is_negative() { r + &p_big } else { r };
                Ok(BigRational::from_integer(r))
            }
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn invert(&self, c: &BigRational) -> Result<BigRational, KernelError> {
        if c.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        match self {
            CoeffDomain::Rationals => Ok(c.recip()),
            CoeffDomain::PrimeField(_) => self.normalize(c.recip()),
        }
    }

    /// Checks field axioms (associativity, distributivity, inverses) on a
    /// sampled triple. Used by randomized self-tests.
    pub fn axioms_hold(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> bool {
        let n = |x: BigRational| self.normalize(x).expect("sample in domain");
        let ab_c = n(n(a * b) * c);
        let a_bc = n(a * n(b * c));
        if ab_c != a_bc {
            return false;
        }
        let lhs = n(a * n(b + c));
        let rhs = n(n(a * b) + n(a * c));
        if lhs != rhs {
            return false;
        }
        if !a.is_zero() {
            let inv = self.invert(a).expect("nonzero");
            if n(a * inv) != BigRational::one() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Rationals => write!(f, "QQ"),
            CoeffDomain::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Extended-Euclid inverse of `a` modulo `m`, if coprime.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor_big(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t);
    }
    if r0 != BigInt::one() {
        return None;
    }
    Some(t0.mod_floor_big(m))
}

/// Deterministic trial-division primality; moduli here are tiny.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

//! Standard lattices and their bilinear pairings over the base ring,
//! represented exactly as matrices with entries in powers of `pi`.
//!
//! A standard lattice is determined by the exponent of the uniformizer on
//! each basis line; its rank-2n base-ring basis is the chosen basis and its
//! `pi`-multiple. The alternating and symmetric pairing values on monomial
//! vectors are signed powers of the base uniformizer `pi^2`, so the Gram
//! matrices live in the one-variable ring `[pi]` and all identities are
//! checked by exact polynomial arithmetic.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::KernelError;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// A standard lattice: line `j` (1-based) is spanned by `pi^{exps[j-1]} e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardLattice {
    pub n: usize,
    pub index: i64,
    pub exps: Vec<i64>,
}

/// The standard lattice with chain index `i`: writing `i = b*n + c` with
/// `0 <= c < n`, lines `1..=c` carry `pi^{-b-1}` and the rest `pi^{-b}`.
pub fn standard_lattice(n: usize, index: i64) -> StandardLattice {
    let nn = n as i64;
    let b = index.div_euclid(nn);
    let c = index.rem_euclid(nn);
    let exps = (1..=nn)
        .map(|j| if j <= c { -b - 1 } else { -b })
        .collect();
    StandardLattice { n, index, exps }
}

impl StandardLattice {
    /// The rank-2n basis over the base ring: the lattice basis followed by
    /// its `pi`-multiple. Entries are `(exponent, line)` pairs.
    pub fn basis(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = self
            .exps
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, j + 1))
            .collect();
        out.extend(self.exps.iter().enumerate().map(|(j, &e)| (e + 1, j + 1)));
        out
    }

    /// Multiplying by the uniformizer shifts the chain index down by `n`.
    pub fn scaled_by_pi(&self) -> StandardLattice {
        StandardLattice {
            n: self.n,
            index: self.index - self.n as i64,
            exps: self.exps.iter().map(|e| e + 1).collect(),
        }
    }
}

/// Exact pairing data between two standard lattices.
#[derive(Debug, Clone)]
pub struct PairingData {
    pub ring: PolyRing,
    /// Gram matrix of the alternating pairing on the two rank-2n bases.
    pub gram_skew: PolyMatrix,
    /// Gram matrix of the symmetric pairing.
    pub gram_sym: PolyMatrix,
    /// Matrix of the uniformizer action on the left lattice basis.
    pub pi_left: PolyMatrix,
    /// Matrix of the uniformizer action on the right lattice basis.
    pub pi_right: PolyMatrix,
}

fn pairing_ring() -> PolyRing {
    PolyRing::new(&["pi"], MonomialOrder::GrevLex).expect("pairing ring")
}

/// Signed power of `pi`, with negative exponents rejected (they would leave
/// the base ring; for dual lattice pairs they never occur).
fn pi_power(ring: &PolyRing, sign: i64, e: i64) -> Result<Polynomial, KernelError> {
    if e < 0 {
        return Err(KernelError::OutOfRange(alloc::format!(
            "pairing value leaves the base ring (pi^{e})"
        )));
    }
    let p = Polynomial::pi(ring).pow(e as u32)?;
    p.scale(&BigRational::from_integer(sign.into()))
}

/// The alternating pairing of monomial vectors `pi^a e_i` and `pi^b e_j`:
/// nonzero only on dual lines with `a + b` odd, where it is
/// `(-1)^a pi^{a+b-1}`.
fn skew_value(
    ring: &PolyRing,
    n: usize,
    (a, i): (i64, usize),
    (b, j): (i64, usize),
) -> Result<Polynomial, KernelError> {
    if i + j != n + 1 || (a + b).rem_euclid(2) == 0 {
        return Ok(Polynomial::zero(ring));
    }
    let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
    pi_power(ring, sign, a + b - 1)
}

/// The symmetric pairing: nonzero only on dual lines with `a + b` even,
/// where it is `(-1)^a pi^{a+b}`.
fn sym_value(
    ring: &PolyRing,
    n: usize,
    (a, i): (i64, usize),
    (b, j): (i64, usize),
) -> Result<Polynomial, KernelError> {
    if i + j != n + 1 || (a + b).rem_euclid(2) == 1 {
        return Ok(Polynomial::zero(ring));
    }
    let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
    pi_power(ring, sign, a + b)
}

/// Matrix of multiplication by the uniformizer on a lattice basis: the first
/// n basis vectors map to the second n, which map back scaled by `pi^2`.
fn pi_action(ring: &PolyRing, lat: &StandardLattice) -> PolyMatrix {
    let n = lat.n;
    let mut m = PolyMatrix::zero(ring, 2 * n, 2 * n);
    let pisq = Polynomial::pi(ring).pow(2).expect("pi^2");
    for j in 0..n {
        *m.at_mut(n + j, j) = Polynomial::one(ring);
        *m.at_mut(j, n + j) = pisq.clone();
    }
    m
}

/// Builds the exact Gram and action matrices for the pair
/// `(Lambda_{-index}, Lambda_index)` (alternating duality) and
/// `(Lambda_index, Lambda_{n-index})` (symmetric duality).
pub fn pairing_check_data(n: usize, index: i64) -> Result<PairingCheck, KernelError> {
    if n < 2 {
        return Err(KernelError::OutOfRange("n < 2".into()));
    }
    let ring = pairing_ring();
    let left = standard_lattice(n, -index);
    let right = standard_lattice(n, index);
    let lb = left.basis();
    let rb = right.basis();
    let mut gram_skew = PolyMatrix::zero(&ring, 2 * n, 2 * n);
    for (r, &lv) in lb.iter().enumerate() {
        for (c, &rv) in rb.iter().enumerate() {
            *gram_skew.at_mut(r, c) = skew_value(&ring, n, lv, rv)?;
        }
    }
    let sym_right = standard_lattice(n, n as i64 - index);
    let sb = sym_right.basis();
    let lb2 = right.basis();
    let mut gram_sym = PolyMatrix::zero(&ring, 2 * n, 2 * n);
    for (r, &lv) in lb2.iter().enumerate() {
        for (c, &rv) in sb.iter().enumerate() {
            *gram_sym.at_mut(r, c) = sym_value(&ring, n, lv, rv)?;
        }
    }
    let data = PairingData {
        ring: ring.clone(),
        gram_skew,
        gram_sym,
        pi_left: pi_action(&ring, &left),
        pi_right: pi_action(&ring, &right),
    };
    Ok(PairingCheck {
        n,
        index,
        data,
        left,
        right,
    })
}

/// Pairing data plus the lattices it came from.
#[derive(Debug, Clone)]
pub struct PairingCheck {
    pub n: usize,
    pub index: i64,
    pub data: PairingData,
    pub left: StandardLattice,
    pub right: StandardLattice,
}

impl PairingCheck {
    /// Perfectness: both Gram determinants are units (`+-1`).
    pub fn perfect(&self) -> Result<bool, KernelError> {
        let ring = &self.data.ring;
        let one = Polynomial::one(ring);
        let d1 = self.data.gram_skew.det()?;
        let d2 = self.data.gram_sym.det()?;
        Ok((d1 == one || d1 == one.neg()) && (d2 == one || d2 == one.neg()))
    }

    /// The sign identity of the uniformizer against the alternating pairing:
    /// `<Pi v, w> = <v, -Pi w>` as a Gram-matrix identity.
    pub fn skew_identity(&self) -> Result<bool, KernelError> {
        let lhs = self.data.pi_left.transpose().mul(&self.data.gram_skew)?;
        let rhs = self.data.gram_skew.mul(&self.data.pi_right)?.neg();
        Ok(lhs == rhs)
    }

    /// Scaling by the uniformizer lands exactly on the lattice n steps down.
    pub fn shift_isomorphism(&self) -> bool {
        let shifted = self.right.scaled_by_pi();
        shifted == standard_lattice(self.n, self.index - self.n as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_exponents() {
        // index 1 at n = 2: first line dips one deeper
        let l = standard_lattice(2, 1);
        assert_eq!(l.exps, alloc::vec![-1, 0]);
        let l0 = standard_lattice(2, 0);
        assert_eq!(l0.exps, alloc::vec![0, 0]);
        let lm1 = standard_lattice(2, -1);
        assert_eq!(lm1.exps, alloc::vec![0, 1]);
    }

    #[test]
    fn small_pairings_are_perfect() {
        for n in 2..=8usize {
            for k in 0..=n / 2 {
                let chk = pairing_check_data(n, k as i64).unwrap();
                assert!(chk.perfect().unwrap(), "n={n} k={k}");
                assert!(chk.skew_identity().unwrap(), "n={n} k={k}");
                assert!(chk.shift_isomorphism());
            }
        }
    }

    #[test]
    fn hand_checked_2_0() {
        let chk = pairing_check_data(2, 0).unwrap();
        // basis (e1, e2, pi e1, pi e2) against itself: the nonzero skew
        // values sit on (e_i, pi e_j) with i + j = 3
        let g = &chk.data.gram_skew;
        let ring = &chk.data.ring;
        assert_eq!(*g.at(0, 3), Polynomial::one(ring));
        assert_eq!(*g.at(1, 2), Polynomial::one(ring));
        assert_eq!(*g.at(2, 1), Polynomial::one(ring).neg());
        assert_eq!(*g.at(3, 0), Polynomial::one(ring).neg());
        assert!(g.at(0, 0).is_zero());
    }
}

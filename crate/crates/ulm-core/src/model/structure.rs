//! The constant structure matrices of an instance: the antidiagonal unit
//! matrix `H`, the symplectic block matrix `J`, the symmetric-form matrix
//! `Upsilon`, and the two transition idempotents.

use crate::error::KernelError;
use crate::matrix::PolyMatrix;
use crate::model::InstanceParams;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Structure matrices over a chosen ring.
#[derive(Debug, Clone)]
pub struct StructureMatrices {
    /// `n x n` antidiagonal units.
    pub h: PolyMatrix,
    /// `2k x 2k` block matrix `[[0, H], [-H, 0]]`.
    pub j: PolyMatrix,
    /// `n x n` block antidiagonal `[[0, 0, H], [0, H, 0], [-H, 0, 0]]`
    /// with block sizes `k, n-2k, k`.
    pub upsilon: PolyMatrix,
    /// Transition idempotent `diag(I_k, 0, I_k)`.
    pub lambda_k: PolyMatrix,
    /// Transition idempotent `diag(0, I_{n-2k}, 0)`.
    pub lambda_nk: PolyMatrix,
}

/// Builds the structure matrices of `(n, k)` over `ring`.
pub fn build_structure(
    ring: &PolyRing,
    inst: &InstanceParams,
) -> Result<StructureMatrices, KernelError> {
    let (n, k) = (inst.n, inst.k);
    let h = PolyMatrix::antidiag(ring, n);
    let hk = PolyMatrix::antidiag(ring, k);
    let hm = PolyMatrix::antidiag(ring, n - 2 * k);

    let mut j = PolyMatrix::zero(ring, 2 * k, 2 * k);
    paste(&mut j, &hk, 0, k, false);
    paste(&mut j, &hk, k, 0, true);

    let mut upsilon = PolyMatrix::zero(ring, n, n);
    paste(&mut upsilon, &hk, 0, n - k, false);
    paste(&mut upsilon, &hm, k, k, false);
    paste(&mut upsilon, &hk, n - k, 0, true);

    let mut lambda_k = PolyMatrix::zero(ring, n, n);
    let mut lambda_nk = PolyMatrix::zero(ring, n, n);
    for i in 0..n {
        let mid = (k..n - k).contains(&i);
        if mid {
            *lambda_nk.at_mut(i, i) = Polynomial::one(ring);
        } else {
            *lambda_k.at_mut(i, i) = Polynomial::one(ring);
        }
    }

    Ok(StructureMatrices {
        h,
        j,
        upsilon,
        lambda_k,
        lambda_nk,
    })
}

fn paste(dst: &mut PolyMatrix, src: &PolyMatrix, r0: usize, c0: usize, negate: bool) {
    for r in 0..src.rows() {
        for c in 0..src.cols() {
            let v = if negate {
                src.at(r, c).neg()
            } else {
                src.at(r, c).clone()
            };
            *dst.at_mut(r0 + r, c0 + c) = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::adjoint;
    use crate::ring::MonomialOrder;

    fn setup(n: usize, k: usize) -> (PolyRing, StructureMatrices) {
        let ring = PolyRing::new(&["x", "pi"], MonomialOrder::GrevLex).unwrap();
        let inst = InstanceParams::new(n, k).unwrap();
        let s = build_structure(&ring, &inst).unwrap();
        (ring, s)
    }

    #[test]
    fn smallest_case() {
        let (ring, s) = setup(2, 0);
        // H = [[0,1],[1,0]]
        assert_eq!(*s.h.at(0, 1), Polynomial::one(&ring));
        assert_eq!(*s.h.at(1, 0), Polynomial::one(&ring));
        assert!(s.h.at(0, 0).is_zero());
    }

    #[test]
    fn invariants_up_to_rank_8() {
        for n in 2..=8usize {
            for k in 0..=n / 2 {
                let (ring, s) = setup(n, k);
                let id_n = PolyMatrix::identity(&ring, n);
                // H^2 = I, H^t = H
                assert_eq!(s.h.mul(&s.h).unwrap(), id_n);
                assert_eq!(s.h.transpose(), s.h);
                // J^2 = -I
                if k > 0 {
                    let id_2k = PolyMatrix::identity(&ring, 2 * k);
                    assert_eq!(s.j.mul(&s.j).unwrap(), id_2k.neg());
                }
                // Upsilon * Upsilon^t = I
                assert_eq!(s.upsilon.mul(&s.upsilon.transpose()).unwrap(), id_n);
                // transition idempotents: complementary, annihilating
                assert!(s
                    .lambda_nk
                    .mul(&s.lambda_k)
                    .unwrap()
                    .entries()
                    .iter()
                    .all(|e| e.is_zero()));
                assert_eq!(s.lambda_k.add(&s.lambda_nk).unwrap(), id_n);
                // ad is an involution
                let m = s.upsilon.clone();
                assert_eq!(adjoint(&adjoint(&m)), m);
            }
        }
    }

    #[test]
    fn upsilon_blocks_4_1() {
        let (ring, s) = setup(4, 1);
        // [[0,0,H1],[0,H2,0],[-H1,0,0]] blockwise
        assert_eq!(*s.upsilon.at(0, 3), Polynomial::one(&ring));
        assert_eq!(*s.upsilon.at(1, 2), Polynomial::one(&ring));
        assert_eq!(*s.upsilon.at(2, 1), Polynomial::one(&ring));
        assert_eq!(
            *s.upsilon.at(3, 0),
            Polynomial::one(&ring).neg()
        );
        for i in 0..4 {
            assert!(s.upsilon.at(i, i).is_zero());
        }
    }
}

//! Incidence presentations of the exceptional divisors.
//!
//! Two bihomogeneous descriptions are produced for the oracle: the naive
//! exceptional divisor as pairs of lines linked by the two transition
//! idempotents, and the pairs-of-lines realization of the blow-up of
//! projective space along a linear subspace. Both are handled purely by
//! affine-cone enumeration; the symbolic engine never sees them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::KernelError;
use crate::matrix::PolyMatrix;
use crate::model::structure::build_structure;
use crate::model::{var, InstanceParams};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// A bihomogeneous incidence presentation: vanishing conditions on the
/// affine cones of two projective factors.
#[derive(Debug, Clone)]
pub struct IncidenceSpec {
    pub ring: PolyRing,
    /// Polynomials that must vanish on a pair of cone points.
    pub conditions: Vec<Polynomial>,
    /// The two groups of cone coordinates (each must be nonzero as a vector).
    pub factors: [Vec<String>; 2],
}

/// The two presentations attached to an instance.
#[derive(Debug, Clone)]
pub struct ExcIncidence {
    /// Naive exceptional divisor: `(a, b)` with `lambda_k a` in the span of
    /// `b` and `lambda_{n-k} b` in the span of `a`, as 2x2 minor vanishing.
    pub nexc: IncidenceSpec,
    /// Extra conditions cutting the two components inside `nexc`.
    pub exc1_extra: Vec<Polynomial>,
    pub exc2_extra: Vec<Polynomial>,
    /// Pairs of lines `(L1, L2)` with the middle-block projection of `L1`
    /// contained in `L2`: the blow-up of projective (n-1)-space along the
    /// outer linear subspace.
    pub bl: IncidenceSpec,
}

fn span_minors(
    ring: &PolyRing,
    left: &PolyMatrix,
    right: &PolyMatrix,
) -> Result<Vec<Polynomial>, KernelError> {
    // all 2x2 minors of the n x 2 matrix [left | right]
    let n = left.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = left
                .at(i, 0)
                .mul(right.at(j, 0))?
                .sub(&left.at(j, 0).mul(right.at(i, 0))?)?;
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    let _ = ring;
    Ok(out)
}

/// Builds both incidence presentations for `(n, k)`.
///
/// Requires `2k` nonzero mod `n` (so both transition idempotents are proper).
pub fn build_exc_incidence(n: usize, k: usize) -> Result<ExcIncidence, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    if k == 0 {
        return Err(KernelError::OutOfRange(
            "the naive exceptional divisor needs 2k nonzero mod n".to_string(),
        ));
    }
    // quiver incidence ring: a_1..a_n, b_1..b_n
    let mut names: Vec<String> = (1..=n).map(|i| var('a', i)).collect();
    names.extend((1..=n).map(|i| var('b', i)));
    names.push("pi".to_string());
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(&refs, MonomialOrder::GrevLex)?;
    let st = build_structure(&ring, &inst)?;
    let avec = {
        let entries: Vec<Polynomial> = (1..=n)
            .map(|i| Polynomial::var_named(&ring, &var('a', i)).unwrap())
            .collect();
        PolyMatrix::new(&ring, n, 1, entries)
    };
    let bvec = {
        let entries: Vec<Polynomial> = (1..=n)
            .map(|i| Polynomial::var_named(&ring, &var('b', i)).unwrap())
            .collect();
        PolyMatrix::new(&ring, n, 1, entries)
    };
    let la = st.lambda_k.mul(&avec)?;
    let lb = st.lambda_nk.mul(&bvec)?;
    let mut conditions = span_minors(&ring, &la, &bvec)?;
    conditions.extend(span_minors(&ring, &lb, &avec)?);
    let exc1_extra: Vec<Polynomial> = la.entries().iter().filter(|e| !e.is_zero()).cloned().collect();
    let exc2_extra: Vec<Polynomial> = lb.entries().iter().filter(|e| !e.is_zero()).cloned().collect();
    let nexc = IncidenceSpec {
        ring: ring.clone(),
        conditions,
        factors: [
            (1..=n).map(|i| var('a', i)).collect(),
            (1..=n).map(|i| var('b', i)).collect(),
        ],
    };

    // pairs-of-lines ring: T_1..T_n (cone of the big space), U_1..U_{n-2k}
    let mut names: Vec<String> = (1..=n).map(|i| var('T', i)).collect();
    names.extend((1..=n - 2 * k).map(|i| var('U', i)));
    names.push("pi".to_string());
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let blring = PolyRing::new(&refs, MonomialOrder::GrevLex)?;
    // middle-block projection of T against U
    let proj = {
        let entries: Vec<Polynomial> = (k + 1..=n - k)
            .map(|i| Polynomial::var_named(&blring, &var('T', i)).unwrap())
            .collect();
        PolyMatrix::new(&blring, n - 2 * k, 1, entries)
    };
    let uvec = {
        let entries: Vec<Polynomial> = (1..=n - 2 * k)
            .map(|i| Polynomial::var_named(&blring, &var('U', i)).unwrap())
            .collect();
        PolyMatrix::new(&blring, n - 2 * k, 1, entries)
    };
    let bl_conditions = span_minors(&blring, &proj, &uvec)?;
    let bl = IncidenceSpec {
        ring: blring,
        conditions: bl_conditions,
        factors: [
            (1..=n).map(|i| var('T', i)).collect(),
            (1..=n - 2 * k).map(|i| var('U', i)).collect(),
        ],
    };

    Ok(ExcIncidence {
        nexc,
        exc1_extra,
        exc2_extra,
        bl,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    #[test]
    fn rejects_self_dual_and_pi_modular() {
        assert!(build_exc_incidence(4, 0).is_err());
        assert!(build_exc_incidence(4, 2).is_err());
        assert!(build_exc_incidence(4, 1).is_ok());
    }

    #[test]
    fn middle_supported_line_is_unconstrained() {
        // a supported in the middle block kills lambda_k * a, so any b is
        // admissible for the first span condition
        let inc = build_exc_incidence(5, 1).unwrap();
        let ring = &inc.nexc.ring;
        let mut point: BTreeMap<String, u64> = BTreeMap::new();
        for i in 1..=5 {
            point.insert(var('a', i), if (2..=4).contains(&i) { 1 } else { 0 });
            point.insert(var('b', i), (i % 3) as u64);
        }
        point.insert("pi".to_string(), 0);
        // evaluate only the lambda_k-side minors: rows of lambda_k * a are 0
        let st_minors = &inc.nexc.conditions[..inc.nexc.conditions.len() / 2];
        let _ = ring;
        for m in st_minors {
            assert_eq!(m.eval_point(&point, 3).unwrap(), 0);
        }
    }

    #[test]
    fn condition_counts() {
        let inc = build_exc_incidence(4, 1).unwrap();
        // two span conditions, C(4,2) = 6 minors each, minus vanishing rows:
        // lambda_k a has 2 zero entries, so minors with both rows zero vanish
        assert!(!inc.nexc.conditions.is_empty());
        assert_eq!(inc.bl.factors[0].len(), 4);
        assert_eq!(inc.bl.factors[1].len(), 2);
        assert_eq!(inc.bl.conditions.len(), 1);
    }
}

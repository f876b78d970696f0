//! Polynomial rings: named ordered variables, a monomial order, and a
//! distinguished uniformizer variable `pi` ranked last.
//!
//! `pi` is an ordinary polynomial variable; the base uniformizer square
//! `pi^2` plays the role of the base constant wherever the relations need it.
//! The generic fiber of an ideal is reached by saturation at `pi`, the
//! special fiber by adjoining `pi`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::coeff::CoeffDomain;
use crate::error::KernelError;

/// Index of a variable inside its ring.
pub type VarId = usize;

/// Name of the distinguished uniformizer variable.
pub const PI: &str = "pi";

/// Monomial order on exponent vectors.
///
/// `Block(k)` compares the first `k` variables as a grevlex block, then the
/// remaining variables grevlex; it is the elimination order used to drop the
/// top block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block(usize),
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

#[derive(Debug)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
    domain: CoeffDomain,
}

/// A polynomial ring handle; cheap to clone and share.
#[derive(Clone)]
pub struct PolyRing {
    data: Arc<RingData>,
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolyRing({} ; {} ; {})",
            self.data.vars.join(","),
            self.data.order,
            self.data.domain
        )
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.vars == other.data.vars
                && self.data.order == other.data.order
                && self.data.domain == other.data.domain)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    /// Builds a ring over the rationals. `vars` must be distinct, nonempty,
    /// and contain `pi`, which is moved to the last rank if not already there.
    pub fn new(vars: &[&str], order: MonomialOrder) -> Result<Self, KernelError> {
        Self::with_domain(vars, order, CoeffDomain::Rationals)
    }

    /// Builds a ring with an explicit coefficient domain.
    pub fn with_domain(
        vars: &[&str],
        order: MonomialOrder,
        domain: CoeffDomain,
    ) -> Result<Self, KernelError> {
        if vars.is_empty() {
            return Err(KernelError::BadRing("empty variable list".to_string()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if names.iter().any(|n| n == v) {
                return Err(KernelError::BadRing(alloc::format!(
                    "duplicate variable {v}"
                )));
            }
            if !valid_name(v) {
                return Err(KernelError::BadRing(alloc::format!(
                    "invalid variable name {v}"
                )));
            }
            names.push((*v).to_string());
        }
        let pi_pos = names
            .iter()
            .position(|n| n == PI)
            .ok_or_else(|| KernelError::BadRing("missing uniformizer variable pi".to_string()))?;
        if pi_pos != names.len() - 1 {
            let pi = names.remove(pi_pos);
            names.push(pi);
        }
        if let MonomialOrder::Block(k) = order {
            if k == 0 || k >= names.len() {
                return Err(KernelError::BadRing(alloc::format!(
                    "block split {k} out of range"
                )));
            }
        }
        Ok(PolyRing {
            data: Arc::new(RingData {
                vars: names,
                order,
                domain,
            }),
        })
    }

    pub fn nvars(&self) -> usize {
        self.data.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.data.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.data.order
    }

    pub fn domain(&self) -> CoeffDomain {
        self.data.domain
    }

    /// Index of the uniformizer variable (always the last one).
    pub fn pi_id(&self) -> VarId {
        self.data.vars.len() - 1
    }

    pub fn var_id(&self, name: &str) -> Result<VarId, KernelError> {
        self.data
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| KernelError::UnknownVariable(name.to_string()))
    }

    pub fn var_name(&self, id: VarId) -> &str {
        &self.data.vars[id]
    }

    /// Same variable table and domain, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self, KernelError> {
        let names: Vec<&str> = self.data.vars.iter().map(|s| s.as_str()).collect();
        Self::with_domain(&names, order, self.data.domain)
    }

    /// Compares exponent vectors in this ring's monomial order.
    pub fn cmp_mono(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self.data.order {
            MonomialOrder::GrevLex => cmp_grevlex(a, b),
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::Block(k) => {
                cmp_grevlex(&a[..k], &b[..k]).then_with(|| cmp_grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn cmp_lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Tie: the last position where they differ decides, smaller exponent wins.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rules() {
        let r = PolyRing::new(&["x", "y", "pi"], MonomialOrder::GrevLex).unwrap();
        assert_eq!(r.vars(), &["x", "y", "pi"]);
        assert_eq!(r.pi_id(), 2);
        assert!(PolyRing::new(&["x", "x", "pi"], MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&[], MonomialOrder::GrevLex).is_err());
        // pi is moved to the last rank
        let r = PolyRing::new(&["pi", "a", "b"], MonomialOrder::GrevLex).unwrap();
        assert_eq!(r.vars(), &["a", "b", "pi"]);
    }

    #[test]
    fn block_order_is_elimination_ready() {
        let r = PolyRing::new(&["s_1", "s_2", "pi"], MonomialOrder::Block(2)).unwrap();
        // any monomial containing the top block dominates any block-free one
        assert_eq!(r.cmp_mono(&[1, 0, 0], &[0, 0, 7]), Ordering::Greater);
        assert_eq!(r.cmp_mono(&[0, 1, 0], &[0, 0, 7]), Ordering::Greater);
    }

    #[test]
    fn grevlex_examples() {
        let r = PolyRing::new(&["x", "y", "z", "pi"], MonomialOrder::GrevLex).unwrap();
        // x^2 > x*y > y^2 > x*z ... classic grevlex on 3 vars
        assert_eq!(r.cmp_mono(&[2, 0, 0, 0], &[1, 1, 0, 0]), Ordering::Greater);
        assert_eq!(r.cmp_mono(&[1, 1, 0, 0], &[0, 2, 0, 0]), Ordering::Greater);
        assert_eq!(r.cmp_mono(&[0, 2, 0, 0], &[1, 0, 1, 0]), Ordering::Greater);
        assert_eq!(r.cmp_mono(&[1, 0, 0, 0], &[1, 0, 0, 0]), Ordering::Equal);
    }

    #[test]
    fn lex_examples() {
        let r = PolyRing::new(&["x", "y", "pi"], MonomialOrder::Lex).unwrap();
        assert_eq!(r.cmp_mono(&[1, 0, 0], &[0, 9, 9]), Ordering::Greater);
    }
}

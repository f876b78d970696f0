//! Builders for the paper objects: structure matrices, chart ideals of the
//! local / Krämer / splitting / blow-up families, reduced class
//! presentations, special-fiber components, exceptional-divisor incidence
//! data and lattice pairings.
//!
//! Conventions used throughout:
//! - indices are 1-based in the public API; `dual(i) = n + 1 - i`;
//! - the middle index range is `k+1 ..= n-k`, everything else is "outer";
//! - the standard-basis matrix of the filtration is the one whose blocks read
//!   `[[D, M, C], [F, X4, E], [B, L, A]]`; the reordered arrangement is its
//!   simultaneous row/column permutation moving the high block first.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::KernelError;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

pub mod blowup;
pub mod charts;
pub mod incidence;
pub mod kramer;
pub mod local;
pub mod pairing;
pub mod structure;

pub use structure::StructureMatrices;

/// Classification of the lattice type index `k` at rank `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    SelfDual,
    PiModular,
    AlmostPiModular,
    Yu,
    StronglyNonSpecial,
}

impl CaseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseKind::SelfDual => "self-dual",
            CaseKind::PiModular => "pi-modular",
            CaseKind::AlmostPiModular => "almost-pi-modular",
            CaseKind::Yu => "yu",
            CaseKind::StronglyNonSpecial => "strongly-non-special",
        }
    }

    /// Number of irreducible components of the local-model special fiber.
    /// The splitting model has one more (the exceptional divisor).
    pub fn component_count(&self) -> Option<usize> {
        match self {
            CaseKind::SelfDual => Some(1),
            CaseKind::AlmostPiModular => Some(1),
            CaseKind::Yu => Some(3),
            CaseKind::StronglyNonSpecial => Some(2),
            CaseKind::PiModular => None,
        }
    }
}

/// Instance parameters: rank `n >= 2`, type index `0 <= k <= n/2`,
/// signature fixed at `(n-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceParams {
    pub n: usize,
    pub k: usize,
    pub case: CaseKind,
}

impl InstanceParams {
    pub fn new(n: usize, k: usize) -> Result<Self, KernelError> {
        let case = classify_case(n, k)?;
        Ok(InstanceParams { n, k, case })
    }

    /// Errors when the instance is pi-modular (no worst-point charts exist).
    pub fn require_charts(&self) -> Result<(), KernelError> {
        if self.case == CaseKind::PiModular {
            return Err(KernelError::PiModular {
                n: self.n,
                k: self.k,
            });
        }
        Ok(())
    }
}

/// Classifies `(n, k)`; `k` must satisfy `0 <= k <= floor(n/2)`.
pub fn classify_case(n: usize, k: usize) -> Result<CaseKind, KernelError> {
    if n < 2 {
        return Err(KernelError::OutOfRange(alloc::format!("n = {n} < 2")));
    }
    if k > n / 2 {
        return Err(KernelError::OutOfRange(alloc::format!(
            "k = {k} out of range for n = {n}"
        )));
    }
    Ok(if k == 0 {
        CaseKind::SelfDual
    } else if n == 2 * k {
        CaseKind::PiModular
    } else if n == 2 * k + 1 {
        CaseKind::AlmostPiModular
    } else if n == 2 * (k + 1) {
        CaseKind::Yu
    } else {
        CaseKind::StronglyNonSpecial
    })
}

/// The dual index `n + 1 - i` (1-based).
pub fn dual(n: usize, i: usize) -> usize {
    n + 1 - i
}

/// Sign of the symmetric-form matrix row `i`: `+1` for `i <= n-k`, `-1` above.
pub fn eps(n: usize, k: usize, i: usize) -> i64 {
    if i <= n - k {
        1
    } else {
        -1
    }
}

/// True for the middle index range `k+1 ..= n-k`.
pub fn is_mid(n: usize, k: usize, i: usize) -> bool {
    (k + 1..=n - k).contains(&i)
}

/// Chart families built by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Local,
    Kramer,
    Simplified,
    Class,
    Spl,
    Blowup,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Local => "local",
            Family::Kramer => "kramer",
            Family::Simplified => "simplified",
            Family::Class => "class",
            Family::Spl => "spl",
            Family::Blowup => "blowup",
        }
    }
}

/// The four normalization classes of the worst-point charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChartClass {
    I,
    II,
    III,
    IV,
}

impl ChartClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChartClass::I => "i",
            ChartClass::II => "ii",
            ChartClass::III => "iii",
            ChartClass::IV => "iv",
        }
    }

    pub fn parse(s: &str) -> Option<ChartClass> {
        match s {
            "i" => Some(ChartClass::I),
            "ii" => Some(ChartClass::II),
            "iii" => Some(ChartClass::III),
            "iv" => Some(ChartClass::IV),
            _ => None,
        }
    }
}

/// Class of a model chart `(alpha, beta)`: which blocks the two normalized
/// coordinates fall into.
pub fn classify_chart(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
) -> Result<ChartClass, KernelError> {
    if alpha == 0 || alpha > n || beta == 0 || beta > n {
        return Err(KernelError::OutOfRange(alloc::format!(
            "chart indices ({alpha}, {beta}) out of 1..={n}"
        )));
    }
    Ok(match (is_mid(n, k, alpha), is_mid(n, k, beta)) {
        (true, false) => ChartClass::I,
        (false, false) => ChartClass::II,
        (true, true) => ChartClass::III,
        (false, true) => ChartClass::IV,
    })
}

/// Class of a blow-up chart `(gamma, eta)`.
pub fn classify_blowup_chart(
    n: usize,
    k: usize,
    gamma: usize,
    eta: usize,
) -> Result<ChartClass, KernelError> {
    if gamma == 0 || gamma > n || eta == 0 || eta > n {
        return Err(KernelError::OutOfRange(alloc::format!(
            "chart indices ({gamma}, {eta}) out of 1..={n}"
        )));
    }
    Ok(match (is_mid(n, k, gamma), is_mid(n, k, eta)) {
        (true, false) => ChartClass::I,
        (false, false) => ChartClass::II,
        (true, true) => ChartClass::III,
        (false, true) => ChartClass::IV,
    })
}

/// Identifies one chart: family, class, and the two normalized indices
/// (`(alpha, beta)` for model charts, `(gamma, eta)` for blow-up charts;
/// both zero for the ambient local chart).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartId {
    pub family: Family,
    pub class: Option<ChartClass>,
    pub a: usize,
    pub b: usize,
}

impl ChartId {
    pub fn label(&self, inst: &InstanceParams) -> String {
        match self.class {
            None => alloc::format!("{}_n{}_k{}", self.family.as_str(), inst.n, inst.k),
            Some(c) => alloc::format!(
                "{}_n{}_k{}_{}_{}_{}",
                self.family.as_str(),
                inst.n,
                inst.k,
                c.as_str(),
                self.a,
                self.b
            ),
        }
    }
}

/// Resolved readings of the two ambiguous relation sets.
///
/// `sign`: the isotropy relation on the first reordered block circulates with
/// both signs of the `J X1` term; `Sec33` is the variant the simplification
/// chain is consistent with and is the default. `trace`: the block-trace
/// normalization circulates both as `pi` and `2*pi`; `TwoPi` is forced by the
/// trace identity and is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantConfig {
    pub sign: SignVariant,
    pub trace: TraceVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVariant {
    /// `-J X1 + X3^t H X3 + X1^t J = 0` (default).
    Sec33,
    /// `+J X1 + X3^t H X3 + X1^t J = 0`.
    Prop31,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceVariant {
    /// `lambda_2^t s_2 = mu_2^t t_2 = 2*pi` (default).
    TwoPi,
    /// literal `= pi` reading.
    Pi,
}

impl Default for VariantConfig {
    fn default() -> Self {
        VariantConfig {
            sign: SignVariant::Sec33,
            trace: TraceVariant::TwoPi,
        }
    }
}

impl VariantConfig {
    pub fn sign_str(&self) -> &'static str {
        match self.sign {
            SignVariant::Sec33 => "sec33",
            SignVariant::Prop31 => "prop31",
        }
    }

    pub fn trace_str(&self) -> &'static str {
        match self.trace {
            TraceVariant::TwoPi => "two-pi",
            TraceVariant::Pi => "pi",
        }
    }
}

/// A built chart: ring, tagged generators, named variable blocks and the
/// substitution table expressing derived quantities in the chart variables.
#[derive(Debug, Clone)]
pub struct ChartPresentation {
    pub id: ChartId,
    pub instance: InstanceParams,
    pub ring: PolyRing,
    pub gens: Vec<(Polynomial, String)>,
    pub blocks: Vec<(String, Vec<String>)>,
    pub substitutions: Vec<(String, Polynomial)>,
}

impl ChartPresentation {
    pub fn ideal(&self) -> Ideal {
        Ideal::with_provenance(
            &self.ring,
            self.gens
                .iter()
                .map(|(p, tag)| (p.clone(), tag.clone()))
                .collect(),
        )
    }

    pub fn gen_polys(&self) -> Vec<Polynomial> {
        self.gens.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn substitution(&self, name: &str) -> Option<&Polynomial> {
        self.substitutions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }
}

/// `sum over the middle range of v_i * v_{dual(i)}` expanded literally.
pub fn sigma(ring: &PolyRing, prefix: char, n: usize, k: usize) -> Result<Polynomial, KernelError> {
    let mut acc = Polynomial::zero(ring);
    for i in k + 1..=n - k {
        let a = Polynomial::var_named(ring, &var(prefix, i))?;
        let b = Polynomial::var_named(ring, &var(prefix, dual(n, i)))?;
        acc = acc.add(&a.mul(&b)?)?;
    }
    Ok(acc)
}

/// Canonical scalar variable name, e.g. `var('s', 3) = "s_3"`.
pub fn var(prefix: char, i: usize) -> String {
    alloc::format!("{prefix}_{i}")
}

/// Canonical matrix-entry variable name, e.g. `xvar("x", 1, 2) = "x_1_2"`.
pub fn xvar(prefix: &str, i: usize, j: usize) -> String {
    alloc::format!("{prefix}_{i}_{j}")
}

/// The permutation carrying standard-arrangement indices to the reordered
/// arrangement: high block, low block, middle block (0-based values).
pub fn reorder_perm(n: usize, k: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(n);
    p.extend(n - k..n);
    p.extend(0..k);
    p.extend(k..n - k);
    p
}

/// Name used for the inverse of a localized variable.
pub fn inverse_var_name(of: &str) -> String {
    alloc::format!("z_{of}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_table() {
        assert_eq!(classify_case(4, 0).unwrap(), CaseKind::SelfDual);
        assert_eq!(classify_case(4, 2).unwrap(), CaseKind::PiModular);
        assert_eq!(classify_case(5, 2).unwrap(), CaseKind::AlmostPiModular);
        assert_eq!(classify_case(6, 2).unwrap(), CaseKind::Yu);
        assert_eq!(classify_case(4, 1).unwrap(), CaseKind::Yu);
        assert_eq!(classify_case(5, 1).unwrap(), CaseKind::StronglyNonSpecial);
        assert_eq!(classify_case(6, 1).unwrap(), CaseKind::StronglyNonSpecial);
        assert!(classify_case(5, 3).is_err());
        assert!(classify_case(1, 0).is_err());
    }

    #[test]
    fn chart_classes() {
        // n = 5, k = 1: middle = 2..=4
        assert_eq!(classify_chart(5, 1, 3, 1).unwrap(), ChartClass::I);
        assert_eq!(classify_chart(5, 1, 1, 1).unwrap(), ChartClass::II);
        assert_eq!(classify_chart(5, 1, 3, 3).unwrap(), ChartClass::III);
        assert_eq!(classify_chart(5, 1, 1, 3).unwrap(), ChartClass::IV);
        assert!(classify_chart(5, 1, 0, 1).is_err());
        assert!(classify_chart(5, 1, 6, 1).is_err());
    }

    #[test]
    fn reorder_permutation() {
        // n = 5, k = 1: high (index 4), low (0), middle (1, 2, 3)
        assert_eq!(reorder_perm(5, 1), alloc::vec![4, 0, 1, 2, 3]);
        assert_eq!(reorder_perm(4, 0), alloc::vec![0, 1, 2, 3]);
    }

    #[test]
    fn eps_and_dual() {
        assert_eq!(dual(5, 2), 4);
        assert_eq!(eps(5, 1, 4), 1);
        assert_eq!(eps(5, 1, 5), -1);
    }
}

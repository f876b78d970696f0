//! Brute-force point counting over small odd prime fields.
//!
//! Counting is exhaustive: a point is counted iff every generator evaluates
//! to zero. Before enumeration the system is shrunk by the linear-solve
//! preprocessing, restricted so that every solving coefficient is a unit
//! modulo `q` (then solved coordinates are determined by the free ones and
//! the count is unchanged). Projective counts go through affine cones and
//! exact division by `q - 1` per factor.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::KernelError;
use crate::ideal::presolve_with;
use crate::model::charts::{Component, ComponentSpec};
use crate::model::incidence::IncidenceSpec;
use crate::model::{is_mid, ChartPresentation};
use crate::poly::{CompiledPoly, Polynomial};
use crate::ring::PolyRing;

/// Enumeration budget: the number of points visited must not exceed it.
#[derive(Debug, Clone, Copy)]
pub struct OracleGuard {
    pub max_points: u64,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard {
            max_points: 100_000_000,
        }
    }
}

/// Result of one exhaustive count.
#[derive(Debug, Clone)]
pub struct PointCount {
    pub label: String,
    pub q: u64,
    /// Number of affine coordinates of the ambient space.
    pub free_variables: usize,
    pub count: u64,
    pub per_component: Vec<(String, u64)>,
}

fn check_q(q: u64) -> Result<(), KernelError> {
    if q == 2 {
        return Err(KernelError::BadModulus(
            "even characteristic is excluded".to_string(),
        ));
    }
    crate::coeff::CoeffDomain::prime_field(q)?;
    Ok(())
}

/// Exhaustively counts the vanishing set of `gens` in affine space over
/// `F_q`. The ambient dimension is the full variable count of `ring`.
pub fn count_affine(
    ring: &PolyRing,
    gens: &[Polynomial],
    q: u64,
    guard: &OracleGuard,
) -> Result<PointCount, KernelError> {
    check_q(q)?;
    // shrink with q-unit solves only; the projection to the surviving
    // coordinates is a bijection on solution sets
    let pre = presolve_with(ring, gens, &BTreeSet::new(), Some(q))?;
    let m = pre.ring.nvars();
    let total = (q as u128).checked_pow(m as u32).ok_or_else(|| {
        KernelError::GuardTripped("enumeration size overflow".to_string())
    })?;
    if total > guard.max_points as u128 {
        return Err(KernelError::GuardTripped(alloc::format!(
            "enumeration of {total} points exceeds the budget {}",
            guard.max_points
        )));
    }
    // constant nonzero generator: empty variety
    for g in &pre.gens {
        if g.is_unit_constant() {
            let c = g.leading().unwrap().1;
            let num = c.numer();
            let qi = num_bigint::BigInt::from(q);
            if !(num % &qi).is_zero() {
                return Ok(PointCount {
                    label: String::new(),
                    q,
                    free_variables: ring.nvars(),
                    count: 0,
                    per_component: Vec::new(),
                });
            }
        }
    }
    let compiled: Vec<CompiledPoly> = pre
        .gens
        .iter()
        .map(|g| g.compile_mod(q))
        .collect::<Result<Vec<_>, _>>()?;
    let mut point = alloc::vec![0u64; m];
    let mut count = 0u64;
    loop {
        if compiled.iter().all(|c| c.eval(&point, q) == 0) {
            count += 1;
        }
        // odometer
        let mut idx = 0;
        loop {
            if idx == m {
                return Ok(PointCount {
                    label: String::new(),
                    q,
                    free_variables: ring.nvars(),
                    count,
                    per_component: Vec::new(),
                });
            }
            point[idx] += 1;
            if point[idx] < q {
                break;
            }
            point[idx] = 0;
            idx += 1;
        }
    }
}

/// Consistency data for a component decomposition at one prime.
#[derive(Debug, Clone)]
pub struct UnionCheck {
    pub q: u64,
    pub per_component: Vec<(String, u64)>,
    /// Counts of all intersections of two or more components.
    pub intersections: Vec<(Vec<String>, u64)>,
    /// Inclusion-exclusion total over the components.
    pub union_total: u64,
    /// Direct count of the special-fiber ideal.
    pub direct: u64,
    pub consistent: bool,
}

/// Counts each component, every intersection, the inclusion-exclusion
/// union, and compares against the direct special-fiber count.
pub fn count_union_check(
    chart: &ChartPresentation,
    spec: &ComponentSpec,
    q: u64,
    guard: &OracleGuard,
) -> Result<UnionCheck, KernelError> {
    check_q(q)?;
    let ring = &spec.ring;
    let comps: &[Component] = &spec.components;
    let mut per_component = Vec::new();
    for c in comps {
        let n = count_affine(ring, &c.gens, q, guard)?.count;
        per_component.push((c.name.clone(), n));
    }
    let mut intersections = Vec::new();
    let mut union_total: i128 = 0;
    // inclusion-exclusion over all nonempty subsets
    for mask in 1u32..(1 << comps.len()) {
        let members: Vec<usize> = (0..comps.len()).filter(|i| mask & (1 << i) != 0).collect();
        let mut gens: Vec<Polynomial> = Vec::new();
        for &i in &members {
            gens.extend(comps[i].gens.iter().cloned());
        }
        let cnt = count_affine(ring, &gens, q, guard)?.count;
        if members.len() >= 2 {
            intersections.push((
                members.iter().map(|&i| comps[i].name.clone()).collect(),
                cnt,
            ));
        }
        let sign = if members.len() % 2 == 1 { 1 } else { -1 };
        union_total += sign * cnt as i128;
    }
    // direct special-fiber count: chart generators plus pi
    let mut sf = chart.gen_polys();
    sf.push(Polynomial::pi(&chart.ring));
    let direct = count_affine(&chart.ring, &sf, q, guard)?.count;
    let union_total = union_total as u64;
    Ok(UnionCheck {
        q,
        per_component,
        intersections,
        union_total,
        direct,
        consistent: union_total == direct,
    })
}

/// Counts the projective pairs of an incidence presentation by enumerating
/// affine cones (both factor vectors nonzero) and dividing by `(q-1)` per
/// factor; a non-integral quotient is an invariant violation.
pub fn count_projective_incidence(
    spec: &IncidenceSpec,
    extra: &[Polynomial],
    q: u64,
    guard: &OracleGuard,
) -> Result<u64, KernelError> {
    check_q(q)?;
    let ring = &spec.ring;
    let var_of = |name: &str| ring.var_id(name).expect("factor variable");
    let f1: Vec<usize> = spec.factors[0].iter().map(|v| var_of(v)).collect();
    let f2: Vec<usize> = spec.factors[1].iter().map(|v| var_of(v)).collect();
    let m = ring.nvars();
    let active = f1.len() + f2.len();
    let total = (q as u128)
        .checked_pow(active as u32)
        .ok_or_else(|| KernelError::GuardTripped("enumeration size overflow".to_string()))?;
    if total > guard.max_points as u128 {
        return Err(KernelError::GuardTripped(alloc::format!(
            "cone enumeration of {total} points exceeds the budget {}",
            guard.max_points
        )));
    }
    let compiled: Vec<CompiledPoly> = spec
        .conditions
        .iter()
        .chain(extra.iter())
        .map(|g| g.compile_mod(q))
        .collect::<Result<Vec<_>, _>>()?;
    // iterate over the two cones; inactive variables (pi) stay zero
    let mut point = alloc::vec![0u64; m];
    let order: Vec<usize> = f1.iter().chain(f2.iter()).copied().collect();
    let mut count = 0u64;
    'outer: loop {
        let nz1 = f1.iter().any(|&v| point[v] != 0);
        let nz2 = f2.iter().any(|&v| point[v] != 0);
        if nz1 && nz2 && compiled.iter().all(|c| c.eval(&point, q) == 0) {
            count += 1;
        }
        let mut idx = 0;
        loop {
            if idx == order.len() {
                break 'outer;
            }
            let v = order[idx];
            point[v] += 1;
            if point[v] < q {
                break;
            }
            point[v] = 0;
            idx += 1;
        }
    }
    let divisor = (q - 1) * (q - 1);
    if count % divisor != 0 {
        return Err(KernelError::Invalid(alloc::format!(
            "cone count {count} not divisible by (q-1)^2 = {divisor}"
        )));
    }
    Ok(count / divisor)
}

/// Canonical projective representative: scale so the first nonzero
/// coordinate is 1.
fn proj_normalize(v: &mut [u64], q: u64) -> bool {
    let lead = match v.iter().position(|&x| x != 0) {
        Some(i) => v[i],
        None => return false,
    };
    let inv = mod_inv(lead, q);
    for x in v.iter_mut() {
        *x = (*x * inv) % q;
    }
    true
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q is a small prime; a^(q-2) mod q
    let mut acc = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// Counts the exceptional-divisor pairs `(L1, L2)` by enumerating the
/// component pieces of every worst-point chart that meets it, mapping each
/// chart point to its pair of lines, and deduplicating over the cover.
///
/// The charts that meet the locus are exactly those whose first normalized
/// coordinate is a middle one; the second index runs over everything.
pub fn exc1_gluing_count(n: usize, k: usize, q: u64) -> Result<u64, KernelError> {
    check_q(q)?;
    let mut seen: BTreeSet<(Vec<u64>, Vec<u64>)> = BTreeSet::new();
    let mid: Vec<usize> = (k + 1..=n - k).collect();
    for &alpha in &mid {
        for beta in 1..=n {
            if is_mid(n, k, beta) {
                // in-chart locus: t_beta = 1, t_alpha nonzero, mu = 0, all
                // other t free; L1 = [t], L2 = [middle block of t]
                let free: Vec<usize> = (1..=n).filter(|&j| j != beta).collect();
                enumerate_points(q, free.len(), |vals| {
                    let mut t = alloc::vec![0u64; n];
                    t[beta - 1] = 1;
                    for (j, &v) in free.iter().zip(vals.iter()) {
                        t[j - 1] = v;
                    }
                    if t[alpha - 1] == 0 {
                        return;
                    }
                    let l2: Vec<u64> = mid.iter().map(|&j| t[j - 1]).collect();
                    insert_pair(&mut seen, t, l2, q);
                });
            } else {
                // in-chart locus: mu = 0 and s_beta = 0; free coordinates are
                // the outer t (minus t_beta), the middle s (minus s_alpha) and
                // t_alpha; L1 = [t] with middle block t_alpha * s, L2 = [s]
                let outer_t: Vec<usize> =
                    (1..=n).filter(|&j| !is_mid(n, k, j) && j != beta).collect();
                let mid_s: Vec<usize> = mid.iter().copied().filter(|&j| j != alpha).collect();
                let freec = outer_t.len() + mid_s.len() + 1;
                enumerate_points(q, freec, |vals| {
                    let mut t = alloc::vec![0u64; n];
                    let mut s = alloc::vec![0u64; n];
                    t[beta - 1] = 1;
                    s[alpha - 1] = 1;
                    let (tv, rest) = vals.split_at(outer_t.len());
                    let (sv, ta) = rest.split_at(mid_s.len());
                    for (j, &v) in outer_t.iter().zip(tv.iter()) {
                        t[j - 1] = v;
                    }
                    for (j, &v) in mid_s.iter().zip(sv.iter()) {
                        s[j - 1] = v;
                    }
                    let t_alpha = ta[0];
                    for &j in &mid {
                        t[j - 1] = t_alpha * s[j - 1] % q;
                    }
                    let l2: Vec<u64> = mid.iter().map(|&j| s[j - 1]).collect();
                    insert_pair(&mut seen, t, l2, q);
                });
            }
        }
    }
    Ok(seen.len() as u64)
}

fn insert_pair(seen: &mut BTreeSet<(Vec<u64>, Vec<u64>)>, mut l1: Vec<u64>, mut l2: Vec<u64>, q: u64) {
    if !proj_normalize(&mut l1, q) || !proj_normalize(&mut l2, q) {
        return;
    }
    seen.insert((l1, l2));
}

fn enumerate_points<F: FnMut(&[u64])>(q: u64, m: usize, mut f: F) {
    let mut point = alloc::vec![0u64; m];
    loop {
        f(&point);
        let mut idx = 0;
        loop {
            if idx == m {
                return;
            }
            point[idx] += 1;
            if point[idx] < q {
                break;
            }
            point[idx] = 0;
            idx += 1;
        }
    }
}

/// Result of probing growth over several primes.
#[derive(Debug, Clone)]
pub struct DimensionProbe {
    pub counts: Vec<(u64, u64)>,
    /// `Some(d)` iff every count is exactly `q^d` (affine-space certificate).
    pub fitted: Option<u32>,
}

/// Counts over every listed prime; reports the exact exponent when all
/// counts are pure powers with a common exponent, the raw counts otherwise.
pub fn dimension_probe(
    ring: &PolyRing,
    gens: &[Polynomial],
    qs: &[u64],
    guard: &OracleGuard,
) -> Result<DimensionProbe, KernelError> {
    let mut counts = Vec::new();
    for &q in qs {
        let c = count_affine(ring, gens, q, guard)?.count;
        counts.push((q, c));
    }
    let mut fitted: Option<u32> = None;
    'outer: for d in 0..=40u32 {
        for &(q, c) in &counts {
            let expect = (q as u128).pow(d);
            if expect != c as u128 {
                continue 'outer;
            }
        }
        fitted = Some(d);
        break;
    }
    Ok(DimensionProbe { counts, fitted })
}

/// Evaluates a rational coefficient list mod q on all F_q points vanishing on
/// `gens`, confirming the reduced basis vanishes on the same set. Used by the
/// kernel self-consistency suite.
pub fn basis_vanishes_on_solutions(
    ring: &PolyRing,
    gens: &[Polynomial],
    basis: &[Polynomial],
    q: u64,
    guard: &OracleGuard,
) -> Result<bool, KernelError> {
    check_q(q)?;
    let m = ring.nvars();
    let total = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > guard.max_points as u128 {
        return Err(KernelError::GuardTripped("budget".to_string()));
    }
    let cg: Vec<CompiledPoly> = gens
        .iter()
        .map(|g| g.compile_mod(q))
        .collect::<Result<Vec<_>, _>>()?;
    let cb: Vec<CompiledPoly> = basis
        .iter()
        .map(|g| g.compile_mod(q))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ok = true;
    enumerate_points(q, m, |point| {
        if cg.iter().all(|c| c.eval(point, q) == 0)
            && !cb.iter().all(|c| c.eval(point, q) == 0)
        {
            ok = false;
        }
    });
    Ok(ok)
}

/// Reduces an exact rational to `F_q`, for spot checks.
pub fn rational_mod(c: &num_rational::BigRational, q: u64) -> Result<u64, KernelError> {
    let domain = crate::coeff::CoeffDomain::prime_field(q)?;
    let r = domain.normalize(c.clone())?;
    let v = r.to_integer();
    let v = if v.is_negative() {
        v + num_bigint::BigInt::from(q)
    } else {
        v
    };
    v.to_u64()
        .ok_or_else(|| KernelError::Invalid("residue out of u64".to_string()))
}

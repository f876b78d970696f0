//! Polynomial ideals and the Gröbner engine.
//!
//! `groebner` is plain Buchberger with the Gebauer–Möller pair-elimination
//! criteria and full inter-reduction; the output is the unique reduced basis
//! for the ring's order, independent of generator input order.
//!
//! Membership-style queries (`reduce`, `contains`, `ideal_equal`,
//! `is_unit_ideal`) route through a presolved presentation: generators of the
//! shape `c*v + r` with `v` a variable absent from `r` are used to substitute
//! `v` away first. This is an isomorphism of quotient rings, so membership
//! answers are exact, and it is what keeps the large chart ideals (which are
//! mostly solvable in this sense) at desk scale. The substitution choice is
//! canonicalized so results do not depend on generator order.
//!
//! Resource guards bound the number of processed S-pairs and optionally the
//! wall clock; exceeding a guard is an error, never a silent truncation.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;


use crate::error::KernelError;
use crate::poly::{Monomial, Polynomial};
use crate::ring::{MonomialOrder, PolyRing, VarId, PI};

/// Resource limits for a single engine call.
pub struct Guard {
    /// Maximum number of S-pairs processed in one Gröbner run.
    pub max_pairs: u64,
    /// Optional wall-clock predicate; `true` means the budget is exhausted.
    pub expired: Option<Box<dyn Fn() -> bool>>,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_pairs: 1_000_000,
            expired: None,
        }
    }
}

impl Guard {
    pub fn with_pairs(max_pairs: u64) -> Self {
        Guard {
            max_pairs,
            expired: None,
        }
    }

    pub fn with_deadline(max_pairs: u64, expired: Box<dyn Fn() -> bool>) -> Self {
        Guard {
            max_pairs,
            expired: Some(expired),
        }
    }

    fn check_time(&self) -> Result<(), KernelError> {
        if let Some(f) = &self.expired {
            if f() {
                return Err(KernelError::GuardTripped("time budget exhausted".into()));
            }
        }
        Ok(())
    }
}

/// Outcome of an ideal-equality test.
#[derive(Debug, Clone)]
pub struct EqualityVerdict {
    pub equal: bool,
    /// On failure: the first offending generator and its nonzero normal form.
    pub witness: Option<(Polynomial, Polynomial)>,
}

/// Result of the linear-solve preprocessing.
#[derive(Debug, Clone)]
pub struct Presolved {
    /// Ring on the surviving variables (pi always survives).
    pub ring: PolyRing,
    /// Generators rewritten into the surviving ring.
    pub gens: Vec<Polynomial>,
    /// Solved variable -> its expression in the surviving ring.
    pub solved: BTreeMap<String, Polynomial>,
}

impl Presolved {
    /// Image of an ambient-ring polynomial in the surviving ring.
    pub fn project(&self, f: &Polynomial) -> Result<Polynomial, KernelError> {
        f.substitute(&self.ring, &self.solved)
    }
}

/// An ideal: generators in a ring, with cached bases and provenance tags.
#[derive(Clone)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    provenance: Vec<String>,
    cached_gb: Option<Vec<Polynomial>>,
    membership: Option<MembershipCache>,
}

#[derive(Clone)]
struct MembershipCache {
    pre: Presolved,
    gb: Vec<Polynomial>,
}

impl core::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "Ideal in {:?} with {} generators", self.ring, self.gens.len())
    }
}

impl Ideal {
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Self {
        let provenance = vec![String::new(); gens.len()];
        Ideal {
            ring: ring.clone(),
            gens,
            provenance,
            cached_gb: None,
            membership: None,
        }
    }

    pub fn with_provenance(ring: &PolyRing, gens: Vec<(Polynomial, String)>) -> Self {
        let (gens, provenance): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
        Ideal {
            ring: ring.clone(),
            gens,
            provenance,
            cached_gb: None,
            membership: None,
        }
    }

    /// Parses one generator per text entry.
    pub fn from_texts(ring: &PolyRing, texts: &[&str]) -> Result<Self, KernelError> {
        let gens = texts
            .iter()
            .map(|t| Polynomial::parse(ring, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ring, gens))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// New ideal with extra generators appended.
    pub fn plus(&self, extra: &[Polynomial]) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Ideal sum: generators of both.
    pub fn sum(&self, other: &Ideal) -> Result<Self, KernelError> {
        if self.ring != other.ring {
            return Err(KernelError::RingMismatch);
        }
        Ok(self.plus(&other.gens))
    }

    /// The reduced Gröbner basis for the ring's order (cached).
    pub fn groebner(&mut self, guard: &Guard) -> Result<Vec<Polynomial>, KernelError> {
        if self.cached_gb.is_none() {
            let gb = buchberger(&self.ring, &self.gens, guard)?;
            self.cached_gb = Some(gb);
        }
        Ok(self.cached_gb.clone().unwrap())
    }

    fn membership_cache(&mut self, guard: &Guard) -> Result<&MembershipCache, KernelError> {
        if self.membership.is_none() {
            let pre = presolve(&self.ring, &self.gens, &BTreeSet::new())?;
            let gb = buchberger_core(&pre.ring, &pre.gens, guard, false)?;
            self.membership = Some(MembershipCache { pre, gb });
        }
        Ok(self.membership.as_ref().unwrap())
    }

    /// The unique normal form of `f` modulo the reduced Gröbner basis of the
    /// ring's order; zero iff `f` lies in the ideal.
    pub fn reduce(&mut self, f: &Polynomial, guard: &Guard) -> Result<Polynomial, KernelError> {
        if f.ring() != &self.ring {
            return Err(KernelError::RingMismatch);
        }
        let gb = self.groebner(guard)?;
        normal_form(f, &gb)
    }

    /// Normal form through the presolved presentation: zero iff `f` lies in
    /// the ideal. The representative lives in the surviving-variable ring.
    ///
    /// This is the membership route used on the large chart ideals, where the
    /// generators are mostly linearly solvable and a full-ring basis would be
    /// wasteful.
    pub fn reduce_solved(
        &mut self,
        f: &Polynomial,
        guard: &Guard,
    ) -> Result<Polynomial, KernelError> {
        if f.ring() != &self.ring {
            return Err(KernelError::RingMismatch);
        }
        let cache = self.membership_cache(guard)?;
        let projected = cache.pre.project(f)?;
        normal_form(&projected, &cache.gb)
    }

    pub fn contains(&mut self, f: &Polynomial, guard: &Guard) -> Result<bool, KernelError> {
        Ok(self.reduce_solved(f, guard)?.is_zero())
    }

    /// Generator-wise mutual membership, with the first failure as witness.
    pub fn ideal_equal(
        &mut self,
        other: &mut Ideal,
        guard: &Guard,
    ) -> Result<EqualityVerdict, KernelError> {
        if self.ring != other.ring {
            return Err(KernelError::RingMismatch);
        }
        for g in other.gens.clone() {
            let nf = self.reduce_solved(&g, guard)?;
            if !nf.is_zero() {
                return Ok(EqualityVerdict {
                    equal: false,
                    witness: Some((g, nf)),
                });
            }
        }
        for g in self.gens.clone() {
            let nf = other.reduce_solved(&g, guard)?;
            if !nf.is_zero() {
                return Ok(EqualityVerdict {
                    equal: false,
                    witness: Some((g, nf)),
                });
            }
        }
        Ok(EqualityVerdict {
            equal: true,
            witness: None,
        })
    }

    /// True iff the reduced basis is `{1}`.
    pub fn is_unit_ideal(&mut self, guard: &Guard) -> Result<bool, KernelError> {
        self.contains(&Polynomial::one(&self.ring), guard)
    }

    /// `I ∩ K[vars \ drop]`, in the ring without the dropped variables.
    ///
    /// `pi` can never be dropped. Dropped variables that are linearly solvable
    /// are substituted away; the rest go through a block-order basis.
    pub fn eliminate(&self, drop: &[&str], guard: &Guard) -> Result<Ideal, KernelError> {
        let mut drop_ids: BTreeSet<VarId> = BTreeSet::new();
        for d in drop {
            if *d == PI {
                return Err(KernelError::Invalid("cannot eliminate pi".to_string()));
            }
            drop_ids.insert(self.ring.var_id(d)?);
        }
        let keep: Vec<&str> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop_ids.contains(i))
            .map(|(_, n)| n.as_str())
            .collect();
        let keep_ring = PolyRing::with_domain(&keep, MonomialOrder::GrevLex, self.ring.domain())?;
        if drop.is_empty() {
            let gens = self
                .gens
                .iter()
                .map(|g| g.into_ring(&keep_ring))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Ideal::new(&keep_ring, gens));
        }
        // forbid solving anything we keep
        let forbid: BTreeSet<VarId> = (0..self.ring.nvars())
            .filter(|i| !drop_ids.contains(i))
            .collect();
        let pre = presolve(&self.ring, &self.gens, &forbid)?;
        let leftover: Vec<String> = pre
            .ring
            .vars()
            .iter()
            .filter(|v| drop.contains(&v.as_str()))
            .cloned()
            .collect();
        let result_gens: Vec<Polynomial> = if leftover.is_empty() {
            pre.gens
                .iter()
                .map(|g| g.into_ring(&keep_ring))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            // block ring: leftover drop variables first, then keep variables
            let mut names: Vec<&str> = leftover.iter().map(|s| s.as_str()).collect();
            let keep_surviving: Vec<&str> = pre
                .ring
                .vars()
                .iter()
                .filter(|v| !leftover.contains(v))
                .map(|s| s.as_str())
                .collect();
            names.extend(keep_surviving);
            let block_ring =
                PolyRing::with_domain(&names, MonomialOrder::Block(leftover.len()), self.ring.domain())?;
            let block_gens = pre
                .gens
                .iter()
                .map(|g| g.into_ring(&block_ring))
                .collect::<Result<Vec<_>, _>>()?;
            let gb = buchberger(&block_ring, &block_gens, guard)?;
            let leftover_ids: Vec<VarId> = leftover
                .iter()
                .map(|v| block_ring.var_id(v).unwrap())
                .collect();
            gb.into_iter()
                .filter(|g| leftover_ids.iter().all(|&id| !g.uses_var(id)))
                .map(|g| g.into_ring(&keep_ring))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Ideal::new(&keep_ring, result_gens))
    }

    /// Saturation `I : f^∞` by the inverse-variable construction: adjoin a
    /// fresh `z`, add `1 - z*f`, eliminate `z`.
    pub fn saturate(&self, f: &Polynomial, guard: &Guard) -> Result<Ideal, KernelError> {
        if f.is_zero() {
            return Err(KernelError::Invalid("saturation at zero".to_string()));
        }
        if f.ring() != &self.ring {
            return Err(KernelError::RingMismatch);
        }
        if f.is_unit_constant() {
            return Ok(self.clone());
        }
        let z = fresh_name(&self.ring, "z_sat");
        let mut names: Vec<&str> = vec![z.as_str()];
        names.extend(self.ring.vars().iter().map(|s| s.as_str()));
        let big = PolyRing::with_domain(&names, MonomialOrder::Block(1), self.ring.domain())?;
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.into_ring(&big))
            .collect::<Result<Vec<_>, _>>()?;
        let zf = Polynomial::var_named(&big, &z)?.mul(&f.into_ring(&big)?)?;
        gens.push(Polynomial::one(&big).sub(&zf)?);
        let elim = Ideal::new(&big, gens).eliminate(&[z.as_str()], guard)?;
        let gens = elim
            .gens
            .iter()
            .map(|g| g.into_ring(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I ∩ J` via `t*I + (1-t)*J` and elimination of the fresh `t`.
    pub fn intersect(&self, other: &Ideal, guard: &Guard) -> Result<Ideal, KernelError> {
        if self.ring != other.ring {
            return Err(KernelError::RingMismatch);
        }
        let t = fresh_name(&self.ring, "t_int");
        let mut names: Vec<&str> = vec![t.as_str()];
        names.extend(self.ring.vars().iter().map(|s| s.as_str()));
        let big = PolyRing::with_domain(&names, MonomialOrder::Block(1), self.ring.domain())?;
        let tv = Polynomial::var_named(&big, &t)?;
        let one_minus_t = Polynomial::one(&big).sub(&tv)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(tv.mul(&g.into_ring(&big)?)?);
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.into_ring(&big)?)?);
        }
        let elim = Ideal::new(&big, gens).eliminate(&[t.as_str()], guard)?;
        let gens = elim
            .gens
            .iter()
            .map(|g| g.into_ring(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Krull dimension of the leading-term ideal: the size of a maximum
    /// variable subset none of whose monomials occurs as a leading term.
    pub fn dim_leading(&mut self, guard: &Guard) -> Result<usize, KernelError> {
        let gb = self.groebner(guard)?;
        if gb.iter().any(|g| g.is_unit_constant()) {
            return Err(KernelError::Invalid("dimension of the unit ideal".to_string()));
        }
        let n = self.ring.nvars();
        if n > 26 {
            return Err(KernelError::Invalid(
                "dim_leading supports at most 26 variables".to_string(),
            ));
        }
        let lts: Vec<Monomial> = gb
            .iter()
            .filter_map(|g| g.leading().map(|(m, _)| m.clone()))
            .collect();
        for size in (0..=n).rev() {
            for subset in crate::matrix::subsets(n, size) {
                let inset = |v: usize| subset.contains(&v);
                let independent = lts.iter().all(|m| {
                    // some variable of the monomial lies outside the subset
                    m.iter().enumerate().any(|(v, &e)| e > 0 && !inset(v))
                });
                if independent {
                    return Ok(size);
                }
            }
        }
        unreachable!("empty subset is always independent for proper ideals")
    }

    /// Exposes the presolved presentation used for membership queries.
    pub fn presolved(&mut self, guard: &Guard) -> Result<Presolved, KernelError> {
        Ok(self.membership_cache(guard)?.pre.clone())
    }

    /// Presolve restricted to a chosen set of removable variables.
    pub fn presolve_keeping(&self, keep: &[&str]) -> Result<Presolved, KernelError> {
        let mut forbid: BTreeSet<VarId> = BTreeSet::new();
        for k in keep {
            forbid.insert(self.ring.var_id(k)?);
        }
        presolve(&self.ring, &self.gens, &forbid)
    }
}

fn fresh_name(ring: &PolyRing, base: &str) -> String {
    if ring.var_id(base).is_err() {
        return base.to_string();
    }
    let mut i = 1usize;
    loop {
        let cand = alloc::format!("{base}_{i}");
        if ring.var_id(&cand).is_err() {
            return cand;
        }
        i += 1;
    }
}

// ---- division ----

fn mono_divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect()
}

fn mono_is_coprime(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0)
}

fn mono_sub(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Full normal form of `f` against `basis` (every term reduced).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial, KernelError> {
    let ring = f.ring().clone();
    let mut cur = f.clone();
    let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
    'outer: while let Some((lm, lc)) = cur.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (gm, gc) = match g.leading() {
                Some(x) => x,
                None => continue,
            };
            if mono_divides(gm, &lm) {
                let q = mono_sub(&lm, gm);
                let c = ring.domain().normalize(&lc * ring.domain().invert(gc)?)?;
                cur = cur.sub(&g.mul_term(&q, &c)?)?;
                continue 'outer;
            }
        }
        rem.push((lm.clone(), lc.clone()));
        let lt = Polynomial::from_terms(&ring, vec![(lm, lc)])?;
        cur = cur.sub(&lt)?;
    }
    Polynomial::from_terms(&ring, rem)
}

/// The unique reduced Gröbner basis of the generators for the ring's order.
pub fn buchberger(
    ring: &PolyRing,
    gens: &[Polynomial],
    guard: &Guard,
) -> Result<Vec<Polynomial>, KernelError> {
    buchberger_core(ring, gens, guard, true)
}

/// Buchberger completion; with `reduce_fully` the result is the canonical
/// reduced basis, otherwise a minimal monic basis (normal forms against it
/// are still unique, which is all the membership route needs).
pub fn buchberger_core(
    ring: &PolyRing,
    gens: &[Polynomial],
    guard: &Guard,
    reduce_fully: bool,
) -> Result<Vec<Polynomial>, KernelError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.monic()?;
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // Gebauer-Möller maintained pair set: (i, j, lcm degree, lcm), i < j.
    let mut pairs: Vec<(usize, usize, u32, Monomial)> = Vec::new();
    for t in 1..basis.len() {
        gm_update(ring, &basis[..=t], &mut pairs, t);
    }
    let mut processed: u64 = 0;
    while !pairs.is_empty() {
        guard.check_time()?;
        processed += 1;
        if processed > guard.max_pairs {
            return Err(KernelError::GuardTripped(alloc::format!(
                "pair budget {} exhausted",
                guard.max_pairs
            )));
        }
        // normal selection: minimal lcm degree, then order, then index
        let mut best = 0usize;
        for idx in 1..pairs.len() {
            let (_, _, d, m) = &pairs[idx];
            let (_, _, bd, bm) = &pairs[best];
            if d < bd || (d == bd && ring.cmp_mono(m, bm) == core::cmp::Ordering::Less) {
                best = idx;
            }
        }
        let (i, j, _, _) = pairs.swap_remove(best);
        let s = s_polynomial(ring, &basis[i], &basis[j])?;
        let nf = normal_form(&s, &basis)?;
        if !nf.is_zero() {
            basis.push(nf.monic()?);
            let t = basis.len() - 1;
            gm_update(ring, &basis, &mut pairs, t);
        }
    }
    if reduce_fully {
        // Inter-reduce to the canonical reduced basis.
        reduce_basis(ring, basis)
    } else {
        minimalize(ring, basis)
    }
}

/// Keeps only elements whose leading term no other element's divides;
/// sorted by decreasing leading monomial.
fn minimalize(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Result<Vec<Polynomial>, KernelError> {
    basis.sort_by(|a, b| ring.cmp_mono(a.leading().unwrap().0, b.leading().unwrap().0));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| mono_divides(h.leading().unwrap().0, &lm))
        {
            minimal.push(g);
        }
    }
    minimal.sort_by(|a, b| ring.cmp_mono(b.leading().unwrap().0, a.leading().unwrap().0));
    Ok(minimal)
}

fn s_polynomial(
    ring: &PolyRing,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Polynomial, KernelError> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let lcm = mono_lcm(fm, gm);
    let fq = mono_sub(&lcm, fm);
    let gq = mono_sub(&lcm, gm);
    let fcoef = ring.domain().invert(fc)?;
    let gcoef = ring.domain().invert(gc)?;
    let a = f.mul_term(&fq, &fcoef)?;
    let b = g.mul_term(&gq, &gcoef)?;
    a.sub(&b)
}

/// Gebauer-Möller pair update after appending element `t` to `basis`.
fn gm_update(
    ring: &PolyRing,
    basis: &[Polynomial],
    pairs: &mut Vec<(usize, usize, u32, Monomial)>,
    t: usize,
) {
    let lt_t = basis[t].leading().unwrap().0.clone();
    let lt = |i: usize| basis[i].leading().unwrap().0;
    // candidate new pairs
    let cand: Vec<(usize, Monomial)> = (0..t)
        .map(|i| (i, mono_lcm(lt(i), &lt_t)))
        .collect();
    // M criterion: drop (i,t) if some other candidate lcm properly divides its lcm
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cand[b].1 != cand[a].1 && mono_divides(&cand[b].1, &cand[a].1) {
                keep[a] = false;
                break;
            }
        }
    }
    // F criterion: among equal lcms keep one representative
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        for b in (a + 1)..cand.len() {
            if keep[b] && cand[a].1 == cand[b].1 {
                keep[b] = false;
            }
        }
    }
    // B (product) criterion: coprime leading terms reduce to zero
    for (a, (i, _)) in cand.iter().enumerate() {
        if keep[a] && mono_is_coprime(lt(*i), &lt_t) {
            keep[a] = false;
        }
    }
    // prune old pairs made redundant by t (chain criterion)
    pairs.retain(|(i, j, _, lcm_ij)| {
        if !mono_divides(&lt_t, lcm_ij) {
            return true;
        }
        let lcm_it = mono_lcm(lt(*i), &lt_t);
        let lcm_jt = mono_lcm(lt(*j), &lt_t);
        lcm_it == *lcm_ij || lcm_jt == *lcm_ij
    });
    let _ = ring;
    for (a, (i, lcm)) in cand.into_iter().enumerate() {
        if keep[a] {
            let deg: u32 = lcm.iter().map(|&e| e as u32).sum();
            pairs.push((i, t, deg, lcm));
        }
    }
}

/// Minimalizes and fully reduces a basis; output sorted by decreasing
/// leading monomial, monic, duplicate-free.
fn reduce_basis(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Result<Vec<Polynomial>, KernelError> {
    // minimalize: drop g whose LT is divisible by another element's LT
    basis.sort_by(|a, b| ring.cmp_mono(a.leading().unwrap().0, b.leading().unwrap().0));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| mono_divides(h.leading().unwrap().0, &lm))
        {
            minimal.push(g);
        }
    }
    // fully reduce each against the others until stable
    loop {
        let mut changed = false;
        for idx in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, p)| p.clone())
                .collect();
            let nf = normal_form(&minimal[idx], &others)?;
            let nf = if nf.is_zero() { nf } else { nf.monic()? };
            if nf != minimal[idx] {
                minimal[idx] = nf;
                changed = true;
            }
        }
        minimal.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| ring.cmp_mono(b.leading().unwrap().0, a.leading().unwrap().0));
    minimal.dedup();
    Ok(minimal)
}

// ---- presolve ----

/// Repeatedly substitutes away variables that occur linearly and alone in
/// some generator. The choice of (variable, generator) at each step is the
/// canonically smallest, so the result does not depend on generator order.
pub fn presolve(
    ring: &PolyRing,
    gens: &[Polynomial],
    forbid: &BTreeSet<VarId>,
) -> Result<Presolved, KernelError> {
    presolve_with(ring, gens, forbid, None)
}

/// Like [`presolve`], but when `unit_mod` is `Some(q)` a variable is only
/// substituted away when its coefficient is a unit modulo `q`; then the
/// projection to the surviving coordinates is a bijection on `F_q`-points.
pub fn presolve_with(
    ring: &PolyRing,
    gens: &[Polynomial],
    forbid: &BTreeSet<VarId>,
    unit_mod: Option<u64>,
) -> Result<Presolved, KernelError> {
    let mut work: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut solved: Vec<(String, Polynomial)> = Vec::new(); // images in ambient ring
    let pi_id = ring.pi_id();
    loop {
        canonical_sort(&mut work);
        // among all admissible (generator, variable) pairs, substitute the
        // one with the smallest image first (fewest generator terms), which
        // keeps intermediate expression growth down; ties break on the
        // variable index, so the outcome is input-order independent
        let mut choice: Option<(usize, VarId, usize)> = None;
        for (gi, g) in work.iter().enumerate() {
            let nt = g.num_terms();
            if let Some((_, _, best)) = choice {
                if nt >= best && nt > 0 {
                    // a later generator can still win only by term count
                    if nt > best {
                        continue;
                    }
                }
            }
            for v in 0..ring.nvars() {
                if v == pi_id
                    || forbid.contains(&v)
                    || solved.iter().any(|(n, _)| n == ring.var_name(v))
                {
                    continue;
                }
                if let Some(c) = linear_alone_coeff(g, v) {
                    if let Some(q) = unit_mod {
                        let qi = num_bigint::BigInt::from(q);
                        if (c.numer() % &qi).is_zero() || (c.denom() % &qi).is_zero() {
                            continue;
                        }
                    }
                    let better = match choice {
                        None => true,
                        Some((_, bv, bt)) => nt < bt || (nt == bt && v < bv),
                    };
                    if better {
                        choice = Some((gi, v, nt));
                    }
                }
            }
        }
        let (gi, v) = match choice {
            Some((gi, v, _)) => (gi, v),
            None => break,
        };
        let g = work.remove(gi);
        let c = linear_alone_coeff(&g, v).unwrap();
        // v = -(g - c*v)/c
        let mut vm = vec![0u16; ring.nvars()];
        vm[v] = 1;
        let cv = Polynomial::from_terms(ring, vec![(vm, c.clone())])?;
        let rest = g.sub(&cv)?;
        let image = rest.neg().scale(&ring.domain().invert(&c)?)?;
        let name = ring.var_name(v).to_string();
        let mut submap = BTreeMap::new();
        submap.insert(name.clone(), image.clone());
        for w in work.iter_mut() {
            if w.uses_var(v) {
                *w = w.substitute(ring, &submap)?;
            }
        }
        for (_, img) in solved.iter_mut() {
            if img.uses_var(v) {
                *img = img.substitute(ring, &submap)?;
            }
        }
        solved.push((name, image));
        work.retain(|g| !g.is_zero());
    }
    // build the surviving ring
    let solved_names: BTreeSet<&str> = solved.iter().map(|(n, _)| n.as_str()).collect();
    let keep: Vec<&str> = ring
        .vars()
        .iter()
        .map(|s| s.as_str())
        .filter(|n| !solved_names.contains(n))
        .collect();
    let order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::GrevLex,
    };
    let small = PolyRing::with_domain(&keep, order, ring.domain())?;
    canonical_sort(&mut work);
    work.dedup();
    let gens_small = work
        .iter()
        .map(|g| g.into_ring(&small))
        .collect::<Result<Vec<_>, _>>()?;
    let mut map = BTreeMap::new();
    for (n, img) in solved {
        map.insert(n, img.into_ring(&small)?);
    }
    Ok(Presolved {
        ring: small,
        gens: gens_small,
        solved: map,
    })
}

fn canonical_sort(polys: &mut [Polynomial]) {
    polys.sort_by(|a, b| b.canonical_cmp(a));
}

/// If `g` has a term `c*v` (exponent 1, nothing else in the monomial) and no
/// other term of `g` involves `v`, returns `c`.
fn linear_alone_coeff(g: &Polynomial, v: VarId) -> Option<BigRational> {
    let mut coeff: Option<BigRational> = None;
    for (m, c) in g.terms() {
        let e = m[v];
        if e == 0 {
            continue;
        }
        if e > 1 {
            return None;
        }
        // exponent exactly 1: the monomial must be the bare variable
        if m.iter().enumerate().any(|(w, &f)| w != v && f > 0) {
            return None;
        }
        if coeff.is_some() {
            return None;
        }
        coeff = Some(c.clone());
    }
    coeff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(vars, MonomialOrder::GrevLex).unwrap()
    }

    fn guard() -> Guard {
        Guard::default()
    }

    #[test]
    fn basic_bases() {
        let r = ring(&["x", "y", "pi"]);
        let mut i1 = Ideal::from_texts(&r, &["x"]).unwrap();
        let gb = i1.groebner(&guard()).unwrap();
        assert_eq!(gb, vec![Polynomial::parse(&r, "x").unwrap()]);

        let mut i2 = Ideal::from_texts(&r, &["x", "x + 1"]).unwrap();
        let gb = i2.groebner(&guard()).unwrap();
        assert_eq!(gb, vec![Polynomial::one(&r)]);
        assert!(i2.is_unit_ideal(&guard()).unwrap());
    }

    #[test]
    fn reduce_contract() {
        let r = ring(&["x", "y", "pi"]);
        let mut i = Ideal::from_texts(&r, &["x^2 - y"]).unwrap();
        assert!(i.reduce(&Polynomial::zero(&r), &guard()).unwrap().is_zero());
        let g = Polynomial::parse(&r, "x^2 - y").unwrap();
        assert!(i.reduce(&g, &guard()).unwrap().is_zero());
        assert!(i.reduce_solved(&g, &guard()).unwrap().is_zero());
        let f = Polynomial::parse(&r, "x^4").unwrap();
        let nf = i.reduce(&f, &guard()).unwrap();
        assert_eq!(nf.to_text(), "y^2");
        // the solved route answers membership identically
        let h = Polynomial::parse(&r, "x^4 - y^2").unwrap();
        assert!(i.reduce_solved(&h, &guard()).unwrap().is_zero());
        assert!(!i.reduce_solved(&f, &guard()).unwrap().is_zero());
    }

    #[test]
    fn equality_with_witness() {
        let r = ring(&["x", "pi"]);
        let mut a = Ideal::from_texts(&r, &["x^2"]).unwrap();
        let mut b = Ideal::from_texts(&r, &["x"]).unwrap();
        let v = a.ideal_equal(&mut b, &guard()).unwrap();
        assert!(!v.equal);
        let (g, nf) = v.witness.unwrap();
        assert_eq!(g.to_text(), "x");
        assert!(!nf.is_zero());
        let mut c = Ideal::from_texts(&r, &["x^2"]).unwrap();
        assert!(a.ideal_equal(&mut c, &guard()).unwrap().equal);
    }

    #[test]
    fn elimination_example() {
        // eliminating z from <z*x - 1, x - y> yields <x - y>
        let r = ring(&["z", "x", "y", "pi"]);
        let i = Ideal::from_texts(&r, &["z*x - 1", "x - y"]).unwrap();
        let e = i.eliminate(&["z"], &guard()).unwrap();
        let small = e.ring().clone();
        let mut e = e;
        let mut expect = Ideal::from_texts(&small, &["x - y"]).unwrap();
        assert!(e.ideal_equal(&mut expect, &guard()).unwrap().equal);
        // empty drop set is the identity
        let same = i.eliminate(&[], &guard()).unwrap();
        assert_eq!(same.gens().len(), 2);
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y", "pi"]);
        let i = Ideal::from_texts(&r, &["x*y"]).unwrap();
        let x = Polynomial::parse(&r, "x").unwrap();
        let mut s = i.saturate(&x, &guard()).unwrap();
        let mut expect = Ideal::from_texts(&r, &["y"]).unwrap();
        assert!(s.ideal_equal(&mut expect, &guard()).unwrap().equal);
        // saturate at a unit is the identity
        let one = Polynomial::one(&r);
        let mut s1 = i.saturate(&one, &guard()).unwrap();
        let mut i2 = Ideal::from_texts(&r, &["x*y"]).unwrap();
        assert!(s1.ideal_equal(&mut i2, &guard()).unwrap().equal);
        // monotone and idempotent
        let mut sat2 = s.saturate(&x, &guard()).unwrap();
        assert!(sat2.ideal_equal(&mut s, &guard()).unwrap().equal);
        for g in i.gens() {
            assert!(s.contains(g, &guard()).unwrap());
        }
    }

    #[test]
    fn intersection_examples() {
        let r = ring(&["x", "y", "pi"]);
        let a = Ideal::from_texts(&r, &["x"]).unwrap();
        let b = Ideal::from_texts(&r, &["y"]).unwrap();
        let mut m = a.intersect(&b, &guard()).unwrap();
        let mut expect = Ideal::from_texts(&r, &["x*y"]).unwrap();
        assert!(m.ideal_equal(&mut expect, &guard()).unwrap().equal);
        // I ∩ I = I
        let mut self_int = a.intersect(&a, &guard()).unwrap();
        let mut a2 = Ideal::from_texts(&r, &["x"]).unwrap();
        assert!(self_int.ideal_equal(&mut a2, &guard()).unwrap().equal);
        // containment in both
        for g in m.gens().to_vec() {
            let mut ai = Ideal::from_texts(&r, &["x"]).unwrap();
            let mut bi = Ideal::from_texts(&r, &["y"]).unwrap();
            assert!(ai.contains(&g, &guard()).unwrap());
            assert!(bi.contains(&g, &guard()).unwrap());
        }
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["x", "y", "pi"]);
        let mut zero = Ideal::new(&r, vec![]);
        assert_eq!(zero.dim_leading(&guard()).unwrap(), 3);
        let mut i = Ideal::from_texts(&r, &["x"]).unwrap();
        assert_eq!(i.dim_leading(&guard()).unwrap(), 2);
        let mut u = Ideal::from_texts(&r, &["x", "x + 1"]).unwrap();
        assert!(u.dim_leading(&guard()).is_err());
    }

    #[test]
    fn groebner_idempotent_and_order_invariant() {
        let r = ring(&["x", "y", "z", "pi"]);
        let texts = ["x*y - z", "y^2 - pi", "x*z - y*pi"];
        let mut i = Ideal::from_texts(&r, &texts).unwrap();
        let gb1 = i.groebner(&guard()).unwrap();
        let mut again = Ideal::new(&r, gb1.clone());
        assert_eq!(again.groebner(&guard()).unwrap(), gb1);
        // permuted generator order gives the identical reduced basis
        let mut perm = Ideal::from_texts(&r, &["y^2 - pi", "x*z - y*pi", "x*y - z"]).unwrap();
        assert_eq!(perm.groebner(&guard()).unwrap(), gb1);
    }

    #[test]
    fn guard_trips() {
        let r = ring(&["x", "y", "z", "pi"]);
        let texts = ["x^3*y - z^2", "y^3 - x*pi", "z^3 - y*x^2"];
        let i = Ideal::from_texts(&r, &texts).unwrap();
        let tight = Guard::with_pairs(1);
        let res = buchberger(&r, i.gens(), &tight);
        assert!(matches!(res, Err(KernelError::GuardTripped(_))));
    }

    #[test]
    fn presolve_solves_linear_chain() {
        let r = ring(&["a", "b", "c", "pi"]);
        // a = b^2, b solves nothing (squared), c = a + 1
        let gens = Ideal::from_texts(&r, &["a - b^2", "c - a - 1", "b^3 - pi"]).unwrap();
        let pre = presolve(&r, gens.gens(), &BTreeSet::new()).unwrap();
        assert!(pre.solved.contains_key("a"));
        assert!(pre.solved.contains_key("c"));
        assert_eq!(pre.ring.nvars(), 2); // b, pi
        assert_eq!(pre.gens.len(), 1);
    }
}

//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are held as a vector of (exponent vector, coefficient) pairs in
//! strictly decreasing monomial order with no zero coefficients, so two
//! polynomials are equal iff their term lists are equal. All arithmetic
//! normalizes through the ring's coefficient domain.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::KernelError;
use crate::ring::{PolyRing, VarId};

/// Exponent vector; index `i` is the exponent of ring variable `i`.
pub type Monomial = Vec<u16>;

/// A polynomial in canonical sparse form.
#[derive(Clone)]
pub struct Polynomial {
    ring: PolyRing,
    /// Terms in strictly decreasing monomial order, coefficients nonzero.
    terms: Vec<(Monomial, BigRational)>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &PolyRing) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &PolyRing, c: BigRational) -> Self {
        let c = ring.domain().normalize(c).expect("constant in domain");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(vec![0; ring.nvars()], c)],
        }
    }

    pub fn from_int(ring: &PolyRing, n: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational `n/d` as a constant polynomial.
    pub fn from_ratio(ring: &PolyRing, n: i64, d: i64) -> Self {
        Self::constant(
            ring,
            BigRational::new(BigInt::from(n), BigInt::from(d)),
        )
    }

    pub fn var(ring: &PolyRing, id: VarId) -> Self {
        let mut m = vec![0u16; ring.nvars()];
        m[id] = 1;
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, BigRational::one())],
        }
    }

    pub fn var_named(ring: &PolyRing, name: &str) -> Result<Self, KernelError> {
        Ok(Self::var(ring, ring.var_id(name)?))
    }

    /// The uniformizer variable `pi`.
    pub fn pi(ring: &PolyRing) -> Self {
        Self::var(ring, ring.pi_id())
    }

    /// Builds a polynomial from unsorted raw terms, combining duplicates.
    pub fn from_terms(
        ring: &PolyRing,
        raw: Vec<(Monomial, BigRational)>,
    ) -> Result<Self, KernelError> {
        let mut map: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
        for (m, c) in raw {
            debug_assert_eq!(m.len(), ring.nvars());
            let c = ring.domain().normalize(c)?;
            let entry = map.entry(m).or_insert_with(BigRational::zero);
            *entry = ring.domain().normalize(entry.clone() + c)?;
        }
        let mut terms: Vec<(Monomial, BigRational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_mono(&b.0, &a.0));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }

    /// Nonzero constant (degree-0) polynomial?
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    /// Leading term under the ring order; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    fn check_ring(&self, other: &Self) -> Result<(), KernelError> {
        if self.ring != other.ring {
            return Err(KernelError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, KernelError> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let mut out: Vec<(Monomial, BigRational)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ring.cmp_mono(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring
                        .domain()
                        .normalize(&self.terms[i].1 + &other.terms[j].1)?;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = self.ring.domain().normalize(-c).expect("negate");
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, KernelError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KernelError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut raw: Vec<(Monomial, BigRational)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                raw.push((m, ca * cb));
            }
        }
        Self::from_terms(&self.ring, raw)
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, mono: &Monomial, coeff: &BigRational) -> Result<Self, KernelError> {
        if coeff.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mm: Monomial = m.iter().zip(mono.iter()).map(|(x, y)| x + y).collect();
            let cc = self.ring.domain().normalize(c * coeff)?;
            if !cc.is_zero() {
                terms.push((mm, cc));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self, KernelError> {
        self.mul_term(&vec![0; self.ring.nvars()], c)
    }

    pub fn pow(&self, e: u32) -> Result<Self, KernelError> {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Leading coefficient made `1`.
    pub fn monic(&self) -> Result<Self, KernelError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.ring.domain().invert(c)?;
                self.scale(&inv)
            }
        }
    }

    /// True if the variable occurs in any term.
    pub fn uses_var(&self, id: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m[id] > 0)
    }

    /// Ring homomorphism determined by a variable -> polynomial map.
    ///
    /// Every mapped image must lie in `target`; unmapped variables must exist
    /// (by name) in `target`. Composition of substitutions equals
    /// substitution by the composed map.
    pub fn substitute(
        &self,
        target: &PolyRing,
        map: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial, KernelError> {
        for img in map.values() {
            if img.ring != *target {
                return Err(KernelError::RingMismatch);
            }
        }
        // images (and their power caches) are built lazily: only variables
        // that actually occur need to exist in the target ring
        let mut powers: Vec<Option<Vec<Polynomial>>> = vec![None; self.ring.nvars()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if powers[v].is_none() {
                    let name = self.ring.var_name(v);
                    let img = match map.get(name) {
                        Some(p) => p.clone(),
                        None => Polynomial::var_named(target, name)?,
                    };
                    powers[v] = Some(vec![Polynomial::one(target), img]);
                }
                let cache = powers[v].as_mut().unwrap();
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1])?;
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Renames this polynomial into another ring with the same variable names
    /// available (used when only the order differs or the target is larger).
    pub fn into_ring(&self, target: &PolyRing) -> Result<Polynomial, KernelError> {
        self.substitute(target, &BTreeMap::new())
    }

    /// Evaluates at a point of `F_q`, all variables assigned.
    ///
    /// Coefficient denominators must be coprime to `q`.
    pub fn eval_point(
        &self,
        point: &BTreeMap<String, u64>,
        q: u64,
    ) -> Result<u64, KernelError> {
        if !crate::coeff::is_prime(q) || q == 2 {
            return Err(KernelError::BadModulus(q.to_string()));
        }
        let mut assign: Vec<u64> = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            match point.get(name) {
                Some(&v) => assign.push(v % q),
                None => return Err(KernelError::UnassignedVariable(name.clone())),
            }
        }
        let compiled = self.compile_mod(q)?;
        Ok(compiled.eval(&assign, q))
    }

    /// Reduces the polynomial to a fast mod-q evaluator.
    pub fn compile_mod(&self, q: u64) -> Result<CompiledPoly, KernelError> {
        let domain = crate::coeff::CoeffDomain::prime_field(q)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = domain.normalize(c.clone())?;
            let cu = c
                .to_integer()
                .to_u64()
                .ok_or_else(|| KernelError::Invalid("coefficient out of u64".to_string()))?;
            if cu % q != 0 {
                terms.push((m.clone(), cu % q));
            }
        }
        Ok(CompiledPoly { terms })
    }

    /// Canonical total order on polynomials of one ring, used wherever a
    /// deterministic, input-order-independent choice must be made.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let n = self.terms.len().min(other.terms.len());
        for i in 0..n {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[i];
            match self.ring.cmp_mono(ma, mb) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match ca.cmp(cb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    // ---- Text format ----

    /// Prints in the exchange grammar: terms in decreasing order, explicit
    /// `*` between factors, `^` for exponents, rational coefficients as
    /// `num/den`. Example: `2*s_2*s_4 + s_3^2 - 2*pi`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant_mono = m.iter().all(|&e| e == 0);
            if !mag.is_one() || constant_mono {
                factors.push(ratio_text(&mag));
            }
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.ring.var_name(v);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(alloc::format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the exchange grammar in `ring`.
    pub fn parse(ring: &PolyRing, text: &str) -> Result<Polynomial, KernelError> {
        Parser::new(ring, text).parse()
    }
}

fn ratio_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        alloc::format!("{}", c.numer())
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

/// A polynomial reduced mod q for fast evaluation over `F_q`.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(Monomial, u64)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[u64], q: u64) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = (t * point[v]) % q;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

// ---- Parser ----

struct Parser<'a> {
    ring: &'a PolyRing,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a PolyRing, text: &str) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse(mut self) -> Result<Polynomial, KernelError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some('-') => {
                self.bump();
                -1i64
            }
            Some('+') => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let term = self.parse_term()?;
            let term = if sign < 0 { term.neg() } else { term };
            acc = acc.add(&term)?;
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(c) => {
                    return Err(KernelError::Parse(alloc::format!(
                        "unexpected character '{c}' at {}",
                        self.pos
                    )))
                }
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial, KernelError> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.parse_coefficient()?;
                Polynomial::constant(self.ring, coeff)
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_factor()?,
            other => {
                return Err(KernelError::Parse(alloc::format!(
                    "expected term, found {other:?} at {}",
                    self.pos
                )))
            }
        };
        while self.peek() == Some('*') {
            self.bump();
            let f = match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    Polynomial::constant(self.ring, self.parse_coefficient()?)
                }
                _ => self.parse_factor()?,
            };
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn parse_coefficient(&mut self) -> Result<BigRational, KernelError> {
        let num = self.parse_integer()?;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.parse_integer()?;
            if den.is_zero() {
                return Err(KernelError::Parse("zero denominator".to_string()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt, KernelError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(KernelError::Parse(alloc::format!(
                "expected integer at {start}"
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|_| KernelError::Parse(alloc::format!("bad integer {s}")))
    }

    fn parse_factor(&mut self) -> Result<Polynomial, KernelError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(KernelError::Parse(alloc::format!(
                "expected name at {start}"
            )));
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let var = Polynomial::var_named(self.ring, &name)?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.parse_integer()?;
            let e = e
                .to_u32()
                .ok_or_else(|| KernelError::Parse("exponent too large".to_string()))?;
            var.pow(e)
        } else {
            Ok(var)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring2() -> PolyRing {
        PolyRing::new(&["x", "y", "pi"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn add_cancels() {
        let r = ring2();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let y = Polynomial::var_named(&r, "y").unwrap();
        // (x+y) + (x-y) = 2x
        let a = x.add(&y).unwrap();
        let b = x.sub(&y).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s, x.scale(&BigRational::from_integer(2.into())).unwrap());
        // f + (-f) = 0
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let pi = Polynomial::pi(&r);
        let prod = x.add(&pi).unwrap().mul(&x.sub(&pi).unwrap()).unwrap();
        let expect = x.pow(2).unwrap().sub(&pi.pow(2).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn frobenius_over_f3() {
        let r = PolyRing::with_domain(
            &["x", "pi"],
            MonomialOrder::GrevLex,
            crate::coeff::CoeffDomain::prime_field(3).unwrap(),
        )
        .unwrap();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let xp1 = x.add(&Polynomial::one(&r)).unwrap();
        let cube = xp1.pow(3).unwrap();
        let expect = x.pow(3).unwrap().add(&Polynomial::one(&r)).unwrap();
        assert_eq!(cube, expect);
    }

    #[test]
    fn substitution() {
        let r = ring2();
        let f = Polynomial::var_named(&r, "x").unwrap().pow(2).unwrap();
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), Polynomial::pi(&r));
        let g = f.substitute(&r, &map).unwrap();
        assert_eq!(g, Polynomial::pi(&r).pow(2).unwrap());
        // identity map
        let id = f.substitute(&r, &BTreeMap::new()).unwrap();
        assert_eq!(id, f);
    }

    #[test]
    fn parse_print_roundtrip() {
        let r = PolyRing::new(&["s_2", "s_3", "s_4", "pi"], MonomialOrder::GrevLex).unwrap();
        let f = Polynomial::parse(&r, "2*s_2*s_4 + s_3^2 - 2*pi").unwrap();
        // printed in the ring's grevlex order
        assert_eq!(f.to_text(), "s_3^2 + 2*s_2*s_4 - 2*pi");
        let g = Polynomial::parse(&r, &f.to_text()).unwrap();
        assert_eq!(f, g);
        // rationals, constants, whitespace insensitivity
        let h = Polynomial::parse(&r, " -1/2 * s_3 ^ 2+ 7 ").unwrap();
        let h2 = Polynomial::parse(&r, &h.to_text()).unwrap();
        assert_eq!(h, h2);
        assert_eq!(Polynomial::parse(&r, "0").unwrap(), Polynomial::zero(&r));
    }

    #[test]
    fn eval_point_examples() {
        let r = ring2();
        let x = Polynomial::var_named(&r, "x").unwrap();
        let pi = Polynomial::pi(&r);
        let f = x.pow(2).unwrap().sub(&pi.pow(2).unwrap()).unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), 2u64);
        pt.insert("y".to_string(), 0u64);
        pt.insert("pi".to_string(), 2u64);
        assert_eq!(f.eval_point(&pt, 3).unwrap(), 0);
        assert_eq!(Polynomial::one(&r).eval_point(&pt, 3).unwrap(), 1);
        // missing assignment
        pt.remove("y");
        let g = Polynomial::var_named(&r, "y").unwrap();
        assert!(g.eval_point(&pt, 3).is_err());
        // denominator clash
        let h = Polynomial::from_ratio(&r, 1, 3);
        pt.insert("y".to_string(), 0);
        assert!(h.eval_point(&pt, 3).is_err());
    }
}

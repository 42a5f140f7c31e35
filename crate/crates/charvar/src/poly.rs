//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in descending ring order, so the leading term is
//! always `terms[0]`. Every constructor canonicalizes: no zero coefficients
//! are stored and the zero polynomial has no terms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, VariableRing};

/// Exact rational scalar; the coefficient field throughout.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    ring: Arc<VariableRing>,
    /// `(monomial, coefficient)` pairs, descending in the ring order, no zeros.
    terms: Vec<(Monomial, Rational)>,
}

pub(crate) fn same_ring(a: &Polynomial, b: &Polynomial) -> Result<()> {
    if Arc::ptr_eq(&a.ring, &b.ring) || a.ring == b.ring {
        Ok(())
    } else {
        Err(Error::RingMismatch(
            a.ring.describe(),
            b.ring.describe(),
        ))
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<VariableRing>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<VariableRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<VariableRing>, c: Rational) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::one(ring.n_vars()), c));
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn var(ring: &Arc<VariableRing>, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::var(ring.n_vars(), idx), Rational::one())],
        })
    }

    pub fn monomial(ring: &Arc<VariableRing>, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Canonicalize an arbitrary term list: merge duplicates, drop zeros, sort.
    pub fn from_terms(ring: &Arc<VariableRing>, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut map: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.exponents().len(), ring.n_vars());
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut v: Vec<(Monomial, Rational)> = map.into_iter().collect();
        v.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: Arc::clone(ring),
            terms: v,
        }
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub(crate) fn drop_leading(&mut self) {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms[0].1.clone());
        }
        None
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let idx = self
            .ring
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.terms.iter().map(|(m, _)| m.exponent(idx)).max())
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn add_signed(&self, other: &Polynomial, negate: bool) -> Polynomial {
        debug_assert!(same_ring(self, other).is_ok());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp_monomials(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb.clone() } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| {
            (m.clone(), if negate { -c.clone() } else { c.clone() })
        }));
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(self, other)?;
        Ok(self.add_signed(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(self, other)?;
        Ok(self.add_signed(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut map: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &short.terms {
            for (mb, cb) in &long.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &c;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut v: Vec<(Monomial, Rational)> = map.into_iter().collect();
        v.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Ok(Polynomial {
            ring: Arc::clone(&self.ring),
            terms: v,
        })
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).expect("same ring");
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Clear denominators and divide by the integer content; the leading
    /// coefficient ends up a positive integer. This is the normalization used
    /// for ideal generators.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let n: BigInt = c.numer() * (&den / c.denom());
            content = content.gcd(&n);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let lead_neg = self.terms[0].1.is_negative();
        if lead_neg {
            content = -content;
        }
        let factor = Rational::new(den, content);
        self.scale(&factor)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let idx = self
            .ring
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] = e - 1;
            terms.push((
                Monomial::from_exponents(exps),
                c * Rational::from_integer(BigInt::from(e)),
            ));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Substitute each variable by a polynomial in `target`. Every variable
    /// that actually occurs must be bound.
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let target = match bindings.values().next() {
            Some(p) => Arc::clone(p.ring()),
            None => {
                // A polynomial with no bound variables must be constant.
                return match self.constant_value() {
                    Some(c) => Ok(Polynomial::constant(&self.ring, c)),
                    None => Err(Error::UnboundVariable(
                        self.ring.vars()[0].clone(),
                    )),
                };
            }
        };
        for p in bindings.values() {
            if !(Arc::ptr_eq(p.ring(), &target) || **p.ring() == *target) {
                return Err(Error::RingMismatch(
                    p.ring().describe(),
                    target.describe(),
                ));
            }
        }
        // Per-variable power caches.
        let n = self.ring.n_vars();
        let mut bound: Vec<Option<&Polynomial>> = vec![None; n];
        for (name, p) in bindings {
            if let Some(idx) = self.ring.var_index(name) {
                bound[idx] = Some(p);
            }
        }
        let mut max_exp = vec![0u32; n];
        for (m, _) in &self.terms {
            for i in 0..n {
                max_exp[i] = max_exp[i].max(m.exponent(i));
            }
        }
        for i in 0..n {
            if max_exp[i] > 0 && bound[i].is_none() {
                return Err(Error::UnboundVariable(self.ring.vars()[i].clone()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut pv = vec![Polynomial::one(&target)];
            if let Some(base) = bound[i] {
                for k in 1..=max_exp[i] {
                    let next = pv[(k - 1) as usize].checked_mul(base)?;
                    pv.push(next);
                }
            }
            powers.push(pv);
        }
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for i in 0..n {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    term = term.checked_mul(&powers[i][e])?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point; every occurring variable must be bound.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let n = self.ring.n_vars();
        let mut vals: Vec<Option<&Rational>> = vec![None; n];
        for (name, v) in values {
            if let Some(idx) = self.ring.var_index(name) {
                vals[idx] = Some(v);
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..n {
                let e = m.exponent(i);
                if e > 0 {
                    let v = vals[i].ok_or_else(|| {
                        Error::UnboundVariable(self.ring.vars()[i].clone())
                    })?;
                    for _ in 0..e {
                        t *= v;
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Re-express this polynomial in another ring containing (at least) all
    /// variables that occur. Useful for moving between orders and for
    /// embedding into larger rings.
    pub fn in_ring(&self, target: &Arc<VariableRing>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            let mut p = self.clone();
            p.ring = Arc::clone(target);
            if self.ring.order() != target.order() {
                p.terms
                    .sort_by(|a, b| target.cmp_monomials(&b.0, &a.0));
            }
            return Ok(p);
        }
        let n_src = self.ring.n_vars();
        let n_dst = target.n_vars();
        let mut map = vec![usize::MAX; n_src];
        for i in 0..n_src {
            map[i] = target.var_index(self.ring.name(i)).unwrap_or(usize::MAX);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n_dst];
            for i in 0..n_src {
                let e = m.exponent(i);
                if e > 0 {
                    if map[i] == usize::MAX {
                        return Err(Error::UnknownVariable(self.ring.name(i).to_string()));
                    }
                    exps[map[i]] = e;
                }
            }
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Homogenize with respect to the total degree. `var_map` sends source
    /// variables to target variables and `hom_var` receives the degree
    /// balance, so that setting `hom_var = 1` recovers the input.
    pub fn homogenize(
        &self,
        target: &Arc<VariableRing>,
        var_map: &[(&str, &str)],
        hom_var: &str,
    ) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroInput("homogenize"));
        }
        let d = self.total_degree().expect("nonzero");
        let hom_idx = target
            .var_index(hom_var)
            .ok_or_else(|| Error::UnknownVariable(hom_var.to_string()))?;
        let mut src_to_dst = vec![usize::MAX; self.ring.n_vars()];
        for (s, t) in var_map {
            let si = self
                .ring
                .var_index(s)
                .ok_or_else(|| Error::UnknownVariable(s.to_string()))?;
            let ti = target
                .var_index(t)
                .ok_or_else(|| Error::UnknownVariable(t.to_string()))?;
            src_to_dst[si] = ti;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.n_vars()];
            for i in 0..self.ring.n_vars() {
                let e = m.exponent(i);
                if e > 0 {
                    if src_to_dst[i] == usize::MAX {
                        return Err(Error::UnboundVariable(self.ring.name(i).to_string()));
                    }
                    exps[src_to_dst[i]] += e;
                }
            }
            exps[hom_idx] += d - m.total_degree();
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Set `hom_var = 1` and map the remaining variables back.
    pub fn dehomogenize(
        &self,
        target: &Arc<VariableRing>,
        var_map: &[(&str, &str)],
        hom_var: &str,
    ) -> Result<Polynomial> {
        let hom_idx = self
            .ring
            .var_index(hom_var)
            .ok_or_else(|| Error::UnknownVariable(hom_var.to_string()))?;
        let mut src_to_dst = vec![usize::MAX; self.ring.n_vars()];
        for (s, t) in var_map {
            let si = self
                .ring
                .var_index(s)
                .ok_or_else(|| Error::UnknownVariable(s.to_string()))?;
            let ti = target
                .var_index(t)
                .ok_or_else(|| Error::UnknownVariable(t.to_string()))?;
            src_to_dst[si] = ti;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.n_vars()];
            for i in 0..self.ring.n_vars() {
                let e = m.exponent(i);
                if e > 0 && i != hom_idx {
                    if src_to_dst[i] == usize::MAX {
                        return Err(Error::UnboundVariable(self.ring.name(i).to_string()));
                    }
                    exps[src_to_dst[i]] += e;
                }
            }
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Variables inside a monomial print in alphabetical order; terms in
        // descending ring order.
        let mut var_order: Vec<usize> = (0..self.ring.n_vars()).collect();
        var_order.sort_by(|&a, &b| self.ring.name(a).cmp(self.ring.name(b)));
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "- ")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for &i in &var_order {
                let e = m.exponent(i);
                if e == 1 {
                    factors.push(self.ring.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.name(i), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A point of the projective plane with rational coordinates, stored in the
/// canonical scaling where the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePoint {
    coords: [Rational; 3],
}

impl ProjectivePoint {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let mut coords = [a, b, c];
        let pivot = coords.iter().position(|x| !x.is_zero());
        match pivot {
            None => Err(Error::ZeroInput("projective point")),
            Some(i) => {
                let inv = coords[i].recip();
                for x in coords.iter_mut() {
                    *x = &*x * &inv;
                }
                Ok(ProjectivePoint { coords })
            }
        }
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            fmt_coeff(&self.coords[0]),
            fmt_coeff(&self.coords[1]),
            fmt_coeff(&self.coords[2])
        )
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    ring: &'a Arc<VariableRing>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        if s.is_empty() {
            return Err(Error::Parse("expected a number".into()));
        }
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn parse_ident(&mut self) -> Result<String> {
        let mut s = String::new();
        match self.chars.peek() {
            Some(c) if c.is_ascii_alphabetic() => s.push(self.chars.next().unwrap()),
            _ => return Err(Error::Parse("expected a variable".into())),
        }
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
            s.push(self.chars.next().unwrap());
        }
        Ok(s)
    }

    /// factor := ident ('^' uint)?
    fn parse_factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let name = self.parse_ident()?;
        let idx = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        self.skip_ws();
        let mut e: u32 = 1;
        if matches!(self.chars.peek(), Some('^')) {
            self.chars.next();
            self.skip_ws();
            let n = self.parse_uint()?;
            e = u32::try_from(&n).map_err(|_| Error::Parse("exponent too large".into()))?;
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
        Ok(())
    }

    /// term := coeff ('*' factor)* | factor ('*' factor)*
    fn parse_term(&mut self) -> Result<(Monomial, Rational)> {
        self.skip_ws();
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.ring.n_vars()];
        match self.chars.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                self.skip_ws();
                let den = if matches!(self.chars.peek(), Some('/')) {
                    self.chars.next();
                    self.skip_ws();
                    let d = self.parse_uint()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff = Rational::new(num, den);
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.parse_factor(&mut exps)?;
            }
            _ => return Err(Error::Parse("expected a term".into())),
        }
        loop {
            self.skip_ws();
            if matches!(self.chars.peek(), Some('*')) {
                self.chars.next();
                self.skip_ws();
                self.parse_factor(&mut exps)?;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }
}

impl Polynomial {
    /// Parse the plain-text form, e.g. `z^2 - x^2*z - z + 2*x^2 - 1`.
    pub fn parse(ring: &Arc<VariableRing>, input: &str) -> Result<Polynomial> {
        let mut p = Parser {
            chars: input.chars().peekable(),
            ring,
        };
        p.skip_ws();
        if p.chars.peek().is_none() {
            return Err(Error::Parse("empty input".into()));
        }
        // special-case a bare "0"
        if input.trim() == "0" {
            return Ok(Polynomial::zero(ring));
        }
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        let mut sign = Rational::one();
        if matches!(p.chars.peek(), Some('-')) {
            p.chars.next();
            sign = -sign;
        } else if matches!(p.chars.peek(), Some('+')) {
            p.chars.next();
        }
        loop {
            let (m, c) = p.parse_term()?;
            terms.push((m, c * &sign));
            p.skip_ws();
            match p.chars.peek() {
                None => break,
                Some('+') => {
                    p.chars.next();
                    sign = Rational::one();
                }
                Some('-') => {
                    p.chars.next();
                    sign = -Rational::one();
                }
                Some(c) => {
                    return Err(Error::Parse(format!("unexpected character `{}`", c)));
                }
            }
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VariableRing;

    fn xz() -> Arc<VariableRing> {
        // curve ring convention: z is the strongest variable
        VariableRing::lex(&["z", "x"])
    }

    #[test]
    fn parse_display_round_trip() {
        let r = xz();
        let p = Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap();
        assert_eq!(p.to_string(), "z^2 - x^2*z - z + 2*x^2 - 1");
        let q = Polynomial::parse(&r, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn mul_difference_of_squares() {
        let r = VariableRing::lex(&["x"]);
        let a = Polynomial::parse(&r, "x + 1").unwrap();
        let b = Polynomial::parse(&r, "x - 1").unwrap();
        let expect = Polynomial::parse(&r, "x^2 - 1").unwrap();
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn assemble_curve_generator_term_by_term() {
        // z^2 - (1+x^2) z + 2 x^2 - 1, built from monomials
        let r = xz();
        let z = Polynomial::var(&r, "z").unwrap();
        let x = Polynomial::var(&r, "x").unwrap();
        let one = Polynomial::one(&r);
        let x2 = x.pow(2);
        let p = &(&z.pow(2) - &(&(&one + &x2) * &z)) + &(&x2.scale(&rat(2)) - &one);
        assert_eq!(p, Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap());
    }

    #[test]
    fn add_zero_identity() {
        let r = xz();
        let p = Polynomial::parse(&r, "3*z*x - 2").unwrap();
        assert_eq!(&p + &Polynomial::zero(&r), p);
    }

    #[test]
    fn substitute_collapses() {
        let r = xz();
        let target = VariableRing::lex(&["y"]);
        let p = Polynomial::parse(&r, "x + z").unwrap();
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), Polynomial::var(&target, "y").unwrap());
        b.insert("z".to_string(), Polynomial::var(&target, "y").unwrap());
        let q = p.substitute(&b).unwrap();
        assert_eq!(q, Polynomial::parse(&target, "2*y").unwrap());
    }

    #[test]
    fn substitute_on_curve_vanishes_at_one_one() {
        let r = xz();
        let g = Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("x".to_string(), rat(1));
        vals.insert("z".to_string(), rat(1));
        assert!(g.evaluate(&vals).unwrap().is_zero());
    }

    #[test]
    fn substitute_unbound_is_error() {
        let r = xz();
        let p = Polynomial::parse(&r, "x + z").unwrap();
        let target = VariableRing::lex(&["y"]);
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), Polynomial::var(&target, "y").unwrap());
        assert!(matches!(p.substitute(&b), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn homogenize_matches_projective_closure() {
        let r = xz();
        let proj = VariableRing::grevlex(&["X", "Y", "Z"]);
        let g = Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap();
        let h = g
            .homogenize(&proj, &[("x", "X"), ("z", "Z")], "Y")
            .unwrap();
        let expect =
            Polynomial::parse(&proj, "Y*Z^2 - Y^2*Z - X^2*Z + 2*X^2*Y - Y^3").unwrap();
        assert_eq!(h, expect);
        let back = h.dehomogenize(&r, &[("X", "x"), ("Z", "z")], "Y").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn homogenize_degree_one() {
        let r = VariableRing::lex(&["x"]);
        let proj = VariableRing::grevlex(&["X", "Y"]);
        let p = Polynomial::var(&r, "x").unwrap();
        let h = p.homogenize(&proj, &[("x", "X")], "Y").unwrap();
        assert_eq!(h, Polynomial::var(&proj, "X").unwrap());
    }

    #[test]
    fn homogenize_parabola() {
        let r = xz();
        let proj = VariableRing::grevlex(&["X", "Y", "Z"]);
        let p = Polynomial::parse(&r, "z - x^2").unwrap();
        let h = p.homogenize(&proj, &[("x", "X"), ("z", "Z")], "Y").unwrap();
        assert_eq!(h, Polynomial::parse(&proj, "Z*Y - X^2").unwrap());
    }

    #[test]
    fn derivative_of_curve_generator() {
        let r = xz();
        let g = Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap();
        assert_eq!(
            g.partial_derivative("x").unwrap(),
            Polynomial::parse(&r, "-2*x*z + 4*x").unwrap()
        );
        assert_eq!(
            g.partial_derivative("z").unwrap(),
            Polynomial::parse(&r, "2*z - 1 - x^2").unwrap()
        );
        let c = Polynomial::constant(&r, rat(7));
        assert!(c.partial_derivative("x").unwrap().is_zero());
    }

    #[test]
    fn primitive_integer_normalization() {
        let r = VariableRing::lex(&["x"]);
        let p = Polynomial::parse(&r, "2/3*x^2 - 4/3").unwrap();
        let q = p.primitive_integer();
        assert_eq!(q, Polynomial::parse(&r, "x^2 - 2").unwrap());
        let neg = Polynomial::parse(&r, "-2*x - 4").unwrap().primitive_integer();
        assert_eq!(neg, Polynomial::parse(&r, "x + 2").unwrap());
    }

    #[test]
    fn ring_mismatch_is_error() {
        let a = Polynomial::one(&VariableRing::lex(&["x"]));
        let b = Polynomial::one(&VariableRing::lex(&["y"]));
        assert!(a.checked_add(&b).is_err());
    }
}

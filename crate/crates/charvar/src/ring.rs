//! Variable rings, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    /// Lexicographic; the first ring variable is the strongest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Elimination order: the first `split` variables form a block compared
    /// before the rest (grevlex within each block). Any monomial meeting the
    /// first block beats any monomial free of it, which is what elimination
    /// needs.
    Block { split: usize },
}

/// An ordered list of variables together with a monomial order. All
/// polynomials carry an `Arc` to their ring; rings are immutable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VariableRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableRing {
    pub fn new(vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>> {
        let mut seen = Vec::new();
        for v in vars {
            if !valid_name(v) {
                return Err(Error::InvalidVariableName(v.to_string()));
            }
            if seen.contains(v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
            seen.push(v);
        }
        if let MonomialOrder::Block { split } = order {
            if split > vars.len() {
                return Err(Error::BadBlockSplit {
                    split,
                    nvars: vars.len(),
                });
            }
        }
        Ok(Arc::new(VariableRing {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
        }))
    }

    pub fn lex(vars: &[&str]) -> Arc<Self> {
        Self::new(vars, MonomialOrder::Lex).expect("valid ring")
    }

    pub fn grevlex(vars: &[&str]) -> Arc<Self> {
        Self::new(vars, MonomialOrder::GrevLex).expect("valid ring")
    }

    pub fn block(vars: &[&str], split: usize) -> Arc<Self> {
        Self::new(vars, MonomialOrder::Block { split }).expect("valid ring")
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    /// Same variables in the same order; the monomial order may differ.
    pub fn same_vars(&self, other: &VariableRing) -> bool {
        self.vars == other.vars
    }

    pub fn describe(&self) -> String {
        format!("{}[{}]", order_tag(self.order), self.vars.join(","))
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), self.n_vars());
        debug_assert_eq!(b.0.len(), self.n_vars());
        match self.order {
            MonomialOrder::Lex => lex_cmp(&a.0, &b.0),
            MonomialOrder::GrevLex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Block { split } => grevlex_cmp(&a.0[..split], &b.0[..split])
                .then_with(|| grevlex_cmp(&a.0[split..], &b.0[split..])),
        }
    }
}

fn order_tag(order: MonomialOrder) -> String {
    match order {
        MonomialOrder::Lex => "lex".into(),
        MonomialOrder::GrevLex => "grevlex".into(),
        MonomialOrder::Block { split } => format!("block{}", split),
    }
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Ties: the monomial with the smaller exponent in the last differing
    // position is the larger one.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// An exponent vector; the length always equals the ring's variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other
                    .0
                    .iter()
                    .zip(self.0.iter())
                    .map(|(b, a)| b - a)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Display for VariableRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_order() {
        let r = VariableRing::lex(&["x", "y"]);
        // x > y^5 under lex
        assert_eq!(r.cmp_monomials(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&m(&[1, 2]), &m(&[1, 3])), Ordering::Less);
    }

    #[test]
    fn grevlex_order() {
        let r = VariableRing::grevlex(&["x", "y", "z"]);
        // degree first
        assert_eq!(r.cmp_monomials(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // x^2 > y^2 (smaller exponent in the last differing slot wins): compare
        // x^2 vs z^2 -> x^2 has smaller z-exponent, so it is larger.
        assert_eq!(r.cmp_monomials(&m(&[2, 0, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        // classic grevlex: x*z < y^2
        assert_eq!(r.cmp_monomials(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates() {
        let r = VariableRing::block(&["t", "x", "y"], 1);
        // any t-monomial beats any t-free monomial
        assert_eq!(r.cmp_monomials(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&m(&[0, 1, 0]), &m(&[0, 0, 2])), Ordering::Less);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(VariableRing::new(&["x", "x"], MonomialOrder::Lex).is_err());
        assert!(VariableRing::new(&["2x"], MonomialOrder::Lex).is_err());
        assert!(VariableRing::new(&["x"], MonomialOrder::Block { split: 2 }).is_err());
    }

    #[test]
    fn monomial_ops() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.mul(&b), m(&[3, 4]));
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert!(!a.divides(&b));
        assert_eq!(m(&[1, 1]).quotient(&b), Some(m(&[0, 2])));
        assert!(m(&[1, 0]).coprime(&m(&[0, 4])));
    }
}

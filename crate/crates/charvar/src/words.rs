//! Freely reduced words in the rank-2 free group on `a`, `b`.
//!
//! Grammar: `a`, `b` are the generators, `A`, `B` their inverses, e.g. the
//! word `b^-1 a b a^-1` is written `BabA`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    A,
    AInv,
    B,
    BInv,
}

impl Gen {
    pub fn inverse(self) -> Gen {
        match self {
            Gen::A => Gen::AInv,
            Gen::AInv => Gen::A,
            Gen::B => Gen::BInv,
            Gen::BInv => Gen::B,
        }
    }

    pub fn is_inverse_letter(self) -> bool {
        matches!(self, Gen::AInv | Gen::BInv)
    }

    /// `true` for `a`/`A`, `false` for `b`/`B`.
    pub fn is_a_type(self) -> bool {
        matches!(self, Gen::A | Gen::AInv)
    }

    pub fn to_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::AInv => 'A',
            Gen::B => 'b',
            Gen::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Gen> {
        match c {
            'a' => Ok(Gen::A),
            'A' => Ok(Gen::AInv),
            'b' => Ok(Gen::B),
            'B' => Ok(Gen::BInv),
            other => Err(Error::Parse(format!(
                "invalid word letter `{}` (expected a, A, b, B)",
                other
            ))),
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeWord {
    letters: Vec<Gen>,
}

fn reduce(letters: impl IntoIterator<Item = Gen>) -> Vec<Gen> {
    let mut stack: Vec<Gen> = Vec::new();
    for g in letters {
        match stack.last() {
            Some(&top) if top == g.inverse() => {
                stack.pop();
            }
            _ => stack.push(g),
        }
    }
    stack
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: vec![] }
    }

    pub fn new(letters: Vec<Gen>) -> Self {
        FreeWord {
            letters: reduce(letters),
        }
    }

    pub fn generator(g: Gen) -> Self {
        FreeWord { letters: vec![g] }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            if c.is_whitespace() {
                continue;
            }
            letters.push(Gen::from_char(c)?);
        }
        Ok(FreeWord::new(letters))
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(
            self.letters
                .iter()
                .chain(other.letters.iter())
                .copied()
                .collect(),
        )
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Remove conjugating prefixes: `c w c^-1 -> w`. Traces only depend on
    /// the cyclic reduction.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut l = self.letters.clone();
        while l.len() >= 2 && *l.first().unwrap() == l.last().unwrap().inverse() {
            l.remove(0);
            l.pop();
        }
        FreeWord { letters: l }
    }

    pub fn rotated(&self, k: usize) -> FreeWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let n = self.letters.len();
        let k = k % n;
        let mut l = Vec::with_capacity(n);
        l.extend_from_slice(&self.letters[k..]);
        l.extend_from_slice(&self.letters[..k]);
        FreeWord { letters: l }
    }

    /// Canonical representative of the trace class: the least rotation of the
    /// cyclic reduction or of its inverse.
    pub fn trace_class_key(&self) -> Vec<Gen> {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return vec![];
        }
        let n = w.len();
        let inv = w.inverse();
        let mut best: Option<Vec<Gen>> = None;
        for k in 0..n {
            for cand in [w.rotated(k).letters, inv.rotated(k).letters] {
                match &best {
                    Some(b) if *b <= cand => {}
                    _ => best = Some(cand),
                }
            }
        }
        best.unwrap()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for g in &self.letters {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let w = FreeWord::parse("aAbB").unwrap();
        assert!(w.is_empty());
        let v = FreeWord::parse("abBA").unwrap();
        assert!(v.is_empty());
        let r = FreeWord::parse("BAbaBabABa").unwrap();
        assert_eq!(r.len(), 10);
        assert_eq!(r.to_string(), "BAbaBabABa");
    }

    #[test]
    fn inverse_and_concat() {
        let w = FreeWord::parse("abA").unwrap();
        assert_eq!(w.inverse().to_string(), "aBA");
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(FreeWord::parse("ab").unwrap().pow(-2).to_string(), "BABA");
    }

    #[test]
    fn cyclic_reduction() {
        let w = FreeWord::parse("aBabAA").unwrap();
        // a (BabA) a^-1 -> wait: first = a, last = A: peel
        let c = w.cyclically_reduced();
        assert_eq!(c.to_string(), "BabA");
    }

    #[test]
    fn trace_class_key_identifies_conjugates() {
        let w = FreeWord::parse("abAB").unwrap();
        let conj = FreeWord::parse("babABB").unwrap(); // b (abAB) b^-1 cyclic rep
        assert_eq!(w.trace_class_key(), conj.trace_class_key());
        assert_eq!(w.trace_class_key(), w.inverse().trace_class_key());
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(FreeWord::parse("abc").is_err());
    }
}

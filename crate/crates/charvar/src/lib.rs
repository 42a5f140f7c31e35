//! Exact computations on SL2(C) character varieties of two-generator knot
//! groups: trace calculus in the free group, Groebner-basis elimination,
//! boundary restriction maps, A-polynomial components, Culler-Shalen norms
//! and Dehn-surgery intersection invariants.
//!
//! Everything is computed over the rationals with arbitrary precision;
//! irrational points are handled through the ideals that cut them out, never
//! as floating-point approximations.

pub mod error;
pub mod gcd;
pub mod groebner;
pub mod knot;
pub mod poly;
pub mod ring;
pub mod variety;
pub mod trace;
pub mod words;

pub use error::{Error, Result};
pub use poly::{rat, ratio, Polynomial, Rational};
pub use ring::{Monomial, MonomialOrder, VariableRing};

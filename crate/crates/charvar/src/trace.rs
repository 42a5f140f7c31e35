//! SL2 trace calculus on the rank-2 free group.
//!
//! `trace_polynomial` rewrites the trace of any word in `a`, `b` as a
//! polynomial in `x = tr(a)`, `y = tr(b)`, `z = tr(ab)`, valid for every SL2
//! representation. The rewriting uses only the trace identities
//! `tr(AB) = tr(BA)`, `tr(A) = tr(A^-1)`, `tr(AB) = tr(A)tr(B) - tr(AB^-1)`
//! and the power recursion `tr(A^m) = tr(A^(m-1))tr(A) - tr(A^(m-2))`;
//! relations of a particular group enter only later through ideal reduction.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial};
use crate::ring::VariableRing;
use crate::words::{FreeWord, Gen};

/// The ring `Q[x, y, z]` carrying free-group trace polynomials.
pub fn trace_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::grevlex(&["x", "y", "z"])))
}

/// The plane-curve ring `Q[x, z]` for conjugate-meridian presentations. The
/// order makes `z` the strongest variable, so reduction modulo a curve
/// generator that is monic of degree two in `z` is ordinary division in `z`.
pub fn curve_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::lex(&["z", "x"])))
}

/// The ring `Q[u, v, w]` of trace coordinates on the boundary torus.
pub fn boundary_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::grevlex(&["u", "v", "w"])))
}

struct TraceCalc {
    ring: Arc<VariableRing>,
    x: Polynomial,
    y: Polynomial,
    z: Polynomial,
    memo: HashMap<Vec<Gen>, Polynomial>,
}

impl TraceCalc {
    fn new() -> Self {
        let ring = trace_ring();
        let x = Polynomial::var(&ring, "x").unwrap();
        let y = Polynomial::var(&ring, "y").unwrap();
        let z = Polynomial::var(&ring, "z").unwrap();
        TraceCalc {
            ring,
            x,
            y,
            z,
            memo: HashMap::new(),
        }
    }

    fn gen_trace(&self, g: Gen) -> Polynomial {
        if g.is_a_type() {
            self.x.clone()
        } else {
            self.y.clone()
        }
    }

    fn pair_trace(&self, g: Gen, h: Gen) -> Polynomial {
        debug_assert_ne!(g.is_a_type(), h.is_a_type());
        // tr(ab) = tr(ba) = tr(b^-1 a^-1) = z; mixed case tr(a b^-1) = xy - z
        if g.is_inverse_letter() == h.is_inverse_letter() {
            self.z.clone()
        } else {
            &(&self.x * &self.y) - &self.z
        }
    }

    fn chebyshev_power(&self, s: &Polynomial, n: usize) -> Polynomial {
        // tr(A^n) from tr(A^0) = 2, tr(A^1) = s
        let mut prev = Polynomial::constant(&self.ring, rat(2));
        let mut cur = s.clone();
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            let next = &(&cur * s) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    fn eval(&mut self, w: &FreeWord) -> Polynomial {
        let w = w.cyclically_reduced();
        let letters = w.letters();
        match letters.len() {
            0 => return Polynomial::constant(&self.ring, rat(2)),
            1 => return self.gen_trace(letters[0]),
            2 => {
                let (g, h) = (letters[0], letters[1]);
                if g.is_a_type() == h.is_a_type() {
                    // reduced => same letter twice (possibly inverted)
                    let s = self.gen_trace(g);
                    return &(&s * &s) - &Polynomial::constant(&self.ring, rat(2));
                }
                return self.pair_trace(g, h);
            }
            _ => {}
        }
        let key = w.trace_class_key();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let result = if let Some(i) = letters.iter().position(|g| g.is_inverse_letter()) {
            // rotate an inverse letter to the front: w = s^-1 v, then
            // tr(w) = tr(v s^-1) = tr(v) tr(s) - tr(v s)
            let rot = w.rotated(i);
            let rl = rot.letters();
            let s = rl[0].inverse();
            let v = FreeWord::new(rl[1..].to_vec());
            let va = v.concat(&FreeWord::generator(s));
            let t = self.gen_trace(s);
            &(&t * &self.eval(&v)) - &self.eval(&va)
        } else if letters.iter().all(|g| g.is_a_type())
            || letters.iter().all(|g| !g.is_a_type())
        {
            // a pure power
            let s = self.gen_trace(letters[0]);
            self.chebyshev_power(&s, letters.len())
        } else {
            // positive mixed word: split at two occurrences of one letter,
            // tr(s u s v) = tr(su) tr(sv) - tr(u v^-1)
            let n_a = letters.iter().filter(|g| g.is_a_type()).count();
            let split_a = n_a >= 2;
            let mut occ = letters
                .iter()
                .enumerate()
                .filter(|(_, g)| g.is_a_type() == split_a)
                .map(|(i, _)| i);
            let i = occ.next().expect("two occurrences");
            let j = occ.next().expect("two occurrences");
            let rot = w.rotated(i);
            let cut = j - i;
            let rl = rot.letters();
            let su = FreeWord::new(rl[..cut].to_vec());
            let sv = FreeWord::new(rl[cut..].to_vec());
            let u = FreeWord::new(rl[1..cut].to_vec());
            let v = FreeWord::new(rl[cut + 1..].to_vec());
            let uv_inv = u.concat(&v.inverse());
            &(&self.eval(&su) * &self.eval(&sv)) - &self.eval(&uv_inv)
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// The universal trace polynomial of a word: `P(x, y, z)` with
/// `tr(rho(w)) = P(tr rho(a), tr rho(b), tr rho(ab))` for every SL2
/// representation `rho`.
pub fn trace_polynomial(w: &FreeWord) -> Polynomial {
    TraceCalc::new().eval(w)
}

/// Substitute `y := x` (conjugate generators share a trace) and land in the
/// plane-curve ring `Q[x, z]`.
pub fn specialize_conjugate(tp: &Polynomial) -> Result<Polynomial> {
    let target = curve_ring();
    let x = Polynomial::var(&target, "x")?;
    let z = Polynomial::var(&target, "z")?;
    let mut bindings = BTreeMap::new();
    bindings.insert("x".to_string(), x.clone());
    bindings.insert("y".to_string(), x);
    bindings.insert("z".to_string(), z);
    tp.substitute(&bindings)
}

/// Trace of a commuting peripheral pair: the polynomial `P_{p,q}(u, v, w)`
/// with `P_{p,q} = m^p l^q + m^-p l^-q` whenever `u = m + 1/m`,
/// `v = l + 1/l`, `w = ml + 1/(ml)`. Valid for every commuting SL2 pair.
pub fn commuting_trace(p: i64, q: i64) -> Polynomial {
    let ring = boundary_ring();
    let u = Polynomial::var(&ring, "u").unwrap();
    let v = Polynomial::var(&ring, "v").unwrap();
    let w = Polynomial::var(&ring, "w").unwrap();
    let two = Polynomial::constant(&ring, rat(2));
    if p == 0 && q == 0 {
        return two;
    }
    // tr is invariant under inversion of the pair
    let (p, q) = if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    };
    // T(p, 0) = T(|p|, 0): Chebyshev ladder in u
    let t_p0 = {
        let pa = p.abs();
        let mut prev = two.clone();
        let mut cur = u.clone();
        if pa == 0 {
            prev.clone()
        } else {
            for _ in 1..pa {
                let next = &(&cur * &u) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    if q == 0 {
        return t_p0;
    }
    // T(p, 1): ladder in p from T(0,1) = v, T(1,1) = w, both directions
    let t_p1 = {
        if p >= 0 {
            let mut prev = v.clone();
            let mut cur = w.clone();
            if p == 0 {
                prev.clone()
            } else {
                for _ in 1..p {
                    let next = &(&cur * &u) - &prev;
                    prev = cur;
                    cur = next;
                }
                cur
            }
        } else {
            // downward: T(k,1) = u*T(k+1,1) - T(k+2,1)
            let mut above2 = w.clone(); // T(1,1)
            let mut above1 = v.clone(); // T(0,1)
            let mut cur = &(&above1 * &u) - &above2; // T(-1,1)
            for _ in 1..(-p) {
                above2 = above1;
                above1 = cur;
                cur = &(&above1 * &u) - &above2;
            }
            cur
        }
    };
    if q == 1 {
        return t_p1;
    }
    // climb in q: T(p, k) = v*T(p, k-1) - T(p, k-2)
    let mut prev = t_p0;
    let mut cur = t_p1;
    for _ in 2..=q {
        let next = &(&cur * &v) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The word `meridian^p * longitude^q` representing the peripheral class
/// `p mu + q lambda`. The two factors commute in the knot group, so the trace
/// does not depend on the chosen representative; this fixes one.
pub fn peripheral_word(
    p: i64,
    q: i64,
    meridian: &FreeWord,
    longitude: &FreeWord,
) -> Result<FreeWord> {
    if p == 0 && q == 0 {
        return Err(Error::ZeroSlope);
    }
    if p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
        return Err(Error::NonCoprimeSlope(p, q));
    }
    Ok(meridian.pow(p).concat(&longitude.pow(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rational;

    fn tp(s: &str) -> Polynomial {
        trace_polynomial(&FreeWord::parse(s).unwrap())
    }

    fn tp_conj(s: &str) -> Polynomial {
        specialize_conjugate(&tp(s)).unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(&trace_ring(), s).unwrap()
    }

    fn cpoly(s: &str) -> Polynomial {
        Polynomial::parse(&curve_ring(), s).unwrap()
    }

    fn bpoly(s: &str) -> Polynomial {
        Polynomial::parse(&boundary_ring(), s).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(tp("a"), poly("x"));
        assert_eq!(tp(""), poly("2"));
        assert_eq!(tp("A"), poly("x"));
        assert_eq!(tp("b"), poly("y"));
        assert_eq!(tp("ab"), poly("z"));
        assert_eq!(tp("aB"), poly("x*y - z"));
        assert_eq!(tp("aa"), poly("x^2 - 2"));
    }

    #[test]
    fn conjugate_specializations_match_known_traces() {
        // tr(a b^-1) with y = x
        assert_eq!(tp_conj("aB"), cpoly("x^2 - z"));
        assert_eq!(specialize_conjugate(&poly("y")).unwrap(), cpoly("x"));
        // tr(b^-1 a b a^-1)
        assert_eq!(tp_conj("BabA"), cpoly("z^2 - x^2*z + 2*x^2 - 2"));
        assert_eq!(
            tp_conj("AbaB"), // a^-1 b a b^-1, the other subdivision
            cpoly("z^2 - x^2*z + 2*x^2 - 2")
        );
        // tr(b a^-1 a^-1 b)
        assert_eq!(tp_conj("bAAb"), cpoly("x^4 - z*x^2 - 2*x^2 + 2"));
        // tr(a a b)
        assert_eq!(tp_conj("aab"), cpoly("x*z - x"));
        // tr(a^-1 a^-1 b) = x(x^2 - z) - x
        assert_eq!(tp_conj("AAb"), cpoly("x^3 - x*z - x"));
        // tr(b a^-1 a^-1 b a b^-1) = x^2 - z
        assert_eq!(tp_conj("bAAbaB"), cpoly("x^2 - z"));
        // tr(a b^-1 a) = tr(a a b^-1) = x^3 - zx - x
        assert_eq!(tp_conj("aBa"), cpoly("x^3 - x*z - x"));
        assert_eq!(tp_conj("aaB"), cpoly("x^3 - x*z - x"));
        // tr(a b^-1 a b a^-1) = x
        assert_eq!(tp_conj("aBabA"), cpoly("x"));
    }

    #[test]
    fn commutator_trace() {
        let expect = poly("x^2 + y^2 + z^2 - x*y*z - 2");
        assert_eq!(tp("abAB"), expect);
        assert_eq!(tp("BabA"), expect); // cyclic class of the commutator
        assert_eq!(
            specialize_conjugate(&expect).unwrap(),
            cpoly("2*x^2 + z^2 - x^2*z - 2")
        );
    }

    #[test]
    fn invariance_under_inverse_and_rotation() {
        let words = ["abABaabB", "BBaabAba", "aabbABab", "babAbaBB"];
        for w in words {
            let w = FreeWord::parse(w).unwrap();
            let t = trace_polynomial(&w);
            assert_eq!(t, trace_polynomial(&w.inverse()));
            for k in 1..w.len() {
                assert_eq!(t, trace_polynomial(&w.rotated(k)));
            }
        }
    }

    // Exact 2x2 matrices over the rationals for the ground-truth oracle.
    #[derive(Clone, Debug)]
    struct Mat {
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    }

    impl Mat {
        fn id() -> Mat {
            Mat {
                a: rat(1),
                b: rat(0),
                c: rat(0),
                d: rat(1),
            }
        }

        fn shear_upper(r: Rational) -> Mat {
            Mat {
                a: rat(1),
                b: r,
                c: rat(0),
                d: rat(1),
            }
        }

        fn shear_lower(r: Rational) -> Mat {
            Mat {
                a: rat(1),
                b: rat(0),
                c: r,
                d: rat(1),
            }
        }

        fn mul(&self, o: &Mat) -> Mat {
            Mat {
                a: &(&self.a * &o.a) + &(&self.b * &o.c),
                b: &(&self.a * &o.b) + &(&self.b * &o.d),
                c: &(&self.c * &o.a) + &(&self.d * &o.c),
                d: &(&self.c * &o.b) + &(&self.d * &o.d),
            }
        }

        fn inv(&self) -> Mat {
            // det = 1 by construction
            Mat {
                a: self.d.clone(),
                b: -self.b.clone(),
                c: -self.c.clone(),
                d: self.a.clone(),
            }
        }

        fn trace(&self) -> Rational {
            &self.a + &self.d
        }
    }

    fn word_matrix(w: &FreeWord, a: &Mat, b: &Mat) -> Mat {
        let mut m = Mat::id();
        for g in w.letters() {
            let f = match g {
                Gen::A => a.clone(),
                Gen::AInv => a.inv(),
                Gen::B => b.clone(),
                Gen::BInv => b.inv(),
            };
            m = m.mul(&f);
        }
        m
    }

    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        fn small(&mut self, lo: i64, hi: i64) -> i64 {
            lo + (self.next() % ((hi - lo + 1) as u64)) as i64
        }
    }

    #[test]
    fn matrix_oracle_on_random_words() {
        let mut rng = Lcg(0x5eed_cafe);
        let ring = trace_ring();
        for _ in 0..200 {
            // random SL2 pair from shear products (exact, determinant one)
            let mut a = Mat::id();
            let mut b = Mat::id();
            for k in 0..3 {
                let ra = rat(rng.small(-3, 3));
                let rb = rat(rng.small(-3, 3));
                if k % 2 == 0 {
                    a = a.mul(&Mat::shear_upper(ra));
                    b = b.mul(&Mat::shear_lower(rb));
                } else {
                    a = a.mul(&Mat::shear_lower(ra));
                    b = b.mul(&Mat::shear_upper(rb));
                }
            }
            let len = rng.small(1, 12) as usize;
            let letters: Vec<Gen> = (0..len)
                .map(|_| match rng.small(0, 3) {
                    0 => Gen::A,
                    1 => Gen::AInv,
                    2 => Gen::B,
                    _ => Gen::BInv,
                })
                .collect();
            let w = FreeWord::new(letters);
            let expected = word_matrix(&w, &a, &b).trace();
            let mut vals = BTreeMap::new();
            vals.insert("x".to_string(), a.trace());
            vals.insert("y".to_string(), b.trace());
            vals.insert("z".to_string(), a.mul(&b).trace());
            let got = trace_polynomial(&w)
                .in_ring(&ring)
                .unwrap()
                .evaluate(&vals)
                .unwrap();
            assert_eq!(got, expected, "word {}", w);
        }
    }

    #[test]
    fn commuting_trace_base_and_recursion() {
        assert_eq!(commuting_trace(0, 0), bpoly("2"));
        assert_eq!(commuting_trace(1, 0), bpoly("u"));
        assert_eq!(commuting_trace(0, 1), bpoly("v"));
        assert_eq!(commuting_trace(1, 1), bpoly("w"));
        assert_eq!(commuting_trace(2, 0), bpoly("u^2 - 2"));
        assert_eq!(commuting_trace(2, 1), bpoly("u*w - v"));
        assert_eq!(commuting_trace(3, 1), bpoly("u^2*w - w - u*v"));
        assert_eq!(commuting_trace(-1, 1), bpoly("u*v - w"));
        assert_eq!(commuting_trace(-1, -1), bpoly("w"));
    }

    #[test]
    fn commuting_trace_laurent_samples() {
        // evaluate on exact diagonal pairs
        let mut rng = Lcg(0xfeed);
        for _ in 0..40 {
            let m = crate::poly::ratio(rng.small(1, 9), rng.small(1, 9));
            let l = crate::poly::ratio(rng.small(1, 9), rng.small(1, 9));
            let p = rng.small(-6, 6);
            let q = rng.small(-6, 6);
            let pow = |base: &Rational, e: i64| -> Rational {
                let mut acc = rat(1);
                for _ in 0..e.unsigned_abs() {
                    acc *= base;
                }
                if e < 0 {
                    acc.recip()
                } else {
                    acc
                }
            };
            let u = &m + &m.recip();
            let v = &l + &l.recip();
            let ml = &m * &l;
            let w = &ml + &ml.recip();
            let mut vals = BTreeMap::new();
            vals.insert("u".to_string(), u);
            vals.insert("v".to_string(), v);
            vals.insert("w".to_string(), w);
            let got = commuting_trace(p, q).evaluate(&vals).unwrap();
            let expect = &(&pow(&m, p) * &pow(&l, q)) + &(&pow(&m, -p) * &pow(&l, -q));
            assert_eq!(got, expect, "(p,q)=({},{})", p, q);
        }
    }

    #[test]
    fn peripheral_words() {
        let mu = FreeWord::parse("a").unwrap();
        let lambda = FreeWord::parse("BabAAbaB").unwrap();
        assert_eq!(peripheral_word(1, 0, &mu, &lambda).unwrap().to_string(), "a");
        assert_eq!(
            peripheral_word(0, 1, &mu, &lambda).unwrap(),
            lambda
        );
        assert_eq!(
            peripheral_word(3, 1, &mu, &lambda).unwrap().to_string(),
            "aaaBabAAbaB"
        );
        assert!(matches!(
            peripheral_word(2, 4, &mu, &lambda),
            Err(Error::NonCoprimeSlope(2, 4))
        ));
        assert!(matches!(
            peripheral_word(0, 0, &mu, &lambda),
            Err(Error::ZeroSlope)
        ));
    }
}

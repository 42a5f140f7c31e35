//! Polynomial gcd, squarefree parts and resultants via subresultant
//! pseudo-remainder sequences. Everything is exact over the rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{same_ring, Polynomial, Rational};
use crate::ring::Monomial;

/// `p / q` when the division is exact, `None` otherwise.
pub fn exact_div(p: &Polynomial, q: &Polynomial) -> Option<Polynomial> {
    if q.is_zero() {
        return None;
    }
    if p.is_zero() {
        return Some(Polynomial::zero(p.ring()));
    }
    same_ring(p, q).ok()?;
    let (qm, qc) = q.leading().expect("nonzero");
    let qm = qm.clone();
    let qc = qc.clone();
    let mut rem = p.clone();
    let mut quot_terms: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((rm, rc)) = rem.leading() {
        let t = qm.quotient(rm)?;
        let c = rc / &qc;
        let scaled = q.mul_monomial(&t).scale(&c);
        quot_terms.push((t, c));
        rem = &rem - &scaled;
    }
    Some(Polynomial::from_terms(p.ring(), quot_terms))
}

/// Does `q` divide `p` exactly?
pub fn divides(q: &Polynomial, p: &Polynomial) -> bool {
    exact_div(p, q).is_some()
}

fn degree_in_idx(p: &Polynomial, idx: usize) -> Option<u32> {
    p.terms().iter().map(|(m, _)| m.exponent(idx)).max()
}

/// Leading coefficient of `p` viewed as univariate in variable `idx`; the
/// result has `idx`-degree zero.
fn lead_coeff_in(p: &Polynomial, idx: usize) -> Polynomial {
    let d = degree_in_idx(p, idx).unwrap_or(0);
    let terms: Vec<(Monomial, Rational)> = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exponent(idx) == d)
        .map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[idx] = 0;
            (Monomial::from_exponents(e), c.clone())
        })
        .collect();
    Polynomial::from_terms(p.ring(), terms)
}

/// All coefficients of `p` in variable `idx`, ascending in the exponent.
pub(crate) fn coefficients_in(p: &Polynomial, idx: usize) -> Vec<(u32, Polynomial)> {
    let mut map: std::collections::BTreeMap<u32, Vec<(Monomial, Rational)>> = Default::default();
    for (m, c) in p.terms() {
        let e = m.exponent(idx);
        let mut exps = m.exponents().to_vec();
        exps[idx] = 0;
        map.entry(e)
            .or_default()
            .push((Monomial::from_exponents(exps), c.clone()));
    }
    map.into_iter()
        .map(|(e, terms)| (e, Polynomial::from_terms(p.ring(), terms)))
        .collect()
}

fn var_monomial(p: &Polynomial, idx: usize, e: u32) -> Monomial {
    let mut exps = vec![0u32; p.ring().n_vars()];
    exps[idx] = e;
    Monomial::from_exponents(exps)
}

/// Pseudo-remainder of `a` by `b` in variable `idx`:
/// `lc(b)^(da-db+1) * a = q*b + prem`, with `deg prem < deg b`.
fn prem(a: &Polynomial, b: &Polynomial, idx: usize) -> Polynomial {
    let db = degree_in_idx(b, idx).expect("b nonzero");
    let lb = lead_coeff_in(b, idx);
    let mut r = a.clone();
    let da = degree_in_idx(a, idx).unwrap_or(0);
    let mut n = da as i64 - db as i64 + 1;
    while !r.is_zero() {
        let dr = degree_in_idx(&r, idx).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = lead_coeff_in(&r, idx);
        let shift = var_monomial(a, idx, dr - db);
        r = &(&r * &lb) - &b.mul_monomial(&shift).checked_mul(&lr).expect("ring");
        n -= 1;
    }
    if n > 0 {
        let mut scale = Polynomial::one(a.ring());
        for _ in 0..n {
            scale = &scale * &lb;
        }
        r = &r * &scale;
    }
    r
}

/// Content of `p` with respect to variable `idx`: the gcd of its
/// `idx`-coefficients (monic normalization).
fn content_in(p: &Polynomial, idx: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.ring());
    for (_, c) in coefficients_in(p, idx) {
        g = gcd_inner(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn first_var_present(p: &Polynomial, q: &Polynomial) -> Option<usize> {
    let n = p.ring().n_vars();
    (0..n).find(|&i| {
        degree_in_idx(p, i).unwrap_or(0) > 0 || degree_in_idx(q, i).unwrap_or(0) > 0
    })
}

fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let idx = match first_var_present(p, q) {
        None => return Polynomial::one(p.ring()),
        Some(i) => i,
    };
    let dp = degree_in_idx(p, idx).unwrap_or(0);
    let dq = degree_in_idx(q, idx).unwrap_or(0);
    if dp == 0 {
        return gcd_inner(p, &content_in(q, idx));
    }
    if dq == 0 {
        return gcd_inner(q, &content_in(p, idx));
    }
    let cp = content_in(p, idx);
    let cq = content_in(q, idx);
    let c = gcd_inner(&cp, &cq);
    let mut a = exact_div(p, &cp).expect("content divides");
    let mut b = exact_div(q, &cq).expect("content divides");
    if degree_in_idx(&a, idx).unwrap_or(0) < degree_in_idx(&b, idx).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }
    // subresultant PRS on the primitive parts
    let mut g = Polynomial::one(p.ring());
    let mut h = Polynomial::one(p.ring());
    let result = loop {
        let da = degree_in_idx(&a, idx).expect("nonzero");
        let db = degree_in_idx(&b, idx).expect("nonzero");
        let d = da - db;
        let r = prem(&a, &b, idx);
        if r.is_zero() {
            break b;
        }
        if degree_in_idx(&r, idx).unwrap_or(0) == 0 {
            break Polynomial::one(p.ring());
        }
        a = b;
        let mut denom = g.clone();
        for _ in 0..d {
            denom = &denom * &h;
        }
        b = exact_div(&r, &denom).expect("subresultant divisibility");
        g = lead_coeff_in(&a, idx);
        h = if d == 0 {
            h
        } else {
            let mut gn = g.clone();
            for _ in 1..d {
                gn = &gn * &g;
            }
            let mut hd = Polynomial::one(p.ring());
            for _ in 1..d {
                hd = &hd * &h;
            }
            exact_div(&gn, &hd).expect("subresultant divisibility")
        };
    };
    if result.is_one() {
        return c;
    }
    let prim = exact_div(&result, &content_in(&result, idx)).expect("content divides");
    (&c * &prim).monic()
}

/// Greatest common divisor, monic in the ring order.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if !p.is_zero() && !q.is_zero() {
        same_ring(p, q)?;
    }
    Ok(gcd_inner(p, q).monic())
}

/// The product of the distinct irreducible factors of `p` (monic).
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(Error::ZeroInput("squarefree_part"));
    }
    let mut d = p.clone();
    for v in p.ring().vars().to_vec() {
        let dv = p.partial_derivative(&v)?;
        if dv.is_zero() {
            continue;
        }
        d = gcd(&d, &dv)?;
        if d.is_one() {
            break;
        }
    }
    let sq = exact_div(p, &d).expect("gcd divides");
    Ok(sq.monic())
}

/// Sylvester resultant with respect to `var`, computed along a
/// pseudo-remainder sequence.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: &str) -> Result<Polynomial> {
    same_ring(p, q)?;
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput("resultant"));
    }
    let idx = p
        .ring()
        .var_index(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    let dp = degree_in_idx(p, idx).unwrap_or(0);
    let dq = degree_in_idx(q, idx).unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(Error::ConstantResultant(var.to_string()));
    }
    if dp == 0 {
        return Ok(p.pow(dq));
    }
    if dq == 0 {
        return Ok(q.pow(dp));
    }
    let ring = p.ring().clone();
    let mut a = p.clone();
    let mut b = q.clone();
    let mut negative = false;
    let mut num = Polynomial::one(&ring);
    let mut den = Polynomial::one(&ring);
    let base = loop {
        let da = degree_in_idx(&a, idx).unwrap_or(0);
        let db = degree_in_idx(&b, idx).unwrap_or(0);
        if db == 0 {
            break b.pow(da);
        }
        if da < db {
            if (da as u64 * db as u64) % 2 == 1 {
                negative = !negative;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let e = da - db + 1;
        let r = prem(&a, &b, idx);
        if r.is_zero() {
            return Ok(Polynomial::zero(&ring));
        }
        let dr = degree_in_idx(&r, idx).unwrap_or(0);
        if (da as u64 * db as u64) % 2 == 1 {
            negative = !negative;
        }
        // res(a,b) = (-1)^(da*db) * lc(b)^(da - dr - e*db) * res(b,r)
        let k = da as i64 - dr as i64 - e as i64 * db as i64;
        let lb = lead_coeff_in(&b, idx);
        if k >= 0 {
            for _ in 0..k {
                num = &num * &lb;
            }
        } else {
            for _ in 0..(-k) {
                den = &den * &lb;
            }
        }
        a = b;
        b = r;
    };
    let mut total = &num * &base;
    if !den.is_one() {
        total = exact_div(&total, &den).expect("resultant scaling is exact");
    }
    if negative {
        total = -&total;
    }
    Ok(total)
}

/// Extract ascending coefficients of a polynomial that is univariate in `var`.
pub fn univariate_coefficients(p: &Polynomial, var: &str) -> Result<Vec<Rational>> {
    let idx = p
        .ring()
        .var_index(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    for (m, _) in p.terms() {
        for i in 0..p.ring().n_vars() {
            if i != idx && m.exponent(i) > 0 {
                return Err(Error::NotUnivariate(var.to_string()));
            }
        }
    }
    let d = degree_in_idx(p, idx).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(idx) as usize] = c.clone();
    }
    Ok(coeffs)
}

/// Yun squarefree decomposition of a univariate polynomial:
/// returns `(factor, multiplicity)` pairs with distinct squarefree monic
/// factors, such that the product of `factor^multiplicity` is `p` up to a
/// scalar.
pub fn squarefree_decomposition(p: &Polynomial, var: &str) -> Result<Vec<(Polynomial, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("squarefree_decomposition"));
    }
    univariate_coefficients(p, var)?; // also validates univariateness
    let f = p.monic();
    let df = f.partial_derivative(var)?;
    if df.is_zero() {
        return Ok(vec![]); // constant
    }
    let a0 = gcd(&f, &df)?;
    let mut out = Vec::new();
    let mut b = exact_div(&f, &a0).expect("gcd divides");
    let mut c = exact_div(&df, &a0).expect("gcd divides");
    let mut i = 1u32;
    loop {
        let d = &c - &b.partial_derivative(var)?;
        if d.is_zero() {
            if b.total_degree().unwrap_or(0) > 0 {
                out.push((b.monic(), i));
            }
            break;
        }
        let a = gcd(&b, &d)?;
        if a.total_degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = exact_div(&b, &a).expect("gcd divides");
        c = exact_div(&d, &a).expect("gcd divides");
        i += 1;
        if b.is_constant() {
            break;
        }
    }
    Ok(out)
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let limit = BigInt::from(u64::MAX);
    if n > limit {
        return None;
    }
    let n_u = u64::try_from(&n).ok()?;
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n_u {
        if n_u % d == 0 {
            divs.push(BigInt::from(d));
            if d != n_u / d {
                divs.push(BigInt::from(n_u / d));
            }
        }
        if d > 3_000_000 {
            return None; // give up on pathological inputs
        }
        d += 1;
    }
    Some(divs)
}

/// Rational roots of a univariate polynomial, with multiplicities.
pub fn rational_roots(p: &Polynomial, var: &str) -> Result<Vec<(Rational, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("rational_roots"));
    }
    let decomposition = squarefree_decomposition(p, var)?;
    let idx = p.ring().var_index(var).unwrap();
    let mut out = Vec::new();
    for (factor, mult) in decomposition {
        let f = factor.primitive_integer();
        let coeffs = univariate_coefficients(&f, var)?;
        // strip x^k
        let val0 = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if val0 > 0 {
            out.push((Rational::zero(), mult)); // squarefree: exponent 1 here
        }
        let lead = coeffs.last().unwrap().numer().clone();
        let tail = coeffs[val0].numer().clone();
        let (ps, qs) = match (small_divisors(&tail), small_divisors(&lead)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let mut candidates = Vec::new();
        for a in &ps {
            for b in &qs {
                let r = Rational::new(a.clone(), b.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let mut acc = Rational::zero();
            for (m, c) in f.terms() {
                let e = m.exponent(idx);
                let mut t = c.clone();
                for _ in 0..e {
                    t *= &cand;
                }
                acc += t;
            }
            if acc.is_zero() {
                out.push((cand, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::ring::VariableRing;
    use std::sync::Arc;

    fn xr() -> Arc<VariableRing> {
        VariableRing::lex(&["x"])
    }

    #[test]
    fn gcd_linear_factor() {
        let r = xr();
        let p = Polynomial::parse(&r, "x^2 - 1").unwrap();
        let q = Polynomial::parse(&r, "x^2 - 2*x + 1").unwrap();
        assert_eq!(gcd(&p, &q).unwrap(), Polynomial::parse(&r, "x - 1").unwrap());
    }

    #[test]
    fn gcd_with_derivative_finds_repeated_factor() {
        let r = xr();
        let f = Polynomial::parse(&r, "x^2 - 2*x - 1").unwrap();
        let p = f.pow(2);
        let dp = p.partial_derivative("x").unwrap();
        let g = gcd(&p, &dp).unwrap();
        assert_eq!(g, f.monic());
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let r = xr();
        let p = Polynomial::parse(&r, "3*x^2 - 3").unwrap();
        let z = Polynomial::zero(&r);
        assert_eq!(gcd(&p, &z).unwrap(), Polynomial::parse(&r, "x^2 - 1").unwrap());
        assert_eq!(gcd(&z, &z).unwrap(), z);
    }

    #[test]
    fn squarefree_part_examples() {
        let r = xr();
        let f = Polynomial::parse(&r, "x^2 - 2*x - 1").unwrap();
        assert_eq!(squarefree_part(&f.pow(2)).unwrap(), f);
        let g = Polynomial::parse(&r, "x^2 - 5").unwrap();
        assert_eq!(squarefree_part(&g).unwrap(), g);
        let h = &Polynomial::parse(&r, "x - 1").unwrap().pow(3)
            * &Polynomial::parse(&r, "x + 1").unwrap();
        assert_eq!(
            squarefree_part(&h).unwrap(),
            Polynomial::parse(&r, "x^2 - 1").unwrap()
        );
    }

    #[test]
    fn resultant_of_linear_pair() {
        let r = VariableRing::lex(&["x", "a", "b"]);
        let p = Polynomial::parse(&r, "x - a").unwrap();
        let q = Polynomial::parse(&r, "x - b").unwrap();
        assert_eq!(
            resultant(&p, &q, "x").unwrap(),
            Polynomial::parse(&r, "a - b").unwrap()
        );
    }

    #[test]
    fn resultant_with_linear_is_evaluation() {
        // res_z(curve, z - 3) = curve evaluated at z = 3 -> 5 - x^2
        let r = VariableRing::lex(&["z", "x"]);
        let g = Polynomial::parse(&r, "z^2 - x^2*z - z + 2*x^2 - 1").unwrap();
        let l = Polynomial::parse(&r, "z - 3").unwrap();
        assert_eq!(
            resultant(&g, &l, "z").unwrap(),
            Polynomial::parse(&r, "5 - x^2").unwrap()
        );
    }

    #[test]
    fn resultant_detects_common_roots() {
        let r = xr();
        let p = Polynomial::parse(&r, "x^2 - 1").unwrap();
        let q = Polynomial::parse(&r, "x^2 - 3*x + 2").unwrap(); // shares x = 1
        assert!(resultant(&p, &q, "x").unwrap().is_zero());
        let q2 = Polynomial::parse(&r, "x - 3").unwrap();
        assert!(!resultant(&p, &q2, "x").unwrap().is_zero());
    }

    #[test]
    fn resultant_rejects_constants() {
        let r = xr();
        let c = Polynomial::constant(&r, rat(4));
        assert!(matches!(
            resultant(&c, &c, "x"),
            Err(Error::ConstantResultant(_))
        ));
    }

    #[test]
    fn exact_division() {
        let r = VariableRing::grevlex(&["x", "y"]);
        let a = Polynomial::parse(&r, "x^2 - y^2").unwrap();
        let b = Polynomial::parse(&r, "x - y").unwrap();
        assert_eq!(
            exact_div(&a, &b).unwrap(),
            Polynomial::parse(&r, "x + y").unwrap()
        );
        let c = Polynomial::parse(&r, "x + 1").unwrap();
        assert!(exact_div(&a, &c).is_none());
    }

    #[test]
    fn yun_decomposition() {
        let r = xr();
        let f1 = Polynomial::parse(&r, "x - 1").unwrap();
        let f2 = Polynomial::parse(&r, "x + 2").unwrap();
        let p = &f1.pow(3) * &f2;
        let dec = squarefree_decomposition(&p, "x").unwrap();
        assert_eq!(dec, vec![(f2.clone(), 1), (f1.clone(), 3)]);
    }

    #[test]
    fn rational_root_extraction() {
        let r = xr();
        let p = Polynomial::parse(&r, "2*x^3 - 3*x^2 - 3*x + 2").unwrap(); // roots 2, -1, 1/2
        let roots = rational_roots(&p, "x").unwrap();
        assert_eq!(
            roots,
            vec![(rat(-1), 1), (ratio_q(1, 2), 1), (rat(2), 1)]
        );
    }

    fn ratio_q(n: i64, d: i64) -> Rational {
        crate::poly::ratio(n, d)
    }

    #[test]
    fn multivariate_gcd() {
        let r = VariableRing::grevlex(&["x", "y"]);
        let a = Polynomial::parse(&r, "x^2 - y^2").unwrap();
        let b = Polynomial::parse(&r, "x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(
            gcd(&a, &b).unwrap(),
            Polynomial::parse(&r, "x + y").unwrap()
        );
    }
}

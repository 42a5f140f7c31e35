//! Buchberger's algorithm, normal forms, elimination, saturation and
//! zero-dimensional quotient dimensions.
//!
//! Reduced bases are canonical for (ideal, order): elements are monic, no
//! monomial of any element is divisible by the leading term of another, and
//! the list is sorted ascending by leading term. Pair selection and the final
//! inter-reduction are deterministic, so the output never depends on input
//! generator order or thread schedule.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::ring::{Monomial, MonomialOrder, VariableRing};

/// A finitely generated ideal. Zero generators are dropped; an empty list is
/// the zero ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    ring: Arc<VariableRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<VariableRing>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch(
                    g.ring().describe(),
                    ring.describe(),
                ));
            }
            if !g.is_zero() {
                gens.push(g.in_ring(ring)?);
            }
        }
        Ok(Ideal {
            ring: Arc::clone(ring),
            generators: gens,
        })
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Concatenate generator lists (same ring).
    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        for g in &other.generators {
            gens.push(g.in_ring(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, extra: Polynomial) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.push(extra.in_ring(&self.ring)?);
        Ideal::new(&self.ring, gens)
    }
}

/// A reduced, canonical Groebner basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    ring: Arc<VariableRing>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The standard monomials of a zero-dimensional quotient ring, i.e. the
/// monomials below the staircase of leading terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Staircase {
    pub monomials: Vec<Monomial>,
}

impl Staircase {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = mf.lcm(mg);
    let qf = mf.quotient(&l).expect("lcm divisible");
    let qg = mg.quotient(&l).expect("lcm divisible");
    let d = Rational::from_integer(cf.numer().gcd(cg.numer()));
    let a = f.mul_monomial(&qf).scale(&(cg / &d));
    let b = g.mul_monomial(&qg).scale(&(cf / &d));
    &a - &b
}

/// Fully reduce `h` against `basis` (every monomial, not only the leading
/// one); the result is zero or primitive with no reducible monomial. The
/// arithmetic is fraction-free: reductions cross-scale by gcd-reduced
/// integer leading coefficients, so no rational normalization happens in the
/// inner loop. Among several applicable reducers the one with the smallest
/// leading term wins, so cheap rewrite rules are preferred.
fn reduce_vs(h: &Polynomial, basis: &[Polynomial], ring: &Arc<VariableRing>) -> Polynomial {
    let mut h = h.primitive_integer();
    let mut steps = 0usize;
    // terms before `skip` are known irreducible; reductions only touch
    // monomials at or below the reduced one, so the prefix is stable
    let mut skip = 0usize;
    'outer: while !h.is_zero() {
        let mut found: Option<(Monomial, Rational, usize)> = None;
        for (offset, (m, c)) in h.terms()[skip..].iter().enumerate() {
            let mut best: Option<usize> = None;
            for (gi, g) in basis.iter().enumerate() {
                let gm = g.leading_monomial().expect("basis nonzero");
                if gm.divides(m) {
                    best = match best {
                        None => Some(gi),
                        Some(bi) => {
                            let b = &basis[bi];
                            let better = match g.n_terms().cmp(&b.n_terms()) {
                                std::cmp::Ordering::Less => true,
                                std::cmp::Ordering::Greater => false,
                                std::cmp::Ordering::Equal => {
                                    ring.cmp_monomials(
                                        gm,
                                        b.leading_monomial().unwrap(),
                                    ) == std::cmp::Ordering::Less
                                }
                            };
                            if better {
                                Some(gi)
                            } else {
                                Some(bi)
                            }
                        }
                    };
                }
            }
            if let Some(gi) = best {
                skip += offset;
                found = Some((m.clone(), c.clone(), gi));
                break;
            }
        }
        match found {
            None => break 'outer,
            Some((m, c, gi)) => {
                let g = &basis[gi];
                let (gm, gc) = g.leading().unwrap();
                let q = gm.quotient(&m).unwrap();
                let d = Rational::from_integer(c.numer().gcd(gc.numer()));
                let scale_h = gc / &d;
                let scale_g = &c / &d;
                h = &h.scale(&scale_h) - &g.mul_monomial(&q).scale(&scale_g);
                steps += 1;
                if steps % 32 == 0 {
                    let before = h.n_terms();
                    h = h.primitive_integer();
                    debug_assert_eq!(before, h.n_terms());
                }
            }
        }
    }
    h.primitive_integer()
}

/// Full normal form of `p` against `gb` (exact: `p - result` lies in the
/// ideal, and no monomial of the result is divisible by a leading term).
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let reducers = &gb.elements;
    if reducers.is_empty() {
        return p.clone();
    }
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut h = p.in_ring(&gb.ring).expect("same variables");
    'outer: while let Some((lm, lc)) = h.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in reducers {
            let (gm, gc) = g.leading().expect("nonzero");
            if let Some(q) = gm.quotient(&lm) {
                let s = &lc / gc;
                h = &h - &g.mul_monomial(&q).scale(&s);
                continue 'outer;
            }
        }
        rem.push((lm, lc));
        h.drop_leading();
    }
    Polynomial::from_terms(&gb.ring, rem)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct PairKey {
    /// Encodes the ring order of the lcm so that `Ord` on the key agrees
    /// with the monomial order (normal selection strategy).
    key: Vec<u64>,
    i: usize,
    j: usize,
}

/// A totally ordered encoding of a monomial under the ring order: comparing
/// encodings lexicographically is the same as comparing monomials.
fn order_key(ring: &VariableRing, m: &Monomial) -> Vec<u64> {
    fn grevlex_key(exps: &[u32], out: &mut Vec<u64>) {
        out.push(exps.iter().map(|&e| e as u64).sum());
        for &e in exps.iter().rev() {
            out.push(u64::from(u32::MAX - e));
        }
    }
    let mut out = Vec::with_capacity(ring.n_vars() + 2);
    match ring.order() {
        crate::ring::MonomialOrder::Lex => {
            out.extend(m.exponents().iter().map(|&e| e as u64));
        }
        crate::ring::MonomialOrder::GrevLex => grevlex_key(m.exponents(), &mut out),
        crate::ring::MonomialOrder::Block { split } => {
            grevlex_key(&m.exponents()[..split], &mut out);
            grevlex_key(&m.exponents()[split..], &mut out);
        }
    }
    out
}

/// Install the pairs of the newest basis element, pruning with the
/// Gebauer-Moeller criteria: drop new pairs whose lcm is properly divided by
/// another new pair's lcm, keep one representative per lcm (none if some
/// member of the class has coprime leading terms), and drop old pairs whose
/// lcm is divided by the new leading term without being equal to either
/// mixed lcm.
fn gebauer_moeller_update(pending: &mut BTreeSet<PairKey>, basis: &[Polynomial]) {
    let t = basis.len() - 1;
    let lt_t = basis[t].leading_monomial().expect("nonzero").clone();
    let mixed_lcm = |i: usize| -> Monomial {
        basis[i].leading_monomial().unwrap().lcm(&lt_t)
    };
    // B: prune old pairs
    let old: Vec<PairKey> = pending.iter().cloned().collect();
    for p in old {
        let l = basis[p.i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[p.j].leading_monomial().unwrap());
        if lt_t.divides(&l) && mixed_lcm(p.i) != l && mixed_lcm(p.j) != l {
            pending.remove(&p);
        }
    }
    // candidates (i, t) with their lcms
    let cand: Vec<(Monomial, usize)> = (0..t).map(|i| (mixed_lcm(i), i)).collect();
    // M: drop candidates whose lcm is properly divided by another's
    let mut kept: Vec<(Monomial, usize)> = Vec::new();
    'cand: for (l, i) in &cand {
        for (l2, j) in &cand {
            if j != i && l2 != l && l2.divides(l) {
                continue 'cand;
            }
        }
        kept.push((l.clone(), *i));
    }
    // F + product criterion: one representative per lcm class, none when a
    // class member has coprime leading terms
    kept.sort_by(|a, b| a.0.exponents().cmp(b.0.exponents()).then(a.1.cmp(&b.1)));
    let mut idx = 0;
    while idx < kept.len() {
        let mut end = idx + 1;
        while end < kept.len() && kept[end].0 == kept[idx].0 {
            end += 1;
        }
        let class = &kept[idx..end];
        let coprime = class.iter().any(|(_, i)| {
            basis[*i]
                .leading_monomial()
                .unwrap()
                .coprime(&lt_t)
        });
        if !coprime {
            let (l, i) = &class[0];
            pending.insert(PairKey {
                key: order_key(&basis[0].ring(), l),
                i: *i,
                j: t,
            });
        }
        idx = end;
    }
}

/// Compute the reduced Groebner basis with Buchberger's algorithm, using the
/// product and chain criteria for pair pruning.
pub fn groebner_basis(ideal: &Ideal) -> GroebnerBasis {
    let ring = Arc::clone(&ideal.ring);
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in &ideal.generators {
        let g = g.primitive_integer();
        if !g.is_zero() && !basis.contains(&g) {
            basis.push(g);
        }
    }
    basis.sort_by(|a, b| {
        ring.cmp_monomials(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
        .then_with(|| a.n_terms().cmp(&b.n_terms()))
    });
    if basis.is_empty() {
        return GroebnerBasis {
            ring,
            elements: Vec::new(),
        };
    }

    let mut pending: BTreeSet<PairKey> = BTreeSet::new();
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    // seed the basis one generator at a time, fully reduced against what is
    // already there; long inputs collapse against short rewrite rules early
    let input = std::mem::take(&mut basis);
    for g in input {
        let r = reduce_vs(&g, &basis, &ring);
        if r.is_zero() {
            continue;
        }
        basis.push(r);
        gebauer_moeller_update(&mut pending, &basis);
    }

    let trace = std::env::var_os("CHARVAR_GB_TRACE").is_some();
    let mut popped = 0usize;
    while let Some(pair) = pending.iter().next().cloned() {
        pending.remove(&pair);
        let (i, j) = (pair.i, pair.j);
        treated.insert((i, j));
        popped += 1;
        if trace && popped % 25 == 0 {
            let max_terms = basis.iter().map(|g| g.n_terms()).max().unwrap_or(0);
            let max_deg = basis
                .iter()
                .filter_map(|g| g.total_degree())
                .max()
                .unwrap_or(0);
            eprintln!(
                "gb: pairs popped {} pending {} basis {} max_terms {} max_deg {}",
                popped,
                pending.len(),
                basis.len(),
                max_terms,
                max_deg
            );
        }
        let lt_i = basis[i].leading_monomial().unwrap();
        let lt_j = basis[j].leading_monomial().unwrap();
        let lcm = lt_i.lcm(lt_j);
        // product criterion
        if lt_i.coprime(lt_j) {
            continue;
        }
        // chain criterion: some k with lt_k | lcm and both (i,k), (j,k) already
        // treated
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].leading_monomial().unwrap().divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if treated.contains(&a) && treated.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let s = spoly(&basis[i], &basis[j]);
        let r = reduce_vs(&s, &basis, &ring);
        if r.is_zero() {
            continue;
        }
        basis.push(r);
        gebauer_moeller_update(&mut pending, &basis);
    }

    if trace {
        eprintln!(
            "gb: loop done, {} pairs popped, basis {}, reducing...",
            popped,
            basis.len()
        );
    }
    let t0 = std::time::Instant::now();
    let elements = reduce_basis(&ring, basis);
    if trace {
        eprintln!(
            "gb: final inter-reduction took {:?}, {} elements",
            t0.elapsed(),
            elements.len()
        );
    }
    GroebnerBasis { elements, ring }
}

/// Minimalize and tail-reduce a basis into the canonical reduced form.
fn reduce_basis(ring: &Arc<VariableRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    if basis.is_empty() {
        return basis;
    }
    basis.sort_by(|a, b| {
        ring.cmp_monomials(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !kept
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            kept.push(g);
        }
    }
    // tail-reduce each element against the rest
    let snapshot = kept.clone();
    let mut reduced: Vec<Polynomial> = Vec::new();
    for (idx, g) in snapshot.iter().enumerate() {
        let others: Vec<Polynomial> = snapshot
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, h)| h.clone())
            .collect();
        let gb_others = GroebnerBasis {
            ring: Arc::clone(ring),
            elements: others,
        };
        let r = normal_form(g, &gb_others);
        debug_assert!(!r.is_zero());
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        ring.cmp_monomials(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    reduced
}

/// Check the Buchberger criterion: every S-polynomial reduces to zero.
pub fn buchberger_criterion_holds(gb: &GroebnerBasis) -> bool {
    let n = gb.elements.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = spoly(&gb.elements[i], &gb.elements[j]);
            if !normal_form(&s, gb).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal) -> bool {
    let gb = groebner_basis(ideal);
    normal_form(p, &gb).is_zero()
}

/// Radical membership: `p` vanishes on the variety of `ideal` iff the
/// extended ideal with an inverted `p` is the unit ideal.
pub fn radical_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let aux = fresh_var_name(&ideal.ring);
    let mut vars: Vec<&str> = vec![&aux];
    let names: Vec<String> = ideal.ring.vars().to_vec();
    vars.extend(names.iter().map(|s| s.as_str()));
    let ring2 = VariableRing::new(&vars, MonomialOrder::GrevLex)?;
    let mut gens = Vec::new();
    for g in &ideal.generators {
        gens.push(g.in_ring(&ring2)?);
    }
    let t = Polynomial::var(&ring2, &aux)?;
    let p2 = p.in_ring(&ring2)?;
    gens.push(&(&t * &p2) - &Polynomial::one(&ring2));
    let gb = groebner_basis(&Ideal::new(&ring2, gens)?);
    Ok(gb.is_unit_ideal())
}

fn fresh_var_name(ring: &Arc<VariableRing>) -> String {
    let mut name = "T".to_string();
    while ring.var_index(&name).is_some() {
        name.push('T');
    }
    name
}

/// The elimination ideal `I ∩ Q[kept variables]`, computed with a block
/// order that puts the dropped variables first.
pub fn elimination_ideal(ideal: &Ideal, drop: &[&str]) -> Result<Ideal> {
    for d in drop {
        if ideal.ring.var_index(d).is_none() {
            return Err(Error::UnknownVariable(d.to_string()));
        }
    }
    let kept: Vec<&str> = ideal
        .ring
        .vars()
        .iter()
        .filter(|v| !drop.contains(&v.as_str()))
        .map(|v| v.as_str())
        .collect();
    if kept.is_empty() {
        return Err(Error::Degenerate(
            "elimination must keep at least one variable".into(),
        ));
    }
    // dropped variables in their original relative order
    let dropped: Vec<&str> = ideal
        .ring
        .vars()
        .iter()
        .filter(|v| drop.contains(&v.as_str()))
        .map(|v| v.as_str())
        .collect();
    let mut all = dropped.clone();
    all.extend(kept.iter());
    let elim_ring = VariableRing::new(&all, MonomialOrder::Block {
        split: dropped.len(),
    })?;
    let mut gens = Vec::new();
    for g in &ideal.generators {
        gens.push(g.in_ring(&elim_ring)?);
    }
    let gb = groebner_basis(&Ideal::new(&elim_ring, gens)?);
    let split = dropped.len();
    let result_order = match ideal.ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::GrevLex,
    };
    let out_ring = VariableRing::new(&kept, result_order)?;
    let mut out = Vec::new();
    for e in gb.elements() {
        let free = e
            .terms()
            .iter()
            .all(|(m, _)| m.exponents()[..split].iter().all(|&x| x == 0));
        if free {
            out.push(e.in_ring(&out_ring)?.primitive_integer());
        }
    }
    Ideal::new(&out_ring, out)
}

/// `(ideal : f^inf)` via a Rabinowitsch variable, returned in the original
/// ring.
pub fn saturation(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroInput("saturation"));
    }
    let aux = fresh_var_name(&ideal.ring);
    let names: Vec<String> = ideal.ring.vars().to_vec();
    let mut vars: Vec<&str> = vec![&aux];
    vars.extend(names.iter().map(|s| s.as_str()));
    let ring2 = VariableRing::new(&vars, MonomialOrder::Block { split: 1 })?;
    let mut gens = Vec::new();
    for g in &ideal.generators {
        gens.push(g.in_ring(&ring2)?);
    }
    let t = Polynomial::var(&ring2, &aux)?;
    let f2 = f.in_ring(&ring2)?;
    gens.push(&(&t * &f2) - &Polynomial::one(&ring2));
    let gb = groebner_basis(&Ideal::new(&ring2, gens)?);
    let mut out = Vec::new();
    for e in gb.elements() {
        let free = e.terms().iter().all(|(m, _)| m.exponent(0) == 0);
        if free {
            out.push(e.in_ring(&ideal.ring)?.primitive_integer());
        }
    }
    Ideal::new(&ideal.ring, out)
}

/// True iff every variable has a pure power among the leading terms, i.e.
/// the quotient ring is a finite-dimensional vector space.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    if gb.is_zero_ideal() {
        return false;
    }
    let n = gb.ring.n_vars();
    (0..n).all(|i| {
        gb.elements.iter().any(|g| {
            let m = g.leading_monomial().unwrap();
            m.exponent(i) > 0
                && (0..n).all(|k| k == i || m.exponent(k) == 0)
        })
    })
}

/// Vector-space dimension of the quotient ring together with its monomial
/// basis. This is the total intersection multiplicity over the algebraic
/// closure when the ideal cuts out a finite scheme.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Result<(usize, Staircase)> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_unit_ideal() {
        return Ok((0, Staircase { monomials: vec![] }));
    }
    let lts: Vec<Monomial> = gb
        .elements
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let n = gb.ring.n_vars();
    let reducible = |m: &Monomial| lts.iter().any(|l| l.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = vec![Monomial::one(n)];
    let mut stairs = Vec::new();
    while let Some(m) = queue.pop() {
        if seen.contains(&m) || reducible(&m) {
            continue;
        }
        seen.insert(m.clone());
        stairs.push(m.clone());
        if stairs.len() > 5_000_000 {
            return Err(Error::NotZeroDimensional);
        }
        for i in 0..n {
            let mut e = m.exponents().to_vec();
            e[i] += 1;
            queue.push(Monomial::from_exponents(e));
        }
    }
    stairs.sort_by(|a, b| gb.ring.cmp_monomials(a, b));
    Ok((
        stairs.len(),
        Staircase { monomials: stairs },
    ))
}

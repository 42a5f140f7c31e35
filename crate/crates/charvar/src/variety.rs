//! From a two-generator knot presentation to its character variety: the
//! character ideal, component split, boundary restriction map, the image
//! curve in the boundary character variety, the A-polynomial component,
//! projective closures, ideal points and smoothness certificates.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gcd::{exact_div, rational_roots, resultant, squarefree_part, univariate_coefficients};
use crate::groebner::{
    elimination_ideal, groebner_basis, is_zero_dimensional, normal_form, saturation,
    GroebnerBasis, Ideal,
};
use crate::knot::KnotPresentation;
use crate::poly::{rat, Polynomial, ProjectivePoint, Rational};
use crate::ring::{Monomial, VariableRing};
use crate::trace::{boundary_ring, curve_ring, specialize_conjugate, trace_polynomial};
use crate::words::Gen;

/// Characters of abelian representations form the plane curve
/// `x^2 - z - 2 = 0` for any conjugate-meridian presentation.
pub fn abelian_factor() -> Polynomial {
    Polynomial::parse(&curve_ring(), "x^2 - z - 2").expect("fixed polynomial")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentTag {
    Full,
    Abelian,
    Nonabelian,
}

/// A plane curve in the character coordinates `(x, z)`. At the scale of
/// two-bridge presentations the ideal is principal; non-principal outcomes
/// are carried as-is and reported by `generator()`.
#[derive(Clone, Debug)]
pub struct CharacterCurve {
    ideal: Ideal,
    tag: ComponentTag,
}

impl CharacterCurve {
    pub fn from_generator(g: Polynomial, tag: ComponentTag) -> Result<Self> {
        let ring = curve_ring();
        let g = g.in_ring(&ring)?;
        Ok(CharacterCurve {
            ideal: Ideal::new(&ring, vec![g])?,
            tag,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn tag(&self) -> ComponentTag {
        self.tag
    }

    pub fn generator(&self) -> Result<&Polynomial> {
        match self.ideal.generators() {
            [g] => Ok(g),
            gens => Err(Error::NotPrincipal(format!(
                "{} generators",
                gens.len()
            ))),
        }
    }

    /// The unit ideal: no characters at all.
    pub fn is_empty(&self) -> bool {
        matches!(self.ideal.generators(), [g] if g.is_constant() && !g.is_zero())
    }
}

// ---------------------------------------------------------------------------
// The character ideal from the triangular representation slice
// ---------------------------------------------------------------------------

/// 2x2 matrices with entries in `Q[s, t, x, z]` carrying a global factor
/// `s^-shift`, so inverses of the triangular generators stay polynomial.
#[derive(Clone)]
struct SMat {
    a: Polynomial,
    b: Polynomial,
    c: Polynomial,
    d: Polynomial,
    shift: u32,
}

impl SMat {
    fn mul(&self, o: &SMat, s_idx: usize) -> SMat {
        let mut m = SMat {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            shift: self.shift + o.shift,
        };
        m.strip(s_idx);
        m
    }

    /// Remove a common power of `s` shared by all entries.
    fn strip(&mut self, s_idx: usize) {
        let val = |p: &Polynomial| -> Option<u32> {
            p.terms().iter().map(|(m, _)| m.exponent(s_idx)).min()
        };
        let v = [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .filter_map(|p| val(p))
            .min()
            .unwrap_or(0)
            .min(self.shift);
        if v == 0 {
            return;
        }
        let divide = |p: &Polynomial| -> Polynomial {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e[s_idx] -= v;
                    (Monomial::from_exponents(e), c.clone())
                })
                .collect();
            Polynomial::from_terms(p.ring(), terms)
        };
        self.a = divide(&self.a);
        self.b = divide(&self.b);
        self.c = divide(&self.c);
        self.d = divide(&self.d);
        self.shift -= v;
    }
}

/// Build the ideal of the character variety in `(x, z)` from the standard
/// triangular slice: `rho(a)` upper-triangular with eigenvalue `s` and corner
/// 1, `rho(b)` lower-triangular with eigenvalue `s` and corner `t`. The
/// relator entries are imposed, the trace coordinates are adjoined through
/// `x*s = s^2 + 1` and `z*s^2 = s^4 + t*s^2 + 1` (these force `s != 0`, so
/// `s` is a unit modulo the ideal and no extra saturation is needed), and
/// `s`, `t` are eliminated. The abelian component is adjoined as the factor
/// `x^2 - z - 2`.
pub fn character_ideal(kp: &KnotPresentation) -> Result<CharacterCurve> {
    let system = character_ideal_system(kp)?;
    let elim = elimination_ideal(&system, &["s", "t"])?;
    if elim.is_zero() {
        return Err(Error::Degenerate(
            "character ideal elimination is the zero ideal".into(),
        ));
    }
    let target = curve_ring();
    let mut ported = Vec::new();
    for g in elim.generators() {
        ported.push(g.in_ring(&target)?);
    }
    if ported.len() == 1 && ported[0].is_constant() {
        return Err(Error::UnitCharacterIdeal);
    }
    if ported.len() != 1 {
        return Err(Error::NotPrincipal(format!(
            "character ideal has {} generators: {}",
            ported.len(),
            ported
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    let nonab = squarefree_part(&ported[0])?;
    let full = squarefree_part(&(&nonab * &abelian_factor()))?.primitive_integer();
    CharacterCurve::from_generator(full, ComponentTag::Full)
}

/// The raw parametrized system (entries of the relator matrix plus the trace
/// relations), for membership cross-checks against the eliminated ideal. The
/// ring uses the elimination block order so membership tests are cheap.
pub fn character_system_for_validation(kp: &KnotPresentation) -> Result<Ideal> {
    let system = character_ideal_system(kp)?;
    let block = VariableRing::new(
        &["s", "t", "x", "z"],
        crate::ring::MonomialOrder::Block { split: 2 },
    )?;
    let mut gens = Vec::new();
    for g in system.generators() {
        gens.push(g.in_ring(&block)?);
    }
    Ideal::new(&block, gens)
}

fn character_ideal_system(kp: &KnotPresentation) -> Result<Ideal> {
    let ring = VariableRing::grevlex(&["s", "t", "x", "z"]);
    let s = Polynomial::var(&ring, "s")?;
    let t = Polynomial::var(&ring, "t")?;
    let x = Polynomial::var(&ring, "x")?;
    let z = Polynomial::var(&ring, "z")?;
    let one = Polynomial::one(&ring);
    let zero = Polynomial::zero(&ring);
    let s2 = s.pow(2);
    // s * [[s, 1], [0, 1/s]], its inverse, and the lower-triangular partner
    let mat_a = SMat {
        a: s2.clone(),
        b: s.clone(),
        c: zero.clone(),
        d: one.clone(),
        shift: 1,
    };
    let mat_a_inv = SMat {
        a: one.clone(),
        b: -&s,
        c: zero.clone(),
        d: s2.clone(),
        shift: 1,
    };
    let mat_b = SMat {
        a: s2.clone(),
        b: zero.clone(),
        c: &t * &s,
        d: one.clone(),
        shift: 1,
    };
    let mat_b_inv = SMat {
        a: one.clone(),
        b: zero.clone(),
        c: -&(&t * &s),
        d: s2.clone(),
        shift: 1,
    };
    let mut m = SMat {
        a: one.clone(),
        b: zero.clone(),
        c: zero.clone(),
        d: one.clone(),
        shift: 0,
    };
    for g in kp.relator.letters() {
        let f = match g {
            Gen::A => &mat_a,
            Gen::AInv => &mat_a_inv,
            Gen::B => &mat_b,
            Gen::BInv => &mat_b_inv,
        };
        m = m.mul(f, 0);
    }
    let sd = s.pow(m.shift);
    let mut gens = vec![
        &m.a - &sd,
        m.b.clone(),
        m.c.clone(),
        &m.d - &sd,
        &(&x * &s) - &(&s2 + &one),
        &(&z * &s2) - &(&(&s2.pow(2) + &(&t * &s2)) + &one),
    ];
    gens.retain(|g| !g.is_zero());
    Ideal::new(&ring, gens)
}

/// Strip the maximal power of the abelian factor from a full character
/// ideal; the remainder generates the nonabelian locus.
pub fn split_components(full: &CharacterCurve) -> Result<(Polynomial, CharacterCurve)> {
    let g = full.generator()?;
    let ab = abelian_factor();
    let mut rest = g.clone();
    let mut count = 0usize;
    while let Some(q) = exact_div(&rest, &ab) {
        rest = q;
        count += 1;
    }
    if count == 0 {
        return Err(Error::MissingAbelianFactor);
    }
    let rest = rest.primitive_integer();
    let tag = ComponentTag::Nonabelian;
    let curve = CharacterCurve::from_generator(rest, tag)?;
    Ok((ab, curve))
}

/// The squarefree polynomial in `x` whose roots are `m + 1/m` over all
/// eigenvalues `m` with `Delta(m^2) = 0` — the nonabelian reducible locus.
pub fn reducible_character_locus(alexander: &Polynomial) -> Result<Polynomial> {
    if alexander.is_zero() {
        return Err(Error::ZeroInput("reducible_character_locus"));
    }
    let mut at_one = BTreeMap::new();
    at_one.insert("t".to_string(), rat(1));
    if alexander.evaluate(&at_one)?.is_zero() {
        return Err(Error::Degenerate(
            "Alexander polynomial vanishes at 1".into(),
        ));
    }
    let ring = VariableRing::grevlex(&["m", "x"]);
    let m = Polynomial::var(&ring, "m")?;
    let x = Polynomial::var(&ring, "x")?;
    let mut bind = BTreeMap::new();
    bind.insert("t".to_string(), m.pow(2));
    let dm = alexander.substitute(&bind)?;
    if dm.is_constant() {
        return Ok(Polynomial::one(&curve_ring()));
    }
    let rel = &(&x * &m) - &(&m.pow(2) + &Polynomial::one(&ring));
    let res = resultant(&dm, &rel, "m")?;
    if res.is_constant() {
        return Ok(Polynomial::one(&curve_ring()));
    }
    let sf = squarefree_part(&res)?;
    Ok(sf.in_ring(&curve_ring())?.primitive_integer())
}

/// The boundary restriction in trace coordinates: `r(x, z) = (I_mu, F, G)`
/// where `F` is the longitude trace and `G` the meridian-times-longitude
/// trace, both reduced to normal form on the curve.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub meridian_trace: Polynomial,
    pub longitude_trace: Polynomial,
    pub mixed_trace: Polynomial,
}

pub fn restriction_map(x0: &CharacterCurve, kp: &KnotPresentation) -> Result<RestrictionMap> {
    let g = x0.generator()?;
    if g.is_constant() {
        return Err(Error::Degenerate("empty curve has no restriction map".into()));
    }
    let gb = groebner_basis(x0.ideal());
    let reduce = |w: &crate::words::FreeWord| -> Result<Polynomial> {
        let tp = trace_polynomial(w);
        Ok(normal_form(&specialize_conjugate(&tp)?, &gb))
    };
    let meridian_trace = reduce(&kp.meridian)?;
    let longitude_trace = reduce(&kp.longitude)?;
    let mixed = kp.meridian.concat(&kp.longitude);
    let mixed_trace = reduce(&mixed)?;
    Ok(RestrictionMap {
        meridian_trace,
        longitude_trace,
        mixed_trace,
    })
}

/// Eliminate the curve coordinates from the graph of the restriction map:
/// the defining ideal of the closure of `r(X_0)` in `(u, v, w)`.
pub fn boundary_image_ideal(rm: &RestrictionMap, x0: &CharacterCurve) -> Result<Ideal> {
    let g = x0.generator()?;
    if g.is_constant() {
        return Err(Error::Degenerate("empty curve has no boundary image".into()));
    }
    let ring = VariableRing::grevlex(&["x", "z", "u", "v", "w"]);
    let u = Polynomial::var(&ring, "u")?;
    let v = Polynomial::var(&ring, "v")?;
    let w = Polynomial::var(&ring, "w")?;
    let gens = vec![
        g.in_ring(&ring)?,
        &u - &rm.meridian_trace.in_ring(&ring)?,
        &v - &rm.longitude_trace.in_ring(&ring)?,
        &w - &rm.mixed_trace.in_ring(&ring)?,
    ];
    let ideal = Ideal::new(&ring, gens)?;
    let elim = elimination_ideal(&ideal, &["x", "z"])?;
    let target = boundary_ring();
    let mut out = Vec::new();
    for e in elim.generators() {
        out.push(e.in_ring(&target)?);
    }
    let image = Ideal::new(&target, out)?;
    let gb = groebner_basis(&image);
    if gb.is_unit_ideal() {
        return Err(Error::Degenerate("boundary image ideal is the unit ideal".into()));
    }
    if is_zero_dimensional(&gb) {
        return Err(Error::Degenerate("boundary image is zero-dimensional".into()));
    }
    Ok(image)
}

/// Restriction map together with the image ideal; the data consumed by the
/// surgery invariants.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub restriction: RestrictionMap,
    pub image: Ideal,
}

impl BoundaryData {
    pub fn compute(x0: &CharacterCurve, kp: &KnotPresentation) -> Result<Self> {
        let restriction = restriction_map(x0, kp)?;
        let image = boundary_image_ideal(&restriction, x0)?;
        Ok(BoundaryData { restriction, image })
    }
}

/// The character variety of the torus: `u^2 + v^2 + w^2 - u*v*w - 4 = 0`.
pub fn torus_surface() -> Polynomial {
    Polynomial::parse(&boundary_ring(), "u^2 + v^2 + w^2 - u*v*w - 4").expect("fixed polynomial")
}

/// `Q[m, l]`, the eigenvalue coordinates for the A-polynomial.
pub fn eigenvalue_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::grevlex(&["m", "l"])))
}

/// Substitute `u -> (m^2+1)/m`, `v -> (l^2+1)/l`, `w -> (m^2 l^2+1)/(ml)`
/// into a boundary polynomial and clear denominators by the minimal
/// monomial.
pub fn clear_boundary_substitution(h: &Polynomial) -> Result<Polynomial> {
    let src = boundary_ring();
    let h = h.in_ring(&src)?;
    let ui = src.var_index("u").unwrap();
    let vi = src.var_index("v").unwrap();
    let wi = src.var_index("w").unwrap();
    let ring = eigenvalue_ring();
    let m = Polynomial::var(&ring, "m")?;
    let l = Polynomial::var(&ring, "l")?;
    let one = Polynomial::one(&ring);
    let num_u = &m.pow(2) + &one;
    let num_v = &l.pow(2) + &one;
    let num_w = &(&m.pow(2) * &l.pow(2)) + &one;
    let mut a_max = 0u32; // power of m needed
    let mut b_max = 0u32; // power of l needed
    for (mon, _) in h.terms() {
        let (i, j, k) = (mon.exponent(ui), mon.exponent(vi), mon.exponent(wi));
        a_max = a_max.max(i + k);
        b_max = b_max.max(j + k);
    }
    let mut acc = Polynomial::zero(&ring);
    for (mon, c) in h.terms() {
        let (i, j, k) = (mon.exponent(ui), mon.exponent(vi), mon.exponent(wi));
        let mut term = Polynomial::constant(&ring, c.clone());
        term = &term * &num_u.pow(i);
        term = &term * &num_v.pow(j);
        term = &term * &num_w.pow(k);
        term = &term * &m.pow(a_max - i - k);
        term = &term * &l.pow(b_max - j - k);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Outcome of the A-polynomial computation. At paper scale the saturated
/// ideal is principal; otherwise the raw generators are reported.
#[derive(Clone, Debug)]
pub struct APolynomial {
    pub polynomial: Option<Polynomial>,
    pub raw_generators: Vec<Polynomial>,
}

/// The squarefree defining polynomial of the closure of `t_D^{-1}(Y_0)`:
/// a factor of the knot's A-polynomial.
pub fn a_polynomial_component(bd: &BoundaryData) -> Result<APolynomial> {
    let ring = eigenvalue_ring();
    let mut gens = Vec::new();
    for h in bd.image.generators() {
        let cleared = clear_boundary_substitution(h)?;
        if !cleared.is_zero() {
            gens.push(cleared);
        }
    }
    let ideal = Ideal::new(&ring, gens)?;
    let ml = &Polynomial::var(&ring, "m")? * &Polynomial::var(&ring, "l")?;
    let sat = saturation(&ideal, &ml)?;
    let gb = groebner_basis(&sat);
    let elements = gb.elements().to_vec();
    if elements.len() == 1 {
        let a0 = squarefree_part(&elements[0])?.primitive_integer();
        Ok(APolynomial {
            polynomial: Some(a0),
            raw_generators: elements,
        })
    } else {
        Ok(APolynomial {
            polynomial: None,
            raw_generators: elements,
        })
    }
}

/// `Q[X, Y, Z]` for projective closures; the affine chart is `Y = 1`.
pub fn projective_ring() -> Arc<VariableRing> {
    static RING: OnceLock<Arc<VariableRing>> = OnceLock::new();
    Arc::clone(RING.get_or_init(|| VariableRing::grevlex(&["X", "Y", "Z"])))
}

#[derive(Clone, Debug)]
pub struct ProjectiveClosure {
    /// Homogeneous defining form (x = X/Y, z = Z/Y).
    pub form: Polynomial,
    /// Ideal points on the line Y = 0 with multiplicities.
    pub ideal_points: Vec<(ProjectivePoint, u32)>,
    /// Factors of the restriction to Y = 0 with no rational linear factor.
    pub unresolved: Vec<Polynomial>,
}

pub fn projective_closure_and_ideal_points(x0: &CharacterCurve) -> Result<ProjectiveClosure> {
    let g = x0.generator()?;
    if g.is_constant() {
        return Err(Error::Degenerate("empty curve has no closure".into()));
    }
    let proj = projective_ring();
    let form = g.homogenize(&proj, &[("x", "X"), ("z", "Z")], "Y")?;
    // restrict to the line at infinity Y = 0
    let yi = proj.var_index("Y").unwrap();
    let at_inf = Polynomial::from_terms(
        &proj,
        form.terms()
            .iter()
            .filter(|(m, _)| m.exponent(yi) == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    );
    debug_assert!(!at_inf.is_zero());
    let xi = proj.var_index("X").unwrap();
    let zi = proj.var_index("Z").unwrap();
    let a = at_inf.terms().iter().map(|(m, _)| m.exponent(xi)).min().unwrap();
    let b = at_inf.terms().iter().map(|(m, _)| m.exponent(zi)).min().unwrap();
    let degree = at_inf.total_degree().unwrap();
    let mut points: Vec<(ProjectivePoint, u32)> = Vec::new();
    if a > 0 {
        points.push((
            ProjectivePoint::new(rat(0), rat(0), rat(1))?,
            a,
        ));
    }
    if b > 0 {
        points.push((
            ProjectivePoint::new(rat(1), rat(0), rat(0))?,
            b,
        ));
    }
    // remaining binary form as a univariate polynomial in T = X/Z
    let t_ring = VariableRing::lex(&["T"]);
    let mut u_terms = Vec::new();
    for (m, c) in at_inf.terms() {
        let e = m.exponent(xi) - a;
        u_terms.push((Monomial::from_exponents(vec![e]), c.clone()));
    }
    let mut u = Polynomial::from_terms(&t_ring, u_terms);
    let mut unresolved = Vec::new();
    if u.total_degree().unwrap_or(0) > 0 {
        for (root, mult) in rational_roots(&u, "T")? {
            // the point [root : 0 : 1]
            points.push((
                ProjectivePoint::new(root.clone(), rat(0), rat(1))?,
                mult,
            ));
            let factor = &Polynomial::var(&t_ring, "T")? - &Polynomial::constant(&t_ring, root);
            for _ in 0..mult {
                u = exact_div(&u, &factor).expect("root divides");
            }
        }
        if u.total_degree().unwrap_or(0) > 0 {
            let rest = u.homogenize(&proj, &[("T", "X")], "Z")?;
            unresolved.push(rest.primitive_integer());
        }
    }
    let total: u32 = points.iter().map(|(_, m)| m).sum::<u32>()
        + unresolved
            .iter()
            .map(|p| p.total_degree().unwrap_or(0))
            .sum::<u32>();
    debug_assert_eq!(total, degree);
    points.sort_by(|p, q| format!("{}", p.0).cmp(&format!("{}", q.0)));
    Ok(ProjectiveClosure {
        form,
        ideal_points: points,
        unresolved,
    })
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// The Groebner basis of the singular locus when not smooth.
    pub witness: Option<GroebnerBasis>,
}

/// Jacobian criterion. Affine: the polynomial and its partials have no
/// common zero. Projective: their common zeros are at most the irrelevant
/// origin, checked by saturating at each coordinate.
pub fn smoothness_check(p: &Polynomial, projective: bool) -> Result<SmoothnessReport> {
    if p.is_zero() {
        return Err(Error::ZeroInput("smoothness_check"));
    }
    let ring = p.ring().clone();
    let mut gens = vec![p.clone()];
    for v in ring.vars().to_vec() {
        let d = p.partial_derivative(&v)?;
        if !d.is_zero() {
            gens.push(d);
        }
    }
    let jac = Ideal::new(&ring, gens)?;
    if !projective {
        let gb = groebner_basis(&jac);
        if gb.is_unit_ideal() {
            return Ok(SmoothnessReport {
                smooth: true,
                witness: None,
            });
        }
        return Ok(SmoothnessReport {
            smooth: false,
            witness: Some(gb),
        });
    }
    for v in ring.vars().to_vec() {
        let var = Polynomial::var(&ring, &v)?;
        let sat = saturation(&jac, &var)?;
        let gb = groebner_basis(&sat);
        if !gb.is_unit_ideal() {
            return Ok(SmoothnessReport {
                smooth: false,
                witness: Some(gb),
            });
        }
    }
    Ok(SmoothnessReport {
        smooth: true,
        witness: None,
    })
}

/// How the meridian trace is pinned: a rational value, or the minimal
/// polynomial of a quadratic value (e.g. `x^2 - 5`).
#[derive(Clone, Debug)]
pub enum MeridianTraceSpec {
    Rational(Rational),
    MinimalPolynomial(Polynomial),
}

/// The fiber of the curve over a fixed meridian trace, as a monic univariate
/// polynomial in `z`.
pub fn characters_at_meridian_trace(
    x0: &CharacterCurve,
    spec: &MeridianTraceSpec,
) -> Result<Polynomial> {
    let g = x0.generator()?;
    let fiber_ring = VariableRing::lex(&["z"]);
    match spec {
        MeridianTraceSpec::Rational(c) => {
            let mut bind = BTreeMap::new();
            bind.insert(
                "x".to_string(),
                Polynomial::constant(&fiber_ring, c.clone()),
            );
            bind.insert("z".to_string(), Polynomial::var(&fiber_ring, "z")?);
            let fiber = g.substitute(&bind)?;
            if fiber.is_zero() {
                return Err(Error::Degenerate(
                    "curve generator vanishes identically on the fiber".into(),
                ));
            }
            Ok(fiber.monic())
        }
        MeridianTraceSpec::MinimalPolynomial(mu) => {
            univariate_coefficients(&mu.in_ring(&curve_ring())?, "x")
                .map_err(|_| Error::Parse("minimal polynomial must be univariate in x".into()))?;
            let ideal = x0.ideal().with_generator(mu.in_ring(&curve_ring())?)?;
            let elim = elimination_ideal(&ideal, &["x"])?;
            if elim.is_zero() {
                return Err(Error::Degenerate(
                    "fiber over the minimal polynomial is not finite".into(),
                ));
            }
            let gen = elim.generators()[0].in_ring(&fiber_ring)?;
            Ok(gen.monic())
        }
    }
}

/// Where the restriction map identifies distinct curve points: the ideal of
/// off-diagonal pairs `(x, z) != (x, z')` with equal images. Finite for a
/// map that is birational onto its image.
pub fn restriction_identified_pairs(
    x0: &CharacterCurve,
    rm: &RestrictionMap,
) -> Result<(Ideal, bool, Option<usize>)> {
    let g = x0.generator()?;
    let ring = VariableRing::grevlex(&["x", "z", "zz"]);
    let to_zz = |p: &Polynomial| -> Result<Polynomial> {
        let mut bind = BTreeMap::new();
        bind.insert("x".to_string(), Polynomial::var(&ring, "x")?);
        bind.insert("z".to_string(), Polynomial::var(&ring, "zz")?);
        p.substitute(&bind)
    };
    let g1 = g.in_ring(&ring)?;
    let g2 = to_zz(g)?;
    let f1 = rm.longitude_trace.in_ring(&ring)?;
    let f2 = to_zz(&rm.longitude_trace)?;
    let h1 = rm.mixed_trace.in_ring(&ring)?;
    let h2 = to_zz(&rm.mixed_trace)?;
    let m1 = rm.meridian_trace.in_ring(&ring)?;
    let m2 = to_zz(&rm.meridian_trace)?;
    let ideal = Ideal::new(
        &ring,
        vec![g1, g2, &f1 - &f2, &h1 - &h2, &m1 - &m2],
    )?;
    let diag = &Polynomial::var(&ring, "z")? - &Polynomial::var(&ring, "zz")?;
    let off = saturation(&ideal, &diag)?;
    let gb = groebner_basis(&off);
    if gb.is_unit_ideal() {
        return Ok((off, true, Some(0)));
    }
    let finite = is_zero_dimensional(&gb);
    let count = if finite {
        Some(crate::groebner::quotient_dimension(&gb)?.0)
    } else {
        None
    };
    Ok((off, finite, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_membership;
    use crate::knot::KnotPresentation;

    fn cpoly(s: &str) -> Polynomial {
        Polynomial::parse(&curve_ring(), s).unwrap()
    }

    fn fig8_nonabelian() -> Polynomial {
        cpoly("z^2 - x^2*z - z + 2*x^2 - 1")
    }

    #[test]
    fn figure_eight_character_ideal() {
        let kp = KnotPresentation::figure_eight();
        let full = character_ideal(&kp).unwrap();
        let expect = (&abelian_factor() * &fig8_nonabelian()).primitive_integer();
        assert_eq!(*full.generator().unwrap(), expect);
        // end-to-end: the eliminated generator lies in the parametrized system
        let system = character_system_for_validation(&kp).unwrap();
        let lifted = full
            .generator()
            .unwrap()
            .in_ring(system.ring())
            .unwrap();
        assert!(ideal_membership(&lifted, &system));
    }

    #[test]
    fn figure_eight_split() {
        let kp = KnotPresentation::figure_eight();
        let full = character_ideal(&kp).unwrap();
        let (ab, x0) = split_components(&full).unwrap();
        assert_eq!(ab, abelian_factor());
        assert_eq!(*x0.generator().unwrap(), fig8_nonabelian());
    }

    #[test]
    fn split_strips_abelian_powers() {
        let g = &abelian_factor().pow(2) * &fig8_nonabelian();
        let full = CharacterCurve::from_generator(g, ComponentTag::Full).unwrap();
        let (_, x0) = split_components(&full).unwrap();
        assert_eq!(*x0.generator().unwrap(), fig8_nonabelian());
        // abelian-only input: nonabelian part is empty
        let only_ab =
            CharacterCurve::from_generator(abelian_factor(), ComponentTag::Full).unwrap();
        let (_, none) = split_components(&only_ab).unwrap();
        assert!(none.is_empty());
        // no abelian factor at all
        let bad = CharacterCurve::from_generator(fig8_nonabelian(), ComponentTag::Full).unwrap();
        assert!(matches!(
            split_components(&bad),
            Err(Error::MissingAbelianFactor)
        ));
    }

    #[test]
    fn trefoil_character_ideal() {
        // relator a b a = b a b
        let kp = KnotPresentation::parse(
            "name: trefoil\nrelator: abaBAB\nmeridian: a\nlongitude: ab\n",
        )
        .unwrap();
        let full = character_ideal(&kp).unwrap();
        let (_, x0) = split_components(&full).unwrap();
        let g = x0.generator().unwrap();
        // oracle: the rational representation s = 1, t = -1 has (x, z) = (2, 1)
        let mut vals = BTreeMap::new();
        vals.insert("x".to_string(), rat(2));
        vals.insert("z".to_string(), rat(1));
        assert!(g.evaluate(&vals).unwrap().is_zero());
        // the irreducible locus of the trefoil pins the product trace
        assert_eq!(*g, cpoly("z - 1"));
    }

    #[test]
    fn reducible_locus_examples() {
        let alex = Polynomial::parse(&crate::knot::alexander_ring(), "t^2 - 3*t + 1").unwrap();
        assert_eq!(reducible_character_locus(&alex).unwrap(), cpoly("x^2 - 5"));
        let alex2 = Polynomial::parse(&crate::knot::alexander_ring(), "t^2 - t + 1").unwrap();
        assert_eq!(reducible_character_locus(&alex2).unwrap(), cpoly("x^2 - 3"));
        let one = Polynomial::one(&crate::knot::alexander_ring());
        assert!(reducible_character_locus(&one).unwrap().is_one());
        let bad = Polynomial::parse(&crate::knot::alexander_ring(), "t - 1").unwrap();
        assert!(reducible_character_locus(&bad).is_err());
    }
}

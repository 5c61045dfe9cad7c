//! Code constructions from two or three automorphism subgroups.
//!
//! Every construction follows the same pipeline: build the subgroups, take
//! their product `G`, keep the points whose `G`-orbit has full size, and
//! evaluate a monomial basis there. The families differ in which subgroups
//! they use, which interpolation variable repairs each subgroup's orbits,
//! and which hypotheses they require.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::code::{LengthFormula, LocalityEntry, LrcCode, Monomial, MonomialBasis};
use crate::curve::{exact_sqrt, gcd_u64, Coord, CurveFamily, CurveModel, PointSet};
use crate::error::{Budget, Error, Result};
use crate::field::{Element, Field};
use crate::group::{
    group_product, orbit_decompose, select_split_coordinates, subgroup_closure, Automorphism,
    CoordFn, InjectivitySpec, Subgroup,
};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Explicit subgroups `H1` (order `deg A`, fixing `y`) and `H2`
    /// (order `deg F`, fixing `x`) on a plane curve `F(y) = A(x)`.
    TwoSubgroup {
        h1: Vec<Automorphism>,
        h2: Vec<Automorphism>,
        t1: u64,
        t2: u64,
    },
    /// `y^beta = A(x)` over GF(q) with `beta | q-1` and `A` split over GF(q).
    AdditiveSplit { t1: u64, t2: u64 },
    /// Maximal `y^beta = A(x)` over GF(q^2).
    MaximalKummer { t1: u64, t2: u64 },
    /// `y^beta = x^alpha + 1` over GF(q^2) with `alpha, beta | q+1`.
    Fermat { t1: u64, t2: u64 },
    /// Maximal `y^beta = A(x)` with `H2` of order `u | beta`.
    PartialScaling { u: u64, t1: u64, t2: u64 },
    /// Maximal `y^beta = A(x)` with commuting subgroups of orders
    /// `alpha*u` and `v` meeting in a group of order `gcd(u, v)`.
    Intersecting { u: u64, v: u64, t1: u64, t2: u64 },
    /// Tower `z^M = B(y)`, `y^N = A(x)` with three subgroups.
    ThreeSubgroup { r: u64, s: u64, t1: u64, t2: u64 },
    /// The Suzuki curve with basis `x^j y^(q-1)`.
    Suzuki { t1: u64 },
    /// Any curve and group `G`, basis `f * z^i` with `f` constant on orbits.
    General {
        generators: Vec<Automorphism>,
        z_fn: CoordFn,
        invariants: Vec<Monomial>,
        m: u64,
    },
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::TwoSubgroup { .. } => "two-subgroup",
            Construction::AdditiveSplit { .. } => "additive-split",
            Construction::MaximalKummer { .. } => "maximal-kummer",
            Construction::Fermat { .. } => "fermat",
            Construction::PartialScaling { .. } => "partial-scaling",
            Construction::Intersecting { .. } => "intersecting",
            Construction::ThreeSubgroup { .. } => "three-subgroup",
            Construction::Suzuki { .. } => "suzuki",
            Construction::General { .. } => "general",
        }
    }
}

/// Enumerates the points of `model` and builds the code.
pub fn construct(model: &CurveModel, c: &Construction, budget: &Budget) -> Result<LrcCode> {
    let points = Arc::new(model.enumerate_affine_points(budget)?);
    construct_on(model, points, c, budget)
}

/// Builds the code on an already enumerated point set.
pub fn construct_on(
    model: &CurveModel,
    points: Arc<PointSet>,
    c: &Construction,
    budget: &Budget,
) -> Result<LrcCode> {
    let f = model.field();
    match c {
        Construction::TwoSubgroup { h1, h2, t1, t2 } => {
            let (alpha, beta) = model.plane_degrees();
            if model.dimension() != 2 {
                return Err(Error::invalid(
                    "two-subgroup construction needs a plane curve",
                ));
            }
            if gcd_u64(alpha, beta) != 1 {
                return Err(Error::hypothesis(format!(
                    "gcd(deg A, deg F) = gcd({alpha}, {beta}) must be 1"
                )));
            }
            at_most(
                "t1",
                *t1,
                beta as i64 - 2,
                "two-subgroup bound t1 \u{2264} \u{3b2}\u{2212}2",
            )?;
            at_most(
                "t2",
                *t2,
                alpha as i64 - 2,
                "two-subgroup bound t2 \u{2264} \u{3b1}\u{2212}2",
            )?;
            let g1 = validated_closure(f, &points, h1, budget)?;
            let g2 = validated_closure(f, &points, h2, budget)?;
            expect_order("H1", &g1, alpha, "must equal deg A")?;
            expect_order("H2", &g2, beta, "must equal deg F")?;
            if !fixes(&g1, Coord::Y) {
                return Err(Error::hypothesis("H1 must fix y"));
            }
            if !fixes(&g2, Coord::X) {
                return Err(Error::hypothesis("H2 must fix x"));
            }
            if g1.elements().iter().filter(|a| g2.contains(a)).count() != 1 {
                return Err(Error::hypothesis("H1 and H2 must intersect trivially"));
            }
            let g = group_product(f, &[&g1, &g2], budget)?;
            let locality = vec![
                entry("H1", g1, CoordFn::coord(Coord::X), 1, *t2),
                entry("H2", g2, CoordFn::coord(Coord::Y), 1, *t1),
            ];
            let basis = MonomialBasis::grid(*t1, *t2, Coord::Y, 1);
            assemble(model, points, c, g, locality, basis, None, &[])
        }
        Construction::AdditiveSplit { t1, t2 } => {
            let (beta, a) = kummer_additive(model)?;
            let alpha = a.degree();
            let q = f.size() as u64;
            if !(q - 1).is_multiple_of(beta) {
                return Err(Error::hypothesis(format!(
                    "\u{3b2} = {beta} must divide q\u{2212}1 = {}",
                    q - 1
                )));
            }
            let roots = f.additive_roots(&a)?;
            if roots.len() as u64 != alpha {
                return Err(Error::hypothesis(format!(
                    "A must split over GF({q}): {} of {alpha} roots are rational",
                    roots.len()
                )));
            }
            kummer_bounds(*t1, *t2, alpha, beta)?;
            let h1 = translations(f, &points, &roots, budget)?;
            let h2 = scalings(f, &points, Coord::Y, beta, budget)?;
            let formula = LengthFormula {
                value: points.len() as u64 - alpha,
                enforced: true,
            };
            two_group(model, points, c, h1, h2, *t1, *t2, formula, budget)
        }
        Construction::MaximalKummer { t1, t2 } => {
            let (beta, a) = kummer_additive(model)?;
            let alpha = a.degree();
            let q = require_maximal_kummer(model, &points)?;
            kummer_bounds(*t1, *t2, alpha, beta)?;
            let h1 = translations(f, &points, &f.additive_roots(&a)?, budget)?;
            let h2 = scalings(f, &points, Coord::Y, beta, budget)?;
            let formula = maximal_length(q, alpha, beta);
            two_group(model, points, c, h1, h2, *t1, *t2, formula, budget)
        }
        Construction::Fermat { t1, t2 } => {
            let CurveFamily::KummerFermat { alpha, beta } = *model.family() else {
                return Err(Error::invalid(
                    "fermat construction needs a y^\u{3b2} = x^\u{3b1} + 1 curve",
                ));
            };
            let q = square_root_size(f)?;
            for (name, d) in [("\u{3b1}", alpha), ("\u{3b2}", beta)] {
                if (q + 1) % d != 0 {
                    return Err(Error::hypothesis(format!(
                        "{name} = {d} must divide q+1 = {}",
                        q + 1
                    )));
                }
            }
            require_maximal(model, &points)?;
            kummer_bounds(*t1, *t2, alpha, beta)?;
            let h1 = scalings(f, &points, Coord::X, alpha, budget)?;
            let h2 = scalings(f, &points, Coord::Y, beta, budget)?;
            let formula = LengthFormula {
                value: q * q + (alpha - 1) * (beta - 1) * q - alpha - beta,
                enforced: true,
            };
            two_group(model, points, c, h1, h2, *t1, *t2, formula, budget)
        }
        Construction::PartialScaling { u, t1, t2 } => {
            let (beta, a) = kummer_additive(model)?;
            let alpha = a.degree();
            let q = require_maximal_kummer(model, &points)?;
            if *u < 2 || beta % u != 0 {
                return Err(Error::hypothesis(format!(
                    "u = {u} must be a divisor of \u{3b2} = {beta} with u \u{2265} 2"
                )));
            }
            at_most(
                "t1",
                *t1,
                *u as i64 - 2,
                "partial-scaling bound t1 \u{2264} u\u{2212}2",
            )?;
            at_most(
                "t2",
                *t2,
                alpha as i64 - 2,
                "partial-scaling bound t2 \u{2264} \u{3b1}\u{2212}2",
            )?;
            let h1 = translations(f, &points, &f.additive_roots(&a)?, budget)?;
            let h2 = scalings(f, &points, Coord::Y, *u, budget)?;
            let formula = maximal_length(q, alpha, beta);
            two_group(model, points, c, h1, h2, *t1, *t2, formula, budget)
        }
        Construction::Intersecting { u, v, t1, t2 } => {
            let (beta, a) = kummer_additive(model)?;
            let alpha = a.degree();
            let q = require_maximal_kummer(model, &points)?;
            let (u, v) = (*u, *v);
            if beta % u != 0 || beta % v != 0 {
                return Err(Error::hypothesis(format!(
                    "u = {u} and v = {v} must divide \u{3b2} = {beta}"
                )));
            }
            if !(1 < u && u <= v) {
                return Err(Error::hypothesis(format!(
                    "need 1 < u \u{2264} v, got u = {u}, v = {v}"
                )));
            }
            let m = gcd_u64(u, v);
            if m <= 1 {
                return Err(Error::hypothesis(format!("gcd(u, v) = {m} must exceed 1")));
            }
            if u * t1 + 2 > v {
                return Err(Error::hypothesis(format!(
                    "t1 = {t1} exceeds (v\u{2212}2)/u = {}/{u} (intersecting bound t1 \u{2264} (v\u{2212}2)/u)",
                    v as i64 - 2
                )));
            }
            at_most(
                "t2",
                *t2,
                alpha as i64 - 2,
                "intersecting bound t2 \u{2264} \u{3b1}\u{2212}2",
            )?;
            let eta = f.element_of_order(u)?;
            let mut gens = translation_maps(&f.additive_roots(&a)?);
            gens.push(Automorphism::scaling(Coord::Y, eta)?);
            let h1 = validated_closure(f, &points, &gens, budget)?;
            let h2 = scalings(f, &points, Coord::Y, v, budget)?;
            let g = group_product(f, &[&h1, &h2], budget)?;
            let expected = alpha * u * v / m;
            if g.order() as u64 != expected {
                return Err(Error::hypothesis(format!(
                    "|H1 H2| = {} differs from \u{3b1}uv/gcd(u,v) = {expected}",
                    g.order()
                )));
            }
            let locality = vec![
                entry("H1", h1, CoordFn::coord(Coord::X), u as usize, *t2),
                entry("H2", h2, CoordFn::power(Coord::Y, u), m as usize, *t1),
            ];
            let basis = MonomialBasis::grid(*t1, *t2, Coord::Y, u);
            assemble(
                model,
                points,
                c,
                g,
                locality,
                basis,
                Some(maximal_length(q, alpha, beta)),
                &[],
            )
        }
        Construction::ThreeSubgroup { r, s, t1, t2 } => {
            let (b_poly, big_m) = model.tower_equation().ok_or_else(|| {
                Error::invalid("three-subgroup construction needs a curve with a tower z^M = B(y)")
            })?;
            let (f_poly, a) = model.plane_equation();
            let (alpha, big_n) = (a.degree(), f_poly.degree());
            let (r, s) = (*r, *s);
            if r < 2 || big_n % r != 0 {
                return Err(Error::hypothesis(format!(
                    "r = {r} must be a divisor of N = {big_n} with r \u{2265} 2"
                )));
            }
            if s < 2 || big_m % s != 0 {
                return Err(Error::hypothesis(format!(
                    "s = {s} must be a divisor of M = {big_m} with s \u{2265} 2"
                )));
            }
            if gcd_u64(r, s) != 1 {
                return Err(Error::hypothesis(format!(
                    "gcd(r, s) = {} must be 1",
                    gcd_u64(r, s)
                )));
            }
            require_maximal(model, &points)?;
            let eta = f.element_of_order(r)?;
            if b_poly.terms().iter().any(|&(e, _)| f.pow(eta, e) != eta) {
                return Err(Error::hypothesis(
                    "B(\u{3b7}y) = \u{3b7}B(y) fails for \u{3b7} of order r",
                ));
            }
            at_most(
                "t1",
                *t1,
                r.min(s) as i64 - 2,
                "three-subgroup bound t1 \u{2264} min{r,s}\u{2212}2",
            )?;
            at_most(
                "t2",
                *t2,
                alpha as i64 - 2,
                "three-subgroup bound t2 \u{2264} \u{3b1}\u{2212}2",
            )?;
            let h1 = translations(f, &points, &f.additive_roots(&a)?, budget)?;
            let h2 = scalings(f, &points, Coord::Z, s, budget)?;
            let h3_gen = Automorphism::identity()
                .with(Coord::Y, f.pow(eta, big_m), Element::ZERO)?
                .with(Coord::Z, eta, Element::ZERO)?;
            let h3 = validated_closure(f, &points, &[h3_gen], budget)?;
            let g = group_product(f, &[&h1, &h2, &h3], budget)?;
            let locality = vec![
                entry("H1", h1, CoordFn::coord(Coord::X), 1, *t2),
                entry("H2", h2, CoordFn::coord(Coord::Z), 1, *t1),
                entry("H3", h3, CoordFn::coord(Coord::Z), 1, *t1),
            ];
            let basis = MonomialBasis::grid(*t1, *t2, Coord::Z, 1);
            let formula = match model.family() {
                CurveFamily::Gk { q } => {
                    let q = *q;
                    Some(LengthFormula {
                        value: q.pow(8) - q.pow(6) + q.pow(5) - q.pow(3),
                        enforced: true,
                    })
                }
                _ => None,
            };
            assemble(model, points, c, g, locality, basis, formula, &[])
        }
        Construction::Suzuki { t1 } => {
            let CurveFamily::Suzuki { q, q0 } = *model.family() else {
                return Err(Error::invalid("suzuki construction needs the Suzuki curve"));
            };
            if q < 8 {
                return Err(Error::hypothesis(format!(
                    "q = {q} leaves H2 of order q\u{2212}1 = {} (degenerate); need q \u{2265} 8",
                    q - 1
                )));
            }
            at_most(
                "t1",
                *t1,
                q as i64 - 3,
                "Suzuki bound t1 \u{2264} q\u{2212}3",
            )?;
            require_maximal(model, &points)?;
            let subfield: Vec<Element> =
                f.nonzero_elements().filter(|&a| f.pow(a, q) == a).collect();
            let shifts: Vec<Automorphism> = subfield
                .iter()
                .map(|&a| Automorphism::translation(Coord::Y, a))
                .collect();
            let h1 = validated_closure(f, &points, &shifts, budget)?;
            let gamma = f.element_of_order(q - 1)?;
            let h2_gen = Automorphism::identity()
                .with(Coord::X, gamma, Element::ZERO)?
                .with(Coord::Y, f.pow(gamma, q0 + 1), Element::ZERO)?;
            let h2 = validated_closure(f, &points, &[h2_gen], budget)?;
            let g = group_product(f, &[&h1, &h2], budget)?;
            let locality = vec![
                LocalityEntry {
                    label: "H1".into(),
                    subgroup: h1,
                    var: CoordFn::coord(Coord::X),
                    multiplicity: q as usize,
                    weight: Some(CoordFn::power(Coord::Y, q - 1)),
                    set_size: 1,
                    max_sets: Some(1),
                },
                entry("H2", h2, CoordFn::coord(Coord::X), 1, *t1),
            ];
            let basis = MonomialBasis::suzuki(q, *t1);
            let formula = LengthFormula {
                value: q.pow(4) + 2 * q * q * q0 * (q - 1) - 2 * q,
                enforced: false,
            };
            assemble(model, points, c, g, locality, basis, Some(formula), &[])
        }
        Construction::General {
            generators,
            z_fn,
            invariants,
            m,
        } => {
            let g = validated_closure(f, &points, generators, budget)?;
            let fibre = g.order() as u64;
            if fibre < 2 || *m + 2 > fibre {
                return Err(Error::hypothesis(format!(
                    "m = {m} exceeds r\u{2212}1 = {} where r+1 = |G| = {fibre}",
                    fibre as i64 - 2
                )));
            }
            if z_fn.coord == Coord::Z && model.dimension() < 3 {
                return Err(Error::invalid("z_fn uses z on a plane curve"));
            }
            let locality = vec![LocalityEntry {
                label: "G".into(),
                subgroup: g.clone(),
                var: *z_fn,
                multiplicity: 1,
                weight: None,
                set_size: *m as usize + 1,
                max_sets: None,
            }];
            let basis = MonomialBasis::fibred(invariants, *z_fn, *m)?;
            assemble(model, points, c, g, locality, basis, None, invariants)
        }
    }
}

fn entry(
    label: &str,
    subgroup: Subgroup,
    var: CoordFn,
    multiplicity: usize,
    degree: u64,
) -> LocalityEntry {
    LocalityEntry {
        label: label.into(),
        subgroup,
        var,
        multiplicity,
        weight: None,
        set_size: degree as usize + 1,
        max_sets: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn two_group(
    model: &CurveModel,
    points: Arc<PointSet>,
    c: &Construction,
    h1: Subgroup,
    h2: Subgroup,
    t1: u64,
    t2: u64,
    formula: LengthFormula,
    budget: &Budget,
) -> Result<LrcCode> {
    let g = group_product(model.field(), &[&h1, &h2], budget)?;
    let locality = vec![
        entry("H1", h1, CoordFn::coord(Coord::X), 1, t2),
        entry("H2", h2, CoordFn::coord(Coord::Y), 1, t1),
    ];
    let basis = MonomialBasis::grid(t1, t2, Coord::Y, 1);
    assemble(model, points, c, g, locality, basis, Some(formula), &[])
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    model: &CurveModel,
    points: Arc<PointSet>,
    c: &Construction,
    g: Subgroup,
    locality: Vec<LocalityEntry>,
    basis: MonomialBasis,
    length_formula: Option<LengthFormula>,
    invariants: &[Monomial],
) -> Result<LrcCode> {
    let f = model.field();
    let dec = orbit_decompose(f, &g, &points)?;
    let specs: Vec<InjectivitySpec<'_>> = locality
        .iter()
        .map(|e| InjectivitySpec {
            subgroup: &e.subgroup,
            var: e.var,
            multiplicity: e.multiplicity,
        })
        .collect();
    let coords = select_split_coordinates(f, &points, &dec, &specs)?;
    if coords.is_empty() {
        return Err(Error::hypothesis(format!(
            "no orbit of full size |G| = {}",
            g.order()
        )));
    }
    for inv in invariants {
        for orbit in dec.split_orbits() {
            let v0 = inv.eval(f, points.get(orbit[0]));
            if orbit.iter().any(|&i| inv.eval(f, points.get(i)) != v0) {
                return Err(Error::hypothesis(format!(
                    "{inv} is not constant on the orbit of point ({})",
                    points.get(orbit[0])
                )));
            }
        }
    }
    let n = coords.len();
    let delta = basis.delta(&model.pole_orders())?;
    if delta >= n as u64 {
        return Err(Error::hypothesis(format!(
            "pole bound \u{3b4} = {delta} must be below n = {n}"
        )));
    }
    let mut position = vec![u32::MAX; points.len()];
    for (pos, &i) in coords.iter().enumerate() {
        position[i] = pos as u32;
    }
    let mut code = LrcCode {
        model: model.clone(),
        points,
        construction: c.clone(),
        basis,
        coords,
        position,
        delta,
        locality,
        group_order: g.order(),
        orbit_sizes: dec.size_histogram(),
        length_formula,
        rank: crate::code::RankCertificate {
            rank: 0,
            columns: 0,
        },
    };
    code.rank = code.certify_rank();
    if code.rank.rank < code.k() {
        return Err(Error::hypothesis(format!(
            "generator matrix has rank {} below k = {}",
            code.rank.rank,
            code.k()
        )));
    }
    Ok(code)
}

fn at_most(name: &str, value: u64, bound: i64, hypothesis: &str) -> Result<()> {
    if value as i64 > bound {
        return Err(Error::hypothesis(format!(
            "{name} = {value} exceeds {bound} ({hypothesis})"
        )));
    }
    Ok(())
}

fn kummer_bounds(t1: u64, t2: u64, alpha: u64, beta: u64) -> Result<()> {
    at_most(
        "t1",
        t1,
        beta as i64 - 2,
        "bound t1 \u{2264} \u{3b2}\u{2212}2",
    )?;
    at_most(
        "t2",
        t2,
        alpha as i64 - 2,
        "bound t2 \u{2264} \u{3b1}\u{2212}2",
    )
}

fn kummer_additive(model: &CurveModel) -> Result<(u64, Poly)> {
    match model.family() {
        CurveFamily::KummerAdditive { beta, a } => Ok((*beta, a.clone())),
        other => Err(Error::invalid(format!(
            "construction needs a y^\u{3b2} = A(x) curve with A additive, got {}",
            other.tag()
        ))),
    }
}

fn square_root_size(f: &Field) -> Result<u64> {
    exact_sqrt(f.size() as u64)
        .ok_or_else(|| Error::hypothesis(format!("field size {} must be a square q^2", f.size())))
}

fn require_maximal(model: &CurveModel, points: &PointSet) -> Result<()> {
    if model.is_maximal(points)? {
        return Ok(());
    }
    let big_q = model.field().size() as u64;
    let root = exact_sqrt(big_q).unwrap_or(0);
    Err(Error::hypothesis(format!(
        "curve is not maximal over GF({big_q}): {} rational points, Hasse\u{2013}Weil value {}",
        points.len() + model.points_at_infinity(),
        big_q + 1 + 2 * model.genus() * root
    )))
}

/// Maximality of a Kummer curve, gated by the fast root/divisibility
/// criterion before the point count. Returns `q` for the field GF(q^2).
fn require_maximal_kummer(model: &CurveModel, points: &PointSet) -> Result<u64> {
    let q = square_root_size(model.field())?;
    if !model.kummer_maximality_criterion()? {
        return Err(Error::hypothesis(
            "curve cannot be maximal: needs \u{3b2} | q+1 and every root of A rational",
        ));
    }
    require_maximal(model, points)?;
    Ok(q)
}

fn maximal_length(q: u64, alpha: u64, beta: u64) -> LengthFormula {
    LengthFormula {
        value: q * q + (alpha - 1) * (beta - 1) * q - alpha,
        enforced: true,
    }
}

fn fixes(g: &Subgroup, c: Coord) -> bool {
    g.elements()
        .iter()
        .all(|a| a.map(c) == crate::group::AffineMap::IDENTITY)
}

fn expect_order(name: &str, g: &Subgroup, want: u64, why: &str) -> Result<()> {
    if g.order() as u64 != want {
        return Err(Error::hypothesis(format!(
            "|{name}| = {} {why} = {want}",
            g.order()
        )));
    }
    Ok(())
}

fn translation_maps(roots: &[Element]) -> Vec<Automorphism> {
    roots
        .iter()
        .filter(|r| !r.is_zero())
        .map(|&r| Automorphism::translation(Coord::X, r))
        .collect()
}

fn translations(
    f: &Field,
    points: &PointSet,
    roots: &[Element],
    budget: &Budget,
) -> Result<Subgroup> {
    validated_closure(f, points, &translation_maps(roots), budget)
}

fn scalings(
    f: &Field,
    points: &PointSet,
    c: Coord,
    order: u64,
    budget: &Budget,
) -> Result<Subgroup> {
    let g = f.element_of_order(order)?;
    validated_closure(f, points, &[Automorphism::scaling(c, g)?], budget)
}

/// Closure of generators that each permute the point set.
fn validated_closure(
    f: &Field,
    points: &PointSet,
    gens: &[Automorphism],
    budget: &Budget,
) -> Result<Subgroup> {
    for g in gens {
        g.validate(f, points)?;
    }
    subgroup_closure(f, gens, budget)
}

/// Orbit sizes of a group on the points, for reports.
pub fn orbit_report(code: &LrcCode) -> String {
    let mut out = String::new();
    let sizes: &BTreeMap<usize, usize> = code.orbit_sizes();
    out.push_str(&format!("group order {}\n", code.group_order()));
    for (size, count) in sizes {
        out.push_str(&format!("orbit size {size}: {count}\n"));
    }
    out.push_str(&format!("n {}\n", code.n()));
    out
}

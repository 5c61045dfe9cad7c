//! Automorphism subgroups acting coordinatewise, and their orbits on the
//! rational affine points.
//!
//! Every subgroup used by the constructions acts on each coordinate by an
//! affine map `w -> scale * w + shift`. Such maps compose in O(1), so groups
//! are stored as explicit element lists and their validity on a curve is
//! checked by applying every element to every point.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::curve::{AffinePoint, Coord, PointSet};
use crate::error::{Budget, Error, Result};
use crate::field::{Element, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub scale: Element,
    pub shift: Element,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        scale: Element::ONE,
        shift: Element::ZERO,
    };

    #[inline]
    pub fn apply(&self, f: &Field, w: Element) -> Element {
        f.add(f.mul(self.scale, w), self.shift)
    }

    /// `self ∘ inner`
    fn after(&self, f: &Field, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale: f.mul(self.scale, inner.scale),
            shift: self.apply(f, inner.shift),
        }
    }
}

/// A coordinatewise affine automorphism `(x, y, z) -> (a_x x + b_x, ...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    maps: [AffineMap; 3],
}

impl Automorphism {
    pub fn identity() -> Automorphism {
        Automorphism {
            maps: [AffineMap::IDENTITY; 3],
        }
    }

    /// Replaces the action on one coordinate.
    pub fn with(mut self, c: Coord, scale: Element, shift: Element) -> Result<Automorphism> {
        if scale.is_zero() {
            return Err(Error::invalid("automorphism scale must be nonzero"));
        }
        self.maps[c.index()] = AffineMap { scale, shift };
        Ok(self)
    }

    /// `c -> c + shift`
    pub fn translation(c: Coord, shift: Element) -> Automorphism {
        let mut a = Automorphism::identity();
        a.maps[c.index()].shift = shift;
        a
    }

    /// `c -> scale * c`
    pub fn scaling(c: Coord, scale: Element) -> Result<Automorphism> {
        Automorphism::identity().with(c, scale, Element::ZERO)
    }

    pub fn map(&self, c: Coord) -> AffineMap {
        self.maps[c.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|m| *m == AffineMap::IDENTITY)
    }

    pub fn apply(&self, f: &Field, p: &AffinePoint) -> AffinePoint {
        AffinePoint {
            x: self.maps[0].apply(f, p.x),
            y: self.maps[1].apply(f, p.y),
            z: p.z.map(|z| self.maps[2].apply(f, z)),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, f: &Field, other: &Automorphism) -> Automorphism {
        Automorphism {
            maps: [
                self.maps[0].after(f, &other.maps[0]),
                self.maps[1].after(f, &other.maps[1]),
                self.maps[2].after(f, &other.maps[2]),
            ],
        }
    }

    /// Checks that the map permutes the point set.
    pub fn validate(&self, f: &Field, points: &PointSet) -> Result<()> {
        // affine maps with nonzero scale are injective, so stability suffices
        for p in points.points() {
            if points.index_of(&self.apply(f, p)).is_none() {
                return Err(Error::hypothesis(format!(
                    "{self} does not map the point ({p}) to a point of the curve"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [Coord::X, Coord::Y, Coord::Z]
            .iter()
            .filter(|c| self.maps[c.index()] != AffineMap::IDENTITY)
            .map(|c| {
                let m = self.maps[c.index()];
                format!("{0}->{1}*{0}+{2}", c.name(), m.scale, m.shift)
            })
            .collect();
        if parts.is_empty() {
            f.write_str("id")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// A finite group of automorphisms stored as an element list, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Automorphism>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.elements.contains(a)
    }

    pub fn is_abelian(&self, f: &Field) -> bool {
        self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| a.compose(f, b) == b.compose(f, a))
        })
    }

    pub fn validate_on(&self, f: &Field, points: &PointSet) -> Result<()> {
        self.elements.iter().try_for_each(|a| a.validate(f, points))
    }

    /// Indices of the orbit of `points[i]`, sorted and deduplicated.
    pub fn orbit_of(&self, f: &Field, points: &PointSet, i: usize) -> Result<Vec<usize>> {
        let p = points.get(i);
        let mut orbit = self
            .elements
            .iter()
            .map(|g| {
                let img = g.apply(f, p);
                points.index_of(&img).ok_or_else(|| {
                    Error::hypothesis(format!("{g} maps ({p}) off the curve to ({img})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        orbit.sort_unstable();
        orbit.dedup();
        Ok(orbit)
    }
}

/// The group generated by `generators`, by breadth-first closure.
pub fn subgroup_closure(
    f: &Field,
    generators: &[Automorphism],
    budget: &Budget,
) -> Result<Subgroup> {
    let mut elements = vec![Automorphism::identity()];
    let mut seen: HashSet<Automorphism> = elements.iter().copied().collect();
    let mut frontier = 0;
    while frontier < elements.len() {
        let g = elements[frontier];
        frontier += 1;
        for h in generators {
            let gh = g.compose(f, h);
            if seen.insert(gh) {
                if elements.len() >= budget.max_group {
                    return Err(Error::Budget {
                        what: "subgroup closure",
                        needed: elements.len() as u128 + 1,
                        limit: budget.max_group as u128,
                    });
                }
                elements.push(gh);
            }
        }
    }
    Ok(Subgroup { elements })
}

/// The set product `H_1 H_2 ... H_k`, which must itself be a group.
pub fn group_product(f: &Field, parts: &[&Subgroup], budget: &Budget) -> Result<Subgroup> {
    if parts.len() < 2 {
        return Err(Error::invalid("a group product needs at least two factors"));
    }
    let mut elements = vec![Automorphism::identity()];
    let mut seen: HashSet<Automorphism> = elements.iter().copied().collect();
    for part in parts {
        let mut next = Vec::new();
        for g in &elements {
            for h in part.elements() {
                let gh = g.compose(f, h);
                if seen.insert(gh) {
                    next.push(gh);
                }
            }
        }
        elements.extend(next);
        if elements.len() > budget.max_group {
            return Err(Error::Budget {
                what: "group product",
                needed: elements.len() as u128,
                limit: budget.max_group as u128,
            });
        }
    }
    // The set P contains every factor; P·h ⊆ P for every factor element h
    // forces P to equal the group the factors generate.
    for g in &elements {
        for part in parts {
            for h in part.elements() {
                if !seen.contains(&g.compose(f, h)) {
                    return Err(Error::hypothesis(
                        "the product of the subgroups is not a group (not closed under composition)",
                    ));
                }
            }
        }
    }
    Ok(Subgroup { elements })
}

/// Orbits of a group on the point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    group_order: usize,
    orbits: Vec<Vec<usize>>,
    split: Vec<usize>,
}

impl OrbitDecomposition {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// All orbits, ordered by their smallest point index.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Orbits of full size `|G|` (trivial stabilizer).
    pub fn split_orbits(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.split.iter().map(move |&i| &self.orbits[i])
    }

    pub fn split_count(&self) -> usize {
        self.split.len()
    }

    /// Point indices of all split orbits, orbit by orbit.
    pub fn coordinate_order(&self) -> Vec<usize> {
        self.split_orbits().flatten().copied().collect()
    }

    /// `orbit size -> number of orbits of that size`
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for o in &self.orbits {
            *h.entry(o.len()).or_insert(0) += 1;
        }
        h
    }
}

pub fn orbit_decompose(f: &Field, g: &Subgroup, points: &PointSet) -> Result<OrbitDecomposition> {
    let mut visited = vec![false; points.len()];
    let mut orbits = Vec::new();
    let mut split = Vec::new();
    for i in 0..points.len() {
        if visited[i] {
            continue;
        }
        let orbit = g.orbit_of(f, points, i)?;
        for &j in &orbit {
            visited[j] = true;
        }
        if orbit.len() == g.order() {
            split.push(orbits.len());
        }
        orbits.push(orbit);
    }
    Ok(OrbitDecomposition {
        group_order: g.order(),
        orbits,
        split,
    })
}

/// A power of one coordinate, `w = c^e`, used as an interpolation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoordFn {
    pub coord: Coord,
    pub exponent: u64,
}

impl CoordFn {
    pub fn coord(coord: Coord) -> CoordFn {
        CoordFn { coord, exponent: 1 }
    }

    pub fn power(coord: Coord, exponent: u64) -> CoordFn {
        CoordFn { coord, exponent }
    }

    pub fn eval(&self, f: &Field, p: &AffinePoint) -> Element {
        f.pow(p.coord(self.coord), self.exponent)
    }
}

impl std::str::FromStr for CoordFn {
    type Err = Error;

    /// `y` or `y^4`
    fn from_str(s: &str) -> Result<CoordFn> {
        match s.trim().split_once('^') {
            Some((c, e)) => {
                let e: u64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad exponent in `{s}`")))?;
                Ok(CoordFn::power(c.parse()?, e))
            }
            None => Ok(CoordFn::coord(s.parse()?)),
        }
    }
}

impl fmt::Display for CoordFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            1 => f.write_str(self.coord.name()),
            e => write!(f, "{}^{}", self.coord.name(), e),
        }
    }
}

/// Requirement on every `H`-suborbit of a split orbit: it has `|H|` points
/// and `var` takes each of its values exactly `multiplicity` times on it.
#[derive(Clone, Debug)]
pub struct InjectivitySpec<'a> {
    pub subgroup: &'a Subgroup,
    pub var: CoordFn,
    pub multiplicity: usize,
}

/// Coordinate order of the split orbits after checking every injectivity spec.
pub fn select_split_coordinates(
    f: &Field,
    points: &PointSet,
    decomposition: &OrbitDecomposition,
    specs: &[InjectivitySpec<'_>],
) -> Result<Vec<usize>> {
    for orbit in decomposition.split_orbits() {
        for spec in specs {
            check_suborbits(f, points, orbit, spec)?;
        }
    }
    Ok(decomposition.coordinate_order())
}

fn check_suborbits(
    f: &Field,
    points: &PointSet,
    orbit: &[usize],
    spec: &InjectivitySpec<'_>,
) -> Result<()> {
    let mut assigned: HashSet<usize> = HashSet::with_capacity(orbit.len());
    for &i in orbit {
        if assigned.contains(&i) {
            continue;
        }
        let sub = spec.subgroup.orbit_of(f, points, i)?;
        if sub.len() != spec.subgroup.order() {
            return Err(Error::hypothesis(format!(
                "suborbit of point {i} has size {} instead of {}",
                sub.len(),
                spec.subgroup.order()
            )));
        }
        let mut counts: BTreeMap<Element, usize> = BTreeMap::new();
        for &j in &sub {
            *counts.entry(spec.var.eval(f, points.get(j))).or_insert(0) += 1;
            assigned.insert(j);
        }
        if let Some((value, &c)) = counts.iter().find(|(_, &c)| c != spec.multiplicity) {
            return Err(Error::hypothesis(format!(
                "interpolation variable {} takes value {value} {c} times on the suborbit of point {i} (expected {})",
                spec.var, spec.multiplicity
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveFamily, CurveModel};
    use crate::poly::Poly;

    fn hermitian4() -> (CurveModel, PointSet) {
        let f = Field::new(2, 2).unwrap();
        let a = Poly::parse("x^2 + x", &f).unwrap();
        let c = CurveModel::new(f, CurveFamily::KummerAdditive { beta: 3, a }).unwrap();
        let pts = c.enumerate_affine_points(&Budget::default()).unwrap();
        (c, pts)
    }

    fn e(f: &Field, v: u32) -> Element {
        f.element(v).unwrap()
    }

    #[test]
    fn translation_closure_has_order_2() {
        let (c, pts) = hermitian4();
        let f = c.field();
        let t = Automorphism::translation(Coord::X, Element::ONE);
        t.validate(f, &pts).unwrap();
        let h = subgroup_closure(f, &[t], &Budget::default()).unwrap();
        assert_eq!(h.order(), 2);
    }

    #[test]
    fn scaling_closure_is_cyclic_of_order_3() {
        let (c, _) = hermitian4();
        let f = c.field();
        let s = Automorphism::scaling(Coord::Y, e(f, 2)).unwrap();
        let h = subgroup_closure(f, &[s], &Budget::default()).unwrap();
        assert_eq!(h.order(), 3);
        assert!(h.is_abelian(f));
    }

    #[test]
    fn product_of_commuting_groups() {
        let (c, pts) = hermitian4();
        let f = c.field();
        let b = Budget::default();
        let h1 =
            subgroup_closure(f, &[Automorphism::translation(Coord::X, Element::ONE)], &b).unwrap();
        let h2 =
            subgroup_closure(f, &[Automorphism::scaling(Coord::Y, e(f, 2)).unwrap()], &b).unwrap();
        let g = group_product(f, &[&h1, &h2], &b).unwrap();
        assert_eq!(g.order(), 6);
        g.validate_on(f, &pts).unwrap();

        let dec = orbit_decompose(f, &g, &pts).unwrap();
        let sizes: Vec<usize> = dec.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        assert_eq!(dec.size_histogram(), BTreeMap::from([(2, 1), (6, 1)]));
        let small = dec.orbits().iter().find(|o| o.len() == 2).unwrap();
        let small_pts: Vec<_> = small.iter().map(|&i| *pts.get(i)).collect();
        assert_eq!(
            small_pts,
            vec![
                AffinePoint::plane(Element::ZERO, Element::ZERO),
                AffinePoint::plane(Element::ONE, Element::ZERO)
            ]
        );

        let specs = [
            InjectivitySpec {
                subgroup: &h1,
                var: CoordFn::coord(Coord::X),
                multiplicity: 1,
            },
            InjectivitySpec {
                subgroup: &h2,
                var: CoordFn::coord(Coord::Y),
                multiplicity: 1,
            },
        ];
        let coords = select_split_coordinates(f, &pts, &dec, &specs).unwrap();
        assert_eq!(coords.len(), 6);
    }

    #[test]
    fn non_closed_product_is_rejected() {
        // x -> x + 1 and x -> w x generate the affine group of GF(4) (order 12),
        // but the set product of the two cyclic groups has only 6 elements.
        let f = Field::new(2, 2).unwrap();
        let b = Budget::default();
        let t =
            subgroup_closure(&f, &[Automorphism::translation(Coord::X, Element::ONE)], &b).unwrap();
        let s = subgroup_closure(
            &f,
            &[Automorphism::scaling(Coord::X, e(&f, 2)).unwrap()],
            &b,
        )
        .unwrap();
        assert!(matches!(
            group_product(&f, &[&t, &s], &b),
            Err(Error::Hypothesis(_))
        ));
        let full = subgroup_closure(&f, &[t.elements()[1], s.elements()[1]], &b).unwrap();
        assert_eq!(full.order(), 12);
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let (c, pts) = hermitian4();
        let f = c.field();
        let g = subgroup_closure(f, &[], &Budget::default()).unwrap();
        let dec = orbit_decompose(f, &g, &pts).unwrap();
        assert!(dec.orbits().iter().all(|o| o.len() == 1));
        assert_eq!(dec.split_count(), pts.len());
    }

    #[test]
    fn invalid_automorphism_is_detected() {
        let (c, pts) = hermitian4();
        let f = c.field();
        // y -> y + 1 does not preserve y^3 = x^2 + x
        let bad = Automorphism::translation(Coord::Y, Element::ONE);
        assert!(bad.validate(f, &pts).is_err());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let f = Field::new(3, 2).unwrap();
        let g = f.element_of_order(8).unwrap();
        let b = Budget {
            max_group: 4,
            ..Budget::default()
        };
        let s = Automorphism::scaling(Coord::Y, g).unwrap();
        assert!(matches!(
            subgroup_closure(&f, &[s], &b),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn hermitian_gf9_split_total_is_24() {
        let f = Field::new(3, 2).unwrap();
        let a = Poly::parse("x^3 + x", &f).unwrap();
        let c = CurveModel::new(
            f.clone(),
            CurveFamily::KummerAdditive {
                beta: 4,
                a: a.clone(),
            },
        )
        .unwrap();
        let pts = c.enumerate_affine_points(&Budget::default()).unwrap();
        let b = Budget::default();
        let trans: Vec<_> = f
            .additive_roots(&a)
            .unwrap()
            .into_iter()
            .map(|r| Automorphism::translation(Coord::X, r))
            .collect();
        let h1 = subgroup_closure(&f, &trans, &b).unwrap();
        let lam = f.element_of_order(4).unwrap();
        let h2 =
            subgroup_closure(&f, &[Automorphism::scaling(Coord::Y, lam).unwrap()], &b).unwrap();
        let g = group_product(&f, &[&h1, &h2], &b).unwrap();
        assert_eq!(g.order(), 12);
        let dec = orbit_decompose(&f, &g, &pts).unwrap();
        assert_eq!(dec.coordinate_order().len(), 9 + 2 * 3 * 3 - 3);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let (c, pts) = hermitian4();
        let f = c.field();
        let a = Automorphism::translation(Coord::X, Element::ONE);
        let b = Automorphism::scaling(Coord::Y, e(f, 3)).unwrap();
        let ab = a.compose(f, &b);
        for p in pts.points() {
            assert_eq!(ab.apply(f, p), a.apply(f, &b.apply(f, p)));
        }
    }
}

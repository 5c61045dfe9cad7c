//! Curve families, their rational affine points, and maximality checks.
//!
//! Every implemented family has exactly one point at infinity, which is
//! never materialized. What the code constructions need from it is recorded
//! analytically as the pole orders of the coordinate functions.

use std::fmt;

use crate::error::{Budget, Error, Result};
use crate::field::{Element, Field};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    X,
    Y,
    Z,
}

impl Coord {
    pub fn name(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
            Coord::Z => "z",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for Coord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Coord> {
        match s.trim() {
            "x" => Ok(Coord::X),
            "y" => Ok(Coord::Y),
            "z" => Ok(Coord::Z),
            other => Err(Error::invalid(format!("unknown coordinate `{other}`"))),
        }
    }
}

/// A rational affine point. Plane curves leave `z` unset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    pub x: Element,
    pub y: Element,
    pub z: Option<Element>,
}

impl AffinePoint {
    pub fn plane(x: Element, y: Element) -> Self {
        AffinePoint { x, y, z: None }
    }

    pub fn space(x: Element, y: Element, z: Element) -> Self {
        AffinePoint { x, y, z: Some(z) }
    }

    pub fn coord(&self, c: Coord) -> Element {
        match c {
            Coord::X => self.x,
            Coord::Y => self.y,
            Coord::Z => self.z.expect("plane point has no z coordinate"),
        }
    }

    pub fn dim(&self) -> usize {
        if self.z.is_some() {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            Some(z) => write!(f, "{} {} {}", self.x, self.y, z),
            None => write!(f, "{} {}", self.x, self.y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveFamily {
    /// `y^beta = A(x)` with `A` additive and separable.
    KummerAdditive { beta: u64, a: Poly },
    /// `y^beta = x^alpha + 1`.
    KummerFermat { alpha: u64, beta: u64 },
    /// `F(y) = A(x)`.
    GeneralPlane { f: Poly, a: Poly },
    /// `y^q - y = x^q0 (x^q - x)` over GF(q^4).
    Suzuki { q: u64, q0: u64 },
    /// `y^(q+1) = x^q + x`, `z^(q^2-q+1) = y^(q^2) - y` over GF(q^6).
    Gk { q: u64 },
}

impl CurveFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            CurveFamily::KummerAdditive { .. } => "kummer-additive",
            CurveFamily::KummerFermat { .. } => "kummer-fermat",
            CurveFamily::GeneralPlane { .. } => "general-plane",
            CurveFamily::Suzuki { .. } => "suzuki",
            CurveFamily::Gk { .. } => "gk",
        }
    }
}

/// Pole orders at the unique point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleOrders {
    pub x: u64,
    pub y: u64,
    pub z: Option<u64>,
}

impl PoleOrders {
    pub fn of(&self, c: Coord) -> u64 {
        match c {
            Coord::X => self.x,
            Coord::Y => self.y,
            Coord::Z => self.z.expect("plane curve has no z coordinate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    field: Field,
    family: CurveFamily,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a, b)
}

/// `Some(r)` when `n = r^2`.
pub(crate) fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == n)
}

fn log_base(n: u64, p: u64) -> Option<u32> {
    let mut v = 1u64;
    let mut e = 0;
    while v < n {
        v = v.checked_mul(p)?;
        e += 1;
    }
    (v == n).then_some(e)
}

impl CurveModel {
    pub fn new(field: Field, family: CurveFamily) -> Result<CurveModel> {
        let p = field.characteristic() as u64;
        match &family {
            CurveFamily::KummerAdditive { beta, a } => {
                if *beta < 2 {
                    return Err(Error::hypothesis("Kummer exponent beta must be at least 2"));
                }
                if !a.is_additive(p as u32) || a.coeff(1).is_zero() {
                    return Err(Error::hypothesis(format!(
                        "A(x) = {a} must be additive and separable"
                    )));
                }
                if a.degree() < 2 {
                    return Err(Error::hypothesis("deg A must be at least 2"));
                }
            }
            CurveFamily::KummerFermat { alpha, beta } => {
                if *alpha < 2 || *beta < 2 {
                    return Err(Error::hypothesis("alpha and beta must be at least 2"));
                }
                if gcd(*alpha, *beta) != 1 {
                    return Err(Error::hypothesis(format!(
                        "gcd(alpha, beta) = gcd({alpha}, {beta}) must be 1"
                    )));
                }
            }
            CurveFamily::GeneralPlane { f, a } => {
                let (alpha, beta) = (a.degree(), f.degree());
                if alpha < 1 || beta < 1 || gcd(alpha, beta) != 1 {
                    return Err(Error::hypothesis(format!(
                        "gcd(deg A, deg F) = gcd({alpha}, {beta}) must be 1"
                    )));
                }
            }
            CurveFamily::Suzuki { q, q0 } => {
                let e = log_base(*q, 2)
                    .filter(|e| e % 2 == 1)
                    .ok_or_else(|| Error::hypothesis(format!("Suzuki q = {q} must be 2^(2t+1)")))?;
                if *q0 != 1 << ((e - 1) / 2) {
                    return Err(Error::hypothesis(format!(
                        "Suzuki q0 = {q0} must be 2^t for q = 2^(2t+1) = {q}"
                    )));
                }
                if p != 2 || field.degree() != 4 * e {
                    return Err(Error::hypothesis(format!(
                        "Suzuki curve with q = {q} lives over GF(q^4) = GF(2^{})",
                        4 * e
                    )));
                }
            }
            CurveFamily::Gk { q } => {
                let e = log_base(*q, p).ok_or_else(|| {
                    Error::hypothesis(format!("GK q = {q} must be a power of {p}"))
                })?;
                if field.degree() != 6 * e {
                    return Err(Error::hypothesis(format!(
                        "GK curve with q = {q} lives over GF(q^6) = GF({p}^{})",
                        6 * e
                    )));
                }
            }
        }
        Ok(CurveModel { field, family })
    }

    /// Builds GF(q^4) and the Suzuki curve over it.
    pub fn suzuki(q: u64, budget: &Budget) -> Result<CurveModel> {
        let e = log_base(q, 2)
            .filter(|e| e % 2 == 1)
            .ok_or_else(|| Error::hypothesis(format!("Suzuki q = {q} must be 2^(2t+1)")))?;
        let field = Field::with_budget(2, 4 * e, budget)?;
        CurveModel::new(
            field,
            CurveFamily::Suzuki {
                q,
                q0: 1 << ((e - 1) / 2),
            },
        )
    }

    /// Builds GF(q^6) and the GK curve over it.
    pub fn gk(q: u64, budget: &Budget) -> Result<CurveModel> {
        let p = crate::field::prime_factors(q);
        if p.len() != 1 {
            return Err(Error::hypothesis(format!(
                "GK q = {q} must be a prime power"
            )));
        }
        let e = log_base(q, p[0]).expect("prime power");
        let field = Field::with_budget(p[0] as u32, 6 * e, budget)?;
        CurveModel::new(field, CurveFamily::Gk { q })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    /// `(F, A)` with the plane part of the curve given by `F(y) = A(x)`.
    /// For the GK curve this is its Hermitian subcover.
    pub fn plane_equation(&self) -> (Poly, Poly) {
        let f = &self.field;
        match &self.family {
            CurveFamily::KummerAdditive { beta, a } => (Poly::monomial(*beta), a.clone()),
            CurveFamily::KummerFermat { alpha, beta } => (
                Poly::monomial(*beta),
                Poly::new(f, [(*alpha, Element::ONE), (0, Element::ONE)]),
            ),
            CurveFamily::GeneralPlane { f: fy, a } => (fy.clone(), a.clone()),
            CurveFamily::Suzuki { q, q0 } => (
                Poly::new(f, [(*q, Element::ONE), (1, f.from_int(-1))]),
                Poly::new(f, [(q0 + q, Element::ONE), (q0 + 1, f.from_int(-1))]),
            ),
            CurveFamily::Gk { q } => (
                Poly::monomial(q + 1),
                Poly::new(f, [(*q, Element::ONE), (1, Element::ONE)]),
            ),
        }
    }

    /// `(B, M)` of the tower equation `z^M = B(y)` (GK only).
    pub fn tower_equation(&self) -> Option<(Poly, u64)> {
        match &self.family {
            CurveFamily::Gk { q } => {
                let f = &self.field;
                Some((
                    Poly::new(f, [(q * q, Element::ONE), (1, f.from_int(-1))]),
                    q * q - q + 1,
                ))
            }
            _ => None,
        }
    }

    /// `(alpha, beta) = (deg A, deg F)` of the plane equation.
    pub fn plane_degrees(&self) -> (u64, u64) {
        let (f, a) = self.plane_equation();
        (a.degree(), f.degree())
    }

    pub fn dimension(&self) -> usize {
        if matches!(self.family, CurveFamily::Gk { .. }) {
            3
        } else {
            2
        }
    }

    pub fn genus(&self) -> u64 {
        match &self.family {
            CurveFamily::Suzuki { q, q0 } => q0 * (q - 1),
            CurveFamily::Gk { q } => q * q * (q - 1) * (q * q + q - 1) / 2,
            _ => {
                let (alpha, beta) = self.plane_degrees();
                (alpha - 1) * (beta - 1) / 2
            }
        }
    }

    pub fn points_at_infinity(&self) -> usize {
        1
    }

    pub fn pole_orders(&self) -> PoleOrders {
        match &self.family {
            CurveFamily::Suzuki { q, q0 } => PoleOrders {
                x: *q,
                y: q + q0,
                z: None,
            },
            // x has degree (q+1)(q^2-q+1), y has degree q(q^2-q+1), and z has
            // degree q^2 * q since fixing z leaves q^2 choices of y and q of x.
            CurveFamily::Gk { q } => PoleOrders {
                x: q * q * q + 1,
                y: q * q * q - q * q + q,
                z: Some(q * q * q),
            },
            _ => {
                let (alpha, beta) = self.plane_degrees();
                PoleOrders {
                    x: beta,
                    y: alpha,
                    z: None,
                }
            }
        }
    }

    pub fn satisfies(&self, pt: &AffinePoint) -> bool {
        let f = &self.field;
        let (fy, ax) = self.plane_equation();
        if fy.eval(f, pt.y) != ax.eval(f, pt.x) {
            return false;
        }
        match (self.tower_equation(), pt.z) {
            (Some((b, m)), Some(z)) => f.pow(z, m) == b.eval(f, pt.y),
            (None, None) => true,
            _ => false,
        }
    }

    /// Every rational affine point, sorted by coordinate encodings.
    pub fn enumerate_affine_points(&self, budget: &Budget) -> Result<PointSet> {
        let f = &self.field;
        let q = f.size();
        if q as u64 > budget.max_q {
            return Err(Error::Budget {
                what: "point enumeration",
                needed: q as u128,
                limit: budget.max_q as u128,
            });
        }
        let (fy, ax) = self.plane_equation();
        let y_fibers = Fibers::build(f, |y| fy.eval(f, y));
        let mut points = Vec::new();
        match self.tower_equation() {
            None => {
                for x in f.elements() {
                    for &y in y_fibers.get(ax.eval(f, x)) {
                        points.push(AffinePoint::plane(x, y));
                    }
                }
            }
            Some((b, m)) => {
                let z_fibers = Fibers::build(f, |z| f.pow(z, m));
                for x in f.elements() {
                    for &y in y_fibers.get(ax.eval(f, x)) {
                        for &z in z_fibers.get(b.eval(f, y)) {
                            points.push(AffinePoint::space(x, y, z));
                        }
                    }
                }
            }
        }
        Ok(PointSet::new(q as u64, points))
    }

    /// Whether `1 + #affine points` reaches the Hasse-Weil upper value
    /// `Q + 1 + 2 g sqrt(Q)` for the field size `Q`.
    pub fn is_maximal(&self, points: &PointSet) -> Result<bool> {
        let big_q = self.field.size() as u64;
        let root = exact_sqrt(big_q)
            .ok_or_else(|| Error::invalid(format!("field size {big_q} is not a square")))?;
        let total = points.len() as u64 + self.points_at_infinity() as u64;
        Ok(total == big_q + 1 + 2 * self.genus() * root)
    }

    /// Necessary condition for maximality of `y^beta = f(x)` over GF(q^2):
    /// `beta | q+1` and all roots of `f` rational.
    pub fn kummer_maximality_criterion(&self) -> Result<bool> {
        let f = &self.field;
        let (alpha, beta, root_count) = match &self.family {
            CurveFamily::KummerAdditive { beta, a } => {
                (a.degree(), *beta, f.additive_roots(a)?.len() as u64)
            }
            CurveFamily::KummerFermat { alpha, beta } => {
                let (_, a) = self.plane_equation();
                (*alpha, *beta, f.roots(&a).len() as u64)
            }
            _ => {
                return Err(Error::invalid(
                    "maximality criterion applies to Kummer curves y^beta = f(x) only",
                ))
            }
        };
        let q = exact_sqrt(f.size() as u64).ok_or_else(|| {
            Error::hypothesis(format!("field size {} is not a square q^2", f.size()))
        })?;
        if gcd(alpha, beta) != 1 {
            return Err(Error::hypothesis(format!(
                "gcd(beta, deg f) = gcd({beta}, {alpha}) must be 1"
            )));
        }
        if gcd(q, beta) != 1 {
            return Err(Error::hypothesis(format!(
                "gcd(q, beta) = gcd({q}, {beta}) must be 1"
            )));
        }
        Ok((q + 1) % beta == 0 && root_count == alpha)
    }
}

/// Preimages of a polynomial map on the field, grouped by value.
struct Fibers {
    offsets: Vec<u32>,
    items: Vec<Element>,
}

impl Fibers {
    fn build(field: &Field, map: impl Fn(Element) -> Element) -> Fibers {
        let q = field.size() as usize;
        let values: Vec<Element> = field.elements().map(&map).collect();
        let mut offsets = vec![0u32; q + 1];
        for v in &values {
            offsets[v.value() as usize + 1] += 1;
        }
        for i in 0..q {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut items = vec![Element::ZERO; q];
        for (src, v) in field.elements().zip(&values) {
            let slot = &mut fill[v.value() as usize];
            items[*slot as usize] = src;
            *slot += 1;
        }
        Fibers { offsets, items }
    }

    fn get(&self, v: Element) -> &[Element] {
        let i = v.value() as usize;
        &self.items[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// Sorted rational affine points with index lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    q: u64,
    points: Vec<AffinePoint>,
    keys: Vec<u64>,
}

impl PointSet {
    fn new(q: u64, mut points: Vec<AffinePoint>) -> PointSet {
        points.sort();
        let keys = points.iter().map(|p| point_key(q, p)).collect();
        PointSet { q, points, keys }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &AffinePoint {
        &self.points[i]
    }

    pub fn index_of(&self, pt: &AffinePoint) -> Option<usize> {
        self.keys.binary_search(&point_key(self.q, pt)).ok()
    }
}

fn point_key(q: u64, p: &AffinePoint) -> u64 {
    let z = p.z.map_or(0, |z| z.value() as u64);
    (p.x.value() as u64 * q + p.y.value() as u64) * q + z
}

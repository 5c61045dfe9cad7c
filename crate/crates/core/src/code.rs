//! Evaluation codes on monomial spaces, evaluated at split orbit points.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::construct::Construction;
use crate::curve::{AffinePoint, Coord, CurveModel, PointSet, PoleOrders};
use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::group::{CoordFn, Subgroup};
use crate::matrix::Matrix;

/// `x^x * y^y * z^z`
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub fn new(x: u64, y: u64, z: u64) -> Monomial {
        Monomial { x, y, z }
    }

    pub fn of(c: CoordFn) -> Monomial {
        let mut m = Monomial::ONE;
        match c.coord {
            Coord::X => m.x = c.exponent,
            Coord::Y => m.y = c.exponent,
            Coord::Z => m.z = c.exponent,
        }
        m
    }

    pub fn times(self, o: Monomial) -> Monomial {
        Monomial::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn pow(self, e: u64) -> Monomial {
        Monomial::new(self.x * e, self.y * e, self.z * e)
    }

    pub fn pole_order(&self, poles: &PoleOrders) -> Result<u64> {
        if self.z > 0 && poles.z.is_none() {
            return Err(Error::invalid(format!(
                "monomial {self} uses z on a plane curve"
            )));
        }
        Ok(self.x * poles.x + self.y * poles.y + self.z * poles.z.unwrap_or(0))
    }

    pub fn eval(&self, f: &Field, p: &AffinePoint) -> Element {
        let mut v = f.mul(f.pow(p.x, self.x), f.pow(p.y, self.y));
        if self.z > 0 {
            v = f.mul(v, f.pow(p.z.unwrap_or(Element::ZERO), self.z));
        }
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("x", self.x), ("y", self.y), ("z", self.z)]
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `1`, `x`, `x^2*y^3*z`.
    fn from_str(s: &str) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let mut m = Monomial::ONE;
        for factor in s.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (
                    v,
                    e.parse::<u64>()
                        .map_err(|_| Error::invalid(format!("bad exponent in monomial `{s}`")))?,
                ),
                None => (factor, 1),
            };
            let c: Coord = var.parse()?;
            m = m.times(Monomial::of(CoordFn::power(c, exp)));
        }
        Ok(m)
    }
}

/// A basis of the evaluated function space, one monomial per generator row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(monomials: Vec<Monomial>) -> Result<MonomialBasis> {
        let mut sorted = monomials.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != monomials.len() {
            return Err(Error::invalid("basis monomials must be distinct"));
        }
        if monomials.is_empty() {
            return Err(Error::invalid("basis must not be empty"));
        }
        Ok(MonomialBasis { monomials })
    }

    /// `x^j * w^(k*step)` for `k <= t1`, `j <= t2`, ordered by `k` then `j`.
    pub fn grid(t1: u64, t2: u64, w: Coord, step: u64) -> MonomialBasis {
        let mut monomials = Vec::new();
        for k in 0..=t1 {
            for j in 0..=t2 {
                monomials
                    .push(Monomial::new(j, 0, 0).times(Monomial::of(CoordFn::power(w, k * step))));
            }
        }
        MonomialBasis { monomials }
    }

    /// `x^j * y^(q-1)` for `j <= t1`.
    pub fn suzuki(q: u64, t1: u64) -> MonomialBasis {
        MonomialBasis {
            monomials: (0..=t1).map(|j| Monomial::new(j, q - 1, 0)).collect(),
        }
    }

    /// `f * z^i` for `i <= m` and each `f` in `invariants`.
    pub fn fibred(invariants: &[Monomial], z: CoordFn, m: u64) -> Result<MonomialBasis> {
        let zm = Monomial::of(z);
        let mut monomials = Vec::new();
        for i in 0..=m {
            for f in invariants {
                monomials.push(f.times(zm.pow(i)));
            }
        }
        MonomialBasis::new(monomials)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Largest pole order at infinity over the basis.
    pub fn delta(&self, poles: &PoleOrders) -> Result<u64> {
        self.monomials
            .iter()
            .map(|m| m.pole_order(poles))
            .try_fold(0, |acc, d| Ok(acc.max(d?)))
    }
}

impl fmt::Display for MonomialBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One recovery subgroup: its orbits through a point supply disjoint
/// recovery sets of `set_size` points, repaired by interpolating
/// `f / weight` as a polynomial of degree `set_size - 1` in `var`.
#[derive(Clone, Debug)]
pub struct LocalityEntry {
    pub label: String,
    pub subgroup: Subgroup,
    pub var: CoordFn,
    /// How many points of each suborbit share one value of `var`.
    pub multiplicity: usize,
    pub weight: Option<CoordFn>,
    pub set_size: usize,
    pub max_sets: Option<usize>,
}

impl LocalityEntry {
    /// Number of disjoint sets this subgroup contributes per coordinate.
    pub fn set_count(&self) -> usize {
        let free = (self.subgroup.order() - 1) / self.set_size;
        self.max_sets.map_or(free, |cap| free.min(cap))
    }
}

/// Length predicted by a closed formula. `enforced` is false when the
/// formula is only a reference value and a mismatch is reported, not fatal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthFormula {
    pub value: u64,
    pub enforced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub columns: usize,
}

#[derive(Clone, Debug)]
pub struct LrcCode {
    pub(crate) model: CurveModel,
    pub(crate) points: Arc<PointSet>,
    pub(crate) construction: Construction,
    pub(crate) basis: MonomialBasis,
    pub(crate) coords: Vec<usize>,
    pub(crate) position: Vec<u32>,
    pub(crate) delta: u64,
    pub(crate) locality: Vec<LocalityEntry>,
    pub(crate) group_order: usize,
    pub(crate) orbit_sizes: BTreeMap<usize, usize>,
    pub(crate) length_formula: Option<LengthFormula>,
    pub(crate) rank: RankCertificate,
}

impl LrcCode {
    pub fn field(&self) -> &Field {
        self.model.field()
    }

    pub fn model(&self) -> &CurveModel {
        &self.model
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn tag(&self) -> &'static str {
        self.construction.tag()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    /// Largest pole order over the basis.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// `n - delta`
    pub fn designed_distance(&self) -> u64 {
        self.n() as u64 - self.delta
    }

    /// Point indices of the coordinates, in coordinate order.
    pub fn coordinate_order(&self) -> &[usize] {
        &self.coords
    }

    pub fn coordinate_point(&self, i: usize) -> &AffinePoint {
        self.points.get(self.coords[i])
    }

    /// Coordinate position of a point index, if it is a coordinate.
    pub fn position_of(&self, point: usize) -> Option<usize> {
        match self.position[point] {
            u32::MAX => None,
            p => Some(p as usize),
        }
    }

    pub fn locality(&self) -> &[LocalityEntry] {
        &self.locality
    }

    /// Recovery set sizes `r_1, ..., r_t`, one per recovery subgroup.
    pub fn r_list(&self) -> Vec<usize> {
        self.locality.iter().map(|e| e.set_size).collect()
    }

    /// Disjoint recovery sets per coordinate, summed over the subgroups.
    pub fn availability(&self) -> usize {
        self.locality.iter().map(LocalityEntry::set_count).sum()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// `orbit size -> count` over all affine points.
    pub fn orbit_sizes(&self) -> &BTreeMap<usize, usize> {
        &self.orbit_sizes
    }

    pub fn length_formula(&self) -> Option<LengthFormula> {
        self.length_formula
    }

    /// Rank reached on a prefix of the columns during construction.
    pub fn rank_certificate(&self) -> RankCertificate {
        self.rank
    }

    /// Column `i` of the generator matrix.
    pub fn column(&self, i: usize) -> Vec<Element> {
        let f = self.field();
        let p = self.coordinate_point(i);
        self.basis
            .monomials()
            .iter()
            .map(|m| m.eval(f, p))
            .collect()
    }

    /// The full `k x n` generator matrix.
    pub fn generator_matrix(&self) -> Matrix {
        Matrix::from_columns(self.k(), (0..self.n()).map(|i| self.column(i)))
    }

    /// Symbol `i` of the codeword of `message`.
    pub fn eval(&self, message: &[Element], i: usize) -> Element {
        let f = self.field();
        let p = self.coordinate_point(i);
        self.basis
            .monomials()
            .iter()
            .zip(message)
            .fold(Element::ZERO, |acc, (m, &c)| {
                f.add(acc, f.mul(c, m.eval(f, p)))
            })
    }

    pub fn encode(&self, message: &[Element]) -> Vec<Element> {
        assert_eq!(message.len(), self.k(), "message length must equal k");
        (0..self.n()).map(|i| self.eval(message, i)).collect()
    }

    /// Rank of the first `c` columns for `c = 2k, 4k, ...` until it reaches `k`
    /// or all columns are used.
    pub fn certify_rank(&self) -> RankCertificate {
        let (n, k) = (self.n(), self.k());
        let mut cols = (2 * k).clamp(1, n.max(1));
        loop {
            let m = Matrix::from_columns(k, (0..cols).map(|i| self.column(i)));
            let rank = m.rank(self.field());
            if rank == k || cols >= n {
                return RankCertificate {
                    rank,
                    columns: cols,
                };
            }
            cols = (2 * cols).min(n);
        }
    }

    /// One-line summary `[n, k, >=d; r_1, ..., r_t]`.
    pub fn param_row(&self) -> String {
        let rs: Vec<String> = self.r_list().iter().map(ToString::to_string).collect();
        format!(
            "[{}, {}, \u{2265}{}; {}]",
            self.n(),
            self.k(),
            self.designed_distance(),
            rs.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_parse_and_display() {
        let m: Monomial = "x^2*y^3*z".parse().unwrap();
        assert_eq!(m, Monomial::new(2, 3, 1));
        assert_eq!(m.to_string(), "x^2*y^3*z");
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::ONE);
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert!("w^2".parse::<Monomial>().is_err());
        assert!("x^".parse::<Monomial>().is_err());
    }

    #[test]
    fn grid_basis_smallest_case() {
        let b = MonomialBasis::grid(1, 0, Coord::Y, 1);
        assert_eq!(b.monomials(), &[Monomial::ONE, Monomial::new(0, 1, 0)]);
    }

    #[test]
    fn grid_basis_with_step() {
        let b = MonomialBasis::grid(6, 1, Coord::Y, 4);
        assert_eq!(b.len(), 14);
        assert!(b
            .monomials()
            .iter()
            .all(|m| m.x <= 1 && m.y % 4 == 0 && m.y <= 24));
        let poles = PoleOrders {
            x: 28,
            y: 3,
            z: None,
        };
        assert_eq!(b.delta(&poles).unwrap(), 3 * 4 * 6 + 28);
    }

    #[test]
    fn suzuki_basis() {
        let b = MonomialBasis::suzuki(8, 2);
        assert_eq!(
            b.monomials(),
            &[
                Monomial::new(0, 7, 0),
                Monomial::new(1, 7, 0),
                Monomial::new(2, 7, 0)
            ]
        );
    }

    #[test]
    fn fibred_basis_rejects_duplicates() {
        let inv = [Monomial::ONE, Monomial::new(0, 1, 0)];
        assert!(MonomialBasis::fibred(&inv, CoordFn::coord(Coord::Y), 1).is_err());
        let inv = [Monomial::ONE, Monomial::new(1, 0, 0)];
        let b = MonomialBasis::fibred(&inv, CoordFn::coord(Coord::Y), 1).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn z_monomial_on_plane_curve_is_rejected() {
        let poles = PoleOrders {
            x: 3,
            y: 2,
            z: None,
        };
        assert!(Monomial::new(0, 0, 1).pole_order(&poles).is_err());
    }
}

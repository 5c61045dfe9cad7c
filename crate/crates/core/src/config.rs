//! TOML construction configs.
//!
//! ```toml
//! [field]
//! p = 3
//! m = 6
//!
//! [curve]
//! family = "kummer-additive"
//! beta = 28
//! a = "x^3 + x"
//!
//! [groups]
//! construction = "intersecting"
//! u = 4
//! v = 28
//!
//! [code]
//! t1 = 6
//! t2 = 1
//! ```

use serde::{Deserialize, Serialize};

use crate::code::{LrcCode, Monomial};
use crate::construct::{construct, Construction};
use crate::curve::{Coord, CurveFamily, CurveModel};
use crate::error::{Budget, Error, Result};
use crate::field::{Element, Field};
use crate::group::{Automorphism, CoordFn};
use crate::poly::Poly;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSection>,
    pub curve: CurveSection,
    pub groups: GroupsSection,
    #[serde(default)]
    pub code: CodeSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetSection>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u32,
    pub m: u32,
}

/// `family` is one of `kummer-additive` (beta, a), `kummer-fermat`
/// (alpha, beta), `general-plane` (f, a), `suzuki` (q) or `gk` (q).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

/// `construction` is a [`Construction`] tag. Generators are written
/// `translate-x:<c>`, `scale-y:<c>` or `affine:<sx>,<bx>,<sy>,<by>[,<sz>,<bz>]`
/// with field elements given by their encodings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsSection {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_fn: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_list: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_enum: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_group: Option<usize>,
}

fn need<T: Copy>(v: Option<T>, section: &str, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::invalid(format!("[{section}] {key} is required")))
}

fn need_ref<'a, T>(v: &'a Option<T>, section: &str, key: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::invalid(format!("[{section}] {key} is required")))
}

impl ConstructionConfig {
    pub fn from_toml(text: &str) -> Result<ConstructionConfig> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {}", e.message())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Defaults, then the `[budgets]` section, then environment overrides.
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(s) = &self.budgets {
            b.max_q = s.max_q.unwrap_or(b.max_q);
            b.max_enum = s.max_enum.unwrap_or(b.max_enum);
            b.max_group = s.max_group.unwrap_or(b.max_group);
        }
        b.with_env()
    }

    fn field(&self, budget: &Budget) -> Result<Field> {
        let s = need_ref(&self.field, "field", "p and m")?;
        Field::with_budget(s.p, s.m, budget)
    }

    pub fn model(&self, budget: &Budget) -> Result<CurveModel> {
        let c = &self.curve;
        let model = match c.family.as_str() {
            "kummer-additive" => {
                let f = self.field(budget)?;
                let a = Poly::parse(need_ref(&c.a, "curve", "a")?, &f)?;
                CurveModel::new(
                    f,
                    CurveFamily::KummerAdditive {
                        beta: need(c.beta, "curve", "beta")?,
                        a,
                    },
                )?
            }
            "kummer-fermat" => {
                let f = self.field(budget)?;
                CurveModel::new(
                    f,
                    CurveFamily::KummerFermat {
                        alpha: need(c.alpha, "curve", "alpha")?,
                        beta: need(c.beta, "curve", "beta")?,
                    },
                )?
            }
            "general-plane" => {
                let f = self.field(budget)?;
                let fy = Poly::parse(need_ref(&c.f, "curve", "f")?, &f)?;
                let a = Poly::parse(need_ref(&c.a, "curve", "a")?, &f)?;
                CurveModel::new(f, CurveFamily::GeneralPlane { f: fy, a })?
            }
            "suzuki" => CurveModel::suzuki(need(c.q, "curve", "q")?, budget)?,
            "gk" => CurveModel::gk(need(c.q, "curve", "q")?, budget)?,
            other => return Err(Error::invalid(format!("unknown curve family `{other}`"))),
        };
        if let (Some(s), "suzuki" | "gk") = (&self.field, c.family.as_str()) {
            let f = model.field();
            if (s.p, s.m) != (f.characteristic(), f.degree()) {
                return Err(Error::invalid(format!(
                    "[field] GF({}^{}) does not match the {} curve's GF({}^{})",
                    s.p,
                    s.m,
                    c.family,
                    f.characteristic(),
                    f.degree()
                )));
            }
        }
        Ok(model)
    }

    pub fn construction(&self, model: &CurveModel) -> Result<Construction> {
        let g = &self.groups;
        let f = model.field();
        let t1 = || need(self.code.t1, "code", "t1");
        let t2 = || need(self.code.t2, "code", "t2");
        let gens = |v: &Option<Vec<String>>, key: &str| -> Result<Vec<Automorphism>> {
            need_ref(v, "groups", key)?
                .iter()
                .map(|s| parse_generator(s, f))
                .collect()
        };
        Ok(match g.construction.as_str() {
            "two-subgroup" => Construction::TwoSubgroup {
                h1: gens(&g.h1, "h1")?,
                h2: gens(&g.h2, "h2")?,
                t1: t1()?,
                t2: t2()?,
            },
            "additive-split" => Construction::AdditiveSplit {
                t1: t1()?,
                t2: t2()?,
            },
            "maximal-kummer" => Construction::MaximalKummer {
                t1: t1()?,
                t2: t2()?,
            },
            "fermat" => Construction::Fermat {
                t1: t1()?,
                t2: t2()?,
            },
            "partial-scaling" => Construction::PartialScaling {
                u: need(g.u, "groups", "u")?,
                t1: t1()?,
                t2: t2()?,
            },
            "intersecting" => Construction::Intersecting {
                u: need(g.u, "groups", "u")?,
                v: need(g.v, "groups", "v")?,
                t1: t1()?,
                t2: t2()?,
            },
            "three-subgroup" => Construction::ThreeSubgroup {
                r: need(g.r, "groups", "r")?,
                s: need(g.s, "groups", "s")?,
                t1: t1()?,
                t2: t2()?,
            },
            "suzuki" => {
                if self.code.t2.is_some() {
                    return Err(Error::invalid("suzuki construction takes t1 only"));
                }
                Construction::Suzuki { t1: t1()? }
            }
            "general" => Construction::General {
                generators: gens(&g.generators, "generators")?,
                z_fn: need_ref(&g.z_fn, "groups", "z_fn")?.parse::<CoordFn>()?,
                invariants: need_ref(&g.f_list, "groups", "f_list")?
                    .iter()
                    .map(|s| s.parse::<Monomial>())
                    .collect::<Result<_>>()?,
                m: need(g.m, "groups", "m")?,
            },
            other => return Err(Error::invalid(format!("unknown construction `{other}`"))),
        })
    }

    /// Model and code for this config under its budget.
    pub fn build(&self) -> Result<(CurveModel, LrcCode)> {
        let budget = self.budget();
        let model = self.model(&budget)?;
        let c = self.construction(&model)?;
        let code = construct(&model, &c, &budget)?;
        Ok((model, code))
    }
}

/// Parses `translate-<coord>:<c>`, `scale-<coord>:<c>` or
/// `affine:<sx>,<bx>,<sy>,<by>[,<sz>,<bz>]`.
pub fn parse_generator(text: &str, f: &Field) -> Result<Automorphism> {
    let bad = |why: &str| Error::invalid(format!("generator `{text}`: {why}"));
    let (kind, args) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| bad("missing `:`"))?;
    let elems: Vec<Element> = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<u32>()
                .map_err(|_| bad("arguments must be element encodings"))
                .and_then(|v| f.element(v))
        })
        .collect::<Result<_>>()?;
    let one = |e: &[Element]| -> Result<Element> {
        match e {
            [v] => Ok(*v),
            _ => Err(bad("expected one argument")),
        }
    };
    if let Some(c) = kind.strip_prefix("translate-") {
        return Ok(Automorphism::translation(c.parse::<Coord>()?, one(&elems)?));
    }
    if let Some(c) = kind.strip_prefix("scale-") {
        return Automorphism::scaling(c.parse::<Coord>()?, one(&elems)?);
    }
    if kind == "affine" {
        if elems.len() != 4 && elems.len() != 6 {
            return Err(bad("affine takes 4 or 6 arguments"));
        }
        let mut a = Automorphism::identity();
        for (c, pair) in [Coord::X, Coord::Y, Coord::Z].iter().zip(elems.chunks(2)) {
            a = a.with(*c, pair[0], pair[1])?;
        }
        return Ok(a);
    }
    Err(bad("unknown kind; use translate-, scale- or affine"))
}

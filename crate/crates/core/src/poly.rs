//! Sparse univariate polynomials with coefficients in a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Element, Field};

/// Terms are kept sorted by descending exponent with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(u64, Element)>,
}

impl Poly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs. Coefficients
    /// of equal exponents are summed.
    pub fn new(field: &Field, terms: impl IntoIterator<Item = (u64, Element)>) -> Poly {
        let mut acc: std::collections::BTreeMap<u64, Element> = Default::default();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert(Element::ZERO);
            *slot = field.add(*slot, c);
        }
        Poly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `x^e`
    pub fn monomial(e: u64) -> Poly {
        Poly {
            terms: vec![(e, Element::ONE)],
        }
    }

    pub fn terms(&self) -> &[(u64, Element)] {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: u64) -> Element {
        self.terms
            .iter()
            .find(|t| t.0 == e)
            .map_or(Element::ZERO, |t| t.1)
    }

    pub fn eval(&self, field: &Field, x: Element) -> Element {
        self.terms.iter().fold(Element::ZERO, |acc, &(e, c)| {
            field.add(acc, field.mul(c, field.pow(x, e)))
        })
    }

    /// Every exponent is a power of `p` (including `p^0 = 1`).
    pub fn is_additive(&self, p: u32) -> bool {
        !self.is_zero() && self.terms.iter().all(|&(e, _)| is_power_of(e, p as u64))
    }

    /// Parses text such as `x^64 + x`, `2*x^3 - x + 1` or `y^9 - y`.
    ///
    /// Any single variable letter is accepted. Integer coefficients are field
    /// element encodings; a leading `-` negates the term in the field.
    pub fn parse(text: &str, field: &Field) -> Result<Poly> {
        let bad = |why: &str| Error::invalid(format!("cannot parse polynomial `{text}`: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);
        for chunk in chunks {
            let (negate, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, chunk.strip_prefix('+').unwrap_or(chunk)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coeff_txt, var_txt) = match body.find(|c: char| c.is_ascii_alphabetic()) {
                Some(pos) => (&body[..pos], Some(&body[pos..])),
                None => (body, None),
            };
            let coeff = match coeff_txt.trim_end_matches('*') {
                "" => Element::ONE,
                s => {
                    let v: u32 = s.parse().map_err(|_| bad("bad coefficient"))?;
                    field.element(v)?
                }
            };
            let exp = match var_txt {
                None => 0,
                Some(v) => {
                    let mut it = v.chars();
                    it.next();
                    let rest = it.as_str();
                    if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| bad("expected `^` after variable"))?
                            .parse()
                            .map_err(|_| bad("bad exponent"))?
                    }
                }
            };
            let c = if negate { field.neg(coeff) } else { coeff };
            terms.push((exp, c));
        }
        Ok(Poly::new(field, terms))
    }

    /// Renders with variable `var`; inverse of [`Poly::parse`] up to spacing.
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let coeff = if c == Element::ONE && e > 0 {
                    String::new()
                } else if e > 0 {
                    format!("{c}*")
                } else {
                    format!("{c}")
                };
                match e {
                    0 => coeff,
                    1 => format!("{coeff}{var}"),
                    _ => format!("{coeff}{var}^{e}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

pub(crate) fn is_power_of(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored as their canonical integer encoding: the residue
//! polynomial `c_0 + c_1 X + ... + c_{m-1} X^{m-1}` is the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The modulus is always the
//! lexicographically smallest monic irreducible polynomial of degree `m`
//! (coefficients compared from the constant term upwards), so the encoding
//! of every element is reproducible without external tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::poly::Poly;

/// A field element, identified by its canonical encoding in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// Unchecked; callers guarantee `v < q`.
    pub(crate) const fn from_raw(v: u32) -> Element {
        Element(v)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Fields up to this size get full add/mul lookup tables.
const TABLE_LIMIT: u32 = 1024;

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    // bit mask of the modulus, only meaningful for p = 2
    mod_bits: u64,
    order_factors: Vec<u64>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    // discrete log/exp tables over a primitive element, for larger fields
    log_table: Option<Vec<u32>>,
    exp_table: Option<Vec<u32>>,
}

/// The finite field GF(p^m). Cheap to clone; all state is shared and immutable.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.m == other.inner.m
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// GF(p^m) under the default size budget.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Self::with_budget(p, m, &Budget::default())
    }

    pub fn with_budget(p: u32, m: u32, budget: &Budget) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > budget.max_q as u128 || q > u32::MAX as u128 {
            return Err(Error::Budget {
                what: "field size",
                needed: q,
                limit: budget.max_q as u128,
            });
        }
        let q = q as u32;
        let modulus = smallest_irreducible(p, m);
        let pow_p = (0..=m).map(|i| p.pow(i)).collect();
        let mod_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let order_factors = prime_factors((q - 1) as u64);
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            pow_p,
            mod_bits,
            order_factors,
            add_table: None,
            mul_table: None,
            log_table: None,
            exp_table: None,
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = inner.add_slow(a, b);
                    mul[a as usize * n + b as usize] = inner.mul_slow(a, b);
                }
            }
            inner.add_table = Some(add);
            inner.mul_table = Some(mul);
        } else {
            let (log, exp) = inner.log_tables();
            inner.log_table = Some(log);
            inner.exp_table = Some(exp);
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements.
    #[inline]
    pub fn size(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn element(&self, value: u32) -> Result<Element> {
        if value < self.inner.q {
            Ok(Element(value))
        } else {
            Err(Error::invalid(format!(
                "{value} is not an element encoding of GF({})",
                self.inner.q
            )))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Element {
        Element(v.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.inner.q).map(Element)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> {
        (1..self.inner.q).map(Element)
    }

    /// Base-p digits of an element, constant term first.
    pub fn decode(&self, a: Element) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u32]) -> Result<Element> {
        if digits.len() != self.inner.m as usize || digits.iter().any(|&d| d >= self.inner.p) {
            return Err(Error::invalid(
                "digit vector does not describe a field element",
            ));
        }
        Ok(Element(
            digits
                .iter()
                .zip(&self.inner.pow_p)
                .map(|(&d, &w)| d * w)
                .sum(),
        ))
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let inner = &*self.inner;
        if inner.p == 2 {
            return Element(a.0 ^ b.0);
        }
        match &inner.add_table {
            Some(t) => Element(t[a.0 as usize * inner.q as usize + b.0 as usize]),
            None => Element(inner.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a;
        }
        let p = inner.p;
        let mut v = a.0;
        let mut out = 0;
        for w in &inner.pow_p[..inner.m as usize] {
            let d = v % p;
            v /= p;
            out += ((p - d) % p) * w;
        }
        Element(out)
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let inner = &*self.inner;
        if let Some(t) = &inner.mul_table {
            return Element(t[a.0 as usize * inner.q as usize + b.0 as usize]);
        }
        match (&inner.log_table, &inner.exp_table) {
            (Some(log), Some(exp)) => {
                if a.0 == 0 || b.0 == 0 {
                    Element(0)
                } else {
                    Element(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
                }
            }
            _ => Element(inner.mul_slow(a.0, b.0)),
        }
    }

    pub fn pow(&self, a: Element, mut e: u64) -> Element {
        let mut base = a;
        let mut acc = Element::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.inner.q as u64 - 2))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn multiplicative_order(&self, a: Element) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::invalid("zero has no multiplicative order"));
        }
        let mut order = self.inner.q as u64 - 1;
        for &f in &self.inner.order_factors {
            while order.is_multiple_of(f) && self.pow(a, order / f) == Element::ONE {
                order /= f;
            }
        }
        Ok(order)
    }

    /// The smallest-encoded element of exact multiplicative order `n`.
    pub fn element_of_order(&self, n: u64) -> Result<Element> {
        let group = self.inner.q as u64 - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::hypothesis(format!(
                "no element of order {n}: {n} does not divide q-1 = {group}"
            )));
        }
        for a in self.nonzero_elements() {
            // a^n = 1 is a cheap prefilter before the exact order check
            if self.pow(a, n) == Element::ONE && self.multiplicative_order(a)? == n {
                return Ok(a);
            }
        }
        unreachable!("cyclic group of order {group} has an element of order {n}")
    }

    /// All roots in the field of a separable additive polynomial, sorted by encoding.
    pub fn additive_roots(&self, a: &Poly) -> Result<Vec<Element>> {
        if !a.is_additive(self.inner.p) {
            return Err(Error::invalid(format!(
                "{a} is not additive (exponents must be powers of {})",
                self.inner.p
            )));
        }
        if a.coeff(1).is_zero() {
            return Err(Error::invalid(format!(
                "{a} is not separable (zero linear coefficient)"
            )));
        }
        Ok(self.roots(a))
    }

    /// Roots of an arbitrary polynomial by exhaustive scan.
    pub fn roots(&self, a: &Poly) -> Vec<Element> {
        self.elements()
            .filter(|&x| a.eval(self, x).is_zero())
            .collect()
    }
}

impl Inner {
    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `(log, exp)` for the smallest-encoded primitive element; `exp` has
    /// length `2(q-1)` so that sums of two logs index it directly.
    fn log_tables(&self) -> (Vec<u32>, Vec<u32>) {
        let order = self.q as u64 - 1;
        let g = (2..self.q)
            .find(|&c| {
                self.order_factors
                    .iter()
                    .all(|&f| self.pow_slow(c, order / f) != 1)
            })
            .expect("multiplicative group is cyclic");
        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut v = 1u32;
        for i in 0..n {
            exp[i] = v;
            exp[i + n] = v;
            log[v as usize] = i as u32;
            v = self.mul_slow(v, g);
        }
        (log, exp)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        for w in &self.pow_p[..self.m as usize] {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        if self.p == 2 {
            let (a, b) = (a as u64, b as u64);
            let mut prod = 0u64;
            for i in 0..m {
                if (b >> i) & 1 == 1 {
                    prod ^= a << i;
                }
            }
            for k in (m..2 * m).rev() {
                if (prod >> k) & 1 == 1 {
                    prod ^= self.mod_bits << (k - m);
                }
            }
            return prod as u32;
        }
        let p = self.p as u64;
        let da = digits(a, self.p, m);
        let db = digits(b, self.p, m);
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &mc) in self.modulus.iter().enumerate() {
                    let idx = k - m + i;
                    prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
                }
            }
        }
        prod[..m]
            .iter()
            .zip(&self.pow_p)
            .map(|(&d, &w)| d as u32 * w)
            .sum()
    }
}

fn digits(mut v: u32, p: u32, m: usize) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d as u64
        })
        .collect()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.
type PrimePoly = Vec<u64>;

fn trim(mut a: PrimePoly) -> PrimePoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> PrimePoly {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    let lead_inv = mod_pow(f[df], p - 2, p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &fc) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = (r[idx] + (p - c) * fc) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> PrimePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> PrimePoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Ben-Or test: monic `f` of degree m is irreducible iff
/// gcd(f, X^(p^i) - X) = 1 for all 1 <= i <= m/2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x: PrimePoly = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=m / 2 {
        // power <- power^p mod f
        let mut acc: PrimePoly = vec![1];
        let mut base = power.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        power = acc;
        let mut diff = power.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &trim(diff), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m, comparing the
/// constant coefficient first.
pub(crate) fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let (p64, m) = (p as u64, m as usize);
    let total = p64.pow(m as u32);
    for idx in 0..total {
        // c_0 is the most significant digit of idx
        let mut coeffs = vec![0u64; m + 1];
        let mut v = idx;
        for i in (0..m).rev() {
            coeffs[i] = v % p64;
            v /= p64;
        }
        coeffs[m] = 1;
        if is_irreducible(&coeffs, p64) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

//! Singleton-type bounds for codes with locality and availability, the
//! relative defect, and an exhaustive minimum distance.

use std::fmt;

use num_rational::Ratio;

use crate::code::LrcCode;
use crate::error::{Budget, Error, Result};
use crate::field::Element;
use crate::recovery::for_each_codeword;

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// `n - k - ceil(k/r) + 2`
pub fn bound_singleton_lrc(n: i64, k: i64, r: i64) -> i64 {
    n - k - ceil_div(k, r) + 2
}

/// `n - sum floor((k-1)/r_i)`
pub fn bound_tamo_barg(n: i64, k: i64, rs: &[i64]) -> i64 {
    n - rs.iter().map(|&r| (k - 1).div_euclid(r)).sum::<i64>()
}

/// `n - k - ceil(((k-1)t + 1) / (1 + sum r_i)) + 2`
pub fn bound_generalized(n: i64, k: i64, t: i64, rs: &[i64]) -> i64 {
    n - k - ceil_div((k - 1) * t + 1, 1 + rs.iter().sum::<i64>()) + 2
}

/// `[n, k, d; r_1, ..., r_t]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRow {
    pub n: i64,
    pub k: i64,
    pub d: i64,
    pub r_list: Vec<i64>,
}

impl ParamRow {
    pub fn new(n: i64, k: i64, d: i64, r_list: Vec<i64>) -> Result<ParamRow> {
        if !(1 <= k && k <= n) {
            return Err(Error::invalid(format!(
                "need 1 \u{2264} k \u{2264} n, got k = {k}, n = {n}"
            )));
        }
        if !(1 <= d && d <= n) {
            return Err(Error::invalid(format!(
                "need 1 \u{2264} d \u{2264} n, got d = {d}"
            )));
        }
        if r_list.is_empty() || r_list.iter().any(|&r| r < 1) {
            return Err(Error::invalid(
                "need at least one recovery size, each \u{2265} 1",
            ));
        }
        Ok(ParamRow { n, k, d, r_list })
    }

    pub fn t(&self) -> i64 {
        self.r_list.len() as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Defect {
    pub exact: Ratio<i64>,
    pub decimal: f64,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.5}", self.decimal)
    }
}

/// `(n - k - d + 2 - ceil(((k-1)t+1)/(1+sum r_i))) / n`: the gap between
/// `d` and the generalized bound, relative to `n`.
pub fn relative_defect(row: &ParamRow) -> Defect {
    let gap = bound_generalized(row.n, row.k, row.t(), &row.r_list) - row.d;
    let exact = Ratio::new(gap, row.n);
    Defect {
        exact,
        decimal: *exact.numer() as f64 / *exact.denom() as f64,
    }
}

/// Minimum Hamming weight over the nonzero codewords.
///
/// Only messages whose last nonzero entry is 1 are visited, which covers
/// every codeword up to a scalar multiple.
pub fn exact_min_distance(code: &LrcCode, budget: &Budget) -> Result<u64> {
    let f = code.field();
    let k = code.k();
    budget.check_enum("minimum distance sweep", f.size() as u64, k)?;
    let cols: Vec<Vec<Element>> = (0..code.n()).map(|i| code.column(i)).collect();
    let mut best = code.n() as u64;
    for top in 0..k {
        let lead: Vec<Element> = cols.iter().map(|c| c[top]).collect();
        let lower: Vec<Vec<Element>> = cols.iter().map(|c| c[..top].to_vec()).collect();
        for_each_codeword(f, &lower, |partial| {
            let w = lead
                .iter()
                .zip(partial)
                .filter(|(&a, &b)| !f.add(a, b).is_zero())
                .count() as u64;
            best = best.min(w);
            true
        });
    }
    Ok(best)
}

/// One report line for a constructed code.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub tag: String,
    pub n: u64,
    pub k: u64,
    pub designed: u64,
    pub exact: Option<u64>,
    pub r_list: Vec<u64>,
    pub availability: u64,
    pub eq1: i64,
    pub eq2: i64,
    pub eq3: i64,
    pub defect: Defect,
}

impl ReportRow {
    /// The single-recovery bound uses the smallest recovery set size, which
    /// is the locality every coordinate achieves. The defect is taken at the
    /// exact distance when known, else at the designed distance.
    pub fn new(code: &LrcCode, exact: Option<u64>) -> ReportRow {
        let (n, k) = (code.n() as i64, code.k() as i64);
        let rs: Vec<i64> = code.r_list().iter().map(|&r| r as i64).collect();
        let r_min = *rs.iter().min().expect("at least one recovery subgroup");
        let d = exact.unwrap_or(code.designed_distance()) as i64;
        let row = ParamRow {
            n,
            k,
            d,
            r_list: rs.clone(),
        };
        ReportRow {
            tag: code.tag().to_string(),
            n: n as u64,
            k: k as u64,
            designed: code.designed_distance(),
            exact,
            r_list: rs.iter().map(|&r| r as u64).collect(),
            availability: code.availability() as u64,
            eq1: bound_singleton_lrc(n, k, r_min),
            eq2: bound_tamo_barg(n, k, &rs),
            eq3: bound_generalized(n, k, rs.len() as i64, &rs),
            defect: relative_defect(&row),
        }
    }

    pub const HEADER: &'static str =
        "family\tn\tk\td_designed\td_exact\tr_list\tavailability\tsingleton_lrc\ttamo_barg\tgeneralized\tdefect";
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.r_list.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t[{}]\t{}\t{}\t{}\t{}\t{}",
            self.tag,
            self.n,
            self.k,
            self.designed,
            self.exact.map_or("-".to_string(), |d| d.to_string()),
            rs.join(","),
            self.availability,
            self.eq1,
            self.eq2,
            self.eq3,
            self.defect
        )
    }
}

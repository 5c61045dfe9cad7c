//! Recovery sets from subgroup orbits, Lagrange repair, and an exhaustive
//! check of the recovery property.

use std::collections::{BTreeMap, HashMap};

use crate::code::LrcCode;
use crate::error::{Budget, Error, Result};
use crate::field::{Element, Field};

/// Helper coordinates that determine coordinate `i`, repaired through the
/// locality entry `source` of the code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverySet {
    pub source: usize,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryPlan {
    pub coordinate: usize,
    pub sets: Vec<RecoverySet>,
}

impl RecoveryPlan {
    /// All helper indices of all sets.
    pub fn helpers(&self) -> impl Iterator<Item = usize> + '_ {
        self.sets.iter().flat_map(|s| s.indices.iter().copied())
    }
}

/// Disjoint recovery sets for coordinate `i`.
///
/// For each recovery subgroup `H`, the points of `H·P \ {P}` are grouped by
/// the value of the interpolation variable. Each set takes the
/// smallest-index point from each of the `set_size` largest remaining
/// groups, so that the variable is distinct within every set. Points where
/// the weight vanishes cannot serve as helpers and are skipped.
pub fn recovery_plan(code: &LrcCode, i: usize) -> Result<RecoveryPlan> {
    if i >= code.n() {
        return Err(Error::invalid(format!(
            "coordinate {i} out of range (n = {})",
            code.n()
        )));
    }
    let f = code.field();
    let points = code.points();
    let me = code.coordinate_order()[i];
    let mut sets = Vec::new();
    for (source, entry) in code.locality().iter().enumerate() {
        let orbit = entry.subgroup.orbit_of(f, points, me)?;
        let mut classes: BTreeMap<Element, Vec<usize>> = BTreeMap::new();
        for &pt in &orbit {
            if pt == me {
                continue;
            }
            let p = points.get(pt);
            if entry.weight.is_some_and(|w| w.eval(f, p).is_zero()) {
                continue;
            }
            let pos = code
                .position_of(pt)
                .ok_or_else(|| Error::invalid(format!("orbit point {pt} is not a coordinate")))?;
            classes.entry(entry.var.eval(f, p)).or_default().push(pos);
        }
        let mut classes: Vec<std::collections::VecDeque<usize>> = classes
            .into_values()
            .map(|mut v| {
                v.sort_unstable();
                v.into()
            })
            .collect();
        let cap = entry.max_sets.unwrap_or(usize::MAX);
        let mut made = 0;
        while made < cap {
            classes.retain(|c| !c.is_empty());
            if classes.len() < entry.set_size {
                break;
            }
            classes.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
            let mut indices: Vec<usize> = classes[..entry.set_size]
                .iter_mut()
                .map(|c| c.pop_front().expect("nonempty class"))
                .collect();
            indices.sort_unstable();
            sets.push(RecoverySet { source, indices });
            made += 1;
        }
    }
    Ok(RecoveryPlan {
        coordinate: i,
        sets,
    })
}

/// Recovers symbol `i` from the helper symbols `values` (aligned with
/// `set.indices`).
pub fn lagrange_recover(
    code: &LrcCode,
    i: usize,
    set: &RecoverySet,
    values: &[Element],
) -> Result<Element> {
    let f = code.field();
    let entry = &code.locality()[set.source];
    if values.len() != set.indices.len() {
        return Err(Error::invalid("one value per helper is required"));
    }
    let target = code.coordinate_point(i);
    let mut nodes = Vec::with_capacity(values.len());
    for (&j, &v) in set.indices.iter().zip(values) {
        let p = code.coordinate_point(j);
        let v = match entry.weight {
            Some(w) => f
                .div(v, w.eval(f, p))
                .map_err(|_| Error::invalid(format!("helper {j} has zero weight {w}")))?,
            None => v,
        };
        nodes.push((entry.var.eval(f, p), v));
    }
    let at = entry.var.eval(f, target);
    let value = interpolate(f, &nodes, at)?;
    Ok(match entry.weight {
        Some(w) => f.mul(value, w.eval(f, target)),
        None => value,
    })
}

/// Value at `at` of the polynomial of degree `< nodes.len()` through `nodes`.
pub fn interpolate(f: &Field, nodes: &[(Element, Element)], at: Element) -> Result<Element> {
    let mut acc = Element::ZERO;
    for (k, &(wk, vk)) in nodes.iter().enumerate() {
        let mut num = Element::ONE;
        let mut den = Element::ONE;
        for (l, &(wl, _)) in nodes.iter().enumerate() {
            if l == k {
                continue;
            }
            if wl == wk {
                return Err(Error::invalid(format!(
                    "interpolation nodes repeat the value {wk}"
                )));
            }
            num = f.mul(num, f.sub(at, wl));
            den = f.mul(den, f.sub(wk, wl));
        }
        acc = f.add(acc, f.mul(vk, f.div(num, den)?));
    }
    Ok(acc)
}

/// Recovers symbol `i` of `word` through `set`; other entries of `word`
/// outside the set are ignored.
pub fn recover_from_word(
    code: &LrcCode,
    i: usize,
    set: &RecoverySet,
    word: &[Element],
) -> Result<Element> {
    let values: Vec<Element> = set.indices.iter().map(|&j| word[j]).collect();
    lagrange_recover(code, i, set, &values)
}

/// Whether `set` determines coordinate `i` for every codeword: no two
/// codewords agree on `set` but differ at `i`. Enumerates all `q^k`
/// codewords.
pub fn verify_recovery_set(
    code: &LrcCode,
    i: usize,
    set: &[usize],
    budget: &Budget,
) -> Result<bool> {
    if set.contains(&i) {
        return Err(Error::invalid(format!(
            "recovery set contains the coordinate {i} itself"
        )));
    }
    if set.is_empty() {
        return Err(Error::invalid("recovery set is empty"));
    }
    let f = code.field();
    let q = f.size() as u64;
    budget.check_enum("codeword enumeration", q, code.k())?;
    let mut cols: Vec<Vec<Element>> = set.iter().map(|&j| code.column(j)).collect();
    cols.push(code.column(i));
    let bits = 32 - (f.size() - 1).leading_zeros();
    let packable = bits as usize * set.len() <= 128;
    let mut packed: HashMap<u128, Element> = HashMap::new();
    let mut wide: HashMap<Vec<Element>, Element> = HashMap::new();
    let mut consistent = true;
    for_each_codeword(f, &cols, |proj| {
        let (key, target) = proj.split_at(set.len());
        let target = target[0];
        let prev = if packable {
            let k = key
                .iter()
                .fold(0u128, |acc, e| (acc << bits) | e.value() as u128);
            *packed.entry(k).or_insert(target)
        } else {
            *wide.entry(key.to_vec()).or_insert(target)
        };
        if prev != target {
            consistent = false;
        }
        consistent
    });
    Ok(consistent)
}

/// Calls `visit` with the projection of every codeword onto the given
/// columns (each of length `k`), stopping early when it returns false.
/// Digit 0 of the message varies fastest.
pub(crate) fn for_each_codeword(
    f: &Field,
    cols: &[Vec<Element>],
    mut visit: impl FnMut(&[Element]) -> bool,
) {
    let k = cols.first().map_or(0, Vec::len);
    let q = f.size();
    let width = cols.len();
    // partial[l] = sum over j >= l of m_j * G[j], restricted to `cols`
    let mut partial = vec![vec![Element::ZERO; width]; k + 1];
    let mut digits = vec![0u32; k];
    loop {
        if !visit(&partial[0]) {
            return;
        }
        let mut l = 0;
        while l < k && digits[l] + 1 == q {
            digits[l] = 0;
            l += 1;
        }
        if l == k {
            return;
        }
        digits[l] += 1;
        for level in (0..=l).rev() {
            let m = Element::from_raw(digits[level]);
            let (lower, upper) = partial.split_at_mut(level + 1);
            for (c, out) in lower[level].iter_mut().enumerate() {
                *out = f.add(upper[0][c], f.mul(m, cols[c][level]));
            }
        }
    }
}

/// Outcome of round-based repair of several erasures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairReport {
    /// `(coordinate, recovered value, round)` in recovery order.
    pub recovered: Vec<(usize, Element, usize)>,
    pub unrecoverable: Vec<usize>,
    pub rounds: usize,
}

/// Repairs erased symbols (`None`) in rounds: in each round, every erased
/// coordinate with a recovery set free of erasures is restored, and the
/// restored values become available in the next round.
pub fn repair(code: &LrcCode, word: &mut [Option<Element>]) -> Result<RepairReport> {
    let mut erased: Vec<usize> = (0..word.len()).filter(|&i| word[i].is_none()).collect();
    let mut plans = HashMap::new();
    for &i in &erased {
        plans.insert(i, recovery_plan(code, i)?);
    }
    let mut recovered = Vec::new();
    let mut rounds = 0;
    while !erased.is_empty() {
        let mut fixed = Vec::new();
        for &i in &erased {
            let plan = &plans[&i];
            if let Some(set) = plan
                .sets
                .iter()
                .find(|s| s.indices.iter().all(|&j| word[j].is_some()))
            {
                let values: Vec<Element> = set.indices.iter().map(|&j| word[j].unwrap()).collect();
                fixed.push((i, lagrange_recover(code, i, set, &values)?));
            }
        }
        if fixed.is_empty() {
            break;
        }
        rounds += 1;
        for &(i, v) in &fixed {
            word[i] = Some(v);
            recovered.push((i, v, rounds));
        }
        erased.retain(|&i| word[i].is_none());
    }
    Ok(RepairReport {
        recovered,
        unrecoverable: erased,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, Construction};
    use crate::curve::{CurveFamily, CurveModel};
    use crate::poly::Poly;

    fn hermitian4() -> LrcCode {
        let f = Field::new(2, 2).unwrap();
        let a = Poly::parse("x^2 + x", &f).unwrap();
        let model = CurveModel::new(f, CurveFamily::KummerAdditive { beta: 3, a }).unwrap();
        construct(
            &model,
            &Construction::MaximalKummer { t1: 1, t2: 0 },
            &Budget::default(),
        )
        .unwrap()
    }

    fn all_messages(f: &Field, k: usize) -> Vec<Vec<Element>> {
        let q = f.size();
        (0..q.pow(k as u32))
            .map(|mut v| {
                (0..k)
                    .map(|_| {
                        let d = v % q;
                        v /= q;
                        f.element(d).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn interpolation_examples() {
        let f = Field::new(5, 1).unwrap();
        let e = |v| f.element(v).unwrap();
        // constant
        assert_eq!(interpolate(&f, &[(e(3), e(4))], e(1)).unwrap(), e(4));
        // line through (1,2), (2,4) is 2w
        assert_eq!(
            interpolate(&f, &[(e(1), e(2)), (e(2), e(4))], e(3)).unwrap(),
            e(1)
        );
        assert!(interpolate(&f, &[(e(1), e(2)), (e(1), e(3))], e(0)).is_err());
    }

    #[test]
    fn hermitian_plan_has_two_sets_everywhere() {
        let code = hermitian4();
        for i in 0..code.n() {
            let plan = recovery_plan(&code, i).unwrap();
            assert_eq!(plan.sets.len(), 2);
            assert_eq!(plan.sets.len(), code.availability());
            let mut all: Vec<usize> = plan.helpers().collect();
            assert!(!all.contains(&i));
            let total = all.len();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), total, "sets overlap");
            for s in &plan.sets {
                assert_eq!(s.indices.len(), code.locality()[s.source].set_size);
            }
        }
    }

    #[test]
    fn hermitian_round_trip_for_all_codewords() {
        let code = hermitian4();
        for msg in all_messages(code.field(), code.k()) {
            let word = code.encode(&msg);
            for i in 0..code.n() {
                for set in &recovery_plan(&code, i).unwrap().sets {
                    assert_eq!(recover_from_word(&code, i, set, &word).unwrap(), word[i]);
                }
            }
        }
    }

    #[test]
    fn oracle_accepts_planned_sets_and_rejects_foreign_single() {
        let code = hermitian4();
        let b = Budget::default();
        let plan = recovery_plan(&code, 0).unwrap();
        for s in &plan.sets {
            assert!(verify_recovery_set(&code, 0, &s.indices, &b).unwrap());
        }
        // a single coordinate off the y-orbit with a different y value cannot determine a + b*y
        let y0 = code.coordinate_point(0).y;
        let other = (1..code.n())
            .find(|&j| code.coordinate_point(j).y != y0)
            .unwrap();
        assert!(!verify_recovery_set(&code, 0, &[other], &b).unwrap());
        assert!(verify_recovery_set(&code, 0, &[0], &b).is_err());
    }

    #[test]
    fn codeword_enumeration_visits_every_message() {
        let code = hermitian4();
        let f = code.field();
        let cols: Vec<Vec<Element>> = (0..code.n()).map(|j| code.column(j)).collect();
        let mut seen = Vec::new();
        for_each_codeword(f, &cols, |c| {
            seen.push(c.to_vec());
            true
        });
        let mut want: Vec<Vec<Element>> = all_messages(f, code.k())
            .iter()
            .map(|m| code.encode(m))
            .collect();
        seen.sort();
        want.sort();
        assert_eq!(seen, want);
    }

    #[test]
    fn oracle_respects_budget() {
        let code = hermitian4();
        let b = Budget {
            max_enum: 15,
            ..Budget::default()
        };
        assert!(matches!(
            verify_recovery_set(&code, 0, &[1], &b),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn peeling_repairs_in_rounds() {
        let code = hermitian4();
        let msg = vec![Element::ONE, code.field().element(2).unwrap()];
        let word = code.encode(&msg);
        let mut damaged: Vec<Option<Element>> = word.iter().copied().map(Some).collect();
        let plan = recovery_plan(&code, 0).unwrap();
        // erase the target and every helper of its first set
        damaged[0] = None;
        for &j in &plan.sets[0].indices {
            damaged[j] = None;
        }
        let report = repair(&code, &mut damaged).unwrap();
        assert!(report.unrecoverable.is_empty());
        let restored: Vec<Element> = damaged.iter().map(|v| v.unwrap()).collect();
        assert_eq!(restored, word);
    }

    #[test]
    fn peeling_reports_stuck_patterns() {
        let code = hermitian4();
        let mut all_erased = vec![None; code.n()];
        let report = repair(&code, &mut all_erased).unwrap();
        assert_eq!(report.unrecoverable.len(), code.n());
        assert_eq!(report.rounds, 0);
        let mut none_erased: Vec<Option<Element>> = code
            .encode(&[Element::ONE, Element::ZERO])
            .into_iter()
            .map(Some)
            .collect();
        let report = repair(&code, &mut none_erased).unwrap();
        assert!(report.recovered.is_empty() && report.unrecoverable.is_empty());
    }
}

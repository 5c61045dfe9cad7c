//! Library results checked against brute-force computations written here
//! from scratch.

use curve_lrc::{
    construct, exact_min_distance, orbit_decompose, recovery_plan, repair, verify_recovery_set,
    Budget, Construction, CurveFamily, CurveModel, Element, Field, LrcCode, Poly,
};
use proptest::prelude::*;

/// Product of two digit vectors reduced by the monic modulus, schoolbook.
fn naive_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (m..2 * m).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate() {
            let idx = d - m + k;
            prod[idx] = (prod[idx] + (p as u64 - c) * mk as u64) % p as u64;
        }
    }
    prod[..m].iter().map(|&v| v as u32).collect()
}

fn digits(p: u32, m: usize, mut v: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

const FIELDS: [(u32, u32); 6] = [(2, 2), (2, 4), (3, 2), (5, 2), (2, 6), (3, 3)];

#[test]
fn multiplication_matches_schoolbook_reduction() {
    for (p, m) in FIELDS {
        let f = Field::new(p, m).unwrap();
        let q = f.size();
        for a in 0..q {
            for b in 0..q {
                let want = undigits(
                    p,
                    &naive_mul(
                        p,
                        f.modulus(),
                        &digits(p, m as usize, a),
                        &digits(p, m as usize, b),
                    ),
                );
                let got = f.mul(f.element(a).unwrap(), f.element(b).unwrap()).value();
                assert_eq!(got, want, "GF({p}^{m}): {a} * {b}");
            }
        }
    }
}

#[test]
fn nonzero_elements_form_a_cyclic_group() {
    for (p, m) in FIELDS {
        let f = Field::new(p, m).unwrap();
        let q = f.size();
        let order = |g: u32| {
            let mut x = vec![1u32];
            x.resize(m as usize, 0);
            let gd = digits(p, m as usize, g);
            let one = x.clone();
            let mut k = 0u32;
            loop {
                x = naive_mul(p, f.modulus(), &x, &gd);
                k += 1;
                if x == one {
                    return k;
                }
            }
        };
        assert!(
            (1..q).any(|g| order(g) == q - 1),
            "GF({p}^{m}) has no generator"
        );
    }
}

fn kummer(p: u32, m: u32, beta: u64, a: &str) -> CurveModel {
    let f = Field::new(p, m).unwrap();
    let a = Poly::parse(a, &f).unwrap();
    CurveModel::new(f, CurveFamily::KummerAdditive { beta, a }).unwrap()
}

/// Counts pairs with `y^beta = a(x)` by direct evaluation.
fn brute_points(f: &Field, beta: u64, a: &[(u64, u32)]) -> usize {
    let mut count = 0;
    for x in f.elements() {
        let rhs = a.iter().fold(Element::ZERO, |acc, &(e, c)| {
            f.add(acc, f.mul(f.element(c).unwrap(), f.pow(x, e)))
        });
        count += f.elements().filter(|&y| f.pow(y, beta) == rhs).count();
    }
    count
}

#[test]
fn affine_point_counts_match_direct_search() {
    // (p, m, beta, a, terms of a as (exponent, coefficient))
    type Case<'a> = (u32, u32, u64, &'a str, &'a [(u64, u32)]);
    let cases: [Case; 5] = [
        (2, 2, 3, "x^2 + x", &[(2, 1), (1, 1)]),
        (3, 2, 4, "x^3 + x", &[(3, 1), (1, 1)]),
        (2, 4, 5, "x^4 + x", &[(4, 1), (1, 1)]),
        (2, 4, 3, "x^2 + x", &[(2, 1), (1, 1)]),
        (5, 2, 2, "x^5 + x", &[(5, 1), (1, 1)]),
    ];
    for (p, m, beta, text, terms) in cases {
        let model = kummer(p, m, beta, text);
        let pts = model.enumerate_affine_points(&Budget::default()).unwrap();
        assert_eq!(
            pts.len(),
            brute_points(model.field(), beta, terms),
            "y^{beta} = {text} over GF({p}^{m})"
        );
    }
}

#[test]
fn orbits_partition_points_and_divide_the_group_order() {
    let model = kummer(3, 2, 4, "x^3 + x");
    let code = construct(
        &model,
        &Construction::MaximalKummer { t1: 2, t2: 1 },
        &Budget::default(),
    )
    .unwrap();
    let f = code.field();
    let pts = code.points();
    for entry in code.locality() {
        let dec = orbit_decompose(f, &entry.subgroup, pts).unwrap();
        let mut seen = vec![false; pts.len()];
        for orbit in dec.orbits() {
            assert_eq!(entry.subgroup.order() % orbit.len(), 0);
            for &i in orbit {
                assert!(!seen[i], "point {i} in two orbits");
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}

/// Row-echelon rank.
fn rank(f: &Field, mut rows: Vec<Vec<Element>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let s = f.mul(row[c], inv);
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(s, pv));
                }
            }
        }
        r += 1;
    }
    r
}

fn determines_by_span(code: &LrcCode, i: usize, set: &[usize]) -> bool {
    let f = code.field();
    let cols = |s: &[usize]| s.iter().map(|&c| code.column(c)).collect::<Vec<_>>();
    let mut with = set.to_vec();
    with.push(i);
    rank(f, cols(set)) == rank(f, cols(&with))
}

fn hermitian9() -> LrcCode {
    construct(
        &kummer(3, 2, 4, "x^3 + x"),
        &Construction::MaximalKummer { t1: 2, t2: 1 },
        &Budget::default(),
    )
    .unwrap()
}

fn brute_distance(code: &LrcCode) -> u64 {
    let f = code.field();
    let q = f.size() as u64;
    let total = q.pow(code.k() as u32);
    (1..total)
        .map(|mut idx| {
            let msg: Vec<Element> = (0..code.k())
                .map(|_| {
                    let d = (idx % q) as u32;
                    idx /= q;
                    f.element(d).unwrap()
                })
                .collect();
            code.encode(&msg).iter().filter(|v| !v.is_zero()).count() as u64
        })
        .min()
        .unwrap()
}

#[test]
fn exact_distance_matches_brute_force_on_small_codes() {
    let codes = [
        construct(
            &kummer(2, 2, 3, "x^2 + x"),
            &Construction::MaximalKummer { t1: 1, t2: 0 },
            &Budget::default(),
        )
        .unwrap(),
        construct(
            &kummer(2, 4, 5, "x^4 + x"),
            &Construction::MaximalKummer { t1: 1, t2: 1 },
            &Budget::default(),
        )
        .unwrap(),
        construct(
            &kummer(3, 2, 4, "x^3 + x"),
            &Construction::MaximalKummer { t1: 1, t2: 1 },
            &Budget::default(),
        )
        .unwrap(),
    ];
    for code in &codes {
        let d = brute_distance(code);
        assert_eq!(
            exact_min_distance(code, &Budget::default()).unwrap(),
            d,
            "{}",
            code.param_row()
        );
        assert!(code.designed_distance() <= d, "{}", code.param_row());
    }
}

#[test]
fn planned_sets_pass_the_span_oracle() {
    let code = hermitian9();
    for i in 0..code.n() {
        for set in recovery_plan(&code, i).unwrap().sets {
            assert!(
                determines_by_span(&code, i, &set.indices),
                "coordinate {i} set {:?}",
                set.indices
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_oracle_agrees_with_span_oracle(i in 0usize..24, mask in 1u32..(1 << 24)) {
        let code = hermitian9();
        let set: Vec<usize> = (0..24).filter(|&j| j != i && mask >> j & 1 == 1).take(5).collect();
        prop_assume!(!set.is_empty());
        let by_enum = verify_recovery_set(&code, i, &set, &Budget::default()).unwrap();
        prop_assert_eq!(by_enum, determines_by_span(&code, i, &set));
    }

    #[test]
    fn encoding_is_linear(a in prop::collection::vec(0u32..9, 6), b in prop::collection::vec(0u32..9, 6)) {
        let code = hermitian9();
        let f = code.field();
        let ea: Vec<Element> = a.iter().map(|&v| f.element(v).unwrap()).collect();
        let eb: Vec<Element> = b.iter().map(|&v| f.element(v).unwrap()).collect();
        let sum: Vec<Element> = ea.iter().zip(&eb).map(|(&x, &y)| f.add(x, y)).collect();
        let lhs = code.encode(&sum);
        let rhs: Vec<Element> = code.encode(&ea).iter().zip(code.encode(&eb)).map(|(&x, y)| f.add(x, y)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn peeling_never_returns_a_wrong_value(msg in prop::collection::vec(0u32..9, 6), erased in prop::collection::btree_set(0usize..24, 0..10)) {
        let code = hermitian9();
        let f = code.field();
        let m: Vec<Element> = msg.iter().map(|&v| f.element(v).unwrap()).collect();
        let word = code.encode(&m);
        let mut damaged: Vec<Option<Element>> = word.iter().copied().map(Some).collect();
        for &i in &erased {
            damaged[i] = None;
        }
        let rep = repair(&code, &mut damaged).unwrap();
        for &(i, v, _) in &rep.recovered {
            prop_assert_eq!(v, word[i]);
        }
        prop_assert_eq!(rep.recovered.len() + rep.unrecoverable.len(), erased.len());
        if erased.len() == 1 {
            prop_assert!(rep.unrecoverable.is_empty());
        }
    }
}

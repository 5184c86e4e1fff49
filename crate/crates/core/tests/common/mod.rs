#![allow(dead_code)]

//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the enumeration or dimension code under test.

use std::collections::BTreeMap;

use gtz::ops::{b_shift_second, gl_shift_second, lowering_shift, DerivationOp, EulerOp, Sign};
use gtz::ring::{rank_of_span, rat, Monomial, Poly, VarId};
use gtz::systems::{Algebra, HighestWeight};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Weights of the acceptance sweep: o(5) with entries up to 3 and o(7) with
/// entries up to 2, both parities, listed by hand-rolled nested loops.
pub fn b_sweep() -> Vec<HighestWeight> {
    let mut out = Vec::new();
    for (n, max2) in [(2usize, 6i64), (3, 4)] {
        for parity in 0..2 {
            let vals: Vec<i64> = (0..=max2).filter(|v| v % 2 == parity).collect();
            let mut push = |e: Vec<i64>| out.push(HighestWeight::new(Algebra::B, e).unwrap());
            for &a in &vals {
                for &b in vals.iter().filter(|&&b| b <= a) {
                    if n == 2 {
                        push(vec![a, b]);
                        continue;
                    }
                    for &c in vals.iter().filter(|&&c| c <= b) {
                        push(vec![a, b, c]);
                    }
                }
            }
        }
    }
    out
}

/// Brute-force o(2n+1) patterns: every (middle, bottom) in a box, kept when
/// the betweenness inequalities hold; `sigma` doubles the count unless the
/// weight is integral and the last middle entry is zero. Returns the bottom
/// row of every pattern, one entry per (pattern, sigma).
pub fn brute_b_bottoms(weight2: &[i64]) -> Vec<Vec<i64>> {
    let n = weight2.len();
    let parity = weight2[0].rem_euclid(2);
    let floor = parity;
    let top = weight2[0];
    let values: Vec<i64> = (floor..=top).filter(|v| v % 2 == parity).collect();
    let rows = |len: usize| -> Vec<Vec<i64>> {
        let mut rows = vec![vec![]];
        for _ in 0..len {
            rows = rows
                .into_iter()
                .flat_map(|r: Vec<i64>| {
                    values.iter().map(move |&v| {
                        let mut r = r.clone();
                        r.push(v);
                        r
                    })
                })
                .collect();
        }
        rows
    };
    let mut out = Vec::new();
    for mid in rows(n) {
        let ok_mid = (0..n).all(|i| {
            let below = if i + 1 < n { weight2[i + 1] } else { floor };
            weight2[i] >= mid[i] && mid[i] >= below
        });
        if !ok_mid {
            continue;
        }
        for bot in rows(n - 1) {
            if (0..n - 1).all(|i| mid[i] >= bot[i] && bot[i] >= mid[i + 1]) {
                let copies = if parity == 0 && mid[n - 1] == 0 { 1 } else { 2 };
                for _ in 0..copies {
                    out.push(bot.clone());
                }
            }
        }
    }
    out.sort();
    out
}

/// Brute-force count of gl(3) patterns with top row (a, b, 0), doubled.
pub fn brute_gl3_count(a: i64, b: i64) -> usize {
    let mut count = 0;
    for m1 in (0..=a).step_by(2) {
        for m2 in (0..=a).step_by(2) {
            if !(a >= m1 && m1 >= b && b >= m2 && m2 >= 0) {
                continue;
            }
            for c in (0..=a).step_by(2) {
                if m1 >= c && c >= m2 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Dimension of the o(2k+1) module with doubled highest weight `w2`, from
/// the product over positive roots e_i - e_j, e_i + e_j, e_i written with
/// 2(lambda + rho) and 2 rho, numerator and denominator kept separately.
pub fn b_dimension(w2: &[i64]) -> u128 {
    let k = w2.len() as i64;
    let l: Vec<i128> = (0..k).map(|i| (w2[i as usize] + 2 * (k - i) - 1) as i128).collect();
    let r: Vec<i128> = (0..k).map(|i| (2 * (k - i) - 1) as i128).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..k as usize {
        num *= l[i];
        den *= r[i];
        for j in i + 1..k as usize {
            num *= (l[i] - l[j]) * (l[i] + l[j]);
            den *= (r[i] - r[j]) * (r[i] + r[j]);
        }
    }
    assert_eq!(num % den, 0, "non-integral dimension for {w2:?}");
    (num / den) as u128
}

// ---- random polynomials -------------------------------------------------

pub const POOL: [VarId; 5] = [
    VarId::z(-3, -1),
    VarId::z(-3, 1),
    VarId::z(-2, -1),
    VarId::z(-2, 1),
    VarId::z(0, 1),
];

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..POOL.len(), 0..=3).prop_map(|idx| {
        let mut exps: BTreeMap<VarId, u32> = BTreeMap::new();
        for i in idx {
            *exps.entry(POOL[i]).or_default() += 1;
        }
        Monomial::from_factors(exps)
    })
}

/// Polynomials of total degree at most 3 with small rational coefficients.
pub fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(), -6i64..=6, 1i64..=4), 0..5).prop_map(|terms| {
        let mut f = Poly::zero();
        for (m, num, den) in terms {
            f = f + Poly::term(rat(num, den), m);
        }
        f
    })
}

pub fn operators() -> Vec<DerivationOp> {
    vec![
        b_shift_second(Sign::Plus),
        b_shift_second(Sign::Minus),
        gl_shift_second(),
        lowering_shift(3),
        DerivationOp::partial(VarId::z(0, 1)),
    ]
}

// ---- properties ---------------------------------------------------------

pub fn prop_ring_axioms(f: &Poly, g: &Poly, h: &Poly) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&(f * g) * h), &(f * &(g * h)));
    prop_assert_eq!(&(f * g), &(g * f));
    prop_assert_eq!(&(f + g), &(g + f));
    prop_assert_eq!(&(f * &(g + h)), &(&(f * g) + &(f * h)));
    prop_assert!((&(f + g) - g) == *f);
    Ok(())
}

pub fn prop_substitution_homomorphism(f: &Poly, g: &Poly, a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    let mut s = BTreeMap::new();
    s.insert(VarId::z(-2, 1), a.clone());
    s.insert(VarId::z(0, 1), b.clone());
    prop_assert_eq!((f * g).substitute(&s), &f.substitute(&s) * &g.substitute(&s));
    prop_assert_eq!((f + g).substitute(&s), &f.substitute(&s) + &g.substitute(&s));
    Ok(())
}

pub fn prop_derivation(f: &Poly, g: &Poly) -> Result<(), TestCaseError> {
    for d in operators() {
        let lhs = d.apply(&(f * g));
        let rhs = &(&d.apply(f) * g) + &(f * &d.apply(g));
        prop_assert_eq!(lhs, rhs, "Leibniz rule for {}", d);
    }
    Ok(())
}

pub fn prop_power_composition(f: &Poly, a: u32, b: u32) -> Result<(), TestCaseError> {
    for d in operators() {
        let mut iterated = f.clone();
        for _ in 0..a + b {
            iterated = d.apply(&iterated);
        }
        prop_assert_eq!(&d.apply_power(a + b, f), &iterated);
        prop_assert_eq!(&d.apply_power(a, &d.apply_power(b, f)), &iterated);
    }
    Ok(())
}

/// [E, L] = c L with constants worked out by hand from the exponent shifts:
/// L(-2,-1) raises F(-2,-2) by 1 and lowers F(-1,-1) by 1; L(-3,-2) raises
/// F(-3,-3) by 1 and lowers F(-2,-2) by 1.
pub fn prop_euler_commutation(f: &Poly) -> Result<(), TestCaseError> {
    let cases = [
        (b_shift_second(Sign::Plus), EulerOp::b_diagonal(2, 3, 4), 1),
        (b_shift_second(Sign::Minus), EulerOp::b_diagonal(1, 3, 2), -1),
        (lowering_shift(3), EulerOp::b_diagonal(3, 3, 0), 1),
        (lowering_shift(3), EulerOp::b_diagonal(2, 3, 2), -1),
    ];
    for (l, e, c) in cases {
        let commutator = &e.apply(&l.apply(f)) - &l.apply(&e.apply(f));
        prop_assert_eq!(commutator, l.apply(f).scale(&rat(c, 1)), "[{}, {}]", e, l);
    }
    Ok(())
}

pub fn prop_rank_invariance(f: &Poly, g: &Poly, h: &Poly, c: i64) -> Result<(), TestCaseError> {
    let base = rank_of_span(&[f.clone(), g.clone(), h.clone()]);
    let c = rat(c, 3);
    let moved = vec![h.clone(), g + &f.scale(&c), f.scale(&rat(-5, 2))];
    prop_assert_eq!(base, rank_of_span(&moved));
    prop_assert!(base <= 3);
    let with_dup = rank_of_span(&[f.clone(), g.clone(), h.clone(), f + g]);
    prop_assert_eq!(base, with_dup);
    Ok(())
}

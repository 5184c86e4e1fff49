//! Exact joint kernel of an indicator system on a bounded-degree polynomial
//! space. This is the ground truth every claimed basis is checked against.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ops::{EulerOp, OpsError};
use crate::ring::{nullspace, Monomial, Poly, Rational, VarId};
use crate::systems::{IndicatorSystem, WeightError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("kernel of {weight} not stabilized: dimension {dim} at bound {bound:?}, {doubled_dim} at the doubled bound")]
    NotStabilized {
        weight: String,
        bound: DegreeBound,
        dim: usize,
        doubled_dim: usize,
    },
    #[error("degree bound {given:?} is below the default {default:?}")]
    BoundTooSmall { given: DegreeBound, default: DegreeBound },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Ops(#[from] OpsError),
}

/// Degree limits for the monomial search space: `last` bounds the degree
/// in `z[0,1]` (or `z[-1,1]`), `pair` bounds the combined degree in each
/// pair `z[-k,-1]`, `z[-k,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeBound {
    pub last: u32,
    pub pair: u32,
}

impl DegreeBound {
    pub fn default_for(system: &IndicatorSystem) -> Self {
        let r = system.r_vector();
        let r_last = *r.last().expect("r-vector is never empty");
        DegreeBound {
            last: r_last,
            pair: r.iter().sum(),
        }
    }

    pub fn doubled(self) -> Self {
        DegreeBound {
            last: 2 * self.last,
            pair: 2 * self.pair,
        }
    }

    /// Raises the pair bound to `pair` (never lowers anything).
    pub fn with_pair(self, pair: u32) -> Self {
        DegreeBound {
            last: self.last,
            pair,
        }
    }

    fn covers(self, other: DegreeBound) -> bool {
        self.last >= other.last && self.pair >= other.pair
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    /// Weight vectors, highest weight block first.
    pub basis: Vec<Poly>,
    /// Doubled Euler eigenvalues (i = n..1) of each basis vector.
    pub weights: Vec<Vec<i64>>,
    pub dimension: usize,
    pub grading: BTreeMap<Vec<i64>, usize>,
    pub bound_used: DegreeBound,
    pub stabilized: bool,
}

impl KernelResult {
    /// Dimensions of the parts even and odd in the last variable.
    pub fn parity_split(&self, var: VarId) -> (usize, usize) {
        let odd = self
            .basis
            .iter()
            .filter(|f| f.monomials().all(|m| m.exponent(var) % 2 == 1))
            .count();
        (self.dimension - odd, odd)
    }
}

/// Solves at the default bound (or `bound`, if given) and re-solves at the
/// doubled bound; fails unless the dimension is unchanged.
pub fn solve_kernel(
    system: &IndicatorSystem,
    bound: Option<DegreeBound>,
) -> Result<KernelResult, KernelError> {
    let default = DegreeBound::default_for(system);
    let bound = bound.unwrap_or(default);
    if !bound.covers(default) {
        return Err(KernelError::BoundTooSmall {
            given: bound,
            default,
        });
    }
    let mut result = solve_at(system, bound);
    let doubled = solve_at(system, bound.doubled());
    if doubled.dimension != result.dimension {
        return Err(KernelError::NotStabilized {
            weight: system.weight.to_string(),
            bound,
            dim: result.dimension,
            doubled_dim: doubled.dimension,
        });
    }
    result.stabilized = true;
    Ok(result)
}

/// Single solve without the stabilization check; `stabilized` is false.
pub fn solve_at(system: &IndicatorSystem, bound: DegreeBound) -> KernelResult {
    let eulers = system.euler_ops();
    let mut blocks: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for m in bounded_monomials(system, bound) {
        let w: Vec<i64> = eulers.iter().map(|e| e.monomial_eigenvalue2(&m)).collect();
        blocks.entry(w).or_default().push(m);
    }

    let blocks: Vec<(Vec<i64>, Vec<Monomial>)> = blocks.into_iter().rev().collect();
    let solved: Vec<(Vec<i64>, Vec<Poly>)> = blocks
        .into_par_iter()
        .map(|(w, mut monomials)| {
            monomials.sort_by(|a, b| b.cmp(a));
            let basis = block_kernel(system, &monomials);
            (w, basis)
        })
        .collect();

    let mut basis = Vec::new();
    let mut weights = Vec::new();
    let mut grading = BTreeMap::new();
    for (w, polys) in solved {
        if polys.is_empty() {
            continue;
        }
        grading.insert(w.clone(), polys.len());
        weights.extend(std::iter::repeat_n(w, polys.len()));
        basis.extend(polys);
    }
    KernelResult {
        dimension: basis.len(),
        basis,
        weights,
        grading,
        bound_used: bound,
        stabilized: false,
    }
}

/// Nullspace of `f -> (op_1^k_1 f, ..., op_s^k_s f)` restricted to the span
/// of `columns`, which must be sorted descending.
fn block_kernel(system: &IndicatorSystem, columns: &[Monomial]) -> Vec<Poly> {
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (col, m) in columns.iter().enumerate() {
        let f = Poly::term(Rational::from_integer(1.into()), m.clone());
        for (eq_idx, eq) in system.equations.iter().enumerate() {
            let image = eq.op.apply_power(eq.power, &f);
            for (out, c) in image.terms() {
                let next = row_index.len();
                let row = *row_index.entry((eq_idx, out.clone())).or_insert(next);
                entries.push((row, col, c.clone()));
            }
        }
    }
    let mut rows = vec![vec![Rational::zero(); columns.len()]; row_index.len()];
    for (r, c, v) in entries {
        rows[r][c] += v;
    }
    nullspace(rows, columns.len())
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                columns
                    .iter()
                    .cloned()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect()
}

fn bounded_monomials(system: &IndicatorSystem, bound: DegreeBound) -> Vec<Monomial> {
    let n = system.n() as i32;
    let mut out = vec![Vec::new()];
    for k in 2..=n {
        let (a, b) = (VarId::z(-k, -1), VarId::z(-k, 1));
        let mut next = Vec::new();
        for prefix in &out {
            for total in 0..=bound.pair {
                for i in 0..=total {
                    let mut factors: Vec<(VarId, u32)> = prefix.clone();
                    factors.push((a, i));
                    factors.push((b, total - i));
                    next.push(factors);
                }
            }
        }
        out = next;
    }
    let last = system.last_variable();
    out.into_iter()
        .flat_map(|prefix| {
            (0..=bound.last).map(move |e| {
                let mut factors = prefix.clone();
                factors.push((last, e));
                Monomial::from_factors(factors)
            })
        })
        .collect()
}

/// Sorted multiset of doubled Euler eigenvalue vectors, one per basis vector.
pub fn weight_multiset(
    result: &KernelResult,
    eulers: &[EulerOp],
) -> Result<Vec<Vec<i64>>, OpsError> {
    let mut out = result
        .basis
        .iter()
        .map(|f| eulers.iter().map(|e| e.eigenvalue2(f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{Sign, T};
    use crate::ring::{rank_of_span, rat};
    use crate::systems::{build_indicator_a, build_indicator_b, Algebra, HighestWeight};

    fn b_kernel(e: &[i64], sign: Sign) -> KernelResult {
        let w = HighestWeight::integral(Algebra::B, e).unwrap();
        solve_kernel(&build_indicator_b(&w, sign).unwrap(), None).unwrap()
    }

    fn same_span(a: &[Poly], b: &[Poly]) -> bool {
        let joint: Vec<Poly> = a.iter().chain(b).cloned().collect();
        let r = rank_of_span(&joint);
        r == rank_of_span(a) && r == rank_of_span(b)
    }

    fn z(r: i32, c: i32) -> Poly {
        Poly::var(VarId::z(r, c))
    }

    #[test]
    fn weight_one_zero() {
        let k = b_kernel(&[1, 0], Sign::Plus);
        assert_eq!(k.dimension, 3);
        assert!(k.stabilized);
        assert!(same_span(&k.basis, &[Poly::one(), z(-2, -1), z(-2, 1)]));
    }

    #[test]
    fn zero_weight() {
        let k = b_kernel(&[0, 0], Sign::Plus);
        assert_eq!(k.basis, vec![Poly::one()]);
    }

    #[test]
    fn weight_one_one_both_signs() {
        for sign in [Sign::Plus, Sign::Minus] {
            let k = b_kernel(&[1, 1], sign);
            assert_eq!(k.dimension, 4);
            let t = Poly::var(T);
            let half = rat(sign.as_i64(), 2);
            let v = &z(-2, 1) - &(&t.pow(2) * &z(-2, -1)).scale(&half);
            let expected = [Poly::one(), t.clone(), t.pow(2), v.clone()];
            assert!(same_span(&k.basis, &expected));
            // The basis vector of weight (0,0) is exactly v, normalized.
            assert!(k.basis.contains(&v));
        }
    }

    #[test]
    fn weights_of_one_one() {
        let w = HighestWeight::integral(Algebra::B, &[1, 1]).unwrap();
        let s = build_indicator_b(&w, Sign::Plus).unwrap();
        let k = solve_kernel(&s, None).unwrap();
        let ms = weight_multiset(&k, &s.euler_ops()).unwrap();
        assert_eq!(ms, vec![vec![0, 0], vec![2, -2], vec![2, 0], vec![2, 2]]);
        assert_eq!(k.grading.values().sum::<usize>(), k.dimension);
        assert_eq!(k.parity_split(T), (3, 1));
    }

    #[test]
    fn weights_of_one_zero() {
        let w = HighestWeight::integral(Algebra::B, &[1, 0]).unwrap();
        let s = build_indicator_b(&w, Sign::Plus).unwrap();
        let k = solve_kernel(&s, None).unwrap();
        let ms = weight_multiset(&k, &s.euler_ops()).unwrap();
        assert_eq!(ms, vec![vec![0, -2], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn every_basis_vector_is_a_solution() {
        let w = HighestWeight::integral(Algebra::B, &[2, 1, 1]).unwrap();
        let s = build_indicator_b(&w, Sign::Plus).unwrap();
        let k = solve_kernel(&s, None).unwrap();
        assert!(k.basis.iter().all(|f| s.annihilates(f)));
        assert_eq!(rank_of_span(&k.basis), k.dimension);
    }

    #[test]
    fn gl_kernels() {
        let w = |e: &[i64]| HighestWeight::integral(Algebra::A, e).unwrap();
        let k = solve_kernel(&build_indicator_a(&w(&[1, 1])).unwrap(), None).unwrap();
        assert_eq!(k.dimension, 3);
        let k = solve_kernel(&build_indicator_a(&w(&[1, 0])).unwrap(), None).unwrap();
        assert_eq!(k.dimension, 3);
    }

    #[test]
    fn bound_checks() {
        let w = HighestWeight::integral(Algebra::B, &[1, 1]).unwrap();
        let s = build_indicator_b(&w, Sign::Plus).unwrap();
        let small = DegreeBound { last: 0, pair: 0 };
        assert!(matches!(solve_kernel(&s, Some(small)), Err(KernelError::BoundTooSmall { .. })));
        let big = DegreeBound::default_for(&s).with_pair(5);
        assert_eq!(solve_kernel(&s, Some(big)).unwrap().dimension, 4);
        // Truncating below the default loses solutions.
        assert!(solve_at(&s, small).dimension < 4);
    }
}

//! Gelfand-Tsetlin type patterns for both restriction problems, their
//! weights, and Weyl dimension formulas.
//!
//! All entries are doubled so that half-integral patterns are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::Rational;
use crate::systems::{Algebra, HighestWeight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("Weyl product for {0:?} at {1:?} is not a positive integer: {2}")]
    NonIntegerDimension(RootSystem, Vec<i64>, String),
    #[error("weight {0:?} is not dominant for {1:?}")]
    NotDominant(Vec<i64>, RootSystem),
}

/// Three-row pattern for gl(n+1) restricted to gl(n-1): the top row has
/// n+1 entries ending in 0, then n, then n-1 entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GLTableau {
    pub top: Vec<i64>,
    pub middle: Vec<i64>,
    pub bottom: Vec<i64>,
}

impl GLTableau {
    /// Doubled E(-i,-i) eigenvalues for i = n..1 of the corresponding
    /// gl(n-1)-highest vector: the bottom row, then sum(middle) - sum(bottom).
    pub fn weight(&self) -> Vec<i64> {
        let mut w = self.bottom.clone();
        w.push(self.middle.iter().sum::<i64>() - self.bottom.iter().sum::<i64>());
        w
    }

    /// Doubled E(1,1) eigenvalue.
    pub fn e11_weight(&self) -> i64 {
        self.top.iter().sum::<i64>() - self.middle.iter().sum::<i64>()
    }
}

/// Pattern for o(2n+1) restricted to o(2n-1), plus the extra bit sigma.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BTableau {
    pub top: Vec<i64>,
    pub middle: Vec<i64>,
    pub bottom: Vec<i64>,
    pub sigma: u8,
}

/// Ways of evaluating the (-1)-component of a tableau's weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightVariant {
    /// `sigma + 2 sum m' - sum m + sum bottom`
    Printed,
    /// `sigma + 2 sum m' - sum m - sum bottom`
    ProofDiff,
    /// `-sigma + 2 sum m' - sum m - sum bottom`
    SigmaNeg,
}

impl WeightVariant {
    pub const ALL: [WeightVariant; 3] =
        [WeightVariant::Printed, WeightVariant::ProofDiff, WeightVariant::SigmaNeg];

    pub fn name(self) -> &'static str {
        match self {
            WeightVariant::Printed => "printed",
            WeightVariant::ProofDiff => "proof_diff",
            WeightVariant::SigmaNeg => "sigma_neg",
        }
    }
}

/// Inclusive range `lo..=hi` in steps of 2 (one unit in doubled encoding).
fn between(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (0..).map(move |i| lo + 2 * i).take_while(move |&v| v <= hi)
}

/// All rows `row` with `upper[i] >= row[i] >= upper[i+1]` for i < len, and
/// the last entry bounded below by `last_floor` when `len == upper.len()`.
fn interlacing_rows(upper: &[i64], len: usize, last_floor: i64) -> Vec<Vec<i64>> {
    let mut rows = vec![Vec::with_capacity(len)];
    for i in 0..len {
        let hi = upper[i];
        let lo = upper.get(i + 1).copied().unwrap_or(last_floor);
        rows = rows
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                between(lo, hi).map(move |v| {
                    let mut row = prefix.clone();
                    row.push(v);
                    row
                })
            })
            .collect();
    }
    rows
}

/// All betweenness patterns under `top` (doubled, weakly decreasing, last
/// entry 0), in lexicographic order of (middle, bottom).
pub fn enumerate_gl_tableaux(top: &[i64]) -> Vec<GLTableau> {
    assert!(top.len() >= 2, "top row needs at least two entries");
    assert!(top.windows(2).all(|w| w[0] >= w[1]), "top row must be weakly decreasing");
    assert_eq!(*top.last().unwrap(), 0, "top row must end in 0");
    let mut out = Vec::new();
    for middle in interlacing_rows(top, top.len() - 1, 0) {
        for bottom in interlacing_rows(&middle, middle.len() - 1, 0) {
            out.push(GLTableau {
                top: top.to_vec(),
                middle: middle.clone(),
                bottom,
            });
        }
    }
    out
}

/// GL patterns whose top row is the gl weight `weight` followed by 0.
pub fn gl_tableaux_for(weight: &HighestWeight) -> Vec<GLTableau> {
    let mut top = weight.entries2().to_vec();
    top.push(0);
    enumerate_gl_tableaux(&top)
}

/// All (pattern, sigma) pairs of the orthogonal branching, lexicographic in
/// (middle, bottom, sigma). For integral weights sigma is forced to 0 when
/// the last middle entry is 0.
pub fn enumerate_b_tableaux(weight: &HighestWeight) -> Vec<BTableau> {
    assert_eq!(weight.algebra(), Algebra::B, "o(2n+1) weight expected");
    let top = weight.entries2();
    let half = weight.is_half_integral();
    let floor = if half { 1 } else { 0 };
    let mut out = Vec::new();
    for middle in interlacing_rows(top, top.len(), floor) {
        // Bottom entries sit between consecutive middle entries.
        let bottoms = interlacing_rows(&middle, middle.len() - 1, floor);
        let last = *middle.last().unwrap();
        for bottom in bottoms {
            let sigmas: &[u8] = if !half && last == 0 { &[0] } else { &[0, 1] };
            for &sigma in sigmas {
                out.push(BTableau {
                    top: top.to_vec(),
                    middle: middle.clone(),
                    bottom: bottom.clone(),
                    sigma,
                });
            }
        }
    }
    out
}

/// Doubled weight of the vector labelled by `t`: the bottom row, then the
/// (-1)-component according to `variant`.
pub fn b_tableau_weight(t: &BTableau, variant: WeightVariant) -> Vec<i64> {
    let s_mid: i64 = t.middle.iter().sum();
    let s_top: i64 = t.top.iter().sum();
    let s_bot: i64 = t.bottom.iter().sum();
    let sigma2 = 2 * i64::from(t.sigma);
    let last = match variant {
        WeightVariant::Printed => sigma2 + 2 * s_mid - s_top + s_bot,
        WeightVariant::ProofDiff => sigma2 + 2 * s_mid - s_top - s_bot,
        WeightVariant::SigmaNeg => -sigma2 + 2 * s_mid - s_top - s_bot,
    };
    let mut w = t.bottom.clone();
    w.push(last);
    w
}

/// Root system for the Weyl dimension formula. `B(k)` is o(2k+1) with
/// weights of length k; `A(k)` is gl(k+1) with weights of length k+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootSystem {
    B(usize),
    A(usize),
}

/// Dimension of the irreducible module with doubled highest weight `weight2`.
pub fn weyl_dim(system: RootSystem, weight2: &[i64]) -> Result<u64, TableauError> {
    let (len, rho2): (usize, Vec<i64>) = match system {
        RootSystem::B(k) => (k, (1..=k as i64).map(|i| 2 * (k as i64 - i) + 1).collect()),
        RootSystem::A(k) => (k + 1, (0..=k as i64).map(|i| 2 * (k as i64 - i)).collect()),
    };
    let dominant = weight2.len() == len
        && weight2.windows(2).all(|w| w[0] >= w[1])
        && match system {
            RootSystem::B(_) => weight2.last().is_none_or(|&e| e >= 0),
            RootSystem::A(_) => true,
        };
    if !dominant {
        return Err(TableauError::NotDominant(weight2.to_vec(), system));
    }
    let shifted: Vec<i64> = weight2.iter().zip(&rho2).map(|(w, r)| w + r).collect();
    let mut product = Rational::one();
    let mut factor = |num: i64, den: i64| product *= Rational::new(BigInt::from(num), BigInt::from(den));
    for i in 0..len {
        for j in i + 1..len {
            factor(shifted[i] - shifted[j], rho2[i] - rho2[j]);
            if let RootSystem::B(_) = system {
                factor(shifted[i] + shifted[j], rho2[i] + rho2[j]);
            }
        }
        if let RootSystem::B(_) = system {
            factor(shifted[i], rho2[i]);
        }
    }
    if !product.is_integer() || !product.is_positive() {
        return Err(TableauError::NonIntegerDimension(system, weight2.to_vec(), product.to_string()));
    }
    product
        .to_integer()
        .to_u64()
        .ok_or_else(|| TableauError::NonIntegerDimension(system, weight2.to_vec(), product.to_string()))
}

/// Outcome of the dimension bookkeeping and weight comparisons for one
/// o(2n+1) weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingReport {
    pub tableau_count: usize,
    pub branched_dimension: u64,
    pub dimension: u64,
    pub weyl_pass: bool,
    pub lower_row_pass: bool,
    pub kernel_lower_rows: Vec<Vec<i64>>,
    pub tableau_lower_rows: Vec<Vec<i64>>,
    pub variants: Vec<VariantComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantComparison {
    pub variant: WeightVariant,
    pub pass: bool,
    pub multiset: Vec<Vec<i64>>,
}

/// Compares the tableaux of `weight` against the Weyl dimension of the
/// whole module and against the kernel weight multiset `kernel_weights`
/// (doubled F(-i,-i) eigenvalues, i = n..1).
pub fn branching_check(
    weight: &HighestWeight,
    kernel_weights: &[Vec<i64>],
) -> Result<BranchingReport, TableauError> {
    let n = weight.n();
    let tableaux = enumerate_b_tableaux(weight);
    let mut branched = 0u64;
    for t in &tableaux {
        branched += weyl_dim(RootSystem::B(n - 1), &t.bottom)?;
    }
    let dimension = weyl_dim(RootSystem::B(n), weight.entries2())?;

    let mut kernel_sorted = kernel_weights.to_vec();
    kernel_sorted.sort();
    let mut kernel_lower_rows: Vec<Vec<i64>> =
        kernel_sorted.iter().map(|w| w[..n - 1].to_vec()).collect();
    kernel_lower_rows.sort();
    let mut tableau_lower_rows: Vec<Vec<i64>> = tableaux.iter().map(|t| t.bottom.clone()).collect();
    tableau_lower_rows.sort();

    let variants = WeightVariant::ALL
        .iter()
        .map(|&variant| {
            let mut multiset: Vec<Vec<i64>> =
                tableaux.iter().map(|t| b_tableau_weight(t, variant)).collect();
            multiset.sort();
            VariantComparison {
                variant,
                pass: multiset == kernel_sorted,
                multiset,
            }
        })
        .collect();

    Ok(BranchingReport {
        tableau_count: tableaux.len(),
        branched_dimension: branched,
        dimension,
        weyl_pass: branched == dimension,
        lower_row_pass: kernel_lower_rows == tableau_lower_rows,
        kernel_lower_rows,
        tableau_lower_rows,
        variants,
    })
}

/// Doubled entries `2 * value` as a convenience for tests and callers.
pub fn doubled(values: &[i64]) -> Vec<i64> {
    values.iter().map(|v| 2 * v).collect()
}

//! The closed-form monomial bases asserted for both solution spaces, and
//! their comparison with the kernel oracle.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kernel::{solve_kernel, DegreeBound, KernelError, KernelResult};
use crate::ops::Sign;
use crate::ring::{rank_of_span, Poly};
use crate::systems::{
    build_indicator_a, build_indicator_b, expand_uv_monomial, expand_xy_monomial, Algebra,
    BasisForm, HighestWeight, IndicatorSystem,
};

/// Exponents `(p(-1); (p(-2), q(-2)), ..., (p(-n), q(-n)))` of a basis
/// monomial. `pairs[0]` belongs to k = 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub p_minus1: u32,
    pub pairs: Vec<(u32, u32)>,
}

impl ExponentTuple {
    pub fn pair_sum(&self) -> u32 {
        self.pairs.iter().map(|(p, q)| p + q).sum()
    }
}

/// Ordered by p(-1), then by the pairs from k = n down to k = 2.
impl Ord for ExponentTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p_minus1
            .cmp(&other.p_minus1)
            .then_with(|| self.pairs.iter().rev().cmp(other.pairs.iter().rev()))
    }
}

impl PartialOrd for ExponentTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.p_minus1)?;
        let pairs: Vec<String> = self.pairs.iter().map(|(p, q)| format!("{p},{q}")).collect();
        write!(f, "{})", pairs.join(";"))
    }
}

/// Lattice points of `p + q <= r(-k)` and `p(-1) + weight * sum(p + q) <= r(-1)`.
fn enumerate_admissible(r: &[u32], weight: u32) -> Vec<ExponentTuple> {
    let n = r.len();
    let r_last = r[n - 1];
    // r is ordered (r(-n), ..., r(-2), r(-1)); pairs run k = 2..n.
    let caps: Vec<u32> = (2..=n).map(|k| r[n - k]).collect();
    let mut partial: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    for &cap in &caps {
        partial = partial
            .into_iter()
            .flat_map(|prefix| {
                (0..=cap).flat_map(move |p| {
                    let prefix = prefix.clone();
                    (0..=cap - p).map(move |q| {
                        let mut next = prefix.clone();
                        next.push((p, q));
                        next
                    })
                })
            })
            .collect();
    }
    let mut out: Vec<ExponentTuple> = partial
        .into_iter()
        .flat_map(|pairs| {
            let used = weight * pairs.iter().map(|(p, q)| p + q).sum::<u32>();
            let room = r_last.checked_sub(used);
            room.into_iter().flat_map(move |room| {
                let pairs = pairs.clone();
                (0..=room).map(move |p1| ExponentTuple {
                    p_minus1: p1,
                    pairs: pairs.clone(),
                })
            })
        })
        .collect();
    out.sort();
    out
}

pub fn enumerate_exponents_b(weight: &HighestWeight) -> Vec<ExponentTuple> {
    assert_eq!(weight.algebra(), Algebra::B, "o(2n+1) weight expected");
    enumerate_admissible(&weight.r_vector(), 2)
}

pub fn enumerate_exponents_a(weight: &HighestWeight) -> Vec<ExponentTuple> {
    assert_eq!(weight.algebra(), Algebra::A, "gl weight expected");
    enumerate_admissible(&weight.r_vector(), 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "details", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComparisonStatus {
    Match,
    Discrepancy(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisComparison {
    pub algebra: Algebra,
    pub sign: Option<Sign>,
    pub basis_form: BasisForm,
    pub claimed_count: usize,
    pub kernel_dim: usize,
    pub contained: bool,
    pub independent: bool,
    pub spanning: bool,
    pub status: ComparisonStatus,
}

impl BasisComparison {
    pub fn is_match(&self) -> bool {
        self.status == ComparisonStatus::Match
    }
}

/// Claimed basis polynomials of `system` in z-coordinates.
pub fn claimed_basis(system: &IndicatorSystem, form: BasisForm) -> Vec<Poly> {
    let n = system.n();
    match system.algebra() {
        Algebra::B => enumerate_exponents_b(&system.weight)
            .iter()
            .map(|t| expand_uv_monomial(t, n, form))
            .collect(),
        Algebra::A => enumerate_exponents_a(&system.weight)
            .iter()
            .map(|t| expand_xy_monomial(t, n, form))
            .collect(),
    }
}

/// Compares the claimed basis with an already solved kernel of `system`.
pub fn compare_with_kernel(
    system: &IndicatorSystem,
    kernel: &KernelResult,
    form: BasisForm,
) -> BasisComparison {
    let claimed = claimed_basis(system, form);
    let contained = claimed.iter().all(|f| system.annihilates(f));
    let claimed_rank = rank_of_span(&claimed);
    let independent = claimed_rank == claimed.len();
    let joint: Vec<Poly> = claimed.iter().chain(&kernel.basis).cloned().collect();
    let spanning = rank_of_span(&joint) == claimed_rank;
    let status = if contained && independent && claimed.len() == kernel.dimension {
        ComparisonStatus::Match
    } else {
        ComparisonStatus::Discrepancy(format!(
            "claimed {} vs kernel {}; contained={contained} independent={independent} spanning={spanning}",
            claimed.len(),
            kernel.dimension
        ))
    };
    BasisComparison {
        algebra: system.algebra(),
        sign: system.sign,
        basis_form: form,
        claimed_count: claimed.len(),
        kernel_dim: kernel.dimension,
        contained,
        independent,
        spanning,
        status,
    }
}

/// Builds the system for `weight`, solves its kernel and compares. `sign`
/// is ignored for gl weights.
pub fn compare_basis_to_kernel(
    weight: &HighestWeight,
    sign: Sign,
    form: BasisForm,
    bound: Option<DegreeBound>,
) -> Result<BasisComparison, KernelError> {
    let system = match weight.algebra() {
        Algebra::B => build_indicator_b(weight, sign)?,
        Algebra::A => build_indicator_a(weight)?,
    };
    let kernel = solve_kernel(&system, bound)?;
    Ok(compare_with_kernel(&system, &kernel, form))
}

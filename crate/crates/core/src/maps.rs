//! Correspondences between the orthogonal and the gl restriction problems:
//! exponent-level maps and the polynomial map `f -> z[0,1]^sigma f(.., z[0,1]^2/2)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::claimed::{enumerate_exponents_a, enumerate_exponents_b, ExponentTuple};
use crate::kernel::{solve_kernel, DegreeBound, KernelError, KernelResult};
use crate::ops::{EulerOp, OpsError, T, X1};
use crate::ring::{rank_of_span, rat, Monomial, Poly};
use crate::systems::{build_indicator_a, Algebra, HighestWeight, IndicatorSystem, WeightError};
use crate::tableaux::gl_tableaux_for;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceImage {
    pub p_prime: u32,
    pub sigma: u8,
    pub pairs: Vec<(u32, u32)>,
    pub target_weight: HighestWeight,
}

impl CorrespondenceImage {
    pub fn tuple(&self) -> ExponentTuple {
        ExponentTuple {
            p_minus1: self.p_prime,
            pairs: self.pairs.clone(),
        }
    }
}

/// The gl weight with r-vector `(r(-n), ..., r(-2), floor(r(-1)/2))`.
pub fn target_weight(weight_b: &HighestWeight) -> Result<HighestWeight, WeightError> {
    let mut r = weight_b.r_vector();
    let last = r.len() - 1;
    r[last] /= 2;
    HighestWeight::gl_from_r(&r)
}

/// The gl weight whose solutions feed the `sigma = 1` half: all entries
/// lowered by one for integral weights (`None` when m(-1) = 0), the target
/// weight itself for half-integral ones.
pub fn odd_source_weight(weight_b: &HighestWeight) -> Result<Option<HighestWeight>, WeightError> {
    if weight_b.is_half_integral() {
        return target_weight(weight_b).map(Some);
    }
    if weight_b.m2(1) == 0 {
        return Ok(None);
    }
    let lowered = weight_b.entries2().iter().map(|e| e - 2).collect();
    HighestWeight::new(Algebra::A, lowered).map(Some)
}

/// `(p(-1), pairs) -> (floor(p(-1)/2), p(-1) mod 2, pairs)`.
pub fn correspond_exponents(
    t: &ExponentTuple,
    weight_b: &HighestWeight,
) -> Result<CorrespondenceImage, WeightError> {
    Ok(CorrespondenceImage {
        p_prime: t.p_minus1 / 2,
        sigma: (t.p_minus1 % 2) as u8,
        pairs: t.pairs.clone(),
        target_weight: target_weight(weight_b)?,
    })
}

/// `z[0,1]^sigma * f` with `z[-1,1]` replaced by `z[0,1]^2 / 2`.
pub fn soot_apply(f: &Poly, sigma: u8) -> Poly {
    let mut assignment = BTreeMap::new();
    assignment.insert(X1, Poly::term(rat(1, 2), Monomial::from_factors([(T, 2)])));
    let image = f.substitute(&assignment);
    if sigma == 1 {
        &image * &Poly::var(T)
    } else {
        image
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceClaims {
    pub target_weight: HighestWeight,
    pub even_count: usize,
    pub gl_tuple_count: usize,
    /// Even tuples map injectively onto exactly the admissible gl tuples.
    pub sop1_pass: bool,
    pub odd_count: usize,
    /// Every odd tuple lands on an admissible gl tuple.
    pub odd_images_admissible: bool,
    /// Tableaux the odd tuples are compared with: those with m'(-1) > 0
    /// for integral weights, all of them for half-integral ones.
    pub gl_tableau_count: usize,
    pub sop2_pass: bool,
}

pub fn check_correspondence_claims(
    weight_b: &HighestWeight,
) -> Result<CorrespondenceClaims, WeightError> {
    let target = target_weight(weight_b)?;
    let tuples = enumerate_exponents_b(weight_b);
    let gl_tuples: BTreeSet<ExponentTuple> = enumerate_exponents_a(&target).into_iter().collect();

    let mut even_images = BTreeSet::new();
    let mut even_count = 0;
    let mut odd_count = 0;
    let mut odd_images_admissible = true;
    for t in &tuples {
        let image = correspond_exponents(t, weight_b)?;
        if image.sigma == 0 {
            even_count += 1;
            even_images.insert(image.tuple());
        } else {
            odd_count += 1;
            odd_images_admissible &= gl_tuples.contains(&image.tuple());
        }
    }
    let sop1_pass = even_images.len() == even_count && even_images == gl_tuples;

    let tableaux = gl_tableaux_for(&target);
    let gl_tableau_count = if weight_b.is_half_integral() {
        tableaux.len()
    } else {
        tableaux
            .iter()
            .filter(|t| *t.middle.last().unwrap() > 0)
            .count()
    };

    Ok(CorrespondenceClaims {
        target_weight: target,
        even_count,
        gl_tuple_count: gl_tuples.len(),
        sop1_pass,
        odd_count,
        odd_images_admissible,
        gl_tableau_count,
        sop2_pass: odd_count == gl_tableau_count,
    })
}

/// Solutions of a gl problem that are pushed through the map with a fixed
/// sigma.
#[derive(Clone, Debug)]
pub struct SootSource {
    pub sigma: u8,
    pub weight: HighestWeight,
    pub system: IndicatorSystem,
    pub kernel: KernelResult,
}

/// The gl kernels feeding `sigma = 0` (target weight) and `sigma = 1`.
pub fn soot_sources(
    weight_b: &HighestWeight,
    bound_pair: Option<u32>,
) -> Result<Vec<SootSource>, KernelError> {
    let mut sources = Vec::new();
    let odd = odd_source_weight(weight_b)?;
    let plan = [(0u8, Some(target_weight(weight_b)?)), (1u8, odd)];
    for (sigma, weight) in plan {
        let Some(weight) = weight else { continue };
        let system = build_indicator_a(&weight)?;
        let bound = bound_pair.map(|p| {
            let d = DegreeBound::default_for(&system);
            d.with_pair(p.max(d.pair))
        });
        let kernel = solve_kernel(&system, bound)?;
        sources.push(SootSource {
            sigma,
            weight,
            system,
            kernel,
        });
    }
    Ok(sources)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SootImageOutcome {
    pub checked: usize,
    pub annihilated: usize,
    /// Rank of all images; equals the orthogonal kernel dimension when the
    /// images span the whole solution space.
    pub images_rank: usize,
    pub b_kernel_dim: usize,
}

impl SootImageOutcome {
    pub fn pass(&self) -> bool {
        self.checked == self.annihilated
    }
}

/// Pushes every source basis vector through the map and checks it against
/// the orthogonal `system`.
pub fn check_soot_image(
    system_b: &IndicatorSystem,
    b_kernel: &KernelResult,
    sources: &[SootSource],
) -> SootImageOutcome {
    let images: Vec<Poly> = sources
        .iter()
        .flat_map(|s| s.kernel.basis.iter().map(move |f| soot_apply(f, s.sigma)))
        .collect();
    SootImageOutcome {
        checked: images.len(),
        annihilated: images.iter().filter(|g| system_b.annihilates(g)).count(),
        images_rank: rank_of_span(&images),
        b_kernel_dim: b_kernel.dimension,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SootConjugationOutcome {
    pub checked: usize,
    /// Doubled shift `2 (m_B(-i) - m_gl(-i))` per source sigma.
    pub shifts2: BTreeMap<u8, i64>,
    /// Vectors whose F(-i,-i) eigenvalue (i = n..2) differs from the
    /// shifted E(-i,-i) eigenvalue.
    pub lower_failures: Vec<String>,
    /// Vectors violating F(-1,-1) = E(-1,-1) - E(1,1) + shift - sigma.
    pub minus_one_failures: Vec<String>,
}

impl SootConjugationOutcome {
    pub fn pass(&self) -> bool {
        self.lower_failures.is_empty() && self.minus_one_failures.is_empty()
    }
}

/// Checks that the map intertwines E(-i,-i) with F(-i,-i) (i >= 2) up to
/// the constant weight shift, and the (-1)-component relation.
pub fn check_soot_conjugation(
    weight_b: &HighestWeight,
    sources: &[SootSource],
) -> Result<SootConjugationOutcome, OpsError> {
    let n = weight_b.n();
    let b_eulers: Vec<EulerOp> = (1..=n as i32)
        .rev()
        .map(|i| EulerOp::b_diagonal(i, n as i32, weight_b.m2(i as usize)))
        .collect();
    let e11 = EulerOp::gl_e11(n as i32);
    let mut outcome = SootConjugationOutcome {
        checked: 0,
        shifts2: BTreeMap::new(),
        lower_failures: Vec::new(),
        minus_one_failures: Vec::new(),
    };
    for source in sources {
        // Uniform across i by construction of the source weight.
        let shift2 = weight_b.m2(1) - source.weight.m2(1);
        outcome.shifts2.insert(source.sigma, shift2);
        let gl_eulers = source.system.euler_ops();
        for f in &source.kernel.basis {
            outcome.checked += 1;
            let g = soot_apply(f, source.sigma);
            for (idx, (fe, ee)) in b_eulers.iter().zip(&gl_eulers).enumerate().take(n - 1) {
                let want = ee.eigenvalue2(f)? + shift2;
                let got = fe.eigenvalue2(&g)?;
                if got != want {
                    outcome.lower_failures.push(format!(
                        "sigma={} f={f}: F({},{}) gives {got}/2, expected {want}/2",
                        source.sigma,
                        idx as i64 - n as i64,
                        idx as i64 - n as i64
                    ));
                }
            }
            let want = gl_eulers[n - 1].eigenvalue2(f)? - e11.eigenvalue2(f)? + shift2
                - 2 * i64::from(source.sigma);
            let got = b_eulers[n - 1].eigenvalue2(&g)?;
            if got != want {
                outcome.minus_one_failures.push(format!(
                    "sigma={} f={f}: F(-1,-1) gives {got}/2, expected {want}/2",
                    source.sigma
                ));
            }
        }
    }
    Ok(outcome)
}

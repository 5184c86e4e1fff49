//! Per-weight verification against the fixed check registry, and the
//! report types emitted by the command-line driver.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::claimed::{compare_with_kernel, BasisComparison};
use crate::kernel::{solve_kernel, DegreeBound, KernelResult};
use crate::maps::{check_correspondence_claims, check_soot_conjugation, check_soot_image, soot_sources};
use crate::ops::{Sign, T};
use crate::systems::{build_indicator_a, build_indicator_b, Algebra, BasisForm, HighestWeight, IndicatorSystem};
use crate::tableaux::{
    branching_check, enumerate_b_tableaux, gl_tableaux_for, weyl_dim, RootSystem, WeightVariant,
};
use crate::Error;

pub const REGISTRY_VERSION: u32 = 1;

/// Whether a check is an assertion (its failure fails the run) or a claim
/// whose outcome is only recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Recorded,
}

pub const REGISTRY: [(&str, Expectation); 12] = [
    ("RB-BASIS", Expectation::Recorded),
    ("RA-BASIS", Expectation::Recorded),
    ("SOP1-BIJ", Expectation::Pass),
    ("SOP2-COUNT", Expectation::Recorded),
    ("SOOT-IMAGE", Expectation::Recorded),
    ("SOOT-CONJ", Expectation::Pass),
    ("OSNT-COUNT", Expectation::Pass),
    ("LOWROW-MULTISET", Expectation::Pass),
    ("WESS-printed", Expectation::Recorded),
    ("WESS-proof_diff", Expectation::Recorded),
    ("WESS-sigma_neg", Expectation::Recorded),
    ("WEYL-BRANCH", Expectation::Pass),
];

pub fn expectation_of(id: &str) -> Option<Expectation> {
    REGISTRY.iter().find(|(name, _)| *name == id).map(|(_, e)| *e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Match,
    Discrepancy,
    NotApplicable,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Match => "MATCH",
            Status::Discrepancy => "DISCREPANCY",
            Status::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub expected: Expectation,
    pub details: Value,
}

impl CheckResult {
    /// An assertion that did not hold.
    pub fn is_failure(&self) -> bool {
        self.expected == Expectation::Pass && self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRepr {
    pub doubled: Vec<i64>,
    pub parity: String,
}

impl WeightRepr {
    pub fn of(weight: &HighestWeight) -> Self {
        WeightRepr {
            doubled: weight.entries2().to_vec(),
            parity: if weight.is_half_integral() { "half-integer" } else { "integer" }.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedCount {
    pub sign: Option<Sign>,
    pub basis_form: BasisForm,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultisets {
    pub kernel: Vec<Vec<i64>>,
    pub tableau: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub algebra: Algebra,
    pub n: usize,
    pub weight: WeightRepr,
    pub r_vector: Vec<u32>,
    pub kernel_dim: usize,
    pub stabilized: bool,
    pub tableau_count: usize,
    pub claimed_counts: Vec<ClaimedCount>,
    pub checks: Vec<CheckResult>,
    pub weight_multisets: WeightMultisets,
}

impl WeightReport {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.is_failure()).collect()
    }

    pub fn label(&self) -> String {
        format!(
            "{}(n={}; {})",
            self.algebra,
            self.n,
            crate::systems::render_doubled(&self.weight.doubled)
        )
    }

    /// Keeps only the checks named in `ids`.
    pub fn retain_checks(&mut self, ids: &[String]) {
        self.checks.retain(|c| ids.contains(&c.id));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub id: String,
    pub expected: Expectation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub registry_version: u32,
    pub registry: Vec<RegistryEntry>,
    pub signs: Vec<Sign>,
    pub basis_forms: Vec<BasisForm>,
    pub bound_pair: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub weights: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub header: ReportHeader,
    pub weights: Vec<WeightReport>,
    pub summary: ReportSummary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub signs: Vec<Sign>,
    pub basis_forms: Vec<BasisForm>,
    /// Overrides the pair degree bound when larger than the default.
    pub bound_pair: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            signs: vec![Sign::Plus, Sign::Minus],
            basis_forms: vec![BasisForm::Paper, BasisForm::Plain],
            bound_pair: None,
        }
    }
}

impl VerifyOptions {
    fn bound_for(&self, system: &IndicatorSystem) -> Option<DegreeBound> {
        self.bound_pair.map(|p| {
            let d = DegreeBound::default_for(system);
            d.with_pair(p.max(d.pair))
        })
    }
}

/// All dominant weights of rank `n` with entries at most `max` (both
/// parities for o(2n+1), integral only for gl), ordered by doubled entries.
pub fn sweep_weights(algebra: Algebra, n: usize, max: i64) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    let parities: &[i64] = match algebra {
        Algebra::B => &[0, 1],
        Algebra::A => &[0],
    };
    for &parity in parities {
        let values: Vec<i64> = (0..=2 * max).filter(|v| v % 2 == parity).collect();
        let mut rows: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..n {
            rows = rows
                .into_iter()
                .flat_map(|row| {
                    let cap = row.last().copied().unwrap_or(i64::MAX);
                    values
                        .iter()
                        .filter(move |&&v| v <= cap)
                        .map(move |&v| {
                            let mut next = row.clone();
                            next.push(v);
                            next
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out.extend(rows.into_iter().filter_map(|e| HighestWeight::new(algebra, e).ok()));
    }
    out.sort_by(|a, b| a.entries2().cmp(b.entries2()));
    out
}

pub fn build_report(weights: &[HighestWeight], opts: &VerifyOptions) -> Result<Report, Error> {
    let reports: Vec<WeightReport> = weights
        .par_iter()
        .map(|w| verify_weight(w, opts))
        .collect::<Result<_, _>>()?;
    Ok(assemble(reports, opts))
}

/// Wraps already computed weight reports with header and summary.
pub fn assemble(weights: Vec<WeightReport>, opts: &VerifyOptions) -> Report {
    let failures = weights
        .iter()
        .flat_map(|w| w.failures().into_iter().map(move |c| format!("{} {}", w.label(), c.id)))
        .collect();
    Report {
        header: ReportHeader {
            tool: "gtz".into(),
            registry_version: REGISTRY_VERSION,
            registry: REGISTRY
                .iter()
                .map(|(id, expected)| RegistryEntry { id: (*id).into(), expected: *expected })
                .collect(),
            signs: opts.signs.clone(),
            basis_forms: opts.basis_forms.clone(),
            bound_pair: opts.bound_pair,
        },
        summary: ReportSummary {
            weights: weights.len(),
            checks: weights.iter().map(|w| w.checks.len()).sum(),
            failures,
        },
        weights,
    }
}

pub fn verify_weight(weight: &HighestWeight, opts: &VerifyOptions) -> Result<WeightReport, Error> {
    match weight.algebra() {
        Algebra::B => verify_b(weight, opts),
        Algebra::A => verify_gl(weight, opts),
    }
}

fn comparison_json(c: &BasisComparison) -> Value {
    serde_json::to_value(c).expect("comparison serializes")
}

fn basis_check(id: &str, comparisons: &[BasisComparison]) -> CheckResult {
    let status = if comparisons.iter().all(BasisComparison::is_match) {
        Status::Match
    } else {
        Status::Discrepancy
    };
    CheckResult {
        id: id.into(),
        status,
        expected: expectation_of(id).unwrap(),
        details: Value::Array(comparisons.iter().map(comparison_json).collect()),
    }
}

fn check(id: &str, status: Status, details: Value) -> CheckResult {
    CheckResult {
        id: id.into(),
        status,
        expected: expectation_of(id).unwrap(),
        details,
    }
}

fn not_applicable(id: &str, why: &str) -> CheckResult {
    check(id, Status::NotApplicable, json!({ "reason": why }))
}

struct SignedKernel {
    sign: Sign,
    system: IndicatorSystem,
    kernel: KernelResult,
}

fn verify_b(weight: &HighestWeight, opts: &VerifyOptions) -> Result<WeightReport, Error> {
    let n = weight.n();
    let mut kernels = Vec::new();
    for &sign in &opts.signs {
        let system = build_indicator_b(weight, sign)?;
        let kernel = solve_kernel(&system, opts.bound_for(&system))?;
        kernels.push(SignedKernel { sign, system, kernel });
    }
    let primary = kernels.first().ok_or(Error::NoSign)?;
    let tableaux = enumerate_b_tableaux(weight);
    let mut checks = Vec::new();

    // Claimed bases.
    let mut comparisons = Vec::new();
    let mut claimed_counts = Vec::new();
    for sk in &kernels {
        for &form in &opts.basis_forms {
            let c = compare_with_kernel(&sk.system, &sk.kernel, form);
            claimed_counts.push(ClaimedCount { sign: Some(sk.sign), basis_form: form, count: c.claimed_count });
            comparisons.push(c);
        }
    }
    checks.push(basis_check("RB-BASIS", &comparisons));

    let sources = soot_sources(weight, opts.bound_pair)?;
    let target = &sources[0];
    let ra: Vec<BasisComparison> = opts
        .basis_forms
        .iter()
        .map(|&form| compare_with_kernel(&target.system, &target.kernel, form))
        .collect();
    let mut ra_check = basis_check("RA-BASIS", &ra);
    ra_check.details = json!({ "target_weight": target.weight.render(), "comparisons": ra_check.details });
    checks.push(ra_check);

    // Exponent-level correspondences.
    let claims = check_correspondence_claims(weight)?;
    checks.push(check(
        "SOP1-BIJ",
        Status::from_bool(claims.sop1_pass),
        json!({
            "target_weight": claims.target_weight.render(),
            "even_tuples": claims.even_count,
            "gl_tuples": claims.gl_tuple_count,
        }),
    ));
    let (even_dim, odd_dim) = primary.kernel.parity_split(T);
    checks.push(check(
        "SOP2-COUNT",
        Status::from_bool(claims.sop2_pass),
        json!({
            "odd_tuples": claims.odd_count,
            "gl_tableaux": claims.gl_tableau_count,
            "odd_images_admissible": claims.odd_images_admissible,
            "kernel_even_dim": even_dim,
            "kernel_odd_dim": odd_dim,
            "kernel_odd_dim_matches_gl_tableaux": odd_dim == claims.gl_tableau_count,
        }),
    ));

    // Polynomial-level map.
    let mut image_details = Vec::new();
    let mut image_ok = true;
    for sk in &kernels {
        let outcome = check_soot_image(&sk.system, &sk.kernel, &sources);
        image_ok &= outcome.pass();
        image_details.push(json!({
            "sign": sk.sign,
            "checked": outcome.checked,
            "annihilated": outcome.annihilated,
            "images_rank": outcome.images_rank,
            "b_kernel_dim": outcome.b_kernel_dim,
            "pass": outcome.pass(),
        }));
    }
    checks.push(check("SOOT-IMAGE", Status::from_bool(image_ok), Value::Array(image_details)));

    let conj = check_soot_conjugation(weight, &sources)?;
    checks.push(check(
        "SOOT-CONJ",
        Status::from_bool(conj.pass()),
        json!({
            "checked": conj.checked,
            "shifts_doubled": conj.shifts2.iter().map(|(s, v)| (format!("sigma={s}"), *v)).collect::<BTreeMap<_, _>>(),
            "lower_failures": conj.lower_failures,
            "minus_one_failures": conj.minus_one_failures,
        }),
    ));

    // Tableaux against the kernel.
    let counts: Vec<Value> = kernels
        .iter()
        .map(|sk| json!({ "sign": sk.sign, "kernel_dim": sk.kernel.dimension }))
        .collect();
    let count_ok = kernels.iter().all(|sk| sk.kernel.dimension == tableaux.len());
    checks.push(check(
        "OSNT-COUNT",
        Status::from_bool(count_ok),
        json!({ "tableaux": tableaux.len(), "kernels": counts }),
    ));

    let mut branch_reports = Vec::new();
    for sk in &kernels {
        let multiset = crate::kernel::weight_multiset(&sk.kernel, &sk.system.euler_ops())?;
        branch_reports.push((sk.sign, multiset.clone(), branching_check(weight, &multiset)?));
    }
    let lowrow_ok = branch_reports.iter().all(|(_, _, b)| b.lower_row_pass);
    let first = &branch_reports[0].2;
    checks.push(check(
        "LOWROW-MULTISET",
        Status::from_bool(lowrow_ok),
        json!({
            "kernel": first.kernel_lower_rows,
            "tableaux": first.tableau_lower_rows,
        }),
    ));
    for variant in WeightVariant::ALL {
        let pass = branch_reports.iter().all(|(_, _, b)| {
            b.variants.iter().any(|v| v.variant == variant && v.pass)
        });
        checks.push(check(
            &format!("WESS-{}", variant.name()),
            Status::from_bool(pass),
            json!({ "variant": variant }),
        ));
    }
    checks.push(check(
        "WEYL-BRANCH",
        Status::from_bool(first.weyl_pass),
        json!({
            "sum_over_tableaux": first.branched_dimension,
            "dimension": first.dimension,
        }),
    ));

    let tableau_multisets = first
        .variants
        .iter()
        .map(|v| (v.variant.name().to_string(), v.multiset.clone()))
        .collect();

    Ok(WeightReport {
        algebra: Algebra::B,
        n,
        weight: WeightRepr::of(weight),
        r_vector: weight.r_vector(),
        kernel_dim: primary.kernel.dimension,
        stabilized: kernels.iter().all(|sk| sk.kernel.stabilized),
        tableau_count: tableaux.len(),
        claimed_counts,
        checks,
        weight_multisets: WeightMultisets {
            kernel: branch_reports[0].1.clone(),
            tableau: tableau_multisets,
        },
    })
}

fn verify_gl(weight: &HighestWeight, opts: &VerifyOptions) -> Result<WeightReport, Error> {
    let n = weight.n();
    let system = build_indicator_a(weight)?;
    let kernel = solve_kernel(&system, opts.bound_for(&system))?;
    let tableaux = gl_tableaux_for(weight);
    let only_b = "defined for o(2n+1) weights only";
    let mut checks = vec![not_applicable("RB-BASIS", only_b)];

    let comparisons: Vec<BasisComparison> = opts
        .basis_forms
        .iter()
        .map(|&form| compare_with_kernel(&system, &kernel, form))
        .collect();
    let claimed_counts = comparisons
        .iter()
        .map(|c| ClaimedCount { sign: None, basis_form: c.basis_form, count: c.claimed_count })
        .collect();
    checks.push(basis_check("RA-BASIS", &comparisons));
    for id in ["SOP1-BIJ", "SOP2-COUNT", "SOOT-IMAGE", "SOOT-CONJ"] {
        checks.push(not_applicable(id, only_b));
    }
    checks.push(check(
        "OSNT-COUNT",
        Status::from_bool(kernel.dimension == tableaux.len()),
        json!({ "tableaux": tableaux.len(), "kernel_dim": kernel.dimension }),
    ));

    let kernel_weights = crate::kernel::weight_multiset(&kernel, &system.euler_ops())?;
    let mut tableau_weights: Vec<Vec<i64>> = tableaux.iter().map(|t| t.weight()).collect();
    tableau_weights.sort();
    let mut kernel_rows: Vec<Vec<i64>> = kernel_weights.iter().map(|w| w[..n - 1].to_vec()).collect();
    kernel_rows.sort();
    let mut tableau_rows: Vec<Vec<i64>> = tableaux.iter().map(|t| t.bottom.clone()).collect();
    tableau_rows.sort();
    checks.push(check(
        "LOWROW-MULTISET",
        Status::from_bool(kernel_rows == tableau_rows),
        json!({
            "kernel": kernel_rows,
            "tableaux": tableau_rows,
            "full_weight_match": kernel_weights == tableau_weights,
        }),
    ));
    for variant in WeightVariant::ALL {
        checks.push(not_applicable(&format!("WESS-{}", variant.name()), only_b));
    }

    let mut top = weight.entries2().to_vec();
    top.push(0);
    let dimension = weyl_dim(RootSystem::A(n), &top)?;
    let mut branched = 0;
    for t in &tableaux {
        branched += weyl_dim(RootSystem::A(n - 2), &t.bottom)?;
    }
    checks.push(check(
        "WEYL-BRANCH",
        Status::from_bool(branched == dimension),
        json!({ "sum_over_tableaux": branched, "dimension": dimension }),
    ));

    let mut tableau = BTreeMap::new();
    tableau.insert("gl".to_string(), tableau_weights);
    Ok(WeightReport {
        algebra: Algebra::A,
        n,
        weight: WeightRepr::of(weight),
        r_vector: weight.r_vector(),
        kernel_dim: kernel.dimension,
        stabilized: kernel.stabilized,
        tableau_count: tableaux.len(),
        claimed_counts,
        checks,
        weight_multisets: WeightMultisets { kernel: kernel_weights, tableau },
    })
}

//! The indicator systems of the two restriction problems, and the derived
//! coordinates (u, v) and (x, y) in which the monomial bases are written.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::claimed::ExponentTuple;
use crate::ops::{self, DerivationOp, EulerOp, Sign, T, X1};
use crate::ring::{rat, Monomial, Poly, VarId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
}

/// Which restriction problem: `B` is o(2n+1) restricted to o(2n-1), `A` is
/// gl(n+1) restricted to gl(n-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algebra {
    #[serde(rename = "b")]
    B,
    #[serde(rename = "gl")]
    A,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::B => "b",
            Algebra::A => "gl",
        })
    }
}

/// Highest weight `[m(-n), ..., m(-1)]`, each entry stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    algebra: Algebra,
    entries2: Vec<i64>,
}

impl HighestWeight {
    pub fn new(algebra: Algebra, entries2: Vec<i64>) -> Result<Self, WeightError> {
        let bad = |msg: String| Err(WeightError::InvalidWeight(msg));
        if entries2.len() < 2 {
            return bad(format!("rank must be at least 2, got {}", entries2.len()));
        }
        if entries2.windows(2).any(|w| w[0] < w[1]) {
            return bad(format!("entries must be weakly decreasing: {}", render_doubled(&entries2)));
        }
        if entries2.iter().any(|&e| e < 0) {
            return bad(format!("entries must be non-negative: {}", render_doubled(&entries2)));
        }
        let parity = entries2[0].rem_euclid(2);
        if entries2.iter().any(|e| e.rem_euclid(2) != parity) {
            return bad(format!(
                "entries must be all integers or all half-integers: {}",
                render_doubled(&entries2)
            ));
        }
        if algebra == Algebra::A && parity == 1 {
            return bad(format!("gl weights must be integral: {}", render_doubled(&entries2)));
        }
        Ok(HighestWeight { algebra, entries2 })
    }

    /// Integer entries.
    pub fn integral(algebra: Algebra, entries: &[i64]) -> Result<Self, WeightError> {
        HighestWeight::new(algebra, entries.iter().map(|e| 2 * e).collect())
    }

    /// Parses `"1,1"`, `"1/2,1/2"` or `"3/2, 1/2"`.
    pub fn parse(algebra: Algebra, text: &str) -> Result<Self, WeightError> {
        let entries = text
            .split(',')
            .map(|part| parse_doubled(part.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        HighestWeight::new(algebra, entries)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.entries2.len()
    }

    /// Doubled entries `2 m(-n), ..., 2 m(-1)`.
    pub fn entries2(&self) -> &[i64] {
        &self.entries2
    }

    /// 2 m(-i), for i in 1..=n.
    pub fn m2(&self, i: usize) -> i64 {
        self.entries2[self.n() - i]
    }

    pub fn is_half_integral(&self) -> bool {
        self.entries2[0].rem_euclid(2) == 1
    }

    /// `(r(-n), ..., r(-1))`. The last entry is 2 m(-1) for `B` and m(-1)
    /// for `A`; the others are successive differences.
    pub fn r_vector(&self) -> Vec<u32> {
        let mut r: Vec<u32> = self
            .entries2
            .windows(2)
            .map(|w| ((w[0] - w[1]) / 2) as u32)
            .collect();
        let last = self.entries2[self.n() - 1];
        r.push(match self.algebra {
            Algebra::B => last as u32,
            Algebra::A => (last / 2) as u32,
        });
        r
    }

    /// The gl weight with the given r-vector (r(-1) read with the gl
    /// convention).
    pub fn gl_from_r(r: &[u32]) -> Result<HighestWeight, WeightError> {
        let mut entries = vec![0i64; r.len()];
        let mut acc = 0i64;
        for (slot, &ri) in entries.iter_mut().rev().zip(r.iter().rev()) {
            acc += i64::from(ri);
            *slot = 2 * acc;
        }
        HighestWeight::new(Algebra::A, entries)
    }

    pub fn render(&self) -> String {
        render_doubled(&self.entries2)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.algebra, self.render())
    }
}

fn parse_doubled(text: &str) -> Result<i64, WeightError> {
    let err = || WeightError::InvalidWeight(format!("cannot parse weight entry {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        match den.trim() {
            "2" => Ok(num),
            "1" => Ok(2 * num),
            _ => Err(err()),
        }
    } else {
        let value: i64 = text.parse().map_err(|_| err())?;
        Ok(2 * value)
    }
}

/// Renders doubled entries as integers or `k/2`.
pub fn render_doubled(entries2: &[i64]) -> String {
    entries2
        .iter()
        .map(|&e| render_half(e))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn render_half(e2: i64) -> String {
    if e2 % 2 == 0 {
        (e2 / 2).to_string()
    } else {
        format!("{e2}/2")
    }
}

/// One equation `op^power f = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    pub op: DerivationOp,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorSystem {
    pub weight: HighestWeight,
    pub sign: Option<Sign>,
    pub variables: Vec<VarId>,
    pub equations: Vec<Equation>,
}

impl IndicatorSystem {
    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn algebra(&self) -> Algebra {
        self.weight.algebra()
    }

    pub fn r_vector(&self) -> Vec<u32> {
        self.weight.r_vector()
    }

    pub fn powers(&self) -> Vec<u32> {
        self.equations.iter().map(|e| e.power).collect()
    }

    /// `z[0,1]` for `B`, `z[-1,1]` for `A`.
    pub fn last_variable(&self) -> VarId {
        match self.algebra() {
            Algebra::B => T,
            Algebra::A => X1,
        }
    }

    /// Diagonal operators F(-i,-i) (resp. E(-i,-i)) for i = n, ..., 1.
    pub fn euler_ops(&self) -> Vec<EulerOp> {
        let n = self.n() as i32;
        (1..=n)
            .rev()
            .map(|i| match self.algebra() {
                Algebra::B => EulerOp::b_diagonal(i, n, self.weight.m2(i as usize)),
                Algebra::A => EulerOp::gl_diagonal(i, n, self.weight.m2(i as usize)),
            })
            .collect()
    }

    pub fn annihilates(&self, f: &Poly) -> bool {
        self.equations
            .iter()
            .all(|eq| eq.op.apply_power(eq.power, f).is_zero())
    }
}

fn pair_variables(n: usize) -> Vec<VarId> {
    let n = n as i32;
    (2..=n)
        .rev()
        .flat_map(|k| [VarId::z(-k, -1), VarId::z(-k, 1)])
        .collect()
}

fn upper_equations(n: usize, r: &[u32]) -> Vec<Equation> {
    let n = n as i32;
    (3..=n)
        .rev()
        .map(|k| Equation {
            label: format!("L({},{})", -k, -k + 1),
            op: ops::lowering_shift(k),
            power: r[(n - k) as usize] + 1,
        })
        .collect()
}

pub fn build_indicator_b(weight: &HighestWeight, sign: Sign) -> Result<IndicatorSystem, WeightError> {
    if weight.algebra() != Algebra::B {
        return Err(WeightError::InvalidWeight(format!("expected an o(2n+1) weight, got {weight}")));
    }
    let n = weight.n();
    let r = weight.r_vector();
    let mut equations = upper_equations(n, &r);
    equations.push(Equation {
        label: "L(-2,-1)".into(),
        op: ops::b_shift_second(sign),
        power: r[n - 2] + 1,
    });
    equations.push(Equation {
        label: "L(-1,0)".into(),
        op: DerivationOp::partial(T),
        power: r[n - 1] + 1,
    });
    let mut variables = pair_variables(n);
    variables.push(T);
    Ok(IndicatorSystem {
        weight: weight.clone(),
        sign: Some(sign),
        variables,
        equations,
    })
}

pub fn build_indicator_a(weight: &HighestWeight) -> Result<IndicatorSystem, WeightError> {
    if weight.algebra() != Algebra::A {
        return Err(WeightError::InvalidWeight(format!("expected a gl weight, got {weight}")));
    }
    let n = weight.n();
    let r = weight.r_vector();
    let mut equations = upper_equations(n, &r);
    equations.push(Equation {
        label: "L(-2,-1)".into(),
        op: ops::gl_shift_second(),
        power: r[n - 2] + 1,
    });
    equations.push(Equation {
        label: "L(-1,1)".into(),
        op: DerivationOp::partial(X1),
        power: r[n - 1] + 1,
    });
    let mut variables = pair_variables(n);
    variables.push(X1);
    Ok(IndicatorSystem {
        weight: weight.clone(),
        sign: None,
        variables,
        equations,
    })
}

/// How a basis monomial is assembled from the derived coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisForm {
    /// `(u + v)^p (u - v)^q` factors.
    Paper,
    /// `u^p v^q` factors.
    Plain,
}

impl fmt::Display for BasisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisForm::Paper => "paper",
            BasisForm::Plain => "plain",
        })
    }
}

/// Images of u(-k), v(-k) (k = 2..n) and u(-1) as z-polynomials.
pub fn uv_substitution(n: usize) -> BTreeMap<VarId, Poly> {
    derived_substitution(n, VarId::u, VarId::v, T, {
        Poly::term(rat(1, 2), Monomial::from_factors([(T, 2)]))
    })
}

/// Images of x(-k), y(-k) (k = 2..n) and x(-1) as z-polynomials.
pub fn xy_substitution(n: usize) -> BTreeMap<VarId, Poly> {
    derived_substitution(n, VarId::x, VarId::y, X1, Poly::var(X1))
}

fn derived_substitution(
    n: usize,
    first: fn(i32) -> VarId,
    second: fn(i32) -> VarId,
    base: VarId,
    multiplier: Poly,
) -> BTreeMap<VarId, Poly> {
    let mut map = BTreeMap::new();
    map.insert(first(-1), Poly::var(base));
    for k in 2..=n as i32 {
        let plus = Poly::var(VarId::z(-k, 1));
        let shifted = &multiplier * &Poly::var(VarId::z(-k, -1));
        map.insert(first(-k), &plus + &shifted);
        map.insert(second(-k), &plus - &shifted);
    }
    map
}

fn derived_monomial(
    t: &ExponentTuple,
    first: fn(i32) -> VarId,
    second: fn(i32) -> VarId,
    form: BasisForm,
) -> Poly {
    let mut f = Poly::var(first(-1)).pow(t.p_minus1);
    for (idx, &(p, q)) in t.pairs.iter().enumerate() {
        let k = idx as i32 + 2;
        let (u, v) = (Poly::var(first(-k)), Poly::var(second(-k)));
        let factor = match form {
            BasisForm::Paper => &(&u + &v).pow(p) * &(&u - &v).pow(q),
            BasisForm::Plain => &u.pow(p) * &v.pow(q),
        };
        f = &f * &factor;
    }
    f
}

/// Expands `u(-1)^p(-1) prod (u+v)^p (u-v)^q` (or the plain `u^p v^q`
/// variant) into z-coordinates of the orthogonal problem.
pub fn expand_uv_monomial(t: &ExponentTuple, n: usize, form: BasisForm) -> Poly {
    assert_eq!(t.pairs.len() + 1, n, "exponent tuple has wrong rank");
    derived_monomial(t, VarId::u, VarId::v, form).substitute(&uv_substitution(n))
}

/// Same as [`expand_uv_monomial`] with the gl coordinates x, y.
pub fn expand_xy_monomial(t: &ExponentTuple, n: usize, form: BasisForm) -> Poly {
    assert_eq!(t.pairs.len() + 1, n, "exponent tuple has wrong rank");
    derived_monomial(t, VarId::x, VarId::y, form).substitute(&xy_substitution(n))
}

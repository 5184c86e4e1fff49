//! First-order differential operators with polynomial coefficients: the
//! raising operators that make up the indicator systems, and the diagonal
//! (Euler) operators whose eigenvalues are weights.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{rat, Monomial, Poly, VarId};

/// The coordinate `z[0,1]` of the orthogonal problem.
pub const T: VarId = VarId::z(0, 1);
/// The coordinate `z[-1,1]` of the gl problem.
pub const X1: VarId = VarId::z(-1, 1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpsError {
    #[error("polynomial is not an eigenvector: monomial weights {0} and {1} disagree (doubled)")]
    NotEigenvector(i64, i64),
    #[error("the zero polynomial has no eigenvalue")]
    ZeroVector,
}

/// Sign in front of the `z[0,1]^2/2` term of the operator L(-2,-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// `sum coeff_i * d/d var_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOp {
    terms: Vec<(Poly, VarId)>,
}

impl DerivationOp {
    pub fn new(terms: Vec<(Poly, VarId)>) -> Self {
        DerivationOp {
            terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect(),
        }
    }

    pub fn partial(var: VarId) -> Self {
        DerivationOp::new(vec![(Poly::one(), var)])
    }

    pub fn terms(&self) -> &[(Poly, VarId)] {
        &self.terms
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (coeff, var) in &self.terms {
            let d = f.derivative(*var);
            if d.is_zero() {
                continue;
            }
            for (m, c) in coeff.terms() {
                for (dm, dc) in d.terms() {
                    out.add_term(m.mul(dm), c * dc);
                }
            }
        }
        out
    }

    /// `self` applied `k` times.
    pub fn apply_power(&self, k: u32, f: &Poly) -> Poly {
        let mut out = f.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.apply(&out);
        }
        out
    }
}

impl fmt::Display for DerivationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (coeff, var)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *coeff == Poly::one() {
                write!(f, "d/d{var}")?;
            } else if coeff.len() == 1 {
                write!(f, "{coeff}*d/d{var}")?;
            } else {
                write!(f, "({coeff})*d/d{var}")?;
            }
        }
        Ok(())
    }
}

/// The raising operator L(-k,-k+1) for k >= 3. It has the same shape in
/// both problems.
pub fn lowering_shift(k: i32) -> DerivationOp {
    assert!(k >= 3, "L(-k,-k+1) with k >= 3 expected, got k = {k}");
    DerivationOp::new(vec![
        (Poly::var(VarId::z(-k + 1, -1)), VarId::z(-k, -1)),
        (Poly::var(VarId::z(-k + 1, 1)), VarId::z(-k, 1)),
    ])
}

/// L(-2,-1) of the orthogonal problem: `d/dz[-2,-1] +- z[0,1]^2/2 d/dz[-2,1]`.
pub fn b_shift_second(sign: Sign) -> DerivationOp {
    let coeff = Poly::term(rat(sign.as_i64(), 2), Monomial::from_factors([(T, 2)]));
    DerivationOp::new(vec![
        (Poly::one(), VarId::z(-2, -1)),
        (coeff, VarId::z(-2, 1)),
    ])
}

/// L(-2,-1) of the gl problem: `d/dz[-2,-1] + z[-1,1] d/dz[-2,1]`.
pub fn gl_shift_second() -> DerivationOp {
    DerivationOp::new(vec![
        (Poly::one(), VarId::z(-2, -1)),
        (Poly::var(X1), VarId::z(-2, 1)),
    ])
}

/// `sum sign_i * var_i d/d var_i + shift`, with the shift stored doubled
/// so half-integral weights stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerOp {
    terms: Vec<(i8, VarId)>,
    shift2: i64,
}

impl EulerOp {
    pub fn new(terms: Vec<(i8, VarId)>, shift2: i64) -> Self {
        assert!(terms.iter().all(|(s, _)| *s == 1 || *s == -1));
        EulerOp { terms, shift2 }
    }

    /// F(-i,-i) of the orthogonal problem of rank `n`, `m2` = 2 m(-i).
    pub fn b_diagonal(i: i32, n: i32, m2: i64) -> Self {
        if i >= 2 {
            EulerOp::new(vec![(-1, VarId::z(-i, -1)), (-1, VarId::z(-i, 1))], m2)
        } else {
            let mut terms = Vec::new();
            for k in 2..=n {
                terms.push((1, VarId::z(-k, -1)));
                terms.push((-1, VarId::z(-k, 1)));
            }
            terms.push((-1, T));
            EulerOp::new(terms, m2)
        }
    }

    /// E(-i,-i) of the gl problem of rank `n`, `m2` = 2 m(-i).
    pub fn gl_diagonal(i: i32, n: i32, m2: i64) -> Self {
        if i >= 2 {
            EulerOp::new(vec![(-1, VarId::z(-i, -1)), (-1, VarId::z(-i, 1))], m2)
        } else {
            let mut terms: Vec<(i8, VarId)> = (2..=n).map(|k| (1, VarId::z(-k, -1))).collect();
            terms.push((-1, X1));
            EulerOp::new(terms, m2)
        }
    }

    /// E(1,1) of the gl problem of rank `n`.
    pub fn gl_e11(n: i32) -> Self {
        let mut terms: Vec<(i8, VarId)> = (2..=n).map(|k| (1, VarId::z(-k, 1))).collect();
        terms.push((1, X1));
        EulerOp::new(terms, 0)
    }

    pub fn shift2(&self) -> i64 {
        self.shift2
    }

    /// Doubled eigenvalue on a single monomial.
    pub fn monomial_eigenvalue2(&self, m: &Monomial) -> i64 {
        self.shift2
            + 2 * self
                .terms
                .iter()
                .map(|&(s, v)| i64::from(s) * i64::from(m.exponent(v)))
                .sum::<i64>()
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        Poly::from_terms(f.terms().map(|(m, c)| {
            let ev = self.monomial_eigenvalue2(m);
            (m.clone(), c * rat(ev, 2))
        }))
    }

    /// The common (doubled) eigenvalue of all monomials of `f`.
    pub fn eigenvalue2(&self, f: &Poly) -> Result<i64, OpsError> {
        let mut values = f.monomials().map(|m| self.monomial_eigenvalue2(m));
        let first = values.next().ok_or(OpsError::ZeroVector)?;
        for other in values {
            if other != first {
                return Err(OpsError::NotEigenvector(first, other));
            }
        }
        Ok(first)
    }
}

impl fmt::Display for EulerOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (s, v)) in self.terms.iter().enumerate() {
            match (idx, *s) {
                (0, -1) => write!(f, "-")?,
                (0, _) => {}
                (_, -1) => write!(f, " - ")?,
                _ => write!(f, " + ")?,
            }
            write!(f, "{v}*d/d{v}")?;
        }
        let shift = rat(self.shift2, 2);
        if !shift.is_zero() || self.terms.is_empty() {
            write!(f, " + {shift}")?;
        }
        Ok(())
    }
}

pub fn euler_eigenvalue(op: &EulerOp, f: &Poly) -> Result<i64, OpsError> {
    op.eigenvalue2(f)
}

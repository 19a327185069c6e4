//! Exact implication over step functions, polymatroids and positive polymatroids;
//! least relaxation factors; Shannon-inequality verification.
//!
//! The polymatroid queries solve the certificate side of the LP:
//! columns `−vec(e_i)` for the elemental inequalities plus antecedent columns,
//! right-hand side `vec(τ)`, one row per nonempty subset. Feasibility yields a
//! [`Certificate`]; a Farkas vector is itself a polymatroid that refutes the query.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Certificate, VerifiedCertificate};
use crate::constraint::{Constraint, Implication};
use crate::elemental::{elemental_inequalities, ElementalInequality};
use crate::error::{Error, Result};
use crate::lp::{solve, Column, LpOutcome, LpProblem};
use crate::models::imeasure::{atom_set, atom_set_union};
use crate::models::step::step_function;
use crate::scalar::{Rational, Scalar};
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelClass {
    /// `S_n`, the `2^n − 1` step functions.
    StepFunctions,
    /// `Γ_n`, all polymatroids.
    Polymatroids,
    /// `Δ_n = P_n`, polymatroids with nonnegative I-measure.
    PositivePolymatroids,
}

impl FromStr for ModelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "step" => Ok(ModelClass::StepFunctions),
            "gamma" => Ok(ModelClass::Polymatroids),
            "positive" => Ok(ModelClass::PositivePolymatroids),
            other => Err(Error::OutOfRange(format!(
                "unknown model class `{other}` (expected step, gamma or positive)"
            ))),
        }
    }
}

/// Outcome of an implication or inequality query.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    /// When `holds` is false: a model with `h(Σ) = 0` (or the inequality violated) and `h(τ) > 0`.
    pub witness: Option<SetFunction<Rational>>,
    /// A Shannon certificate, for polymatroid queries that hold.
    pub certificate: Option<VerifiedCertificate>,
}

impl Verdict {
    fn holds(certificate: Option<VerifiedCertificate>) -> Self {
        Verdict {
            holds: true,
            witness: None,
            certificate,
        }
    }

    fn fails(witness: SetFunction<Rational>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            certificate: None,
        }
    }
}

/// Least `λ` with `h(τ) ≤ λ·h(Σ)` on all polymatroids.
#[derive(Debug, Clone, PartialEq)]
pub struct MinLambda {
    /// `None` when no finite `λ` exists.
    pub lambda: Option<Rational>,
    /// Certificate with every `λ_σ` equal to the optimum.
    pub certificate: Option<VerifiedCertificate>,
    /// Optimal polymatroid: `h(Σ) ≤ 1` and `h(τ) = λ`.
    pub tight: Option<SetFunction<Rational>>,
    /// When unbounded: a polymatroid with `h(Σ) = 0` and `h(τ) > 0`.
    pub witness: Option<SetFunction<Rational>>,
}

fn row(w: VarSet) -> usize {
    w.index() - 1
}

fn column(terms: &BTreeMap<VarSet, i64>, sign: i64) -> Column {
    terms
        .iter()
        .map(|(&w, &c)| (row(w), Rational::from_integer((c * sign).into())))
        .collect()
}

fn rhs(n: usize, terms: impl IntoIterator<Item = (VarSet, Rational)>) -> Vec<Rational> {
    let mut b = vec![Rational::zero(); (1 << n) - 1];
    for (w, v) in terms {
        if !w.is_empty() {
            b[row(w)] = &b[row(w)] + v;
        }
    }
    b
}

fn elemental_columns(n: usize) -> (Vec<ElementalInequality>, Vec<Column>) {
    let els = elemental_inequalities(n);
    let cols = els
        .iter()
        .map(|e| {
            e.terms(n)
                .into_iter()
                .filter(|(w, _)| !w.is_empty())
                .map(|(w, c)| (row(w), Rational::from_integer((-c).into())))
                .collect()
        })
        .collect();
    (els, cols)
}

/// Set function from LP row values, scaled to coprime integers.
fn primitive_set_function(universe: &Arc<VarUniverse>, y: &[Rational]) -> SetFunction<Rational> {
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for v in y {
        den = den.lcm(v.denom());
        num = num.gcd(v.numer());
    }
    let scale = if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(den, num)
    };
    SetFunction::from_fn(universe.clone(), |w| &y[row(w)] * &scale)
}

/// Exact witness check: `h ∈ Γ_n`, `h(σ) = 0` for all antecedents and `h(τ) > 0`.
pub fn is_polymatroid_witness(imp: &Implication, h: &SetFunction<Rational>) -> bool {
    h.is_polymatroid()
        && imp.antecedents.iter().all(|c| c.eval(h).is_zero())
        && imp.consequent.eval(h).is_positive()
}

fn coords(imp: &Implication, c: &Constraint) -> BTreeMap<VarSet, i64> {
    c.terms(imp.n())
}

/// Lowest `U` (by bitmask) with `h_U(Σ) = 0` and `h_U(τ) > 0`.
pub fn step_counterexample(imp: &Implication) -> Option<VarSet> {
    let full = imp.universe.full().bits();
    (0..full)
        .into_par_iter()
        .find_first(|&m| {
            let u = VarSet::from_bits(m);
            imp.consequent.step_value(u) > 0 && imp.antecedents.iter().all(|c| c.step_value(u) == 0)
        })
        .map(VarSet::from_bits)
}

pub fn ei_check(imp: &Implication, class: ModelClass) -> Result<Verdict> {
    match class {
        ModelClass::StepFunctions => Ok(match step_counterexample(imp) {
            Some(u) => Verdict::fails(step_function(&imp.universe, u)?),
            None => Verdict::holds(None),
        }),
        ModelClass::Polymatroids => ei_check_polymatroids(imp),
        ModelClass::PositivePolymatroids => {
            let n = imp.n();
            let covered = atom_set_union(&imp.antecedents, n)?;
            let missing = atom_set(&imp.consequent, n)?.difference(&covered);
            Ok(match missing.first() {
                Some(&u) => Verdict::fails(step_function(&imp.universe, u)?),
                None => Verdict::holds(None),
            })
        }
    }
}

fn reject_differential(imp: &Implication) -> Result<()> {
    if imp.has_differential() {
        return Err(Error::UnsupportedConstraint(
            "differential constraints are decided over positive polymatroids only".into(),
        ));
    }
    Ok(())
}

fn ei_check_polymatroids(imp: &Implication) -> Result<Verdict> {
    reject_differential(imp)?;
    let n = imp.n();
    let (els, mut columns) = elemental_columns(n);
    let k = els.len();
    columns.extend(imp.antecedents.iter().map(|c| column(&coords(imp, c), 1)));
    let b = rhs(
        n,
        coords(imp, &imp.consequent)
            .into_iter()
            .map(|(w, c)| (w, Rational::from_integer(c.into()))),
    );
    let p = LpProblem {
        rows: (1 << n) - 1,
        c: vec![Rational::zero(); columns.len()],
        columns,
        b,
    };
    match solve(&p) {
        LpOutcome::Optimal { x, .. } => {
            let mut cert = Certificate::new(x[k..].to_vec());
            for (e, t) in els.into_iter().zip(&x[..k]) {
                if !t.is_zero() {
                    cert.add_elemental(e, t.clone());
                }
            }
            Ok(Verdict::holds(Some(cert.verify(imp)?)))
        }
        LpOutcome::Infeasible { farkas } => {
            let h = primitive_set_function(&imp.universe, &farkas);
            if !is_polymatroid_witness(imp, &h) {
                return Err(Error::Internal(
                    "Farkas vector is not a refuting polymatroid".into(),
                ));
            }
            Ok(Verdict::fails(h))
        }
        LpOutcome::Unbounded => Err(Error::Internal("feasibility LP reported unbounded".into())),
    }
}

pub fn min_lambda(imp: &Implication) -> Result<MinLambda> {
    reject_differential(imp)?;
    let n = imp.n();
    let (els, mut columns) = elemental_columns(n);
    let k = els.len();
    let mut sum_terms: BTreeMap<VarSet, i64> = BTreeMap::new();
    for c in &imp.antecedents {
        for (w, v) in coords(imp, c) {
            *sum_terms.entry(w).or_insert(0) += v;
        }
    }
    columns.push(column(&sum_terms, 1));
    let mut cost = vec![Rational::zero(); k];
    cost.push(Rational::one());
    let b = rhs(
        n,
        coords(imp, &imp.consequent)
            .into_iter()
            .map(|(w, c)| (w, Rational::from_integer(c.into()))),
    );
    let p = LpProblem {
        rows: (1 << n) - 1,
        columns,
        b,
        c: cost,
    };
    match solve(&p) {
        LpOutcome::Optimal { x, y, value } => {
            let mut cert = Certificate::new(vec![x[k].clone(); imp.antecedents.len()]);
            for (e, t) in els.into_iter().zip(&x[..k]) {
                if !t.is_zero() {
                    cert.add_elemental(e, t.clone());
                }
            }
            let tight = SetFunction::from_fn(imp.universe.clone(), |w| y[row(w)].clone());
            Ok(MinLambda {
                lambda: Some(value),
                certificate: Some(cert.verify(imp)?),
                tight: Some(tight),
                witness: None,
            })
        }
        LpOutcome::Infeasible { farkas } => {
            let h = primitive_set_function(&imp.universe, &farkas);
            if !is_polymatroid_witness(imp, &h) {
                return Err(Error::Internal(
                    "Farkas vector is not a refuting polymatroid".into(),
                ));
            }
            Ok(MinLambda {
                lambda: None,
                certificate: None,
                tight: None,
                witness: Some(h),
            })
        }
        LpOutcome::Unbounded => Err(Error::Internal("λ is bounded below by zero".into())),
    }
}

/// Decides `Σ_j c_j h(σ_j) ≥ h(target)` over all polymatroids.
///
/// On success the certificate's antecedents are the `σ_j` with `λ_j = c_j`.
/// On failure the witness satisfies `h(target) > Σ_j c_j h(σ_j)`.
pub fn verify_inequality(
    universe: &Arc<VarUniverse>,
    terms: &[(Rational, Constraint)],
    target: &Constraint,
) -> Result<Verdict> {
    if let Some((c, _)) = terms.iter().find(|(c, _)| c.is_negative()) {
        return Err(Error::Precondition(format!("negative coefficient {c}")));
    }
    let imp = Implication::new(
        universe.clone(),
        terms.iter().map(|(_, c)| c.clone()).collect(),
        target.clone(),
    )?;
    let n = imp.n();
    let (els, columns) = elemental_columns(n);
    let mut b_terms: Vec<(VarSet, Rational)> = coords(&imp, target)
        .into_iter()
        .map(|(w, c)| (w, Rational::from_integer(c.into())))
        .collect();
    for (coef, c) in terms {
        for (w, v) in coords(&imp, c) {
            b_terms.push((w, -(coef * Rational::from_integer(v.into()))));
        }
    }
    let p = LpProblem {
        rows: (1 << n) - 1,
        c: vec![Rational::zero(); columns.len()],
        columns,
        b: rhs(n, b_terms),
    };
    match solve(&p) {
        LpOutcome::Optimal { x, .. } => {
            let mut cert = Certificate::new(terms.iter().map(|(c, _)| c.clone()).collect());
            for (e, t) in els.into_iter().zip(&x) {
                if !t.is_zero() {
                    cert.add_elemental(e, t.clone());
                }
            }
            Ok(Verdict::holds(Some(cert.verify(&imp)?)))
        }
        LpOutcome::Infeasible { farkas } => {
            let h = primitive_set_function(universe, &farkas);
            if !h.is_polymatroid() || !inequality_violation(&h, terms, target).is_positive() {
                return Err(Error::Internal(
                    "Farkas vector does not violate the inequality".into(),
                ));
            }
            Ok(Verdict::fails(h))
        }
        LpOutcome::Unbounded => Err(Error::Internal("feasibility LP reported unbounded".into())),
    }
}

/// `h(target) − Σ_j c_j h(σ_j)`; positive iff `h` violates the inequality.
pub fn inequality_violation<T: Scalar>(
    h: &SetFunction<T>,
    terms: &[(T, Constraint)],
    target: &Constraint,
) -> T {
    let rhs = T::sum_iter(terms.iter().map(|(c, s)| c.clone() * s.eval(h)));
    target.eval(h) - rhs
}

/// Right side minus left side of
/// `I(C;D) ≤ I(C;D|A) + (k+3)/2·I(C;D|B) + I(A;B) + (k−1)/2·I(B;C|D) + 1/k·I(B;D|C)`.
pub fn matus_slack<T: Scalar>(h: &SetFunction<T>, k: i64) -> Result<T> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("k = {k} must be at least 1")));
    }
    let u = h.universe();
    let [a, b, c, d] = ["A", "B", "C", "D"].map(|name| u.var(name));
    let (a, b, c, d) = (a?, b?, c?, d?);
    let e = VarSet::EMPTY;
    let mi = |x, y, z| h.mutual_info_unchecked(x, y, z);
    let rhs = T::sum_iter([
        mi(c, d, a),
        T::from_ratio(k + 3, 2) * mi(c, d, b),
        mi(a, b, e),
        T::from_ratio(k - 1, 2) * mi(b, c, d),
        T::from_ratio(1, k) * mi(b, d, c),
    ]);
    Ok(rhs - mi(c, d, e))
}

pub fn matus_inequality_check<T: Scalar>(h: &SetFunction<T>, k: i64) -> Result<bool> {
    Ok(matus_slack(h, k)?.near_nonneg())
}

//! Constructive Shannon certificates for implications whose antecedents are
//! saturated CIs or conditionals.
//!
//! Each builder follows an inductive argument over step functions and emits a
//! [`Certificate`] together with the derivation that produced it. Every
//! certificate is checked exactly before it is returned, and every recursion
//! level re-runs the step-function oracle, so a broken argument surfaces as an
//! error rather than an unsound result.

mod cover;
mod disjoint;
mod fd;
mod quadratic;

pub use cover::elemental_cover_certificate;
pub use disjoint::disjoint_saturated_unit;
pub use fd::fd_consequent_certificate;
pub use quadratic::{chain_decompose, quadratic_certificate};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{Certificate, VerifiedCertificate};
use crate::constraint::{cis_disjoint, Ci, Constraint, Implication};
use crate::deciders::step_counterexample;
use crate::elemental::{mi_elementals, ElementalInequality};
use crate::error::{Error, Result};
use crate::scalar::{format_pq, Rational};
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DerivationRule {
    /// `h(σ) = h(σ1) + h(σ2)` by the chain rule.
    ChainSplitSigma,
    /// `h(τ) ≤ Σ h(τ_i)` by the chain rule, with nonnegative slack.
    ChainSplitTau,
    /// `h(τ) ≤ h(σ)` for `X⊆A, Y⊆B, C⊆Z⊆ABC`, applied inside a split.
    TechnicalLemma,
    /// A goal closed directly: by the same lemma, trivially, or by LP.
    Base,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: DerivationRule,
    pub before: Vec<Ci>,
    pub after: Vec<Ci>,
    /// The antecedent piece with `h_Z(σ) = 1` selected at this step.
    pub witness: Option<Ci>,
    /// `|Ω − Z|` of the goal being proved, for elemental goals.
    pub deficit: Option<usize>,
}

impl DerivationStep {
    fn new(rule: DerivationRule, before: Vec<Ci>, after: Vec<Ci>) -> Self {
        DerivationStep {
            rule,
            before,
            after,
            witness: None,
            deficit: None,
        }
    }

    fn witness(mut self, sigma: Ci) -> Self {
        self.witness = Some(sigma);
        self
    }

    fn deficit(mut self, d: usize) -> Self {
        self.deficit = Some(d);
        self
    }

    /// Checks the step's local identity or precondition.
    pub fn is_locally_valid(&self, n: usize) -> bool {
        match self.rule {
            DerivationRule::ChainSplitSigma => {
                let [whole] = self.before[..] else {
                    return false;
                };
                let [p, q] = self.after[..] else { return false };
                chain_split_holds(whole, &[p, q])
            }
            DerivationRule::ChainSplitTau => {
                let [whole] = self.before[..] else {
                    return false;
                };
                !self.after.is_empty() && chain_bound_holds(n, whole, &self.after)
            }
            DerivationRule::TechnicalLemma => match (self.witness, self.after.first()) {
                (Some(s), Some(t)) => lemma_applies(&s, t).is_some(),
                _ => false,
            },
            DerivationRule::Base => true,
        }
    }

    pub fn to_json(&self, u: &VarUniverse) -> Value {
        let show = |cs: &[Ci]| -> Vec<String> {
            cs.iter().map(|c| Constraint::Ci(*c).display(u)).collect()
        };
        json!({
            "rule": self.rule,
            "before": show(&self.before),
            "after": show(&self.after),
            "witness": self.witness.map(|c| Constraint::Ci(c).display(u)),
            "deficit": self.deficit,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationResult {
    pub certificate: VerifiedCertificate,
    pub derivation: Vec<DerivationStep>,
    pub bound_claimed: Rational,
}

impl RelaxationResult {
    pub fn to_json(&self) -> Value {
        let u = &self.certificate.implication().universe;
        json!({
            "certificate": self.certificate.to_json(),
            "bound_claimed": format_pq(&self.bound_claimed),
            "derivation": self.derivation.iter().map(|s| s.to_json(u)).collect::<Vec<_>>(),
        })
    }
}

/// `Σ∖{σ_index}` after checking that `σ` and `τ` are disjoint and that the
/// step-function implication survives the removal.
pub fn remove_disjoint_antecedent(imp: &Implication, index: usize) -> Result<Implication> {
    let sigma = imp
        .antecedents
        .get(index)
        .ok_or_else(|| Error::OutOfRange(format!("no antecedent {index}")))?;
    let tau = imp.consequent.expect_ci()?;
    if !cis_disjoint(sigma.expect_ci()?, tau) {
        return Err(Error::Precondition(format!(
            "{} and {} are not disjoint",
            sigma.display(&imp.universe),
            imp.consequent.display(&imp.universe)
        )));
    }
    require_step_implication(imp)?;
    let mut rest = imp.antecedents.clone();
    rest.remove(index);
    let reduced = Implication::new(imp.universe.clone(), rest, imp.consequent.clone())?;
    if let Some(w) = step_counterexample(&reduced) {
        return Err(Error::Internal(format!(
            "removing a disjoint antecedent broke the implication at step {}",
            imp.universe.fmt_set(w)
        )));
    }
    Ok(reduced)
}

fn require_step_implication(imp: &Implication) -> Result<()> {
    match step_counterexample(imp) {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "implication fails on step functions: h_{{{}}} refutes it",
            imp.universe.fmt_set(w)
        ))),
    }
}

/// A step function `h_U` with `h_U(τ) = 1` and `h_U(σ) = 0` for all `σ`.
fn step_refutation<'a>(
    n: usize,
    sigma: impl Iterator<Item = &'a Ci> + Clone,
    tau: &Ci,
) -> Option<VarSet> {
    let full = VarSet::full(n);
    (0..full.bits())
        .map(VarSet::from_bits)
        .filter(|&u| tau.step_value(u))
        .find(|&u| sigma.clone().all(|s| !s.step_value(u)))
}

/// `Σ_A ⊆ Σ` checked by the step-function oracle at one recursion level.
fn recheck(n: usize, ledger: &Ledger, active: &[usize], tau: &Ci, u: &VarUniverse) -> Result<()> {
    match step_refutation(n, active.iter().map(|&p| &ledger.pieces[p].ci), tau) {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "step function h_{{{}}} refutes {} from the remaining antecedents",
            u.fmt_set(w),
            Constraint::Ci(*tau).display(u)
        ))),
    }
}

/// Slack terms of `h(σ) − h(τ)` when `X⊆A, Y⊆B, C⊆Z⊆ABC`:
/// `I(Z_A;B|C) + I(A;Z_B|CZ_A) + I(A;B|ZX) + I(X;B|ZY)`, with `Z_A = Z∩A`, `Z_B = Z∩B`.
fn lemma_slack(sigma: &Ci, tau: &Ci) -> Vec<Ci> {
    let (a, b, c) = (sigma.a, sigma.b, sigma.given);
    let (x, y, z) = (tau.a, tau.b, tau.given);
    let za = z & a;
    let zb = z & b;
    vec![
        Ci::new(za, b, c),
        Ci::new(a, zb, c | za),
        Ci::new(a, b, z | x),
        Ci::new(x, b, z | y),
    ]
}

/// Orients `σ` so that the lemma's preconditions hold for `τ`, if possible.
fn lemma_applies(sigma: &Ci, tau: &Ci) -> Option<Ci> {
    let fits = |s: &Ci| {
        tau.a.is_subset(s.a)
            && tau.b.is_subset(s.b)
            && s.given.is_subset(tau.given)
            && tau.given.is_subset(s.vars())
    };
    let swapped = Ci::new(sigma.b, sigma.a, sigma.given);
    [*sigma, swapped].into_iter().find(fits)
}

fn chain_split_holds(whole: Ci, parts: &[Ci]) -> bool {
    linear_form(&[whole]) == linear_form(parts)
}

/// `Σ h(parts) − h(whole)` is a sum of conditional mutual informations.
fn chain_bound_holds(n: usize, whole: Ci, parts: &[Ci]) -> bool {
    let lhs = linear_form(parts);
    let rhs = linear_form(&[whole]);
    if lhs == rhs {
        return true;
    }
    let mut diff = lhs;
    for (w, c) in rhs {
        *diff.entry(w).or_insert(0) -= c;
    }
    diff.retain(|_, c| *c != 0);
    let full = VarSet::full(n);
    (0..full.bits()).map(VarSet::from_bits).any(|k| {
        (full - k).iter().any(|i| {
            (full - k).iter().any(|j| {
                let t = linear_form(&[Ci::new(VarSet::singleton(i), VarSet::singleton(j), k)]);
                t == diff
            })
        })
    })
}

fn linear_form(cis: &[Ci]) -> BTreeMap<VarSet, i64> {
    let mut out = BTreeMap::new();
    for ci in cis {
        for (w, c) in ci.terms() {
            *out.entry(w).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PieceState {
    Live,
    Split,
    Consumed,
}

#[derive(Debug, Clone)]
struct Piece {
    ci: Ci,
    root: usize,
    state: PieceState,
}

/// Chain-rule pieces of the root antecedents, and the elemental slack collected so far.
///
/// Every root's measure equals the sum of its live and consumed pieces. A root
/// with a consumed piece is charged coefficient 1, and its live pieces are
/// written off as nonnegative elemental slack.
#[derive(Debug, Clone)]
struct Ledger {
    n: usize,
    roots: usize,
    pieces: Vec<Piece>,
    theta: BTreeMap<ElementalInequality, Rational>,
    steps: Vec<DerivationStep>,
}

impl Ledger {
    fn new(n: usize, roots: &[Ci]) -> Self {
        Ledger {
            n,
            roots: roots.len(),
            pieces: roots
                .iter()
                .enumerate()
                .map(|(root, &ci)| Piece {
                    ci,
                    root,
                    state: PieceState::Live,
                })
                .collect(),
            theta: BTreeMap::new(),
            steps: Vec::new(),
        }
    }

    fn split(&mut self, p: usize, first: Ci, second: Ci, witness: Option<Ci>) -> (usize, usize) {
        debug_assert_eq!(self.pieces[p].state, PieceState::Live);
        let whole = self.pieces[p].ci;
        let root = self.pieces[p].root;
        self.pieces[p].state = PieceState::Split;
        let i = self.pieces.len();
        for ci in [first, second] {
            self.pieces.push(Piece {
                ci,
                root,
                state: PieceState::Live,
            });
        }
        let mut step = DerivationStep::new(
            DerivationRule::ChainSplitSigma,
            vec![whole],
            vec![first, second],
        );
        step.witness = witness;
        self.steps.push(step);
        (i, i + 1)
    }

    fn consume(&mut self, p: usize) {
        debug_assert_eq!(self.pieces[p].state, PieceState::Live);
        self.pieces[p].state = PieceState::Consumed;
    }

    fn add_slack(&mut self, ci: &Ci, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        for e in mi_elementals(self.n, ci.a, ci.b, ci.given) {
            let slot = self.theta.entry(e).or_insert_with(Rational::zero);
            *slot = &*slot + coeff;
        }
    }

    /// Charges `τ ≤ σ` to piece `p` via the lemma, after orienting `σ`.
    fn apply_lemma(&mut self, p: usize, tau: &Ci) -> Result<Ci> {
        let oriented = lemma_applies(&self.pieces[p].ci, tau).ok_or_else(|| {
            Error::Internal("lemma preconditions fail on the selected antecedent".into())
        })?;
        for s in lemma_slack(&oriented, tau) {
            self.add_slack(&s, &Rational::one());
        }
        self.consume(p);
        Ok(oriented)
    }

    /// Root coefficients and the elemental multipliers that close the proof.
    fn finish(mut self) -> Proof {
        let mut lambdas = vec![Rational::zero(); self.roots];
        for piece in &self.pieces {
            if piece.state == PieceState::Consumed {
                lambdas[piece.root] = Rational::one();
            }
        }
        let live: Vec<Ci> = self
            .pieces
            .iter()
            .filter(|p| p.state == PieceState::Live && lambdas[p.root].is_one())
            .map(|p| p.ci)
            .collect();
        for ci in live {
            self.add_slack(&ci, &Rational::one());
        }
        Proof {
            lambdas,
            theta: self.theta,
            steps: self.steps,
        }
    }
}

/// A proof of `h(τ) ≤ Σ λ_r h(root_r)` with explicit elemental slack.
#[derive(Debug, Clone)]
struct Proof {
    lambdas: Vec<Rational>,
    theta: BTreeMap<ElementalInequality, Rational>,
    steps: Vec<DerivationStep>,
}

impl Proof {
    fn empty(roots: usize) -> Self {
        Proof {
            lambdas: vec![Rational::zero(); roots],
            theta: BTreeMap::new(),
            steps: Vec::new(),
        }
    }

    fn absorb(&mut self, other: Proof) {
        for (l, m) in self.lambdas.iter_mut().zip(other.lambdas) {
            *l = &*l + m;
        }
        for (e, t) in other.theta {
            let slot = self.theta.entry(e).or_insert_with(Rational::zero);
            *slot = &*slot + t;
        }
        self.steps.extend(other.steps);
    }
}

/// Maps a proof over saturated roots back to the original antecedents and verifies it.
///
/// Each original antecedent gets the largest coefficient of its roots; the
/// difference on the other roots is paid with their own elemental slack.
fn conclude(
    imp: &Implication,
    roots: &[(Ci, usize)],
    proof: Proof,
    bound: Rational,
) -> Result<RelaxationResult> {
    let n = imp.n();
    let mut lambdas = vec![Rational::zero(); imp.antecedents.len()];
    for ((_, origin), l) in roots.iter().zip(&proof.lambdas) {
        if *l > lambdas[*origin] {
            lambdas[*origin] = l.clone();
        }
    }
    let mut cert = Certificate::new(lambdas.clone());
    for (e, t) in proof.theta {
        cert.add_elemental(e, t);
    }
    for ((ci, origin), l) in roots.iter().zip(&proof.lambdas) {
        let gap = &lambdas[*origin] - l;
        if !gap.is_zero() {
            for e in mi_elementals(n, ci.a, ci.b, ci.given) {
                cert.add_elemental(e, gap.clone());
            }
        }
    }
    let certificate = cert.verify(imp)?;
    if certificate.lambda() > bound {
        return Err(Error::Internal(format!(
            "certificate coefficient {} exceeds the claimed bound {}",
            certificate.lambda(),
            bound
        )));
    }
    Ok(RelaxationResult {
        certificate,
        derivation: proof.steps,
        bound_claimed: bound,
    })
}

/// The consequent as a CI, rejecting I-measure constraints.
fn consequent_ci(imp: &Implication) -> Result<Ci> {
    imp.consequent.as_ci().copied().ok_or_else(|| {
        Error::UnsupportedConstraint("the consequent must be a CI or conditional".into())
    })
}

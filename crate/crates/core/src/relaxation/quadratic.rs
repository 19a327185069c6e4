//! Certificates with coefficient at most `⌊n²/4⌋` for arbitrary CI consequents.

use super::cover::cover;
use super::fd::fd;
use super::{
    conclude, consequent_ci, require_step_implication, DerivationRule, DerivationStep, Ledger,
    Proof, RelaxationResult,
};
use crate::constraint::{saturate_with_origins, Ci, Implication};
use crate::error::Result;
use crate::scalar::Rational;
use crate::varset::VarSet;

/// Splits `I(Y;Z|X)` into elemental CIs whose measures sum to it exactly.
///
/// With `S = (Y∩Z)∖X`, `Y2 = Y∖XS`, `Z2 = Z∖XS`, the parts are
/// `h(s | X s_<)` for `s ∈ S` followed by `I(y; z | XS y_< z_<)` for
/// `y ∈ Y2`, `z ∈ Z2`: `|S| + |Y2|·|Z2|` terms in all.
pub fn chain_decompose(tau: &Ci) -> Vec<Ci> {
    let (s, y2, z2, x) = overlap_parts(tau);
    let mut out = Vec::with_capacity(s.len() + y2.len() * z2.len());
    let mut ctx = x;
    for v in s.iter() {
        out.push(Ci::conditional(ctx, VarSet::singleton(v)));
        ctx = ctx.with(v);
    }
    out.extend(independence_parts(y2, z2, ctx));
    out
}

fn overlap_parts(tau: &Ci) -> (VarSet, VarSet, VarSet, VarSet) {
    let x = tau.given;
    let y = tau.a - x;
    let z = tau.b - x;
    let s = y & z;
    (s, y - s, z - s, x)
}

fn independence_parts(y: VarSet, z: VarSet, k: VarSet) -> Vec<Ci> {
    let mut out = Vec::new();
    let mut y_prev = VarSet::EMPTY;
    for a in y.iter() {
        let mut z_prev = VarSet::EMPTY;
        for b in z.iter() {
            out.push(Ci::new(
                VarSet::singleton(a),
                VarSet::singleton(b),
                k | y_prev | z_prev,
            ));
            z_prev = z_prev.with(b);
        }
        y_prev = y_prev.with(a);
    }
    out
}

/// Proves `h(τ) ≤ λ·h(Σ)` with `λ ≤ [S ≠ ∅] + |Y2|·|Z2| ≤ ⌊n²/4⌋` (for `n ≥ 2`).
///
/// The overlap part `X → S` is certified by the conditional-consequent
/// construction with coefficient 1; each elemental part of `I(Y2;Z2|XS)` is
/// certified separately against all antecedents, so coefficients add up.
pub fn quadratic_certificate(imp: &Implication) -> Result<RelaxationResult> {
    let tau = consequent_ci(imp)?;
    let n = imp.n();
    let roots = saturate_with_origins(&imp.antecedents, n)?;
    require_step_implication(imp)?;
    let cis: Vec<Ci> = roots.iter().map(|(c, _)| *c).collect();
    let all: Vec<usize> = (0..cis.len()).collect();

    let (s, y2, z2, x) = overlap_parts(&tau);
    let overlap = Ci::conditional(x, s);
    let parts = independence_parts(y2, z2, x | s);

    let mut proof = Proof::empty(cis.len());
    let mut after = Vec::new();
    if !s.is_empty() {
        after.push(overlap);
    }
    after.extend(parts.iter().copied());
    if !after.is_empty() {
        proof.steps.push(DerivationStep::new(
            DerivationRule::ChainSplitTau,
            vec![tau],
            after,
        ));
    }
    if !s.is_empty() {
        let mut ledger = Ledger::new(n, &cis);
        fd(&mut ledger, all.clone(), x, s, &imp.universe)?;
        proof.absorb(ledger.finish());
    }
    for part in &parts {
        let mut ledger = Ledger::new(n, &cis);
        cover(&mut ledger, all.clone(), *part, &imp.universe)?;
        proof.absorb(ledger.finish());
    }
    let mut bound = Rational::from_integer(((y2.len() * z2.len()) as i64).into());
    if !s.is_empty() {
        bound += Rational::from_integer(1.into());
    }
    conclude(imp, &roots, proof, bound)
}

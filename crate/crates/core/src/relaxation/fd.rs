//! Unit certificates for conditional consequents `Z → X`.

use num_traits::One;

use super::cover::cover;
use super::{
    conclude, consequent_ci, recheck, require_step_implication, DerivationRule, DerivationStep,
    Ledger, RelaxationResult,
};
use crate::constraint::{saturate_with_origins, Ci, Implication};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::varset::{VarSet, VarUniverse};

/// Proves `h(X|Z) ≤ h(Σ)` for saturated or conditional antecedents, with every
/// antecedent coefficient at most 1.
pub fn fd_consequent_certificate(imp: &Implication) -> Result<RelaxationResult> {
    let tau = consequent_ci(imp)?;
    if !tau.is_conditional() {
        return Err(Error::Precondition(format!(
            "{} is not a conditional",
            imp.consequent.display(&imp.universe)
        )));
    }
    let roots = saturate_with_origins(&imp.antecedents, imp.n())?;
    require_step_implication(imp)?;
    let cis: Vec<Ci> = roots.iter().map(|(c, _)| *c).collect();
    let mut ledger = Ledger::new(imp.n(), &cis);
    fd(
        &mut ledger,
        (0..cis.len()).collect(),
        tau.given,
        tau.a,
        &imp.universe,
    )?;
    conclude(imp, &roots, ledger.finish(), Rational::one())
}

/// Induction on `|X∖Z|`: peel off `u`, cover `Z → u` with one part of every
/// antecedent and recurse on `Zu → X∖u` with the other parts.
pub(super) fn fd(
    ledger: &mut Ledger,
    active: Vec<usize>,
    z: VarSet,
    x: VarSet,
    u: &VarUniverse,
) -> Result<()> {
    let n = ledger.n;
    let x = x - z;
    let tau = Ci::conditional(z, x);
    let Some(v) = x.first() else {
        ledger
            .steps
            .push(DerivationStep::new(DerivationRule::Base, vec![tau], vec![]));
        return Ok(());
    };
    recheck(n, ledger, &active, &tau, u)?;
    let vset = VarSet::singleton(v);
    let tau1 = Ci::conditional(z, vset);
    if x.len() == 1 {
        return cover(ledger, active, tau1, u);
    }
    let tau2 = Ci::conditional(z | vset, x - vset);

    let mut first = Vec::new();
    let mut second = Vec::new();
    for p in active {
        let sigma = ledger.pieces[p].ci;
        if sigma.given.contains(v) {
            second.push(p);
            continue;
        }
        let (a, b, c) = if sigma.a.contains(v) {
            (sigma.a, sigma.b, sigma.given)
        } else if sigma.b.contains(v) {
            (sigma.b, sigma.a, sigma.given)
        } else {
            return Err(Error::Precondition("antecedents must be saturated".into()));
        };
        let head = vset | (a & z);
        let (p1, p2) = ledger.split(p, Ci::new(head, b, c), Ci::new(a - head, b, c | head), None);
        first.push(p1);
        second.push(p2);
    }
    ledger.steps.push(DerivationStep::new(
        DerivationRule::ChainSplitTau,
        vec![tau],
        vec![tau1, tau2],
    ));
    cover(ledger, first, tau1, u)?;
    fd(ledger, second, z | vset, x - vset, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::parse_implication;
    use crate::scalar::int;

    #[test]
    fn split_fd_gives_unit_certificate() {
        // A → BC saturated as I(B,C;0|A) and H(B,C|A); consequent A → B.
        let imp = parse_implication("vars: A,B,C\nH(B,C|A)\n=>\nH(B|A)\n").unwrap();
        let r = fd_consequent_certificate(&imp).unwrap();
        assert!(r.certificate.lambda() <= int(1));
    }

    #[test]
    fn multi_attribute_consequent() {
        let imp =
            parse_implication("vars: A,B,C,D\nH(B|A)\nH(C|B)\nH(D|C)\n=>\nH(B,C,D|A)\n").unwrap();
        let r = fd_consequent_certificate(&imp).unwrap();
        assert_eq!(r.certificate.lambda(), int(1));
        assert!(r.derivation.iter().all(|s| s.is_locally_valid(4)));
    }

    #[test]
    fn non_conditional_consequent_is_rejected() {
        let imp = parse_implication("vars: A,B,C\nI(A;B|C)\n=>\nI(A;B|C)\n").unwrap();
        assert!(fd_consequent_certificate(&imp).is_err());
    }
}

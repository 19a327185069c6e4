//! Unit certificates for elemental consequents whose variables every antecedent mentions.

use num_traits::One;

use super::{
    conclude, consequent_ci, recheck, require_step_implication, DerivationRule, DerivationStep,
    Ledger, RelaxationResult,
};
use crate::constraint::{Ci, Implication};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::varset::{VarSet, VarUniverse};

/// Proves `h(τ) ≤ h(Σ)` for an elemental `τ = (x;y|Z)` when every `σ ∈ Σ` covers `τ`
/// and no step function separates them.
///
/// Each antecedent's coefficient is 0 or 1.
pub fn elemental_cover_certificate(imp: &Implication) -> Result<RelaxationResult> {
    let tau = consequent_ci(imp)?.normalized();
    if !tau.is_trivial() && !tau.is_elemental() {
        return Err(Error::Precondition(format!(
            "{} is not elemental",
            imp.consequent.display(&imp.universe)
        )));
    }
    let sigma = imp.antecedent_cis()?;
    for (i, s) in sigma.iter().enumerate() {
        if !tau.vars().is_subset(s.vars()) {
            return Err(Error::Precondition(format!(
                "antecedent {} ({}) does not cover the consequent",
                i,
                imp.antecedents[i].display(&imp.universe)
            )));
        }
    }
    require_step_implication(imp)?;
    let mut ledger = Ledger::new(imp.n(), &sigma);
    cover(&mut ledger, (0..sigma.len()).collect(), tau, &imp.universe)?;
    let roots: Vec<(Ci, usize)> = sigma.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    conclude(imp, &roots, ledger.finish(), Rational::one())
}

/// Induction on the deficit `|Ω − Z|` of `τ = (x;y|Z)` over the live pieces `active`.
pub(super) fn cover(
    ledger: &mut Ledger,
    active: Vec<usize>,
    tau: Ci,
    u: &VarUniverse,
) -> Result<()> {
    let n = ledger.n;
    let tau = tau.normalized();
    let deficit = n - tau.given.len();
    if tau.is_trivial() {
        ledger
            .steps
            .push(DerivationStep::new(DerivationRule::Base, vec![tau], vec![]).deficit(deficit));
        return Ok(());
    }
    recheck(n, ledger, &active, &tau, u)?;
    let z = tau.given;
    // Candidates are positive at h_Z and contain every variable of the goal; those
    // that close the goal directly come first. Later choices are tried on failure.
    let mut candidates: Vec<usize> = (0..active.len())
        .filter(|&i| {
            let s = ledger.pieces[active[i]].ci;
            s.step_value(z) && tau.vars().is_subset(s.vars())
        })
        .collect();
    candidates.sort_by_key(|&i| !ledger_lemma_fits(&ledger.pieces[active[i]].ci, &tau));
    let mut last =
        Error::Internal("no covering antecedent is positive at the goal's step function".into());
    for pos in candidates {
        let mut trial = ledger.clone();
        match cover_with(&mut trial, active.clone(), pos, tau, deficit, u) {
            Ok(()) => {
                *ledger = trial;
                return Ok(());
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn cover_with(
    ledger: &mut Ledger,
    mut active: Vec<usize>,
    pos: usize,
    tau: Ci,
    deficit: usize,
    u: &VarUniverse,
) -> Result<()> {
    let z = tau.given;
    let p = active[pos];
    let sigma = ledger.pieces[p].ci;

    if ledger_lemma_fits(&sigma, &tau) {
        let oriented = ledger.apply_lemma(p, &tau)?;
        ledger.steps.push(
            DerivationStep::new(DerivationRule::Base, vec![oriented], vec![tau])
                .witness(oriented)
                .deficit(deficit),
        );
        return Ok(());
    }

    // Both x and y lie on one side only; orient that side as A.
    let (x, y) = (tau.a, tau.b);
    let (a, b, c) = if (x | y).is_subset(sigma.a) {
        (sigma.a, sigma.b, sigma.given)
    } else if (x | y).is_subset(sigma.b) {
        (sigma.b, sigma.a, sigma.given)
    } else {
        return Err(Error::Internal(
            "selected antecedent does not cover the goal".into(),
        ));
    };
    let uvar = (b - z).first().ok_or_else(|| {
        Error::Internal("selected antecedent has its second argument inside Z".into())
    })?;
    let uset = VarSet::singleton(uvar);
    let zb = z & b;
    let sigma1 = Ci::new(a, uset | zb, c);
    let sigma2 = Ci::new(a, b - uset - zb, c | uset | zb);
    let (p1, p2) = ledger.split(p, sigma1, sigma2, Some(sigma));

    let tau1 = Ci::new(x, uset, z);
    let tau2 = Ci::new(x, y, z | uset);
    ledger.steps.push(
        DerivationStep::new(DerivationRule::ChainSplitTau, vec![tau], vec![tau1, tau2])
            .deficit(deficit),
    );
    // I(x;y|Z) + I(x;u|Zy) = I(x;u|Z) + I(x;y|Zu)
    ledger.add_slack(&Ci::new(x, uset, z | y), &Rational::one());

    let oriented = ledger.apply_lemma(p1, &tau1)?;
    ledger.steps.push(
        DerivationStep::new(DerivationRule::TechnicalLemma, vec![oriented], vec![tau1])
            .witness(oriented)
            .deficit(deficit),
    );

    active[pos] = p2;
    cover(ledger, active, tau2, u)
}

fn ledger_lemma_fits(sigma: &Ci, tau: &Ci) -> bool {
    super::lemma_applies(sigma, tau).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::constraint::parse_implication;
    use crate::scalar::int;

    #[test]
    fn consequent_in_antecedents_is_a_base_step() {
        let imp = parse_implication("vars: A,B,C\nI(B;C|A)\n=>\nI(B;C|A)\n").unwrap();
        let r = elemental_cover_certificate(&imp).unwrap();
        assert_eq!(r.certificate.certificate().lambdas, vec![int(1)]);
        assert_eq!(r.derivation.len(), 1);
        assert_eq!(r.derivation[0].rule, DerivationRule::Base);
        assert!(verify_certificate(r.certificate.certificate(), &imp));
    }

    #[test]
    fn one_sided_antecedent_needs_a_split() {
        // I(x,y;u) ⇒ I(x;y|u) fails on step functions.
        let imp = parse_implication("vars: x,y,u\nI(x,y;u)\n=>\nI(x;y|u)\n").unwrap();
        assert!(matches!(
            elemental_cover_certificate(&imp),
            Err(Error::Precondition(_))
        ));
        // I(x,y;u) and I(x;y|u) together imply I(x;y).
        let imp = parse_implication("vars: x,y,u\nI(x,y;u)\nI(x;y|u)\n=>\nI(x;y)\n").unwrap();
        let r = elemental_cover_certificate(&imp).unwrap();
        assert!(r.certificate.lambda() <= int(1));
        assert!(r
            .derivation
            .iter()
            .any(|s| s.rule == DerivationRule::ChainSplitSigma));
        assert!(r.derivation.iter().all(|s| s.is_locally_valid(3)));
    }

    #[test]
    fn uncovered_consequent_is_rejected() {
        let imp = parse_implication("vars: A,B,C\nI(A;B)\n=>\nI(A;C)\n").unwrap();
        assert!(matches!(
            elemental_cover_certificate(&imp),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conditional_elemental_goal() {
        let imp = parse_implication("vars: A,B,C\nH(A|B,C)\nI(A;B,C)\n=>\nH(A)\n").unwrap();
        let r = elemental_cover_certificate(&imp).unwrap();
        assert_eq!(r.certificate.lambda(), int(1));
    }
}

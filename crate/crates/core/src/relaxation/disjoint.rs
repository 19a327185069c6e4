//! Unit certificates for pairwise-disjoint saturated antecedents.

use num_traits::One;

use super::{
    consequent_ci, require_step_implication, DerivationRule, DerivationStep, RelaxationResult,
};
use crate::constraint::{cis_disjoint, Implication};
use crate::deciders::verify_inequality;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Proves `h(τ) ≤ h(Σ)` when `Σ` consists of saturated, pairwise-disjoint CIs and
/// `τ` is a saturated CI, by solving for the elemental multipliers exactly.
pub fn disjoint_saturated_unit(imp: &Implication) -> Result<RelaxationResult> {
    let n = imp.n();
    let u = &imp.universe;
    let tau = consequent_ci(imp)?;
    if !tau.is_saturated(n) {
        return Err(Error::Precondition(format!(
            "consequent {} is not saturated",
            imp.consequent.display(u)
        )));
    }
    let sigma = imp.antecedent_cis()?;
    for (i, s) in sigma.iter().enumerate() {
        if !s.is_saturated(n) {
            return Err(Error::Precondition(format!(
                "antecedent {} is not saturated",
                imp.antecedents[i].display(u)
            )));
        }
        for (j, t) in sigma.iter().enumerate().skip(i + 1) {
            if !cis_disjoint(s, t) {
                return Err(Error::Precondition(format!(
                    "antecedents {} and {} are not disjoint",
                    imp.antecedents[i].display(u),
                    imp.antecedents[j].display(u)
                )));
            }
        }
    }
    require_step_implication(imp)?;
    let terms: Vec<_> = imp
        .antecedents
        .iter()
        .map(|c| (Rational::one(), c.clone()))
        .collect();
    let verdict = verify_inequality(u, &terms, &imp.consequent)?;
    let certificate = match (verdict.holds, verdict.certificate) {
        (true, Some(c)) => c,
        _ => {
            return Err(Error::Internal(
                "unit inequality fails for disjoint saturated antecedents".into(),
            ))
        }
    };
    let step = DerivationStep::new(DerivationRule::Base, sigma, vec![tau]);
    Ok(RelaxationResult {
        certificate,
        derivation: vec![step],
        bound_claimed: Rational::one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::{parse_implication, Ci, Constraint};
    use crate::models::imeasure::{atom_set, i_measure};
    use crate::scalar::int;
    use crate::setfn::SetFunction;
    use crate::varset::{VarSet, VarUniverse};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_disjoint_mvds() {
        let imp =
            parse_implication("vars: A,B,C,D\nI(B;C,D|A)\nI(C;A,D|B)\n=>\nI(C;B,D|A)\n").unwrap();
        let r = disjoint_saturated_unit(&imp).unwrap();
        assert_eq!(r.certificate.lambda(), int(1));
    }

    #[test]
    fn consequent_in_antecedents() {
        let imp = parse_implication("vars: A,B,C\nI(A;B|C)\n=>\nI(A;B|C)\n").unwrap();
        assert!(disjoint_saturated_unit(&imp).is_ok());
    }

    #[test]
    fn overlapping_antecedents_are_rejected() {
        let imp = parse_implication("vars: A,B,C\nI(A;B|C)\nI(A;C|B)\n=>\nI(A;B,C)\n").unwrap();
        assert!(matches!(
            disjoint_saturated_unit(&imp),
            Err(Error::Precondition(_))
        ));
    }

    fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> Ci {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let set = |r: &[usize]| VarSet::from_indices(r.iter().copied());
        Ci::new(set(&idx[..i]), set(&idx[i..j]), set(&idx[j..]))
    }

    /// `μ*(m(σ) − m(τ))` for saturated `σ = (X;Y|Z)`, `τ = (A;B|C)` equals
    /// `I(C_X;Y|Z) + I(X∖C_X;C_Y|ZC_X) + I(X;Y|ZCA) + I(A_X;Y|ZCB) + I(X∖A_X;A_Y|ZCBA_X)`.
    #[test]
    fn outside_measure_is_five_mutual_informations() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=5 {
            let u = VarUniverse::letters(n).unwrap();
            for _ in 0..100 {
                let sigma = random_partition(n, &mut rng);
                let tau = random_partition(n, &mut rng);
                let h = SetFunction::from_fn(u.clone(), |_| int(rng.gen_range(-30..=30)));
                let mu = i_measure(&h);
                let ms = atom_set(&Constraint::Ci(sigma), n).unwrap();
                let mt = atom_set(&Constraint::Ci(tau), n).unwrap();
                let outside: Rational = ms
                    .difference(&mt)
                    .into_iter()
                    .map(|w| mu.atom(w).clone())
                    .sum();
                let (x, y, z) = (sigma.a, sigma.b, sigma.given);
                let (a, b, c) = (tau.a, tau.b, tau.given);
                let (cx, cy, ax, ay) = (c & x, c & y, a & x, a & y);
                let terms = [
                    Ci::new(cx, y, z),
                    Ci::new(x - cx, cy, z | cx),
                    Ci::new(x, y, z | c | a),
                    Ci::new(ax, y, z | c | b),
                    Ci::new(x - ax, ay, z | c | b | ax),
                ];
                let five: Rational = terms.iter().map(|t| t.eval(&h)).sum();
                assert_eq!(outside, five, "σ={sigma:?} τ={tau:?}");
            }
        }
    }
}

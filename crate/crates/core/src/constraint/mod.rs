//! Integrity constraints as information measures, and implications between them.

mod parse;

pub use parse::{parse_constraint, parse_implication, parse_implication_with_cap};

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

/// The measure `I(a; b | given)`. A conditional `X → Y` is stored as `I(Y; Y | X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ci {
    pub a: VarSet,
    pub b: VarSet,
    pub given: VarSet,
}

impl Ci {
    pub fn new(a: VarSet, b: VarSet, given: VarSet) -> Self {
        Ci { a, b, given }
    }

    /// `X → Y`, i.e. `h(Y|X)`.
    pub fn conditional(x: VarSet, y: VarSet) -> Self {
        Ci {
            a: y,
            b: y,
            given: x,
        }
    }

    pub fn vars(&self) -> VarSet {
        self.a | self.b | self.given
    }

    pub fn is_conditional(&self) -> bool {
        self.a == self.b
    }

    pub fn is_saturated(&self, n: usize) -> bool {
        self.vars() == VarSet::full(n)
    }

    /// Singleton arguments after removing the conditioning set.
    pub fn is_elemental(&self) -> bool {
        self.a.len() == 1 && self.b.len() == 1
    }

    /// Same measure with the conditioning set removed from both arguments.
    pub fn normalized(&self) -> Ci {
        Ci {
            a: self.a - self.given,
            b: self.b - self.given,
            given: self.given,
        }
    }

    /// True iff the measure is identically zero (an argument lies inside the conditioning set).
    pub fn is_trivial(&self) -> bool {
        self.a.is_subset(self.given) || self.b.is_subset(self.given)
    }

    /// Step-function value: 1 iff `given ⊆ U`, `a ⊄ U` and `b ⊄ U`.
    pub fn step_value(&self, u: VarSet) -> bool {
        self.given.is_subset(u) && !self.a.is_subset(u) && !self.b.is_subset(u)
    }

    pub fn eval<T: Scalar>(&self, h: &SetFunction<T>) -> T {
        h.mutual_info_unchecked(self.a, self.b, self.given)
    }

    /// Coefficients of `I(a;b|given)` over subset coordinates, zeros dropped.
    pub fn terms(&self) -> BTreeMap<VarSet, i64> {
        let g = self.given;
        let mut out = BTreeMap::new();
        for (w, c) in [
            (g | self.a, 1),
            (g | self.b, 1),
            (g | self.a | self.b, -1),
            (g, -1),
        ] {
            *out.entry(w).or_insert(0) += c;
        }
        out.retain(|w, c| *c != 0 && !w.is_empty());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    Ci(Ci),
    /// I-measure constraint `Σ_i −d_h(W_i)`, listed by atom negative-sets `W_i ⊊ Ω`.
    Differential(Vec<VarSet>),
}

impl Constraint {
    pub fn ci(a: VarSet, b: VarSet, given: VarSet) -> Self {
        Constraint::Ci(Ci::new(a, b, given))
    }

    pub fn conditional(x: VarSet, y: VarSet) -> Self {
        Constraint::Ci(Ci::conditional(x, y))
    }

    pub fn as_ci(&self) -> Option<&Ci> {
        match self {
            Constraint::Ci(c) => Some(c),
            Constraint::Differential(_) => None,
        }
    }

    pub fn expect_ci(&self) -> Result<&Ci> {
        self.as_ci()
            .ok_or_else(|| Error::UnsupportedConstraint("expected a CI or conditional".into()))
    }

    /// Every set mentioned by the constraint.
    pub fn vars(&self) -> VarSet {
        match self {
            Constraint::Ci(c) => c.vars(),
            Constraint::Differential(ws) => ws.iter().fold(VarSet::EMPTY, |a, &w| a | w),
        }
    }

    pub fn check_universe(&self, u: &VarUniverse) -> Result<()> {
        match self {
            Constraint::Ci(c) => {
                u.check(c.a)?;
                u.check(c.b)?;
                u.check(c.given)
            }
            Constraint::Differential(ws) => {
                if ws.is_empty() {
                    return Err(Error::UnsupportedConstraint("empty atom list".into()));
                }
                for &w in ws {
                    u.check(w)?;
                    if w == u.full() {
                        return Err(Error::UnsupportedConstraint(
                            "the full universe is not an atom".into(),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// Coefficients over subset coordinates (the vector `vec(σ)`), zeros dropped.
    pub fn terms(&self, n: usize) -> BTreeMap<VarSet, i64> {
        match self {
            Constraint::Ci(c) => c.terms(),
            Constraint::Differential(ws) => {
                // −d_h(W) = Σ_{Z ⊇ W} (−1)^{|Z−W|+1} h(Z)
                let full = VarSet::full(n);
                let mut out = BTreeMap::new();
                for &w in ws {
                    for extra in (full - w).subsets() {
                        let sign = if extra.len() % 2 == 0 { -1 } else { 1 };
                        *out.entry(w | extra).or_insert(0) += sign;
                    }
                }
                out.retain(|w: &VarSet, c: &mut i64| *c != 0 && !w.is_empty());
                out
            }
        }
    }

    /// `h(σ)`: the mutual information for CIs, the sum of atom values for differentials.
    pub fn eval<T: Scalar>(&self, h: &SetFunction<T>) -> T {
        match self {
            Constraint::Ci(c) => c.eval(h),
            Constraint::Differential(_) => T::sum_iter(
                self.terms(h.n())
                    .into_iter()
                    .map(|(w, c)| h.get(w).clone() * T::from_i64(c)),
            ),
        }
    }

    /// Step-function value at `U`, without building the function.
    pub fn step_value(&self, u: VarSet) -> u32 {
        match self {
            Constraint::Ci(c) => c.step_value(u) as u32,
            Constraint::Differential(ws) => ws.iter().filter(|&&w| w == u).count() as u32,
        }
    }

    /// DSL text, e.g. `I(A;B|C)`, `H(B|A)`, `D: {A} + {A,B}`.
    pub fn display(&self, u: &VarUniverse) -> String {
        match self {
            Constraint::Ci(c) => {
                let given = if c.given.is_empty() {
                    String::new()
                } else {
                    format!("|{}", u.fmt_set(c.given))
                };
                if c.is_conditional() {
                    format!("H({}{given})", u.fmt_set(c.a))
                } else {
                    format!("I({};{}{given})", u.fmt_set(c.a), u.fmt_set(c.b))
                }
            }
            Constraint::Differential(ws) => {
                let atoms: Vec<String> = ws
                    .iter()
                    .map(|&w| format!("{{{}}}", u.fmt_set(w)))
                    .collect();
                format!("D: {}", atoms.join(" + "))
            }
        }
    }
}

impl From<Ci> for Constraint {
    fn from(c: Ci) -> Self {
        Constraint::Ci(c)
    }
}

/// `Σ ⇒ τ` over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub universe: Arc<VarUniverse>,
    pub antecedents: Vec<Constraint>,
    pub consequent: Constraint,
}

impl Implication {
    pub fn new(
        universe: Arc<VarUniverse>,
        antecedents: Vec<Constraint>,
        consequent: Constraint,
    ) -> Result<Self> {
        for c in antecedents.iter().chain(std::iter::once(&consequent)) {
            c.check_universe(&universe)?;
        }
        Ok(Implication {
            universe,
            antecedents,
            consequent,
        })
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn has_differential(&self) -> bool {
        self.antecedents
            .iter()
            .chain(std::iter::once(&self.consequent))
            .any(|c| c.as_ci().is_none())
    }

    /// The antecedents as CIs; errors on differential constraints.
    pub fn antecedent_cis(&self) -> Result<Vec<Ci>> {
        self.antecedents
            .iter()
            .map(|c| c.expect_ci().copied())
            .collect()
    }

    /// Implication-file text that parses back to `self`.
    pub fn display(&self) -> String {
        let u = &self.universe;
        let mut s = format!("vars: {}\n", u.names().join(", "));
        for c in &self.antecedents {
            s.push_str(&c.display(u));
            s.push('\n');
        }
        s.push_str("=>\n");
        s.push_str(&self.consequent.display(u));
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub saturated: bool,
    pub conditional: bool,
    pub elemental: bool,
    pub marginal: bool,
}

pub fn classify(c: &Constraint, n: usize) -> Result<Classification> {
    let ci = c.as_ci().ok_or_else(|| {
        Error::UnsupportedConstraint("differential constraints have no classification".into())
    })?;
    Ok(Classification {
        saturated: ci.is_saturated(n),
        conditional: ci.is_conditional(),
        elemental: ci.is_elemental(),
        marginal: ci.given.is_empty(),
    })
}

/// `(X;Y|Z)` and `(A;B|C)` are disjoint iff `X⊆C`, `Y⊆C`, `A⊆Z` or `B⊆Z`.
pub fn are_disjoint(first: &Constraint, second: &Constraint) -> Result<bool> {
    let p = first.expect_ci()?;
    let q = second.expect_ci()?;
    Ok(cis_disjoint(p, q))
}

pub fn cis_disjoint(p: &Ci, q: &Ci) -> bool {
    p.a.is_subset(q.given)
        || p.b.is_subset(q.given)
        || q.a.is_subset(p.given)
        || q.b.is_subset(p.given)
}

/// Replaces each non-saturated conditional `X → Y` by `(Y;Z|X)` and `XZ → Y`, `Z = Ω∖XY`.
pub fn saturate_conditionals(sigma: &[Constraint], n: usize) -> Result<Vec<Constraint>> {
    Ok(saturate_with_origins(sigma, n)?
        .into_iter()
        .map(|(c, _)| Constraint::Ci(c))
        .collect())
}

/// [`saturate_conditionals`] paired with the index of the input each output came from.
pub fn saturate_with_origins(sigma: &[Constraint], n: usize) -> Result<Vec<(Ci, usize)>> {
    let full = VarSet::full(n);
    let mut out = Vec::with_capacity(sigma.len() * 2);
    for (idx, c) in sigma.iter().enumerate() {
        let ci = *c.expect_ci()?;
        if ci.is_saturated(n) {
            out.push((ci, idx));
        } else if ci.is_conditional() {
            let x = ci.given;
            let y = ci.a - x;
            let z = full - x - y;
            out.push((Ci::new(y, z, x), idx));
            out.push((Ci::conditional(x | z, y), idx));
        } else {
            return Err(Error::Precondition(format!(
                "antecedent {idx} is neither saturated nor a conditional"
            )));
        }
    }
    Ok(out)
}

pub fn eval_constraint<T: Scalar>(h: &SetFunction<T>, c: &Constraint) -> Result<T> {
    c.check_universe(h.universe())?;
    Ok(c.eval(h))
}

/// `h(Σ) = Σ_σ h(σ)`.
pub fn eval_sum<T: Scalar>(h: &SetFunction<T>, sigma: &[Constraint]) -> Result<T> {
    let vals = sigma
        .iter()
        .map(|c| eval_constraint(h, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(T::sum_iter(vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn abc() -> Arc<VarUniverse> {
        VarUniverse::letters(3).unwrap()
    }

    #[test]
    fn classification_flags() {
        let u = abc();
        let s = |t: &str| u.parse_set(t).unwrap();
        let c = Constraint::ci(s("B"), s("C"), s("A"));
        let k = classify(&c, 3).unwrap();
        assert!(k.saturated && k.elemental && !k.marginal && !k.conditional);
        let k = classify(&Constraint::conditional(s("A"), s("B")), 3).unwrap();
        assert!(k.conditional);
        let k = classify(&Constraint::ci(s("A"), s("B"), VarSet::EMPTY), 3).unwrap();
        assert!(k.marginal && !k.saturated);
        assert!(classify(&Constraint::Differential(vec![VarSet::EMPTY]), 3).is_err());
    }

    #[test]
    fn saturation_splits_conditionals() {
        let u = abc();
        let s = |t: &str| u.parse_set(t).unwrap();
        let out = saturate_conditionals(&[Constraint::conditional(s("A"), s("B"))], 3).unwrap();
        assert_eq!(
            out,
            vec![
                Constraint::ci(s("B"), s("C"), s("A")),
                Constraint::conditional(s("A,C"), s("B")),
            ]
        );
        assert!(saturate_conditionals(&[], 3).unwrap().is_empty());
        let bad = Constraint::ci(s("A"), s("B"), VarSet::EMPTY);
        assert!(saturate_conditionals(&[bad], 3).is_err());
    }

    #[test]
    fn disjointness_conditions() {
        let u = VarUniverse::letters(4).unwrap();
        let s = |t: &str| u.parse_set(t).unwrap();
        let p = Constraint::ci(s("B"), s("C,D"), s("A"));
        let q = Constraint::ci(s("C"), s("A,D"), s("B"));
        assert!(are_disjoint(&p, &q).unwrap());
        let t = Constraint::ci(s("A"), s("B"), VarSet::EMPTY);
        assert!(!are_disjoint(&t, &t).unwrap());
    }

    #[test]
    fn differential_terms_match_atom_values() {
        let u = abc();
        let s = |t: &str| u.parse_set(t).unwrap();
        // h(C|A) covers exactly the atoms W with A ⊆ W and C ⊄ W
        let h: SetFunction<Rational> =
            SetFunction::from_fn(u.clone(), |w| int((w.bits() * 5 % 7) as i64));
        let cond = Constraint::conditional(s("A"), s("C"));
        let atoms = Constraint::Differential(vec![s("A"), s("A,B")]);
        assert_eq!(cond.eval(&h), atoms.eval(&h));
    }

    #[test]
    fn eval_sum_of_empty_is_zero() {
        let h: SetFunction<Rational> = SetFunction::cardinality(abc());
        assert_eq!(eval_sum(&h, &[]).unwrap(), int(0));
    }
}

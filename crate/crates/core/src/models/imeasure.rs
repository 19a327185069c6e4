//! The I-measure: a signed measure on the `2^n − 1` atoms of the field generated by the variables.
//!
//! Atoms are named by their negative-set `U ⊊ Ω`, the variables that appear
//! complemented. The atom at `U` carries `−d_h(U)` where
//! `d_h(U) = Σ_{Z ⊇ U} (−1)^{|Z−U|} h(Z)`, and the step function `h_U` is the
//! indicator of that atom.

use std::sync::Arc;

use crate::constraint::Constraint;
use crate::error::{Error, Result};
use crate::mobius::{superset_mobius, superset_zeta};
use crate::scalar::Scalar;
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, PartialEq)]
pub struct IMeasure<T> {
    universe: Arc<VarUniverse>,
    /// Indexed by negative-set bitmask; the slot for `Ω` is unused and kept at zero.
    atoms: Vec<T>,
}

impl<T: Scalar> IMeasure<T> {
    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    /// Value of the atom with negative-set `u`; zero for `u = Ω`.
    pub fn atom(&self, u: VarSet) -> &T {
        &self.atoms[u.index()]
    }

    /// `(U, μ*(U))` for every `U ⊊ Ω`, by increasing bitmask.
    pub fn iter(&self) -> impl Iterator<Item = (VarSet, &T)> {
        let full = self.universe.full().index();
        self.atoms[..full]
            .iter()
            .enumerate()
            .map(|(m, v)| (VarSet::from_bits(m as u32), v))
    }

    pub fn len(&self) -> usize {
        self.atoms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Measure of a union of atoms.
    pub fn measure(&self, atoms: &AtomSet) -> T {
        T::sum_iter(atoms.iter().map(|u| self.atom(u).clone()))
    }

    /// `h(W) = μ*(m(W))`, the sum over atoms with `W ⊄ U`.
    pub fn reconstruct(&self) -> SetFunction<T> {
        recompose(&self.universe, self.iter().map(|(u, v)| (u, v.clone())))
    }
}

/// Atom values of `h` via the fast superset Möbius transform.
pub fn i_measure<T: Scalar>(h: &SetFunction<T>) -> IMeasure<T> {
    let n = h.n();
    let mut d = h.values().to_vec();
    superset_mobius(&mut d, n);
    let full = VarSet::full(n).index();
    let atoms = d
        .into_iter()
        .enumerate()
        .map(|(m, v)| if m == full { T::zero() } else { -v })
        .collect();
    IMeasure {
        universe: h.universe().clone(),
        atoms,
    }
}

/// Density `d_h(W) = Σ_{Z ⊇ W} (−1)^{|Z−W|} h(Z)` for every `W`.
pub fn densities<T: Scalar>(values: &[T], n: usize) -> Vec<T> {
    let mut d = values.to_vec();
    superset_mobius(&mut d, n);
    d
}

/// Coefficients `c_U` with `h = Σ_U c_U·h_U`; zero coefficients omitted.
pub fn step_decomposition<T: Scalar>(h: &SetFunction<T>) -> Vec<(VarSet, T)> {
    i_measure(h)
        .iter()
        .filter(|(_, v)| !v.near_zero())
        .map(|(u, v)| (u, v.clone()))
        .collect()
}

/// `Σ_U c_U·h_U`. Entries at `U = Ω` contribute nothing.
pub fn recompose<T: Scalar>(
    universe: &Arc<VarUniverse>,
    coeffs: impl IntoIterator<Item = (VarSet, T)>,
) -> SetFunction<T> {
    let n = universe.n();
    let full = universe.full();
    // h(W) = Σ_{U: W ⊄ U} c_U = Σ_U c_U − Σ_{U ⊇ W} c_U
    let mut c = vec![T::zero(); universe.num_subsets()];
    let mut total = T::zero();
    for (u, v) in coeffs {
        if u != full {
            total = total + v.clone();
            let slot = std::mem::replace(&mut c[u.index()], T::zero());
            c[u.index()] = slot + v;
        }
    }
    superset_zeta(&mut c, n);
    SetFunction::from_fn(universe.clone(), |w| total.clone() - c[w.index()].clone())
}

/// True iff every atom value is nonnegative, i.e. `h` lies in the cone of step functions.
pub fn is_positive_polymatroid<T: Scalar>(h: &SetFunction<T>) -> bool {
    h.values()[0].near_zero() && i_measure(h).iter().all(|(_, v)| v.near_nonneg())
}

/// A set of atoms, sorted by negative-set bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSet {
    n: usize,
    members: Vec<VarSet>,
}

impl AtomSet {
    pub fn new(n: usize, mut members: Vec<VarSet>) -> Result<Self> {
        let full = VarSet::full(n);
        if let Some(bad) = members.iter().find(|&&u| u == full || !u.is_subset(full)) {
            return Err(Error::UnsupportedConstraint(format!(
                "{bad:?} is not an atom over {n} variables"
            )));
        }
        members.sort();
        members.dedup();
        Ok(AtomSet { n, members })
    }

    pub fn iter(&self) -> impl Iterator<Item = VarSet> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: VarSet) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.members.iter().all(|&u| other.contains(u))
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort();
        members.dedup();
        AtomSet { n: self.n, members }
    }

    /// Members not in `other`.
    pub fn difference(&self, other: &AtomSet) -> Vec<VarSet> {
        self.iter().filter(|&u| !other.contains(u)).collect()
    }

    pub fn empty(n: usize) -> Self {
        AtomSet {
            n,
            members: Vec::new(),
        }
    }
}

/// `m(σ)`: for `(X;Y|Z)` the atoms `U ⊊ Ω` with `Z ⊆ U`, `X ⊄ U`, `Y ⊄ U`; for differentials the listed atoms.
pub fn atom_set(c: &Constraint, n: usize) -> Result<AtomSet> {
    match c {
        Constraint::Ci(ci) => {
            let full = VarSet::full(n);
            if !ci.vars().is_subset(full) {
                return Err(Error::UniverseMismatch {
                    set: ci.vars().bits(),
                    n,
                });
            }
            let members = (full - ci.given)
                .subsets()
                .map(|extra| ci.given | extra)
                .filter(|&u| u != full && ci.step_value(u))
                .collect();
            AtomSet::new(n, members)
        }
        Constraint::Differential(ws) => AtomSet::new(n, ws.clone()),
    }
}

/// `m(Σ)`.
pub fn atom_set_union(cs: &[Constraint], n: usize) -> Result<AtomSet> {
    cs.iter()
        .try_fold(AtomSet::empty(n), |acc, c| Ok(acc.union(&atom_set(c, n)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::step::{all_step_functions, step_function};
    use crate::scalar::{int, Rational};

    #[test]
    fn step_function_is_unit_atom() {
        let uni = VarUniverse::letters(4).unwrap();
        for (u, h) in all_step_functions(&uni) {
            let mu = i_measure(&h);
            for (v, val) in mu.iter() {
                assert_eq!(*val, int(i64::from(u == v)));
            }
        }
    }

    #[test]
    fn parity_has_negative_atom() {
        let uni = VarUniverse::new(["X", "Y", "Z"]).unwrap();
        let h: SetFunction<Rational> = SetFunction::from_fn(uni, |w| int(w.len().min(2) as i64));
        let mu = i_measure(&h);
        assert!(mu.iter().any(|(_, v)| *v < int(0)));
        assert!(!is_positive_polymatroid(&h));
        assert_eq!(mu.reconstruct(), h);
    }

    #[test]
    fn decomposition_of_combination() {
        let uni = VarUniverse::letters(3).unwrap();
        let u1 = VarSet::from_bits(0b001);
        let u2 = VarSet::from_bits(0b110);
        let h = step_function(&uni, u1)
            .unwrap()
            .scale(&int(2))
            .add(&step_function(&uni, u2).unwrap().scale(&int(3)))
            .unwrap();
        assert_eq!(step_decomposition(&h), vec![(u1, int(2)), (u2, int(3))]);
        assert!(is_positive_polymatroid(&h));
        assert!(is_positive_polymatroid(&SetFunction::<Rational>::zero(uni)));
    }

    #[test]
    fn atom_sets_match_step_values() {
        let uni = VarUniverse::letters(3).unwrap();
        let s = |t: &str| uni.parse_set(t).unwrap();
        let c = Constraint::ci(s("A"), s("B"), s("C"));
        assert_eq!(
            atom_set(&c, 3).unwrap().iter().collect::<Vec<_>>(),
            vec![s("C")]
        );
        let one = VarUniverse::letters(1).unwrap();
        let a = one.parse_set("A").unwrap();
        let c = Constraint::conditional(VarSet::EMPTY, a);
        assert_eq!(
            atom_set(&c, 1).unwrap().iter().collect::<Vec<_>>(),
            vec![VarSet::EMPTY]
        );
    }

    #[test]
    fn triangle_atoms_are_covered() {
        let uni = VarUniverse::letters(3).unwrap();
        let s = |t: &str| uni.parse_set(t).unwrap();
        let sigma = [
            Constraint::ci(s("A"), s("B"), VarSet::EMPTY),
            Constraint::ci(s("A"), s("C"), s("B")),
        ];
        let tau = Constraint::ci(s("A"), s("C"), VarSet::EMPTY);
        let m_sigma = atom_set_union(&sigma, 3).unwrap();
        assert!(atom_set(&tau, 3).unwrap().is_subset(&m_sigma));
    }
}

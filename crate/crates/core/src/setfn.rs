//! Set functions `h: 2^Ω → ℝ` and the Shannon information measures on them.

use std::sync::Arc;

use crate::elemental::elemental_inequalities;
use crate::error::{Error, Result};
use crate::scalar::{NumericMode, Rational, Scalar};
use crate::varset::{VarSet, VarUniverse};

/// A value for every subset of the universe, stored densely by bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction<T> {
    universe: Arc<VarUniverse>,
    values: Vec<T>,
}

/// Set function over exact rationals.
pub type ExactSetFunction = SetFunction<Rational>;

impl<T: Scalar> SetFunction<T> {
    /// Requires exactly `2^n` values with `values[0] = 0`.
    pub fn new(universe: Arc<VarUniverse>, values: Vec<T>) -> Result<Self> {
        if values.len() != universe.num_subsets() {
            return Err(Error::InvalidSetFunction(format!(
                "expected {} values, got {}",
                universe.num_subsets(),
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidSetFunction("h(∅) must be 0".into()));
        }
        Ok(SetFunction { universe, values })
    }

    /// Builds `h` from a closure; `h(∅)` is forced to zero.
    pub fn from_fn(universe: Arc<VarUniverse>, mut f: impl FnMut(VarSet) -> T) -> Self {
        let values = (0..universe.num_subsets())
            .map(|m| {
                if m == 0 {
                    T::zero()
                } else {
                    f(VarSet::from_bits(m as u32))
                }
            })
            .collect();
        SetFunction { universe, values }
    }

    pub fn zero(universe: Arc<VarUniverse>) -> Self {
        Self::from_fn(universe, |_| T::zero())
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn mode(&self) -> NumericMode {
        T::MODE
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// `h(W)`. Panics if `W` is outside the universe; use [`SetFunction::try_get`] for a checked lookup.
    pub fn get(&self, w: VarSet) -> &T {
        &self.values[w.index()]
    }

    pub fn try_get(&self, w: VarSet) -> Result<&T> {
        self.universe.check(w)?;
        Ok(self.get(w))
    }

    fn check(&self, sets: &[VarSet]) -> Result<()> {
        sets.iter().try_for_each(|&s| self.universe.check(s))
    }

    /// `h(B|A) = h(AB) − h(A)`.
    pub fn cond_entropy(&self, b: VarSet, a: VarSet) -> Result<T> {
        self.check(&[a, b])?;
        Ok(self.cond_entropy_unchecked(b, a))
    }

    /// `I(B;C|A) = h(AB) + h(AC) − h(ABC) − h(A)`.
    pub fn mutual_info(&self, b: VarSet, c: VarSet, a: VarSet) -> Result<T> {
        self.check(&[a, b, c])?;
        Ok(self.mutual_info_unchecked(b, c, a))
    }

    pub(crate) fn cond_entropy_unchecked(&self, b: VarSet, a: VarSet) -> T {
        self.get(a | b).clone() - self.get(a).clone()
    }

    pub(crate) fn mutual_info_unchecked(&self, b: VarSet, c: VarSet, a: VarSet) -> T {
        T::sum_iter([
            self.get(a | b).clone(),
            self.get(a | c).clone(),
            -self.get(a | b | c).clone(),
            -self.get(a).clone(),
        ])
    }

    /// Checks `I(B;CD|A) = I(B;C|A) + I(B;D|AC)`.
    pub fn chain_rule_check(&self, b: VarSet, c: VarSet, d: VarSet, a: VarSet) -> bool {
        if self.check(&[a, b, c, d]).is_err() {
            return false;
        }
        let whole = self.mutual_info_unchecked(b, c | d, a);
        let parts = self.mutual_info_unchecked(b, c, a) + self.mutual_info_unchecked(b, d, a | c);
        whole.near_eq(&parts)
    }

    /// True iff every elemental Shannon inequality is nonnegative on `h`.
    pub fn is_polymatroid(&self) -> bool {
        self.values[0].near_zero()
            && elemental_inequalities(self.n())
                .iter()
                .all(|e| e.eval(self).near_nonneg())
    }

    /// Monotonicity over all pairs `A ⊆ B` and submodularity over all pairs `(A, B)`.
    /// Quadratic in `2^n`; an oracle for [`SetFunction::is_polymatroid`].
    pub fn is_polymatroid_brute_force(&self) -> bool {
        if !self.values[0].near_zero() {
            return false;
        }
        let full = self.universe.full();
        for b in full.subsets() {
            for a in b.subsets() {
                if !(self.get(b).clone() - self.get(a).clone()).near_nonneg() {
                    return false;
                }
            }
        }
        for a in full.subsets() {
            for b in full.subsets() {
                let lhs = self.get(a | b).clone() + self.get(a & b).clone();
                let rhs = self.get(a).clone() + self.get(b).clone();
                if !(rhs - lhs).near_nonneg() {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::InvalidSetFunction("universe mismatch".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x.clone() + y.clone())
            .collect();
        Ok(SetFunction {
            universe: self.universe.clone(),
            values,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        SetFunction {
            universe: self.universe.clone(),
            values: self.values.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn to_f64(&self) -> SetFunction<f64> {
        SetFunction {
            universe: self.universe.clone(),
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl SetFunction<Rational> {
    /// `h(W) = |W|`, the entropy of independent fair bits.
    pub fn cardinality(universe: Arc<VarUniverse>) -> Self {
        Self::from_fn(universe, |w| Rational::from_i64(w.len() as i64))
    }
}

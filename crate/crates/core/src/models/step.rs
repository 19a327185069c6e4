//! Step functions `h_U(W) = 0 if W ⊆ U, else 1`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

/// `h_U` for `U ⊊ Ω`.
pub fn step_function(universe: &Arc<VarUniverse>, u: VarSet) -> Result<SetFunction<Rational>> {
    if u == universe.full() {
        return Err(Error::FullStepFunction);
    }
    step_function_allow_full(universe, u)
}

/// `h_U` for any `U ⊆ Ω`; `h_Ω` is identically zero.
pub fn step_function_allow_full(
    universe: &Arc<VarUniverse>,
    u: VarSet,
) -> Result<SetFunction<Rational>> {
    universe.check(u)?;
    Ok(SetFunction::from_fn(universe.clone(), |w| {
        int(i64::from(!w.is_subset(u)))
    }))
}

/// All `2^n − 1` step functions, by increasing bitmask of `U`.
pub fn all_step_functions(
    universe: &Arc<VarUniverse>,
) -> impl Iterator<Item = (VarSet, SetFunction<Rational>)> + '_ {
    let full = universe.full();
    (0..full.bits()).map(move |m| {
        let u = VarSet::from_bits(m);
        (u, step_function_allow_full(universe, u).expect("U ⊊ Ω"))
    })
}

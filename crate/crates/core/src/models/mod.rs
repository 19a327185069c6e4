//! Concrete entropy models: step functions, relations, distributions, I-measures.

pub mod distribution;
pub mod imeasure;
pub mod relation;
pub mod step;

pub use distribution::{kr_distribution, parity_distribution, Distribution};
pub use imeasure::{
    atom_set, i_measure, is_positive_polymatroid, recompose, step_decomposition, AtomSet, IMeasure,
};
pub use relation::{KeyRepair, Relation};
pub use step::{all_step_functions, step_function, step_function_allow_full};

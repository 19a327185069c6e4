pub mod basket;
pub mod certificate;
pub mod constraint;
pub mod deciders;
pub mod elemental;
pub mod error;
pub mod instances;
pub mod lp;
pub mod mobius;
pub mod models;
pub mod relaxation;
pub mod scalar;
pub mod setfn;
pub mod varset;

pub use basket::{
    baskets_from_cone_point, density, differential_implication, eval_imeasure_constraint, support,
    to_polymatroid, BasketSet, SupportFunction,
};
pub use certificate::{verify_certificate, Certificate, VerifiedCertificate};
pub use constraint::{
    are_disjoint, classify, eval_constraint, eval_sum, parse_constraint, parse_implication,
    saturate_conditionals, Ci, Classification, Constraint, Implication,
};
pub use deciders::{
    ei_check, matus_inequality_check, min_lambda, verify_inequality, MinLambda, ModelClass, Verdict,
};
pub use elemental::{elemental_inequalities, ElementalInequality};
pub use error::{Error, Result};
pub use relaxation::{
    chain_decompose, disjoint_saturated_unit, elemental_cover_certificate,
    fd_consequent_certificate, quadratic_certificate, remove_disjoint_antecedent, DerivationRule,
    DerivationStep, RelaxationResult,
};
pub use scalar::{NumericMode, Rational, Scalar};
pub use setfn::{ExactSetFunction, SetFunction};
pub use varset::{VarSet, VarUniverse, MAX_VARS};

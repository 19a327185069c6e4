//! Named instances from the literature on information-theoretic implication.

use std::sync::Arc;

use crate::constraint::{parse_constraint, parse_implication, Constraint, Implication};
use crate::error::Result;
use crate::scalar::{int, parse_rational, Rational};
use crate::varset::VarUniverse;

/// `{I(A;B), I(A;C|B)} ⇒ I(A;C)`: the chain rule gives a 1-relaxation.
pub const TRIANGLE: &str = "\
vars: A, B, C
I(A;B)
I(A;C|B)
=>
I(A;C)
";

/// Exact implication that holds for all entropic functions (by Matúš' inequality)
/// yet fails for polymatroids, so no Shannon relaxation exists.
pub const NON_SHANNON: &str = "\
vars: A, B, C, D
I(C;D|A)
I(C;D|B)
I(A;B)
I(B;C|D)
=>
I(C;D)
";

/// The relaxed market-basket implication over items `A, B, C, D`.
pub const BASKET_EXAMPLE: &str = "\
vars: A, B, C, D
I(B,C;C,D|A)
H(D|C)
=>
H(D|A,B)
";

pub fn triangle() -> Implication {
    parse_implication(TRIANGLE).expect("valid instance")
}

pub fn non_shannon() -> Implication {
    parse_implication(NON_SHANNON).expect("valid instance")
}

pub fn basket_example() -> Implication {
    parse_implication(BASKET_EXAMPLE).expect("valid instance")
}

/// `h(Z) ≤ I(A;B|C) + I(A;B|D) + I(C;D|E) + I(A;E) + c_A·h(Z|A) + c_B·h(Z|B)` over
/// `A, B, C, D, E, Z`. Valid for all polymatroids with `c_A = 3`, `c_B = 2`, and
/// false if either is lowered.
pub struct CoefficientInequality {
    pub universe: Arc<VarUniverse>,
    pub terms: Vec<(Rational, Constraint)>,
    pub target: Constraint,
}

pub fn coefficient_inequality_with(c_a: Rational, c_b: Rational) -> CoefficientInequality {
    let universe = VarUniverse::new(["A", "B", "C", "D", "E", "Z"]).expect("valid names");
    let p = |t: &str| parse_constraint(t, &universe).expect("valid term");
    let terms = vec![
        (int(1), p("I(A;B|C)")),
        (int(1), p("I(A;B|D)")),
        (int(1), p("I(C;D|E)")),
        (int(1), p("I(A;E)")),
        (c_a, p("H(Z|A)")),
        (c_b, p("H(Z|B)")),
    ];
    let target = p("H(Z)");
    CoefficientInequality {
        universe,
        terms,
        target,
    }
}

pub fn coefficient_inequality() -> CoefficientInequality {
    coefficient_inequality_with(int(3), int(2))
}

/// Parses a decimal coefficient such as `2.999` exactly.
pub fn coefficient(text: &str) -> Result<Rational> {
    parse_rational(text)
        .ok_or_else(|| crate::error::Error::OutOfRange(format!("bad coefficient `{text}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_parse() {
        assert_eq!(triangle().antecedents.len(), 2);
        assert_eq!(non_shannon().antecedents.len(), 4);
        assert_eq!(basket_example().n(), 4);
        assert_eq!(coefficient_inequality().terms.len(), 6);
        assert!(coefficient("2.999").is_ok());
    }
}

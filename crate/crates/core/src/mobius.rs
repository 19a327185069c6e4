//! Superset zeta and Möbius transforms on dense `2^n` tables.

use crate::scalar::Scalar;
use crate::varset::VarSet;

/// In place: `a[U] ← Σ_{Z ⊇ U} (−1)^{|Z−U|} a[Z]`. `O(n·2^n)`.
pub fn superset_mobius<T: Scalar>(a: &mut [T], n: usize) {
    debug_assert_eq!(a.len(), 1 << n);
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..a.len() {
            if m & bit == 0 {
                let hi = a[m | bit].clone();
                let lo = std::mem::replace(&mut a[m], T::zero());
                a[m] = lo - hi;
            }
        }
    }
}

/// In place: `a[U] ← Σ_{Z ⊇ U} a[Z]`. Inverse of [`superset_mobius`].
pub fn superset_zeta<T: Scalar>(a: &mut [T], n: usize) {
    debug_assert_eq!(a.len(), 1 << n);
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..a.len() {
            if m & bit == 0 {
                let hi = a[m | bit].clone();
                let lo = std::mem::replace(&mut a[m], T::zero());
                a[m] = lo + hi;
            }
        }
    }
}

/// Direct alternating sum over supersets, `O(3^n)`. Test oracle for [`superset_mobius`].
pub fn superset_mobius_naive<T: Scalar>(a: &[T], n: usize) -> Vec<T> {
    let full = VarSet::full(n);
    (0..a.len())
        .map(|u| {
            let u = VarSet::from_bits(u as u32);
            T::sum_iter((full - u).subsets().map(|extra| {
                let z = u | extra;
                if extra.len() % 2 == 0 {
                    a[z.index()].clone()
                } else {
                    -a[z.index()].clone()
                }
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    #[test]
    fn fast_matches_naive_and_inverts() {
        for n in 0..=6 {
            let orig: Vec<Rational> = (0..1i64 << n)
                .map(|m| int((m * 37 + 11) % 23 - 9))
                .collect();
            let mut fast = orig.clone();
            superset_mobius(&mut fast, n);
            assert_eq!(fast, superset_mobius_naive(&orig, n));
            superset_zeta(&mut fast, n);
            assert_eq!(fast, orig);
        }
    }
}

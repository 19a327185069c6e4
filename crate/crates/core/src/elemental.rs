//! Elemental Shannon inequalities, the generating set of the polymatroid cone.
//!
//! Every Shannon inequality over `n` variables is a nonnegative combination of
//!
//! * `h(i | Ω∖i) ≥ 0` (monotonicity at `i`), and
//! * `I(i; j | K) ≥ 0` for `i < j` and `K ⊆ Ω∖{i,j}` (submodularity).

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ElementalInequality {
    Monotonicity(usize),
    Submodularity { i: usize, j: usize, k: VarSet },
}

impl ElementalInequality {
    /// Submodularity term for an unordered pair; `None` when `i = j` or the pair meets `k`.
    pub fn pair(i: usize, j: usize, k: VarSet) -> Option<Self> {
        if i == j || k.contains(i) || k.contains(j) {
            return None;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Some(ElementalInequality::Submodularity { i, j, k })
    }

    /// Sparse coefficient vector over subset coordinates.
    pub fn terms(&self, n: usize) -> Vec<(VarSet, i64)> {
        match *self {
            ElementalInequality::Monotonicity(i) => {
                let full = VarSet::full(n);
                vec![(full, 1), (full.without(i), -1)]
            }
            ElementalInequality::Submodularity { i, j, k } => vec![
                (k.with(i), 1),
                (k.with(j), 1),
                (k.with(i).with(j), -1),
                (k, -1),
            ],
        }
    }

    pub fn eval<T: Scalar>(&self, h: &SetFunction<T>) -> T {
        let n = h.n();
        T::sum_iter(
            self.terms(n)
                .into_iter()
                .map(|(w, c)| h.get(w).clone() * T::from_i64(c)),
        )
    }

    /// Stable text key: `M(A)` or `S(A,B|C,D)`.
    pub fn label(&self, u: &VarUniverse) -> String {
        match *self {
            ElementalInequality::Monotonicity(i) => format!("M({})", u.name(i)),
            ElementalInequality::Submodularity { i, j, k } => {
                if k.is_empty() {
                    format!("S({},{})", u.name(i), u.name(j))
                } else {
                    format!("S({},{}|{})", u.name(i), u.name(j), u.fmt_set(k))
                }
            }
        }
    }

    /// Inverse of [`ElementalInequality::label`].
    pub fn parse_label(text: &str, u: &VarUniverse) -> Option<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("M(").and_then(|r| r.strip_suffix(')')) {
            return u
                .index_of(inner.trim())
                .map(ElementalInequality::Monotonicity);
        }
        let inner = t.strip_prefix("S(")?.strip_suffix(')')?;
        let (pair, k) = match inner.split_once('|') {
            Some((p, k)) => (p, u.parse_set(k).ok()?),
            None => (inner, VarSet::EMPTY),
        };
        let (a, b) = pair.split_once(',')?;
        let i = u.index_of(a.trim())?;
        let j = u.index_of(b.trim())?;
        if i >= j {
            return None;
        }
        Self::pair(i, j, k)
    }

    pub fn fits(&self, n: usize) -> bool {
        match *self {
            ElementalInequality::Monotonicity(i) => i < n,
            ElementalInequality::Submodularity { i, j, k } => {
                i < j && j < n && k.is_subset(VarSet::full(n)) && !k.contains(i) && !k.contains(j)
            }
        }
    }
}

/// Number of elemental inequalities: `n + C(n,2)·2^(n−2)`.
pub fn elemental_count(n: usize) -> usize {
    if n < 2 {
        n
    } else {
        n + n * (n - 1) / 2 * (1usize << (n - 2))
    }
}

/// All elemental inequalities: monotonicity by `i`, then submodularity by `(i, j, K)`.
pub fn elemental_inequalities(n: usize) -> Vec<ElementalInequality> {
    let mut out = Vec::with_capacity(elemental_count(n));
    out.extend((0..n).map(ElementalInequality::Monotonicity));
    let full = VarSet::full(n);
    for i in 0..n {
        for j in i + 1..n {
            let rest = full.without(i).without(j);
            for k in rest.subsets() {
                out.push(ElementalInequality::Submodularity { i, j, k });
            }
        }
    }
    out
}

/// Writes `I(B;C|A)` as a sum of elemental inequalities (each with coefficient 1).
///
/// With `B' = B∖A`, `C' = C∖A` and `S = B'∩C'`:
/// `I(B;C|A) = h(S|A) + I(B'∖S; C'∖S | AS)`. The conditional part is chained
/// into `h(s|K)` terms, each equal to `h(s|Ω∖s) + Σ_r I(s; r | K r_<)` over
/// `r ∉ Ks`; the independence part is chained over both arguments.
pub fn mi_elementals(n: usize, b: VarSet, c: VarSet, a: VarSet) -> Vec<ElementalInequality> {
    let full = VarSet::full(n);
    let b1 = b - a;
    let c1 = c - a;
    let s = b1 & c1;
    let mut out = Vec::new();
    let mut ctx = a;
    for v in s.iter() {
        out.extend(cond_elementals(full, v, ctx));
        ctx = ctx.with(v);
    }
    out.extend(independence_elementals(b1 - s, c1 - s, ctx));
    out
}

/// `h(v|K)` for `v ∉ K`.
fn cond_elementals(full: VarSet, v: usize, k: VarSet) -> Vec<ElementalInequality> {
    let mut out = vec![ElementalInequality::Monotonicity(v)];
    let mut ctx = k;
    for r in (full - k).without(v).iter() {
        out.push(ElementalInequality::pair(v, r, ctx).expect("disjoint by construction"));
        ctx = ctx.with(r);
    }
    out
}

/// `I(B;C|K)` for pairwise disjoint `B`, `C`, `K`, chained over both arguments.
fn independence_elementals(b: VarSet, c: VarSet, k: VarSet) -> Vec<ElementalInequality> {
    let mut out = Vec::with_capacity(b.len() * c.len());
    let mut b_prev = VarSet::EMPTY;
    for x in b.iter() {
        let mut c_prev = VarSet::EMPTY;
        for y in c.iter() {
            out.push(
                ElementalInequality::pair(x, y, k | b_prev | c_prev)
                    .expect("disjoint by construction"),
            );
            c_prev = c_prev.with(y);
        }
        b_prev = b_prev.with(x);
    }
    out
}

//! Market-basket data: support counts, densities, and I-measure (differential)
//! constraints evaluated on the polymatroid `N − f`.
//!
//! A basket set of size `N` gives the support function `f(W)`, the number of
//! baskets containing `W`. Its density `d_f(W)` counts the baskets equal to
//! `W`, and `h = N − f` is a positive polymatroid whose atom at `U ⊊ Ω` is the
//! multiplicity of `U`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::constraint::{Constraint, Implication};
use crate::deciders::{ei_check, ModelClass, Verdict};
use crate::error::{Error, Result};
use crate::models::imeasure::{atom_set, i_measure};
use crate::scalar::{Rational, Scalar};
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

/// A multiset of baskets over an item universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasketSet {
    universe: Arc<VarUniverse>,
    baskets: Vec<VarSet>,
}

impl BasketSet {
    pub fn new(universe: Arc<VarUniverse>, baskets: Vec<VarSet>) -> Result<Self> {
        if baskets.is_empty() {
            return Err(Error::InvalidBaskets(
                "a basket set needs at least one basket".into(),
            ));
        }
        for &b in &baskets {
            universe.check(b)?;
        }
        Ok(BasketSet { universe, baskets })
    }

    /// Reads one basket per line, items separated by whitespace. `#` starts a
    /// comment, blank lines are skipped and a line holding only `0` is the
    /// empty basket. Without a universe, items are numbered in order of first
    /// appearance.
    pub fn parse(text: &str, universe: Option<Arc<VarUniverse>>) -> Result<Self> {
        let mut lines: Vec<(usize, Vec<&str>)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let items: Vec<&str> = line.split_whitespace().collect();
            if items == ["0"] {
                lines.push((no + 1, Vec::new()));
            } else {
                lines.push((no + 1, items));
            }
        }
        let universe = match universe {
            Some(u) => u,
            None => {
                let mut names: Vec<&str> = Vec::new();
                for (_, items) in &lines {
                    for it in items {
                        if !names.contains(it) {
                            names.push(it);
                        }
                    }
                }
                VarUniverse::new(names)?
            }
        };
        let mut baskets = Vec::with_capacity(lines.len());
        for (no, items) in lines {
            let mut b = VarSet::EMPTY;
            for it in items {
                let i = universe.index_of(it).ok_or_else(|| Error::Syntax {
                    line: no,
                    column: 1,
                    message: format!("unknown item `{it}`"),
                })?;
                b = b.with(i);
            }
            baskets.push(b);
        }
        BasketSet::new(universe, baskets)
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn baskets(&self) -> &[VarSet] {
        &self.baskets
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.baskets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.baskets.is_empty()
    }

    /// Number of baskets equal to `w`.
    pub fn multiplicity(&self, w: VarSet) -> u64 {
        self.baskets.iter().filter(|&&b| b == w).count() as u64
    }

    /// One basket per line in the format read by [`BasketSet::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &b in &self.baskets {
            if b.is_empty() {
                out.push('0');
            } else {
                let names: Vec<&str> = b.iter().map(|i| self.universe.name(i)).collect();
                out.push_str(&names.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

/// `f(W) = |{i : W ⊆ b_i}|`, indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    universe: Arc<VarUniverse>,
    values: Vec<i64>,
}

impl SupportFunction {
    pub fn get(&self, w: VarSet) -> i64 {
        self.values[w.index()]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `N = f(∅)`.
    pub fn total(&self) -> i64 {
        self.values[0]
    }

    /// `d_f(W) = Σ_{Z ⊇ W} (−1)^{|Z−W|} f(Z)`.
    pub fn density(&self, w: VarSet) -> i64 {
        let rest = self.universe.full() - w;
        rest.subsets()
            .map(|extra| {
                let v = self.values[(w | extra).index()];
                if extra.len() % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// `f` as an exact set function (not a polymatroid; `f(∅) = N`).
    pub fn to_rational(&self) -> Vec<Rational> {
        self.values
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect()
    }
}

pub fn support(b: &BasketSet) -> SupportFunction {
    let n = b.universe.n();
    let mut values = vec![0i64; b.universe.num_subsets()];
    for &basket in &b.baskets {
        values[basket.index()] += 1;
    }
    // Superset sums.
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..values.len() {
            if m & bit == 0 {
                values[m] += values[m | bit];
            }
        }
    }
    SupportFunction {
        universe: b.universe.clone(),
        values,
    }
}

/// Alternating superset sum `d_g(W)` of an arbitrary set function.
pub fn density<T: Scalar>(g: &SetFunction<T>, w: VarSet) -> T {
    let rest = g.universe().full() - w;
    T::sum_iter(rest.subsets().map(|extra| {
        let v = g.get(w | extra).clone();
        if extra.len() % 2 == 0 {
            v
        } else {
            -v
        }
    }))
}

/// `h = N − f`, a positive polymatroid equal to `Σ_i h_{b_i}`.
pub fn to_polymatroid(b: &BasketSet) -> SetFunction<Rational> {
    let f = support(b);
    let n_total = f.total();
    SetFunction::from_fn(b.universe.clone(), |w| {
        Rational::from_integer((n_total - f.get(w)).into())
    })
}

/// Baskets realising `h = Σ_U c_U·h_U`: `c_U` copies of each `U ⊊ Ω`, padded
/// with `N − Σ c_U` copies of `Ω`.
pub fn baskets_from_cone_point(
    universe: &Arc<VarUniverse>,
    coeffs: &BTreeMap<VarSet, u64>,
    n_baskets: u64,
) -> Result<BasketSet> {
    let full = universe.full();
    let mut baskets = Vec::new();
    let mut used = 0u64;
    for (&u, &c) in coeffs {
        universe.check(u)?;
        if u == full {
            return Err(Error::FullStepFunction);
        }
        used += c;
        baskets.extend(std::iter::repeat_n(u, c as usize));
    }
    if used > n_baskets {
        return Err(Error::InvalidBaskets(format!(
            "{n_baskets} baskets cannot hold {used} non-full baskets"
        )));
    }
    baskets.extend(std::iter::repeat_n(full, (n_baskets - used) as usize));
    BasketSet::new(universe.clone(), baskets)
}

/// The atoms of a constraint as an I-measure constraint; CIs map to their atom sets.
pub fn to_atoms(c: &Constraint, n: usize) -> Result<Constraint> {
    Ok(Constraint::Differential(atom_set(c, n)?.iter().collect()))
}

/// `Σ_i −d_h(W_i)`, the sum of the listed atom values of `h`. CIs are
/// evaluated through their atom sets.
pub fn eval_imeasure_constraint<T: Scalar>(h: &SetFunction<T>, c: &Constraint) -> Result<T> {
    c.check_universe(h.universe())?;
    let atoms = match c {
        Constraint::Differential(ws) => ws.clone(),
        Constraint::Ci(_) => atom_set(c, h.n())?.iter().collect(),
    };
    let mu = i_measure(h);
    Ok(T::sum_iter(atoms.iter().map(|&w| mu.atom(w).clone())))
}

/// Implication of I-measure constraints over positive polymatroids.
///
/// It holds iff every atom of `τ` is an atom of some `σ`, and then
/// `h(τ) ≤ h(Σ)` on every positive polymatroid. Otherwise the witness is the
/// step function at an uncovered atom.
pub fn differential_implication(imp: &Implication) -> Result<Verdict> {
    ei_check(imp, ModelClass::PositivePolymatroids)
}

/// The one-basket data set `{U}` for a failed verdict's step-function witness `h_U`.
pub fn witness_baskets(verdict: &Verdict) -> Option<BasketSet> {
    let h = verdict.witness.as_ref()?;
    let mu = i_measure(h);
    let mut coeffs = BTreeMap::new();
    for (u, v) in mu.iter() {
        if v.is_zero() {
            continue;
        }
        let count = v.to_integer();
        let count: u64 = count.try_into().ok()?;
        coeffs.insert(u, count);
    }
    let total = coeffs.values().sum();
    baskets_from_cone_point(h.universe(), &coeffs, total).ok()
}

/// `(d1, d2, d)` for `d1 = f(A)+f(ABCD)−f(ABC)−f(ACD)`, `d2 = f(C)−f(CD)`,
/// `d = f(AB)−f(ABD)` over items named `A, B, C, D`.
pub fn example_differentials(f: &SupportFunction) -> Result<(i64, i64, i64)> {
    let u = &f.universe;
    let s = |names: &[&str]| u.set(names.iter().copied());
    let d1 = f.get(s(&["A"])?) + f.get(s(&["A", "B", "C", "D"])?)
        - f.get(s(&["A", "B", "C"])?)
        - f.get(s(&["A", "C", "D"])?);
    let d2 = f.get(s(&["C"])?) - f.get(s(&["C", "D"])?);
    let d = f.get(s(&["A", "B"])?) - f.get(s(&["A", "B", "D"])?);
    Ok((d1, d2, d))
}

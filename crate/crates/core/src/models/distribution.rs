//! Finite joint distributions and their entropy functions.

use std::collections::{HashMap, HashSet};
use std::io::Read;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::neumaier_sum;
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

/// Probabilities must sum to one within this tolerance.
pub const PROB_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    universe: Arc<VarUniverse>,
    outcomes: Vec<Vec<u32>>,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(universe: Arc<VarUniverse>, outcomes: Vec<(Vec<u32>, f64)>) -> Result<Self> {
        let n = universe.n();
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        let mut seen = HashSet::new();
        for (t, p) in &outcomes {
            if t.len() != n {
                return Err(Error::InvalidDistribution(format!(
                    "outcome has {} values, expected {n}",
                    t.len()
                )));
            }
            if !(p.is_finite() && *p > 0.0) {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} is not positive"
                )));
            }
            if !seen.insert(t.clone()) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate outcome {t:?}"
                )));
            }
        }
        let total = neumaier_sum(outcomes.iter().map(|(_, p)| *p));
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let (outcomes, probs) = outcomes.into_iter().unzip();
        Ok(Distribution {
            universe,
            outcomes,
            probs,
        })
    }

    /// CSV with a header naming the variables plus a mandatory `#prob` column.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(None)
            .from_reader(reader);
        let header = rdr
            .headers()
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?
            .clone();
        let prob_col = header
            .iter()
            .position(|h| h == "#prob")
            .ok_or_else(|| Error::InvalidDistribution("missing `#prob` column".into()))?;
        let names: Vec<&str> = header
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != prob_col)
            .map(|(_, h)| h)
            .collect();
        let universe = VarUniverse::new(names)?;
        let mut interner: Vec<HashMap<String, u32>> = vec![HashMap::new(); universe.n()];
        let mut outcomes = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            let p: f64 = rec
                .get(prob_col)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidDistribution(format!("bad probability in {rec:?}")))?;
            let tuple = rec
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != prob_col)
                .zip(interner.iter_mut())
                .map(|((_, v), dict)| {
                    let next = dict.len() as u32;
                    *dict.entry(v.to_string()).or_insert(next)
                })
                .collect();
            outcomes.push((tuple, p));
        }
        Self::new(universe, outcomes)
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn outcomes(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.outcomes
            .iter()
            .map(Vec::as_slice)
            .zip(self.probs.iter().copied())
    }

    /// `h(W) = H(X_W)` in bits.
    pub fn entropy(&self) -> SetFunction<f64> {
        marginal_entropies(&self.universe, &self.outcomes, |i| self.probs[i])
    }
}

/// Entropy of every marginal of a weighted tuple list. `weight(i)` need not be normalized.
pub(crate) fn marginal_entropies(
    universe: &Arc<VarUniverse>,
    rows: &[Vec<u32>],
    weight: impl Fn(usize) -> f64 + Sync,
) -> SetFunction<f64> {
    let total = neumaier_sum((0..rows.len()).map(&weight));
    let values: Vec<f64> = (0..universe.num_subsets())
        .into_par_iter()
        .map(|m| {
            if m == 0 {
                return 0.0;
            }
            let w = VarSet::from_bits(m as u32);
            let mut groups: HashMap<Vec<u32>, Vec<f64>> = HashMap::new();
            for (i, row) in rows.iter().enumerate() {
                let key: Vec<u32> = w.iter().map(|j| row[j]).collect();
                groups.entry(key).or_default().push(weight(i));
            }
            let terms = groups.into_values().map(|ws| {
                let p = neumaier_sum(ws) / total;
                if p > 0.0 {
                    -p * p.log2()
                } else {
                    0.0
                }
            });
            // Clamp rounding noise: a single group has entropy exactly zero.
            neumaier_sum(terms).max(0.0)
        })
        .collect();
    SetFunction::new(universe.clone(), values).expect("2^n values with h(∅) = 0")
}

/// Uniform over `X ⊕ Y ⊕ Z = 0`.
pub fn parity_distribution() -> Distribution {
    let u = VarUniverse::new(["X", "Y", "Z"]).expect("valid names");
    let outcomes = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]
        .into_iter()
        .map(|t| (t.to_vec(), 0.25))
        .collect();
    Distribution::new(u, outcomes).expect("valid distribution")
}

/// Four-outcome distribution on `A, B, C, D` with `I(C;D|A) = I(C;D|B) = I(A;B) = 0`
/// and `I(C;D) = Θ(ε)`, `I(B;C|D) = O(ε²)`.
pub fn kr_distribution(eps: f64) -> Result<Distribution> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange(format!("ε = {eps} is not in (0, 1/2)")));
    }
    let u = VarUniverse::new(["A", "B", "C", "D"])?;
    let big = 0.5 - eps;
    Distribution::new(
        u,
        vec![
            (vec![0, 0, 0, 0], big),
            (vec![0, 1, 0, 1], big),
            (vec![1, 0, 1, 0], eps),
            (vec![1, 1, 0, 0], eps),
        ],
    )
}

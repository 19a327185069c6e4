//! Relation instances, their empirical entropies, and tuple-level FD/MVD checks.

use std::collections::{HashMap, HashSet};
use std::io::Read;
use std::sync::Arc;

use serde::Serialize;

use super::distribution::marginal_entropies;
use crate::error::{Error, Result};
use crate::setfn::SetFunction;
use crate::varset::{VarSet, VarUniverse};

/// Rows with interned values and positive multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    universe: Arc<VarUniverse>,
    dict: Vec<Vec<String>>,
    rows: Vec<Vec<u32>>,
    weights: Vec<u64>,
}

/// Outcome of [`Relation::key_repair_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KeyRepair {
    /// `h(Ω∖X | X)` of the deduplicated relation.
    pub c: f64,
    pub rows: usize,
    pub distinct_keys: usize,
    /// `|R| − |Π_X(R)|`.
    pub actual: usize,
    /// `(2^c − 1)·|Π_X(R)|`.
    pub bound: f64,
}

impl KeyRepair {
    pub fn holds(&self) -> bool {
        self.actual as f64 <= self.bound + 1e-9 * (1.0 + self.bound.abs())
    }
}

impl Relation {
    /// Builds a relation from string rows. `weights` defaults to all ones.
    pub fn from_rows(
        universe: Arc<VarUniverse>,
        rows: Vec<Vec<String>>,
        weights: Option<Vec<u64>>,
    ) -> Result<Self> {
        let n = universe.n();
        if rows.is_empty() {
            return Err(Error::InvalidRelation("no rows".into()));
        }
        let weights = weights.unwrap_or_else(|| vec![1; rows.len()]);
        if weights.len() != rows.len() {
            return Err(Error::InvalidRelation("one weight per row required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRelation("weights must be positive".into()));
        }
        let mut interner: Vec<HashMap<String, u32>> = vec![HashMap::new(); n];
        let mut dict: Vec<Vec<String>> = vec![Vec::new(); n];
        let mut coded = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidRelation(format!(
                    "row {} has {} values, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
            let t = row
                .into_iter()
                .enumerate()
                .map(|(j, v)| {
                    *interner[j].entry(v.clone()).or_insert_with(|| {
                        dict[j].push(v);
                        (dict[j].len() - 1) as u32
                    })
                })
                .collect();
            coded.push(t);
        }
        Ok(Relation {
            universe,
            dict,
            rows: coded,
            weights,
        })
    }

    /// Rows given directly as small integer codes.
    pub fn from_codes(universe: Arc<VarUniverse>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_string()).collect())
            .collect();
        Self::from_rows(universe, rows, None)
    }

    /// CSV whose header names the attributes; an optional `#weight` column gives multiplicities.
    /// With `universe` given, the header must name exactly its variables (any order).
    pub fn from_csv<R: Read>(reader: R, universe: Option<Arc<VarUniverse>>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        let weight_col = header.iter().position(|h| h == "#weight");
        let cols: Vec<(usize, &str)> = header
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != weight_col)
            .collect();
        let universe = match universe {
            None => VarUniverse::new(cols.iter().map(|&(_, h)| h))?,
            Some(u) => {
                if cols.len() != u.n() || cols.iter().any(|&(_, h)| u.index_of(h).is_none()) {
                    return Err(Error::InvalidRelation(format!(
                        "header {:?} does not match variables {:?}",
                        cols.iter().map(|c| c.1).collect::<Vec<_>>(),
                        u.names()
                    )));
                }
                u
            }
        };
        // position in the universe -> CSV column
        let mut source = vec![0usize; universe.n()];
        for &(col, name) in &cols {
            source[universe.index_of(name).expect("checked")] = col;
        }
        let mut rows = Vec::new();
        let mut weights = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != header.len() {
                return Err(Error::InvalidRelation(format!("ragged row {rec:?}")));
            }
            rows.push(source.iter().map(|&c| rec[c].to_string()).collect());
            if let Some(wc) = weight_col {
                let w: u64 = rec[wc]
                    .parse()
                    .map_err(|_| Error::InvalidRelation(format!("bad weight `{}`", &rec[wc])))?;
                weights.push(w);
            }
        }
        Self::from_rows(universe, rows, weight_col.map(|_| weights))
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    /// Number of stored rows (duplicates and weights not expanded).
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Total multiplicity.
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn value(&self, row: usize, col: usize) -> &str {
        &self.dict[col][self.rows[row][col] as usize]
    }

    /// Set semantics: each distinct tuple once, weight 1.
    pub fn distinct(&self) -> Relation {
        let mut seen = HashSet::new();
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .filter(|r| seen.insert(r.to_vec()))
            .cloned()
            .collect();
        Relation {
            universe: self.universe.clone(),
            dict: self.dict.clone(),
            weights: vec![1; rows.len()],
            rows,
        }
    }

    /// Entropy of the empirical distribution; duplicates and weights count as multiplicity.
    pub fn empirical_entropy(&self) -> SetFunction<f64> {
        marginal_entropies(&self.universe, &self.rows, |i| self.weights[i] as f64)
    }

    fn project(row: &[u32], w: VarSet) -> Vec<u32> {
        w.iter().map(|j| row[j]).collect()
    }

    /// `|Π_X(R)|`.
    pub fn projection_size(&self, x: VarSet) -> usize {
        self.rows
            .iter()
            .map(|r| Self::project(r, x))
            .collect::<HashSet<_>>()
            .len()
    }

    /// `R ⊨ X → Y`, by comparing tuples.
    pub fn check_fd(&self, x: VarSet, y: VarSet) -> Result<bool> {
        self.universe.check(x)?;
        self.universe.check(y)?;
        let mut seen: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        for r in &self.rows {
            let rhs = Self::project(r, y);
            match seen.entry(Self::project(r, x)) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != rhs {
                        return Ok(false);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(rhs);
                }
            }
        }
        Ok(true)
    }

    /// `R ⊨ X ↠ Y | Z` for `XYZ = Ω`: whenever `t1[X] = t2[X]` some `t3` has
    /// `t3[XY] = t1[XY]` and `t3[XZ] = t2[XZ]`.
    pub fn check_mvd(&self, x: VarSet, y: VarSet, z: VarSet) -> Result<bool> {
        for s in [x, y, z] {
            self.universe.check(s)?;
        }
        if x | y | z != self.universe.full() {
            return Err(Error::NonSaturatedMvd(format!(
                "{} ->> {} | {}",
                self.universe.fmt_set(x),
                self.universe.fmt_set(y),
                self.universe.fmt_set(z)
            )));
        }
        let tuples: HashSet<&[u32]> = self.rows.iter().map(Vec::as_slice).collect();
        let mut groups: HashMap<Vec<u32>, Vec<&[u32]>> = HashMap::new();
        for t in &tuples {
            groups.entry(Self::project(t, x)).or_default().push(t);
        }
        let from_first = x | y;
        let n = self.universe.n();
        let mut t3 = vec![0u32; n];
        for group in groups.values() {
            for t1 in group {
                for t2 in group {
                    for j in 0..n {
                        let from1 = from_first.contains(j);
                        let from2 = (x | z).contains(j);
                        if from1 && from2 && t1[j] != t2[j] {
                            return Ok(false);
                        }
                        t3[j] = if from1 { t1[j] } else { t2[j] };
                    }
                    if !tuples.contains(t3.as_slice()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Repairs needed to make `X` a key, against the entropy bound `(2^c − 1)|Π_X(R)|`
    /// with `c = h(Ω∖X | X)`. Computed under set semantics.
    pub fn key_repair_bound(&self, x: VarSet) -> Result<KeyRepair> {
        self.universe.check(x)?;
        let r = self.distinct();
        let h = r.empirical_entropy();
        let c = h.cond_entropy(self.universe.full() - x, x)?.max(0.0);
        let distinct_keys = r.projection_size(x);
        let rows = r.num_rows();
        Ok(KeyRepair {
            c,
            rows,
            distinct_keys,
            actual: rows - distinct_keys,
            bound: (c.exp2() - 1.0) * distinct_keys as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_a() -> Relation {
        let u = VarUniverse::new(["X1", "X2", "U1", "U2"]).unwrap();
        Relation::from_codes(u, vec![vec![0, 0, 0, 0], vec![1, 1, 0, 0]]).unwrap()
    }

    fn parity() -> Relation {
        let u = VarUniverse::new(["X", "Y", "Z"]).unwrap();
        Relation::from_codes(
            u,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn two_tuple_relation_is_a_step_function() {
        let r = fig_a();
        let u = r.universe().clone();
        let h = r.empirical_entropy();
        let step = u.parse_set("U1,U2").unwrap();
        for (m, v) in h.values().iter().enumerate() {
            let expect = if VarSet::from_bits(m as u32).is_subset(step) {
                0.0
            } else {
                1.0
            };
            assert!((v - expect).abs() < 1e-12);
        }
        let s = |t: &str| u.parse_set(t).unwrap();
        assert!(r.check_fd(s("X1"), s("X2")).unwrap());
        assert!(!r.check_fd(s("U1"), s("X1")).unwrap());
        assert!(r.check_fd(u.full(), u.full()).unwrap());
        let k = r.key_repair_bound(s("X1")).unwrap();
        assert_eq!((k.actual, k.bound), (0, 0.0));
    }

    #[test]
    fn parity_relation() {
        let r = parity();
        let u = r.universe().clone();
        let s = |t: &str| u.parse_set(t).unwrap();
        let h = r.empirical_entropy();
        assert!((h.get(s("X")) - 1.0).abs() < 1e-12);
        assert!((h.get(u.full()) - 2.0).abs() < 1e-12);
        assert!(!r.check_mvd(s("X"), s("Y"), s("Z")).unwrap());
        assert!(r.check_mvd(s("X,Y"), s("Z"), s("X")).unwrap());
        assert!(r.check_mvd(s("X"), s("Y"), s("X")).is_err());
    }

    #[test]
    fn single_row_has_zero_entropy() {
        let u = VarUniverse::letters(3).unwrap();
        let r = Relation::from_codes(u, vec![vec![4, 5, 6]]).unwrap();
        assert!(r.empirical_entropy().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn repair_bound_with_groups() {
        let u = VarUniverse::letters(2).unwrap();
        let r = Relation::from_codes(
            u.clone(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        )
        .unwrap();
        let k = r.key_repair_bound(u.parse_set("A").unwrap()).unwrap();
        assert_eq!(k.actual, 2);
        assert!(k.holds());
    }

    #[test]
    fn csv_with_weights() {
        let text = "B,A,#weight\n1,x,3\n2,x,1\n";
        let u = VarUniverse::letters(2).unwrap();
        let r = Relation::from_csv(text.as_bytes(), Some(u.clone())).unwrap();
        assert_eq!(r.total_weight(), 4);
        assert_eq!(r.value(0, 0), "x");
        let h = r.empirical_entropy();
        let expect = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!((h.get(u.parse_set("B").unwrap()) - expect).abs() < 1e-12);
        assert!(Relation::from_csv("A,C\n1,2\n".as_bytes(), Some(u)).is_err());
        assert!(Relation::from_csv("A,B\n".as_bytes(), None).is_err());
    }
}

//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Solves `min cᵀx` subject to `Ax = b`, `x ≥ 0` and reports either an optimal
//! primal/dual pair or a Farkas vector `y` with `yᵀA ≤ 0`, `yᵀb > 0`.
//!
//! Rows with negative right-hand side are negated so every row gets an
//! artificial basic variable. Artificial columns stay in the tableau after
//! phase I (they never re-enter) so both phases can read duals off their
//! reduced costs.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Sparse column: `(row, coefficient)` pairs.
pub type Column = Vec<(usize, Rational)>;

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub rows: usize,
    pub columns: Vec<Column>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Rational>,
        /// Dual solution: `Aᵀy ≤ c` and `bᵀy = cᵀx`.
        y: Vec<Rational>,
        value: Rational,
    },
    /// `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Tableau {
    m: usize,
    /// Structural columns; artificial column `i` is at `n + i`.
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs for all `n + m` columns.
    obj: Vec<Rational>,
    /// Negated objective value.
    obj_rhs: Rational,
    basis: Vec<usize>,
    flipped: Vec<bool>,
}

impl Tableau {
    fn new(p: &LpProblem) -> Self {
        let m = p.rows;
        let n = p.columns.len();
        let flipped: Vec<bool> = p.b.iter().map(Signed::is_negative).collect();
        let mut rows = vec![vec![Rational::zero(); n + m]; m];
        for (j, col) in p.columns.iter().enumerate() {
            for (i, v) in col {
                let v = if flipped[*i] { -v.clone() } else { v.clone() };
                rows[*i][j] = rows[*i][j].clone() + v;
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[n + i] = Rational::one();
        }
        let rhs: Vec<Rational> = p.b.iter().map(|v| v.abs()).collect();
        Tableau {
            m,
            n,
            rows,
            rhs,
            obj: vec![Rational::zero(); n + m],
            obj_rhs: Rational::zero(),
            basis: (n..n + m).collect(),
            flipped,
        }
    }

    /// Reduced costs `d_j = c_j − c_Bᵀ B⁻¹ A_j` for cost vector `cost` over all columns.
    fn price(&mut self, cost: &[Rational]) {
        self.obj = cost.to_vec();
        self.obj_rhs = Rational::zero();
        for i in 0..self.m {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    self.obj[j] = &self.obj[j] - cb * a;
                }
            }
            self.obj_rhs = &self.obj_rhs - cb * &self.rhs[i];
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        if !piv.is_one() {
            let inv = piv.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let nz: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] = &row[j] - &f * &prow[j];
            }
            self.rhs[i] = &self.rhs[i] - &f * &prhs;
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for &j in &nz {
                self.obj[j] = &self.obj[j] - &f * &prow[j];
            }
            self.obj_rhs = &self.obj_rhs - &f * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality. Returns `false` if unbounded.
    fn optimize(&mut self, phase: Phase) -> bool {
        let limit = match phase {
            Phase::One => self.n + self.m,
            Phase::Two => self.n,
        };
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Duals in the caller's row orientation from artificial reduced costs.
    fn duals(&self, art_cost: &Rational) -> Vec<Rational> {
        (0..self.m)
            .map(|i| {
                let y = art_cost - &self.obj[self.n + i];
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

pub fn solve(p: &LpProblem) -> LpOutcome {
    assert_eq!(p.b.len(), p.rows);
    assert_eq!(p.c.len(), p.columns.len());
    let mut t = Tableau::new(p);
    let (n, m) = (t.n, t.m);

    let mut cost1 = vec![Rational::zero(); n + m];
    for c in cost1.iter_mut().skip(n) {
        *c = Rational::one();
    }
    t.price(&cost1);
    t.optimize(Phase::One);
    if (-t.obj_rhs.clone()).is_positive() {
        return LpOutcome::Infeasible {
            farkas: t.duals(&Rational::one()),
        };
    }

    // Drive zero-valued artificials out where possible; rows where that fails are redundant.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    let mut cost2 = p.c.clone();
    cost2.extend(std::iter::repeat_n(Rational::zero(), m));
    t.price(&cost2);
    if !t.optimize(Phase::Two) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &j) in t.basis.iter().enumerate() {
        if j < n {
            x[j] = t.rhs[i].clone();
        }
    }
    LpOutcome::Optimal {
        x,
        y: t.duals(&Rational::zero()),
        value: -t.obj_rhs.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn col(entries: &[(usize, i64)]) -> Column {
        entries.iter().map(|&(i, v)| (i, int(v))).collect()
    }

    #[test]
    fn small_optimum_with_duals() {
        // min -x0 - x1  s.t. x0 + 2x1 + s0 = 4, 3x0 + x1 + s1 = 6
        let p = LpProblem {
            rows: 2,
            columns: vec![
                col(&[(0, 1), (1, 3)]),
                col(&[(0, 2), (1, 1)]),
                col(&[(0, 1)]),
                col(&[(1, 1)]),
            ],
            b: vec![int(4), int(6)],
            c: vec![int(-1), int(-1), int(0), int(0)],
        };
        match solve(&p) {
            LpOutcome::Optimal { x, y, value } => {
                assert_eq!(value, rat(-14, 5));
                assert_eq!(x[0], rat(8, 5));
                assert_eq!(x[1], rat(6, 5));
                let by = &y[0] * int(4) + &y[1] * int(6);
                assert_eq!(by, value);
                for (j, column) in p.columns.iter().enumerate() {
                    let ay = column.iter().fold(int(0), |acc, (i, v)| acc + v * &y[*i]);
                    assert!(ay <= p.c[j]);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_gives_farkas() {
        // x0 + x1 = -1 with x ≥ 0
        let p = LpProblem {
            rows: 1,
            columns: vec![col(&[(0, 1)]), col(&[(0, 1)])],
            b: vec![int(-1)],
            c: vec![int(0), int(0)],
        };
        match solve(&p) {
            LpOutcome::Infeasible { farkas } => {
                assert!(farkas[0].is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_and_unbounded() {
        let p = LpProblem {
            rows: 2,
            columns: vec![col(&[(0, 1), (1, 1)]), col(&[(0, 1), (1, 1)])],
            b: vec![int(2), int(2)],
            c: vec![int(1), int(2)],
        };
        match solve(&p) {
            LpOutcome::Optimal { x, value, .. } => {
                assert_eq!(value, int(2));
                assert_eq!(x, vec![int(2), int(0)]);
            }
            other => panic!("{other:?}"),
        }
        let p = LpProblem {
            rows: 1,
            columns: vec![col(&[(0, 1)]), col(&[(0, -1)])],
            b: vec![int(1)],
            c: vec![int(0), int(-1)],
        };
        assert_eq!(solve(&p), LpOutcome::Unbounded);
    }
}

//! Dense two-phase tableau simplex over exact rationals.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0`. Pivoting follows Bland's rule
//! (least entering index, least leaving basic index on ratio ties), which
//! guarantees termination under exact arithmetic. Row duals are read off the
//! artificial columns, which keep `B^{-1}` for the whole run.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub(crate) struct Solution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// One dual per row: `c - Aᵀy` is non-negative at the optimum.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    /// `rows[i]` has `n + m` coefficient columns followed by the rhs.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, one per column (rhs slot unused).
    cost: Vec<Rational>,
    basis: Vec<usize>,
    n: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().expect("non-empty row")
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Recomputes reduced costs for column costs `c` (length `n + m`).
    fn price(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &c[bv];
            if cb.is_zero() {
                continue;
            }
            for (v, t) in cost.iter_mut().zip(&self.rows[i]) {
                *v -= cb * t;
            }
        }
        self.cost = cost;
    }

    /// Runs Bland-rule iterations over columns `< limit`.
    fn optimize(&mut self, limit: usize) -> Result<()> {
        loop {
            let Some(col) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
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
                Some((r, _)) => self.pivot(r, col),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

pub(crate) fn solve(lp: &StandardLp) -> Result<Solution> {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));
    debug_assert_eq!(lp.b.len(), m);

    // Flip rows so every rhs is non-negative; remember the sign for duals.
    let flipped: Vec<bool> = lp.b.iter().map(Signed::is_negative).collect();
    let mut rows = Vec::with_capacity(m);
    for (i, &neg) in flipped.iter().enumerate() {
        let mut row: Vec<Rational> = lp.a[i].iter().map(|v| if neg { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(if neg { -&lp.b[i] } else { lp.b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, cost: Vec::new(), basis: (n..n + m).collect(), n, pivots: 0 };

    // Phase I: minimise the sum of artificials.
    let phase1: Vec<Rational> = (0..n + m)
        .map(|j| if j >= n { Rational::one() } else { Rational::zero() })
        .collect();
    t.price(&phase1);
    t.optimize(n + m)?;
    let infeasibility: Rational = (0..m).filter(|&i| t.basis[i] >= n).map(|i| t.rhs(i).clone()).sum();
    if infeasibility.is_positive() {
        return Err(Error::Infeasible);
    }
    // Drive zero-level artificials out of the basis where possible; a row
    // with no structural entry is redundant and keeps its artificial.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }

    // Phase II: artificials may not re-enter.
    let mut phase2 = lp.c.clone();
    phase2.extend((0..m).map(|_| Rational::zero()));
    t.price(&phase2);
    t.optimize(t.n)?;

    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(i).clone();
        }
    }
    let value = x.iter().zip(&lp.c).map(|(xi, ci)| xi * ci).sum();
    // Reduced cost of artificial k is 0 - y_k for the flipped system.
    let duals = (0..m)
        .map(|k| {
            let y = -&t.cost[n + k];
            if flipped[k] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(Solution { x, value, duals, pivots: t.pivots })
}

//! Exhaustive vertex enumeration: an oracle for the simplex.
//!
//! Intersects every maximal set of inequalities with the normalization
//! hyperplane, keeps the feasible intersection points and takes the least
//! objective value. Extreme rays of the recession cone are checked first so
//! an unbounded program is reported rather than missed. Shares nothing with
//! the tableau code beyond the program's linear forms.

use num_traits::{One, Signed, Zero};

use super::ConeProgram;
use crate::error::{Error, Result};
use crate::indices::SingularityIndexVector;
use crate::linear_form::LinearForm;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceSummary {
    pub minimum: Rational,
    pub subsets_checked: usize,
    pub feasible_vertices: usize,
    pub minimizers: Vec<SingularityIndexVector>,
}

/// Solution set of `A x = b`: one particular solution plus a nullspace basis,
/// or `None` when inconsistent.
fn solve_affine(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pr) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); n];
            d[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                d[c] = -&m[i][f];
            }
            d
        })
        .collect();
    Some((x, basis))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn homogeneous_eval(f: &LinearForm, vars: &[u32], x: &[Rational]) -> Rational {
    vars.iter().zip(x).map(|(&i, v)| f.coefficient(i) * v).sum()
}

pub fn brute_force_minimum(prog: &ConeProgram) -> Result<BruteForceSummary> {
    let vars: Vec<u32> = prog.variables().collect();
    let n = vars.len();
    let row = |f: &LinearForm| -> Vec<Rational> { vars.iter().map(|&i| f.coefficient(i)).collect() };
    let ineqs: Vec<&LinearForm> = prog.inequalities().iter().map(|(_, f)| f).collect();
    let norm_row = row(prog.normalization());

    // A non-pointed region has no vertices; refuse rather than mislead.
    let mut all: Vec<Vec<Rational>> = ineqs.iter().map(|f| row(f)).collect();
    all.push(norm_row.clone());
    let zeros = vec![Rational::zero(); all.len()];
    let (_, lineality) = solve_affine(&all, &zeros).expect("homogeneous system is consistent");
    if !lineality.is_empty() {
        return Err(Error::CrossCheckFailure("feasible region contains a line".into()));
    }

    let mut subsets_checked = 0;
    if n >= 2 {
        for subset in combinations(ineqs.len(), n - 2) {
            subsets_checked += 1;
            let mut a = vec![norm_row.clone()];
            a.extend(subset.iter().map(|&j| row(ineqs[j])));
            let zeros = vec![Rational::zero(); a.len()];
            let (_, basis) = solve_affine(&a, &zeros).expect("homogeneous system is consistent");
            if basis.len() != 1 {
                continue;
            }
            for sign in [Rational::one(), -Rational::one()] {
                let d: Vec<Rational> = basis[0].iter().map(|v| v * &sign).collect();
                let in_recession = ineqs.iter().all(|f| !homogeneous_eval(f, &vars, &d).is_negative());
                if in_recession && homogeneous_eval(prog.objective(), &vars, &d).is_negative() {
                    return Err(Error::Unbounded);
                }
            }
        }
    }

    let mut best: Option<Rational> = None;
    let mut minimizers = Vec::new();
    let mut feasible_vertices = 0;
    for subset in combinations(ineqs.len(), n - 1) {
        subsets_checked += 1;
        let mut a = vec![norm_row.clone()];
        let mut b = vec![Rational::one() - prog.normalization().constant()];
        for &j in &subset {
            a.push(row(ineqs[j]));
            b.push(-ineqs[j].constant());
        }
        let Some((x, basis)) = solve_affine(&a, &b) else { continue };
        if !basis.is_empty() {
            continue;
        }
        let point = SingularityIndexVector::new(prog.profile().g(), x.clone());
        let Ok(point) = point else { continue };
        if !prog.is_feasible(&point) {
            continue;
        }
        feasible_vertices += 1;
        let value = prog.objective().eval(&point);
        match &best {
            Some(b) if value > *b => {}
            Some(b) if value == *b => {
                if !minimizers.contains(&point) {
                    minimizers.push(point);
                }
            }
            _ => {
                best = Some(value);
                minimizers = vec![point];
            }
        }
    }
    let minimum = best.ok_or(Error::Infeasible)?;
    Ok(BruteForceSummary { minimum, subsets_checked, feasible_vertices, minimizers })
}

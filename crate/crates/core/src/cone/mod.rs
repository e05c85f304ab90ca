//! The singularity-index cone and exact certification of the slope bound.
//!
//! For `q_f >= 1` every locally non-trivial fibration has index vector in
//! the cone `{s_i >= 0 (i >= 3), s_2 <= Λ_h(s)}`. Pinning `χ_f = 1` turns the
//! slope minimisation over that cone into a linear program, solved here by
//! an exact simplex that also returns a dual certificate.

mod certificate;
mod enumerate;
mod simplex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use certificate::{verify_certificate, verify_optimum, Certificate};
pub use enumerate::{brute_force_minimum, BruteForceSummary};

use crate::bounds::lambda_bound;
use crate::error::{Error, Result};
use crate::indices::{chi_form, k2_form, slope, SingularityIndexVector};
use crate::linear_form::LinearForm;
use crate::profile::{BoundCase, GenusProfile};
use crate::rational::{self, int, ratio, Rational};

/// Names one inequality of a [`ConeProgram`]. Orders as `cone` first, then
/// sign constraints by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintId {
    /// `Λ_h - s_2 >= 0`
    Cone,
    /// `s_i >= 0`
    NonNegative(u32),
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintId::Cone => write!(f, "cone"),
            ConstraintId::NonNegative(i) => write!(f, "sign_s{i}"),
        }
    }
}

impl Serialize for ConstraintId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Λ_h - s_2`, required to be non-negative on the cone.
pub fn build_constraint(p: &GenusProfile) -> Result<LinearForm> {
    if p.q_f() == 0 {
        return Err(Error::ZeroIrregularity { what: "cone constraint" });
    }
    let g = i64::from(p.g());
    let q = i64::from(p.q_f());
    let mut f = LinearForm::var(2).scale(&int(-1));
    for k in q..=g / 2 {
        f.add_term((2 * k + 1) as u32, ratio((2 * k + 1) * (2 * g + 1 - 2 * k), g + 1));
    }
    for k in q + 1..=(g + 1) / 2 {
        f.add_term((2 * k) as u32, ratio(2 * k * (g + 1 - k), g + 1));
    }
    f.add_term(p.g() + 2, int(g + 1));
    for k in 1..q {
        f.add_term((2 * k + 1) as u32, int(-4 * k * (2 * k + 1)));
    }
    for k in 2..=q {
        f.add_term((2 * k) as u32, int(-2 * k * (2 * k - 1)));
    }
    Ok(f)
}

/// Minimise `objective` subject to `normalization = 1` and every inequality
/// form `>= 0`, over the free variables `s_2..s_{g+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeProgram {
    profile: GenusProfile,
    objective: LinearForm,
    normalization: LinearForm,
    inequalities: Vec<(ConstraintId, LinearForm)>,
}

impl ConeProgram {
    pub fn profile(&self) -> &GenusProfile {
        &self.profile
    }

    pub fn objective(&self) -> &LinearForm {
        &self.objective
    }

    pub fn normalization(&self) -> &LinearForm {
        &self.normalization
    }

    pub fn inequalities(&self) -> &[(ConstraintId, LinearForm)] {
        &self.inequalities
    }

    pub fn inequality(&self, id: ConstraintId) -> Option<&LinearForm> {
        self.inequalities.iter().find(|(i, _)| *i == id).map(|(_, f)| f)
    }

    /// Variable indices `2..=g+2`.
    pub fn variables(&self) -> std::ops::RangeInclusive<u32> {
        2..=self.profile.g() + 2
    }

    pub fn num_variables(&self) -> usize {
        self.profile.g() as usize + 1
    }

    pub fn sign_constraint_count(&self) -> usize {
        self.inequalities.iter().filter(|(i, _)| matches!(i, ConstraintId::NonNegative(_))).count()
    }

    /// Every inequality holds at `point` (normalization not checked).
    pub fn in_cone(&self, point: &SingularityIndexVector) -> bool {
        self.inequalities.iter().all(|(_, f)| !f.eval(point).is_negative())
    }

    pub fn is_feasible(&self, point: &SingularityIndexVector) -> bool {
        self.normalization.eval(point).is_one() && self.in_cone(point)
    }
}

pub fn build_program(p: &GenusProfile) -> Result<ConeProgram> {
    let cone = build_constraint(p)?;
    let mut inequalities: Vec<(ConstraintId, LinearForm)> =
        (3..=p.g() + 2).map(|i| (ConstraintId::NonNegative(i), LinearForm::var(i))).collect();
    inequalities.insert(0, (ConstraintId::Cone, cone));
    Ok(ConeProgram {
        profile: *p,
        objective: k2_form(p.g()),
        normalization: chi_form(p.g()),
        inequalities,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimizationResult {
    #[serde(with = "rational::serde_str")]
    pub minimum: Rational,
    pub optimal_point: SingularityIndexVector,
    pub tight_constraints: BTreeSet<ConstraintId>,
    pub certificate: Certificate,
    #[serde(skip)]
    pub pivots: usize,
}

pub fn minimize(prog: &ConeProgram) -> Result<OptimizationResult> {
    let vars: Vec<u32> = prog.variables().collect();
    let nv = vars.len();
    let ni = prog.inequalities.len();
    let cols = 2 * nv + ni;

    // Free variable s_i = plus_i - minus_i at columns 2k, 2k+1; slack t_j
    // at column 2nv + j with row j: form_j(s) - t_j = -constant_j.
    let split = |f: &LinearForm| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); cols];
        for (k, &i) in vars.iter().enumerate() {
            let c = f.coefficient(i);
            row[2 * k + 1] = -&c;
            row[2 * k] = c;
        }
        row
    };

    let mut a = Vec::with_capacity(ni + 1);
    let mut b = Vec::with_capacity(ni + 1);
    for (j, (_, f)) in prog.inequalities.iter().enumerate() {
        let mut row = split(f);
        row[2 * nv + j] = int(-1);
        a.push(row);
        b.push(-f.constant());
    }
    a.push(split(&prog.normalization));
    b.push(Rational::one() - prog.normalization.constant());
    let c = split(&prog.objective);

    let sol = simplex::solve(&simplex::StandardLp { a, b, c })?;

    let point = SingularityIndexVector::new(
        prog.profile.g(),
        (0..nv).map(|k| &sol.x[2 * k] - &sol.x[2 * k + 1]).collect(),
    )?;
    let minimum = sol.value + prog.objective.constant();
    let tight_constraints = prog
        .inequalities
        .iter()
        .filter(|(_, f)| f.eval(&point).is_zero())
        .map(|(id, _)| *id)
        .collect();
    let certificate = Certificate {
        multipliers: prog
            .inequalities
            .iter()
            .zip(&sol.duals)
            .map(|((id, _), y)| (*id, y.clone()))
            .collect::<BTreeMap<_, _>>(),
    };
    Ok(OptimizationResult {
        minimum,
        optimal_point: point,
        tight_constraints,
        certificate,
        pivots: sol.pivots,
    })
}

/// A cone point whose slope is exactly λ_{g,q_f}.
pub fn extremal_ray(p: &GenusProfile) -> Result<SingularityIndexVector> {
    let cone = build_constraint(p)?;
    let g = p.g();
    let carrier = match p.case() {
        BoundCase::Generic => 2 * (p.q_f() + 1),
        BoundCase::EvenHalf => g + 1,
        BoundCase::OddTop => g + 2,
    };
    // s_2 = Λ_h evaluated at the unit vector in direction `carrier`.
    let s2 = cone.coefficient(carrier);
    SingularityIndexVector::from_pairs(g, [(carrier, int(1)), (2, s2)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub profile: GenusProfile,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub lp_minimum: Rational,
    pub equal: bool,
    pub witness: SingularityIndexVector,
    #[serde(with = "rational::serde_str")]
    pub witness_slope: Rational,
    /// Witness lies in the cone and its slope equals the bound.
    pub witness_attains: bool,
    /// The dual certificate passed the independent checker.
    pub certificate_valid: bool,
    pub optimum: OptimizationResult,
}

impl SharpnessReport {
    pub fn passed(&self) -> bool {
        self.equal && self.witness_attains && self.certificate_valid
    }
}

pub fn verify_sharpness(p: &GenusProfile) -> Result<SharpnessReport> {
    let prog = build_program(p)?;
    let optimum = minimize(&prog)?;
    let bound = lambda_bound(p);
    let witness = extremal_ray(p)?;
    let witness_slope = slope(&witness)?;
    let witness_attains = prog.in_cone(&witness) && witness_slope == bound;
    let certificate_valid = verify_certificate(p, &optimum.minimum, &optimum.certificate).is_ok()
        && verify_optimum(p, &optimum.minimum, &optimum.optimal_point).is_ok();
    Ok(SharpnessReport {
        profile: *p,
        equal: optimum.minimum == bound,
        lp_minimum: optimum.minimum.clone(),
        bound,
        witness,
        witness_slope,
        witness_attains,
        certificate_valid,
        optimum,
    })
}

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use super::{build_program, ConstraintId};
use crate::error::{Error, Result};
use crate::indices::SingularityIndexVector;
use crate::profile::GenusProfile;
use crate::rational::{self, Rational};

/// Dual multipliers, one per inequality. Valid when every multiplier is
/// non-negative and `objective - minimum · normalization` equals
/// `Σ multiplier_j · inequality_j` as linear forms, which proves
/// `objective >= minimum` on the whole normalized cone.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub multipliers: BTreeMap<ConstraintId, Rational>,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.multipliers.len()))?;
        for (id, v) in &self.multipliers {
            m.serialize_entry(&id.to_string(), &rational::format(v))?;
        }
        m.end()
    }
}

/// Re-derives the program from `profile` alone and checks that
/// `certificate` proves `minimum` is a lower bound.
pub fn verify_certificate(
    profile: &GenusProfile,
    minimum: &Rational,
    certificate: &Certificate,
) -> Result<()> {
    let prog = build_program(profile)?;
    let mut residual = prog.objective() - &prog.normalization().scale(minimum);
    for (id, y) in &certificate.multipliers {
        if y.is_negative() {
            return Err(Error::CrossCheckFailure(format!(
                "multiplier for {id} is negative: {}",
                rational::format(y)
            )));
        }
        let form = prog
            .inequality(*id)
            .ok_or_else(|| Error::CrossCheckFailure(format!("unknown constraint {id}")))?;
        residual = &residual - &form.scale(y);
    }
    if !residual.is_zero() {
        return Err(Error::CrossCheckFailure(format!(
            "objective - minimum*normalization - sum(multipliers*constraints) = {residual}, not 0"
        )));
    }
    Ok(())
}

/// Checks that `point` is feasible and achieves `minimum`, the upper-bound
/// half of optimality.
pub fn verify_optimum(
    profile: &GenusProfile,
    minimum: &Rational,
    point: &SingularityIndexVector,
) -> Result<()> {
    let prog = build_program(profile)?;
    if !prog.is_feasible(point) {
        return Err(Error::CrossCheckFailure("optimal point is infeasible".into()));
    }
    let value = prog.objective().eval(point);
    if &value != minimum {
        return Err(Error::CrossCheckFailure(format!(
            "objective at optimal point is {}, reported minimum {}",
            rational::format(&value),
            rational::format(minimum)
        )));
    }
    Ok(())
}

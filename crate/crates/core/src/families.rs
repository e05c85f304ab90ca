//! The two families of fibrations that attain λ_{g,q_f}: double covers of
//! pencils on a Hirzebruch surface, and quotients of products by a diagonal
//! involution.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::lambda_bound;
use crate::cone::build_constraint;
use crate::error::{Error, Result};
use crate::indices::{n_form, relative_invariants, RelativeInvariants, SingularityIndexVector};
use crate::profile::GenusProfile;
use crate::rational::{self, int, ratio, Rational};

/// `(a1·C0 + b1·Γ)·(a2·C0 + b2·Γ)` on the Hirzebruch surface with invariant
/// `e`, using `C0² = -e`, `C0·Γ = 1`, `Γ² = 0`.
pub fn hirzebruch_intersection(a1: i64, b1: i64, a2: i64, b2: i64, e: i64) -> i64 {
    -a1 * a2 * e + a1 * b2 + a2 * b1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuledCoverParams {
    pub m: i64,
    pub e: i64,
    pub b0: i64,
    pub q_f: i64,
}

impl RuledCoverParams {
    pub fn validate(&self) -> Result<GenusProfile> {
        if self.m < 2 {
            return Err(Error::InvalidParams(format!("m = {} must be at least 2", self.m)));
        }
        if self.e < 1 {
            return Err(Error::InvalidParams(format!("e = {} must be at least 1", self.e)));
        }
        if self.b0 <= self.m * self.e {
            return Err(Error::InvalidParams(format!(
                "b0 = {} must exceed m*e = {} for m*C0 + b0*Γ to be very ample",
                self.b0,
                self.m * self.e
            )));
        }
        if self.q_f < 1 {
            return Err(Error::InvalidParams(format!("q_f = {} must be at least 1", self.q_f)));
        }
        GenusProfile::new(self.genus() as u32, self.q_f as u32)
    }

    /// `g = m(q_f+1) - 1`.
    pub fn genus(&self) -> i64 {
        self.m * (self.q_f + 1) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductQuotientParams {
    pub g: i64,
    pub branch_count: i64,
}

impl ProductQuotientParams {
    pub fn validate(&self) -> Result<GenusProfile> {
        if self.g < 2 {
            return Err(Error::GenusTooSmall { g: self.g });
        }
        if self.branch_count < 2 || self.branch_count % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "branch count {} must be a positive even number",
                self.branch_count
            )));
        }
        GenusProfile::new(self.g as u32, ((self.g + 1) / 2) as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub g: u32,
    pub q_f: u32,
    pub invariants: RelativeInvariants,
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    pub attains_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_vector: Option<SingularityIndexVector>,
    /// `Λ_h - s_2` on the derived index vector, when there is one.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub cone_slack: Option<Rational>,
}

mod opt_rational {
    use super::*;
    pub fn serialize<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&rational::format(r)),
            None => s.serialize_none(),
        }
    }
}

pub fn build_ruled_cover(p: &RuledCoverParams) -> Result<ExampleReport> {
    let profile = p.validate()?;
    let (m, q1) = (p.m, p.q_f + 1);
    let x = hirzebruch_intersection(p.m, p.b0, p.m, p.b0, p.e);

    let k2 = (ratio(4 * (m - 1) * q1, m) - int(2)) * int(x);
    let chi = ratio((m - 1) * q1, 2 * m) * int(x);
    let invariants = RelativeInvariants::new(k2, chi);
    let slope = int(8) - ratio(4 * m, (m - 1) * q1);
    if invariants.slope()? != slope {
        return Err(Error::CrossCheckFailure("closed-form slope disagrees with K²/χ".into()));
    }

    // All singular points of the branch curve have multiplicity 2(q_f+1),
    // one per blow-up of the pencil's base points; n = L²/(g+1) with
    // L = (q_f+1)(m C0 + b0 Γ).
    let g = profile.g();
    let carrier = (2 * q1) as u32;
    let n = ratio(q1 * x, m);
    let partial = SingularityIndexVector::from_pairs(g, [(carrier, int(x))])?;
    let g_i = i64::from(g);
    let s2 = int(2 * (2 * g_i + 1)) * (&n - n_form(g).eval(&partial));
    let vector = partial.with_s2(s2);
    let via_indices = relative_invariants(&vector);
    if via_indices != invariants {
        return Err(Error::CrossCheckFailure(format!(
            "closed forms (K²={}, χ={}) disagree with index formulas (K²={}, χ={})",
            rational::format(&invariants.k2),
            rational::format(&invariants.chi),
            rational::format(&via_indices.k2),
            rational::format(&via_indices.chi),
        )));
    }
    let cone_slack = build_constraint(&profile)?.eval(&vector);

    let bound = lambda_bound(&profile);
    Ok(ExampleReport {
        g,
        q_f: profile.q_f(),
        attains_bound: slope == bound,
        invariants,
        slope,
        bound,
        index_vector: Some(vector),
        cone_slack: Some(cone_slack),
    })
}

pub fn build_product_quotient(p: &ProductQuotientParams) -> Result<ExampleReport> {
    let profile = p.validate()?;
    let (g, sigma) = (p.g, p.branch_count);
    let k2 = int(2 * (g - 1) * sigma);
    let (chi, slope) = if g % 2 == 0 {
        (ratio(g * sigma, 4), ratio(8 * (g - 1), g))
    } else {
        (ratio((g - 1) * sigma, 4), int(8))
    };
    let invariants = RelativeInvariants::new(k2, chi);
    if invariants.chi.is_zero() || invariants.slope()? != slope {
        return Err(Error::CrossCheckFailure("closed-form slope disagrees with K²/χ".into()));
    }
    let bound = lambda_bound(&profile);
    Ok(ExampleReport {
        g: profile.g(),
        q_f: profile.q_f(),
        attains_bound: slope == bound,
        invariants,
        slope,
        bound,
        index_vector: None,
        cone_slack: None,
    })
}

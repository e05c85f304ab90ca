//! The sharp slope bound λ_{g,q_f}, the conjectured bound it dominates, and
//! the coefficient system that certifies the bound over the index cone.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::{BoundCase, GenusProfile};
use crate::rational::{self, int, ratio, Rational};

/// λ_{g,q_f}.
pub fn lambda_bound(p: &GenusProfile) -> Rational {
    let g = i64::from(p.g());
    let q = i64::from(p.q_f());
    match p.case() {
        BoundCase::Generic => int(8) - ratio(4 * (g + 1), (q + 1) * (g - q)),
        BoundCase::EvenHalf => ratio(8 * (g - 1), g),
        BoundCase::OddTop => int(8),
    }
}

/// `4(g-1)/(g-q_f)`. Always defined on admissible profiles since `q_f < g`.
pub fn conjecture_bound(p: &GenusProfile) -> Rational {
    let g = i64::from(p.g());
    let q = i64::from(p.q_f());
    ratio(4 * (g - 1), g - q)
}

/// Closed form of `λ_{g,q_f} - 4(g-1)/(g-q_f)` on `q_f <= (g-1)/2`:
/// `4 q_f (g - 2q_f - 1) / ((q_f+1)(g-q_f))`.
pub fn bound_gap(p: &GenusProfile) -> Result<Rational> {
    if p.case() != BoundCase::Generic {
        return Err(Error::GapOutOfDomain { g: p.g(), q_f: p.q_f() });
    }
    let g = i64::from(p.g());
    let q = i64::from(p.q_f());
    Ok(ratio(4 * q * (g - 2 * q - 1), (q + 1) * (g - q)))
}

/// Plain difference `λ_{g,q_f} - 4(g-1)/(g-q_f)`, valid on every profile.
pub fn bound_difference(p: &GenusProfile) -> Rational {
    lambda_bound(p) - conjecture_bound(p)
}

/// Coefficients of the lower-bound decomposition of
/// `K_f² - λ χ_f` in the singularity indices (q_f >= 1).
///
/// Keyed maps hold `k -> coefficient` over the ranges
/// `α_k: 1..q_f-1`, `β_k: 2..q_f`, `γ_k: q_f..floor(g/2)`,
/// `δ_k: q_f+1..floor((g+1)/2)`; any range may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientSet {
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_map")]
    pub alpha_k: BTreeMap<u32, Rational>,
    #[serde(serialize_with = "ser_map")]
    pub beta_k: BTreeMap<u32, Rational>,
    #[serde(serialize_with = "ser_map")]
    pub gamma_k: BTreeMap<u32, Rational>,
    #[serde(serialize_with = "ser_map")]
    pub delta_k: BTreeMap<u32, Rational>,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
}

fn ser_map<S: serde::Serializer>(
    m: &BTreeMap<u32, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(&k.to_string(), &rational::format(v))?;
    }
    out.end()
}

impl CoefficientSet {
    /// All entries, labelled `alpha`, `alpha_1`, `beta_2`, ...
    pub fn entries(&self) -> Vec<(String, &Rational)> {
        let mut out = vec![("alpha".to_string(), &self.alpha)];
        for (name, map) in [
            ("alpha", &self.alpha_k),
            ("beta", &self.beta_k),
            ("gamma", &self.gamma_k),
            ("delta", &self.delta_k),
        ] {
            out.extend(map.iter().map(|(k, v)| (format!("{name}_{k}"), v)));
        }
        out
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries().iter().all(|(_, v)| !v.is_negative())
    }
}

pub fn proof_coefficients(p: &GenusProfile) -> Result<CoefficientSet> {
    if p.q_f() == 0 {
        return Err(Error::ZeroIrregularity { what: "coefficient system" });
    }
    let lambda = lambda_bound(p);
    let g = i64::from(p.g());
    let q = i64::from(p.q_f());
    let eight_minus = int(8) - &lambda;

    let alpha = int(g - 1) * &eight_minus / int(4);
    let alpha_k = (1..q)
        .map(|k| (k as u32, int(k * k) * &lambda - int((2 * k - 1) * (2 * k - 1))))
        .collect();
    let beta_k = (2..=q)
        .map(|k| (k as u32, int(k - 1) * (int(k) * &lambda - int(4 * (k - 1))) / int(2)))
        .collect();
    let gamma_k = (q..=g / 2)
        .map(|k| {
            let w = 4 * k * (g - k);
            let v = (int(8 * (w - 1)) - int(w + g) * &lambda) / int(4 * (g + 1));
            (k as u32, v)
        })
        .collect();
    let delta_k = (q + 1..=(g + 1) / 2)
        .map(|k| {
            let v = (int(k * (g + 1 - k)) * &eight_minus - int(4 * (g + 1))) / int(2 * (g + 1));
            (k as u32, v)
        })
        .collect();

    Ok(CoefficientSet { alpha, alpha_k, beta_k, gamma_k, delta_k, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn prof(g: u32, q: u32) -> GenusProfile {
        GenusProfile::new(g, q).unwrap()
    }

    #[test]
    fn lambda_table() {
        assert_eq!(lambda_bound(&prof(3, 1)), int(4));
        assert_eq!(lambda_bound(&prof(2, 0)), int(2));
        assert_eq!(lambda_bound(&prof(5, 2)), ratio(16, 3));
        assert_eq!(lambda_bound(&prof(4, 2)), int(6));
        assert_eq!(lambda_bound(&prof(5, 3)), int(8));
        assert_eq!(lambda_bound(&prof(2, 1)), int(4));
        assert_eq!(lambda_bound(&prof(20, 1)), ratio(110, 19));
    }

    #[test]
    fn conjecture_values() {
        assert_eq!(conjecture_bound(&prof(3, 1)), int(4));
        assert_eq!(conjecture_bound(&prof(7, 2)), ratio(24, 5));
        for g in 2..30 {
            assert_eq!(conjecture_bound(&prof(g, 0)), ratio(4 * (g as i64 - 1), g as i64));
        }
    }

    #[test]
    fn gap_values() {
        assert_eq!(bound_gap(&prof(3, 1)).unwrap(), int(0));
        assert_eq!(bound_gap(&prof(9, 0)).unwrap(), int(0));
        assert_eq!(bound_gap(&prof(7, 2)).unwrap(), ratio(16, 15));
        assert_eq!(lambda_bound(&prof(7, 2)) - ratio(24, 5), ratio(16, 15));
        assert_eq!(bound_gap(&prof(4, 2)), Err(Error::GapOutOfDomain { g: 4, q_f: 2 }));
        assert_eq!(bound_difference(&prof(4, 2)), int(0));
    }

    #[test]
    fn coefficient_degeneracies() {
        let c = proof_coefficients(&prof(4, 2)).unwrap();
        assert_eq!(c.gamma_k[&2], int(0));
        assert!(c.delta_k.is_empty());

        let c = proof_coefficients(&prof(5, 2)).unwrap();
        assert_eq!(c.delta_k[&3], int(0));

        let c = proof_coefficients(&prof(5, 3)).unwrap();
        assert_eq!(c.alpha, int(0));
        assert!(c.gamma_k.is_empty() && c.delta_k.is_empty());
        assert!(c.all_nonnegative());
    }

    #[test]
    fn coefficients_reject_zero_irregularity() {
        assert!(matches!(
            proof_coefficients(&prof(6, 0)),
            Err(Error::ZeroIrregularity { .. })
        ));
    }

    #[test]
    fn coefficient_ranges() {
        let c = proof_coefficients(&prof(9, 3)).unwrap();
        assert_eq!(c.alpha_k.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(c.beta_k.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(c.gamma_k.keys().copied().collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(c.delta_k.keys().copied().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(c.entries().len(), 1 + 2 + 2 + 2 + 2);
    }

    #[test]
    fn monotone_in_irregularity() {
        for g in 2..=40u32 {
            let mut prev: Option<Rational> = None;
            for q in 0..=(g - 1) / 2 {
                let l = lambda_bound(&prof(g, q));
                if let Some(p) = prev {
                    assert!(l > p, "g={g} q={q}");
                }
                prev = Some(l);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn gap_closed_form_matches_difference(g in 2u32..=40, q_seed in 0u32..100) {
            let q = q_seed % ((g - 1) / 2 + 1);
            let p = prof(g, q);
            let gap = bound_gap(&p).unwrap();
            proptest::prop_assert_eq!(gap.clone(), lambda_bound(&p) - conjecture_bound(&p));
            proptest::prop_assert!(!gap.is_negative());
            proptest::prop_assert_eq!(gap.is_zero(), q == 0 || 2 * q + 1 == g);
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fiber genus `g` and relative irregularity `q_f` of a hyperelliptic
/// fibration. Only admissible pairs can be constructed: `g >= 2` and
/// `0 <= q_f <= floor((g+1)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GenusProfile {
    g: u32,
    q_f: u32,
}

/// Which branch of the piecewise bound a profile falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// `q_f <= (g-1)/2`
    Generic,
    /// `g` even, `q_f = g/2`
    EvenHalf,
    /// `g` odd, `q_f = (g+1)/2`
    OddTop,
}

pub fn max_irregularity(g: u32) -> u32 {
    g.div_ceil(2)
}

pub fn validate_profile(g: i64, q_f: i64) -> Result<GenusProfile> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g });
    }
    if q_f < 0 {
        return Err(Error::NegativeIrregularity { q_f });
    }
    let max = (g + 1) / 2;
    if q_f > max {
        return Err(Error::IrregularityTooLarge { g, q_f, max });
    }
    let g = u32::try_from(g).map_err(|_| Error::InvalidParams(format!("genus {g} too large")))?;
    Ok(GenusProfile { g, q_f: q_f as u32 })
}

impl GenusProfile {
    pub fn new(g: u32, q_f: u32) -> Result<Self> {
        validate_profile(i64::from(g), i64::from(q_f))
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn q_f(&self) -> u32 {
        self.q_f
    }

    pub fn case(&self) -> BoundCase {
        if 2 * self.q_f < self.g {
            BoundCase::Generic
        } else if self.g.is_multiple_of(2) {
            BoundCase::EvenHalf
        } else {
            BoundCase::OddTop
        }
    }

    /// Every admissible profile of genus `g`, in increasing `q_f`.
    pub fn all_for_genus(g: u32) -> impl Iterator<Item = GenusProfile> {
        (0..=max_irregularity(g)).map(move |q_f| GenusProfile { g, q_f })
    }
}

impl<'de> Deserialize<'de> for GenusProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            g: i64,
            q_f: i64,
        }
        let raw = Raw::deserialize(d)?;
        validate_profile(raw.g, raw.q_f).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_examples() {
        assert!(validate_profile(3, 1).is_ok());
        assert!(validate_profile(2, 0).is_ok());
        assert_eq!(
            validate_profile(4, 3),
            Err(Error::IrregularityTooLarge { g: 4, q_f: 3, max: 2 })
        );
    }

    #[test]
    fn distinct_diagnostics() {
        assert_eq!(validate_profile(1, 0), Err(Error::GenusTooSmall { g: 1 }));
        assert_eq!(validate_profile(5, -1), Err(Error::NegativeIrregularity { q_f: -1 }));
        assert!(validate_profile(5, 3).is_ok());
        assert!(validate_profile(5, 4).is_err());
    }

    #[test]
    fn cases() {
        assert_eq!(GenusProfile::new(5, 2).unwrap().case(), BoundCase::Generic);
        assert_eq!(GenusProfile::new(4, 2).unwrap().case(), BoundCase::EvenHalf);
        assert_eq!(GenusProfile::new(5, 3).unwrap().case(), BoundCase::OddTop);
        assert_eq!(GenusProfile::new(3, 1).unwrap().case(), BoundCase::Generic);
    }

    #[test]
    fn enumerates_cells() {
        let n: usize = (2..=5).map(|g| GenusProfile::all_for_genus(g).count()).sum();
        assert_eq!(n, 12);
    }

    #[test]
    fn deserialize_validates() {
        let p: GenusProfile = serde_json::from_str(r#"{"g":3,"q_f":1}"#).unwrap();
        assert_eq!((p.g(), p.q_f()), (3, 1));
        assert!(serde_json::from_str::<GenusProfile>(r#"{"g":4,"q_f":3}"#).is_err());
    }
}

//! Singularity indices and the relative invariants they determine.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear_form::LinearForm;
use crate::rational::{self, int, ratio, Rational};

/// The vector `(s_2, s_3, ..., s_{g+2})`.
///
/// Entries are exact rationals so that LP optima and rays can be carried in
/// the same type; data read off a resolution forest is integral except for
/// `s_2`, which inherits the denominator of `n`. `s_2` may be negative,
/// every other entry is non-negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityIndexVector {
    g: u32,
    entries: Vec<Rational>,
}

impl SingularityIndexVector {
    pub fn new(g: u32, entries: Vec<Rational>) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall { g: i64::from(g) });
        }
        let expected = g as usize + 1;
        if entries.len() != expected {
            return Err(Error::IndexLength { g, expected, got: entries.len() });
        }
        for (offset, v) in entries.iter().enumerate().skip(1) {
            if v.is_negative() {
                return Err(Error::NegativeIndex { index: offset as u32 + 2, value: v.clone() });
            }
        }
        Ok(Self { g, entries })
    }

    pub fn from_integers(g: u32, entries: &[i64]) -> Result<Self> {
        Self::new(g, entries.iter().map(|&v| int(v)).collect())
    }

    pub fn zero(g: u32) -> Self {
        Self { g, entries: vec![Rational::zero(); g as usize + 1] }
    }

    /// Builds a vector from `(index, value)` pairs; unlisted indices are zero.
    pub fn from_pairs<I>(g: u32, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        if g < 2 {
            return Err(Error::GenusTooSmall { g: i64::from(g) });
        }
        let mut entries = vec![Rational::zero(); g as usize + 1];
        for (i, v) in pairs {
            if i < 2 || i > g + 2 {
                return Err(Error::UnknownIndex { g, index: i, max: g + 2 });
            }
            entries[(i - 2) as usize] = v;
        }
        Self::new(g, entries)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// `s_i` for `2 <= i <= g+2`.
    pub fn get(&self, i: u32) -> &Rational {
        &self.entries[(i - 2) as usize]
    }

    pub(crate) fn get_or_zero(&self, i: u32) -> Rational {
        if i < 2 {
            return Rational::zero();
        }
        self.entries.get((i - 2) as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Replaces `s_2`; other entries keep their validated signs.
    pub fn with_s2(mut self, s2: Rational) -> Self {
        self.entries[0] = s2;
        self
    }

    pub fn scale(&self, t: &Rational) -> Result<Self> {
        Self::new(self.g, self.entries.iter().map(|v| v * t).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// For even `g` the top index `s_{g+2}` vanishes on every normalized
    /// model; strict mode turns that into a hard check.
    pub fn check_strict(&self) -> Result<()> {
        let top = self.get(self.g + 2);
        if self.g.is_multiple_of(2) && !top.is_zero() {
            return Err(Error::StrictTopIndex { g: self.g, value: top.clone() });
        }
        Ok(())
    }
}

impl Serialize for SingularityIndexVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let keyed: Vec<(String, String)> = self
            .entries
            .iter()
            .enumerate()
            .map(|(o, v)| (format!("s{}", o + 2), rational::format(v)))
            .collect();
        let mut st = s.serialize_struct("SingularityIndexVector", 2)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("indices", &OrderedPairs(&keyed))?;
        st.end()
    }
}

struct OrderedPairs<'a>(&'a [(String, String)]);

impl Serialize for OrderedPairs<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Reads `{"schema": 1, "g": 3, "indices": {"s2": 16, "s4": 8}}`. Values may
/// be JSON integers or `"p/q"` strings; absent indices are zero.
impl<'de> Deserialize<'de> for SingularityIndexVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;

        #[derive(Deserialize)]
        struct Value(#[serde(with = "rational::serde_str")] Rational);

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(default)]
            schema: Option<u32>,
            g: u32,
            #[serde(default)]
            indices: BTreeMap<String, Value>,
        }

        let raw = Raw::deserialize(d)?;
        if let Some(found) = raw.schema {
            if found != 1 {
                return Err(D::Error::custom(Error::Schema { found }));
            }
        }
        let mut pairs = Vec::with_capacity(raw.indices.len());
        for (key, Value(v)) in raw.indices {
            let i: u32 = key
                .strip_prefix('s')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| D::Error::custom(format!("bad index key {key:?}, expected \"s<i>\"")))?;
            pairs.push((i, v));
        }
        SingularityIndexVector::from_pairs(raw.g, pairs).map_err(D::Error::custom)
    }
}

/// `K_f²`, `χ_f` and `e_f`. Built only through [`RelativeInvariants::new`],
/// which fixes `e_f = 12 χ_f - K_f²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeInvariants {
    #[serde(with = "rational::serde_str")]
    pub k2: Rational,
    #[serde(with = "rational::serde_str")]
    pub chi: Rational,
    #[serde(with = "rational::serde_str")]
    pub e: Rational,
}

impl RelativeInvariants {
    pub fn new(k2: Rational, chi: Rational) -> Self {
        let e = int(12) * &chi - &k2;
        Self { k2, chi, e }
    }

    /// Geometric fibrations have integral invariants; arbitrary cone points
    /// need not.
    pub fn is_integral(&self) -> bool {
        rational::is_integral(&self.k2)
            && rational::is_integral(&self.chi)
            && rational::is_integral(&self.e)
    }

    pub fn slope(&self) -> Result<Rational> {
        if self.chi.is_zero() {
            return Err(Error::LocallyTrivial);
        }
        if self.chi.is_negative() {
            return Err(Error::NegativeChi { chi: self.chi.clone() });
        }
        Ok(&self.k2 / &self.chi)
    }
}

/// `(a_k, b_k) = (12k(g-k) - 2g - 1, 6k(g-k+1) - 4g - 2)` for
/// `1 <= k <= floor((g+1)/2)`.
pub fn xiao_coefficients(g: u32, k: u32) -> Result<(Rational, Rational)> {
    let max = g.div_ceil(2);
    if k < 1 || k > max {
        return Err(Error::CoefficientIndex { g, k, max });
    }
    let (g, k) = (i64::from(g), i64::from(k));
    Ok((int(12 * k * (g - k) - 2 * g - 1), int(6 * k * (g - k + 1) - 4 * g - 2)))
}

fn odd_range(g: u32) -> std::ops::RangeInclusive<u32> {
    1..=g / 2
}

fn even_range(g: u32) -> std::ops::RangeInclusive<u32> {
    2..=g.div_ceil(2)
}

/// `K_f²` as a linear form in the indices.
pub fn k2_form(g: u32) -> LinearForm {
    let gi = i64::from(g);
    let d = int(2 * gi + 1);
    let mut f = LinearForm::zero()
        .with_term(2, int(gi - 1) / &d)
        .with_term(g + 2, int((gi - 1) * (3 * gi + 1)) / &d);
    for k in odd_range(g) {
        let (a, _) = xiao_coefficients(g, k).expect("k in range");
        f.add_term(2 * k + 1, a / &d);
    }
    for k in even_range(g) {
        let (_, b) = xiao_coefficients(g, k).expect("k in range");
        f.add_term(2 * k, b / &d);
    }
    f
}

/// `χ_f` as a linear form in the indices.
pub fn chi_form(g: u32) -> LinearForm {
    let gi = i64::from(g);
    let d = 2 * gi + 1;
    let mut f = LinearForm::zero()
        .with_term(2, ratio(gi, 4 * d))
        .with_term(g + 2, ratio(gi * gi - 2 * gi - 1, 4 * d));
    for k in odd_range(g).map(i64::from) {
        f.add_term(2 * k as u32 + 1, ratio(k * (gi - k), d));
    }
    for k in even_range(g).map(i64::from) {
        f.add_term(2 * k as u32, ratio(k * (gi - k + 1), 2 * d));
    }
    f
}

/// `n = L²/(g+1)` as a linear form in the indices.
pub fn n_form(g: u32) -> LinearForm {
    let gi = i64::from(g);
    let d = 2 * gi + 1;
    let mut f = LinearForm::zero()
        .with_term(2, ratio(1, 2 * d))
        .with_term(g + 2, ratio(gi * gi + 3 * gi + 1, d));
    for k in odd_range(g).map(i64::from) {
        f.add_term(2 * k as u32 + 1, ratio(4 * k * k + 2 * k, d));
    }
    for k in even_range(g).map(i64::from) {
        f.add_term(2 * k as u32, ratio(2 * k * k - k, d));
    }
    f
}

pub fn relative_invariants(s: &SingularityIndexVector) -> RelativeInvariants {
    RelativeInvariants::new(k2_form(s.g()).eval(s), chi_form(s.g()).eval(s))
}

pub fn slope(s: &SingularityIndexVector) -> Result<Rational> {
    relative_invariants(s).slope()
}

pub fn n_from_indices(s: &SingularityIndexVector) -> Rational {
    n_form(s.g()).eval(s)
}

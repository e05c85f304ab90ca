use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::indices::SingularityIndexVector;
use crate::rational::{self, Rational};

/// An affine form `constant + Σ c_i · s_i` in the singularity indices.
///
/// Variables are keyed by their index `i` (so `s_2` is key 2). Absent keys
/// have coefficient zero and zero coefficients are never stored, which makes
/// structural equality the same as equality of forms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForm {
    coefficients: BTreeMap<u32, Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(index: u32) -> Self {
        let mut f = Self::zero();
        f.add_term(index, rational::int(1));
        f
    }

    pub fn constant_form(c: Rational) -> Self {
        Self { coefficients: BTreeMap::new(), constant: c }
    }

    pub fn add_term(&mut self, index: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(index).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coefficients.remove(&index);
        }
    }

    pub fn with_term(mut self, index: u32, coeff: Rational) -> Self {
        self.add_term(index, coeff);
        self
    }

    pub fn coefficient(&self, index: u32) -> Rational {
        self.coefficients.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coefficients.iter().map(|(&i, c)| (i, c))
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty() && self.constant.is_zero()
    }

    pub fn scale(&self, by: &Rational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Self {
            coefficients: self.coefficients.iter().map(|(&i, c)| (i, c * by)).collect(),
            constant: &self.constant * by,
        }
    }

    /// Evaluates the form at `point`. Indices outside the point's range read
    /// as zero.
    pub fn eval(&self, point: &SingularityIndexVector) -> Rational {
        self.terms()
            .fold(self.constant.clone(), |acc, (i, c)| acc + c * point.get_or_zero(i))
    }
}

impl Add<&LinearForm> for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i, c.clone());
        }
        out.constant += &rhs.constant;
        out
    }
}

impl Sub<&LinearForm> for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        self + &(-rhs)
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(&rational::int(-1))
    }
}

impl Mul<&Rational> for &LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: &Rational) -> LinearForm {
        self.scale(rhs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == rational::int(1) {
                write!(f, "s{i}")?;
            } else {
                write!(f, "({})·s{i}", rational::format(&mag))?;
            }
            first = false;
        }
        if !self.constant.is_zero() || first {
            if first {
                write!(f, "{}", rational::format(&self.constant))?;
            } else {
                let sign = if self.constant.is_negative() { "-" } else { "+" };
                write!(f, " {sign} {}", rational::format(&self.constant.abs()))?;
            }
        }
        Ok(())
    }
}

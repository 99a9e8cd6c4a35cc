//! Sparse integer polynomials in one variable `t` with degrees >= 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Integer-coefficient polynomial, stored as `degree -> coefficient` with no
/// zero coefficients and no degree-0 term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<u32, i64>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * t^degree`. `degree` must be at least 1.
    pub fn add_term(&mut self, degree: u32, coeff: i64) {
        assert!(degree >= 1, "degree-0 terms are not representable");
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(degree).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&degree);
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, i64)>>(terms: I) -> Self {
        let mut p = SparsePoly::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn coeff(&self, degree: u32) -> i64 {
        self.terms.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.terms.iter().map(|(&d, &c)| (d, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn sum_abs_coeffs(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).sum()
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c);
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly::from_terms(self.terms().map(|(d, c)| (d, -c)))
    }
}

impl fmt::Display for SparsePoly {
    /// Ascending degrees with explicit coefficients: `2t^1 + 1t^2 - 1t^4`.
    /// The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            if i == 0 {
                write!(f, "{c}t^{d}")?;
            } else if c < 0 {
                write!(f, " - {}t^{d}", -c)?;
            } else {
                write!(f, " + {c}t^{d}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for SparsePoly {
    /// Serialized as an ascending list of `[degree, coefficient]` pairs.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in self.terms() {
            seq.serialize_element(&(d, c))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(u32, i64)> = Vec::deserialize(d)?;
        if pairs.iter().any(|&(deg, _)| deg == 0) {
            return Err(serde::de::Error::custom("degree-0 term"));
        }
        Ok(SparsePoly::from_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_displays_as_zero() {
        assert_eq!(SparsePoly::zero().to_string(), "0");
    }

    #[test]
    fn display_is_ascending_with_signs() {
        let p = SparsePoly::from_terms([(4, -1), (1, 2), (2, 1)]);
        assert_eq!(p.to_string(), "2t^1 + 1t^2 - 1t^4");
        let n = SparsePoly::from_terms([(1, -2), (2, 1)]);
        assert_eq!(n.to_string(), "-2t^1 + 1t^2");
    }

    #[test]
    fn cancelling_terms_vanish() {
        let mut p = SparsePoly::zero();
        p.add_term(3, 2);
        p.add_term(3, -2);
        assert!(p.is_zero());
    }

    #[test]
    fn subtraction_and_abs_sum() {
        let a = SparsePoly::from_terms([(1, 2), (3, 2)]);
        let b = SparsePoly::from_terms([(1, 2)]);
        let d = &a - &b;
        assert_eq!(d, SparsePoly::from_terms([(3, 2)]));
        assert_eq!(d.sum_abs_coeffs(), 2);
        assert_eq!((&b - &a).sum_abs_coeffs(), 2);
    }

    #[test]
    #[should_panic(expected = "degree-0")]
    fn degree_zero_is_rejected() {
        let mut p = SparsePoly::zero();
        p.add_term(0, 1);
    }
}

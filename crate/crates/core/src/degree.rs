//! Exact membership degrees in the unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Longest fractional part accepted by the decimal parser; 10^18 still fits an `i64` denominator.
const MAX_FRACTION_DIGITS: usize = 18;

/// A rational number in `[0, 1]`.
///
/// Every lattice value in the crate (possibility degrees, distances, similarities)
/// is a `Degree`. Only `min`, `max`, comparison and the complement `1 - x` are ever
/// applied, so no value is ever rounded.
#[derive(Clone, Copy)]
pub struct Degree(Ratio<i64>);

// Ratios are kept in lowest terms, so equal values have equal parts. This is much
// cheaper than the cross-multiplying comparison `Ratio` itself uses.
impl PartialEq for Degree {
    fn eq(&self, other: &Self) -> bool {
        self.numer() == other.numer() && self.denom() == other.denom()
    }
}

impl Eq for Degree {}

impl std::hash::Hash for Degree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("`{0}` is not a decimal or fraction literal")]
    Malformed(String),
    #[error("`{0}` has more than {MAX_FRACTION_DIGITS} fractional digits")]
    TooPrecise(String),
    #[error("`{0}` lies outside [0, 1]")]
    OutOfRange(String),
}

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, failing unless the value lies in `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self, DegreeError> {
        if denom == 0 {
            return Err(DegreeError::Malformed(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::from_integer(0) || r > Ratio::from_integer(1) {
            return Err(DegreeError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Degree(r))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.numer() == 0
    }

    pub fn is_one(self) -> bool {
        self == Degree::ONE
    }

    /// `1 - self`.
    pub fn complement(self) -> Degree {
        Degree(Ratio::from_integer(1) - self.0)
    }

    pub fn meet(self, other: Degree) -> Degree {
        self.min(other)
    }

    pub fn join(self, other: Degree) -> Degree {
        self.max(other)
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Decimal expansion when the denominator has only factors 2 and 5.
    fn terminating_decimal(self) -> Option<String> {
        let (n, d) = (self.numer(), self.denom());
        let mut rest = d;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return None;
        }
        let digits = twos.max(fives);
        if digits == 0 {
            return Some(n.to_string());
        }
        // n/d = n * 2^(k-twos) * 5^(k-fives) / 10^k, computed in i128 to avoid overflow.
        let scaled = n as i128 * 2i128.pow(digits - twos) * 5i128.pow(digits - fives);
        let ten = 10i128.pow(digits);
        let int_part = scaled / ten;
        let frac = format!("{:0width$}", scaled % ten, width = digits as usize);
        Some(format!("{int_part}.{}", frac.trim_end_matches('0')))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(&other.numer());
        }
        // Denominators are positive, so cross-multiplication preserves order; i128 cannot overflow.
        let lhs = self.numer() as i128 * other.denom() as i128;
        let rhs = other.numer() as i128 * self.denom() as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Degree {
    fn default() -> Self {
        Degree::ZERO
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terminating_decimal() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Degree {
    type Err = DegreeError;

    /// Accepts `0`, `1`, `0.75`, `.5`, `1.000` and fractions such as `2/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lit = s.trim();
        let malformed = || DegreeError::Malformed(s.to_string());
        if lit.starts_with('-') {
            return Err(DegreeError::OutOfRange(s.to_string()));
        }
        if let Some((p, q)) = lit.split_once('/') {
            let numer: i64 = parse_digits(p).ok_or_else(malformed)?;
            let denom: i64 = parse_digits(q).ok_or_else(malformed)?;
            if denom == 0 {
                return Err(malformed());
            }
            if numer > denom {
                return Err(DegreeError::OutOfRange(s.to_string()));
            }
            return Degree::new(numer, denom);
        }
        let (int_part, frac_part) = lit.split_once('.').unwrap_or((lit, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        let int_value: i64 = if int_part.is_empty() {
            0
        } else {
            parse_digits(int_part).ok_or_else(|| {
                if int_part.bytes().all(|b| b.is_ascii_digit()) {
                    DegreeError::OutOfRange(s.to_string())
                } else {
                    malformed()
                }
            })?
        };
        if lit.contains('.') && frac_part.is_empty() {
            return Err(malformed());
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        if int_value > 1 {
            return Err(DegreeError::OutOfRange(s.to_string()));
        }
        let frac = frac_part.trim_end_matches('0');
        if frac.len() > MAX_FRACTION_DIGITS {
            return Err(DegreeError::TooPrecise(s.to_string()));
        }
        let denom = 10i64.pow(frac.len() as u32);
        let frac_value: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| malformed())? };
        let numer = int_value * denom + frac_value;
        if numer > denom {
            return Err(DegreeError::OutOfRange(s.to_string()));
        }
        Degree::new(numer, denom)
    }
}

fn parse_digits(s: &str) -> Option<i64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literals that are known to be valid, mainly in tests.
///
/// # Panics
/// Panics when `s` is not a degree literal.
pub fn deg(s: &str) -> Degree {
    s.parse().unwrap_or_else(|e| panic!("invalid degree literal: {e}"))
}

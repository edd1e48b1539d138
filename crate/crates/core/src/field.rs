//! Scalar fields used throughout the crate.
//!
//! Everything above this module is written against [`Field`] (and
//! [`OrderedField`] where a sign is needed), so the same linear algebra and
//! Gröbner code runs over the rationals and over the two-element field.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short name used in reports (`Q`, `F2`).
    const NAME: &'static str;
    const CHARACTERISTIC: u32;

    /// Image of an integer under the canonical map `Z -> K`.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }
}

/// A field with a compatible total order. Only the rationals qualify here;
/// the exact simplex is written against this trait.
pub trait OrderedField: Field + Ord + Signed {}

impl Field for BigRational {
    const NAME: &'static str = "Q";
    const CHARACTERISTIC: u32 = 0;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl OrderedField for BigRational {}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub fn new(bit: bool) -> Self {
        F2(bit)
    }

    pub fn bit(self) -> bool {
        self.0
    }
}

impl Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2::ONE
    }
}

impl Add for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Div for F2 {
    type Output = F2;
    fn div(self, rhs: F2) -> F2 {
        assert!(rhs.0, "division by zero in F2");
        self
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Field for F2 {
    const NAME: &'static str = "F2";
    const CHARACTERISTIC: u32 = 2;

    fn from_bigint(n: &BigInt) -> Self {
        F2(n.is_odd())
    }
}

/// Runtime tag for the two supported coefficient fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum FieldKind {
    Q,
    F2,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Q => "Q",
            FieldKind::F2 => "F2",
        }
    }

    /// Coefficient ring spelling used in exported computer-algebra scripts.
    pub fn cas_name(self) -> &'static str {
        match self {
            FieldKind::Q => "QQ",
            FieldKind::F2 => "ZZ/2",
        }
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "qq" => Ok(FieldKind::Q),
            "f2" | "z2" | "gf2" => Ok(FieldKind::F2),
            other => Err(format!("unknown field `{other}` (expected q or f2)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_arithmetic() {
        let (o, z) = (F2::ONE, F2::ZERO);
        assert_eq!(o + o, z);
        assert_eq!(o * o, o);
        assert_eq!(o * z, z);
        assert_eq!(-o, o);
        assert_eq!(o.inverse(), o);
        assert_eq!(F2::from_int(-3), o);
        assert_eq!(F2::from_int(4), z);
    }

    #[test]
    fn rational_embedding() {
        let q = <BigRational as Field>::from_int(-7);
        assert_eq!(q, BigRational::from_integer(BigInt::from(-7)));
        assert_eq!(q.inverse() * q, BigRational::one());
    }

    #[test]
    #[should_panic]
    fn f2_division_by_zero() {
        let _ = F2::ONE / F2::ZERO;
    }
}

//! Exact arithmetic kernel: rational vectors, dense linear algebra over any
//! [`Field`](crate::Field), integer lattice helpers and an exact simplex.

mod lattice;
mod linalg;
mod lp;

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use lattice::{determinant, gcd_all, is_unimodular, make_primitive};
pub use linalg::{
    clear_denominators, kernel_basis, kernel_basis_over, rank, rref, solve_unique, EchelonSpace,
};
pub use lp::{lp_bounded, lp_feasible, lp_optimize, LinConstraint, LinearSystem, LpOutcome, Sense};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::input(format!("`{s}` is not an integer or p/q rational"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::input(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text for a rational: `"n"` for integers, otherwise `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point or direction in `Q^d`. The length is fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        RatVector(v.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        debug_assert_eq!(self.0.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn dot_ints(&self, other: &[i64]) -> Rational {
        debug_assert_eq!(self.0.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, &b)| acc + a * rat(b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> RatVector {
        RatVector(self.0.iter().map(|x| -x).collect())
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer entries; `None` if some entry is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.numer().clone()))
            .collect()
    }

    /// Index of the first nonzero entry, with its sign.
    pub fn leading_sign(&self) -> Option<(usize, bool)> {
        self.0
            .iter()
            .position(|x| !x.is_zero())
            .map(|i| (i, self.0[i].is_positive()))
    }
}

impl Deref for RatVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

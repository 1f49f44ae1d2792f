//! Exact rational scalars.
//!
//! All certificates in this crate are rational identities, so every scalar is
//! an exact fraction. Values whose numerator and denominator fit in an `i64`
//! are kept inline; anything larger spills into an arbitrary-precision
//! fraction backed by [`num_rational::BigRational`]. Big values that shrink
//! back into machine range are demoted, so the representation is canonical
//! and equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Numerator and denominator fit in machine words; `den > 0`, `gcd = 1`.
    Small(i64, i64),
    /// Arbitrary-precision fallback; never representable as `Small`.
    Big(Box<BigRational>),
}

/// Errors from parsing a rational out of its `num/den` text form.
#[derive(Debug, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal: {0}")]
    BadInt(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    /// Build `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        reduce_i128(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    pub fn from_big(q: BigRational) -> Rational {
        demote(q)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(q) => (**q).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(q) => q.is_integer(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n > 0,
            Rational::Big(q) => q.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(q) => q.is_negative(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        match self {
            Rational::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                reduce_i128(*d as i128 * n.signum() as i128, n.unsigned_abs() as i128)
            }
            Rational::Big(q) => demote(q.recip()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Fused `self += a * b`, the inner-product workhorse.
    pub fn add_mul(&mut self, a: &Rational, b: &Rational) {
        if let (Rational::Small(an, ad), Rational::Small(bn, bd), Rational::Small(sn, sd)) =
            (a, b, &*self)
        {
            // Integer-only accumulation needs no gcd at all.
            if *ad == 1 && *bd == 1 && *sd == 1 {
                let num = *sn as i128 + *an as i128 * *bn as i128;
                *self = match i64::try_from(num) {
                    Ok(n) => Rational::Small(n, 1),
                    Err(_) => Rational::Big(Box::new(BigRational::from_integer(num.into()))),
                };
                return;
            }
            // p/q + (an*bn)/(ad*bd), all in i128: cannot overflow before reduction.
            let pn = *an as i128 * *bn as i128;
            let pd = *ad as i128 * *bd as i128;
            let num = *sn as i128 * pd + pn * *sd as i128;
            let den = *sd as i128 * pd;
            *self = reduce_i128_checked(num, den);
            return;
        }
        let r = self.to_big() + a.to_big() * b.to_big();
        *self = demote(r);
    }

    /// Exact integer value when the rational is a machine-word integer.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Canonical `num/den` form used by the matrix exchange format and JSON
    /// reports; always carries the denominator, e.g. `3/1`, `-5/2`.
    pub fn to_exchange(&self) -> String {
        match self {
            Rational::Small(n, d) => format!("{}/{}", n, d),
            Rational::Big(q) => format!("{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Reduce an `i128` fraction and pick the inline representation if it fits.
fn reduce_i128(num: i128, den: i128) -> Rational {
    reduce_i128_checked(num, den)
}

fn reduce_i128_checked(mut num: i128, mut den: i128) -> Rational {
    debug_assert!(den != 0);
    if num == 0 {
        return Rational::Small(0, 1);
    }
    if den < 0 {
        num = -num;
        den = -den;
    }
    if den != 1 {
        let g = num.unsigned_abs().gcd(&den.unsigned_abs()) as i128;
        num /= g;
        den /= g;
    }
    if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
        Rational::Small(n, d)
    } else {
        Rational::Big(Box::new(BigRational::new(num.into(), den.into())))
    }
}

/// Move a big rational back inline when it fits.
fn demote(q: BigRational) -> Rational {
    if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
        debug_assert!(d > 0);
        Rational::Small(n, d)
    } else {
        Rational::Big(Box::new(q))
    }
}

macro_rules! binop_body {
    ($lhs:expr, $rhs:expr, $small:expr, $big:expr) => {
        match ($lhs, $rhs) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                $small(*an as i128, *ad as i128, *bn as i128, *bd as i128)
            }
            (a, b) => demote($big(a.to_big(), b.to_big())),
        }
    };
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        binop_body!(
            self,
            rhs,
            |an: i128, ad: i128, bn: i128, bd: i128| reduce_i128(an * bd + bn * ad, ad * bd),
            |a: BigRational, b: BigRational| a + b
        )
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        binop_body!(
            self,
            rhs,
            |an: i128, ad: i128, bn: i128, bd: i128| reduce_i128(an * bd - bn * ad, ad * bd),
            |a: BigRational, b: BigRational| a - b
        )
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        binop_body!(
            self,
            rhs,
            |an: i128, ad: i128, bn: i128, bd: i128| reduce_i128(an * bn, ad * bd),
            |a: BigRational, b: BigRational| a * b
        )
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        binop_body!(
            self,
            rhs,
            |an: i128, ad: i128, bn: i128, bd: i128| reduce_i128(an * bd, ad * bn),
            |a: BigRational, b: BigRational| a / b
        )
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => {
                if *n == i64::MIN {
                    reduce_i128(-(*n as i128), *d as i128)
                } else {
                    Rational::Small(-n, *d)
                }
            }
            Rational::Big(q) => demote(-(**q).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $fn:ident),*) => {$(
        impl $trait for Rational {
            type Output = Rational;
            fn $fn(self, rhs: Rational) -> Rational { $trait::$fn(&self, &rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let diff = self - other;
        if diff.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<u128> for Rational {
    fn from(n: u128) -> Self {
        if let Ok(small) = i64::try_from(n) {
            Rational::Small(small, 1)
        } else {
            demote(BigRational::from_integer(BigInt::from(n)))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{}", n),
            Rational::Small(n, d) => write!(f, "{}/{}", n, d),
            Rational::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Rational::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num =
            BigInt::from_str(num_s).map_err(|_| ParseRationalError::BadInt(num_s.to_string()))?;
        let den =
            BigInt::from_str(den_s).map_err(|_| ParseRationalError::BadInt(den_s.to_string()))?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        Ok(demote(BigRational::new(num, den)))
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        let mut acc = Rational::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

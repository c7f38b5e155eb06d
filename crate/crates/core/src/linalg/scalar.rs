//! Exact rational scalars.
//!
//! Values that fit into a pair of `i64` are kept inline and operated on with
//! `i128` intermediates; anything larger spills into a [`BigRational`]. The
//! representation is canonical (a value is `Small` whenever it fits), so the
//! derived equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, `den > 0`.
    Small { num: i64, den: i64 },
    Big(BigRational),
}

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small { num: 0, den: 1 });
    pub const ONE: Scalar = Scalar(Repr::Small { num: 1, den: 1 });

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128_parts(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128_parts(mut num: i128, mut den: i128) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g != 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar(Repr::Big(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Numerator and denominator as `i64`, when both fit.
    pub fn to_i64_parts(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small { num, den } => Some((*num, *den)),
            Repr::Big(_) => None,
        }
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128_parts(*den as i128, *num as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => {
                match a.checked_add(*b) {
                    Some(s) => Scalar::from_int(s),
                    None => Self::from_i128_parts(*a as i128 + *b as i128, 1),
                }
            }
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                let (a, da, b, db) = (*a as i128, *da as i128, *b as i128, *db as i128);
                if da == db {
                    Self::from_i128_parts(a + b, da)
                } else {
                    Self::from_i128_parts(a * db + b * da, da * db)
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => {
                match a.checked_mul(*b) {
                    Some(p) => Scalar::from_int(p),
                    None => Self::from_i128_parts(*a as i128 * *b as i128, 1),
                }
            }
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                Self::from_i128_parts(*a as i128 * *b as i128, *da as i128 * *db as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Scalar(Repr::Small { num: n, den: *den }),
                None => Self::from_i128_parts(-(*num as i128), *den as i128),
            },
            Repr::Big(r) => Self::from_big(-r.clone()),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_big(r)
    }
}

impl From<&Scalar> for BigRational {
    fn from(s: &Scalar) -> Self {
        s.to_big()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                (*a as i128 * *db as i128).cmp(&(*b as i128 * *da as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

/// Renders `p/q`, with `/q` omitted when `q == 1`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_bigints(num, den))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_ref(b));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_ref(b));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| a.mul_ref(&b.recip()));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(&rhs.neg_ref());
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let x = Scalar::ratio(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Scalar::ratio(0, -7), Scalar::zero());
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
    }

    #[test]
    fn overflow_spills_and_returns() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.to_i64_parts().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.to_i64_parts().is_some());
        let min = Scalar::from_int(i64::MIN);
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn parse_and_display() {
        let x: Scalar = "10/-4".parse().unwrap();
        assert_eq!(x, Scalar::ratio(-5, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        let big: Scalar = "123456789012345678901234567891/2".parse().unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567891/2");
    }

    #[test]
    fn ordering() {
        assert!(Scalar::ratio(1, 3) < Scalar::ratio(1, 2));
        assert!(Scalar::ratio(-1, 2) < Scalar::zero());
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Scalar::ratio(a, b);
            let y = Scalar::ratio(c, d);
            proptest::prop_assert_eq!(&(&x + &y) - &y, x.clone());
            proptest::prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                proptest::prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            let big = BigRational::new(BigInt::from(a), BigInt::from(b))
                + BigRational::new(BigInt::from(c), BigInt::from(d));
            proptest::prop_assert_eq!(&x + &y, Scalar::from(big));
        }
    }
}

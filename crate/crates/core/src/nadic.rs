//! Exact rationals and the N-adic predicates used by every other module.
//!
//! [`Rational`] is a thin newtype over an arbitrary-precision reduced
//! fraction. N-adicity is a property checked at element boundaries rather
//! than a separate representation, so intermediate values of affine charts
//! and compositions can be handled with ordinary rational arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by the N-adic predicates and constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NAdicError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("expected a positive value, got {0}")]
    NotPositive(Rational),
    #[error("{value} is not {base}-adic")]
    NotNAdic { value: Rational, base: u32 },
}

/// Errors from the strict `m`, `-m`, `m/n` text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0:?} is not in lowest terms")]
    NotReduced(String),
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Exact `base^exp` for any signed exponent.
    pub fn power_of(base: u32, exp: i64) -> Self {
        let magnitude = num_traits::pow(BigInt::from(base), exp.unsigned_abs() as usize);
        if exp >= 0 {
            Rational::from_integer(magnitude)
        } else {
            Rational::new(1, magnitude)
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Lossy conversion, for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (numer, denom) = match body.split_once('/') {
            Some((n, d)) => (parse_digits(n, s)?, parse_digits(d, s)?),
            None => (parse_digits(body, s)?, BigInt::one()),
        };
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        if !numer.gcd(&denom).is_one() {
            return Err(ParseRationalError::NotReduced(s.to_string()));
        }
        let numer = if negative { -numer } else { numer };
        Ok(Rational::new(numer, denom))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $imp<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $imp<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $imp<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Exact sum of two rationals.
pub fn add(a: &Rational, b: &Rational) -> Rational {
    a + b
}

pub fn check_base(base: u32) -> Result<u32, NAdicError> {
    if base >= 2 {
        Ok(base)
    } else {
        Err(NAdicError::InvalidBase(base))
    }
}

/// True iff every prime factor of the reduced denominator divides `base`.
pub fn is_nadic(a: &Rational, base: u32) -> bool {
    let n = BigInt::from(base);
    let mut d = a.denom().clone();
    loop {
        let g = d.gcd(&n);
        if g.is_one() {
            return d.is_one();
        }
        d /= g;
    }
}

/// Strips factors of `base` from `m`, returning the remainder and the count.
fn strip_base(m: &BigInt, base: u32) -> (BigInt, i64) {
    let n = BigInt::from(base);
    let mut m = m.clone();
    let mut k = 0;
    while !m.is_zero() && (&m % &n).is_zero() {
        m /= &n;
        k += 1;
    }
    (m, k)
}

/// Returns `p` with `a == base^p`, or `None` when `a` is not a power of `base`.
pub fn is_power_of_n(a: &Rational, base: u32) -> Result<Option<i64>, NAdicError> {
    check_base(base)?;
    if !a.is_positive() {
        return Err(NAdicError::NotPositive(a.clone()));
    }
    let (num_rest, num_k) = strip_base(a.numer(), base);
    let (den_rest, den_k) = strip_base(a.denom(), base);
    if num_rest.is_one() && den_rest.is_one() {
        Ok(Some(num_k - den_k))
    } else {
        Ok(None)
    }
}

/// A rational known to be N-adic for a fixed base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NAdic {
    value: Rational,
    base: u32,
}

impl NAdic {
    pub fn new(value: Rational, base: u32) -> Result<Self, NAdicError> {
        check_base(base)?;
        if !is_nadic(&value, base) {
            return Err(NAdicError::NotNAdic { value, base });
        }
        Ok(NAdic { value, base })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn into_value(self) -> Rational {
        self.value
    }
}

impl fmt::Display for NAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `base^exponent`, the slope type of group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerOfN {
    pub base: u32,
    pub exponent: i64,
}

impl PowerOfN {
    pub fn new(base: u32, exponent: i64) -> Result<Self, NAdicError> {
        check_base(base)?;
        Ok(PowerOfN { base, exponent })
    }

    /// Recognises `value` as a power of `base`.
    pub fn from_rational(value: &Rational, base: u32) -> Result<Option<Self>, NAdicError> {
        Ok(is_power_of_n(value, base)?.map(|exponent| PowerOfN { base, exponent }))
    }

    pub fn value(&self) -> Rational {
        Rational::power_of(self.base, self.exponent)
    }

    pub fn inverse(self) -> Self {
        PowerOfN {
            base: self.base,
            exponent: -self.exponent,
        }
    }
}

impl Mul for PowerOfN {
    type Output = PowerOfN;

    /// Panics when the bases differ.
    fn mul(self, rhs: PowerOfN) -> PowerOfN {
        assert_eq!(self.base, rhs.base, "multiplying powers of different bases");
        PowerOfN {
            base: self.base,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&q("1/2"), &q("1/4")), q("3/4"));
        assert_eq!(add(&Rational::zero(), &q("-7/9")), q("-7/9"));
        assert_eq!(add(&q("1/3"), &q("1/6")), q("1/2"));
    }

    #[test]
    fn nadic_examples() {
        assert!(is_nadic(&q("3/4"), 2));
        assert!(!is_nadic(&q("1/3"), 2));
        assert!(is_nadic(&q("5/36"), 6));
        assert!(is_nadic(&q("-7"), 3));
        assert!(!is_nadic(&q("1/10"), 4));
    }

    #[test]
    fn five_thirty_sixths_brute_force() {
        // 36 divides 6^k for some k <= 4
        let found = (0..=4u32).any(|k| (6u64.pow(k)) % 36 == 0);
        assert_eq!(found, is_nadic(&q("5/36"), 6));
    }

    #[test]
    fn power_examples() {
        assert_eq!(is_power_of_n(&q("1/4"), 2), Ok(Some(-2)));
        assert_eq!(is_power_of_n(&q("9"), 3), Ok(Some(2)));
        assert_eq!(is_power_of_n(&q("6"), 2), Ok(None));
        assert_eq!(is_power_of_n(&q("1"), 5), Ok(Some(0)));
        assert_eq!(is_power_of_n(&q("2/3"), 3), Ok(None));
        assert!(matches!(
            is_power_of_n(&q("0"), 2),
            Err(NAdicError::NotPositive(_))
        ));
        assert!(matches!(
            is_power_of_n(&q("-4"), 2),
            Err(NAdicError::NotPositive(_))
        ));
        assert_eq!(is_power_of_n(&q("4"), 1), Err(NAdicError::InvalidBase(1)));
    }

    #[test]
    fn parse_and_render() {
        for s in [
            "0",
            "5",
            "-5",
            "3/4",
            "-3/4",
            "123456789012345678901234567890/11",
        ] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("6/1").to_string(), "6");
        assert_eq!("".parse::<Rational>(), Err(ParseRationalError::Empty));
        for bad in [
            "+1", " 1", "1/", "/2", "1/-2", "a", "1.5", "1/2/3", "--1", "-",
        ] {
            assert!(
                matches!(
                    bad.parse::<Rational>(),
                    Err(ParseRationalError::Malformed(_))
                ),
                "{bad}"
            );
        }
        assert!(matches!(
            "2/4".parse::<Rational>(),
            Err(ParseRationalError::NotReduced(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn nadic_constructor() {
        assert!(NAdic::new(q("3/8"), 2).is_ok());
        assert!(matches!(
            NAdic::new(q("1/3"), 2),
            Err(NAdicError::NotNAdic { .. })
        ));
        assert_eq!(NAdic::new(q("1/2"), 0), Err(NAdicError::InvalidBase(0)));
    }

    #[test]
    fn power_of_n_mul_adds_exponents() {
        let a = PowerOfN::new(3, 2).unwrap();
        let b = PowerOfN::new(3, -5).unwrap();
        assert_eq!((a * b).exponent, -3);
        assert_eq!((a * b).value(), a.value() * b.value());
        assert_eq!(a.inverse().value(), q("1/9"));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn nadic(base: u32) -> impl Strategy<Value = Rational> {
        (-500i64..500, 0u32..6).prop_map(move |(m, k)| Rational::new(m, (base as i64).pow(k)))
    }

    proptest! {
        #[test]
        fn field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a + (-&a), Rational::zero());
            if let Some(inv) = a.recip() {
                prop_assert_eq!(&a * &inv, Rational::one());
            }
        }

        #[test]
        fn nadic_closure((base, a, b) in (2u32..7).prop_flat_map(|n| (Just(n), nadic(n), nadic(n)))) {
            prop_assert!(is_nadic(&a, base));
            prop_assert!(is_nadic(&(&a + &b), base));
            prop_assert!(is_nadic(&(&a - &b), base));
            prop_assert!(is_nadic(&(&a * &b), base));
        }

        #[test]
        fn power_recognition_matches_repeated_multiplication(base in 2u32..8, p in -12i64..12) {
            let mut v = Rational::one();
            let step = if p >= 0 {
                Rational::from_integer(base)
            } else {
                Rational::new(1, base)
            };
            for _ in 0..p.unsigned_abs() {
                v = v * &step;
            }
            prop_assert_eq!(is_power_of_n(&v, base).unwrap(), Some(p));
            prop_assert_eq!(Rational::power_of(base, p), v);
        }

        #[test]
        fn text_round_trip(a in rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}

//! Exact scalar abstraction.
//!
//! Every numeric quantity in this crate is an element of an exact ordered
//! field. The LP kernel and the set-function transforms are generic over
//! [`Scalar`]; the instance-level modules fix it to [`Rational`]
//! (arbitrary precision). Fixed-width ratios are supported for callers that
//! know their data is small, at the cost of overflow panics.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact ordered field.
///
/// Floating point types are intentionally not implementors: comparisons
/// against zero drive pivoting and certificate checks, and must be exact.
pub trait Scalar:
    Clone + Ord + Debug + Display + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Parses `"p/q"` or `"p"`. The denominator must be nonzero.
    fn parse_exact(s: &str) -> Result<Self, Error>;
}

macro_rules! impl_scalar_for_ratio {
    ($int:ty, $conv:expr) => {
        impl Scalar for Ratio<$int> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer($conv(v))
            }

            fn parse_exact(s: &str) -> Result<Self, Error> {
                let s = s.trim();
                let bad = || Error::Parse(format!("invalid rational {s:?}"));
                let (num, den) = match s.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (s, "1"),
                };
                let num = <$int>::from_str(num).map_err(|_| bad())?;
                let den = <$int>::from_str(den).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Ratio::new(num, den))
            }
        }
    };
}

impl_scalar_for_ratio!(BigInt, BigInt::from);
impl_scalar_for_ratio!(i64, |v| v);
impl_scalar_for_ratio!(i128, |v: i64| v as i128);

/// Arbitrary-precision rational; the default scalar everywhere.
pub type Rational = Ratio<BigInt>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` in lowest terms, or `p` when integral.
pub fn format_exact<S: Scalar>(v: &S) -> String {
    v.to_string()
}

/// Sum of `1/i` for `i = 1..=n`, exactly. `harmonic(0) = 0`.
pub fn harmonic(n: usize) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + rat(1, i as i64))
}

/// Smallest integer `t` with `t^3 >= m^2`, i.e. the ceiling of `m^(2/3)`.
pub fn ceil_pow_two_thirds(m: u64) -> u64 {
    let target = (m as u128) * (m as u128);
    let mut t: u128 = 0;
    while t * t * t < target {
        t += 1;
    }
    t as u64
}

/// Largest integer whose square is at most `v`.
pub fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

pub fn ceil_log2(v: u64) -> u64 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros() as u64
    }
}

/// A finite value or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Extended<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// `1/x`, with `1/∞ = 0` and `1/0 = ∞`.
    pub fn recip(&self) -> Extended<S> {
        match self {
            Extended::Infinite => Extended::Finite(S::zero()),
            Extended::Finite(v) if v.is_zero() => Extended::Infinite,
            Extended::Finite(v) => Extended::Finite(S::one() / v.clone()),
        }
    }

    pub fn scale(&self, factor: &S) -> Extended<S> {
        match self {
            Extended::Infinite => Extended::Infinite,
            Extended::Finite(v) => Extended::Finite(v.clone() * factor.clone()),
        }
    }

    pub fn min(self, other: Extended<S>) -> Extended<S> {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl<S: Scalar> Display for Extended<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl<S: Scalar> Serialize for Extended<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Extended<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "inf" {
            return Ok(Extended::Infinite);
        }
        S::parse_exact(&s)
            .map(Extended::Finite)
            .map_err(crate::error::de_error)
    }
}

/// `coefficient * sqrt(radicand)`, kept symbolic so that tolerances involving
/// square roots stay exact. Comparisons square both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledRoot {
    #[serde(with = "serde_rational")]
    pub coefficient: Rational,
    #[serde(with = "serde_rational")]
    pub radicand: Rational,
}

impl ScaledRoot {
    pub fn new(coefficient: Rational, radicand: Rational) -> Self {
        debug_assert!(!radicand.is_negative());
        ScaledRoot {
            coefficient,
            radicand,
        }
    }

    fn signed_square(&self) -> Rational {
        let sq = self.coefficient.clone() * self.coefficient.clone() * self.radicand.clone();
        if self.coefficient.is_negative() {
            -sq
        } else {
            sq
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, other: &Rational) -> std::cmp::Ordering {
        let other_sq = if other.is_negative() {
            -(other.clone() * other.clone())
        } else {
            other.clone() * other.clone()
        };
        self.signed_square().cmp(&other_sq)
    }
}

/// Serde adapters writing scalars as `"p/q"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Scalar, Z: Serializer>(v: &S, s: Z) -> Result<Z::Ok, Z::Error> {
        s.serialize_str(&format_exact(v))
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(d: D) -> Result<S, D::Error> {
        let s = String::deserialize(d)?;
        S::parse_exact(&s).map_err(crate::error::de_error)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Scalar, Z: Serializer>(v: &[S], s: Z) -> Result<Z::Ok, Z::Error> {
            s.collect_seq(v.iter().map(format_exact))
        }

        pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<S>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| S::parse_exact(s).map_err(crate::error::de_error))
                .collect()
        }
    }

    pub mod option_vec {
        use super::*;

        pub fn serialize<S: Scalar, Z: Serializer>(
            v: &Option<Vec<S>>,
            s: Z,
        ) -> Result<Z::Ok, Z::Error> {
            match v {
                Some(v) => s.collect_seq(v.iter().map(format_exact)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Vec<S>>, D::Error> {
            let raw = Option::<Vec<String>>::deserialize(d)?;
            raw.map(|raw| {
                raw.iter()
                    .map(|s| S::parse_exact(s).map_err(crate::error::de_error))
                    .collect()
            })
            .transpose()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Scalar, Z: Serializer>(v: &Option<S>, s: Z) -> Result<Z::Ok, Z::Error> {
            match v {
                Some(v) => s.serialize_str(&format_exact(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<S>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| S::parse_exact(&s).map_err(crate::error::de_error))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fraction_and_integer() {
        assert_eq!(Rational::parse_exact("6/4").unwrap(), rat(3, 2));
        assert_eq!(Rational::parse_exact("-7").unwrap(), int(-7));
        assert_eq!(Rational::parse_exact(" 2 / -4 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_zero_denominator_and_garbage() {
        assert!(Rational::parse_exact("1/0").is_err());
        assert!(Rational::parse_exact("0.5").is_err());
        assert!(Rational::parse_exact("").is_err());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(3), rat(11, 6));
    }

    #[test]
    fn ceil_pow_two_thirds_matches_cube_comparison() {
        assert_eq!(ceil_pow_two_thirds(1), 1);
        assert_eq!(ceil_pow_two_thirds(2), 2);
        assert_eq!(ceil_pow_two_thirds(8), 4);
        assert_eq!(ceil_pow_two_thirds(27), 9);
        for m in 1..200u64 {
            let t = ceil_pow_two_thirds(m);
            assert!(t.pow(3) >= m * m);
            assert!((t - 1).pow(3) < m * m);
        }
    }

    #[test]
    fn scaled_root_compares_by_squaring() {
        // 1/4 * sqrt(2) ~ 0.3535
        let r = ScaledRoot::new(rat(1, 4), int(2));
        assert_eq!(r.cmp_rational(&rat(1, 3)), std::cmp::Ordering::Greater);
        assert_eq!(r.cmp_rational(&rat(3, 8)), std::cmp::Ordering::Less);
        assert_eq!(r.cmp_rational(&int(-1)), std::cmp::Ordering::Greater);
        let exact = ScaledRoot::new(rat(1, 2), int(4));
        assert_eq!(exact.cmp_rational(&int(1)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn extended_ordering_puts_infinity_last() {
        let a: Extended<Rational> = Extended::Finite(int(1_000_000));
        assert!(a < Extended::Infinite);
        assert_eq!(Extended::<Rational>::Infinite.recip(), Extended::Finite(int(0)));
        assert_eq!(Extended::Finite(rat(1, 4)).recip(), Extended::Finite(int(4)));
    }

    #[test]
    fn small_ratio_types_are_scalars() {
        let a = <Ratio<i64> as Scalar>::parse_exact("3/9").unwrap();
        assert_eq!(a, Ratio::new(1, 3));
        assert_eq!(<Ratio<i128> as Scalar>::from_i64(5), Ratio::from_integer(5i128));
    }
}

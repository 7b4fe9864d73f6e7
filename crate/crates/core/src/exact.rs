//! Exact number foundations.
//!
//! Every coordinate, slope and slope ratio in this crate is a [`Rational`].
//! Quantities that are only known as real powers of two (roots of slopes)
//! are carried symbolically as a [`Pow2Exp`], i.e. by their exponent.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^k` for any (possibly negative) integer `k`.
pub fn pow2(k: i64) -> Rational {
    let mag = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

fn power_of_two_exponent(n: &BigInt) -> Option<u64> {
    if n.sign() != Sign::Plus {
        return None;
    }
    let tz = n.trailing_zeros()?;
    if (n >> tz).is_one() {
        Some(tz)
    } else {
        None
    }
}

/// Returns `k` such that `q = 2^k`, or `None` when `q` is not an integer
/// power of two.
pub fn pow2_exponent(q: &Rational) -> Result<Option<i64>, Error> {
    if !q.is_positive() {
        return Err(Error::Domain(alloc::format!(
            "pow2_exponent needs a positive input, got {}",
            fraction_string(q)
        )));
    }
    let num = power_of_two_exponent(q.numer());
    let den = power_of_two_exponent(q.denom());
    Ok(match (num, den) {
        (Some(n), Some(d)) => Some(n as i64 - d as i64),
        _ => None,
    })
}

/// True iff the reduced denominator of `q` is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    power_of_two_exponent(q.denom()).is_some()
}

/// Exact `p`-th root of a positive rational, if it is rational.
pub fn rational_root(q: &Rational, p: u32) -> Option<Rational> {
    if !q.is_positive() || p == 0 {
        return None;
    }
    let n = q.numer().nth_root(p);
    let d = q.denom().nth_root(p);
    if n.pow(p) == *q.numer() && d.pow(p) == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// `q^n` for any integer `n` (q must be nonzero when `n < 0`).
pub fn rational_pow(q: &Rational, n: i64) -> Rational {
    let e = i32::try_from(n).expect("exponent out of range");
    num_traits::Pow::pow(q, e)
}

/// Text form `p/q` in lowest terms; integers are written `p/1`.
pub fn fraction_string(q: &Rational) -> String {
    alloc::format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`. The result is reduced.
pub fn parse_fraction(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(alloc::format!("not a fraction: {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// The positive real number `2^exponent` for a rational exponent.
///
/// The value itself is never materialised; products are sums of exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pow2Exp {
    exponent: Rational,
}

impl Pow2Exp {
    pub fn new(exponent: Rational) -> Self {
        Pow2Exp { exponent }
    }

    pub fn from_int(k: i64) -> Self {
        Pow2Exp::new(int(k))
    }

    pub fn one() -> Self {
        Pow2Exp::new(Rational::zero())
    }

    /// `2^k` as a symbolic value, when `q` is an exact power of two.
    pub fn of_rational(q: &Rational) -> Option<Self> {
        pow2_exponent(q).ok().flatten().map(Pow2Exp::from_int)
    }

    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    /// `self^n`.
    pub fn powi(&self, n: &BigInt) -> Pow2Exp {
        Pow2Exp::new(&self.exponent * Rational::from_integer(n.clone()))
    }

    /// Positive `p`-th root.
    pub fn root(&self, p: u64) -> Pow2Exp {
        Pow2Exp::new(&self.exponent / Rational::from_integer(BigInt::from(p)))
    }

    pub fn recip(&self) -> Pow2Exp {
        Pow2Exp::new(-self.exponent.clone())
    }

    /// The rational value, when the exponent is an integer.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.exponent.is_integer() {
            self.exponent.to_integer().to_i64().map(pow2)
        } else {
            None
        }
    }
}

impl Mul for &Pow2Exp {
    type Output = Pow2Exp;
    fn mul(self, rhs: &Pow2Exp) -> Pow2Exp {
        Pow2Exp::new(&self.exponent + &rhs.exponent)
    }
}

impl Mul for Pow2Exp {
    type Output = Pow2Exp;
    fn mul(self, rhs: Pow2Exp) -> Pow2Exp {
        &self * &rhs
    }
}

impl fmt::Display for Pow2Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^({})", fraction_string(&self.exponent))
    }
}

pub(crate) fn describe(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        fraction_string(q)
    }
}

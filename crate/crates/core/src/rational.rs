//! Exact rational scalars and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`; whitespace around the parts is ignored.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Canonical text form: `"p/q"` in lowest terms, `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // ratio too large for a direct conversion; fall back to numer/denom separately
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Returns the integer value of `x` if it is integral.
pub fn as_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

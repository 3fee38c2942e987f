//! Exact rational scalars.
//!
//! Every scalar in the toolkit is a `Rat`: an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. Serialized form is
//! `"p/q"`, or just `"p"` when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics on q = 0.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form: `p` when the denominator is 1, else `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`. Rejects empty strings, q = 0, and trailing garbage.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in rational `{s}`"))?;
    let q: BigInt = match den {
        Some(q) => q
            .parse()
            .map_err(|_| format!("bad denominator in rational `{s}`"))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(format!("zero denominator in rational `{s}`"));
    }
    Ok(Rat::new(p, q))
}

/// True when `r` is a square of a rational; returns the nonnegative root.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let pn = r.numer().sqrt();
    let pd = r.denom().sqrt();
    if &(&pn * &pn) == r.numer() && &(&pd * &pd) == r.denom() {
        Some(Rat::new(pn, pd))
    } else {
        None
    }
}

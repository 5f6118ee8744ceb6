//! Exact rational arithmetic.
//!
//! All quantities in this crate (costs, LP values, convex coefficients,
//! probabilities) are [`Rational`]: an arbitrary-precision fraction kept in
//! lowest terms with a positive denominator. Arithmetic never rounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a `p/q` or `p` token into a normalized rational.
pub fn parse_rational(tok: &str) -> Result<Rational, String> {
    tok.parse::<Rational>()
        .map_err(|e| format!("bad rational `{tok}`: {e}"))
}

/// Format as `p/q`, or plain `p` for integers. Inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Best-effort conversion for analytic (non-certificate) reporting.
pub fn to_f64(r: &Rational) -> f64 {
    let digits = 1_000_000_000_000_000i64;
    let scaled = r * Rational::from_integer(BigInt::from(digits));
    let int = scaled.to_integer();
    // Saturates on overflow, which is fine for display purposes.
    let approx: f64 = int.to_string().parse().unwrap_or(f64::NAN);
    approx / digits as f64
}

/// Least common multiple of the denominators of a list of rationals.
pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        let d = v.denom().abs();
        acc = num_integer::lcm(acc, d);
    }
    acc
}

/// True when `r` is a square of a rational; returns the nonnegative root.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    let candidate = Rational::new(num, den);
    if &(candidate.clone() * candidate.clone()) == r {
        Some(candidate)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_normalizes_to_lowest_terms() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn format_round_trips() {
        for s in ["2/3", "-1/2", "5", "0", "29/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn sqrt_detects_perfect_squares() {
        assert_eq!(rational_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }

    #[test]
    fn lcm_of_denominators_covers_all() {
        let vals = [rat(1, 3), rat(5, 6), rat(2, 1)];
        assert_eq!(lcm_of_denominators(vals.iter()), 6.into());
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_identity(an in -50i64..50, ad in 1i64..50, bn in -50i64..50, bd in 1i64..50) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            prop_assert_eq!((a.clone() + b.clone()) - b, a);
        }

        #[test]
        fn multiply_by_inverse_is_one(n in 1i64..100, d in 1i64..100) {
            let a = rat(n, d);
            prop_assert_eq!(a.clone() * a.recip(), rat_int(1));
        }

        #[test]
        fn stored_in_lowest_terms(n in -100i64..100, d in 1i64..100) {
            let a = rat(n, d);
            let g = num_integer::gcd(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(g, 1.into());
            prop_assert!(a.denom() > &0.into());
        }
    }
}

//! Text form of exact rationals: `"p"` or `"p/q"` with an optional leading `-`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}; expected \"p\" or \"p/q\""));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = match den {
        Some(q) if digits(q) => q.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

/// Reduced form; integers print without a denominator.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(
            parse_rational("-2/4").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("+1").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        let big = "123456789012345678901234567891/2";
        assert_eq!(format_rational(&parse_rational(big).unwrap()), big);
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(p in any::<i64>(), q in 1i64..1_000_000) {
            let r = BigRational::new(p.into(), q.into());
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}

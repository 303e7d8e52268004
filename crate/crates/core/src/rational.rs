//! Small helpers around `BigRational`: parsing and printing in the
//! `num/den` wire format, floors and ceilings, decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u64(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `"5/6"`, `"2"`, `"-1/3"`; always lowest terms since `BigRational` is normalized.
pub fn to_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<BigRational> {
    let bad = |message: &str| Error::Parse {
        token: s.to_string(),
        position: 0,
        message: message.to_string(),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub fn floor_u64(r: &BigRational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    r.floor().to_integer().to_u64()
}

pub fn ceil_u64(r: &BigRational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    r.ceil().to_integer().to_u64()
}

/// Truncated decimal rendering with `digits` places after the point.
/// Display only; never fed back into a comparison.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let (whole, rem) = abs.numer().div_rem(abs.denom());
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let mut rem = rem;
        for _ in 0..digits {
            rem *= 10;
            let (d, r2) = rem.div_rem(abs.denom());
            out.push_str(&d.to_string());
            rem = r2;
        }
    }
    out
}

pub mod serde_string {
    //! Serialize a `BigRational` as its `num/den` string.
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_string_opt {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod serde_string_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_string_vec_opt {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[Option<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.as_ref().map(|x| x.to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_is_lowest_terms() {
        assert_eq!(to_string(&frac(10, 12)), "5/6");
        assert_eq!(to_string(&frac(4, 2)), "2");
        assert_eq!(parse("160/81").unwrap(), frac(160, 81));
        assert_eq!(parse(" 7 / 5 ").unwrap(), frac(7, 5));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn floors_and_decimals() {
        assert_eq!(floor_u64(&frac(217, 30)), Some(7));
        assert_eq!(ceil_u64(&frac(7, 5)), Some(2));
        assert_eq!(to_decimal(&frac(5, 6), 4), "0.8333");
        assert_eq!(to_decimal(&frac(-1, 3), 2), "-0.33");
        assert_eq!(to_decimal(&int(3), 0), "3");
    }
}

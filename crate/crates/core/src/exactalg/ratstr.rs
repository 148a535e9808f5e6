//! Serde adapters writing rationals as exact strings such as "-3/4".

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Option<BigRational> {
    s.parse().ok()
}

/// For `Vec<[BigRational; 4]>` fields.
pub mod quat_rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[[BigRational; 4]], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<[String; 4]> = rows
            .iter()
            .map(|r| std::array::from_fn(|k| to_string(&r[k])))
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[BigRational; 4]>, D::Error> {
        let strs: Vec<[String; 4]> = Vec::deserialize(d)?;
        strs.iter()
            .map(|r| {
                let mut out: [BigRational; 4] = Default::default();
                for (k, x) in r.iter().enumerate() {
                    out[k] = parse(x).ok_or_else(|| D::Error::custom(format!("bad rational {x}")))?;
                }
                Ok(out)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn round_trip() {
        let q = BigRational::new(BigInt::from(-6), BigInt::from(8));
        assert_eq!(to_string(&q), "-3/4");
        assert_eq!(parse("-3/4"), Some(q));
        assert_eq!(parse("5"), Some(BigRational::from_integer(BigInt::from(5))));
    }
}

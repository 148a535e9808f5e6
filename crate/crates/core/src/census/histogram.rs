//! Value histograms of degree 1 and 2 eigenforms.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::eigen::spectrum::GaloisOrbit;
use crate::error::{Error, Result};

/// Buckets keyed by the coordinates of a value in the power basis of the
/// orbit field, under the primitive integral normalization of the form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueHistogram {
    pub level: u64,
    pub degree: usize,
    pub defining_factor: String,
    /// (coordinates as exact rational strings, count), increasing.
    pub buckets: Vec<(Vec<String>, usize)>,
}

impl ValueHistogram {
    pub fn csv(&self) -> String {
        let mut out = match self.degree {
            1 => "value,count\n".to_string(),
            _ => "c0,c1,count\n".to_string(),
        };
        for (k, c) in &self.buckets {
            out.push_str(&format!("{},{c}\n", k.join(",")));
        }
        out
    }
}

pub fn value_histogram(orbit: &GaloisOrbit) -> Result<ValueHistogram> {
    let d = orbit.degree();
    if d > 2 {
        return Err(Error::precondition(format!("histograms need degree 1 or 2, got {d}")));
    }
    let mut counts: BTreeMap<Vec<BigRational>, usize> = BTreeMap::new();
    for v in &orbit.form.values {
        let mut key: Vec<BigRational> = v.rep().to_vec();
        key.resize(d, BigRational::zero());
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(ValueHistogram {
        level: orbit.form.level,
        degree: d,
        defining_factor: orbit.defining_factor.to_string(),
        buckets: counts
            .into_iter()
            .map(|(k, c)| (k.iter().map(|q| q.to_string()).collect(), c))
            .collect(),
    })
}

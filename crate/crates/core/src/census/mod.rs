//! Batch statistics over ranges of levels: zero counts split into trivial
//! and nontrivial, degree histograms, zero-free proportions and value
//! histograms, with an on-disk cache per level.

pub mod cache;
pub mod histogram;
pub mod levels;
pub mod plot;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimform::scan_level;
use crate::eigen::spectrum::{split_spectrum, EigenConfig, Spectrum};
use crate::error::{Error, Result};
use crate::quatarith::classes::IdealClassSet;
use crate::trivzero::classify_zeroes;

pub use cache::{CacheDocument, CacheKey, LevelCache};
pub use histogram::{value_histogram, ValueHistogram};
pub use levels::LevelFilter;
pub use plot::{
    degree_histogram, emit_plot_data, plot_points, DegreeHistogram, PlotFormat, PlotKind, PlotPoint,
};

/// One Galois orbit of eigenforms. Zero counts are per form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub pattern: String,
    pub degree: usize,
    pub defining_factor: String,
    pub eisenstein: bool,
    pub trivial_zeroes: usize,
    pub nontrivial_zeroes: usize,
    pub zero_free: bool,
    /// The orbit's sign pattern forces no trivial zeroes.
    pub no_trivial_zeroes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub pattern: String,
    pub dim: usize,
    pub inadmissible_orbits: usize,
    pub trivial_zero_classes: usize,
}

/// Totals over cusp forms, each Galois conjugate counted separately.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub cusp_forms: usize,
    pub trivial_zeroes: usize,
    pub nontrivial_zeroes: usize,
    pub zero_free_forms: usize,
    pub forms_without_trivial_zeroes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub level: u64,
    pub h: usize,
    pub patterns: Vec<PatternRecord>,
    pub orbits: Vec<OrbitRecord>,
    pub totals: Totals,
}

/// A level's record or the reason it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub level: u64,
    pub record: Option<CensusRecord>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub eigen: EigenConfig,
    pub cache_dir: Option<PathBuf>,
}

/// Builds the record for a computed spectrum and checks its invariants.
pub fn census_record(spec: &Spectrum) -> Result<CensusRecord> {
    let n = spec.level;
    let h = spec.weights.len();
    let patterns: Vec<PatternRecord> = spec
        .reports
        .iter()
        .map(|r| PatternRecord {
            pattern: r.eps.to_string(),
            dim: r.dim(),
            inadmissible_orbits: r.inadmissible.len(),
            trivial_zero_classes: r.trivial_zero_classes.len(),
        })
        .collect();
    let mut orbits = Vec::new();
    let mut totals = Totals::default();
    for o in &spec.orbits {
        let report = spec.report(&o.form.sign_pattern);
        let (triv, nontriv) = classify_zeroes(&o.zero_set, report)?;
        let rec = OrbitRecord {
            pattern: o.form.sign_pattern.to_string(),
            degree: o.degree(),
            defining_factor: o.defining_factor.to_string(),
            eisenstein: o.form.is_eisenstein,
            trivial_zeroes: triv.len(),
            nontrivial_zeroes: nontriv.len(),
            zero_free: o.zero_set.is_empty(),
            no_trivial_zeroes: report.trivial_zero_classes.is_empty(),
        };
        if !rec.eisenstein {
            let d = rec.degree;
            totals.cusp_forms += d;
            totals.trivial_zeroes += d * rec.trivial_zeroes;
            totals.nontrivial_zeroes += d * rec.nontrivial_zeroes;
            totals.zero_free_forms += if rec.zero_free { d } else { 0 };
            totals.forms_without_trivial_zeroes += if rec.no_trivial_zeroes { d } else { 0 };
        }
        orbits.push(rec);
    }
    if totals.cusp_forms + 1 != h {
        return Err(Error::defect(format!("N={n}: {} cusp forms for h={h}", totals.cusp_forms)));
    }
    if totals.trivial_zeroes + totals.nontrivial_zeroes > (h - 1) * (h - 1) {
        return Err(Error::defect(format!("N={n}: more zeroes than value slots")));
    }
    let expected_trivial: usize = spec
        .reports
        .iter()
        .map(|r| r.dim() * r.trivial_zero_classes.len())
        .sum();
    if totals.trivial_zeroes != expected_trivial {
        return Err(Error::defect(format!("N={n}: trivial zero totals do not reconcile")));
    }
    if n % 2 == 1 {
        for row in scan_level(n)? {
            let p = &patterns[row.mask as usize];
            if p.inadmissible_orbits as u64 != row.dim_bias {
                return Err(Error::defect(format!(
                    "N={n}, {}: {} inadmissible orbits but dim_bias {}",
                    p.pattern, p.inadmissible_orbits, row.dim_bias
                )));
            }
        }
    }
    Ok(CensusRecord {
        level: n,
        h,
        patterns,
        orbits,
        totals,
    })
}

/// Computes one level, reading and filling the cache when configured.
pub fn census_level(n: u64, opts: &CensusOptions) -> Result<CensusRecord> {
    let cache = opts.cache_dir.as_ref().map(LevelCache::new);
    if let Some(c) = &cache {
        if let Some(doc) = c.load(n)? {
            if let Some(r) = doc.record {
                return Ok(r);
            }
        }
    }
    let classes = IdealClassSet::for_level(n)?;
    let spec = split_spectrum(&classes, &opts.eigen)?;
    let record = census_record(&spec)?;
    if let Some(c) = &cache {
        c.store(&CacheDocument::new(classes, spec.brandt.clone(), Some(record.clone())))?;
    }
    Ok(record)
}

/// One entry per level in increasing order; failures are recorded, not
/// dropped. Levels run in parallel on the current rayon pool.
pub fn run_census(levels: &[u64], opts: &CensusOptions) -> Vec<CensusEntry> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    levels
        .par_iter()
        .map(|&n| match census_level(n, opts) {
            Ok(r) => CensusEntry {
                level: n,
                record: Some(r),
                error: None,
            },
            Err(e) => CensusEntry {
                level: n,
                record: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// Records of the successful entries.
pub fn records(entries: &[CensusEntry]) -> Vec<&CensusRecord> {
    entries.iter().filter_map(|e| e.record.as_ref()).collect()
}

/// One CSV row per level.
pub fn census_csv(entries: &[CensusEntry]) -> String {
    let mut out = String::from(
        "level,h,cusp_forms,trivial_zeroes,nontrivial_zeroes,zero_free_forms,forms_without_trivial_zeroes,error\n",
    );
    for e in entries {
        match &e.record {
            Some(r) => {
                let t = &r.totals;
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},\n",
                    r.level,
                    r.h,
                    t.cusp_forms,
                    t.trivial_zeroes,
                    t.nontrivial_zeroes,
                    t.zero_free_forms,
                    t.forms_without_trivial_zeroes
                ));
            }
            None => out.push_str(&format!(
                "{},,,,,,,\"{}\"\n",
                e.level,
                e.error.as_deref().unwrap_or("").replace('"', "'")
            )),
        }
    }
    out
}

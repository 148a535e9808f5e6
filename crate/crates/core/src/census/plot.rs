//! Plot coordinates and degree histograms derived from census records.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CensusRecord;
use crate::error::{Error, Result};
use crate::exactalg::arith::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlotKind {
    /// Nontrivial zeroes at each level.
    NontrivialPerLevel,
    /// Nontrivial zeroes over levels <= X.
    CumulativeNontrivial,
    /// Share of nontrivial zeroes at levels <= X coming from degree 1 forms.
    Degree1Share,
    /// Proportion of degree 1 form values at levels <= X that are
    /// nontrivial zeroes.
    Degree1ZeroProportion,
    /// Zero-free forms among forms without trivial zeroes, prime levels <= X.
    ZeroFreePrime,
    /// The same over non-prime levels <= X.
    ZeroFreeNonprime,
}

pub const PLOT_KINDS: [PlotKind; 6] = [
    PlotKind::NontrivialPerLevel,
    PlotKind::CumulativeNontrivial,
    PlotKind::Degree1Share,
    PlotKind::Degree1ZeroProportion,
    PlotKind::ZeroFreePrime,
    PlotKind::ZeroFreeNonprime,
];

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            PlotKind::NontrivialPerLevel => "nontrivial-per-level",
            PlotKind::CumulativeNontrivial => "cumulative-nontrivial",
            PlotKind::Degree1Share => "degree1-share",
            PlotKind::Degree1ZeroProportion => "degree1-zero-proportion",
            PlotKind::ZeroFreePrime => "zero-free-prime",
            PlotKind::ZeroFreeNonprime => "zero-free-nonprime",
        }
    }

    fn is_proportion(self) -> bool {
        !matches!(self, PlotKind::NontrivialPerLevel | PlotKind::CumulativeNontrivial)
    }
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PLOT_KINDS
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::precondition(format!("unknown plot kind '{s}'")))
    }
}

/// y = num for counts and num/den for proportions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub x: u64,
    pub num: u64,
    pub den: Option<u64>,
}

impl PlotPoint {
    pub fn y(&self) -> f64 {
        match self.den {
            Some(d) => self.num as f64 / d as f64,
            None => self.num as f64,
        }
    }
}

#[derive(Default)]
struct Acc {
    nontrivial: u64,
    nontrivial_deg1: u64,
    deg1_slots: u64,
    zero_free: u64,
    trivial_free: u64,
}

/// Points in increasing level order. Proportions with an empty denominator
/// are skipped.
pub fn plot_points(records: &[&CensusRecord], kind: PlotKind) -> Vec<PlotPoint> {
    let mut recs: Vec<&CensusRecord> = records.to_vec();
    recs.sort_by_key(|r| r.level);
    let mut acc = Acc::default();
    let mut out = Vec::new();
    for r in recs {
        let prime = is_prime(r.level);
        match kind {
            PlotKind::ZeroFreePrime if !prime => continue,
            PlotKind::ZeroFreeNonprime if prime => continue,
            _ => {}
        }
        let mut here = 0;
        for o in r.orbits.iter().filter(|o| !o.eisenstein) {
            let d = o.degree as u64;
            let nz = d * o.nontrivial_zeroes as u64;
            here += nz;
            acc.nontrivial += nz;
            if o.degree == 1 {
                acc.nontrivial_deg1 += nz;
                acc.deg1_slots += r.h as u64;
            }
            if o.no_trivial_zeroes {
                acc.trivial_free += d;
                if o.zero_free {
                    acc.zero_free += d;
                }
            }
        }
        let (num, den) = match kind {
            PlotKind::NontrivialPerLevel => (here, None),
            PlotKind::CumulativeNontrivial => (acc.nontrivial, None),
            PlotKind::Degree1Share => (acc.nontrivial_deg1, Some(acc.nontrivial)),
            PlotKind::Degree1ZeroProportion => (acc.nontrivial_deg1, Some(acc.deg1_slots)),
            PlotKind::ZeroFreePrime | PlotKind::ZeroFreeNonprime => {
                (acc.zero_free, Some(acc.trivial_free))
            }
        };
        if den == Some(0) {
            continue;
        }
        out.push(PlotPoint { x: r.level, num, den });
    }
    out
}

/// Output formats for plot data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    /// Header plus one row per point; proportions carry numerator and
    /// denominator.
    Csv,
    /// "(x, y)" lines.
    Coordinates,
}

pub fn emit_plot_data(records: &[&CensusRecord], kind: PlotKind, format: PlotFormat) -> String {
    let pts = plot_points(records, kind);
    let mut out = String::new();
    match format {
        PlotFormat::Csv => {
            out.push_str(if kind.is_proportion() { "x,numerator,denominator,y\n" } else { "x,y\n" });
            for p in &pts {
                match p.den {
                    Some(d) => out.push_str(&format!("{},{},{},{}\n", p.x, p.num, d, p.y())),
                    None => out.push_str(&format!("{},{}\n", p.x, p.num)),
                }
            }
        }
        PlotFormat::Coordinates => {
            for p in &pts {
                match p.den {
                    Some(_) => out.push_str(&format!("({}, {:?})\n", p.x, p.y())),
                    None => out.push_str(&format!("({}, {})\n", p.x, p.num)),
                }
            }
        }
    }
    out
}

/// Degree columns 1..=9 and a final column for degree >= 10, over cusp
/// orbits. Zeroes are counted per form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub orbits: [u64; 10],
    pub orbits_with_nontrivial: [u64; 10],
    pub nontrivial_zeroes: [u64; 10],
    /// Form values, degree times h summed over orbits.
    pub value_slots: [u64; 10],
}

impl DegreeHistogram {
    /// Proportion of value slots that are nontrivial zeroes, truncated to
    /// thousandths.
    pub fn proportion_milli(&self, col: usize) -> u64 {
        (self.nontrivial_zeroes[col] * 1000)
            .checked_div(self.value_slots[col])
            .unwrap_or(0)
    }

    pub fn table(&self) -> String {
        let mut out = String::from("d");
        for c in 1..=9 {
            out.push_str(&format!("\t{c}"));
        }
        out.push_str("\t>=10\n");
        let row = |name: &str, v: &[u64; 10]| {
            let mut s = name.to_string();
            for x in v {
                s.push_str(&format!("\t{x}"));
            }
            s.push('\n');
            s
        };
        out.push_str(&row("orbits", &self.orbits));
        out.push_str(&row("with_nontrivial", &self.orbits_with_nontrivial));
        out.push_str(&row("nontrivial_zeroes", &self.nontrivial_zeroes));
        out.push_str("proportion");
        for c in 0..10 {
            out.push_str(&format!("\t0.{:03}", self.proportion_milli(c)));
        }
        out.push('\n');
        out
    }
}

pub fn degree_histogram(records: &[&CensusRecord]) -> DegreeHistogram {
    let mut h = DegreeHistogram::default();
    for r in records {
        for o in r.orbits.iter().filter(|o| !o.eisenstein) {
            let col = o.degree.min(10) - 1;
            let d = o.degree as u64;
            h.orbits[col] += 1;
            if o.nontrivial_zeroes > 0 {
                h.orbits_with_nontrivial[col] += 1;
            }
            h.nontrivial_zeroes[col] += d * o.nontrivial_zeroes as u64;
            h.value_slots[col] += d * r.h as u64;
        }
    }
    h
}

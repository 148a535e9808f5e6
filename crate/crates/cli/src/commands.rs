//! Subcommand bodies. Each returns the full text to print.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use quatzero::census::{
    self, degree_histogram, emit_plot_data, plot::PLOT_KINDS, value_histogram, CensusOptions, LevelCache,
    LevelFilter, PlotFormat,
};
use quatzero::dimform::{bias_terms, dim_bias, no_trivial_zeroes_criterion, scan_csv, scan_level, summarize};
use quatzero::eigen::sign::SignPattern;
use quatzero::eigen::spectrum::{split_spectrum, GaloisOrbit, Spectrum};
use quatzero::exactalg::arith::is_fundamental_discriminant;
use quatzero::periods::interval::Interval;
use quatzero::periods::{
    class_map_identities, embed, embeds, ideal_class_map, nonvanishing_verdict, Character, IQField, PeriodValue,
};
use quatzero::quatarith::brandt::hecke_matrices;
use quatzero::quatarith::classes::IdealClassSet;
use quatzero::trivzero::classify_zeroes;
use quatzero::{Error, Result};

use crate::config::{Config, Format};

fn to_json(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cache(cfg: &Config) -> Option<LevelCache> {
    cfg.cache_dir.as_ref().map(LevelCache::new)
}

/// Classes from a current cache document when available.
fn classes(cfg: &Config, n: u64) -> Result<IdealClassSet> {
    if let Some(c) = cache(cfg) {
        if let Some(doc) = c.load(n)? {
            return Ok(doc.classes);
        }
    }
    IdealClassSet::for_level(n)
}

fn spectrum(cfg: &Config, n: u64) -> Result<Spectrum> {
    split_spectrum(&classes(cfg, n)?, &cfg.eigen())
}

/// phi1, phi2, ... for cusp orbits in spectrum order, E for Eisenstein.
fn labels(spec: &Spectrum) -> Vec<String> {
    let mut k = 0;
    spec.orbits
        .iter()
        .map(|o| {
            if o.form.is_eisenstein {
                "E".to_string()
            } else {
                k += 1;
                format!("phi{k}")
            }
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn brandt(cfg: &Config, n: u64, primes: &[u64]) -> Result<String> {
    let cl = classes(cfg, n)?;
    let ts = hecke_matrices(&cl, primes)?;
    let mut out = String::new();
    match cfg.format {
        Format::Json => {
            return to_json(&json!({
                "level": n,
                "h": cl.h(),
                "weights": cl.weights,
                "matrices": ts.iter().map(|t| json!({"p": t.n, "entries": t.entries})).collect::<Vec<_>>(),
            }))
        }
        Format::Csv => {
            out.push_str("p,row,col,entry\n");
            for t in &ts {
                for (i, r) in t.entries.iter().enumerate() {
                    for (j, x) in r.iter().enumerate() {
                        writeln!(out, "{},{i},{j},{x}", t.n).unwrap();
                    }
                }
            }
        }
        Format::Pretty => {
            writeln!(out, "N = {n}, h = {}, weights {:?}", cl.h(), cl.weights).unwrap();
            for t in &ts {
                writeln!(out, "\nT_{}:", t.n).unwrap();
                for r in &t.entries {
                    let row: Vec<String> = r.iter().map(|x| format!("{x:>4}")).collect();
                    writeln!(out, "  [{}]", row.join("")).unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn orbit_json(label: &str, o: &GaloisOrbit) -> Value {
    json!({
        "label": label,
        "pattern": o.form.sign_pattern.to_string(),
        "degree": o.degree(),
        "field": o.defining_factor.to_string(),
        "eisenstein": o.form.is_eisenstein,
        "values": o.form.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "eigenvalues": o.form.eigenvalues.iter().map(|(p, a)| json!({"p": p, "a_p": a.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn eigenforms(cfg: &Config, n: u64, histogram: bool) -> Result<String> {
    let spec = spectrum(cfg, n)?;
    let labels = labels(&spec);
    let hists: Vec<Option<census::ValueHistogram>> = spec
        .orbits
        .iter()
        .map(|o| if histogram && o.degree() <= 2 { value_histogram(o).ok() } else { None })
        .collect();
    let mut out = String::new();
    match cfg.format {
        Format::Json => {
            let rows: Vec<Value> = spec
                .orbits
                .iter()
                .zip(&labels)
                .zip(&hists)
                .map(|((o, l), h)| {
                    let mut v = orbit_json(l, o);
                    if let Some(h) = h {
                        v["histogram"] = serde_json::to_value(&h.buckets).expect("plain data");
                    }
                    v
                })
                .collect();
            return to_json(&json!({"level": n, "h": spec.weights.len(), "weights": spec.weights, "orbits": rows}));
        }
        Format::Csv => {
            out.push_str("label,pattern,degree,field,class,value\n");
            for (o, l) in spec.orbits.iter().zip(&labels) {
                for (i, v) in o.form.values.iter().enumerate() {
                    writeln!(
                        out,
                        "{l},{},{},{},{i},{}",
                        o.form.sign_pattern,
                        o.degree(),
                        csv_field(&o.defining_factor.to_string()),
                        csv_field(&v.to_string())
                    )
                    .unwrap();
                }
            }
        }
        Format::Pretty => {
            writeln!(out, "N = {n}, h = {}, weights {:?}", spec.weights.len(), spec.weights).unwrap();
            for ((o, l), h) in spec.orbits.iter().zip(&labels).zip(&hists) {
                writeln!(out, "\n{l}  eps {}  degree {}", o.form.sign_pattern, o.degree()).unwrap();
                if o.degree() > 1 {
                    writeln!(out, "  field: a root of {}", o.defining_factor).unwrap();
                }
                let vals: Vec<String> = o.form.values.iter().map(|v| v.to_string()).collect();
                writeln!(out, "  values: ({})", vals.join(", ")).unwrap();
                for (p, a) in &o.form.eigenvalues {
                    writeln!(out, "  a_{p} = {a}").unwrap();
                }
                if let Some(h) = h {
                    writeln!(out, "  histogram:").unwrap();
                    for (k, c) in &h.buckets {
                        writeln!(out, "    ({}): {c}", k.join(", ")).unwrap();
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn zeroes(cfg: &Config, n: u64) -> Result<String> {
    let spec = spectrum(cfg, n)?;
    let labels = labels(&spec);
    let mut rows = Vec::new();
    for (o, l) in spec.orbits.iter().zip(&labels) {
        let (t, nt) = classify_zeroes(&o.zero_set, spec.report(&o.form.sign_pattern))?;
        rows.push((l.clone(), o, t, nt));
    }
    let total_nontrivial: usize = rows.iter().map(|(_, o, _, nt)| o.degree() * nt.len()).sum();
    let mut out = String::new();
    match cfg.format {
        Format::Json => {
            let patterns: Vec<Value> = spec
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "pattern": r.eps.to_string(),
                        "dim": r.dim(),
                        "inadmissible_orbits": r.inadmissible.len(),
                        "trivial_zero_classes": r.trivial_zero_classes,
                    })
                })
                .collect();
            let orbits: Vec<Value> = rows
                .iter()
                .map(|(l, o, t, nt)| {
                    json!({
                        "label": l,
                        "pattern": o.form.sign_pattern.to_string(),
                        "degree": o.degree(),
                        "trivial_zeroes": t,
                        "nontrivial_zeroes": nt,
                        "zero_free": o.zero_set.is_empty(),
                    })
                })
                .collect();
            return to_json(&json!({
                "level": n,
                "h": spec.weights.len(),
                "patterns": patterns,
                "orbits": orbits,
                "all_zeroes_trivial": total_nontrivial == 0,
            }));
        }
        Format::Csv => {
            out.push_str("label,pattern,degree,trivial_zeroes,nontrivial_zeroes,zero_free\n");
            for (l, o, t, nt) in &rows {
                writeln!(
                    out,
                    "{l},{},{},{},{},{}",
                    o.form.sign_pattern,
                    o.degree(),
                    t.len(),
                    nt.len(),
                    o.zero_set.is_empty()
                )
                .unwrap();
            }
        }
        Format::Pretty => {
            writeln!(out, "N = {n}, h = {}", spec.weights.len()).unwrap();
            writeln!(out, "\npattern  dim  inadmissible  trivial-zero classes").unwrap();
            for r in &spec.reports {
                writeln!(
                    out,
                    "{:<8} {:>4} {:>13}  {:?}",
                    r.eps.to_string(),
                    r.dim(),
                    r.inadmissible.len(),
                    r.trivial_zero_classes
                )
                .unwrap();
            }
            writeln!(out, "\nform   pattern  degree  trivial zeroes  nontrivial zeroes").unwrap();
            for (l, o, t, nt) in &rows {
                let free = if o.zero_set.is_empty() { "  zero-free" } else { "" };
                writeln!(
                    out,
                    "{l:<6} {:<8} {:>6}  {:<14}  {nt:?}{free}",
                    o.form.sign_pattern.to_string(),
                    o.degree(),
                    format!("{t:?}")
                )
                .unwrap();
            }
            if total_nontrivial == 0 {
                writeln!(out, "\nall zeroes are trivial").unwrap();
            } else {
                writeln!(out, "\n{total_nontrivial} nontrivial zeroes (conjugates counted)").unwrap();
            }
        }
    }
    Ok(out)
}

pub fn dims(cfg: &Config, level: Option<u64>, pattern: Option<&str>, range: Option<&str>) -> Result<String> {
    let levels = match (level, range) {
        (Some(n), None) => vec![n],
        (None, Some(r)) => LevelFilter::parse(r)?.levels(),
        _ => return Err(Error::precondition("give a level or --range")),
    };
    if let Some(p) = pattern {
        let n = levels[0];
        let eps = SignPattern::parse(n, p)?;
        let bias = dim_bias(n, &eps)?;
        let criterion = eps.is_all_plus() || no_trivial_zeroes_criterion(n, &eps)?;
        let terms = bias_terms(n, &eps)?;
        return Ok(match cfg.format {
            Format::Json => to_json(&json!({
                "level": n,
                "pattern": eps.to_string(),
                "dim_bias": bias,
                "no_trivial_zeroes": criterion,
                "terms": terms.iter().map(|t| json!({
                    "d": t.d,
                    "weighted_class_number": t.h_weighted.to_string(),
                    "b": t.b,
                    "kronecker_product": t.kronecker_product,
                    "contribution": t.contribution.to_string(),
                })).collect::<Vec<_>>(),
            }))?,
            Format::Csv => format!("level,pattern,dim_bias,no_trivial_zeroes\n{n},{eps},{bias},{criterion}\n"),
            Format::Pretty => {
                let mut s = format!("N = {n}, eps = {eps}: dim_bias = {bias}, no trivial zeroes: {criterion}\n");
                for t in &terms {
                    // The d = 3 correction term carries no b constant.
                    let d = if t.b == 0 { format!("{} corr", t.d) } else { t.d.to_string() };
                    writeln!(
                        s,
                        "  d = {:<8} h' = {:<5} b = {}  prod = {:<3} term = {}",
                        d,
                        t.h_weighted.to_string(),
                        t.b,
                        t.kronecker_product,
                        t.contribution
                    )
                    .unwrap();
                }
                s
            }
        });
    }
    let mut rows = Vec::new();
    for &n in &levels {
        rows.extend(scan_level(n)?);
    }
    let s = summarize(&rows);
    Ok(match cfg.format {
        Format::Json => to_json(&json!({
            "levels": s.levels,
            "levels_with_free_pattern": s.levels_with_free_pattern,
            "free_patterns": s.free_patterns,
            "rows": rows.iter().map(|r| json!({
                "level": r.level, "pattern": r.pattern, "dim_bias": r.dim_bias, "no_trivial_zeroes": r.criterion,
            })).collect::<Vec<_>>(),
        }))?,
        Format::Csv => scan_csv(&rows),
        Format::Pretty => {
            let mut out = String::new();
            if levels.len() == 1 {
                writeln!(out, "pattern  dim_bias  no trivial zeroes").unwrap();
                for r in &rows {
                    writeln!(out, "{:<8} {:>8}  {}", r.pattern, r.dim_bias, r.criterion).unwrap();
                }
                out.push('\n');
            }
            writeln!(out, "levels: {}", s.levels).unwrap();
            writeln!(out, "levels with a non-trivial pattern free of trivial zeroes: {}", s.levels_with_free_pattern).unwrap();
            writeln!(out, "such patterns: {}", s.free_patterns).unwrap();
            out
        }
    })
}

fn interval_json(i: &Interval) -> Value {
    json!([i.lo.to_string(), i.hi.to_string()])
}

fn period_json(p: &PeriodValue) -> Value {
    match p {
        PeriodValue::Exact(v) => json!({"kind": "exact", "value": v.to_string()}),
        PeriodValue::IdenticallyZero => json!({"kind": "zero", "certificate": "divisible by the cyclotomic polynomial"}),
        PeriodValue::ZeroAtEmbedding { factor_degree } => {
            json!({"kind": "zero", "certificate": format!("root of a cyclotomic factor of degree {factor_degree}")})
        }
        PeriodValue::Approx { re, im, bits } => {
            json!({"kind": "interval", "re": interval_json(re), "im": interval_json(im), "bits": bits})
        }
    }
}

fn parse_chi(k: &IQField, s: &str) -> Result<Character> {
    let exps = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::precondition(format!("bad character exponent '{t}'"))))
        .collect::<Result<Vec<u64>>>()?;
    if exps.len() != k.invariant_factors.len() {
        return Err(Error::precondition(format!(
            "character needs {} exponents for invariants {:?}",
            k.invariant_factors.len(),
            k.invariant_factors
        )));
    }
    if exps.iter().zip(&k.invariant_factors).any(|(e, n)| e >= n) {
        return Err(Error::precondition("character exponent out of range"));
    }
    Ok(Character { exponents: exps })
}

pub fn periods(cfg: &Config, n: u64, d: u64, chi: Option<&str>) -> Result<String> {
    if !is_fundamental_discriminant(-(d as i64)) {
        return Err(Error::precondition(format!("-{d} is not a fundamental discriminant")));
    }
    if !embeds(d, n) {
        return Err(Error::precondition(format!("Q(sqrt(-{d})) does not embed in the algebra of discriminant {n}")));
    }
    let cl = classes(cfg, n)?;
    let spec = split_spectrum(&cl, &cfg.eigen())?;
    let k = IQField::new(d)?;
    let emb = embed(&k, &cl, cfg.short_vector_budget)?;
    let table = ideal_class_map(&emb, &k, &cl, &spec.involutions)?;
    let ids = class_map_identities(&table, &k, &spec.involutions)?;
    let chars = match chi {
        Some(s) => vec![parse_chi(&k, s)?],
        None => k.characters(),
    };
    let labels = labels(&spec);
    let pcfg = cfg.period();
    let mut rows = Vec::new();
    for (o, l) in spec.orbits.iter().zip(&labels) {
        if o.form.is_eisenstein {
            continue;
        }
        for c in &chars {
            let r = nonvanishing_verdict(&o.form, &k, &table, c, &pcfg)?;
            let p = quatzero::periods::period(&o.form, &k, &table, c, &pcfg)?;
            rows.push((l.clone(), o, r, p));
        }
    }
    let mut out = String::new();
    match cfg.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(l, o, r, p)| {
                    json!({
                        "form": l,
                        "field": o.defining_factor.to_string(),
                        "level": r.level,
                        "D": r.d,
                        "chi": r.character,
                        "chi_order": r.character_order,
                        "pattern": r.sign_pattern,
                        "root_number_condition": r.root_number_condition,
                        "twisted_root_number_condition": r.twisted_root_number_condition,
                        "local_condition": r.local_condition,
                        "verdict": r.verdict.to_string(),
                        "period": period_json(p),
                        "provenance": r.provenance,
                    })
                })
                .collect();
            return to_json(&json!({
                "level": n,
                "D": d,
                "class_group": k.invariant_factors,
                "base_class": table.embedding.class_index,
                "class_map": table.map,
                "twists": table.twists,
                "identities": serde_json::to_value(&ids)?,
                "verdicts": v,
            }));
        }
        Format::Csv => {
            out.push_str("form,pattern,chi,chi_order,root_number_condition,twisted_root_number_condition,local_condition,verdict,period\n");
            for (l, _, r, p) in &rows {
                let chi: Vec<String> = r.character.iter().map(|e| e.to_string()).collect();
                writeln!(
                    out,
                    "{l},{},{},{},{},{},{},{},{}",
                    r.sign_pattern,
                    csv_field(&chi.join(",")),
                    r.character_order,
                    r.root_number_condition,
                    r.twisted_root_number_condition,
                    r.local_condition,
                    r.verdict,
                    csv_field(&period_json(p).to_string())
                )
                .unwrap();
            }
        }
        Format::Pretty => {
            writeln!(out, "N = {n}, D = {d}, h_K = {}, Cl(K) invariants {:?}", k.h(), k.invariant_factors).unwrap();
            writeln!(out, "base class {}, class map {:?}, twist classes {:?}", table.embedding.class_index, table.map, table.twists).unwrap();
            writeln!(
                out,
                "identities: inverse = sigma_N {}, 2-torsion fixed {}, twisted inverse {}",
                ids.inverse_is_sigma_n, ids.two_torsion_fixed, ids.twisted_inverse
            )
            .unwrap();
            for (o, l) in spec.orbits.iter().zip(&labels) {
                if !o.form.is_eisenstein && o.degree() > 1 {
                    writeln!(out, "{l}: values in Q(a), a a root of {}", o.defining_factor).unwrap();
                }
            }
            writeln!(out, "\nform   pattern  chi      (i)    (i')   (ii)   verdict       period").unwrap();
            for (l, _, r, _) in &rows {
                writeln!(
                    out,
                    "{l:<6} {:<8} {:<8} {:<6} {:<6} {:<6} {:<13} {}",
                    r.sign_pattern,
                    format!("{:?}", r.character),
                    r.root_number_condition,
                    r.twisted_root_number_condition,
                    r.local_condition,
                    r.verdict.to_string(),
                    r.period
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

pub fn census(cfg: &Config, range: &str, plots: Option<&Path>) -> Result<String> {
    let levels = LevelFilter::parse(range)?.levels();
    let opts = CensusOptions {
        eigen: cfg.eigen(),
        cache_dir: cfg.cache_dir.clone(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    let entries = pool.install(|| census::run_census(&levels, &opts));
    let recs = census::records(&entries);
    if let Some(dir) = plots {
        fs::create_dir_all(dir)?;
        for kind in PLOT_KINDS {
            fs::write(dir.join(format!("{kind}.csv")), emit_plot_data(&recs, kind, PlotFormat::Csv))?;
            fs::write(dir.join(format!("{kind}.dat")), emit_plot_data(&recs, kind, PlotFormat::Coordinates))?;
        }
        fs::write(dir.join("degree-histogram.tsv"), degree_histogram(&recs).table())?;
    }
    Ok(match cfg.format {
        Format::Json => to_json(&serde_json::to_value(&entries)?)?,
        Format::Csv => census::census_csv(&entries),
        Format::Pretty => {
            let failed: Vec<&census::CensusEntry> = entries.iter().filter(|e| e.error.is_some()).collect();
            let mut out = format!("levels: {} ({} failed)\n", entries.len(), failed.len());
            for e in &failed {
                writeln!(out, "  N = {}: {}", e.level, e.error.as_deref().unwrap_or("")).unwrap();
            }
            let (mut forms, mut triv, mut nontriv) = (0, 0, 0);
            for r in &recs {
                forms += r.totals.cusp_forms;
                triv += r.totals.trivial_zeroes;
                nontriv += r.totals.nontrivial_zeroes;
            }
            writeln!(out, "cusp forms: {forms}, trivial zeroes: {triv}, nontrivial zeroes: {nontriv}\n").unwrap();
            out.push_str(&degree_histogram(&recs).table());
            out
        }
    })
}

pub fn cache_list(cfg: &Config) -> Result<String> {
    let c = cache(cfg).ok_or_else(|| Error::precondition("no cache directory configured"))?;
    let levels = c.levels()?;
    Ok(match cfg.format {
        Format::Json => to_json(&json!(levels))?,
        _ => levels.iter().map(|n| format!("{n}\n")).collect(),
    })
}

pub fn cache_show(cfg: &Config, n: u64) -> Result<String> {
    let c = cache(cfg).ok_or_else(|| Error::precondition("no cache directory configured"))?;
    let doc = c.load(n)?.ok_or_else(|| Error::precondition(format!("no current cache document for N = {n}")))?;
    to_json(&json!({"key": doc.key, "h": doc.classes.h(), "record": doc.record}))
}

pub fn cache_clear(cfg: &Config) -> Result<String> {
    let c = cache(cfg).ok_or_else(|| Error::precondition("no cache directory configured"))?;
    Ok(format!("removed {} documents\n", c.clear()?))
}

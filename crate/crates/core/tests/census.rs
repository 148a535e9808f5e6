use quatzero::census::{
    census_csv, census_level, degree_histogram, emit_plot_data, records, run_census,
    value_histogram, CensusOptions, LevelFilter, LevelCache, PlotFormat, PlotKind,
};
use quatzero::eigen::spectrum::{split_spectrum, EigenConfig};
use quatzero::quatarith::classes::IdealClassSet;

fn prime_census(bound: u64) -> Vec<quatzero::census::CensusEntry> {
    let f = LevelFilter::parse(&format!("prime,<{bound}")).unwrap();
    let entries = run_census(&f.levels(), &CensusOptions::default());
    assert!(entries.iter().all(|e| e.error.is_none()));
    entries
}

#[test]
fn published_prime_level_prefixes() {
    let entries = prime_census(190);
    let recs = records(&entries);
    let zero_free = emit_plot_data(&recs, PlotKind::ZeroFreePrime, PlotFormat::Coordinates);
    for line in [
        "(13, 1.0)",
        "(61, 1.0)",
        "(71, 0.9743589743589743)",
        "(79, 0.9787234042553191)",
        "(113, 0.9787234042553191)",
        "(139, 0.9761904761904762)",
        "(151, 0.9583333333333334)",
        "(181, 0.9651741293532339)",
    ] {
        assert!(zero_free.lines().any(|l| l == line), "missing {line}");
    }
    let cumulative = emit_plot_data(&recs, PlotKind::CumulativeNontrivial, PlotFormat::Coordinates);
    for line in ["(3, 0)", "(37, 0)", "(79, 2)", "(131, 7)", "(181, 33)"] {
        assert!(cumulative.lines().any(|l| l == line), "missing {line}");
    }
    let csv = emit_plot_data(&recs, PlotKind::ZeroFreePrime, PlotFormat::Csv);
    assert!(csv.starts_with("x,numerator,denominator,y\n"));
    assert!(csv.lines().any(|l| l == "151,138,144,0.9583333333333334"));
    let hist = degree_histogram(&recs);
    assert_eq!(hist.orbits.iter().sum::<u64>(), recs.iter().map(|r| r.orbits.len() as u64 - 1).sum::<u64>());
}

#[test]
fn record_totals() {
    let r = census_level(154, &CensusOptions::default()).unwrap();
    assert_eq!(r.h, 6);
    assert_eq!(r.totals.cusp_forms, 5);
    assert_eq!(r.totals.nontrivial_zeroes, 0);
    // phi3, phi4, phi5 each vanish on two orbits of size two.
    assert_eq!(r.totals.trivial_zeroes, 12);
    assert_eq!(r.totals.zero_free_forms, 2);
    let r = census_level(30, &CensusOptions::default()).unwrap();
    assert_eq!((r.totals.cusp_forms, r.totals.zero_free_forms), (1, 1));
}

#[test]
fn value_histograms() {
    let c = IdealClassSet::for_level(30).unwrap();
    let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
    let eis = s.orbits.iter().find(|o| o.form.is_eisenstein).unwrap();
    let h = value_histogram(eis).unwrap();
    assert_eq!(h.buckets, vec![(vec!["1".to_string()], 2)]);
    let cusp = s.cusp_orbits().next().unwrap();
    let h = value_histogram(cusp).unwrap();
    assert_eq!(h.buckets, vec![(vec!["-1".to_string()], 1), (vec!["1".to_string()], 1)]);
    assert_eq!(h.csv(), "value,count\n-1,1\n1,1\n");

    let c = IdealClassSet::for_level(154).unwrap();
    let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
    let deg2 = s.cusp_orbits().find(|o| o.degree() == 2).unwrap();
    let h = value_histogram(deg2).unwrap();
    assert_eq!(h.buckets.len(), 3);
    assert!(h.buckets.iter().all(|(k, c)| k.len() == 2 && *c == 2));

    let c = IdealClassSet::for_level(167).unwrap();
    let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
    let big = s.cusp_orbits().find(|o| o.degree() > 2).unwrap();
    assert!(value_histogram(big).is_err());
}

#[test]
fn cached_rerun_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let opts = CensusOptions {
        cache_dir: Some(dir.path().to_path_buf()),
        ..Default::default()
    };
    let levels = LevelFilter::parse("<60").unwrap().levels();
    let first = census_csv(&run_census(&levels, &opts));
    assert_eq!(LevelCache::new(dir.path()).levels().unwrap(), levels);
    let second = census_csv(&run_census(&levels, &opts));
    assert_eq!(first, second);
    let uncached = census_csv(&run_census(&levels, &CensusOptions::default()));
    assert_eq!(first, uncached);
}

#[test]
fn empty_range() {
    let levels = LevelFilter::parse("none").unwrap().levels();
    assert!(levels.is_empty());
    let entries = run_census(&levels, &CensusOptions::default());
    assert_eq!(census_csv(&entries).lines().count(), 1);
    let recs = records(&entries);
    assert_eq!(emit_plot_data(&recs, PlotKind::ZeroFreePrime, PlotFormat::Coordinates), "");
}

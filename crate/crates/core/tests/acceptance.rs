//! Acceptance scorecard. Every criterion is checked against literal values
//! frozen in this file, then reported as one PASS/FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use shufflecraft_core::construct::Constructor;
use shufflecraft_core::enumerate::{distinct_self_shuffles, enumeration_row};
use shufflecraft_core::limit::{verify_abelian_periodicity, verify_theorem4, verify_theorem5};
use shufflecraft_core::morphism::{
    certify_square_free_morphism, certify_square_free_substitution, check_substitution_properties,
    substitution_test_length,
};
use shufflecraft_core::reproduce::{property_suites, PropertyBudget};
use shufflecraft_core::shuffle::shuffle_conducted;
use shufflecraft_core::word::enumerate_square_free;
use shufflecraft_core::{verify_catalog, Catalog, Verdict, Word};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

const COUNTS: [(usize, usize, usize, usize); 12] = [
    (4, 18, 0, 0),
    (6, 42, 6, 6),
    (8, 78, 12, 6),
    (10, 144, 30, 12),
    (12, 264, 24, 18),
    (14, 456, 42, 30),
    (16, 798, 78, 42),
    (18, 1392, 138, 36),
    (20, 2388, 228, 54),
    (22, 4146, 396, 138),
    (24, 7032, 588, 168),
    (26, 11892, 1008, 234),
];

fn enumeration() -> Check {
    let mut differing = Vec::new();
    for (l, sf, words, us) in COUNTS {
        let row = enumeration_row(l).map_err(|e| e.to_string())?;
        if (row.square_free_count, row.shuffle_word_count, row.shuffleable_u_count) != (sf, words, us) {
            differing.push(l);
        }
    }
    ensure(differing.is_empty(), format!("12 rows, differing {differing:?}"))
}

const SIGMA: [&str; 4] = [
    "010210120102120210120212",
    "012101202101210201202102",
    "012102010210121020120212",
    "012102120102101202120102",
];

fn sigma_table() -> Check {
    let catalog = Catalog::embedded();
    let rho = catalog.morphism("rho").unwrap();
    let mut good = 0;
    for (i, expected) in SIGMA.iter().enumerate() {
        let beta = match &catalog.get(&format!("sigma{i}")).unwrap().payload {
            shufflecraft_core::catalog::Payload::Shuffle { beta, .. } => beta.clone(),
            _ => return Err(format!("sigma{i} is not a shuffle")),
        };
        let image = rho.image(i as u8);
        let (zeros, ones) = (beta.count0(), beta.count1());
        let out = shuffle_conducted(image, image, &beta).map_err(|e| e.to_string())?;
        if out == w(expected) && out.is_square_free() && (zeros, ones) == (12, 12) {
            good += 1;
        }
    }
    ensure(good == 4, format!("{good} of 4 rows"))
}

const LISTING: [(&str, &[&str]); 7] = [
    ("01021201", &["0102120102012101", "0102120102101201", "0102101201021201"]),
    ("01201021", &["0102101201020121"]),
    ("01202101", &["0120210120102101", "0120102101202101", "0102012101202101"]),
    ("01202102", &["0102120210201202"]),
    ("01202120", &["0120210201202120"]),
    ("01210120", &["0121012010210120"]),
    ("01210201", &["0121020102101201", "0120102012101201", "0120102101210201"]),
];

fn listing() -> Check {
    let expected: BTreeMap<Word, BTreeSet<Word>> =
        LISTING.iter().map(|(u, ws)| (w(u), ws.iter().map(|x| w(x)).collect())).collect();
    let mut computed = BTreeMap::new();
    for u in enumerate_square_free(3, 8).unwrap().filter(|u| u.letters().starts_with(&[0, 1])) {
        let words: BTreeSet<Word> = distinct_self_shuffles(&u).into_keys().collect();
        if !words.is_empty() {
            computed.insert(u, words);
        }
    }
    let words: usize = computed.values().map(BTreeSet::len).sum();
    ensure(computed == expected, format!("{} u, {words} words", computed.len()))
}

const CERTIFIED: [&str; 20] = [
    "alpha", "B", "S", "h19", "h23", "h24", "absorbing_h", "absorbing_h_prime", "sigma_6", "sigma_7", "sigma_8",
    "sigma_9", "sigma_10", "sigma_11", "sigma_12", "sigma_13", "sigma_14", "sigma_15", "sigma_16",
    "sigma_17",
];

fn morphisms() -> Check {
    let catalog = Catalog::embedded();
    let mut failed: Vec<&str> = CERTIFIED
        .into_iter()
        .filter(|name| certify_square_free_morphism(catalog.morphism(name).unwrap()).verdict != Verdict::Certified)
        .collect();
    for name in ["rho", "tau"] {
        let cert = certify_square_free_morphism(catalog.morphism(name).unwrap());
        let witnessed = cert.counterexample.as_ref().is_some_and(|cx| {
            let sq = cx.square;
            cx.recheck() && !cx.image.factor(sq.start..sq.end()).is_square_free()
        });
        if cert.verdict != Verdict::Refuted || !witnessed {
            failed.push(name);
        }
    }
    let rho20 = catalog.morphism("rho").unwrap().apply(&w("20")).unwrap().to_string();
    if !rho20.contains("201021201021") {
        failed.push("rho(20)");
    }
    ensure(failed.is_empty(), format!("20 certified, 2 refuted, failed {failed:?}"))
}

fn substitution() -> Check {
    let s = Catalog::embedded().substitution("interval_subst").unwrap();
    let properties = check_substitution_properties(s);
    let length = substitution_test_length(s);
    let cert = certify_square_free_substitution(s, length);
    let covered = (length - 2) * s.min_image_len() + 2 >= 2 * 52;
    ensure(
        properties.all() && length == 8 && cert.checked_count == 78 && cert.is_certified() && covered,
        format!("test length {length}, {} words, {:?}", cert.checked_count, cert.verdict),
    )
}

fn witnesses_and_compositions() -> Check {
    let catalog = Catalog::embedded();
    let report = verify_catalog();
    let failures: Vec<String> = report.failures().map(|r| format!("{}/{}", r.entry, r.check)).collect();
    let bases: Vec<usize> = catalog.base_witnesses().keys().copied().collect();
    let expected_bases: Vec<usize> = (3..=17).chain([19, 20, 21, 26]).collect();
    let compositions = catalog.compositions();
    let lengths = [18, 1831].map(|n| compositions.get(&n).and_then(|r| catalog.apply_composition(r).ok()).map(|x| x.u.len()));
    ensure(
        failures.is_empty() && bases == expected_bases && lengths == [Some(18), Some(1831)],
        format!("{} checks, failures {failures:?}, composed lengths {lengths:?}", report.rows.len()),
    )
}

fn coverage() -> Check {
    let constructor = Constructor::from_env().unwrap();
    let report = constructor.coverage_report(2000).map_err(|e| e.to_string())?;
    let samples = [5202, 5203, 5302, 9999, 10405, 100_000];
    let mut failed = Vec::new();
    for n in samples {
        let ok = constructor.construct_witness(n).is_ok_and(|c| {
            let witness = c.witness();
            c.n == n && witness.verify().is_ok() && witness.len() == n
        });
        if !ok {
            failed.push(n);
        }
    }
    ensure(
        report.gaps.is_empty() && report.attained().eq(3..=2000) && failed.is_empty(),
        format!("3..=2000 gaps {:?}, samples failed {failed:?}", report.gaps),
    )
}

fn theorem4() -> Check {
    let v = verify_theorem4(10_000).map_err(|e| e.to_string())?;
    ensure(v.holds && v.prefix_length >= 10_000, format!("{} letters", v.prefix_length))
}

fn theorem5() -> Check {
    let v = verify_theorem5(10_000).map_err(|e| e.to_string())?;
    ensure(v.holds && v.prefix_length >= 9990, format!("{} letters", v.prefix_length))
}

fn abelian() -> Check {
    let v = verify_abelian_periodicity(48 * 50, 48).map_err(|e| e.to_string())?;
    ensure(
        v.holds && v.detail.as_deref() == Some("parikh [16, 16, 16]"),
        format!("50 blocks, {}", v.detail.unwrap_or_default()),
    )
}

fn properties() -> Check {
    let budget = PropertyBudget::default();
    let r = property_suites(&budget).map_err(|e| e.to_string())?;
    ensure(
        r.violations == 0 && budget.round_trips == 10_000 && budget.splits == 10_000 && budget.dean_exhaustive == 20,
        r.summary(),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("enumeration table", enumeration),
        ("sigma table", sigma_table),
        ("length-8 listing", listing),
        ("morphism certificates", morphisms),
        ("substitution certificate", substitution),
        ("base witnesses and compositions", witnesses_and_compositions),
        ("coverage", coverage),
        ("self-shuffled image prefix", theorem4),
        ("deleted-letter self-shuffle prefix", theorem5),
        ("abelian periodicity", abelian),
        ("property suites", properties),
    ];
    let mut passed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("[{tag}] {:>2} {title} ({secs:.1}s): {detail}", i + 1);
        passed += outcome.is_ok() as usize;
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}

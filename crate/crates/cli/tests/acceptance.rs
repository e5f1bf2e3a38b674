//! Acceptance suite: one test per release criterion, each ending in a
//! single PASS line. The criteria pin the published reference values the
//! library must reproduce, the exhaustive spoiling-law sweep, oracle
//! equivalence, bound identities, enumeration ground truth, the random
//! ensemble statistics, and end-to-end determinism.

use std::collections::BTreeSet;
use std::process::Command;

use paramcodes_core::bounds::{
    classify, entropy, gv_value, hamming_value, plotkin_radius, CodePoint, Verdict,
};
use paramcodes_core::build::{build_code, BuildPolicy};
use paramcodes_core::ensemble::{
    enumerate_codes, enumerate_codes_visit, oracle_code_parameters, sample_srce, EnsembleConfig,
    EnsembleError, Provenance,
};
use paramcodes_core::metrics::{code_parameters, RateBase};
use paramcodes_core::spoil::{
    check_spoiling_law, spoil_extend, spoil_project, spoil_restrict, SpoilError, SpoilFunction,
};
use paramcodes_core::{Alphabet, Code, Rational};

use paramcodes::report::{analyze, rerun, report_json, AnalyzeOptions};
use paramcodes::Delimiter;

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

fn build_fixture_code(name: &str, policy: &BuildPolicy) -> Code {
    let table = paramcodes::parse_table(&fixture(name), Some(Delimiter::Tab)).unwrap();
    build_code(&table, policy).unwrap().code
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[test]
fn criterion_1_three_romance_languages_sit_below_gv() {
    let code = build_fixture_code("romance_6param.tsv", &BuildPolicy::binary());
    let p = code_parameters(&code, RateBase::Alphabet).unwrap();

    let expected_rate = 3f64.log2() / 6.0;
    assert!((p.rate - 0.2642).abs() <= 1e-4, "rate {}", p.rate);
    assert!((p.rate - expected_rate).abs() <= 1e-12);
    assert_eq!(p.relative_distance, Rational::new(1, 6));

    let point = CodePoint::new(p.relative_distance, p.rate, Alphabet::BINARY).unwrap();
    let result = classify(&point, 1.0 / 6.0).unwrap();
    assert_eq!(result.verdict, Verdict::BelowGv);
    let gv_cert = &result.certificates[3];
    assert!(gv_cert.fired);
    assert!(
        (gv_cert.margin - 0.0858).abs() <= 1e-3,
        "gv margin {}",
        gv_cert.margin
    );

    println!(
        "criterion 1: PASS — R = {:.7}, delta = 1/6, below GV by {:.7}",
        p.rate, gv_cert.margin
    );
}

#[test]
fn criterion_2_arabic_wolof_basque_violate_plotkin() {
    let code = build_fixture_code("arabic_wolof_basque_25param.tsv", &BuildPolicy::binary());
    let p = code_parameters(&code, RateBase::Alphabet).unwrap();

    assert_eq!(p.distance_multiset, vec![13, 13, 16]);
    assert_eq!(p.relative_distance, Rational::new(13, 25));
    assert_eq!(ratio_f64(p.relative_distance), 0.52);

    let point = CodePoint::new(p.relative_distance, p.rate, Alphabet::BINARY).unwrap();
    let result = classify(&point, 1.0 / 25.0).unwrap();
    assert_eq!(result.verdict, Verdict::AboveAsymptotic);
    assert!(result.certificates[0].fired, "plotkin must fire");

    println!("criterion 2: PASS — distances {{16, 13, 13}}, delta = 0.52, Plotkin violated");
}

#[test]
fn criterion_3_ternary_63_column_rate_and_gv_classification() {
    let code = build_fixture_code("arabic_wolof_basque_63param.tsv", &BuildPolicy::ternary());
    assert_eq!(code.block_length(), 63);
    assert_eq!(code.word_count(), 3);

    let base2 = code_parameters(&code, RateBase::Two).unwrap();
    assert!((base2.rate - 0.0252).abs() <= 5e-4, "rate {}", base2.rate);
    assert!((base2.rate - 3f64.log2() / 63.0).abs() <= 1e-12);

    let baseq = code_parameters(&code, RateBase::Alphabet).unwrap();
    assert_eq!(baseq.dimension, 1.0);
    assert_eq!(baseq.rate, 1.0 / 63.0);

    // the published delta for this example is not derivable from its own
    // data (0.4643 * 63 is not an integer), so the classification logic is
    // exercised on the published point directly
    let point = CodePoint::new(Rational::new(4643, 10_000), 0.0252, Alphabet::TERNARY).unwrap();
    let result = classify(&point, 0.0).unwrap();
    assert_eq!(result.verdict, Verdict::BelowGv);
    let gv = gv_value(0.4643, Alphabet::TERNARY).unwrap();
    assert!((gv - 0.0784).abs() <= 1e-3, "gv {gv}");

    println!(
        "criterion 3: PASS — R(base 2) = {:.7}, R(base q) = 1/63, point (0.4643, 0.0252) below GV",
        base2.rate
    );
}

/// All binary codes with n <= 5 and 2..=4 words, except that shapes whose
/// full enumeration exceeds 10,000 codes are covered by 10,000 uniform
/// samples instead (only n=5, m=4: C(32,4) = 35,960).
fn spoiling_suite_codes() -> Vec<Code> {
    let mut codes = Vec::new();
    for n in 1..=5usize {
        for m in 2..=4usize {
            if (m as u128) > (1u128 << n) {
                continue;
            }
            let collected = enumerate_codes_visit(Alphabet::BINARY, n, m, 10_000, |code| {
                codes.push(code.clone());
                Ok(())
            });
            match collected {
                Ok(_) => {}
                Err(EnsembleError::CapExceeded { .. }) => {
                    let samples = sample_srce(&EnsembleConfig {
                        alphabet: Alphabet::BINARY,
                        block_length: n,
                        word_count: m,
                        trials: 10_000,
                        seed: 424_242,
                    })
                    .unwrap();
                    codes.extend(samples.into_iter().map(|s| s.code));
                }
                Err(other) => panic!("enumeration failed: {other}"),
            }
        }
    }
    codes
}

/// Letter assignments for extension functions: every function from the
/// word set to the alphabet when the code was fully enumerated, a fixed
/// spread of them for sampled codes.
fn extension_masks(m: usize, exhaustive: bool) -> Vec<u32> {
    let all = 1u32 << m;
    if exhaustive {
        (0..all).collect()
    } else {
        vec![0, all - 1, 0b0101 & (all - 1), 0b0011 & (all - 1)]
    }
}

#[test]
fn criterion_4_spoiling_laws_hold_across_the_small_binary_universe() {
    let mut extends = 0u64;
    let mut projects = 0u64;
    let mut restricts = 0u64;

    for code in spoiling_suite_codes() {
        let n = code.block_length();
        let m = code.word_count();
        // enumerated shapes get every function; the sampled 10,000 a spread
        let exhaustive = !(n == 5 && m == 4);
        for position in 1..=n + 1 {
            for mask in extension_masks(m, exhaustive) {
                let table: std::collections::BTreeMap<Vec<u32>, u32> = code
                    .words()
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (w.letters.clone(), (mask >> i) & 1))
                    .collect();
                let (extended, report) =
                    spoil_extend(&code, position, &SpoilFunction::Table(table)).unwrap();
                assert!(!report.law.is_violation(), "extend law: {:?}", report.law);
                assert!(!check_spoiling_law(&report).is_violation());
                extends += 1;

                let (restored, _) = spoil_project(&extended, position).unwrap();
                assert_eq!(restored.words(), code.words(), "round trip must restore");
                assert_eq!(restored.labels(), code.labels());
            }
        }
        if n >= 2 {
            for position in 1..=n {
                match spoil_project(&code, position) {
                    Ok((_, report)) => {
                        assert!(!report.law.is_violation(), "project law: {:?}", report.law);
                        assert!(!check_spoiling_law(&report).is_violation());
                        projects += 1;
                    }
                    Err(SpoilError::DegenerateResult { .. }) => {}
                    Err(other) => panic!("project failed: {other}"),
                }
            }
        }
        for position in 1..=n {
            for letter in 0..2u32 {
                match spoil_restrict(&code, letter, position) {
                    Ok((_, report)) => {
                        assert!(!report.law.is_violation(), "restrict law: {:?}", report.law);
                        assert!(!check_spoiling_law(&report).is_violation());
                        restricts += 1;
                    }
                    Err(SpoilError::EmptyLevelSet { .. })
                    | Err(SpoilError::SingletonLevelSet { .. }) => {}
                    Err(other) => panic!("restrict failed: {other}"),
                }
            }
        }
    }

    // the published level-set identities of the three-language example
    let code = build_fixture_code("romance_6param.tsv", &BuildPolicy::binary());
    let names = |c: &Code| -> BTreeSet<String> {
        c.labels().iter().map(|(n, _)| n.clone()).collect()
    };
    let (zero_at_4, _) = spoil_restrict(&code, 0, 4).unwrap();
    assert_eq!(
        names(&zero_at_4),
        BTreeSet::from(["Italian".to_owned(), "French".to_owned()])
    );
    let (one_at_6, _) = spoil_restrict(&code, 1, 6).unwrap();
    assert_eq!(
        names(&one_at_6),
        BTreeSet::from(["Spanish".to_owned(), "French".to_owned()])
    );

    println!(
        "criterion 4: PASS — {extends} extends (with round trips), {projects} projects, \
         {restricts} restricts, level sets C(0,4) and C(1,6) exact"
    );
}

#[test]
fn criterion_5_fast_parameters_agree_with_the_naive_oracle() {
    let mut checked = 0u64;
    for s in 0..1000u64 {
        let alphabet = if s % 2 == 0 {
            Alphabet::BINARY
        } else {
            Alphabet::TERNARY
        };
        let n = 2 + (s as usize * 7) % 63;
        let space: u128 = (0..n).fold(1u128, |acc, _| {
            acc.saturating_mul(alphabet.size() as u128)
        });
        let m = (2 + (s as usize * 13) % 31).min(space.min(32) as usize);
        let samples = sample_srce(&EnsembleConfig {
            alphabet,
            block_length: n,
            word_count: m,
            trials: 1,
            seed: 1000 + s,
        })
        .unwrap();
        for base in [RateBase::Alphabet, RateBase::Two] {
            let fast = code_parameters(&samples[0].code, base).unwrap();
            let slow = oracle_code_parameters(&samples[0].code, base).unwrap();
            assert_eq!(fast.min_distance, slow.min_distance);
            assert_eq!(fast.word_count, slow.word_count);
            assert_eq!(fast.distance_multiset, slow.distance_multiset);
            assert_eq!(fast.relative_distance, slow.relative_distance);
            assert!(
                (fast.dimension - slow.dimension).abs() <= 1e-12,
                "dimension {} vs {}",
                fast.dimension,
                slow.dimension
            );
            assert!((fast.rate - slow.rate).abs() <= 1e-12);
        }
        checked += 1;
    }
    println!("criterion 5: PASS — {checked} random codes agree on both rate bases");
}

#[test]
fn criterion_6_entropy_and_bound_identities() {
    for i in 0..=1000 {
        let x = i as f64 / 1000.0;
        let h = entropy(x, Alphabet::BINARY).unwrap();
        let mirrored = entropy(1.0 - x, Alphabet::BINARY).unwrap();
        assert!((h - mirrored).abs() <= 1e-12, "asymmetric at {x}");
    }
    for alphabet in [Alphabet::BINARY, Alphabet::TERNARY] {
        let radius = ratio_f64(plotkin_radius(alphabet));
        assert!((entropy(radius, alphabet).unwrap() - 1.0).abs() <= 1e-12);
        assert!((gv_value(0.0, alphabet).unwrap() - 1.0).abs() <= 1e-12);
        assert!(gv_value(radius, alphabet).unwrap().abs() <= 1e-12);
        for i in 1..1000 {
            let x = radius * i as f64 / 1000.0;
            let gv = gv_value(x, alphabet).unwrap();
            let ham = hamming_value(x, alphabet).unwrap();
            assert!(gv <= ham + 1e-15, "gv {gv} above hamming {ham} at {x}");
        }
    }
    println!("criterion 6: PASS — entropy symmetry, H_q at the radius, gv <= hamming, endpoints");
}

#[test]
fn criterion_7_two_bit_pair_enumeration_ground_truth() {
    let cloud = enumerate_codes(Alphabet::BINARY, 2, 2, 100).unwrap();
    assert_eq!(cloud.points.len(), 2);
    assert_eq!(cloud.points[0].relative_distance, Rational::new(1, 2));
    assert_eq!(cloud.points[0].rate, 0.5);
    assert_eq!(cloud.points[0].multiplicity, 4);
    assert_eq!(cloud.points[1].relative_distance, Rational::new(1, 1));
    assert_eq!(cloud.points[1].rate, 0.5);
    assert_eq!(cloud.points[1].multiplicity, 2);
    assert!(cloud
        .points
        .iter()
        .all(|p| p.provenance == Provenance::Enumerated));
    println!("criterion 7: PASS — point cloud {{(1/2, 1/2) x4, (1, 1/2) x2}} exact");
}

/// Finds the distance where the GV curve crosses the given rate.
fn gv_delta_at_rate(rate: f64, alphabet: Alphabet) -> f64 {
    let (mut lo, mut hi) = (0.0, ratio_f64(plotkin_radius(alphabet)));
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if gv_value(mid, alphabet).unwrap() > rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

#[test]
fn criterion_8_random_ensemble_statistics() {
    let config = EnsembleConfig {
        alphabet: Alphabet::BINARY,
        block_length: 128,
        word_count: 256,
        trials: 50,
        seed: 99,
    };
    let samples = sample_srce(&config).unwrap();

    // mean pairwise distance vs n/2, three standard errors across trials
    let means: Vec<f64> = samples
        .iter()
        .map(|s| {
            let m = &s.parameters.distance_multiset;
            m.iter().sum::<usize>() as f64 / m.len() as f64
        })
        .collect();
    let grand = means.iter().sum::<f64>() / means.len() as f64;
    let var =
        means.iter().map(|x| (x - grand).powi(2)).sum::<f64>() / (means.len() - 1) as f64;
    let se = (var / means.len() as f64).sqrt();
    assert!(
        (grand - 64.0).abs() <= 3.0 * se,
        "mean distance {grand} vs 64, 3se = {}",
        3.0 * se
    );

    // median relative distance against the GV distance at this rate; the
    // band [0.85, 0.96] was frozen from a separate 1,000-trial calibration
    // run (see the ignored calibrate_srce_statistics test: per-trial minimum
    // distances concentrate on 40..=43 of n = 128, all twenty 50-trial block
    // medians landed on 41)
    let mut mins: Vec<usize> = samples
        .iter()
        .map(|s| s.parameters.min_distance)
        .collect();
    mins.sort_unstable();
    let median_delta = (mins[24] + mins[25]) as f64 / 2.0 / 128.0;
    let gv_delta = gv_delta_at_rate(samples[0].parameters.rate, Alphabet::BINARY);
    let ratio = median_delta / gv_delta;
    assert!(
        (0.85..=0.96).contains(&ratio),
        "median delta {median_delta} vs GV delta {gv_delta}: ratio {ratio}"
    );

    // fixed seed, fixed output
    let again = sample_srce(&config).unwrap();
    assert_eq!(samples, again);

    println!(
        "criterion 8: PASS — mean distance {grand:.4} (3se {:.4}), median delta/GV ratio {ratio:.4}, deterministic",
        3.0 * se
    );
}

#[test]
fn criterion_9_reports_are_byte_stable() {
    let binary_fixtures = [
        "romance_6param.tsv",
        "arabic_wolof_basque_25param.tsv",
        "arabic_wolof_basque_63param.tsv",
    ];
    let mut checked = 0;
    for (name, alphabet) in binary_fixtures
        .iter()
        .map(|n| (*n, 2))
        .chain([("arabic_wolof_basque_63param.tsv", 3)])
    {
        let text = fixture(name);
        let options = AnalyzeOptions::new(alphabet);

        // same inputs twice through the library
        let first = analyze(&text, &options).unwrap();
        let second = analyze(&text, &options).unwrap();
        assert_eq!(report_json(&first), report_json(&second));

        // the report reproduces itself from its own embedded inputs
        let replayed = rerun(&first).unwrap();
        assert_eq!(report_json(&first), report_json(&replayed));

        // and the installed binary is bytewise stable too
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let run = |_: usize| {
            let out = Command::new(env!("CARGO_BIN_EXE_paramcodes"))
                .args(["analyze", &path, "--alphabet", &alphabet.to_string()])
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            out.stdout
        };
        let stdout_first = run(0);
        assert_eq!(stdout_first, run(1));
        // the binary prints exactly the library's report
        assert_eq!(String::from_utf8(stdout_first).unwrap(), report_json(&first));
        checked += 1;
    }
    println!("criterion 9: PASS — {checked} fixture configurations byte-stable (no timestamps recorded)");
}

use std::path::PathBuf;

use shufflecraft_cli::{run, CommandResult, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn cli(args: &str) -> CommandResult {
    run(std::iter::once("shufflecraft").chain(args.split_whitespace()))
}

/// Compares with `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &str) {
    let result = cli(args);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &result.output).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(result.output, expected, "{args}");
    // the golden text must also be valid JSON
    serde_json::from_str::<serde_json::Value>(&expected).unwrap();
}

#[test]
fn shuffle_example() {
    let r = cli("shuffle 0102 1201 00101110");
    assert_eq!((r.exit_code, r.output.as_str()), (EXIT_OK, "01102012\n"));
}

#[test]
fn shuffle_count_mismatch_is_a_usage_error() {
    let r = cli("shuffle 0102 1201 0010111");
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.output.contains("first operand"), "{}", r.output);
}

#[test]
fn squarefree_reports_the_square() {
    let r = cli("squarefree 00");
    assert_eq!(r.exit_code, EXIT_CHECK_FAILED);
    assert!(r.output.contains("(0, 1)"));
    assert_eq!(cli("squarefree 012021012102012021020121012").exit_code, EXIT_OK);
}

#[test]
fn enumerate_csv() {
    let r = cli("enumerate --max-length 8 --format csv");
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(
        r.output,
        "length,square_free,shuffle_words,shuffleable_u\n4,18,0,0\n6,42,6,6\n8,78,12,6\n"
    );
}

#[test]
fn find_beta_and_unshuffle() {
    let r = cli("find-beta 012");
    assert_eq!(r.output, "001011 010212\n");
    assert_eq!(cli("find-beta 012 --all").output.lines().count(), 2);
    assert_eq!(cli("find-beta 0").exit_code, EXIT_CHECK_FAILED);
    assert_eq!(cli("find-beta 012 --all --limit 1").exit_code, EXIT_USAGE);
    let r = cli("unshuffle 010212");
    assert_eq!(r.output, "u 012\nbeta 001011\n");
    assert_eq!(cli("unshuffle 01021").exit_code, EXIT_CHECK_FAILED);
}

#[test]
fn certificates_from_catalog_and_files() {
    assert_eq!(cli("certify-morphism alpha").exit_code, EXIT_OK);
    assert_eq!(cli("certify-morphism rho").exit_code, EXIT_CHECK_FAILED);
    assert_eq!(cli("certify-substitution interval_subst").exit_code, EXIT_OK);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tau.txt");
    std::fs::write(&file, "# Hall\n0 -> 012\n1 -> 02\n2 -> 1\n").unwrap();
    let r = cli(&format!("certify-morphism {}", file.display()));
    assert_eq!(r.exit_code, EXIT_CHECK_FAILED);
    assert!(r.output.contains("counterexample 010 -> 01202012"));

    let file = dir.path().join("s.txt");
    std::fs::write(&file, "0 -> {0}\n1 -> {0}\n").unwrap();
    assert_eq!(
        cli(&format!("certify-substitution {} --length 2", file.display())).exit_code,
        EXIT_CHECK_FAILED
    );
    let r = cli("certify-morphism sigma_99");
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.output.contains("did you mean"));
}

#[test]
fn fixed_points() {
    assert_eq!(cli("fixed-point tau --length 27").output, "012021012102012021020121012\n");
    assert_eq!(cli("fixed-point absorbing_h --length 18").output, "012021020102120210\n");
    assert_eq!(cli("fixed-point alpha --length 5").exit_code, EXIT_USAGE);
}

#[test]
fn construct_uses_the_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var("SHUFFLECRAFT_CACHE_DIR", dir.path());
    let first = cli("construct --length 40 --json");
    std::env::remove_var("SHUFFLECRAFT_CACHE_DIR");
    assert_eq!(first.exit_code, EXIT_OK);
    let cached = dir.path().join("witnesses/40.json");
    assert!(cached.is_file());
    let value: serde_json::Value = serde_json::from_str(&first.output).unwrap();
    assert_eq!(value["n"], 40);
    assert_eq!(cli("construct --length 2").exit_code, EXIT_USAGE);
}

#[test]
fn coverage_and_verify() {
    let r = cli("coverage --max 30");
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.output.contains("gaps []"));
    assert_eq!(cli("coverage --max 2").exit_code, EXIT_USAGE);
    for statement in ["theorem4", "theorem5", "lyndon"] {
        assert_eq!(cli(&format!("verify {statement} --prefix 960")).exit_code, EXIT_OK);
    }
    assert_eq!(cli("verify abelian --prefix 2400 --period 48").exit_code, EXIT_OK);
    assert_eq!(cli("verify abelian --prefix 2400 --period 7").exit_code, EXIT_USAGE);
    assert_eq!(cli("verify theorem6").exit_code, EXIT_USAGE);
}

#[test]
fn catalog_commands() {
    let r = cli("catalog dump --name w3");
    assert!(r.output.contains("\"beta\": \"001011\""));
    let r = cli("catalog verify");
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.output);
    assert!(r.output.contains(" 0 failed"));
}

#[test]
fn help_is_not_an_error() {
    let r = cli("--help");
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.output.contains("verify-paper"));
    assert_eq!(cli("").exit_code, EXIT_USAGE);
}

#[test]
fn golden_json() {
    golden("squarefree", "squarefree 01202012 --json");
    golden("shuffle", "shuffle 0102 1201 00101110 --json");
    golden("find_beta", "find-beta 012012 --limit 3 --json");
    golden("unshuffle", "unshuffle 012102010210121020120212 --json");
    golden("enumerate", "enumerate --max-length 10 --format json");
    golden("certify_tau", "certify-morphism tau --json");
    golden("certify_interval_subst", "certify-substitution interval_subst --json");
    golden("construct_18", "construct --length 18 --json");
    golden("verify_theorem5", "verify theorem5 --prefix 36 --json");
    golden("verify_lyndon", "verify lyndon --json");
    golden("catalog_w26", "catalog dump --name w26");
}

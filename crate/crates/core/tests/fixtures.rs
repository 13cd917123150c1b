use jetinv::fixtures::{all, check, default_dir, regenerate, render};

#[test]
fn stored_fixtures_match() {
    let stale = check(&default_dir());
    assert!(stale.is_empty(), "stale fixtures {stale:?}; run `jetinv fixtures regenerate`");
}

#[test]
fn regenerate_round_trips() {
    let dir = std::env::temp_dir().join(format!("jetinv-fixtures-{}", std::process::id()));
    let written = regenerate(&dir).unwrap();
    assert_eq!(written.len(), all().len());
    assert!(check(&dir).is_empty());
    std::fs::write(dir.join("example_8_7.json"), "{}\n").unwrap();
    assert_eq!(check(&dir), ["example_8_7.json"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn limit_fixture_has_perm_coefficients() {
    let (_, v) = all().into_iter().find(|(n, _)| *n == "limit_lambda2_k4.json").unwrap();
    let text = render(&v);
    assert!(text.contains("\"2\""), "{text}");
}

use spherical_cubature::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cubature").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn searched_rule_file_verifies_and_converts() {
    let dir = std::env::temp_dir().join(format!("cubature-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let found = dir.join("found.txt");
    let found = found.to_str().unwrap();
    let (code, _, err) = run(&["search", "--region", "ball", "--n", "2", "--degree", "3", "--N", "4", "--out", found]);
    assert_eq!(code, 0, "{err}");
    assert!(err.starts_with("Success"), "{err}");

    let (code, out, _) = run(&["verify", found]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"), "{out}");

    let (code, out, _) = run(&["verify", found, "--degree", "5"]);
    assert_eq!(code, 1, "{out}");

    let gauss = dir.join("g.txt");
    let (code, _, err) = run(&["convert", "e2r2-3-10-4", "--to", "gaussian", "--out", gauss.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["verify", gauss.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_rule_is_a_usage_error() {
    let (code, _, err) = run(&["verify", "no-such-rule"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
}

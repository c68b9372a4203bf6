mod common;

use proptest::prelude::*;

use relq_cli::parse_workspace;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn parse_emit_parse_is_stable(seed in any::<u64>()) {
        if let Err(why) = common::check_round_trip(&common::workspace_text(seed)) {
            prop_assert!(false, "{}", why);
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(seed in any::<u64>()) {
        let text = common::workspace_text(seed);
        let noisy: String = text.lines().map(|l| format!("{l}   # trailing\n\n")).collect();
        prop_assert_eq!(parse_workspace(&noisy).unwrap(), parse_workspace(&text).unwrap());
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "ws") {
            let text = std::fs::read_to_string(&path).unwrap();
            common::check_round_trip(&text).unwrap_or_else(|why| panic!("{}: {why}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 3, "only {seen} fixtures");
}

//! The shipped fixtures are the catalog in the input format. Set `COACT_REGENERATE=1` to
//! rewrite them after a deliberate catalog change.

use std::path::PathBuf;

use coact_cli::{emit_coaction, parse, to_json};
use coact_core::catalog;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

#[test]
fn fixtures_match_catalog() {
    let regenerate = std::env::var_os("COACT_REGENERATE").is_some();
    for c in catalog::full().unwrap() {
        let path = dir().join(format!("{}.json", c.name()));
        let expected = to_json(&emit_coaction(&c));
        if regenerate {
            std::fs::write(&path, &expected).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse(&text).unwrap(), parse(&expected).unwrap(), "{}", c.name());
    }
}

#[test]
fn fixtures_rebuild_the_catalog() {
    for c in catalog::full().unwrap() {
        let text = std::fs::read_to_string(dir().join(format!("{}.json", c.name()))).unwrap();
        let wb = parse(&text).unwrap().build(None).unwrap();
        let built = wb.coaction.expect("fixture defines a coaction");
        assert_eq!(built.name(), c.name());
        assert!(built.distance(&c).unwrap() < 1e-12, "{}", c.name());
    }
}

//! Rendered structure and representation matrices against committed
//! fixtures. Set `TWISTKIT_BLESS=1` to rewrite the fixtures.

mod common;

use common::{golden_dir, golden_fixtures};

#[test]
fn fixtures_match() {
    let bless = std::env::var_os("TWISTKIT_BLESS").is_some();
    for (name, content) in golden_fixtures() {
        let path = golden_dir().join(name);
        if bless {
            std::fs::write(&path, &content).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing fixture {name}"));
        assert_eq!(content, expected, "fixture {name} differs");
    }
}

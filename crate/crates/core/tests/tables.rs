use std::path::PathBuf;

use cyclohecke::ktheory::restriction_table;

const CASES: [(usize, usize); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/tables").join(name)
}

/// Set `CYCLOHECKE_BLESS=1` to rewrite the golden files.
#[test]
fn tables_match_golden_files() {
    let bless = std::env::var_os("CYCLOHECKE_BLESS").is_some();
    for (n, r) in CASES {
        let t = restriction_table(n, r);
        for (ext, body) in [("csv", t.to_csv()), ("json", t.to_json() + "\n")] {
            let path = golden(&format!("table-n{n}-r{r}.{ext}"));
            if bless {
                std::fs::write(&path, &body).unwrap();
            }
            let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(body, expected, "{}", path.display());
        }
    }
}

use std::path::PathBuf;

use knotcert::corpus::starter_table;

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/starter.knots")
}

/// Set `KNOTCERT_WRITE_CORPUS=1` to regenerate the file.
#[test]
fn starter_table_matches_generator() {
    let expected = starter_table();
    if std::env::var_os("KNOTCERT_WRITE_CORPUS").is_some() {
        std::fs::write(corpus_path(), &expected).unwrap();
    }
    let on_disk = std::fs::read_to_string(corpus_path()).unwrap();
    assert_eq!(on_disk, expected);
}

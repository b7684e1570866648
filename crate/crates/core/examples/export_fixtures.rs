//! Writes the fixture groups to `fixtures/<name>.json`.
//!
//! Usage: `cargo run -p classgraph --example export_fixtures [-- <dir>]`

use std::path::PathBuf;

use classgraph::constructions::catalog::{construct_fixture, FIXTURE_NAMES};

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    for name in FIXTURE_NAMES {
        let g = construct_fixture(name).expect("fixture construction");
        let file = g.to_file(name);
        let path = dir.join(format!("{name}.json"));
        let json = serde_json::to_string(&file).expect("serialize");
        std::fs::write(&path, json + "\n").expect("write fixture");
        println!("{} order {} degree {}", path.display(), g.order(), g.degree());
    }
}

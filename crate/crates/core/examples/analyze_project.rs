// Analyze a source tree into a model document, then load it back.
//
// `cargo run --example analyze_project [ROOT]`

use std::path::PathBuf;

use cadv::model::{emit_document, load_document, ProjectModel};
use cadv::{analyze, AnalyzeConfig};

pub fn run_example() -> anyhow::Result<ProjectModel> {
    run_on(PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))
}

pub fn run_on(root: PathBuf) -> anyhow::Result<ProjectModel> {
    let model = analyze(&AnalyzeConfig::new(&root))?;
    print!("{}", cadv::app::summary(&model));

    let document = emit_document(&model);
    let reloaded = load_document(&document)?;
    assert_eq!(reloaded, model);
    println!("\nmodel document: {} bytes, round-trips", document.len());
    Ok(model)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    match std::env::args().nth(1) {
        Some(root) => run_on(PathBuf::from(root)).map(drop),
        None => run_example().map(drop),
    }
}

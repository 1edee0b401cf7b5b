// Resolve annotation names to schemas through the file's imports.
//
// `cargo run --example resolve_schemas`

use cadv::parser::read_source_file;
use cadv::schema::{resolve_file, ResolutionMethod};

pub fn run_example() -> anyhow::Result<Vec<(String, String, ResolutionMethod)>> {
    let mut rows = Vec::new();
    for name in ["a/tests/TestClass.java", "a/model/Example.java"] {
        let path = format!("{}/fixtures/sample/{name}", env!("CARGO_MANIFEST_DIR"));
        let file = read_source_file(&path)?;
        println!("{name}");
        for (annotation, resolution) in resolve_file(&file) {
            println!(
                "  @{:<22} -> {:<18} ({:?})",
                annotation.simple_name, resolution.schema_id, resolution.method
            );
            rows.push((annotation.simple_name.clone(), resolution.schema_id, resolution.method));
        }
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

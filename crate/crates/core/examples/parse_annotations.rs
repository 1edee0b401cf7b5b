// Parse one Java file and list every annotation with its argument count and
// line span.
//
// `cargo run --example parse_annotations [FILE]`

use std::path::PathBuf;

use cadv::metrics::{compute_aa, compute_locad};
use cadv::parser::{read_source_file, SourceFile};

pub fn run_example() -> anyhow::Result<SourceFile> {
    run_on(PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample/a/model/Example.java")))
}

pub fn run_on(path: PathBuf) -> anyhow::Result<SourceFile> {
    let file = read_source_file(&path)?;
    println!("package {} ({} lines, {} imports)", file.package_name, file.line_count, file.imports.len());
    for ty in &file.types {
        println!("{:?} {} [{}-{}]", ty.kind, ty.qualified_name, ty.start_line, ty.end_line);
        for element in &ty.elements {
            for root in &element.annotations {
                for a in root.walk() {
                    println!(
                        "  {:indent$}@{:<22} on {} {:<16} AA={} LOCAD={}",
                        "",
                        a.simple_name,
                        element.kind.as_str(),
                        element.name,
                        compute_aa(a),
                        compute_locad(a),
                        indent = 2 * a.nesting_depth as usize
                    );
                }
            }
        }
    }
    Ok(file)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    match std::env::args().nth(1) {
        Some(path) => run_on(PathBuf::from(path)).map(drop),
        None => run_example().map(drop),
    }
}

// System view: packages as dashed circles with one bubble per schema,
// sized by occurrence count.
//
// `cargo run --example system_view`

use std::collections::BTreeSet;

use cadv::layout::{layout_system_view, LayoutTree};
use cadv::{analyze, AnalyzeConfig};

pub fn print_tree(tree: &LayoutTree) {
    println!("view={:?} focus={:?} metric={}", tree.view, tree.focus, tree.metric);
    for c in &tree.circles {
        println!(
            "  {:<13} {:<48} r={:7.3} at ({:8.3}, {:8.3}) {}",
            format!("{:?}", c.kind),
            c.id,
            c.r,
            c.cx,
            c.cy,
            c.color.as_deref().unwrap_or("")
        );
    }
}

pub fn run_example() -> anyhow::Result<LayoutTree> {
    let model = analyze(&AnalyzeConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))?;
    let tree = layout_system_view(&model, "", &BTreeSet::new())?;
    print_tree(&tree);
    Ok(tree)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

// Package view of `a.model` with the `javax.ejb` schema hidden; each class
// is a white circle holding one circle per annotation, area ∝ LOCAD.
//
// `cargo run --example package_view`

use std::collections::BTreeSet;

use cadv::layout::{layout_package_view, LayoutTree};
use cadv::{analyze, AnalyzeConfig};

pub fn run_example() -> anyhow::Result<LayoutTree> {
    let model = analyze(&AnalyzeConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))?;
    let hidden = BTreeSet::from(["javax.ejb".to_owned()]);
    let tree = layout_package_view(&model, "a.model", &hidden)?;
    println!("view={:?} focus={} metric={}", tree.view, tree.focus, tree.metric);
    for c in &tree.circles {
        let label = &c.label;
        println!(
            "  {:<11} r={:6.3} {} {} {}",
            format!("{:?}", c.kind),
            c.r,
            label.class.as_deref().unwrap_or("-"),
            label.annotation.as_deref().map(|a| format!("@{a}")).unwrap_or_default(),
            label.value.map(|v| format!("LOCAD={v}")).unwrap_or_default()
        );
    }
    Ok(tree)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

// Class view of `a.model.Example`: annotations on the class itself sit on
// the white circle, annotated members get a gray circle, area ∝ AA + 1.
//
// `cargo run --example class_view`

use std::collections::BTreeSet;

use cadv::layout::{layout_class_view, CircleKind, LayoutTree};
use cadv::{analyze, AnalyzeConfig};

pub fn run_example() -> anyhow::Result<LayoutTree> {
    let model = analyze(&AnalyzeConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))?;
    let tree = layout_class_view(&model, "a.model.Example", &BTreeSet::new())?;
    println!("view={:?} focus={} metric={}", tree.view, tree.focus, tree.metric);
    for c in &tree.circles {
        let depth = std::iter::successors(c.parent.as_deref(), |p| {
            tree.circles.iter().find(|x| x.id == *p).and_then(|x| x.parent.as_deref())
        })
        .count();
        let what = match c.kind {
            CircleKind::Annotation => format!(
                "@{} AA={} on {}",
                c.label.annotation.as_deref().unwrap_or(""),
                c.label.value.unwrap_or(0),
                c.label.element.as_deref().unwrap_or("")
            ),
            _ => format!("{:?} {}", c.kind, c.label.element.as_deref().or(c.label.class.as_deref()).unwrap_or("")),
        };
        println!("{:indent$}{what}  r={:.3}", "", c.r, indent = 2 * depth);
    }
    Ok(tree)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

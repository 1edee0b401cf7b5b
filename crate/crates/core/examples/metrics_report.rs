// Per-class and per-element annotation metrics for the sample project.
//
// `cargo run --example metrics_report`

use cadv::metrics::{element_metrics, ClassMetrics};
use cadv::model::build_model;
use cadv::parser::scan_project;

pub fn run_example() -> anyhow::Result<Vec<(String, ClassMetrics)>> {
    let report = scan_project(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample"), &[])?;
    let model = build_model(&report.files);
    let mut rows = Vec::new();
    for class in model.root.all_classes() {
        println!("{}  AC={} ASC={}", class.qualified_name, class.metrics.ac, class.metrics.asc);
        for m in element_metrics(class) {
            let element = &class.elements[m.element];
            println!("    {:<12} {:<16} AED={}", element.kind.as_str(), element.name, m.aed);
        }
        for a in &class.annotations {
            println!(
                "    {:indent$}@{:<22} AA={} LOCAD={} schema={}",
                "",
                a.name,
                a.aa,
                a.locad,
                a.schema,
                indent = 2 * a.depth as usize
            );
        }
        rows.push((class.qualified_name.clone(), class.metrics));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

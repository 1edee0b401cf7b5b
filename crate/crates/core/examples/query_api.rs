// Answer API requests in-process, without opening a socket.
//
// `cargo run --example query_api`

use cadv::server::{Explorer, Response};
use cadv::{analyze, AnalyzeConfig};

pub fn run_example() -> anyhow::Result<Vec<(String, Response)>> {
    let model = analyze(&AnalyzeConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))?;
    let explorer = Explorer::new(model);
    let requests = [
        ("/api/project", None),
        ("/api/layout", Some("view=system")),
        ("/api/layout", Some("view=package&focus=a.model&hide=javax.ejb")),
        ("/api/layout", Some("view=class&focus=a.model.Example")),
        ("/api/source-ref", Some("class=a.tests.TestClass")),
        ("/api/layout", Some("view=class&focus=a.model.Missing")),
        ("/api/layout", Some("view=upside-down")),
    ];
    let mut out = Vec::new();
    for (path, query) in requests {
        let response = explorer.handle(path, query);
        let shown = format!("{path}{}", query.map(|q| format!("?{q}")).unwrap_or_default());
        let text = response.text();
        let preview: String = text.chars().take(100).collect();
        println!("{} {shown}\n    {preview}{}", response.status, if text.len() > 100 { "..." } else { "" });
        out.push((shown, response));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}

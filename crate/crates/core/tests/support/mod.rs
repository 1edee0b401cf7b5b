//! Shared test helpers: a random Java source generator with known answers,
//! an independent token-scanner oracle and geometry oracles.
#![allow(dead_code)]

pub mod geometry;
pub mod javagen;
pub mod oracle;

use std::path::PathBuf;

pub fn fixture_root() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample"))
}

use cadv::model::ProjectModel;
use oracle::{OAnn, OClass, OElement, OFile};

/// The library's view of a model in the oracle's shape.
pub fn library_facts(model: &ProjectModel) -> OFile {
    let mut file = OFile::default();
    for class in model.root.all_classes() {
        let elements = class
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| OElement {
                kind: e.kind.as_str(),
                name: e.name.clone(),
                anns: class
                    .annotations
                    .iter()
                    .filter(|a| a.element == i)
                    .map(|a| OAnn {
                        name: a.name.clone(),
                        schema: a.schema.clone(),
                        aa: a.aa,
                        locad: a.locad,
                        depth: a.depth,
                    })
                    .collect(),
            })
            .filter(|e| !e.anns.is_empty())
            .collect();
        file.classes.insert(
            class.qualified_name.clone(),
            OClass {
                qualified: class.qualified_name.clone(),
                elements,
            },
        );
    }
    file
}

/// Parses and models generated files as one project.
pub fn model_of(files: &[javagen::Generated]) -> ProjectModel {
    let parsed: Vec<_> = files
        .iter()
        .map(|g| cadv::parse_file(&g.source, &g.path).unwrap_or_else(|e| panic!("{e}\n{}", g.source)))
        .collect();
    cadv::build_model(&parsed)
}

pub fn node_count(model: &ProjectModel) -> usize {
    model
        .root
        .walk()
        .iter()
        .map(|p| 1 + p.classes.iter().map(|c| 1 + c.elements.len() + c.annotations.len()).sum::<usize>())
        .sum()
}

/// A project of generated files with at most `max_nodes` model nodes
/// (packages, classes, elements and annotations).
pub fn random_project(seed: u64, max_nodes: usize) -> ProjectModel {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let wanted = rng.random_range(1..=6);
    let mut files = Vec::new();
    let mut model = model_of(&files);
    for k in 0..wanted {
        files.push(javagen::generate(seed * 16 + k));
        let candidate = model_of(&files);
        if node_count(&candidate) > max_nodes {
            files.pop();
            if files.is_empty() {
                continue;
            }
            break;
        }
        model = candidate;
    }
    model
}

/// Every layout a user can reach: the system view at each package, the
/// package view of each package and the class view of each class.
pub fn all_layouts(
    model: &ProjectModel,
    hidden: &std::collections::BTreeSet<String>,
) -> Vec<cadv::layout::LayoutTree> {
    use cadv::layout::{layout_view, View};
    let mut out = Vec::new();
    for pkg in model.root.walk() {
        out.push(layout_view(model, View::System, &pkg.qualified_name, hidden).unwrap());
        out.push(layout_view(model, View::Package, &pkg.qualified_name, hidden).unwrap());
    }
    for class in model.root.all_classes() {
        out.push(layout_view(model, View::Class, &class.qualified_name, hidden).unwrap());
    }
    out
}

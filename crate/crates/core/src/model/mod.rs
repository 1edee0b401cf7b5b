//! Project model: packages → classes → elements → annotations, with schema
//! counts aggregated at every package.

mod document;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use document::{emit_document, load_document, DocumentError, MODEL_VERSION};

use crate::metrics::{compute_class_metrics, measure_type, AnnotationUse, ClassMetrics};
use crate::palette::{assign_colors, ColorConfig, PaletteError};
use crate::parser::scan::slash_path;
use crate::parser::{ElementKind, SkippedFile, SourceFile, TypeKind};
use crate::schema::{schemas_from_counts, Schema};

pub type SchemaCounts = BTreeMap<String, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CodeElement {
    pub kind: ElementKind,
    pub name: String,
    pub line: u32,
    pub aed: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ClassModel {
    pub name: String,
    pub qualified_name: String,
    pub kind: TypeKind,
    /// Source file, `/`-separated and relative to the scanned root.
    pub path: String,
    pub start_line: u32,
    pub end_line: u32,
    pub metrics: ClassMetrics,
    /// Source order; the first one is the type declaration itself.
    pub elements: Vec<CodeElement>,
    /// Every occurrence at every depth, in pre-order.
    pub annotations: Vec<AnnotationUse>,
}

impl ClassModel {
    /// Package part of the qualified name.
    pub fn package(&self) -> &str {
        self.qualified_name
            .strip_suffix(self.name.as_str())
            .map(|p| p.strip_suffix('.').unwrap_or(p))
            .unwrap_or("")
    }

    pub fn schema_counts(&self) -> SchemaCounts {
        let mut counts = SchemaCounts::new();
        for a in &self.annotations {
            *counts.entry(a.schema.clone()).or_default() += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PackageNode {
    /// Last segment; empty for the synthetic root.
    pub name: String,
    pub qualified_name: String,
    /// Occurrences in this package's own classes.
    pub schema_counts: SchemaCounts,
    /// Occurrences in this package and everything below it.
    pub recursive_counts: SchemaCounts,
    pub packages: Vec<PackageNode>,
    pub classes: Vec<ClassModel>,
}

impl PackageNode {
    pub fn find_package(&self, qualified_name: &str) -> Option<&PackageNode> {
        if self.qualified_name == qualified_name {
            return Some(self);
        }
        let prefix_ok = self.qualified_name.is_empty()
            || qualified_name
                .strip_prefix(&self.qualified_name)
                .is_some_and(|rest| rest.starts_with('.'));
        if !prefix_ok {
            return None;
        }
        self.packages.iter().find_map(|p| p.find_package(qualified_name))
    }

    /// Depth-first walk over this node and all descendants.
    pub fn walk(&self) -> Vec<&PackageNode> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.splice(i + 1..i + 1, node.packages.iter());
            i += 1;
        }
        out
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &ClassModel> {
        self.walk().into_iter().flat_map(|p| p.classes.iter())
    }

    pub fn find_class(&self, qualified_name: &str) -> Option<&ClassModel> {
        self.all_classes().find(|c| c.qualified_name == qualified_name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SourceMeta {
    /// Scanned root as given on the command line.
    pub root: String,
    /// Unix seconds of the newest scanned source file.
    pub scan_timestamp: Option<u64>,
    pub files: usize,
    pub skipped: usize,
    pub classes: usize,
    pub skipped_files: Vec<SkippedFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaEntry {
    pub id: String,
    pub count: u64,
    /// `#RRGGBB`.
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProjectModel {
    pub meta: SourceMeta,
    /// Descending count, then id.
    pub schemas: Vec<SchemaEntry>,
    pub root: PackageNode,
}

impl ProjectModel {
    pub fn schema_list(&self) -> Vec<Schema> {
        self.schemas
            .iter()
            .map(|s| Schema {
                id: s.id.clone(),
                display_name: s.id.clone(),
                total_count: s.count,
            })
            .collect()
    }

    pub fn color_of(&self, schema_id: &str) -> Option<&str> {
        self.schemas.iter().find(|s| s.id == schema_id).map(|s| s.color.as_str())
    }

    /// Re-runs color assignment with user overrides.
    pub fn recolor(&mut self, overrides: Option<&ColorConfig>) -> Result<(), PaletteError> {
        let colors = assign_colors(&self.schema_list(), overrides)?;
        for entry in &mut self.schemas {
            entry.color = colors.hex(&entry.id).unwrap_or_default();
        }
        Ok(())
    }

    pub fn total_annotations(&self) -> u64 {
        self.schemas.iter().map(|s| s.count).sum()
    }
}

#[derive(Default)]
struct PackageBuilder {
    children: BTreeMap<String, PackageBuilder>,
    classes: BTreeMap<String, ClassModel>,
}

impl PackageBuilder {
    fn finish(self, name: String, qualified_name: String) -> PackageNode {
        let packages: Vec<PackageNode> = self
            .children
            .into_iter()
            .map(|(child, builder)| {
                let qualified = if qualified_name.is_empty() {
                    child.clone()
                } else {
                    format!("{qualified_name}.{child}")
                };
                builder.finish(child, qualified)
            })
            .collect();
        let classes: Vec<ClassModel> = self.classes.into_values().collect();
        let mut schema_counts = SchemaCounts::new();
        for class in &classes {
            for (schema, n) in class.schema_counts() {
                *schema_counts.entry(schema).or_default() += n;
            }
        }
        let mut recursive_counts = schema_counts.clone();
        for child in &packages {
            for (schema, n) in &child.recursive_counts {
                *recursive_counts.entry(schema.clone()).or_default() += n;
            }
        }
        PackageNode {
            name,
            qualified_name,
            schema_counts,
            recursive_counts,
            packages,
            classes,
        }
    }
}

/// Builds the package tree from parsed files. A type whose qualified name was
/// already seen in an earlier file is left out and listed in
/// `meta.skipped_files`.
pub fn build_model(files: &[SourceFile]) -> ProjectModel {
    let mut root = PackageBuilder::default();
    let mut first_seen: HashMap<String, String> = HashMap::new();
    let mut duplicates = Vec::new();

    for file in files {
        let path = slash_path(&file.path);
        for raw in &file.types {
            let qualified_name = if file.package_name.is_empty() {
                raw.qualified_name.clone()
            } else {
                format!("{}.{}", file.package_name, raw.qualified_name)
            };
            if let Some(first) = first_seen.get(&qualified_name) {
                duplicates.push(SkippedFile {
                    path: file.path.clone(),
                    reason: format!("duplicate type {qualified_name}, first declared in {first}"),
                });
                continue;
            }
            first_seen.insert(qualified_name.clone(), path.clone());

            let (elements, annotations) = measure_type(raw, file);
            let mut class = ClassModel {
                name: raw.qualified_name.clone(),
                qualified_name: qualified_name.clone(),
                kind: raw.kind,
                path: path.clone(),
                start_line: raw.start_line,
                end_line: raw.end_line,
                metrics: ClassMetrics::default(),
                elements,
                annotations,
            };
            class.metrics = compute_class_metrics(&class);

            let mut node = &mut root;
            if !file.package_name.is_empty() {
                for segment in file.package_name.split('.') {
                    node = node.children.entry(segment.to_owned()).or_default();
                }
            }
            node.classes.insert(qualified_name, class);
        }
    }

    let root = root.finish(String::new(), String::new());
    let classes = root.all_classes().count();
    let mut model = ProjectModel {
        meta: SourceMeta {
            files: files.len(),
            classes,
            skipped: duplicates.len(),
            skipped_files: duplicates,
            ..SourceMeta::default()
        },
        schemas: schemas_from_counts(root.recursive_counts.clone())
            .into_iter()
            .map(|s| SchemaEntry {
                id: s.id,
                count: s.total_count,
                color: String::new(),
            })
            .collect(),
        root,
    };
    model
        .recolor(None)
        .expect("default palette has no overrides to reject");
    model
}

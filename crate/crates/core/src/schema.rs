//! Annotation schema resolution.
//!
//! A schema is the package that declares an annotation type. Sources are never
//! compiled, so the package is recovered from the file's imports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::parser::{RawAnnotation, SourceFile, TypeKind};

/// Schema id used when the import heuristic cannot pick a package.
pub const UNRESOLVED: &str = "unresolved";

/// Schema id for annotations declared in a file without a package clause.
pub const DEFAULT_PACKAGE: &str = "(default)";

/// Annotation types implicitly visible from `java.lang`.
pub const JAVA_LANG_ANNOTATIONS: &[&str] = &[
    "Override",
    "Deprecated",
    "SuppressWarnings",
    "SafeVarargs",
    "FunctionalInterface",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schema {
    pub id: String,
    pub display_name: String,
    pub total_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionMethod {
    ExplicitImport,
    WildcardImport,
    FullyQualified,
    JavaLangDefault,
    SamePackage,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub schema_id: String,
    pub method: ResolutionMethod,
}

impl Resolution {
    fn new(schema_id: impl Into<String>, method: ResolutionMethod) -> Self {
        Self {
            schema_id: schema_id.into(),
            method,
        }
    }

    fn unresolved() -> Self {
        Self::new(UNRESOLVED, ResolutionMethod::Unresolved)
    }
}

/// Package part of a dotted type path: every segment before the first one
/// that starts with an upper-case letter, or all but the last segment when
/// the path is entirely lower-case.
fn package_of(path: &str) -> String {
    let segments: Vec<&str> = path.split('.').collect();
    let type_start = segments
        .iter()
        .position(|s| s.chars().next().is_some_and(char::is_uppercase))
        .unwrap_or(segments.len().saturating_sub(1));
    segments[..type_start].join(".")
}

fn starts_lowercase(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_lowercase)
}

/// Maps an annotation occurrence to its schema. Pure function of the
/// annotation and the file that contains it.
pub fn resolve(annotation: &RawAnnotation, file: &SourceFile) -> Resolution {
    let written = annotation.simple_name.as_str();
    let mut lookup = written;
    if let Some((first, _)) = written.split_once('.') {
        if starts_lowercase(first) {
            let package = package_of(written);
            if !package.is_empty() {
                return Resolution::new(package, ResolutionMethod::FullyQualified);
            }
        }
        // `Outer.Inner`: the outer type name is what the imports mention
        lookup = first;
    }

    if let Some(import) = file
        .imports
        .iter()
        .find(|i| !i.is_static && !i.is_wildcard && i.simple_name() == lookup)
    {
        return Resolution::new(package_of(&import.path), ResolutionMethod::ExplicitImport);
    }

    if lookup == written && JAVA_LANG_ANNOTATIONS.contains(&written) {
        return Resolution::new("java.lang", ResolutionMethod::JavaLangDefault);
    }

    let mut wildcards = file.imports.iter().filter(|i| i.is_wildcard && !i.is_static);
    match (wildcards.next(), wildcards.next()) {
        (Some(only), None) => {
            Resolution::new(package_of(&format!("{}.X", only.path)), ResolutionMethod::WildcardImport)
        }
        (Some(_), Some(_)) => Resolution::unresolved(),
        (None, _) => {
            let declared_here = file.types.iter().any(|t| t.kind == TypeKind::Annotation && t.name == lookup);
            if declared_here {
                let package = if file.package_name.is_empty() {
                    DEFAULT_PACKAGE.to_owned()
                } else {
                    file.package_name.clone()
                };
                Resolution::new(package, ResolutionMethod::SamePackage)
            } else {
                Resolution::unresolved()
            }
        }
    }
}

/// Every annotation occurrence in the file (all depths) with its resolution.
pub fn resolve_file(file: &SourceFile) -> Vec<(&RawAnnotation, Resolution)> {
    file.types
        .iter()
        .flat_map(|t| &t.elements)
        .flat_map(|e| &e.annotations)
        .flat_map(RawAnnotation::walk)
        .map(|a| (a, resolve(a, file)))
        .collect()
}

/// One schema per distinct resolved id, sorted by descending count then id.
pub fn collect_schemas(files: &[SourceFile]) -> Vec<Schema> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for file in files {
        for (_, resolution) in resolve_file(file) {
            *counts.entry(resolution.schema_id).or_default() += 1;
        }
    }
    schemas_from_counts(counts)
}

pub(crate) fn schemas_from_counts(counts: BTreeMap<String, u64>) -> Vec<Schema> {
    let mut schemas: Vec<Schema> = counts
        .into_iter()
        .filter(|(_, n)| *n > 0)
        .map(|(id, total_count)| Schema {
            display_name: id.clone(),
            id,
            total_count,
        })
        .collect();
    schemas.sort_by(|a, b| b.total_count.cmp(&a.total_count).then_with(|| a.id.cmp(&b.id)));
    schemas
}

/// Two schemas are related when their first two package segments agree.
pub fn family_key(schema_id: &str) -> &str {
    match schema_id.match_indices('.').nth(1) {
        Some((idx, _)) => &schema_id[..idx],
        None => schema_id,
    }
}

pub fn same_family(a: &str, b: &str) -> bool {
    family_key(a) == family_key(b)
}

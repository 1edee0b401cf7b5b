//! `cadv-model/1` JSON document.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::{PackageNode, ProjectModel, SchemaCounts, SchemaEntry, SourceMeta};

pub const MODEL_VERSION: &str = "cadv-model/1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("model document version `{found}` is not {MODEL_VERSION}")]
    VersionMismatch { found: String },
    #[error("malformed model document at `{path}`: {message}")]
    MalformedDocument { path: String, message: String },
}

impl DocumentError {
    fn malformed(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocumentError::MalformedDocument {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    version: String,
    meta: SourceMeta,
    schemas: Vec<SchemaEntry>,
    root: PackageNode,
}

/// Serializes the model. Keys come out in declaration order, maps sorted,
/// so equal models give byte-identical documents.
pub fn emit_document(model: &ProjectModel) -> String {
    let doc = ModelDocument {
        version: MODEL_VERSION.to_owned(),
        meta: model.meta.clone(),
        schemas: model.schemas.clone(),
        root: model.root.clone(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("model serializes");
    text.push('\n');
    text
}

pub fn load_document(text: &str) -> Result<ProjectModel, DocumentError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| DocumentError::malformed("", e.to_string()))?;
    match value.get("version") {
        Some(Value::String(v)) if v == MODEL_VERSION => {}
        Some(Value::String(v)) => {
            return Err(DocumentError::VersionMismatch { found: v.clone() });
        }
        Some(_) => return Err(DocumentError::malformed("version", "expected a string")),
        None => return Err(DocumentError::malformed("version", "missing field")),
    }
    let doc: ModelDocument = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        DocumentError::malformed(path, e.into_inner().to_string())
    })?;
    validate_package(&doc.root, "root")?;
    Ok(ProjectModel {
        meta: doc.meta,
        schemas: doc.schemas,
        root: doc.root,
    })
}

/// Checks the invariants the layouts rely on; reports the first offending path.
fn validate_package(node: &PackageNode, path: &str) -> Result<(), DocumentError> {
    let mut own = SchemaCounts::new();
    for (i, class) in node.classes.iter().enumerate() {
        let class_path = format!("{path}.classes[{i}]");
        if class.metrics.ac as usize != class.annotations.len() {
            return Err(DocumentError::malformed(
                format!("{class_path}.metrics.ac"),
                "does not match the number of annotations",
            ));
        }
        for (j, a) in class.annotations.iter().enumerate() {
            if a.element >= class.elements.len() {
                return Err(DocumentError::malformed(
                    format!("{class_path}.annotations[{j}].element"),
                    "element index out of range",
                ));
            }
            if a.parent.is_some_and(|p| p >= j) {
                return Err(DocumentError::malformed(
                    format!("{class_path}.annotations[{j}].parent"),
                    "parent must precede its child",
                ));
            }
        }
        for (schema, n) in class.schema_counts() {
            *own.entry(schema).or_default() += n;
        }
    }
    if own != node.schema_counts {
        return Err(DocumentError::malformed(
            format!("{path}.schemaCounts"),
            "does not match the package's classes",
        ));
    }
    let mut recursive = own;
    for (i, child) in node.packages.iter().enumerate() {
        let child_path = format!("{path}.packages[{i}]");
        let expected = if node.qualified_name.is_empty() {
            child.name.clone()
        } else {
            format!("{}.{}", node.qualified_name, child.name)
        };
        if child.qualified_name != expected {
            return Err(DocumentError::malformed(
                format!("{child_path}.qualifiedName"),
                format!("expected `{expected}`"),
            ));
        }
        validate_package(child, &child_path)?;
        for (schema, n) in &child.recursive_counts {
            *recursive.entry(schema.clone()).or_default() += n;
        }
    }
    if recursive != node.recursive_counts {
        return Err(DocumentError::malformed(
            format!("{path}.recursiveCounts"),
            "does not match the package subtree",
        ));
    }
    Ok(())
}

//! Island parser for Java sources.
//!
//! Only the parts needed for annotation metrics are recognised: the package
//! header, imports, type declaration skeletons, member signatures and the
//! annotations written at declaration sites. Member bodies are brace-matched
//! and skipped.

mod island;
mod lexer;
pub(crate) mod scan;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use scan::{scan_project, ScanReport, SkippedFile};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    UnreadableFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("gave up parsing {path} at line {line}: {reason}")]
    ParseGaveUp {
        path: PathBuf,
        line: u32,
        reason: String,
    },
    #[error("source root not found: {0}")]
    RootNotFound(PathBuf),
    #[error("invalid exclude pattern `{pattern}`: {message}")]
    BadExclude { pattern: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFile {
    pub path: PathBuf,
    /// Dotted package name, empty for the default package.
    pub package_name: String,
    pub imports: Vec<ImportDecl>,
    /// Every type declared in the file, nested types flattened after their
    /// enclosing type.
    pub types: Vec<RawType>,
    pub line_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportDecl {
    pub path: String,
    pub is_wildcard: bool,
    pub is_static: bool,
}

impl ImportDecl {
    /// Last path segment; the imported simple name for single-type imports.
    pub fn simple_name(&self) -> &str {
        self.path.rsplit('.').next().unwrap_or(&self.path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawType {
    pub kind: TypeKind,
    pub name: String,
    /// Name relative to the package, `Outer.Inner` for nested types.
    pub qualified_name: String,
    pub start_line: u32,
    pub end_line: u32,
    /// The first element is always the type declaration itself.
    pub elements: Vec<RawElement>,
}

impl RawType {
    pub fn annotation_count(&self) -> usize {
        self.elements.iter().map(RawElement::annotation_count).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Type,
    Method,
    Field,
    Constructor,
    Parameter,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Type => "type",
            ElementKind::Method => "method",
            ElementKind::Field => "field",
            ElementKind::Constructor => "constructor",
            ElementKind::Parameter => "parameter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawElement {
    pub kind: ElementKind,
    pub name: String,
    pub line: u32,
    /// Depth-0 annotations; nested ones hang off their parents.
    pub annotations: Vec<RawAnnotation>,
}

impl RawElement {
    /// Occurrences on this element at every nesting depth.
    pub fn annotation_count(&self) -> usize {
        self.annotations.iter().map(RawAnnotation::occurrences).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAnnotation {
    /// Name as written, possibly qualified (`javax.persistence.Entity`).
    pub simple_name: String,
    pub argument_count: u32,
    pub start_line: u32,
    pub end_line: u32,
    pub nesting_depth: u32,
    pub children: Vec<RawAnnotation>,
}

impl RawAnnotation {
    /// This annotation plus all nested descendants.
    pub fn occurrences(&self) -> usize {
        1 + self.children.iter().map(RawAnnotation::occurrences).sum::<usize>()
    }

    /// Pre-order walk over this annotation and its descendants.
    pub fn walk(&self) -> Vec<&RawAnnotation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(a) = stack.pop() {
            out.push(a);
            stack.extend(a.children.iter().rev());
        }
        out
    }

    /// Last segment of the written name.
    pub fn base_name(&self) -> &str {
        self.simple_name.rsplit('.').next().unwrap_or(&self.simple_name)
    }
}

/// Parses one Java compilation unit.
pub fn parse_file(source_text: &str, path: impl AsRef<Path>) -> Result<SourceFile, ParseError> {
    let path = path.as_ref();
    island::parse(source_text, path)
}

/// Like [`parse_file`], replacing invalid UTF-8 sequences before parsing.
pub fn parse_bytes(bytes: &[u8], path: impl AsRef<Path>) -> Result<SourceFile, ParseError> {
    parse_file(&String::from_utf8_lossy(bytes), path)
}

/// Reads and parses a file from disk.
pub fn read_source_file(path: impl AsRef<Path>) -> Result<SourceFile, ParseError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| ParseError::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    parse_bytes(&bytes, path)
}

//! Annotation metrics: AC, ASC, AA, AED and LOCAD.
//!
//! Nested annotations are real occurrences. They are owned by the element
//! carrying their depth-0 ancestor, which keeps `AC == Σ AED` for every class.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{ClassModel, CodeElement};
use crate::parser::{RawAnnotation, RawElement, RawType, SourceFile};
use crate::schema::{resolve, ResolutionMethod};

/// One annotation occurrence inside a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AnnotationUse {
    /// Name as written in the source.
    pub name: String,
    pub schema: String,
    pub method: ResolutionMethod,
    /// Arguments in Annotation.
    pub aa: u32,
    /// Lines of code in the annotation declaration.
    pub locad: u32,
    pub depth: u32,
    pub line: u32,
    pub end_line: u32,
    /// Index of the owning element in [`ClassModel::elements`].
    pub element: usize,
    /// Index of the enclosing annotation in [`ClassModel::annotations`].
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassMetrics {
    pub ac: u32,
    pub asc: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementMetrics {
    pub element: usize,
    pub aed: u32,
}

pub fn compute_aa(annotation: &RawAnnotation) -> u32 {
    annotation.argument_count
}

pub fn compute_locad(annotation: &RawAnnotation) -> u32 {
    annotation.end_line - annotation.start_line + 1
}

pub fn compute_aed(element: &RawElement) -> u32 {
    element.annotation_count() as u32
}

pub fn compute_class_metrics(class: &ClassModel) -> ClassMetrics {
    let schemas: BTreeSet<&str> = class.annotations.iter().map(|a| a.schema.as_str()).collect();
    ClassMetrics {
        ac: class.annotations.len() as u32,
        asc: schemas.len() as u32,
    }
}

pub fn element_metrics(class: &ClassModel) -> Vec<ElementMetrics> {
    let mut aed = vec![0u32; class.elements.len()];
    for a in &class.annotations {
        aed[a.element] += 1;
    }
    aed.into_iter()
        .enumerate()
        .map(|(element, aed)| ElementMetrics { element, aed })
        .collect()
}

/// Resolves and measures every annotation of `raw`, producing its elements
/// and the flat pre-order annotation list.
pub(crate) fn measure_type(raw: &RawType, file: &SourceFile) -> (Vec<CodeElement>, Vec<AnnotationUse>) {
    let mut elements = Vec::with_capacity(raw.elements.len());
    let mut uses = Vec::new();
    for (index, element) in raw.elements.iter().enumerate() {
        elements.push(CodeElement {
            kind: element.kind,
            name: element.name.clone(),
            line: element.line,
            aed: compute_aed(element),
        });
        for top in &element.annotations {
            push_uses(top, None, index, file, &mut uses);
        }
    }
    (elements, uses)
}

fn push_uses(
    annotation: &RawAnnotation,
    parent: Option<usize>,
    element: usize,
    file: &SourceFile,
    out: &mut Vec<AnnotationUse>,
) {
    let resolution = resolve(annotation, file);
    let index = out.len();
    out.push(AnnotationUse {
        name: annotation.simple_name.clone(),
        schema: resolution.schema_id,
        method: resolution.method,
        aa: compute_aa(annotation),
        locad: compute_locad(annotation),
        depth: annotation.nesting_depth,
        line: annotation.start_line,
        end_line: annotation.end_line,
        element,
        parent,
    });
    for child in &annotation.children {
        push_uses(child, Some(index), element, file, out);
    }
}

//! Circle-packing geometry for the system, package and class views.
//!
//! Leaf areas are proportional to their metric (radius = √metric, in abstract
//! units shared by every leaf of a view). Containers are sized by packing
//! their children and never rescaled, so leaves stay comparable across the
//! whole view.

mod enclose;
mod pack;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enclose::{enclose, Circle};
pub use pack::{pack_siblings, Packed};

use crate::model::{ClassModel, PackageNode, ProjectModel, SchemaCounts};
use crate::parser::ElementKind;

pub const LAYOUT_VERSION: &str = "cadv-layout/1";

/// Padding added to every sibling radius, as a fraction of the largest
/// sibling; the gap between two siblings is twice this.
pub const SIBLING_PADDING: f64 = 0.04;
/// Extra inner margin of package circles.
pub const PACKAGE_MARGIN: f64 = 0.04;
/// Radius of an annotation-free class relative to a class holding a single
/// LOCAD-1 annotation.
pub const EMPTY_CLASS_FACTOR: f64 = 0.35;

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("nothing to pack")]
    EmptyInput,
    #[error("radius {0} is not a positive finite number")]
    InvalidRadius(f64),
    #[error("package `{0}` not found")]
    PackageNotFound(String),
    #[error("class `{0}` not found")]
    ClassNotFound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    System,
    Package,
    Class,
}

impl View {
    /// Metric that sizes the leaf circles of this view.
    pub fn metric(self) -> &'static str {
        match self {
            View::System => "count",
            View::Package => "LOCAD",
            View::Class => "AA",
        }
    }

    pub fn parse(text: &str) -> Option<View> {
        match text {
            "system" => Some(View::System),
            "package" => Some(View::Package),
            "class" => Some(View::Class),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleKind {
    Package,
    Class,
    SchemaBubble,
    Element,
    Annotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleStyle {
    DashedOutline,
    WhiteFill,
    GrayFill,
    SchemaColor,
}

impl CircleKind {
    pub fn style(self) -> CircleStyle {
        match self {
            CircleKind::Package => CircleStyle::DashedOutline,
            CircleKind::Class => CircleStyle::WhiteFill,
            CircleKind::Element => CircleStyle::GrayFill,
            CircleKind::SchemaBubble | CircleKind::Annotation => CircleStyle::SchemaColor,
        }
    }
}

/// Hover-label fields; which ones are present depends on view and kind.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Label {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub package: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LayoutCircle {
    pub id: String,
    /// Id of the enclosing circle; `None` only for the first circle.
    pub parent: Option<String>,
    pub kind: CircleKind,
    pub style: CircleStyle,
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub schema: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub color: Option<String>,
    pub label: Label,
}

/// A view's circles, flattened depth-first; the first circle is the focus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LayoutTree {
    pub version: String,
    pub view: View,
    pub focus: String,
    pub metric: String,
    pub circles: Vec<LayoutCircle>,
}

impl LayoutTree {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("layout serializes")
    }

    pub fn children_of(&self, index: usize) -> impl Iterator<Item = (usize, &LayoutCircle)> {
        let id = self.circles[index].id.clone();
        self.circles
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.parent.as_deref() == Some(id.as_str()))
    }
}

struct Node {
    id: String,
    kind: CircleKind,
    schema: Option<String>,
    label: Label,
    /// Fixed radius for leaves.
    leaf_radius: Option<f64>,
    /// Radius used when a container ends up with no children.
    empty_radius: f64,
    children: Vec<Node>,
    // filled by `size`
    r: f64,
    offset: (f64, f64),
}

impl Node {
    fn container(id: String, kind: CircleKind, label: Label, empty_radius: f64) -> Self {
        Node {
            id,
            kind,
            schema: None,
            label,
            leaf_radius: None,
            empty_radius,
            children: Vec::new(),
            r: 0.0,
            offset: (0.0, 0.0),
        }
    }

    fn leaf(id: String, kind: CircleKind, schema: &str, label: Label, metric: f64) -> Self {
        Node {
            id,
            kind,
            schema: Some(schema.to_owned()),
            label,
            leaf_radius: Some(metric.sqrt()),
            empty_radius: 0.0,
            children: Vec::new(),
            r: 0.0,
            offset: (0.0, 0.0),
        }
    }
}

/// Computes radii bottom-up and child offsets relative to their parent.
fn size(node: &mut Node) -> Result<f64, LayoutError> {
    if let Some(r) = node.leaf_radius {
        node.r = r;
        return Ok(r);
    }
    if node.children.is_empty() {
        node.r = node.empty_radius;
        return Ok(node.r);
    }
    for child in &mut node.children {
        size(child)?;
    }
    node.children
        .sort_by(|a, b| b.r.total_cmp(&a.r).then_with(|| a.id.cmp(&b.id)));
    let radii: Vec<f64> = node.children.iter().map(|c| c.r).collect();
    let padding = SIBLING_PADDING * radii[0];
    let packed = pack_siblings(&radii, padding)?;
    for (child, offset) in node.children.iter_mut().zip(packed.centers) {
        child.offset = offset;
    }
    let margin = if node.kind == CircleKind::Package {
        1.0 + PACKAGE_MARGIN
    } else {
        1.0
    };
    node.r = packed.radius * margin;
    Ok(node.r)
}

fn flatten(
    node: Node,
    parent: Option<&str>,
    origin: (f64, f64),
    model: &ProjectModel,
    out: &mut Vec<LayoutCircle>,
) {
    let cx = origin.0 + node.offset.0;
    let cy = origin.1 + node.offset.1;
    let color = node
        .schema
        .as_deref()
        .and_then(|s| model.color_of(s))
        .map(str::to_owned);
    out.push(LayoutCircle {
        id: node.id.clone(),
        parent: parent.map(str::to_owned),
        kind: node.kind,
        style: node.kind.style(),
        cx,
        cy,
        r: node.r,
        schema: node.schema,
        color,
        label: node.label,
    });
    for child in node.children {
        flatten(child, Some(&node.id), (cx, cy), model, out);
    }
}

fn finish(view: View, focus: &str, mut root: Node, model: &ProjectModel) -> Result<LayoutTree, LayoutError> {
    size(&mut root)?;
    let mut circles = Vec::new();
    flatten(root, None, (0.0, 0.0), model, &mut circles);
    Ok(LayoutTree {
        version: LAYOUT_VERSION.to_owned(),
        view,
        focus: focus.to_owned(),
        metric: view.metric().to_owned(),
        circles,
    })
}

/// Radius of a class circle holding one LOCAD-1 annotation.
fn unit_class_radius() -> f64 {
    1.0 + SIBLING_PADDING
}

/// Radius of annotation-free classes and empty packages.
pub fn empty_radius() -> f64 {
    EMPTY_CLASS_FACTOR * unit_class_radius()
}

fn package_display(pkg: &PackageNode) -> String {
    if pkg.qualified_name.is_empty() {
        "(root)".to_owned()
    } else {
        pkg.qualified_name.clone()
    }
}

fn package_id(pkg: &PackageNode) -> String {
    format!("package:{}", pkg.qualified_name)
}

fn package_node(pkg: &PackageNode) -> Node {
    Node::container(
        package_id(pkg),
        CircleKind::Package,
        Label {
            package: Some(package_display(pkg)),
            ..Label::default()
        },
        empty_radius(),
    )
}

fn schema_bubbles(pkg: &PackageNode, counts: &SchemaCounts, hidden: &BTreeSet<String>) -> Vec<Node> {
    counts
        .iter()
        .filter(|(schema, n)| **n > 0 && !hidden.contains(*schema))
        .map(|(schema, &n)| {
            Node::leaf(
                format!("schema:{}:{schema}", pkg.qualified_name),
                CircleKind::SchemaBubble,
                schema,
                Label {
                    schema: Some(schema.clone()),
                    package: Some(package_display(pkg)),
                    count: Some(n),
                    ..Label::default()
                },
                n as f64,
            )
        })
        .collect()
}

fn find_package<'m>(model: &'m ProjectModel, focus: &str) -> Result<&'m PackageNode, LayoutError> {
    model
        .root
        .find_package(focus)
        .ok_or_else(|| LayoutError::PackageNotFound(focus.to_owned()))
}

/// Package hierarchy with one bubble per schema present in each package's
/// own classes. `focus` selects the outermost package; empty means the root.
pub fn layout_system_view(
    model: &ProjectModel,
    focus: &str,
    hidden: &BTreeSet<String>,
) -> Result<LayoutTree, LayoutError> {
    fn build(pkg: &PackageNode, hidden: &BTreeSet<String>) -> Node {
        let mut node = package_node(pkg);
        node.children.extend(pkg.packages.iter().map(|p| build(p, hidden)));
        node.children.extend(schema_bubbles(pkg, &pkg.schema_counts, hidden));
        node
    }
    let pkg = find_package(model, focus)?;
    finish(View::System, &pkg.qualified_name, build(pkg, hidden), model)
}

/// One package: child packages collapsed to their schema bubbles, classes as
/// white circles holding one circle per annotation, area ∝ LOCAD.
pub fn layout_package_view(
    model: &ProjectModel,
    package: &str,
    hidden: &BTreeSet<String>,
) -> Result<LayoutTree, LayoutError> {
    let pkg = find_package(model, package)?;
    let mut root = package_node(pkg);
    for child in &pkg.packages {
        let mut node = package_node(child);
        node.children = schema_bubbles(child, &child.recursive_counts, hidden);
        root.children.push(node);
    }
    for class in &pkg.classes {
        let mut node = class_node(class);
        for (index, a) in class.annotations.iter().enumerate() {
            if hidden.contains(&a.schema) {
                continue;
            }
            node.children.push(Node::leaf(
                annotation_id(class, index),
                CircleKind::Annotation,
                &a.schema,
                Label {
                    package: Some(package_display(pkg)),
                    class: Some(class.name.clone()),
                    annotation: Some(a.name.clone()),
                    metric: Some("LOCAD".to_owned()),
                    value: Some(a.locad),
                    ..Label::default()
                },
                a.locad as f64,
            ));
        }
        root.children.push(node);
    }
    finish(View::Package, &pkg.qualified_name, root, model)
}

fn annotation_id(class: &ClassModel, index: usize) -> String {
    format!("annotation:{}#{index}", class.qualified_name)
}

fn class_node(class: &ClassModel) -> Node {
    Node::container(
        format!("class:{}", class.qualified_name),
        CircleKind::Class,
        Label {
            package: Some(class.package().to_owned()),
            class: Some(class.name.clone()),
            count: Some(class.metrics.ac as u64),
            ..Label::default()
        },
        empty_radius(),
    )
}

/// One class: annotations on the type itself sit on the white circle, the
/// others on a gray circle per annotated element; area ∝ AA + 1.
pub fn layout_class_view(
    model: &ProjectModel,
    class_name: &str,
    hidden: &BTreeSet<String>,
) -> Result<LayoutTree, LayoutError> {
    let class = model
        .root
        .find_class(class_name)
        .ok_or_else(|| LayoutError::ClassNotFound(class_name.to_owned()))?;
    let package = class.package().to_owned();
    let mut root = class_node(class);
    let mut element_nodes: Vec<Option<Node>> = (0..class.elements.len()).map(|_| None).collect();

    for (index, a) in class.annotations.iter().enumerate() {
        if hidden.contains(&a.schema) {
            continue;
        }
        let element = &class.elements[a.element];
        let leaf = Node::leaf(
            annotation_id(class, index),
            CircleKind::Annotation,
            &a.schema,
            Label {
                package: Some(package.clone()),
                class: Some(class.name.clone()),
                element: Some(element.name.clone()),
                element_kind: Some(element.kind.as_str().to_owned()),
                annotation: Some(a.name.clone()),
                metric: Some("AA".to_owned()),
                value: Some(a.aa),
                ..Label::default()
            },
            (a.aa + 1) as f64,
        );
        if element.kind == ElementKind::Type && a.element == 0 {
            root.children.push(leaf);
            continue;
        }
        element_nodes[a.element]
            .get_or_insert_with(|| {
                Node::container(
                    format!("element:{}#{}", class.qualified_name, a.element),
                    CircleKind::Element,
                    Label {
                        package: Some(package.clone()),
                        class: Some(class.name.clone()),
                        element: Some(element.name.clone()),
                        element_kind: Some(element.kind.as_str().to_owned()),
                        count: Some(element.aed as u64),
                        ..Label::default()
                    },
                    empty_radius(),
                )
            })
            .children
            .push(leaf);
    }
    root.children.extend(element_nodes.into_iter().flatten());
    finish(View::Class, &class.qualified_name, root, model)
}

/// Dispatches on the view; `focus` names a package for the system and
/// package views and a class for the class view.
pub fn layout_view(
    model: &ProjectModel,
    view: View,
    focus: &str,
    hidden: &BTreeSet<String>,
) -> Result<LayoutTree, LayoutError> {
    match view {
        View::System => layout_system_view(model, focus, hidden),
        View::Package => layout_package_view(model, focus, hidden),
        View::Class => layout_class_view(model, focus, hidden),
    }
}

//! Code annotation distribution visualizer.
//!
//! Parses Java sources with an island grammar, resolves each annotation to
//! its schema (the package of its type), computes the annotation metrics
//! AC, ASC, AA, AED and LOCAD, and lays the result out as nested circles in
//! three views: system, package and class.
//!
//! ```no_run
//! use cadv::{analyze, layout_system_view, AnalyzeConfig};
//!
//! let model = analyze(&AnalyzeConfig::new("src/main/java")).unwrap();
//! let tree = layout_system_view(&model, "", &Default::default()).unwrap();
//! println!("{} circles", tree.circles.len());
//! ```

pub mod app;
pub mod layout;
pub mod metrics;
pub mod model;
pub mod palette;
pub mod parser;
pub mod schema;
pub mod server;

pub use app::{analyze, cmd_analyze, AnalyzeConfig, AnalyzeError, ServeConfig, ServeError};
pub use layout::{
    layout_class_view, layout_package_view, layout_system_view, layout_view, LayoutCircle,
    LayoutError, LayoutTree, View,
};
pub use metrics::{compute_aa, compute_aed, compute_class_metrics, compute_locad, AnnotationUse};
pub use model::{build_model, emit_document, load_document, ClassModel, PackageNode, ProjectModel};
pub use palette::{assign_colors, ColorAssignment, ColorConfig, PaletteError};
pub use parser::{parse_file, scan_project, ParseError, SourceFile};
pub use schema::{collect_schemas, resolve, Schema};
pub use server::Explorer;

//! HTTP API over an immutable project model.
//!
//! [`Explorer::handle`] maps a request path and query string to a response
//! without touching the network, which keeps the API testable on its own;
//! [`http`] wires it into an axum server.

pub mod http;

use std::collections::{BTreeSet, HashMap};
use std::path::{Component, Path, PathBuf};
use std::sync::{Arc, RwLock};

use serde::Serialize;
use serde_json::json;

use crate::layout::{layout_view, LayoutError, View};
use crate::model::{load_document, DocumentError, ProjectModel, SchemaEntry, SourceMeta};

const PLACEHOLDER_INDEX: &str = include_str!("index.html");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub content_type: &'static str,
    pub body: Vec<u8>,
}

impl Response {
    fn json(status: u16, body: String) -> Self {
        Response {
            status,
            content_type: "application/json",
            body: body.into_bytes(),
        }
    }

    fn error(status: u16, message: impl Into<String>) -> Self {
        Self::json(status, json!({ "error": message.into() }).to_string())
    }

    pub fn text(&self) -> &str {
        std::str::from_utf8(&self.body).unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    view: View,
    focus: String,
    hide: Vec<String>,
}

/// A parsed and validated `/api/layout` query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutQuery {
    pub view: View,
    /// Empty means the root package.
    pub focus: String,
    pub hide: BTreeSet<String>,
}

impl LayoutQuery {
    /// Accepts `view`, `focus`, `hide` (comma-separated schema ids) and
    /// `metric`, which must be `default` or the view's own metric.
    pub fn parse(query: &str) -> Result<Self, String> {
        let mut view = None;
        let mut focus = None;
        let mut hide = None;
        let mut metric = None;
        for (key, value) in form_urlencoded::parse(query.as_bytes()) {
            let slot = match key.as_ref() {
                "view" => &mut view,
                "focus" => &mut focus,
                "hide" => &mut hide,
                "metric" => &mut metric,
                other => return Err(format!("unknown parameter `{other}`")),
            };
            if slot.replace(value.into_owned()).is_some() {
                return Err(format!("parameter `{key}` given twice"));
            }
        }
        let view_text = view.ok_or("missing parameter `view`")?;
        let view = View::parse(&view_text)
            .ok_or_else(|| format!("unknown view `{view_text}`; expected system, package or class"))?;
        if let Some(metric) = metric {
            if metric != "default" && !metric.eq_ignore_ascii_case(view.metric()) {
                return Err(format!(
                    "metric `{metric}` is not available in the {view_text} view; use `default` or `{}`",
                    view.metric()
                ));
            }
        }
        let focus = focus.unwrap_or_default();
        if view == View::Class && focus.is_empty() {
            return Err("the class view needs a `focus` class".to_owned());
        }
        let hide = hide
            .iter()
            .flat_map(|h| h.split(','))
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect();
        Ok(LayoutQuery { view, focus, hide })
    }
}

#[derive(Debug)]
enum State {
    Ready(Box<ProjectModel>),
    /// The model document had another version; every API call answers 410.
    Stale { found: String },
}

#[derive(Serialize)]
struct ProjectBody<'a> {
    meta: &'a SourceMeta,
    schemas: &'a [SchemaEntry],
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SourceRef<'a> {
    class: &'a str,
    path: &'a str,
    start_line: u32,
    end_line: u32,
    elements: Vec<ElementRef<'a>>,
    annotations: Vec<AnnotationRef<'a>>,
}

#[derive(Serialize)]
struct ElementRef<'a> {
    kind: &'static str,
    name: &'a str,
    line: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnnotationRef<'a> {
    name: &'a str,
    line: u32,
    end_line: u32,
}

/// Serves the project, layout and source-reference endpoints plus static
/// assets. Shared across threads; the only mutable part is the layout cache.
#[derive(Debug)]
pub struct Explorer {
    state: State,
    assets: Option<PathBuf>,
    cache: RwLock<HashMap<CacheKey, Arc<String>>>,
}

impl Explorer {
    pub fn new(model: ProjectModel) -> Self {
        Self::with_state(State::Ready(Box::new(model)))
    }

    fn with_state(state: State) -> Self {
        Explorer {
            state,
            assets: None,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Loads a model document. A version mismatch still yields an explorer,
    /// one that answers 410 on every API route; malformed documents fail.
    pub fn from_document(text: &str) -> Result<Self, DocumentError> {
        match load_document(text) {
            Ok(model) => Ok(Self::new(model)),
            Err(DocumentError::VersionMismatch { found }) => {
                Ok(Self::with_state(State::Stale { found }))
            }
            Err(e) => Err(e),
        }
    }

    /// Serve files under `dir` at `/` instead of the built-in placeholder page.
    pub fn with_assets(mut self, dir: impl Into<PathBuf>) -> Self {
        self.assets = Some(dir.into());
        self
    }

    pub fn model(&self) -> Option<&ProjectModel> {
        match &self.state {
            State::Ready(model) => Some(model),
            State::Stale { .. } => None,
        }
    }

    pub fn is_stale(&self) -> bool {
        matches!(self.state, State::Stale { .. })
    }

    /// Handles a GET request. `query` is the raw query string without `?`.
    pub fn handle(&self, path: &str, query: Option<&str>) -> Response {
        let query = query.unwrap_or("");
        if let Some(route) = path.strip_prefix("/api/") {
            let model = match &self.state {
                State::Ready(model) => model,
                State::Stale { found } => {
                    return Response::error(
                        410,
                        format!(
                            "model document version `{found}` is not {}; re-run analyze",
                            crate::model::MODEL_VERSION
                        ),
                    )
                }
            };
            return match route {
                "project" => self.project(model, query),
                "layout" => self.layout(model, query),
                "source-ref" => self.source_ref(model, query),
                _ => Response::error(404, format!("no such endpoint `{path}`")),
            };
        }
        self.asset(path)
    }

    fn project(&self, model: &ProjectModel, query: &str) -> Response {
        if !query.is_empty() {
            return Response::error(400, "`/api/project` takes no parameters");
        }
        let body = ProjectBody {
            meta: &model.meta,
            schemas: &model.schemas,
        };
        Response::json(200, serde_json::to_string(&body).expect("project serializes"))
    }

    fn layout(&self, model: &ProjectModel, query: &str) -> Response {
        let parsed = match LayoutQuery::parse(query) {
            Ok(q) => q,
            Err(message) => return Response::error(400, message),
        };
        let key = CacheKey {
            view: parsed.view,
            focus: parsed.focus.clone(),
            hide: parsed.hide.iter().cloned().collect(),
        };
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Response::json(200, hit.as_ref().clone());
        }
        match layout_view(model, parsed.view, &parsed.focus, &parsed.hide) {
            Ok(tree) => {
                let body = Arc::new(tree.to_json());
                let body = self
                    .cache
                    .write()
                    .expect("cache lock")
                    .entry(key)
                    .or_insert(body)
                    .clone();
                Response::json(200, body.as_ref().clone())
            }
            Err(e @ (LayoutError::PackageNotFound(_) | LayoutError::ClassNotFound(_))) => {
                Response::error(404, e.to_string())
            }
            Err(e) => Response::error(500, e.to_string()),
        }
    }

    fn source_ref(&self, model: &ProjectModel, query: &str) -> Response {
        let mut class = None;
        for (key, value) in form_urlencoded::parse(query.as_bytes()) {
            if key != "class" {
                return Response::error(400, format!("unknown parameter `{key}`"));
            }
            if class.replace(value.into_owned()).is_some() {
                return Response::error(400, "parameter `class` given twice");
            }
        }
        let Some(name) = class.filter(|c| !c.is_empty()) else {
            return Response::error(400, "missing parameter `class`");
        };
        let Some(class) = model.root.find_class(&name) else {
            return Response::error(404, format!("class `{name}` not found"));
        };
        let body = SourceRef {
            class: &class.qualified_name,
            path: &class.path,
            start_line: class.start_line,
            end_line: class.end_line,
            elements: class
                .elements
                .iter()
                .map(|e| ElementRef {
                    kind: e.kind.as_str(),
                    name: &e.name,
                    line: e.line,
                })
                .collect(),
            annotations: class
                .annotations
                .iter()
                .map(|a| AnnotationRef {
                    name: &a.name,
                    line: a.line,
                    end_line: a.end_line,
                })
                .collect(),
        };
        Response::json(200, serde_json::to_string(&body).expect("source ref serializes"))
    }

    fn asset(&self, path: &str) -> Response {
        let relative = path.trim_start_matches('/');
        let relative = if relative.is_empty() { "index.html" } else { relative };
        let Some(dir) = &self.assets else {
            return if relative == "index.html" {
                Response {
                    status: 200,
                    content_type: "text/html; charset=utf-8",
                    body: PLACEHOLDER_INDEX.as_bytes().to_vec(),
                }
            } else {
                Response::error(404, format!("no asset `{path}`"))
            };
        };
        let rel = Path::new(relative);
        if !rel.components().all(|c| matches!(c, Component::Normal(_))) {
            return Response::error(404, format!("no asset `{path}`"));
        }
        match std::fs::read(dir.join(rel)) {
            Ok(body) => Response {
                status: 200,
                content_type: content_type(rel),
                body,
            },
            Err(_) => Response::error(404, format!("no asset `{path}`")),
        }
    }
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("js" | "mjs") => "text/javascript",
        Some("css") => "text/css",
        Some("json") => "application/json",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("ico") => "image/x-icon",
        _ => "application/octet-stream",
    }
}

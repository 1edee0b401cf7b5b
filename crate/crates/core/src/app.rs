//! The `analyze` and `serve` commands, minus argument parsing.

use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::time::UNIX_EPOCH;

use thiserror::Error;

use crate::model::{build_model, emit_document, DocumentError, ProjectModel};
use crate::palette::{ColorConfig, PaletteError};
use crate::parser::{scan_project, ParseError};
use crate::server::Explorer;

pub const DEFAULT_MODEL_FILE: &str = "cadv-model.json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeConfig {
    pub root: PathBuf,
    pub excludes: Vec<String>,
    pub out: PathBuf,
    pub colors: Option<PathBuf>,
}

impl AnalyzeConfig {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        AnalyzeConfig {
            root: root.into(),
            excludes: Vec::new(),
            out: PathBuf::from(DEFAULT_MODEL_FILE),
            colors: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Scan(#[from] ParseError),
    #[error(transparent)]
    Palette(#[from] PaletteError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl AnalyzeError {
    /// 2 when the document could not be written, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalyzeError::Write { .. } => 2,
            _ => 1,
        }
    }
}

/// Scans, measures and colors a source tree. Nothing is written.
pub fn analyze(config: &AnalyzeConfig) -> Result<ProjectModel, AnalyzeError> {
    let overrides = config.colors.as_deref().map(ColorConfig::load).transpose()?;
    let report = scan_project(&config.root, &config.excludes)?;
    let mut model = build_model(&report.files);
    if overrides.is_some() {
        model.recolor(overrides.as_ref())?;
    }
    let mut skipped = report.skipped;
    skipped.extend(std::mem::take(&mut model.meta.skipped_files));
    skipped.sort_by(|a, b| a.path.cmp(&b.path));
    model.meta.skipped = skipped.len();
    model.meta.skipped_files = skipped;
    model.meta.root = config.root.display().to_string();
    model.meta.scan_timestamp = scan_timestamp(&config.root, &report.files);
    Ok(model)
}

/// `SOURCE_DATE_EPOCH` if set, otherwise the newest modification time among
/// the parsed files, so re-analysing an unchanged tree gives the same bytes.
fn scan_timestamp(root: &Path, files: &[crate::parser::SourceFile]) -> Option<u64> {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse().ok()) {
        return Some(epoch);
    }
    files
        .iter()
        .filter_map(|f| std::fs::metadata(root.join(&f.path)).ok()?.modified().ok())
        .filter_map(|t| t.duration_since(UNIX_EPOCH).ok())
        .map(|d| d.as_secs())
        .max()
}

/// Legend-style summary: totals followed by one row per schema.
pub fn summary(model: &ProjectModel) -> String {
    let mut out = format!(
        "files parsed: {}\nfiles skipped: {}\nclasses: {}\nannotations: {}\n",
        model.meta.files,
        model.meta.skipped,
        model.meta.classes,
        model.total_annotations()
    );
    let width = model.schemas.iter().map(|s| s.id.len()).max().unwrap_or(0).max(6);
    out.push_str(&format!("\n{:<width$}  {:>6}  color\n", "schema", "count"));
    for s in &model.schemas {
        out.push_str(&format!("{:<width$}  {:>6}  {}\n", s.id, s.count, s.color));
    }
    out
}

/// Runs `analyze` end to end, writing the model document to `config.out`.
/// Returns the process exit status.
pub fn cmd_analyze(config: &AnalyzeConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = analyze(config).and_then(|model| {
        std::fs::write(&config.out, emit_document(&model))
            .map_err(|source| AnalyzeError::Write {
                path: config.out.clone(),
                source,
            })
            .map(|()| model)
    });
    match result {
        Ok(model) => {
            for skipped in &model.meta.skipped_files {
                let _ = writeln!(stderr, "warning: skipped {}: {}", skipped.path.display(), skipped.reason);
            }
            let _ = write!(stdout, "{}", summary(&model));
            let _ = writeln!(stdout, "\nwrote {}", config.out.display());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServeConfig {
    pub model: PathBuf,
    pub bind: IpAddr,
    pub port: u16,
    pub assets: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("port must be between 1 and 65535")]
    InvalidPort,
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Document(#[from] DocumentError),
}

impl ServeConfig {
    pub fn address(&self) -> Result<SocketAddr, ServeError> {
        if self.port == 0 {
            return Err(ServeError::InvalidPort);
        }
        Ok(SocketAddr::new(self.bind, self.port))
    }

    /// Loads the model document into an [`Explorer`].
    pub fn explorer(&self) -> Result<Explorer, ServeError> {
        let text = std::fs::read_to_string(&self.model).map_err(|source| ServeError::Read {
            path: self.model.clone(),
            source,
        })?;
        let explorer = Explorer::from_document(&text)?;
        Ok(match &self.assets {
            Some(dir) => explorer.with_assets(dir),
            None => explorer,
        })
    }
}

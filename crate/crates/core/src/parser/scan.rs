use std::path::{Path, PathBuf};

use globset::{GlobBuilder, GlobSet, GlobSetBuilder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::{read_source_file, ParseError, SourceFile};

/// Parsed files plus the ones that were skipped, both ordered by path.
#[derive(Debug, Default)]
pub struct ScanReport {
    pub files: Vec<SourceFile>,
    pub skipped: Vec<SkippedFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedFile {
    pub path: PathBuf,
    pub reason: String,
}

fn build_excludes(patterns: &[String]) -> Result<GlobSet, ParseError> {
    let mut builder = GlobSetBuilder::new();
    for pattern in patterns {
        let glob = GlobBuilder::new(pattern)
            .literal_separator(true)
            .build()
            .map_err(|e| ParseError::BadExclude {
                pattern: pattern.clone(),
                message: e.to_string(),
            })?;
        builder.add(glob);
    }
    builder.build().map_err(|e| ParseError::BadExclude {
        pattern: patterns.join(","),
        message: e.to_string(),
    })
}

/// Recursively finds `.java` files under `root`, drops the ones matching an
/// exclude glob (matched against the `/`-separated path relative to `root`)
/// and parses the rest. Stored paths are relative to `root`.
pub fn scan_project(root: impl AsRef<Path>, excludes: &[String]) -> Result<ScanReport, ParseError> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(ParseError::RootNotFound(root.to_path_buf()));
    }
    let excludes = build_excludes(excludes)?;

    let mut candidates: Vec<(PathBuf, PathBuf)> = Vec::new();
    let mut skipped = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                let path = e.path().map(Path::to_path_buf).unwrap_or_else(|| root.to_path_buf());
                skipped.push(SkippedFile {
                    path: relative(root, &path),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        if !entry.file_type().is_file()
            || entry.path().extension().and_then(|e| e.to_str()) != Some("java")
        {
            continue;
        }
        let rel = relative(root, entry.path());
        if excludes.is_match(slash_path(&rel)) {
            continue;
        }
        candidates.push((entry.path().to_path_buf(), rel));
    }

    let parsed: Vec<Result<SourceFile, SkippedFile>> = candidates
        .par_iter()
        .map(|(abs, rel)| match read_source_file(abs) {
            Ok(mut file) => {
                file.path = rel.clone();
                Ok(file)
            }
            Err(err) => Err(SkippedFile {
                path: rel.clone(),
                reason: skip_reason(&err),
            }),
        })
        .collect();

    let mut report = ScanReport {
        files: Vec::with_capacity(parsed.len()),
        skipped,
    };
    for item in parsed {
        match item {
            Ok(f) => report.files.push(f),
            Err(s) => report.skipped.push(s),
        }
    }
    report.files.sort_by(|a, b| a.path.cmp(&b.path));
    report.skipped.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(report)
}

fn skip_reason(err: &ParseError) -> String {
    match err {
        ParseError::UnreadableFile { source, .. } => format!("unreadable: {source}"),
        ParseError::ParseGaveUp { line, reason, .. } => format!("line {line}: {reason}"),
        other => other.to_string(),
    }
}

fn relative(root: &Path, path: &Path) -> PathBuf {
    path.strip_prefix(root).unwrap_or(path).to_path_buf()
}

pub(crate) fn slash_path(path: &Path) -> String {
    path.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

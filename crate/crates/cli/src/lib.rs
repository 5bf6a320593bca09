//! Library side of the `mobius-lab` binary: input loading, the verification
//! commands, and the report format they share.

mod commands;
mod report;

use std::path::{Path, PathBuf};

use mobius_core::matroid::Realization;
use mobius_core::{catalog, Budget, Matroid, MatroidSpec};
use serde::Serialize;

pub use commands::{
    cmd_equations, cmd_fans, cmd_flats, cmd_matching, cmd_ratio_sweep, cmd_verify, Suite,
    DEFAULT_LISTING_LIMIT,
};
pub use report::{Check, Report};

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "MOBIUS_LAB_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{error}{}", hint.map(|h| format!(" ({h})")).unwrap_or_default())]
    Core {
        error: mobius_core::Error,
        hint: Option<&'static str>,
    },
}

impl From<mobius_core::Error> for CliError {
    fn from(error: mobius_core::Error) -> Self {
        CliError::Core { error, hint: None }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Where a matroid comes from.
#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Catalog(String),
    Spec(MatroidSpec),
}

/// Identifies the matroid a report is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub source: String,
    pub kind: &'static str,
    pub n: usize,
    pub rank: usize,
    pub simplified: bool,
}

/// A constructed matroid together with what is known about its origin.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub descriptor: Descriptor,
    pub matroid: Matroid,
    /// Golden Whitney numbers, for catalog entries.
    pub golden: Option<Vec<usize>>,
    pub graphic: bool,
}

/// Parses matroid JSON, reporting failures with their position.
pub fn parse_spec(text: &str) -> Result<MatroidSpec> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        // serde_json appends the position, which we report separately
        let message = match message.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => message,
        };
        CliError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

pub fn load(source: &Source, simplify: bool) -> Result<Loaded> {
    let (label, spec, golden, catalog_graphic) = match source {
        Source::File(path) => (
            path.display().to_string(),
            parse_spec(&read(path)?)?,
            None,
            false,
        ),
        Source::Catalog(name) => {
            let entry = catalog::lookup(name).ok_or_else(|| {
                let names: Vec<_> = catalog().iter().map(|e| e.name).collect();
                CliError::Usage(format!(
                    "unknown catalog entry {name:?}; available: {}",
                    names.join(", ")
                ))
            })?;
            (
                format!("catalog:{name}"),
                entry.spec,
                Some(entry.whitney),
                entry.graphic,
            )
        }
        Source::Spec(spec) => ("inline".to_string(), spec.clone(), None, false),
    };
    let spec = if simplify { spec.simplify()? } else { spec };
    let matroid = spec.build()?;
    let graphic = catalog_graphic || matches!(matroid.realization(), Realization::Graphic(_));
    Ok(Loaded {
        descriptor: Descriptor {
            source: label,
            kind: kind_name(&spec),
            n: matroid.size(),
            rank: matroid.rank_total(),
            simplified: simplify,
        },
        matroid,
        // simplification may change the matroid, so the golden data no longer applies
        golden: golden.filter(|_| !simplify),
        graphic,
    })
}

fn kind_name(spec: &MatroidSpec) -> &'static str {
    match spec {
        MatroidSpec::Linear { .. } => "linear",
        MatroidSpec::Graphic { .. } => "graphic",
        MatroidSpec::Bases { .. } => "bases",
        MatroidSpec::Uniform { .. } => "uniform",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Budget with an optional scalar override of the enumeration caps.
pub fn budget_from(cap: Option<usize>, chow_cap: Option<usize>) -> Budget {
    let mut budget = Budget::default();
    if let Some(cap) = cap {
        budget = budget.with_enumeration_cap(cap);
    }
    if let Some(cap) = chow_cap {
        budget.chow_monomials = cap;
    }
    budget
}

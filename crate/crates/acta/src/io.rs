//! JSON file formats for monoids and acts.
//!
//! A monoid file is `{"n": 3, "table": [[..],..], "names": [..]?}`. An act
//! file is `{"monoid": <inline object or path string>, "m": 2, "action":
//! [[..],..], "names": [..]?}`; a path is resolved relative to the act
//! file's directory.

use crate::act::{Act, ActError};
use crate::congruence::Congruence;
use crate::monoid::{Monoid, MonoidError};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: declared n = {declared} but table has {actual} rows")]
    MonoidSizeMismatch {
        path: String,
        declared: usize,
        actual: usize,
    },
    #[error("{path}: declared m = {declared} but action has {actual} rows")]
    ActSizeMismatch {
        path: String,
        declared: usize,
        actual: usize,
    },
    #[error("{path}: {source}")]
    Monoid {
        path: String,
        source: MonoidError,
    },
    #[error("{path}: {source}")]
    Act { path: String, source: ActError },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MonoidFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Path(String),
    Inline(MonoidFile),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ActFile {
    pub monoid: MonoidRef,
    pub m: usize,
    pub action: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: display,
        source,
    })
}

fn build_monoid(file: MonoidFile, path: &str) -> Result<Monoid, IoError> {
    if file.table.len() != file.n {
        return Err(IoError::MonoidSizeMismatch {
            path: path.into(),
            declared: file.n,
            actual: file.table.len(),
        });
    }
    let mut monoid = Monoid::from_table(file.table).map_err(|source| IoError::Monoid {
        path: path.into(),
        source,
    })?;
    if let Some(names) = file.names {
        monoid = monoid.with_names(names);
    }
    Ok(monoid)
}

pub fn load_monoid(path: &Path) -> Result<Monoid, IoError> {
    let file: MonoidFile = read_json(path)?;
    build_monoid(file, &path.display().to_string())
}

pub fn load_act(path: &Path) -> Result<Act, IoError> {
    let file: ActFile = read_json(path)?;
    let display = path.display().to_string();
    let monoid = match file.monoid {
        MonoidRef::Inline(m) => build_monoid(m, &display)?,
        MonoidRef::Path(rel) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_monoid(&base.join(rel))?
        }
    };
    if file.action.len() != file.m {
        return Err(IoError::ActSizeMismatch {
            path: display,
            declared: file.m,
            actual: file.action.len(),
        });
    }
    let mut act = Act::from_action(Arc::new(monoid), file.action).map_err(|source| IoError::Act {
        path: display,
        source,
    })?;
    if let Some(names) = file.names {
        act = act.with_names(names);
    }
    Ok(act)
}

pub fn monoid_file(monoid: &Monoid) -> MonoidFile {
    MonoidFile {
        n: monoid.size(),
        table: monoid.table().clone(),
        names: monoid.names().map(|ns| ns.to_vec()),
    }
}

pub fn act_file(act: &Act) -> ActFile {
    ActFile {
        monoid: MonoidRef::Inline(monoid_file(act.monoid())),
        m: act.size(),
        action: act.action().clone(),
        names: act.names().map(|ns| ns.to_vec()),
    }
}

#[derive(Debug, Serialize)]
pub struct CongruenceJson {
    pub labels: Vec<usize>,
}

pub fn congruence_json(c: &Congruence) -> CongruenceJson {
    CongruenceJson {
        labels: c.labels().to_vec(),
    }
}

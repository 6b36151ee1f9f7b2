use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

pub struct Sink {
    pub path: Option<PathBuf>,
}

impl Sink {
    pub fn text(&self, mut s: String) -> Result<()> {
        if !s.ends_with('\n') {
            s.push('\n');
        }
        match &self.path {
            Some(p) => fs::write(p, s).with_context(|| format!("cannot write {}", p.display())),
            None => {
                print!("{s}");
                Ok(())
            }
        }
    }

    pub fn json(&self, v: &Value) -> Result<()> {
        self.text(serde_json::to_string_pretty(v)?)
    }
}

/// Serializes `report` as an object and stamps the schema tag on it.
pub fn tagged<S: Serialize>(schema: &str, report: &S) -> Result<Value> {
    let mut v = serde_json::to_value(report)?;
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::from(schema));
    }
    Ok(v)
}

pub fn with_field(mut v: Value, key: &str, value: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert(key.into(), value);
    }
    v
}

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Full double precision: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|measured - expected| <= tolerance`
    Within,
    /// `measured <= tolerance`
    AtMost,
    /// `measured >= -tolerance`
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub measured: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl Assertion {
    pub fn within(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let passed = (measured - expected).abs() <= tolerance;
        Self { name: name.into(), measured, expected: Some(expected), tolerance, relation: Relation::Within, passed }
    }

    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let passed = measured <= tolerance;
        Self { name: name.into(), measured, expected: None, tolerance, relation: Relation::AtMost, passed }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let passed = measured >= -tolerance;
        Self { name: name.into(), measured, expected: None, tolerance, relation: Relation::AtLeast, passed }
    }

    /// A count of violations that must be zero.
    pub fn none(name: impl Into<String>, violations: usize) -> Self {
        Self::at_most(name, violations as f64, 0.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config_hash: String,
    pub config: serde_json::Value,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub artifacts: Vec<String>,
}

/// `sha256` over the canonical config JSON followed by the bytes of every
/// input file, hex encoded.
pub fn config_hash(config: &serde_json::Value, inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(config).expect("config serializes"));
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Writes into `<out>/<command>-<hash prefix>/`, each file via a temporary
/// file renamed into place.
pub struct ArtifactDir {
    dir: PathBuf,
    written: Vec<String>,
}

impl ArtifactDir {
    pub fn create(out: &Path, command: &str, hash: &str) -> Result<Self> {
        let dir = out.join(format!("{command}-{}", &hash[..16]));
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, written: Vec::new() })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        self.written.push(name.to_string());
        Ok(path)
    }

    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        self.write(name, &bytes)
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.65625), "6.5625000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn assertion_relations() {
        assert!(Assertion::within("a", 1.0, 1.0 + 1e-13, 1e-12).passed);
        assert!(!Assertion::at_most("b", 2e-6, 1e-6).passed);
        assert!(Assertion::at_least("c", -1e-11, 1e-10).passed);
        assert!(!Assertion::none("d", 1).passed);
    }

    #[test]
    fn hash_depends_on_inputs() {
        let c = serde_json::json!({"a": 1});
        assert_ne!(config_hash(&c, &[]), config_hash(&c, &[b"x".to_vec()]));
        assert_eq!(config_hash(&c, &[]), config_hash(&c, &[]));
    }

    #[test]
    fn atomic_files() {
        let out = tempfile::tempdir().unwrap();
        let mut d = ArtifactDir::create(out.path(), "gen", &"0".repeat(64)).unwrap();
        d.write_csv("x.csv", &["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        let text = std::fs::read_to_string(d.path().join("x.csv")).unwrap();
        assert_eq!(text, "a,b\n1,2\n");
        assert_eq!(d.written(), ["x.csv"]);
        assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 1);
    }
}

//! On-disk store of representation matrices.
//!
//! A file is only trusted when its provenance fields and basis match what the
//! current build would produce; anything else is recomputed and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num::BigInt;
use serde::{Deserialize, Serialize};
use springer_core::action::ActionEngine;
use springer_core::Perm;

use crate::CliError;

pub const GENERATOR: &str = "zeta-oracle";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub generator: String,
    pub version: String,
}

impl MatrixRecord {
    pub fn new(engine: &ActionEngine, sigma: &Perm, m: usize) -> Result<Self, CliError> {
        let matrix = engine.rep_matrix(sigma, m)?;
        Ok(MatrixRecord {
            n: engine.n(),
            k: engine.k(),
            m,
            basis: basis_codes(engine, m),
            matrix: matrix.iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect(),
            generator: GENERATOR.into(),
            version: VERSION.into(),
        })
    }

    fn trusted(&self, engine: &ActionEngine, m: usize) -> bool {
        let dim = engine.basis(m).len();
        self.generator == GENERATOR
            && self.version == VERSION
            && (self.n, self.k, self.m) == (engine.n(), engine.k(), m)
            && self.basis == basis_codes(engine, m)
            && self.matrix.len() == dim
            && self.matrix.iter().all(|r| r.len() == dim && r.iter().all(|e| e.parse::<BigInt>().is_ok()))
    }
}

fn basis_codes(engine: &ActionEngine, m: usize) -> Vec<String> {
    engine.basis(m).iter().map(ToString::to_string).collect()
}

/// `$SPRINGER_CACHE_DIR` if set, else `cache` under the working directory.
pub fn default_root() -> PathBuf {
    std::env::var_os("SPRINGER_CACHE_DIR").map_or_else(|| PathBuf::from("cache"), PathBuf::from)
}

pub fn entry_path(root: &Path, n: usize, k: usize, m: usize, sigma: &Perm) -> PathBuf {
    root.join(format!("rep_{n}_{k}_{m}")).join(format!("{}.json", sigma.key()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Hit,
    Computed,
}

/// Returns the record for σ in grading m, reading a trusted entry or writing a fresh one.
pub fn load_or_compute(root: &Path, engine: &ActionEngine, sigma: &Perm, m: usize) -> Result<(MatrixRecord, Source), CliError> {
    let path = entry_path(root, engine.n(), engine.k(), m, sigma);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(rec) = serde_json::from_str::<MatrixRecord>(&text) {
            if rec.trusted(engine, m) {
                return Ok((rec, Source::Hit));
            }
        }
    }
    let rec = MatrixRecord::new(engine, sigma, m)?;
    store(&path, &rec)?;
    Ok((rec, Source::Computed))
}

/// Writes to a temporary file in the same directory and renames it into place.
fn store(path: &Path, rec: &MatrixRecord) -> Result<(), CliError> {
    let dir = path.parent().expect("entry paths have a parent");
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, rec)?;
    tmp.write_all(b"\n")?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let engine = ActionEngine::new(4, 2).unwrap();
        let sigma = Perm::parse("(2 3)", 4).unwrap();
        let (first, src) = load_or_compute(dir.path(), &engine, &sigma, 1).unwrap();
        assert_eq!(src, Source::Computed);
        let (second, src) = load_or_compute(dir.path(), &engine, &sigma, 1).unwrap();
        assert_eq!((src, &second), (Source::Hit, &first));

        let path = entry_path(dir.path(), 4, 2, 1, &sigma);
        let mut forged = first.clone();
        forged.generator = "somewhere-else".into();
        forged.matrix[0][0] = "99".into();
        fs::write(&path, serde_json::to_string(&forged).unwrap()).unwrap();
        let (third, src) = load_or_compute(dir.path(), &engine, &sigma, 1).unwrap();
        assert_eq!((src, &third), (Source::Computed, &first));

        fs::write(&path, "{ not json").unwrap();
        assert_eq!(load_or_compute(dir.path(), &engine, &sigma, 1).unwrap().1, Source::Computed);
    }

    #[test]
    fn basis_must_match() {
        let dir = tempfile::tempdir().unwrap();
        let engine = ActionEngine::new(4, 1).unwrap();
        let sigma = Perm::simple(4, 1).unwrap();
        let (mut rec, _) = load_or_compute(dir.path(), &engine, &sigma, 1).unwrap();
        rec.basis.reverse();
        assert!(!rec.trusted(&engine, 1));
    }
}

//! Matrix files: `{ "name": string, "matrix": [[int, ...], ...] }`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::seifert::SeifertMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

impl MatrixFile {
    pub fn new(name: impl Into<String>, s: &SeifertMatrix) -> Self {
        MatrixFile {
            name: name.into(),
            matrix: s.entries().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn seifert(&self) -> Result<SeifertMatrix> {
        SeifertMatrix::new(self.matrix.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = MatrixFile::parse(r#"{"name": "trefoil", "matrix": [[-1, 1], [0, -1]]}"#).unwrap();
        assert_eq!(f.seifert().unwrap().genus(), 1);
        assert_eq!(MatrixFile::parse(&f.to_json().unwrap()).unwrap(), f);
        assert!(MatrixFile::parse(r#"{"name": "x", "matrix": [[0.5]]}"#).is_err());
    }
}

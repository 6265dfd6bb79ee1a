//! JSON serialization of a group's multiplication table.

use std::path::Path;

use grouplab_core::FiniteGroup;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A group as plain data: labels, table and designated generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub schema: u32,
    pub name: String,
    pub order: usize,
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    /// The family spec the group was built from, or `"custom"`.
    pub provenance: String,
}

impl GroupDocument {
    pub fn from_group(g: &FiniteGroup, name: &str, provenance: &str) -> Self {
        GroupDocument {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            order: g.order(),
            labels: g.labels().to_vec(),
            table: g.table_rows(),
            generators: g.generators().to_vec(),
            provenance: provenance.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid group document: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Rebuilds the group, rejecting anything that is not a valid group
    /// table: wrong shape, not a Latin square, no identity, generators that
    /// do not generate, or a non-associative product.
    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        if self.order != self.labels.len() {
            return Err(CliError::Parameter(format!(
                "order {} does not match {} labels",
                self.order,
                self.labels.len()
            )));
        }
        let g = FiniteGroup::from_table(
            self.labels.clone(),
            self.table.clone(),
            self.generators.clone(),
            self.provenance.clone(),
        )
        .map_err(|e| CliError::Parameter(e.to_string()))?;
        if !g.is_associative() {
            return Err(CliError::Parameter("table is not associative".into()));
        }
        Ok(g)
    }
}

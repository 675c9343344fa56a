//! Group files: a JSON object with `name`, `table` (0-based indices, identity
//! at index 0) and optional `elements` labels.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{validate, FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            table: g.table_rows(),
            elements: g.names().map(<[String]>::to_vec),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup, GroupError> {
        validate(self.name, &self.table, self.elements)
    }
}

pub fn parse_group_json(text: &str) -> Result<FiniteGroup, GroupError> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| GroupError::Load(format!("bad group file: {e}")))?;
    file.into_group()
}

pub fn load_group_file(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Load(format!("{}: {e}", path.display())))?;
    parse_group_json(&text)
}

//! Bundled small groups, embedded at build time.

use std::sync::OnceLock;

use serde::Deserialize;

use super::Group;
use crate::error::{CatError, Result};

const FILES: &[(&str, &str)] = &[
    ("A4", include_str!("../../data/groups/A4.json")),
    ("D2", include_str!("../../data/groups/D2.json")),
    ("D4", include_str!("../../data/groups/D4.json")),
    ("D5", include_str!("../../data/groups/D5.json")),
    ("D6", include_str!("../../data/groups/D6.json")),
    ("Q8", include_str!("../../data/groups/Q8.json")),
    ("S3", include_str!("../../data/groups/S3.json")),
    ("Z1", include_str!("../../data/groups/Z1.json")),
    ("Z10", include_str!("../../data/groups/Z10.json")),
    ("Z11", include_str!("../../data/groups/Z11.json")),
    ("Z12", include_str!("../../data/groups/Z12.json")),
    ("Z2", include_str!("../../data/groups/Z2.json")),
    ("Z3", include_str!("../../data/groups/Z3.json")),
    ("Z4", include_str!("../../data/groups/Z4.json")),
    ("Z5", include_str!("../../data/groups/Z5.json")),
    ("Z6", include_str!("../../data/groups/Z6.json")),
    ("Z7", include_str!("../../data/groups/Z7.json")),
    ("Z8", include_str!("../../data/groups/Z8.json")),
    ("Z9", include_str!("../../data/groups/Z9.json")),
];

#[derive(Deserialize)]
struct GroupFile {
    #[serde(rename = "format-version")]
    format_version: String,
    name: String,
    table: Vec<Vec<u32>>,
}

/// Parses a group file (`{"format-version":"1","name":..,"table":..}`).
pub fn parse_group_file(text: &str) -> Result<Group> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| CatError::input(format!("group file: {e}")))?;
    if file.format_version != "1" {
        return Err(CatError::input(format!(
            "unsupported group file version {}",
            file.format_version
        )));
    }
    let g = Group::from_table(file.table)?;
    Ok(Group::from_table_unchecked(g.table().to_vec(), Some(file.name)))
}

fn all() -> &'static Vec<Group> {
    static LIB: OnceLock<Vec<Group>> = OnceLock::new();
    LIB.get_or_init(|| {
        let mut groups: Vec<Group> = FILES
            .iter()
            .map(|(_, text)| parse_group_file(text).expect("bundled group file is valid"))
            .collect();
        groups.sort_by(|a, b| {
            (a.order(), a.name().map(|n| n.len()), a.name())
                .cmp(&(b.order(), b.name().map(|n| n.len()), b.name()))
        });
        groups
    })
}

/// The bundled groups sorted by order, then name.
pub fn bundled_groups() -> Vec<Group> {
    all().clone()
}

pub fn group_by_name(name: &str) -> Option<Group> {
    all().iter().find(|g| g.name() == Some(name)).cloned()
}

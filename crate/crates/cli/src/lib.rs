//! Library side of the `wedderkit` command: group loading, the corpus
//! runner, and text rendering of JSON reports.

pub mod corpus;
pub mod render;

use std::path::Path;
use std::sync::Arc;

use wedderkit::dsl::parse_group;
use wedderkit::group::{FiniteGroup, GroupRef};
use wedderkit::Result;

/// The corpus used by `verify oracle` when no path is given.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.specs");

/// A group spec, a `table:<path>` reference, or a path to a `.tbl` file.
pub fn load_group(spec: &str, bound: usize) -> Result<GroupRef> {
    let path = spec.strip_prefix("table:").or_else(|| spec.ends_with(".tbl").then_some(spec));
    match path {
        Some(p) => load_table(Path::new(p), bound),
        None => parse_group(spec, bound),
    }
}

pub fn load_table(path: &Path, bound: usize) -> Result<GroupRef> {
    let text = std::fs::read_to_string(path)?;
    let group = FiniteGroup::parse_table(&text)?;
    if group.order() > bound {
        return Err(wedderkit::Error::GroupTooLarge { order: group.order(), bound, what: "construction" });
    }
    Ok(Arc::new(group))
}

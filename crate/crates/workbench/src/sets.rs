//! Vertex-set files: labels separated by whitespace, `#` starts a comment.

use localdom::{Error, Result, VertexSet};

pub fn parse_set(text: &str) -> Result<VertexSet> {
    let mut set = VertexSet::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for token in content.split_whitespace() {
            let v = token.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("`{token}` is not a vertex label"),
            })?;
            set.insert(v);
        }
    }
    Ok(set)
}

/// One label per line, ascending.
pub fn format_set(set: &VertexSet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}

//! The shipped fixture documents, embedded at build time.

use std::path::PathBuf;

pub const ALL: [(&str, &str); 7] = [
    ("cell", include_str!("../fixtures/cell.json")),
    ("corrupted_stack", include_str!("../fixtures/corrupted_stack.json")),
    ("counters", include_str!("../fixtures/counters.json")),
    ("network", include_str!("../fixtures/network.json")),
    ("ripple", include_str!("../fixtures/ripple.json")),
    ("stack", include_str!("../fixtures/stack.json")),
    ("trivial", include_str!("../fixtures/trivial.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|&(_, text)| text)
}

/// Where the fixture files live on disk.
pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

//! Library surface of the `ring-atlas` command-line tool: ring-spec file
//! parsing, the raw-table writer, and the JSON report documents. Exposed
//! so integration tests (and embedders) can reuse the exact formats the
//! binary speaks.

pub mod parse;
pub mod report;

//! Standard-library companion to `rejsamp-core`: configuration, file
//! formats, CSV reporting, and the experiment suites behind the `rejsamp`
//! command-line tool.

pub mod config;
pub mod formats;
pub mod report;
pub mod suites;

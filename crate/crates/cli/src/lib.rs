//! Expression language, sessions and reports behind the `cg` binary.

pub mod expr;
pub mod registry;
pub mod report;
pub mod session;
pub mod world;

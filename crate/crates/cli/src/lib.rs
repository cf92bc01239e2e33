//! IO companion to `ffindex-core`: field/polynomial literal parsing, JSON
//! views of reports, and the batch sweep driver with CSV output.

pub mod jsonout;
pub mod parse;
pub mod sweep;

//! Expression parsing and JSON interchange for the tangle toolkit's command line front end.

pub mod json;
pub mod parse;

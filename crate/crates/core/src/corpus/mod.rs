//! Built-in cones and file formats.

mod cones;
mod format;

pub use cones::{all, by_name, c10, c12, c12_prime, c15, k5_cone, Expected, PaperCone};
pub use format::{
    append_hits, read_cone, read_cone_file, read_hits, write_cone, write_report, ConeFile, CorpusError, ParseError,
    Report,
};

//! Text formats and command-line frontend for [`polyaut_core`].

pub mod cli;
mod error;
pub mod mapfile;
pub mod parse;
pub mod recipe;
pub mod report;

pub use error::FormatError;
pub use mapfile::{parse_map, ParsedMap};
pub use parse::{parse_polynomial, print_polynomial, ParseError, ParseErrorKind, VarTable};

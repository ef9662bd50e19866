//! Text front end for `planefol-core`: expression parsing, field files and
//! report rendering.

pub mod error;
pub mod parse;
pub mod report;
pub mod run;
pub mod spec;

pub use error::CliError;
pub use parse::parse_poly;
pub use run::{run, Command, Report, Status};
pub use spec::FieldSpec;

use std::fmt::Display;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// Writes results to stdout, one record per line in `json-lines` mode.
pub struct Reporter {
    format: Format,
}

impl Reporter {
    pub fn new(format: Format) -> Reporter {
        Reporter { format }
    }

    pub fn emit(&self, text: impl Display, record: Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::JsonLines => println!("{record}"),
        }
    }

    pub fn error(&self, e: &CliError) {
        match self.format {
            Format::Text => eprintln!("error: {e}"),
            Format::JsonLines => {
                println!("{}", json!({ "error": e.kind(), "message": e.to_string(), "exit": e.exit_code() }))
            }
        }
    }
}

//! Reads a problem document on stdin and prints its canonical form.
//!
//! `cargo run -p novikov-core --example canonicalize < doc.json`

use std::io::Read;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut text = String::new();
    if let Err(e) = std::io::stdin().read_to_string(&mut text) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match novikov_core::document::parse_document(&text) {
        Ok(doc) => {
            print!("{}", doc.to_canonical_string());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}

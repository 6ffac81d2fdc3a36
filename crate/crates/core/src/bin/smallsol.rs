use std::io::Write;

use clap::Parser;
use smallsol::cli::{run, Args};

fn main() {
    let args = Args::parse();
    let (code, out, err) = run(&args);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(code);
}

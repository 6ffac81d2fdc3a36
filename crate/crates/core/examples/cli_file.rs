//! The command-line pipeline on a system file, in both output formats.

use clap::Parser;
use smallsol::cli::{run, Args};

fn main() {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/data/planted.sys");
    for format in ["text", "machine"] {
        let (code, out, err) = run(&Args::parse_from(["smallsol", file, "--families", "--format", format]));
        print!("{out}{err}");
        println!("exit code {code}");
    }
}

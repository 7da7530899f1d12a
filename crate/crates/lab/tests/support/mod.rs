#![allow(dead_code)]

use std::path::PathBuf;

pub fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    p.to_string_lossy().into_owned()
}

/// A path in the temp directory unique to this process and `name`.
pub fn scratch(name: &str) -> String {
    let p = std::env::temp_dir().join(format!("condorcet-lab-{}-{name}", std::process::id()));
    p.to_string_lossy().into_owned()
}

pub fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub struct Run {
    pub code: i32,
    pub out: String,
    pub err: String,
}

pub fn lab(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = condorcet_lab::run(std::iter::once("condorcet-lab").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

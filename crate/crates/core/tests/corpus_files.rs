//! The sample input files track the built-in corpus: each file must
//! parse back to the same object, so the two never drift apart.

use std::path::PathBuf;
use taylor_morse::corpus;
use taylor_morse::ideal::parse_ideal;
use taylor_morse::poset::{parse_poset, Poset};

fn read(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("corpus");
    p.push(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {}", p.display(), e))
}

#[test]
fn ideal_files_match_builtins() {
    let builtins = corpus::corpus_ideals();
    for (file, name) in [
        ("pentagon.ideal", "pentagon"),
        ("triangle.ideal", "triangle"),
        ("path3.ideal", "path3"),
        ("square.ideal", "square"),
        ("two-edges.ideal", "two-edges"),
        ("bridged-edges.ideal", "bridged-edges"),
        ("one-squared.ideal", "one-squared"),
        ("powers-ci.ideal", "powers-ci"),
        ("generic3.ideal", "generic3"),
    ] {
        let parsed = parse_ideal(&read(file)).unwrap_or_else(|e| panic!("{}: {}", file, e));
        let builtin = &builtins.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(&parsed, builtin, "{} drifted from the builtin {}", file, name);
    }
}

#[test]
fn poset_files_match_builtins() {
    let builtins = corpus::corpus_posets();
    for (file, name) in [
        ("antichain3.poset", "antichain3"),
        ("diamond.poset", "diamond"),
        ("fence5.poset", "fence5"),
    ] {
        let parsed: Poset = parse_poset(&read(file)).unwrap_or_else(|e| panic!("{}: {}", file, e));
        let builtin = &builtins.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(&parsed, builtin, "{} drifted from the builtin {}", file, name);
    }
}

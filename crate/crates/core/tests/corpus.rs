use std::fs;
use std::path::{Path, PathBuf};

use twb_core::{braid, closure_diagram, gauss_code, gauss_equivalent, BraidWord, Kind, MorseDiagram};

fn corpus() -> Vec<(String, PathBuf)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut out: Vec<(String, PathBuf)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "morse"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_is_large_enough_and_in_range() {
    let all = corpus();
    assert!(all.len() >= 30);
    for (name, path) in all {
        let d = MorseDiagram::from_file_str(&fs::read_to_string(path).unwrap()).unwrap();
        d.validate().unwrap();
        assert!(d.classical_count() <= 6, "{name}");
        assert!(d.virtual_count() <= 4, "{name}");
        assert!(d.bar_count() <= 6, "{name}");
        assert!(gauss_code(&d).unwrap().components.len() <= 3, "{name}");
    }
}

#[test]
fn files_print_back_byte_for_byte() {
    for (name, path) in corpus() {
        let text = fs::read_to_string(path).unwrap();
        let d = MorseDiagram::from_file_str(&text).unwrap();
        assert_eq!(d.to_file_string(), text, "{name}");
    }
}

#[test]
fn every_diagram_braids_to_an_equal_code() {
    for (name, path) in corpus() {
        let d = MorseDiagram::from_file_str(&fs::read_to_string(path).unwrap()).unwrap();
        let w = braid(&d).unwrap();
        let g = gauss_code(&d).unwrap();
        assert!(gauss_equivalent(&g, &gauss_code(&closure_diagram(&w)).unwrap()), "{name}");
        assert_eq!(w.sigma_count() + w.count(Kind::C), d.classical_count(), "{name}");
        assert_eq!(w.count(Kind::B), d.bar_count(), "{name}");
        assert_eq!(w.closure_permutation().component_count(), g.components.len(), "{name}");
    }
}

/// Golden braid words; set `TWB_BLESS=1` to rewrite them after an intended change.
#[test]
fn braids_match_golden_words() {
    let bless = std::env::var_os("TWB_BLESS").is_some();
    for (name, path) in corpus() {
        let d = MorseDiagram::from_file_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let got = braid(&d).unwrap().to_file_string();
        let golden = path.with_extension("braid");
        if bless {
            fs::write(&golden, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing golden file for {name}"));
        assert_eq!(got, want, "{name}");
        assert_eq!(BraidWord::from_file_str(&want).unwrap().to_file_string(), want);
    }
}

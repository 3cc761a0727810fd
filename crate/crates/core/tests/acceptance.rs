//! One test per acceptance criterion. Each writes a single PASS/FAIL line to
//! standard error, bypassing the test harness's output capture.

mod common;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twb_core::word::free_reduce_letters;
use twb_core::{
    bar_parity_per_component, braid, check_zigzag_identity, closure_diagram, equivalent_bounded, find_up_arcs,
    expand_word, full_presentation, gauss_code, gauss_equivalent, gauss_equivalent_reduced, hyperoctahedral_image,
    markov_equivalent_bounded, markov_neighbors, parity_multiset, reduced_presentation, replay, replay_markov,
    sigma_exponent_sum, BraidWord, Category, DerivationChecker, Family, Kind, MarkovBounds, MorseDiagram, MoveKind,
    QuotientSignature, SearchBounds,
};

fn report(id: u32, ok: bool, detail: &str, elapsed: Duration) {
    let status = if ok { "PASS" } else { "FAIL" };
    let line = format!("acceptance criterion {id}: {status} ({detail}; {elapsed:.2?})\n");
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {id} failed: {detail}");
}

fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn load(name: &str) -> MorseDiagram {
    MorseDiagram::from_file_str(&fs::read_to_string(corpus_dir().join(name)).unwrap()).unwrap()
}

fn derive_all(full: Family, reduced: Family, id: u32) {
    let t = Instant::now();
    let mut proved = 0;
    let mut total = 0;
    for n in 2..=5 {
        let f = full_presentation(full, n).unwrap();
        let r = reduced_presentation(reduced, n).unwrap();
        let mut checker = DerivationChecker::new(&r, SearchBounds { max_length: 0, max_nodes: 1_000_000 });
        for rel in f.relations() {
            total += 1;
            let Some(path) = checker.verify(rel).path().cloned() else { continue };
            let lhs = expand_word(&word(n, full, &rel.lhs));
            let rhs = expand_word(&word(n, full, &rel.rhs));
            let Ok(end) = replay(&path, &r) else { continue };
            if free_reduce_letters(&path.start) == lhs.letters() && free_reduce_letters(&end) == rhs.letters() {
                proved += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = proved == total && elapsed < Duration::from_secs(300);
    report(id, ok, &format!("{proved}/{total} {full} relations proved and replayed for n=2..5"), elapsed);
}

fn word(n: usize, f: Family, letters: &[twb_core::Generator]) -> BraidWord {
    BraidWord::new(n, f.category(), letters.to_vec()).unwrap()
}

#[test]
fn criterion_1_twisted_reduced_presentation() {
    derive_all(Family::TbFull, Family::TbReduced, 1);
}

#[test]
fn criterion_2_flat_reduced_presentation() {
    derive_all(Family::FtFull, Family::FtReduced, 2);
}

fn parities(w: &BraidWord) -> Vec<(Vec<usize>, u8)> {
    bar_parity_per_component(w).into_iter().map(|c| (c.strands, c.parity)).collect()
}

#[test]
fn criterion_3_quotient_soundness() {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for family in [Family::TbFull, Family::FtFull] {
        for n in 2..=6 {
            for rel in full_presentation(family, n).unwrap().relations() {
                let (l, r) = (word(n, family, &rel.lhs), word(n, family, &rel.rhs));
                checked += 1;
                let same = hyperoctahedral_image(&l) == hyperoctahedral_image(&r)
                    && sigma_exponent_sum(&l) == sigma_exponent_sum(&r)
                    && parities(&l) == parities(&r);
                if !same {
                    bad.push(format!("{family} n={n} {}", rel.name));
                }
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(10);
    report(3, ok, &format!("{checked} relations, mismatches {bad:?}"), elapsed);
}

#[test]
fn criterion_4_braiding_round_trip() {
    let t = Instant::now();
    let mut names: Vec<_> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "morse"))
        .collect();
    names.sort();
    let mut good = 0;
    for p in &names {
        let d = MorseDiagram::from_file_str(&fs::read_to_string(p).unwrap()).unwrap();
        let in_range = d.classical_count() <= 6 && d.virtual_count() <= 4 && d.bar_count() <= 6;
        let w = braid(&d).unwrap();
        let g = gauss_code(&d).unwrap();
        let round = gauss_equivalent(&g, &gauss_code(&closure_diagram(&w)).unwrap());
        let counts = w.sigma_count() + w.count(Kind::C) == d.classical_count() && w.count(Kind::B) == d.bar_count();
        if in_range && g.components.len() <= 3 && round && counts {
            good += 1;
        }
    }
    let elapsed = t.elapsed();
    let ok = names.len() >= 30 && good == names.len() && elapsed < Duration::from_secs(30);
    report(4, ok, &format!("{good}/{} corpus diagrams round-trip with counts conserved", names.len()), elapsed);
}

#[test]
fn criterion_5_example_statistics() {
    let t = Instant::now();
    let d = load("example_up_arcs.morse");
    let dec = find_up_arcs(&d).unwrap();
    let w = braid(&d).unwrap();
    let stats = (
        d.classical_count(),
        d.virtual_count(),
        d.bar_count(),
        dec.classical_valid(),
        dec.virtual_valid(),
        dec.free_up_arcs.len(),
        w.sigma_count(),
        w.count(Kind::B),
    );
    let ok = stats == (3, 1, 4, 2, 1, 3, 3, 4);
    report(
        5,
        ok,
        &format!(
            "diagram {}/{}/{} crossings/virtual/bars, valid {} classical + {} virtual, free up-arcs {}, braid {} crossings {} bars",
            stats.0, stats.1, stats.2, stats.3, stats.4, stats.5, stats.6, stats.7
        ),
        t.elapsed(),
    );
}

#[test]
fn criterion_6_markov_move_soundness() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut bad = Vec::new();
    for category in [Category::Twisted, Category::FlatTwisted] {
        for _ in 0..250 {
            let w = common::random_word(&mut rng, category, 3, 6);
            let moves = markov_neighbors(&w).unwrap();
            let (mv, r) = moves.choose(&mut rng).unwrap();
            let g1 = gauss_code(&closure_diagram(&w)).unwrap();
            let g2 = gauss_code(&closure_diagram(r)).unwrap();
            let delta = sigma_exponent_sum(r) - sigma_exponent_sum(&w);
            let sum_ok = if mv.kind == MoveKind::RightRealStab { delta.abs() == 1 } else { delta == 0 };
            let ok = gauss_equivalent_reduced(&g1, &g2)
                && w.closure_permutation().component_count() == r.closure_permutation().component_count()
                && parity_multiset(&w) == parity_multiset(r)
                && sum_ok;
            checked += 1;
            if !ok {
                bad.push(format!("{w} --{mv}--> {r}"));
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(60);
    report(6, ok, &format!("{checked} (word, move) pairs over two categories, violations {bad:?}"), elapsed);
}

#[test]
fn criterion_7_t1_t3_instances() {
    let t = Instant::now();
    let mut equal = 0;
    let names = ["t1_one_up", "t1_two_up", "t3_one_up", "t3_two_up"];
    for name in names {
        let l = braid(&load(&format!("{name}_left.morse"))).unwrap();
        let r = braid(&load(&format!("{name}_right.morse"))).unwrap();
        let v = markov_equivalent_bounded(&l, &r, MarkovBounds::for_pair(&l, &r)).unwrap();
        if let Some(path) = v.path() {
            if replay_markov(path).ok().as_ref() == Some(&r) {
                equal += 1;
            }
        }
    }
    let ok = equal == names.len();
    report(7, ok, &format!("{equal}/{} instance pairs (2 T1, 2 T3) Equal with replayed paths", names.len()), t.elapsed());
}

#[test]
fn criterion_8_zigzag_identity() {
    let t = Instant::now();
    let mut proved = 0;
    let mut total = 0;
    for n in 2..=6 {
        for i in 1..n {
            total += 1;
            if check_zigzag_identity(i, n).unwrap().is_equal() {
                proved += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = proved == total && elapsed < Duration::from_secs(1);
    report(8, ok, &format!("{proved}/{total} instances proved for n <= 6"), elapsed);
}

#[test]
fn criterion_9_disequality_cross_check() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    let mut violations = 0;
    while pairs < 500 {
        let category = if pairs % 2 == 0 { Category::Twisted } else { Category::FlatTwisted };
        let a = common::random_word(&mut rng, category, 3, 5);
        let b = common::random_word(&mut rng, category, 3, 5);
        if a.n() != b.n() || a.n() < 2 || QuotientSignature::of(&a) == QuotientSignature::of(&b) {
            continue;
        }
        pairs += 1;
        let family = if category.is_flat() { Family::FtFull } else { Family::TbFull };
        let p = full_presentation(family, a.n()).unwrap();
        let bounds = SearchBounds { max_nodes: 2_000, ..SearchBounds::for_pair(a.letters(), b.letters()) };
        if equivalent_bounded(&a, &b, &p, bounds).unwrap().is_equal() {
            violations += 1;
        }
    }
    report(9, violations == 0, &format!("{pairs} pairs with different invariants, {violations} reported Equal"), t.elapsed());
}

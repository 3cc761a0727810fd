mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twb_core::{braid_with_trace, closure_diagram, find_up_arcs, gauss_code, gauss_equivalent, Category, Kind};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn braid_closure_keeps_the_gauss_code(seed in any::<u64>(), c in 0usize..5, v in 0usize..3, b in 0usize..4, flat in any::<bool>()) {
        let category = if flat { Category::FlatTwisted } else { Category::Twisted };
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), category, c, v, b);
        let out = braid_with_trace(&d).unwrap();
        prop_assert_eq!(out.word.sigma_count() + out.word.count(Kind::C), c);
        prop_assert_eq!(out.word.count(Kind::B), b);
        let g = gauss_code(&d).unwrap();
        prop_assert!(gauss_equivalent(&g, &gauss_code(&closure_diagram(&out.word)).unwrap()));

        let dec = find_up_arcs(&d).unwrap();
        let mut owned: Vec<usize> = dec.down_skeleton.clone();
        owned.extend(dec.valid_crossings.iter().map(|x| x.event));
        owned.extend(dec.valid_crossings.iter().flat_map(|x| x.bars.iter().copied()));
        owned.extend(dec.free_up_arcs.iter().flat_map(|x| x.bars.iter().copied()));
        owned.sort_unstable();
        prop_assert_eq!(owned, (0..d.events().len()).collect::<Vec<_>>());

        let steps: Vec<usize> = out.trace.iter().filter(|s| s.kind != "skeleton").map(|s| s.up_arcs_remaining).collect();
        let total = dec.valid_crossings.len() + dec.free_up_arcs.len();
        prop_assert_eq!(steps, (0..total).rev().collect::<Vec<_>>());
    }
}

mod common;

use common::{naive_positions, random_text, repetitive_text};
use gcis::{BuildOptions, Grammar, LocateOptions};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(g: &Grammar, text: &[u8], pattern: &[u8], opts: &LocateOptions) {
    let got = g.locate_with(pattern, opts).unwrap();
    let want = naive_positions(text, pattern);
    assert_eq!(
        got.positions,
        want,
        "text {:?} pattern {:?} opts {opts:?}",
        String::from_utf8_lossy(text),
        String::from_utf8_lossy(pattern)
    );
    assert_eq!(got.occ, want.len() as u64);
    if got.occ > 0 {
        assert!(got.visited_nodes >= got.occ_core);
    }
}

fn all_options() -> [LocateOptions; 3] {
    [
        LocateOptions::default(),
        LocateOptions {
            prefix_fast_path: true,
            ..Default::default()
        },
        LocateOptions {
            force_fallback: true,
            ..Default::default()
        },
    ]
}

#[test]
fn every_substring_of_small_texts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..300 {
        let sigma = [2, 3, 4][round % 3];
        let n = rng.gen_range(1..40);
        let text = if round % 2 == 0 {
            random_text(&mut rng, n, sigma)
        } else {
            repetitive_text(&mut rng, n, sigma)
        };
        for opts in [BuildOptions::default(), BuildOptions::without_heuristic()] {
            let g = Grammar::build(&text, &opts).unwrap();
            for i in 0..text.len() {
                for j in i + 1..=text.len() {
                    for lo in all_options() {
                        check(&g, &text, &text[i..j], &lo);
                    }
                }
            }
        }
    }
}

#[test]
fn long_repetitive_texts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..60 {
        let sigma = [2, 4, 26][round % 3];
        let text = repetitive_text(&mut rng, 3000, sigma);
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        for _ in 0..40 {
            let m = rng.gen_range(1..300);
            let p = if rng.gen_bool(0.7) {
                let i = rng.gen_range(0..=text.len() - m);
                text[i..i + m].to_vec()
            } else {
                random_text(&mut rng, m, sigma)
            };
            for lo in all_options() {
                check(&g, &text, &p, &lo);
            }
        }
    }
}

#[test]
fn absent_and_overlong_patterns() {
    let g = Grammar::build(b"abababab", &BuildOptions::default()).unwrap();
    assert!(g.locate(b"abababababab").unwrap().positions.is_empty());
    assert!(g.locate(b"c").unwrap().positions.is_empty());
    assert_eq!(g.locate(b"abab").unwrap().positions, vec![1, 3, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_naive_scanner(text in prop::collection::vec(b'a'..b'd', 1..200), start in any::<prop::sample::Index>(), len in 1usize..30, from_text in any::<bool>(), other in prop::collection::vec(b'a'..b'd', 1..30)) {
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        let p = if from_text {
            let i = start.index(text.len());
            text[i..(i + len).min(text.len())].to_vec()
        } else {
            other
        };
        let got = g.locate(&p).unwrap().positions;
        prop_assert_eq!(got, naive_positions(&text, &p));
    }

    #[test]
    fn reported_positions_extract_to_pattern(text in prop::collection::vec(b'a'..b'c', 1..150), i in any::<prop::sample::Index>(), len in 1usize..20) {
        let g = Grammar::build(&text, &BuildOptions::default()).unwrap();
        let i = i.index(text.len());
        let p = &text[i..(i + len).min(text.len())];
        for pos in g.locate(p).unwrap().positions {
            prop_assert_eq!(g.extract(g.start(), pos, p.len() as u64).unwrap(), p);
        }
    }
}

#[test]
fn visited_nodes_bounded_by_climb_leaves_and_height() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut fanned_out = 0;
    for round in 0..40 {
        let text = repetitive_text(&mut rng, 4000, [2, 4][round % 2]);
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        let tau = g.heights() as u64;
        for _ in 0..50 {
            let m = rng.gen_range(3..200);
            let i = rng.gen_range(0..=text.len() - m);
            let r = g.locate(&text[i..i + m]).unwrap();
            assert!(r.visited_nodes >= r.occ_core);
            assert!(r.candidate_windows >= r.occ_core);
            assert!(
                r.visited_nodes <= r.candidate_windows * tau,
                "visited {} windows {} tau {}",
                r.visited_nodes,
                r.candidate_windows,
                tau
            );
            if r.visited_nodes > r.occ_core * tau {
                fanned_out += 1;
            }
        }
    }
    // a climb fans out over all parents, so occ_C alone does not bound it
    assert!(fanned_out > 0);
}

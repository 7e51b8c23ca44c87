mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{naive_positions, random_text, repetitive_text, staircase};
use gcis::{BuildOptions, Grammar, Symbol, FIRST_NONTERMINAL};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Factor starts by the definition: position 0 and every i ≥ 1 whose suffix
/// is smaller than the next one while the previous suffix is larger.
fn oracle_boundaries(s: &[Symbol]) -> Vec<usize> {
    let suffix = |i: usize| -> Vec<u64> {
        s[i..]
            .iter()
            .map(|&c| u64::from(c))
            .chain([u64::MAX])
            .collect()
    };
    let is_s: Vec<bool> = (0..s.len())
        .map(|i| i + 1 == s.len() || suffix(i) < suffix(i + 1))
        .collect();
    let mut b = vec![0];
    b.extend((1..s.len()).filter(|&i| is_s[i] && !is_s[i - 1]));
    b
}

struct OracleGrammar {
    levels: Vec<Vec<Symbol>>,
    rules: Vec<Vec<Symbol>>,
    height_counts: Vec<u32>,
}

/// Level-by-level construction with sorted sets and no heuristic.
fn oracle_build(text: &[u8], max_height: Option<usize>) -> OracleGrammar {
    let mut level: Vec<Symbol> = text.iter().map(|&c| Symbol::from(c)).collect();
    let mut levels = vec![level.clone()];
    let mut rules: Vec<Vec<Symbol>> = Vec::new();
    let mut height_counts = Vec::new();
    loop {
        let distinct = level.iter().collect::<BTreeSet<_>>().len();
        if distinct == level.len() {
            break;
        }
        if let Some(max) = max_height {
            if height_counts.len() + 2 > max {
                break;
            }
        }
        let b = oracle_boundaries(&level);
        if b.len() <= 2 {
            break;
        }
        let factors: Vec<Vec<Symbol>> = (0..b.len())
            .map(|j| level[b[j]..*b.get(j + 1).unwrap_or(&level.len())].to_vec())
            .collect();
        let sorted: BTreeSet<Vec<Symbol>> = factors.iter().cloned().collect();
        let first = FIRST_NONTERMINAL + rules.len() as Symbol;
        let ids: BTreeMap<Vec<Symbol>, Symbol> = sorted.iter().cloned().zip(first..).collect();
        height_counts.push(sorted.len() as u32);
        rules.extend(sorted);
        level = factors.iter().map(|f| ids[f]).collect();
        levels.push(level.clone());
    }
    rules.push(level);
    height_counts.push(1);
    OracleGrammar {
        levels,
        rules,
        height_counts,
    }
}

fn check_against_oracle(text: &[u8], max_height: Option<u16>) {
    let opts = BuildOptions {
        abort_heuristic: false,
        max_height,
    };
    let g = Grammar::build(text, &opts).unwrap();
    let want = oracle_build(text, max_height.map(usize::from));
    let got: Vec<Vec<Symbol>> = (FIRST_NONTERMINAL..FIRST_NONTERMINAL + g.num_rules() as Symbol)
        .map(|id| g.rhs(id).unwrap())
        .collect();
    assert_eq!(got, want.rules, "text {:?}", String::from_utf8_lossy(text));
    assert_eq!(g.layout().height_counts, want.height_counts);
    for (h, level) in want.levels.iter().enumerate() {
        assert_eq!(&g.level_string(h), level, "height {h}");
    }
    g.validate().unwrap();
}

/// Text positions where the derivation tree places `id`.
fn tree_positions(g: &Grammar, id: Symbol) -> Vec<u64> {
    let h = g.height_of(id);
    let mut pos = 1;
    let mut out = Vec::new();
    for x in g.level_string(h) {
        if x == id {
            out.push(pos);
        }
        pos += g.expansion_length(x).unwrap();
    }
    out
}

#[test]
fn matches_oracle_on_random_texts() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for round in 0..400 {
        let sigma = [2, 3, 4, 26][round % 4];
        let n = rng.gen_range(1..300);
        let text = if round % 2 == 0 {
            random_text(&mut rng, n, sigma)
        } else {
            repetitive_text(&mut rng, n, sigma)
        };
        check_against_oracle(&text, None);
        check_against_oracle(&text, Some(rng.gen_range(1..5)));
    }
}

#[test]
fn height_is_logarithmic_without_heuristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..200 {
        let n = rng.gen_range(1..5000);
        let text = if round % 2 == 0 {
            random_text(&mut rng, n, 2)
        } else {
            repetitive_text(&mut rng, n, 2)
        };
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        assert!(
            g.heights() as u32 <= n.ilog2() + 1,
            "n {n} tau {}",
            g.heights()
        );
    }
}

#[test]
fn occurrences_follow_the_derivation_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let text = repetitive_text(&mut rng, 2000, 3);
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        for id in FIRST_NONTERMINAL..FIRST_NONTERMINAL + g.num_rules() as Symbol {
            let mut got = g.occurrences_in_text(id).unwrap();
            got.sort_unstable();
            assert_eq!(got, tree_positions(&g, id), "rule {id}");
            let expansion = g.extract(id, 1, g.expansion_length(id).unwrap()).unwrap();
            for &p in &got {
                assert_eq!(
                    &text[p as usize - 1..p as usize - 1 + expansion.len()],
                    expansion.as_slice()
                );
            }
        }
    }
}

#[test]
fn rule_expansions_are_substrings() {
    let text = repetitive_text(&mut ChaCha8Rng::seed_from_u64(4), 3000, 4);
    let g = Grammar::build(&text, &BuildOptions::default()).unwrap();
    for id in FIRST_NONTERMINAL..FIRST_NONTERMINAL + g.num_rules() as Symbol {
        let e = g.extract(id, 1, g.expansion_length(id).unwrap()).unwrap();
        assert!(!naive_positions(&text, &e).is_empty());
    }
}

#[test]
fn staircase_does_not_compress() {
    for m in [10, 100, 300] {
        let text = staircase(m);
        for opts in [BuildOptions::default(), BuildOptions::without_heuristic()] {
            let g = Grammar::build(&text, &opts).unwrap();
            assert!(g.stats().total_rhs_size >= text.len() as u64);
            assert_eq!(g.decompress(), text);
        }
    }
}

#[test]
fn build_is_deterministic() {
    let text = repetitive_text(&mut ChaCha8Rng::seed_from_u64(5), 5000, 4);
    let a = Grammar::build(&text, &BuildOptions::default())
        .unwrap()
        .to_bytes()
        .unwrap();
    let b = Grammar::build(&text, &BuildOptions::default())
        .unwrap()
        .to_bytes()
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn empty_input_is_rejected() {
    assert!(matches!(
        Grammar::build(b"", &BuildOptions::default()),
        Err(gcis::Error::EmptyInput)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip_and_invariants(text in prop::collection::vec(any::<u8>(), 1..400), heuristic in any::<bool>()) {
        let opts = BuildOptions { abort_heuristic: heuristic, max_height: None };
        let g = Grammar::build(&text, &opts).unwrap();
        prop_assert_eq!(g.decompress(), text.clone());
        prop_assert!(g.validate().is_ok());
        let g_sum: u64 = (FIRST_NONTERMINAL..FIRST_NONTERMINAL + g.num_rules() as Symbol)
            .map(|id| g.rhs(id).unwrap().len() as u64)
            .sum();
        prop_assert_eq!(g.stats().total_rhs_size, g_sum);
    }

    #[test]
    fn small_alphabet_round_trip(text in prop::collection::vec(b'a'..b'c', 1..600)) {
        let g = Grammar::build(&text, &BuildOptions::without_heuristic()).unwrap();
        prop_assert_eq!(g.decompress(), text);
    }
}

//! Grammar construction: repeated LMS factorization of the text.
//!
//! Level 0 is the text. Every level is cut at its S* positions, each distinct
//! factor becomes one non-terminal of the next height, and the factors are
//! replaced by their ids. Ids are handed out per height in lexicographic order
//! of the factor contents, so the id order of one height equals the order of
//! its right-hand sides and all characters sort below all non-terminals.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::{Symbol, FIRST_NONTERMINAL};

/// Knobs for [`build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Stop as soon as another height would not make the plain encoding smaller.
    pub abort_heuristic: bool,
    /// Upper bound on the number of heights, start symbol included.
    pub max_height: Option<u16>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            abort_heuristic: true,
            max_height: None,
        }
    }
}

impl BuildOptions {
    pub fn without_heuristic() -> Self {
        BuildOptions {
            abort_heuristic: false,
            max_height: None,
        }
    }
}

/// Which condition ended the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum StopReason {
    /// The top level string has pairwise distinct symbols.
    UniqueSymbols = 0,
    /// The top level string factorizes into at most two factors.
    FewFactors = 1,
    /// Another height would have grown the plain encoding.
    Heuristic = 2,
    /// `max_height` was reached.
    MaxHeight = 3,
}

impl StopReason {
    pub fn from_code(code: u8) -> Option<Self> {
        Some(match code {
            0 => StopReason::UniqueSymbols,
            1 => StopReason::FewFactors,
            2 => StopReason::Heuristic,
            3 => StopReason::MaxHeight,
            _ => return None,
        })
    }
}

/// Rules of a freshly built grammar, flat and in final id order.
///
/// Rule `k` has id `256 + k`; its right-hand side is
/// `rhs[offsets[k]..offsets[k + 1]]`. The last rule is the start rule and
/// sits alone on the topmost height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub text_len: u64,
    pub height_counts: Vec<u32>,
    pub rhs: Vec<Symbol>,
    pub offsets: Vec<u64>,
    pub stop: StopReason,
    pub abort_heuristic: bool,
}

impl RuleSet {
    pub fn num_rules(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn rule(&self, k: usize) -> &[Symbol] {
        &self.rhs[self.offsets[k] as usize..self.offsets[k + 1] as usize]
    }

    pub fn rules(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        (0..self.num_rules()).map(move |k| self.rule(k))
    }

    /// `|π*(X)|` for every rule, in id order. Children always have smaller
    /// ids than their parent, so a single forward pass suffices.
    pub fn expansion_lengths(&self) -> Vec<u64> {
        let mut lens: Vec<u64> = Vec::with_capacity(self.num_rules());
        for k in 0..self.num_rules() {
            let total = self
                .rule(k)
                .iter()
                .map(|&c| {
                    if c < FIRST_NONTERMINAL {
                        1
                    } else {
                        lens[(c - FIRST_NONTERMINAL) as usize]
                    }
                })
                .sum();
            lens.push(total);
        }
        lens
    }
}

/// Returns true when the level about to be committed should be dropped.
///
/// The plain encoding pays one symbol per right-hand side entry plus one
/// offset and one length entry per rule. Replacing `level_len` symbols of the
/// start rule by `next_len` symbols is only worth it if that cost is smaller.
pub fn should_stop(
    level_len: usize,
    next_len: usize,
    new_rules_size: usize,
    new_rules_count: usize,
    opts: &BuildOptions,
) -> bool {
    opts.abort_heuristic && next_len + new_rules_size + 2 * new_rules_count >= level_len
}

/// Sorts distinct factors and returns, for each input index, its rank.
pub fn rank_factors<T: Ord>(factors: &[&[T]]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..factors.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| factors[a as usize].cmp(factors[b as usize]));
    let mut rank = vec![0u32; factors.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i as usize] = r as u32;
    }
    rank
}

/// Bit mask of factor starts: position 0 plus every S* position.
fn boundary_mask<T: Ord + Copy>(s: &[T]) -> Vec<u64> {
    let n = s.len();
    let mut is_l = vec![0u64; n.div_ceil(64)];
    let mut prev_l = false; // last position is S
    for i in (0..n.saturating_sub(1)).rev() {
        let l = match s[i].cmp(&s[i + 1]) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => prev_l,
        };
        if l {
            is_l[i / 64] |= 1 << (i % 64);
        }
        prev_l = l;
    }
    let mut mask = vec![0u64; n.div_ceil(64)];
    mask[0] |= 1;
    for i in 1..n {
        let l_here = is_l[i / 64] >> (i % 64) & 1 == 1;
        let l_prev = is_l[(i - 1) / 64] >> ((i - 1) % 64) & 1 == 1;
        if !l_here && l_prev {
            mask[i / 64] |= 1 << (i % 64);
        }
    }
    mask
}

fn factor_starts(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

struct LevelOutcome {
    next: Vec<Symbol>,
    rules: Vec<Symbol>,
    rule_offsets: Vec<u64>,
}

/// Factorizes one level. Returns `None` if it has at most two factors.
fn reduce_level<T>(level: &[T], first_id: Symbol) -> Option<LevelOutcome>
where
    T: Ord + Copy + Hash + Into<Symbol>,
{
    let mask = boundary_mask(level);
    let count: u64 = mask.iter().map(|w| u64::from(w.count_ones())).sum();
    if count <= 2 {
        return None;
    }
    let mut ids: FxHashMap<&[T], u32> = FxHashMap::default();
    let mut distinct: Vec<&[T]> = Vec::new();
    let mut next: Vec<Symbol> = Vec::with_capacity(count as usize);
    let mut starts = factor_starts(&mask).peekable();
    while let Some(b) = starts.next() {
        let e = starts.peek().copied().unwrap_or(level.len());
        let f = &level[b..e];
        let id = *ids.entry(f).or_insert_with(|| {
            distinct.push(f);
            distinct.len() as u32 - 1
        });
        next.push(id);
    }
    let rank = rank_factors(&distinct);
    for x in next.iter_mut() {
        *x = first_id + rank[*x as usize];
    }
    let mut sorted = vec![&[][..]; distinct.len()];
    for (i, f) in distinct.into_iter().enumerate() {
        sorted[rank[i] as usize] = f;
    }
    let mut rules = Vec::new();
    let mut rule_offsets = vec![0u64];
    for f in sorted {
        rules.extend(f.iter().map(|&c| c.into()));
        rule_offsets.push(rules.len() as u64);
    }
    Some(LevelOutcome {
        next,
        rules,
        rule_offsets,
    })
}

/// Builds the grammar of `text`.
pub fn build(text: &[u8], opts: &BuildOptions) -> Result<RuleSet> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    if text.len() as u64 >= u64::from(u32::MAX) {
        return Err(Error::Overflow(text.len() as u64));
    }
    let mut set = RuleSet {
        text_len: text.len() as u64,
        height_counts: Vec::new(),
        rhs: Vec::new(),
        offsets: vec![0],
        stop: StopReason::UniqueSymbols,
        abort_heuristic: opts.abort_heuristic,
    };
    let mut seen = [false; 256];
    let unique_bytes = text.len() <= 256
        && text
            .iter()
            .all(|&c| !std::mem::replace(&mut seen[c as usize], true));

    let top: Vec<Symbol> = if unique_bytes {
        text.iter().map(|&c| Symbol::from(c)).collect()
    } else {
        match step(text, &mut set, opts) {
            None => text.iter().map(|&c| Symbol::from(c)).collect(),
            Some(mut level) => loop {
                let distinct = *set.height_counts.last().unwrap() as usize;
                if distinct == level.len() {
                    set.stop = StopReason::UniqueSymbols;
                    break level;
                }
                match step(&level, &mut set, opts) {
                    None => break level,
                    Some(next) => level = next,
                }
            },
        }
    };
    let next_id = FIRST_NONTERMINAL as u64 + set.num_rules() as u64;
    if next_id > u64::from(u32::MAX) {
        return Err(Error::Overflow(next_id));
    }
    set.rhs.extend_from_slice(&top);
    set.offsets.push(set.rhs.len() as u64);
    set.height_counts.push(1);
    Ok(set)
}

/// Tries to add one height on top of `level`; records why it stopped otherwise.
fn step<T>(level: &[T], set: &mut RuleSet, opts: &BuildOptions) -> Option<Vec<Symbol>>
where
    T: Ord + Copy + Hash + Into<Symbol>,
{
    if let Some(max) = opts.max_height {
        // committing adds one height below the start rule
        if set.height_counts.len() + 2 > usize::from(max) {
            set.stop = StopReason::MaxHeight;
            return None;
        }
    }
    let first_id = FIRST_NONTERMINAL + set.num_rules() as Symbol;
    let Some(out) = reduce_level(level, first_id) else {
        set.stop = StopReason::FewFactors;
        return None;
    };
    let new_count = out.rule_offsets.len() - 1;
    if should_stop(
        level.len(),
        out.next.len(),
        out.rules.len(),
        new_count,
        opts,
    ) {
        set.stop = StopReason::Heuristic;
        return None;
    }
    let base = set.rhs.len() as u64;
    set.rhs.extend_from_slice(&out.rules);
    set.offsets
        .extend(out.rule_offsets[1..].iter().map(|o| base + o));
    set.height_counts.push(new_count as u32);
    Some(out.next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acabacab_without_heuristic() {
        let set = build(b"acabacab", &BuildOptions::without_heuristic()).unwrap();
        assert_eq!(set.height_counts, vec![2, 3, 1]);
        let rules: Vec<Vec<Symbol>> = set.rules().map(<[Symbol]>::to_vec).collect();
        assert_eq!(
            rules,
            vec![
                vec![97, 98],
                vec![97, 99],
                vec![256],
                vec![256, 257],
                vec![257],
                vec![260, 259, 258],
            ]
        );
        assert_eq!(set.stop, StopReason::UniqueSymbols);
        assert_eq!(set.expansion_lengths(), vec![2, 2, 2, 4, 2, 8]);
    }

    #[test]
    fn acabacab_with_heuristic_keeps_text() {
        let set = build(b"acabacab", &BuildOptions::default()).unwrap();
        assert_eq!(set.height_counts, vec![1]);
        assert_eq!(set.stop, StopReason::Heuristic);
        assert_eq!(set.rule(0), b"acabacab".map(Symbol::from).as_slice());
    }

    #[test]
    fn single_character() {
        let set = build(b"a", &BuildOptions::default()).unwrap();
        assert_eq!(set.height_counts, vec![1]);
        assert_eq!(set.rule(0), &[97]);
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(
            build(b"", &BuildOptions::default()),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn max_height_caps() {
        let text = b"abaababaabaababaababaabaababaabaab".repeat(4);
        let set = build(
            &text,
            &BuildOptions {
                abort_heuristic: false,
                max_height: Some(2),
            },
        )
        .unwrap();
        assert_eq!(set.height_counts.len(), 2);
        assert_eq!(set.stop, StopReason::MaxHeight);
        let set = build(
            &text,
            &BuildOptions {
                abort_heuristic: false,
                max_height: Some(1),
            },
        )
        .unwrap();
        assert_eq!(set.height_counts, vec![1]);
    }

    #[test]
    fn stop_formula() {
        let on = BuildOptions::default();
        assert!(!should_stop(100, 50, 30, 5, &on));
        assert!(should_stop(10, 6, 8, 3, &on));
        assert!(!should_stop(
            10,
            6,
            8,
            3,
            &BuildOptions::without_heuristic()
        ));
    }

    #[test]
    fn ranking() {
        let f: Vec<&[u8]> = vec![b"ac", b"ab"];
        assert_eq!(rank_factors(&f), vec![1, 0]);
        let g: Vec<&[u32]> = vec![&[256, 257], &[257], &[256]];
        assert_eq!(rank_factors(&g), vec![1, 2, 0]);
        let h: Vec<&[u8]> = vec![b"b", b"ab"];
        assert_eq!(rank_factors(&h), vec![1, 0]);
    }

    #[test]
    fn mask_matches_factorize() {
        let s = b"mississippimississippi";
        let mask = boundary_mask(s);
        let starts: Vec<usize> = factor_starts(&mask).collect();
        assert_eq!(starts, crate::lms::factorize(s).unwrap().boundaries());
    }
}

//! Pattern matching on the grammar.
//!
//! A query runs in four steps:
//!
//! 1. Parse the pattern with the text's own rules. At every height the
//!    pattern is cut at the S* positions that cannot be disturbed by the
//!    surrounding text; the first and last factor are set aside as fringes and
//!    every inner factor must exist as a rule of the next height, otherwise
//!    the pattern cannot occur.
//! 2. Split the top string into `C_p · C · C_s`. Every occurrence of the
//!    pattern places its core `C` inside a single right-hand side one height
//!    above the top string.
//! 3. Find all occurrences of `C` in those right-hand sides.
//! 4. From each, climb the reverse edges until the node is long enough to
//!    contain the whole pattern window, compare the window character by
//!    character and report every text position of that node.

use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Scratch};
use crate::kmp::Kmp;
use crate::lms::{self, Factorization};
use crate::store::RuleStore;
use crate::Symbol;

/// Query-time switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocateOptions {
    /// When the core starts at a factor boundary, look it up as a prefix of
    /// right-hand sides instead of scanning all of them.
    pub prefix_fast_path: bool,
    /// Always anchor on the rarest single character.
    pub force_fallback: bool,
}

/// The pattern rewritten with the text's non-terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPattern {
    /// Height of the top string (0 = characters).
    pub height: usize,
    pub top: Vec<Symbol>,
    /// Factorization of `top` used for the core split.
    pub top_factors: Factorization,
    /// First factor set aside at each height below `height`.
    pub left_fringes: Vec<Vec<Symbol>>,
    /// Last factor set aside at each height below `height`.
    pub right_fringes: Vec<Vec<Symbol>>,
    /// Characters covered by the left fringes.
    pub prefix_chars: u64,
    /// Characters covered by the right fringes.
    pub suffix_chars: u64,
}

/// Split of a top string into `C_p · C · C_s`, as lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreSplit {
    pub prefix: usize,
    pub core: usize,
    pub suffix: usize,
}

impl CoreSplit {
    pub fn whole(len: usize) -> Self {
        CoreSplit {
            prefix: 0,
            core: len,
            suffix: 0,
        }
    }
}

/// The anchor of a query: a symbol string of height `height` together with
/// the number of pattern characters on either side of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    pub height: usize,
    pub symbols: Vec<Symbol>,
    pub prefix_chars: u64,
    pub suffix_chars: u64,
    /// `C_p` was non-empty, so every occurrence starts a right-hand side.
    pub at_boundary: bool,
    /// Chosen by the single-character fallback.
    pub fallback: bool,
}

/// `C` found at `rhs(rule)[index..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoreOccurrence {
    pub rule: Symbol,
    pub index: u32,
}

/// Answer of [`Grammar::locate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocateReport {
    /// Sorted 1-based text positions.
    pub positions: Vec<u64>,
    pub occ: u64,
    /// Occurrences of the core in right-hand sides.
    pub occ_core: u64,
    /// Nodes visited while climbing from core occurrences.
    pub visited_nodes: u64,
    /// Climbs that ended, either at a node long enough to hold the pattern
    /// window or at the start rule. Every climb visits at most `τ` nodes.
    pub candidate_windows: u64,
    /// Height of the core (0 when no parse was possible).
    pub pattern_height: usize,
    pub used_fallback: bool,
    pub parse_time: Duration,
    pub total_time: Duration,
}

/// Parses `pattern` with the rules of `g`.
///
/// Returns `Ok(None)` when an inner factor has no rule, which proves that the
/// pattern does not occur.
pub fn parse_pattern<S: RuleStore>(
    pattern: &[u8],
    g: &Grammar<S>,
) -> Result<Option<ParsedPattern>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    // the core must lie inside some rule of height `height + 1`
    let max_height = g.heights() - 1;
    let mut level: Vec<Symbol> = pattern.iter().map(|&c| Symbol::from(c)).collect();
    let mut parsed = ParsedPattern {
        height: 0,
        top: Vec::new(),
        top_factors: lms::factorize_in_context(&level)?,
        left_fringes: Vec::new(),
        right_fringes: Vec::new(),
        prefix_chars: 0,
        suffix_chars: 0,
    };
    loop {
        let factors = lms::factorize_in_context(&level)?;
        if factors.len() <= 2 || parsed.height >= max_height {
            parsed.top = level;
            parsed.top_factors = factors;
            return Ok(Some(parsed));
        }
        let z = factors.len();
        let mut next = Vec::with_capacity(z - 2);
        for j in 1..z - 1 {
            match g.lookup(&level[factors.range(j)], parsed.height + 1) {
                Some(id) => next.push(id),
                None => return Ok(None),
            }
        }
        let left = level[factors.range(0)].to_vec();
        let right = level[factors.range(z - 1)].to_vec();
        parsed.prefix_chars += left.iter().map(|&c| g.len_of(c)).sum::<u64>();
        parsed.suffix_chars += right.iter().map(|&c| g.len_of(c)).sum::<u64>();
        parsed.left_fringes.push(left);
        parsed.right_fringes.push(right);
        parsed.height += 1;
        level = next;
    }
}

/// Splits a top string with at most two factors into `C_p · C · C_s`.
///
/// `C_p` is the first factor when there are two. `C_s` is the last run of
/// equal symbols when its symbol is smaller than the one of the run before.
/// `C` is what remains and may come out empty.
pub fn choose_core(top: &[Symbol], factors: &Factorization) -> CoreSplit {
    if top.is_empty() {
        return CoreSplit::whole(0);
    }
    let prefix = if factors.len() == 2 {
        factors.range(0).len()
    } else {
        0
    };
    let runs = lms::run_length_encode(top).expect("non-empty top string");
    let suffix = match runs.as_slice() {
        [.., (prev, _), (last, count)] if last < prev => *count,
        _ => 0,
    };
    let core = top.len().saturating_sub(prefix + suffix);
    CoreSplit {
        prefix: prefix.min(top.len()),
        core,
        suffix: if core == 0 {
            top.len() - prefix.min(top.len())
        } else {
            suffix
        },
    }
}

/// Anchors on the single pattern character that is rarest among the
/// right-hand sides of height 1 (ties go to the leftmost).
pub fn degenerate_core_fallback<S: RuleStore>(pattern: &[u8], g: &Grammar<S>) -> Core {
    let (i, &c) = pattern
        .iter()
        .enumerate()
        .min_by_key(|&(i, &c)| (g.parents_of(Symbol::from(c)).len(), i))
        .expect("non-empty pattern");
    Core {
        height: 0,
        symbols: vec![Symbol::from(c)],
        prefix_chars: i as u64,
        suffix_chars: (pattern.len() - i - 1) as u64,
        at_boundary: false,
        fallback: true,
    }
}

/// Derives the core of a parsed pattern, falling back to a single character
/// when the split leaves nothing.
pub fn select_core<S: RuleStore>(
    pattern: &[u8],
    parsed: &ParsedPattern,
    g: &Grammar<S>,
    opts: &LocateOptions,
) -> Core {
    if opts.force_fallback || pattern.len() <= 2 {
        return degenerate_core_fallback(pattern, g);
    }
    let split = if parsed.height + 1 >= g.heights() {
        // everything at this height sits inside the start rule
        CoreSplit::whole(parsed.top.len())
    } else {
        choose_core(&parsed.top, &parsed.top_factors)
    };
    if split.core == 0 {
        return degenerate_core_fallback(pattern, g);
    }
    let top = &parsed.top;
    let chars = |s: &[Symbol]| s.iter().map(|&c| g.len_of(c)).sum::<u64>();
    Core {
        height: parsed.height,
        symbols: top[split.prefix..split.prefix + split.core].to_vec(),
        prefix_chars: parsed.prefix_chars + chars(&top[..split.prefix]),
        suffix_chars: parsed.suffix_chars + chars(&top[split.prefix + split.core..]),
        at_boundary: split.prefix > 0,
        fallback: false,
    }
}

/// All places where `core.symbols` occurs inside a right-hand side of height
/// `core.height + 1`, overlapping occurrences included.
pub fn find_core_occurrences<S: RuleStore>(
    core: &Core,
    g: &Grammar<S>,
    opts: &LocateOptions,
) -> Vec<CoreOccurrence> {
    let height = core.height + 1;
    let mut out = Vec::new();
    if opts.prefix_fast_path && core.at_boundary {
        for rule in g.prefix_candidates(&core.symbols, height) {
            out.push(CoreOccurrence { rule, index: 0 });
        }
        return out;
    }
    let kmp = Kmp::new(&core.symbols);
    let mut rhs = Vec::new();
    for rule in g.height_range(height) {
        g.store().rhs_into(rule, &mut rhs);
        kmp.for_each_match(&rhs, |i| {
            out.push(CoreOccurrence {
                rule,
                index: i as u32,
            })
        });
    }
    out
}

/// Per-query state shared by all core occurrences.
#[derive(Default)]
struct Collector {
    scratch: Scratch,
    rhs: Vec<Symbol>,
    verified: FxHashMap<(Symbol, u64), bool>,
    positions: Vec<u64>,
    visited: u64,
    leaves: u64,
}

/// Extends one core occurrence to pattern occurrences and appends their
/// 0-based text positions.
fn verify_and_collect<S: RuleStore>(
    occ: CoreOccurrence,
    core: &Core,
    pattern: &[u8],
    g: &Grammar<S>,
    st: &mut Collector,
) {
    let m = pattern.len() as u64;
    let core_offset = g.child_offset(occ.rule, occ.index, &mut st.rhs);
    let start = g.start();
    let mut stack = vec![(occ.rule, core_offset as i64 - core.prefix_chars as i64)];
    while let Some((node, window)) = stack.pop() {
        st.visited += 1;
        if window >= 0 && window as u64 + m <= g.len_of(node) {
            st.leaves += 1;
            let window = window as u64;
            if st.verified.contains_key(&(node, window)) {
                continue;
            }
            let ok = g.matches_at(node, window, pattern, &mut st.scratch);
            st.verified.insert((node, window), ok);
            if ok {
                let positions = &mut st.positions;
                g.for_each_root_path(node, window, &mut st.rhs, &mut |p| positions.push(p));
            }
            continue;
        }
        if node == start {
            st.leaves += 1;
            continue;
        }
        for e in g.parents_of(node) {
            let off = g.child_offset(e.parent, e.index, &mut st.rhs);
            stack.push((e.parent, window + off as i64));
        }
    }
}

impl<S: RuleStore> Grammar<S> {
    /// All occurrences of `pattern` in the text.
    pub fn locate(&self, pattern: &[u8]) -> Result<LocateReport> {
        self.locate_with(pattern, &LocateOptions::default())
    }

    pub fn locate_with(&self, pattern: &[u8], opts: &LocateOptions) -> Result<LocateReport> {
        let t0 = Instant::now();
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut report = LocateReport::default();
        if pattern.len() as u64 > self.text_len() {
            report.total_time = t0.elapsed();
            return Ok(report);
        }
        let parsed = parse_pattern(pattern, self)?;
        report.parse_time = t0.elapsed();
        let Some(parsed) = parsed else {
            report.total_time = t0.elapsed();
            return Ok(report);
        };
        let core = select_core(pattern, &parsed, self, opts);
        report.pattern_height = core.height;
        report.used_fallback = core.fallback;
        let occurrences = find_core_occurrences(&core, self, opts);
        report.occ_core = occurrences.len() as u64;

        let mut st = Collector::default();
        for occ in occurrences {
            verify_and_collect(occ, &core, pattern, self, &mut st);
        }
        let mut positions = st.positions;
        positions.sort_unstable();
        debug_assert!(
            positions.windows(2).all(|w| w[0] != w[1]),
            "a text occurrence was reached from two core occurrences"
        );
        positions.dedup();
        debug_assert!(
            positions.iter().all(|&p| self
                .extract(self.start(), p + 1, pattern.len() as u64)
                .ok()
                .as_deref()
                == Some(pattern)),
            "reported a position that does not match"
        );
        report.positions = positions.into_iter().map(|p| p + 1).collect();
        report.occ = report.positions.len() as u64;
        report.visited_nodes = st.visited;
        report.candidate_windows = st.leaves;
        report.total_time = t0.elapsed();
        Ok(report)
    }

    /// Number of occurrences of `pattern`.
    pub fn count(&self, pattern: &[u8]) -> Result<u64> {
        Ok(self.locate(pattern)?.occ)
    }
}

/// Distinct symbols of a string; used by tests and diagnostics.
pub fn distinct_symbols(s: &[Symbol]) -> usize {
    s.iter().collect::<FxHashSet<_>>().len()
}

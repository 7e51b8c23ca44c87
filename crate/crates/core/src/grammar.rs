//! Logical view of a built grammar on top of any [`RuleStore`].

use std::fmt;
use std::ops::Range;

use crate::builder::{self, BuildOptions, StopReason};
use crate::error::{Error, Result};
use crate::store::{self, AnyStore, Layout, NepStore, RuleStore, UniStore};
use crate::{Symbol, FIRST_NONTERMINAL};

/// One occurrence of a symbol in a right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParentEdge {
    pub parent: Symbol,
    /// 0-based position inside `rhs(parent)`.
    pub index: u32,
}

/// Size figures of a grammar, in the order `|Γ|, g, |rhs(start)|, τ, n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarStats {
    pub num_nonterminals: u64,
    pub total_rhs_size: u64,
    pub start_rhs_len: u64,
    pub heights: u64,
    pub text_len: u64,
}

impl fmt::Display for GrammarStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.num_nonterminals,
            self.total_rhs_size,
            self.start_rhs_len,
            self.heights,
            self.text_len
        )
    }
}

/// A grammar-compressed text with reverse edges.
///
/// Immutable once constructed; all queries take `&self` and keep their
/// scratch space local, so a grammar can be shared between threads.
#[derive(Debug, Clone)]
pub struct Grammar<S = NepStore> {
    store: S,
    parent_offsets: Vec<u64>,
    parent_edges: Vec<ParentEdge>,
    alphabet_size: usize,
}

impl Grammar<NepStore> {
    /// Builds the grammar of `text` with the plain store.
    pub fn build(text: &[u8], opts: &BuildOptions) -> Result<Self> {
        let rules = builder::build(text, opts)?;
        Ok(Grammar::from_store(NepStore::from_rules(&rules)))
    }
}

impl Grammar<UniStore> {
    /// Builds the grammar of `text` with the succinct store.
    pub fn build_uni(text: &[u8], opts: &BuildOptions) -> Result<Self> {
        let rules = builder::build(text, opts)?;
        Ok(Grammar::from_store(UniStore::from_rules(&rules)?))
    }
}

impl Grammar<AnyStore> {
    /// Loads an index file image.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Ok(Grammar::from_store(store::deserialize(bytes)?))
    }
}

impl<S: RuleStore> Grammar<S> {
    pub fn from_store(store: S) -> Self {
        let rules = store.num_rules();
        let symbols = FIRST_NONTERMINAL as usize + rules;
        let mut counts = vec![0u64; symbols + 1];
        let mut buf = Vec::new();
        for k in 0..rules {
            store.rhs_into(FIRST_NONTERMINAL + k as Symbol, &mut buf);
            for &c in &buf {
                counts[c as usize + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut edges = vec![
            ParentEdge {
                parent: 0,
                index: 0
            };
            *counts.last().unwrap() as usize
        ];
        for k in 0..rules {
            let id = FIRST_NONTERMINAL + k as Symbol;
            store.rhs_into(id, &mut buf);
            for (j, &c) in buf.iter().enumerate() {
                let slot = &mut fill[c as usize];
                edges[*slot as usize] = ParentEdge {
                    parent: id,
                    index: j as u32,
                };
                *slot += 1;
            }
        }
        let alphabet_size = (0..FIRST_NONTERMINAL as usize)
            .filter(|&c| counts[c + 1] > counts[c])
            .count();
        Grammar {
            store,
            parent_offsets: counts,
            parent_edges: edges,
            alphabet_size,
        }
    }

    pub fn store(&self) -> &S {
        &self.store
    }

    pub fn layout(&self) -> &Layout {
        self.store.layout()
    }

    /// Number of heights τ; the start symbol has height τ.
    pub fn heights(&self) -> usize {
        self.layout().heights()
    }

    pub fn height_range(&self, h: usize) -> Range<Symbol> {
        self.layout().height_range(h)
    }

    pub fn height_of(&self, id: Symbol) -> usize {
        self.layout().height_of(id)
    }

    pub fn start(&self) -> Symbol {
        FIRST_NONTERMINAL + self.store.num_rules() as Symbol - 1
    }

    pub fn text_len(&self) -> u64 {
        self.layout().text_len
    }

    pub fn num_rules(&self) -> usize {
        self.store.num_rules()
    }

    /// Distinct characters occurring in the text.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn stop_reason(&self) -> StopReason {
        self.layout().stop
    }

    fn check(&self, id: Symbol) -> Result<()> {
        if (id as usize) < FIRST_NONTERMINAL as usize + self.num_rules() {
            Ok(())
        } else {
            Err(Error::UnknownSymbol(id))
        }
    }

    /// Right-hand side of `id`; a character is its own right-hand side.
    pub fn rhs(&self, id: Symbol) -> Result<Vec<Symbol>> {
        self.check(id)?;
        let mut out = Vec::new();
        self.rhs_into(id, &mut out);
        Ok(out)
    }

    pub(crate) fn rhs_into(&self, id: Symbol, out: &mut Vec<Symbol>) {
        if id < FIRST_NONTERMINAL {
            out.clear();
            out.push(id);
        } else {
            self.store.rhs_into(id, out);
        }
    }

    pub fn expansion_length(&self, id: Symbol) -> Result<u64> {
        self.check(id)?;
        Ok(self.len_of(id))
    }

    #[inline]
    pub(crate) fn len_of(&self, id: Symbol) -> u64 {
        if id < FIRST_NONTERMINAL {
            1
        } else {
            self.store.rule_expansion(id)
        }
    }

    /// Every place `id` appears on a right-hand side.
    pub fn parents(&self, id: Symbol) -> Result<&[ParentEdge]> {
        self.check(id)?;
        Ok(self.parents_of(id))
    }

    #[inline]
    pub(crate) fn parents_of(&self, id: Symbol) -> &[ParentEdge] {
        let i = id as usize;
        &self.parent_edges[self.parent_offsets[i] as usize..self.parent_offsets[i + 1] as usize]
    }

    /// Character offset of child `index` inside the expansion of `parent`.
    pub(crate) fn child_offset(&self, parent: Symbol, index: u32, buf: &mut Vec<Symbol>) -> u64 {
        self.rhs_into(parent, buf);
        buf[..index as usize].iter().map(|&c| self.len_of(c)).sum()
    }

    /// `π*(id)[from .. from + len]` with a 1-based `from`.
    pub fn extract(&self, id: Symbol, from: u64, len: u64) -> Result<Vec<u8>> {
        self.check(id)?;
        let available = self.len_of(id);
        if from == 0 || from - 1 > available || len > available - (from - 1) {
            return Err(Error::OutOfRange {
                from,
                len,
                available,
            });
        }
        let mut out = Vec::with_capacity(len as usize);
        self.walk(id, from - 1, len, &mut Scratch::default(), &mut |c| {
            out.push(c);
            true
        });
        Ok(out)
    }

    /// Checks whether `π*(id)[offset..]` (0-based) starts with `pattern`,
    /// stopping at the first mismatching character.
    pub(crate) fn matches_at(
        &self,
        id: Symbol,
        offset: u64,
        pattern: &[u8],
        scratch: &mut Scratch,
    ) -> bool {
        if offset + pattern.len() as u64 > self.len_of(id) {
            return false;
        }
        let mut i = 0;
        self.walk(id, offset, pattern.len() as u64, scratch, &mut |c| {
            let ok = pattern[i] == c;
            i += 1;
            ok
        }) && i == pattern.len()
    }

    /// Depth-first descent over the characters of `π*(id)[from .. from + len]`.
    /// Returns false as soon as `sink` does.
    fn walk(
        &self,
        id: Symbol,
        from: u64,
        len: u64,
        scratch: &mut Scratch,
        sink: &mut dyn FnMut(u8) -> bool,
    ) -> bool {
        self.walk_inner(id, from, len, 0, scratch, sink)
    }

    fn walk_inner(
        &self,
        id: Symbol,
        mut from: u64,
        mut len: u64,
        depth: usize,
        scratch: &mut Scratch,
        sink: &mut dyn FnMut(u8) -> bool,
    ) -> bool {
        if len == 0 {
            return true;
        }
        if id < FIRST_NONTERMINAL {
            return sink(id as u8);
        }
        if scratch.bufs.len() <= depth {
            scratch.bufs.resize_with(depth + 1, Vec::new);
        }
        let mut rhs = std::mem::take(&mut scratch.bufs[depth]);
        self.store.rhs_into(id, &mut rhs);
        let mut ok = true;
        for &child in &rhs {
            let child_len = self.len_of(child);
            if from >= child_len {
                from -= child_len;
                continue;
            }
            let take = len.min(child_len - from);
            if !self.walk_inner(child, from, take, depth + 1, scratch, sink) {
                ok = false;
                break;
            }
            len -= take;
            from = 0;
            if len == 0 {
                break;
            }
        }
        scratch.bufs[depth] = rhs;
        ok
    }

    /// 1-based text positions at which `π*(id)` occurs as a node of the parse
    /// tree, one per root path. Not sorted.
    pub fn occurrences_in_text(&self, id: Symbol) -> Result<Vec<u64>> {
        self.check(id)?;
        let mut out = Vec::new();
        self.for_each_root_path(id, 0, &mut Vec::new(), &mut |p| out.push(p + 1));
        Ok(out)
    }

    /// Calls `emit` with `base` plus the 0-based text offset of `id`, once per
    /// path from `id` up to the start symbol.
    pub(crate) fn for_each_root_path(
        &self,
        id: Symbol,
        base: u64,
        buf: &mut Vec<Symbol>,
        emit: &mut dyn FnMut(u64),
    ) {
        let start = self.start();
        let mut stack = vec![(id, base)];
        while let Some((node, acc)) = stack.pop() {
            if node == start {
                emit(acc);
                continue;
            }
            for e in self.parents_of(node) {
                let off = self.child_offset(e.parent, e.index, buf);
                stack.push((e.parent, acc + off));
            }
        }
    }

    pub fn stats(&self) -> GrammarStats {
        GrammarStats {
            num_nonterminals: self.num_rules() as u64,
            total_rhs_size: self.parent_edges.len() as u64,
            start_rhs_len: self.store.rhs_len(self.start()) as u64,
            heights: self.heights() as u64,
            text_len: self.text_len(),
        }
    }

    /// The whole text.
    pub fn decompress(&self) -> Vec<u8> {
        self.extract(self.start(), 1, self.text_len())
            .expect("start symbol covers the text")
    }

    pub fn lookup(&self, s: &[Symbol], height: usize) -> Option<Symbol> {
        self.store.lookup(s, height)
    }

    pub fn prefix_candidates(&self, s: &[Symbol], height: usize) -> Range<Symbol> {
        self.store.prefix_candidates(s, height)
    }

    /// Reads the derivation tree at height `h` from left to right
    /// (height 0 yields the text). Materializes the whole level.
    pub fn level_string(&self, h: usize) -> Vec<Symbol> {
        let mut level = vec![self.start()];
        let mut buf = Vec::new();
        for _ in h..self.heights() {
            let mut next = Vec::new();
            for &x in &level {
                self.rhs_into(x, &mut buf);
                next.extend_from_slice(&buf);
            }
            level = next;
        }
        level
    }

    /// Index file image of this grammar.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        store::serialize(&self.store)
    }

    /// Checks the structural invariants of the grammar and reports the first
    /// violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let layout = self.layout();
        let start = self.start();
        let mut prev: Vec<Symbol> = Vec::new();
        let mut rhs = Vec::new();
        for h in 1..=self.heights() {
            prev.clear();
            for id in self.height_range(h) {
                self.store.rhs_into(id, &mut rhs);
                if rhs.is_empty() {
                    return Err(format!("rule {id} is empty"));
                }
                if let Some(&bad) = rhs.iter().find(|&&c| layout.height_of(c) != h - 1) {
                    return Err(format!(
                        "rule {id} of height {h} uses {bad} of height {}",
                        layout.height_of(bad)
                    ));
                }
                if id != start {
                    let ell = 1 + rhs.windows(2).take_while(|w| w[0] <= w[1]).count();
                    if rhs[ell - 1..].windows(2).any(|w| w[0] < w[1]) {
                        return Err(format!("rule {id} is not bitonic"));
                    }
                }
                if id != self.height_range(h).start && prev.as_slice() >= rhs.as_slice() {
                    return Err(format!("rule {id} does not sort after its predecessor"));
                }
                let total: u64 = rhs.iter().map(|&c| self.len_of(c)).sum();
                if total != self.len_of(id) {
                    return Err(format!(
                        "expansion length of {id} is {} but children sum to {total}",
                        self.len_of(id)
                    ));
                }
                if id != start && self.parents_of(id).is_empty() {
                    return Err(format!("rule {id} is unreachable"));
                }
                std::mem::swap(&mut prev, &mut rhs);
            }
        }
        if self.height_range(self.heights()).len() != 1 {
            return Err("top height must hold only the start rule".into());
        }
        if self.len_of(start) != self.text_len() {
            return Err(format!(
                "start expands to {} characters, text has {}",
                self.len_of(start),
                self.text_len()
            ));
        }
        Ok(())
    }
}

/// Reusable per-query buffers.
#[derive(Debug, Default)]
pub struct Scratch {
    bufs: Vec<Vec<Symbol>>,
}

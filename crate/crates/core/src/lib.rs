//! Grammar-compressed self-index based on induced suffix sorting.
//!
//! The text is compressed into a grammar by cutting it at its LMS positions,
//! level after level ([`builder`]). The rules are stored either plainly
//! ([`NepStore`]) or with Elias-Fano and Elias-γ codes ([`UniStore`]).
//! [`Grammar`] answers `locate`, `count` and `extract` on top of either store
//! without keeping the text.
//!
//! ```
//! use gcis::{BuildOptions, Grammar};
//!
//! let g = Grammar::build(b"acabacab", &BuildOptions::without_heuristic()).unwrap();
//! assert_eq!(g.locate(b"acab").unwrap().positions, vec![1, 5]);
//! assert_eq!(g.extract(g.start(), 3, 4).unwrap(), b"abac");
//! ```

pub mod bench;
pub mod bits;
pub mod builder;
pub mod corpus;
pub mod error;
pub mod grammar;
pub mod kmp;
pub mod lms;
pub mod locate;
pub mod store;

/// Characters are byte values `0..256`; non-terminals start at 256.
pub type Symbol = u32;

/// Id of the first non-terminal.
pub const FIRST_NONTERMINAL: Symbol = 256;

pub use builder::{BuildOptions, RuleSet, StopReason};
pub use error::{Error, Result};
pub use grammar::{Grammar, GrammarStats, ParentEdge};
pub use locate::{LocateOptions, LocateReport};
pub use store::{AnyStore, Encoding, NepStore, RuleStore, UniStore};

/// Builds `text` into a grammar backed by the requested store.
pub fn build_index(
    text: &[u8],
    opts: &BuildOptions,
    encoding: Encoding,
) -> Result<Grammar<AnyStore>> {
    let rules = builder::build(text, opts)?;
    let store: AnyStore = match encoding {
        Encoding::Nep => NepStore::from_rules(&rules).into(),
        Encoding::Uni => UniStore::from_rules(&rules)?.into(),
    };
    Ok(Grammar::from_store(store))
}

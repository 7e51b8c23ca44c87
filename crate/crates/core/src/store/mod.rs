//! Physical rule stores and the index container format.
//!
//! Both stores expose the same logical view through [`RuleStore`]: rules are
//! addressed by id (`256..256 + |Γ|`), grouped by height, and sorted
//! lexicographically by right-hand side inside each height.
//!
//! Container layout (all integers little-endian):
//!
//! ```text
//! magic "GCISIDX1" | version u16 | encoding u8 | flags u8 | n u64 | τ u16
//! | τ × u32 rule counts per height | payload | CRC32 u32
//! ```
//!
//! The CRC covers every byte before it. `flags` bit 0 records whether the
//! abort heuristic was enabled, bits 1-2 the [`StopReason`] code.

mod nep;
mod uni;

pub use nep::NepStore;
pub use uni::{decode_rule_bits, encode_rule_bits, UniStore};

use std::cmp::Ordering;
use std::io::{self, Read, Write};
use std::ops::Range;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::builder::{RuleSet, StopReason};
use crate::error::{Error, Result};
use crate::{Symbol, FIRST_NONTERMINAL};

pub const MAGIC: &[u8; 8] = b"GCISIDX1";
pub const FORMAT_VERSION: u16 = 1;

/// Physical representation of the rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Encoding {
    /// Every symbol a plain 32-bit integer.
    Nep = 0,
    /// Elias-Fano first symbols and offsets, Elias-γ coded bodies.
    Uni = 1,
}

impl Encoding {
    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Encoding::Nep),
            1 => Ok(Encoding::Uni),
            c => Err(Error::UnknownEncoding(c)),
        }
    }
}

/// Shape of a grammar shared by all stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub text_len: u64,
    pub height_counts: Vec<u32>,
    /// `height_starts[h - 1]` is the first id of height `h`; one extra entry
    /// closes the last height.
    height_starts: Vec<Symbol>,
    pub abort_heuristic: bool,
    pub stop: StopReason,
}

impl Layout {
    pub fn new(
        text_len: u64,
        height_counts: Vec<u32>,
        abort_heuristic: bool,
        stop: StopReason,
    ) -> Self {
        let mut height_starts = vec![FIRST_NONTERMINAL];
        for &c in &height_counts {
            let last = *height_starts.last().unwrap();
            height_starts.push(last + c);
        }
        Layout {
            text_len,
            height_counts,
            height_starts,
            abort_heuristic,
            stop,
        }
    }

    pub fn from_rules(set: &RuleSet) -> Self {
        Layout::new(
            set.text_len,
            set.height_counts.clone(),
            set.abort_heuristic,
            set.stop,
        )
    }

    pub fn heights(&self) -> usize {
        self.height_counts.len()
    }

    pub fn num_rules(&self) -> usize {
        (self.height_starts[self.heights()] - FIRST_NONTERMINAL) as usize
    }

    /// Ids of height `h` (1-based); empty outside `1..=τ`.
    pub fn height_range(&self, h: usize) -> Range<Symbol> {
        if h == 0 || h > self.heights() {
            return FIRST_NONTERMINAL..FIRST_NONTERMINAL;
        }
        self.height_starts[h - 1]..self.height_starts[h]
    }

    /// Height of a symbol; 0 for characters.
    pub fn height_of(&self, id: Symbol) -> usize {
        if id < FIRST_NONTERMINAL {
            0
        } else {
            self.height_starts.partition_point(|&s| s <= id)
        }
    }

    fn flags(&self) -> u8 {
        u8::from(self.abort_heuristic) | (self.stop as u8) << 1
    }

    fn write_header<W: Write>(&self, w: &mut W, encoding: Encoding) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_u16::<LittleEndian>(FORMAT_VERSION)?;
        w.write_u8(encoding as u8)?;
        w.write_u8(self.flags())?;
        w.write_u64::<LittleEndian>(self.text_len)?;
        let tau =
            u16::try_from(self.heights()).map_err(|_| Error::Overflow(self.heights() as u64))?;
        w.write_u16::<LittleEndian>(tau)?;
        for &c in &self.height_counts {
            w.write_u32::<LittleEndian>(c)?;
        }
        Ok(())
    }

    fn read_header<R: Read>(r: &mut R) -> Result<(Layout, Encoding)> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::BadMagic);
        }
        let version = r.read_u16::<LittleEndian>()?;
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch(version));
        }
        let encoding = Encoding::from_code(r.read_u8()?)?;
        let flags = r.read_u8()?;
        let stop = StopReason::from_code((flags >> 1) & 3).ok_or(Error::Malformed("flags"))?;
        let text_len = r.read_u64::<LittleEndian>()?;
        let tau = r.read_u16::<LittleEndian>()?;
        if tau == 0 {
            return Err(Error::Malformed("grammar without heights"));
        }
        let mut counts = Vec::with_capacity(usize::from(tau));
        let mut total = 0u64;
        for _ in 0..tau {
            let c = r.read_u32::<LittleEndian>()?;
            if c == 0 {
                return Err(Error::Malformed("empty height"));
            }
            total += u64::from(c);
            counts.push(c);
        }
        if counts.last() != Some(&1) || total + u64::from(FIRST_NONTERMINAL) > u64::from(u32::MAX) {
            return Err(Error::Malformed("height counts"));
        }
        Ok((
            Layout::new(text_len, counts, flags & 1 == 1, stop),
            encoding,
        ))
    }
}

/// Read access to the rules of one grammar.
///
/// Methods taking an `id` expect a non-terminal of this grammar; callers
/// check that first (see [`crate::Grammar`]).
pub trait RuleStore {
    fn layout(&self) -> &Layout;

    fn encoding(&self) -> Encoding;

    /// Replaces the contents of `out` with the right-hand side of `id`.
    fn rhs_into(&self, id: Symbol, out: &mut Vec<Symbol>);

    fn rhs_len(&self, id: Symbol) -> usize {
        let mut v = Vec::new();
        self.rhs_into(id, &mut v);
        v.len()
    }

    fn first_symbol(&self, id: Symbol) -> Symbol;

    /// Expansion length of the non-terminal `id`.
    fn rule_expansion(&self, id: Symbol) -> u64;

    /// Compares `rhs(id)` with `s`. With `prefix_only`, `rhs(id)` is first
    /// truncated to `|s|` symbols, so rules starting with `s` compare equal.
    fn compare_rhs(&self, id: Symbol, s: &[Symbol], prefix_only: bool) -> Ordering;

    /// Bytes used by the in-memory representation of the rules.
    fn size_in_bytes(&self) -> usize;

    fn write_payload(&self, w: &mut dyn Write) -> Result<()>;

    fn num_rules(&self) -> usize {
        self.layout().num_rules()
    }

    /// The rule of height `height` whose right-hand side equals `s`.
    fn lookup(&self, s: &[Symbol], height: usize) -> Option<Symbol> {
        if s.is_empty() {
            return None;
        }
        let range = self.layout().height_range(height);
        let lo = partition(range.clone(), |id| {
            self.compare_rhs(id, s, false) == Ordering::Less
        });
        (lo < range.end && self.compare_rhs(lo, s, false) == Ordering::Equal).then_some(lo)
    }

    /// Contiguous ids of height `height` whose right-hand side starts with `s`.
    fn prefix_candidates(&self, s: &[Symbol], height: usize) -> Range<Symbol> {
        let range = self.layout().height_range(height);
        if s.is_empty() {
            return range;
        }
        let lo = partition(range.clone(), |id| {
            self.compare_rhs(id, s, true) == Ordering::Less
        });
        let hi = partition(lo..range.end, |id| {
            self.compare_rhs(id, s, true) != Ordering::Greater
        });
        lo..hi
    }
}

/// First id in `range` for which `pred` is false; `pred` must be monotone.
fn partition(range: Range<Symbol>, pred: impl Fn(Symbol) -> bool) -> Symbol {
    let (mut lo, mut hi) = (range.start, range.end);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Either store, as loaded from an index file.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum AnyStore {
    Nep(NepStore),
    Uni(UniStore),
}

macro_rules! delegate {
    ($self:ident, $s:ident => $e:expr) => {
        match $self {
            AnyStore::Nep($s) => $e,
            AnyStore::Uni($s) => $e,
        }
    };
}

impl RuleStore for AnyStore {
    fn layout(&self) -> &Layout {
        delegate!(self, s => s.layout())
    }
    fn encoding(&self) -> Encoding {
        delegate!(self, s => s.encoding())
    }
    fn rhs_into(&self, id: Symbol, out: &mut Vec<Symbol>) {
        delegate!(self, s => s.rhs_into(id, out))
    }
    fn rhs_len(&self, id: Symbol) -> usize {
        delegate!(self, s => s.rhs_len(id))
    }
    fn first_symbol(&self, id: Symbol) -> Symbol {
        delegate!(self, s => s.first_symbol(id))
    }
    fn rule_expansion(&self, id: Symbol) -> u64 {
        delegate!(self, s => s.rule_expansion(id))
    }
    fn compare_rhs(&self, id: Symbol, s: &[Symbol], prefix_only: bool) -> Ordering {
        delegate!(self, st => st.compare_rhs(id, s, prefix_only))
    }
    fn size_in_bytes(&self) -> usize {
        delegate!(self, s => s.size_in_bytes())
    }
    fn write_payload(&self, w: &mut dyn Write) -> Result<()> {
        delegate!(self, s => s.write_payload(w))
    }
}

impl From<NepStore> for AnyStore {
    fn from(s: NepStore) -> Self {
        AnyStore::Nep(s)
    }
}

impl From<UniStore> for AnyStore {
    fn from(s: UniStore) -> Self {
        AnyStore::Uni(s)
    }
}

/// Writes a complete index file for `store`.
pub fn serialize<S: RuleStore + ?Sized>(store: &S) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    store.layout().write_header(&mut buf, store.encoding())?;
    store.write_payload(&mut buf)?;
    let crc = crc32fast::hash(&buf);
    buf.write_u32::<LittleEndian>(crc)?;
    Ok(buf)
}

/// Parses an index file produced by [`serialize`].
pub fn deserialize(bytes: &[u8]) -> Result<AnyStore> {
    if bytes.len() < MAGIC.len() {
        return if MAGIC.starts_with(bytes) {
            Err(Error::TruncatedStream)
        } else {
            Err(Error::BadMagic)
        };
    }
    let mut r = bytes;
    let parsed = (|| {
        let (layout, encoding) = Layout::read_header(&mut r)?;
        let store: AnyStore = match encoding {
            Encoding::Nep => NepStore::read_payload(&mut r, layout)?.into(),
            Encoding::Uni => UniStore::read_payload(&mut r, layout)?.into(),
        };
        let stored = r.read_u32::<LittleEndian>()?;
        Ok::<_, Error>((store, stored))
    })();
    let checksum = || {
        let split = bytes.len() - 4;
        let stored = u32::from_le_bytes(bytes[split..].try_into().unwrap());
        let computed = crc32fast::hash(&bytes[..split]);
        (stored, computed)
    };
    match parsed {
        Ok((store, _)) => {
            if !r.is_empty() {
                return Err(Error::Malformed("trailing bytes"));
            }
            let (stored, computed) = checksum();
            if stored != computed {
                return Err(Error::ChecksumMismatch { stored, computed });
            }
            Ok(store)
        }
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::UnexpectedEof => {
            Err(Error::TruncatedStream)
        }
        Err(e @ (Error::BadMagic | Error::VersionMismatch(_) | Error::TruncatedStream)) => Err(e),
        Err(e) => {
            // corrupted payloads usually fail structurally before the CRC is reached
            let (stored, computed) = checksum();
            if stored != computed {
                Err(Error::ChecksumMismatch { stored, computed })
            } else {
                Err(e)
            }
        }
    }
}

pub(crate) fn read_u32s<R: Read>(r: &mut R, n: u64) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(n.min(1 << 24) as usize);
    for _ in 0..n {
        out.push(r.read_u32::<LittleEndian>()?);
    }
    Ok(out)
}

pub(crate) fn read_u64s<R: Read>(r: &mut R, n: u64) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n.min(1 << 24) as usize);
    for _ in 0..n {
        out.push(r.read_u64::<LittleEndian>()?);
    }
    Ok(out)
}

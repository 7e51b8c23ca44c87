use std::cmp::Ordering;
use std::io::{Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use super::{Encoding, Layout, RuleStore};
use crate::bits::{
    gamma_decode, gamma_encode, BitBuf, BitReader, BitWriter, EliasFano, TieredLengths,
};
use crate::builder::RuleSet;
use crate::error::{Error, Result};
use crate::{Symbol, FIRST_NONTERMINAL};

/// Succinct store.
///
/// * `first`: Elias-Fano sequence of the first symbol of every rule.
/// * `offsets`: Elias-Fano sequence of the bit offset of every rule body in
///   `bodies`, closed by the total bit length.
/// * `bodies`: per rule, `γ(ℓ)` followed by `γ(|gap| + 1)` for every further
///   symbol, where `ℓ` is the length of the longest non-decreasing prefix.
///   Gaps are added up to position `ℓ` and subtracted afterwards.
/// * `lengths`: expansion lengths in 8/16/32-bit tiers.
///
/// The start rule need not be bitonic; its gaps after `ℓ` carry a sign and are
/// written zigzag-coded as `γ(zigzag(gap) + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniStore {
    layout: Layout,
    first: EliasFano,
    offsets: EliasFano,
    bodies: BitBuf,
    lengths: TieredLengths,
}

fn zigzag(d: i64) -> u64 {
    ((d << 1) ^ (d >> 63)) as u64
}

fn unzigzag(z: u64) -> i64 {
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

/// Appends the body of one rule (everything except its first symbol).
///
/// `signed_tail` selects the zigzag form used for the start rule; otherwise a
/// non-bitonic `rhs` is rejected.
pub fn encode_rule_bits(rhs: &[Symbol], signed_tail: bool, out: &mut BitWriter) -> Result<()> {
    assert!(!rhs.is_empty(), "empty right-hand side");
    let ell = 1 + rhs.windows(2).take_while(|w| w[0] <= w[1]).count();
    if !signed_tail && rhs[ell - 1..].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotBitonic(0));
    }
    gamma_encode(out, ell as u64)?;
    for k in 1..rhs.len() {
        let (prev, cur) = (i64::from(rhs[k - 1]), i64::from(rhs[k]));
        let code = if k < ell || !signed_tail {
            (cur - prev).unsigned_abs() + 1
        } else {
            zigzag(cur - prev) + 1
        };
        gamma_encode(out, code)?;
    }
    Ok(())
}

/// Decodes a rule body written by [`encode_rule_bits`] spanning bits
/// `start..end`.
pub fn decode_rule_bits(
    first: Symbol,
    bits: &BitBuf,
    start: u64,
    end: u64,
    signed_tail: bool,
) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut cursor = RuleCursor::new(first, bits.reader(start), end, signed_tail)?;
    while let Some(s) = cursor.next_symbol()? {
        out.push(s);
    }
    Ok(out)
}

/// Streaming decoder for one rule.
struct RuleCursor<'a> {
    reader: BitReader<'a>,
    end: u64,
    ell: u64,
    emitted: u64,
    current: i64,
    signed_tail: bool,
}

impl<'a> RuleCursor<'a> {
    fn new(first: Symbol, mut reader: BitReader<'a>, end: u64, signed_tail: bool) -> Result<Self> {
        let ell = gamma_decode(&mut reader)?;
        Ok(RuleCursor {
            reader,
            end,
            ell,
            emitted: 0,
            current: i64::from(first),
            signed_tail,
        })
    }

    fn next_symbol(&mut self) -> Result<Option<Symbol>> {
        if self.emitted > 0 {
            if self.reader.position() >= self.end {
                return Ok(None);
            }
            let code = gamma_decode(&mut self.reader)? - 1;
            if self.emitted < self.ell {
                self.current += code as i64;
            } else if self.signed_tail {
                self.current += unzigzag(code);
            } else {
                self.current -= code as i64;
            }
            if self.reader.position() > self.end
                || !(0..=i64::from(u32::MAX)).contains(&self.current)
            {
                return Err(Error::Malformed("decoded symbol out of range"));
            }
        }
        self.emitted += 1;
        Ok(Some(self.current as Symbol))
    }
}

impl UniStore {
    pub fn from_rules(set: &RuleSet) -> Result<Self> {
        let layout = Layout::from_rules(set);
        let rules = set.num_rules();
        let mut bodies = BitWriter::new();
        let mut firsts = Vec::with_capacity(rules);
        let mut offsets = Vec::with_capacity(rules + 1);
        for (k, rhs) in set.rules().enumerate() {
            offsets.push(bodies.len());
            firsts.push(u64::from(rhs[0]));
            let is_start = k + 1 == rules;
            encode_rule_bits(rhs, is_start, &mut bodies).map_err(|e| match e {
                Error::NotBitonic(_) => Error::NotBitonic(FIRST_NONTERMINAL + k as Symbol),
                e => e,
            })?;
        }
        offsets.push(bodies.len());
        Ok(UniStore {
            layout,
            first: EliasFano::new(&firsts),
            offsets: EliasFano::new(&offsets),
            bodies: bodies.into_bits(),
            lengths: TieredLengths::build(&set.expansion_lengths())?,
        })
    }

    #[inline]
    fn slot(id: Symbol) -> usize {
        (id - FIRST_NONTERMINAL) as usize
    }

    fn is_start(&self, k: usize) -> bool {
        k + 1 == self.layout.num_rules()
    }

    fn cursor(&self, id: Symbol) -> RuleCursor<'_> {
        let k = Self::slot(id);
        let start = self.offsets.get(k);
        let end = self.offsets.get(k + 1);
        let first = self.first.get(k) as Symbol;
        // validated on load; encoded by us otherwise
        RuleCursor::new(first, self.bodies.reader(start), end, self.is_start(k))
            .expect("corrupt rule body")
    }

    /// Decodes rule `id`, reporting corrupt bodies instead of panicking.
    pub fn decode_rule(&self, id: Symbol) -> Result<Vec<Symbol>> {
        let k = Self::slot(id);
        decode_rule_bits(
            self.first.get(k) as Symbol,
            &self.bodies,
            self.offsets.get(k),
            self.offsets.get(k + 1),
            self.is_start(k),
        )
    }

    pub fn lengths(&self) -> &TieredLengths {
        &self.lengths
    }

    pub(super) fn read_payload<R: Read>(r: &mut R, layout: Layout) -> Result<Self> {
        let first = EliasFano::read_from(r)?;
        let offsets = EliasFano::read_from(r)?;
        let bit_len = r.read_u64::<LittleEndian>()?;
        let words = crate::bits::read_words(r, bit_len.div_ceil(64))?;
        let bodies = BitBuf::from_words(words, bit_len)?;
        let rules = layout.num_rules();
        let lengths = TieredLengths::read_from(r, rules)?;
        if first.len() != rules || offsets.len() != rules + 1 || offsets.get(rules) != bit_len {
            return Err(Error::Malformed("sequence lengths"));
        }
        let store = UniStore {
            layout,
            first,
            offsets,
            bodies,
            lengths,
        };
        let limit = u64::from(FIRST_NONTERMINAL) + rules as u64;
        for k in 0..rules {
            let (s, e) = (store.offsets.get(k), store.offsets.get(k + 1));
            if s >= e {
                return Err(Error::Malformed("rule offsets"));
            }
            let id = FIRST_NONTERMINAL + k as Symbol;
            let rule = store
                .decode_rule(id)
                .map_err(|_| Error::Malformed("rule body"))?;
            if rule.iter().any(|&x| u64::from(x) >= limit) {
                return Err(Error::Malformed("symbol out of range"));
            }
        }
        Ok(store)
    }
}

impl RuleStore for UniStore {
    fn layout(&self) -> &Layout {
        &self.layout
    }

    fn encoding(&self) -> Encoding {
        Encoding::Uni
    }

    fn rhs_into(&self, id: Symbol, out: &mut Vec<Symbol>) {
        out.clear();
        let mut c = self.cursor(id);
        while let Some(s) = c.next_symbol().expect("corrupt rule body") {
            out.push(s);
        }
    }

    fn first_symbol(&self, id: Symbol) -> Symbol {
        self.first.get(Self::slot(id)) as Symbol
    }

    fn rule_expansion(&self, id: Symbol) -> u64 {
        self.lengths.get(Self::slot(id))
    }

    fn compare_rhs(&self, id: Symbol, s: &[Symbol], prefix_only: bool) -> Ordering {
        let mut c = self.cursor(id);
        for &x in s {
            match c.next_symbol().expect("corrupt rule body") {
                None => return Ordering::Less,
                Some(y) if y != x => return y.cmp(&x),
                Some(_) => {}
            }
        }
        if prefix_only || c.next_symbol().expect("corrupt rule body").is_none() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    fn size_in_bytes(&self) -> usize {
        self.first.size_in_bytes()
            + self.offsets.size_in_bytes()
            + self.bodies.size_in_bytes()
            + 8
            + self.lengths.size_in_bytes()
    }

    fn write_payload(&self, w: &mut dyn Write) -> Result<()> {
        let mut buf = Vec::new();
        self.first.write_to(&mut buf)?;
        self.offsets.write_to(&mut buf)?;
        buf.write_u64::<LittleEndian>(self.bodies.len())?;
        for &x in self.bodies.words() {
            buf.write_u64::<LittleEndian>(x)?;
        }
        self.lengths.write_to(&mut buf)?;
        w.write_all(&buf)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(w: BitWriter) -> String {
        let b = w.into_bits();
        (0..b.len())
            .map(|i| if b.get(i) { '1' } else { '0' })
            .collect()
    }

    #[test]
    fn bitonic_rule_bits() {
        let mut w = BitWriter::new();
        encode_rule_bits(&[97, 99, 99, 98], false, &mut w).unwrap();
        // γ(3) γ(3) γ(1) γ(2)
        assert_eq!(render(w.clone()), "0110111010");
        let b = w.into_bits();
        assert_eq!(
            decode_rule_bits(97, &b, 0, b.len(), false).unwrap(),
            vec![97, 99, 99, 98]
        );
    }

    #[test]
    fn singleton_rule_bits() {
        let mut w = BitWriter::new();
        encode_rule_bits(&[97], false, &mut w).unwrap();
        assert_eq!(render(w), "1");
    }

    #[test]
    fn non_bitonic_rejected_unless_signed() {
        let mut w = BitWriter::new();
        assert!(matches!(
            encode_rule_bits(&[3, 1, 2], false, &mut w),
            Err(Error::NotBitonic(_))
        ));
        let mut w = BitWriter::new();
        encode_rule_bits(&[3, 1, 2, 2, 0, 7], true, &mut w).unwrap();
        let b = w.into_bits();
        assert_eq!(
            decode_rule_bits(3, &b, 0, b.len(), true).unwrap(),
            vec![3, 1, 2, 2, 0, 7]
        );
    }

    #[test]
    fn zigzag_round_trip() {
        for d in [-5i64, -1, 0, 1, 2, 1 << 33, -(1 << 33)] {
            assert_eq!(unzigzag(zigzag(d)), d);
        }
    }
}

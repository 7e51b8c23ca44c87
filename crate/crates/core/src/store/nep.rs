use std::cmp::Ordering;
use std::io::{Read, Write};

use byteorder::{LittleEndian, WriteBytesExt};

use super::{read_u32s, read_u64s, Encoding, Layout, RuleStore};
use crate::builder::RuleSet;
use crate::error::{Error, Result};
use crate::{Symbol, FIRST_NONTERMINAL};

/// Plain store: right-hand sides concatenated in id order (`r`), start
/// offsets with a closing sentinel (`q`) and expansion lengths (`l`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NepStore {
    layout: Layout,
    r: Vec<Symbol>,
    q: Vec<u64>,
    l: Vec<u64>,
}

impl NepStore {
    pub fn from_rules(set: &RuleSet) -> Self {
        NepStore {
            layout: Layout::from_rules(set),
            r: set.rhs.clone(),
            q: set.offsets.clone(),
            l: set.expansion_lengths(),
        }
    }

    #[inline]
    fn slot(id: Symbol) -> usize {
        (id - FIRST_NONTERMINAL) as usize
    }

    /// Right-hand side without copying.
    #[inline]
    pub fn rhs(&self, id: Symbol) -> &[Symbol] {
        let k = Self::slot(id);
        &self.r[self.q[k] as usize..self.q[k + 1] as usize]
    }

    pub fn concatenated_rhs(&self) -> &[Symbol] {
        &self.r
    }

    pub fn offsets(&self) -> &[u64] {
        &self.q
    }

    pub fn expansion_lengths(&self) -> &[u64] {
        &self.l
    }

    pub(super) fn read_payload<R: Read>(r: &mut R, layout: Layout) -> Result<Self> {
        let rules = layout.num_rules() as u64;
        let q = read_u64s(r, rules + 1)?;
        if q[0] != 0 || q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed("rule offsets"));
        }
        let g = *q.last().unwrap();
        let rhs = read_u32s(r, g)?;
        let l = read_u64s(r, rules)?;
        let store = NepStore {
            layout,
            r: rhs,
            q,
            l,
        };
        let limit = FIRST_NONTERMINAL as u64 + rules;
        if store.r.iter().any(|&s| u64::from(s) >= limit) {
            return Err(Error::Malformed("symbol out of range"));
        }
        Ok(store)
    }
}

impl RuleStore for NepStore {
    fn layout(&self) -> &Layout {
        &self.layout
    }

    fn encoding(&self) -> Encoding {
        Encoding::Nep
    }

    fn rhs_into(&self, id: Symbol, out: &mut Vec<Symbol>) {
        out.clear();
        out.extend_from_slice(self.rhs(id));
    }

    fn rhs_len(&self, id: Symbol) -> usize {
        let k = Self::slot(id);
        (self.q[k + 1] - self.q[k]) as usize
    }

    fn first_symbol(&self, id: Symbol) -> Symbol {
        self.r[self.q[Self::slot(id)] as usize]
    }

    fn rule_expansion(&self, id: Symbol) -> u64 {
        self.l[Self::slot(id)]
    }

    fn compare_rhs(&self, id: Symbol, s: &[Symbol], prefix_only: bool) -> Ordering {
        let rhs = self.rhs(id);
        if prefix_only && rhs.len() > s.len() {
            rhs[..s.len()].cmp(s)
        } else {
            rhs.cmp(s)
        }
    }

    fn size_in_bytes(&self) -> usize {
        self.r.len() * 4 + self.q.len() * 8 + self.l.len() * 8
    }

    fn write_payload(&self, w: &mut dyn Write) -> Result<()> {
        let mut buf = Vec::with_capacity(self.size_in_bytes());
        for &x in &self.q {
            buf.write_u64::<LittleEndian>(x)?;
        }
        for &x in &self.r {
            buf.write_u32::<LittleEndian>(x)?;
        }
        for &x in &self.l {
            buf.write_u64::<LittleEndian>(x)?;
        }
        w.write_all(&buf)?;
        Ok(())
    }
}

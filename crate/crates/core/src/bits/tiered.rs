use std::io::{Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::error::{Error, Result};

/// Expansion lengths split over 8-, 16- and 32-bit arrays.
///
/// Values are appended in id order. The writer moves to the next wider array
/// the first time a value does not fit the current one and never moves back,
/// so entry `i` lives in the array selected by the two boundary indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TieredLengths {
    narrow: Vec<u8>,
    medium: Vec<u16>,
    wide: Vec<u32>,
}

impl TieredLengths {
    pub fn build(values: &[u64]) -> Result<Self> {
        let mut t = TieredLengths::default();
        let mut tier = 0;
        for &v in values {
            if v > u64::from(u32::MAX) {
                return Err(Error::Overflow(v));
            }
            if tier == 0 && v > u64::from(u8::MAX) {
                tier = 1;
            }
            if tier == 1 && v > u64::from(u16::MAX) {
                tier = 2;
            }
            match tier {
                0 => t.narrow.push(v as u8),
                1 => t.medium.push(v as u16),
                _ => t.wide.push(v as u32),
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.narrow.len() + self.medium.len() + self.wide.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the first 16-bit and the first 32-bit entry.
    pub fn boundaries(&self) -> (usize, usize) {
        let b1 = self.narrow.len();
        (b1, b1 + self.medium.len())
    }

    pub fn tiers(&self) -> (&[u8], &[u16], &[u32]) {
        (&self.narrow, &self.medium, &self.wide)
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        let (b1, b2) = self.boundaries();
        if i < b1 {
            u64::from(self.narrow[i])
        } else if i < b2 {
            u64::from(self.medium[i - b1])
        } else {
            u64::from(self.wide[i - b2])
        }
    }

    pub fn size_in_bytes(&self) -> usize {
        self.narrow.len() + 2 * self.medium.len() + 4 * self.wide.len() + 16
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let (b1, b2) = self.boundaries();
        w.write_u64::<LittleEndian>(b1 as u64)?;
        w.write_u64::<LittleEndian>(b2 as u64)?;
        w.write_all(&self.narrow)?;
        for &x in &self.medium {
            w.write_u16::<LittleEndian>(x)?;
        }
        for &x in &self.wide {
            w.write_u32::<LittleEndian>(x)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R, total: usize) -> Result<Self> {
        let b1 = r.read_u64::<LittleEndian>()? as usize;
        let b2 = r.read_u64::<LittleEndian>()? as usize;
        if b1 > b2 || b2 > total {
            return Err(Error::Malformed("length tier boundaries"));
        }
        let mut narrow = vec![0u8; b1];
        r.read_exact(&mut narrow)?;
        let mut medium = Vec::with_capacity(b2 - b1);
        for _ in b1..b2 {
            medium.push(r.read_u16::<LittleEndian>()?);
        }
        let mut wide = Vec::with_capacity(total - b2);
        for _ in b2..total {
            wide.push(r.read_u32::<LittleEndian>()?);
        }
        Ok(TieredLengths {
            narrow,
            medium,
            wide,
        })
    }
}

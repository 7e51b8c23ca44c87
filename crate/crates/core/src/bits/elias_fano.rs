use std::io::{Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use super::{BitBuf, BitWriter};
use crate::error::{Error, Result};

const SELECT_SAMPLE: usize = 64;

/// Elias-Fano coded non-decreasing sequence with random access.
///
/// Element `i` is split into `low_width` low bits, stored packed, and a high
/// part stored in unary as a one bit at position `high + i` of `high_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliasFano {
    universe: u64,
    count: u64,
    low_width: u8,
    low_bits: BitBuf,
    high_bits: BitBuf,
    // position of every SELECT_SAMPLE-th one bit
    samples: Vec<u64>,
}

impl EliasFano {
    /// Panics if `values` is not non-decreasing.
    pub fn new(values: &[u64]) -> Self {
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "sequence must be non-decreasing"
        );
        let count = values.len() as u64;
        let universe = values.last().map_or(0, |&v| v + 1);
        let low_width = if count == 0 || universe <= count {
            0
        } else {
            63 - (universe / count).leading_zeros()
        };
        let mut low = BitWriter::new();
        let mut high = BitWriter::new();
        let mut cursor = 0u64;
        for (i, &v) in values.iter().enumerate() {
            low.push_bits_lsb(v, low_width);
            let target = (v >> low_width) + i as u64;
            while cursor < target {
                high.push(false);
                cursor += 1;
            }
            high.push(true);
            cursor += 1;
        }
        let high_len = Self::high_len(universe, count, low_width as u8);
        while high.len() < high_len {
            high.push(false);
        }
        Self::from_parts(
            universe,
            count,
            low_width as u8,
            low.into_bits(),
            high.into_bits(),
        )
    }

    fn high_len(universe: u64, count: u64, low_width: u8) -> u64 {
        count + (universe >> low_width) + 1
    }

    fn from_parts(
        universe: u64,
        count: u64,
        low_width: u8,
        low_bits: BitBuf,
        high_bits: BitBuf,
    ) -> Self {
        let mut samples = Vec::with_capacity((count as usize).div_ceil(SELECT_SAMPLE));
        let mut seen = 0usize;
        for (wi, &w) in high_bits.words().iter().enumerate() {
            let ones = w.count_ones() as usize;
            let mut next = samples.len() * SELECT_SAMPLE;
            while next < seen + ones {
                let mut word = w;
                for _ in 0..next - seen {
                    word &= word - 1;
                }
                samples.push(wi as u64 * 64 + u64::from(word.trailing_zeros()));
                next += SELECT_SAMPLE;
            }
            seen += ones;
        }
        EliasFano {
            universe,
            count,
            low_width,
            low_bits,
            high_bits,
            samples,
        }
    }

    pub fn len(&self) -> usize {
        self.count as usize
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    /// Position of the `i`-th one bit of the high part.
    fn select_high(&self, i: usize) -> u64 {
        let sample = self.samples[i / SELECT_SAMPLE];
        let mut remaining = i % SELECT_SAMPLE;
        let words = self.high_bits.words();
        let mut wi = (sample / 64) as usize;
        let mut w = words[wi] & (u64::MAX << (sample % 64));
        loop {
            let ones = w.count_ones() as usize;
            if remaining < ones {
                for _ in 0..remaining {
                    w &= w - 1;
                }
                return wi as u64 * 64 + u64::from(w.trailing_zeros());
            }
            remaining -= ones;
            wi += 1;
            w = words[wi];
        }
    }

    /// Panics if `i >= len()`.
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len(), "index {i} out of bounds");
        let high = self.select_high(i) - i as u64;
        let low = self.low_bits.get_bits_lsb(
            i as u64 * u64::from(self.low_width),
            u32::from(self.low_width),
        );
        (high << self.low_width) | low
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn size_in_bytes(&self) -> usize {
        17 + self.low_bits.size_in_bytes() + self.high_bits.size_in_bytes() + self.samples.len() * 8
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_u64::<LittleEndian>(self.universe)?;
        w.write_u64::<LittleEndian>(self.count)?;
        w.write_u8(self.low_width)?;
        for &x in self.low_bits.words() {
            w.write_u64::<LittleEndian>(x)?;
        }
        for &x in self.high_bits.words() {
            w.write_u64::<LittleEndian>(x)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let universe = r.read_u64::<LittleEndian>()?;
        let count = r.read_u64::<LittleEndian>()?;
        let low_width = r.read_u8()?;
        if low_width > 63 {
            return Err(Error::Malformed("elias-fano low width"));
        }
        let low_len = count
            .checked_mul(u64::from(low_width))
            .ok_or(Error::Malformed("elias-fano size"))?;
        let high_len = count
            .checked_add(universe >> low_width)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Malformed("elias-fano size"))?;
        let low_bits = BitBuf::from_words(read_words(r, low_len.div_ceil(64))?, low_len)?;
        let high_bits = BitBuf::from_words(read_words(r, high_len.div_ceil(64))?, high_len)?;
        let ones: u64 = high_bits
            .words()
            .iter()
            .map(|w| u64::from(w.count_ones()))
            .sum();
        if ones != count {
            return Err(Error::Malformed("elias-fano high bits"));
        }
        Ok(Self::from_parts(
            universe, count, low_width, low_bits, high_bits,
        ))
    }
}

pub(crate) fn read_words<R: Read>(r: &mut R, n: u64) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n.min(1 << 24) as usize);
    for _ in 0..n {
        out.push(r.read_u64::<LittleEndian>()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_sequence() {
        let ef = EliasFano::new(&[1, 3, 3, 7]);
        assert_eq!(ef.len(), 4);
        assert_eq!(ef.universe(), 8);
        assert_eq!(ef.iter().collect::<Vec<_>>(), vec![1, 3, 3, 7]);
    }

    #[test]
    fn empty_and_zeros() {
        assert!(EliasFano::new(&[]).is_empty());
        let ef = EliasFano::new(&[0, 0, 0]);
        assert_eq!(ef.iter().collect::<Vec<_>>(), vec![0, 0, 0]);
    }

    #[test]
    fn serialized_round_trip() {
        let vals: Vec<u64> = (0..1000u64).map(|i| i * i / 3).collect();
        let ef = EliasFano::new(&vals);
        let mut buf = Vec::new();
        ef.write_to(&mut buf).unwrap();
        let back = EliasFano::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(back, ef);
        assert!(EliasFano::read_from(&mut &buf[..buf.len() - 3]).is_err());
    }

    proptest! {
        #[test]
        fn access_matches_plain(mut vals in prop::collection::vec(0u64..1_000_000, 0..600)) {
            vals.sort_unstable();
            let ef = EliasFano::new(&vals);
            for (i, &v) in vals.iter().enumerate() {
                prop_assert_eq!(ef.get(i), v);
            }
        }

        #[test]
        fn dense_runs(gaps in prop::collection::vec(0u64..3, 1..400)) {
            let vals: Vec<u64> = gaps.iter().scan(0, |acc, g| { *acc += g; Some(*acc) }).collect();
            let ef = EliasFano::new(&vals);
            prop_assert_eq!(ef.iter().collect::<Vec<_>>(), vals);
        }
    }
}

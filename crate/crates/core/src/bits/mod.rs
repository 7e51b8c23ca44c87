//! Bit-level building blocks for the succinct rule store.
//!
//! Bits are stored least-significant first inside little-endian `u64` words:
//! stream bit `i` lives at `words[i / 64] >> (i % 64)`.

mod elias_fano;
mod gamma;
mod tiered;

pub(crate) use elias_fano::read_words;
pub use elias_fano::EliasFano;
pub use gamma::{gamma_decode, gamma_encode, gamma_len};
pub use tiered::TieredLengths;

use crate::error::{Error, Result};

/// Append-only bit vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    words: Vec<u64>,
    len: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        let w = (self.len / 64) as usize;
        if w == self.words.len() {
            self.words.push(0);
        }
        if bit {
            self.words[w] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits_msb(&mut self, value: u64, width: u32) {
        for k in (0..width).rev() {
            self.push((value >> k) & 1 == 1);
        }
    }

    /// Appends the low `width` bits of `value`, least significant first.
    pub fn push_bits_lsb(&mut self, value: u64, width: u32) {
        if width == 0 {
            return;
        }
        let off = (self.len % 64) as u32;
        let w = (self.len / 64) as usize;
        let value = if width == 64 {
            value
        } else {
            value & ((1u64 << width) - 1)
        };
        if w == self.words.len() {
            self.words.push(0);
        }
        self.words[w] |= value << off;
        if off + width > 64 {
            self.words.push(value >> (64 - off));
        }
        self.len += u64::from(width);
    }

    pub fn into_bits(self) -> BitBuf {
        BitBuf {
            words: self.words,
            len: self.len,
        }
    }
}

/// Immutable bit vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: u64,
}

impl BitBuf {
    pub fn from_words(words: Vec<u64>, len: u64) -> Result<Self> {
        if words.len() as u64 != len.div_ceil(64) {
            return Err(Error::Malformed("bit buffer length"));
        }
        Ok(BitBuf { words, len })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    /// Reads `width <= 64` bits starting at `pos`, least significant first.
    #[inline]
    pub fn get_bits_lsb(&self, pos: u64, width: u32) -> u64 {
        if width == 0 {
            return 0;
        }
        let w = (pos / 64) as usize;
        let off = (pos % 64) as u32;
        let mut v = self.words[w] >> off;
        if off + width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if width == 64 {
            v
        } else {
            v & ((1u64 << width) - 1)
        }
    }

    pub fn reader(&self, pos: u64) -> BitReader<'_> {
        BitReader { buf: self, pos }
    }

    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8
    }
}

/// Sequential cursor over a [`BitBuf`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    buf: &'a BitBuf,
    pos: u64,
}

impl BitReader<'_> {
    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.buf.len {
            return Err(Error::TruncatedStream);
        }
        let b = self.buf.get(self.pos);
        self.pos += 1;
        Ok(b)
    }

    /// Counts and consumes zero bits up to (not including) the next one bit.
    pub fn read_zeros(&mut self) -> Result<u32> {
        let mut zeros = 0u32;
        loop {
            if self.pos >= self.buf.len {
                return Err(Error::TruncatedStream);
            }
            let w = self.buf.words[(self.pos / 64) as usize] >> (self.pos % 64);
            let avail = 64 - (self.pos % 64);
            let tz = u64::from(w.trailing_zeros()).min(avail);
            if tz < avail {
                if self.pos + tz >= self.buf.len {
                    return Err(Error::TruncatedStream);
                }
                self.pos += tz;
                return Ok(zeros + tz as u32);
            }
            zeros += avail as u32;
            self.pos += avail;
        }
    }

    /// Reads `width` bits, the first one read being the most significant.
    pub fn read_bits_msb(&mut self, width: u32) -> Result<u64> {
        if self.pos + u64::from(width) > self.buf.len {
            return Err(Error::TruncatedStream);
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.buf.get(self.pos));
            self.pos += 1;
        }
        Ok(v)
    }
}

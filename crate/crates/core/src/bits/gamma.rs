use super::{BitReader, BitWriter};
use crate::error::{Error, Result};

/// Writes the Elias-γ codeword of `v`: `⌊lg v⌋` zeros, then `v` in binary.
pub fn gamma_encode(out: &mut BitWriter, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidValue(0));
    }
    let nbits = 64 - v.leading_zeros();
    for _ in 0..nbits - 1 {
        out.push(false);
    }
    out.push_bits_msb(v, nbits);
    Ok(())
}

/// Reads one codeword.
pub fn gamma_decode(r: &mut BitReader<'_>) -> Result<u64> {
    let zeros = r.read_zeros()?;
    if zeros > 63 {
        return Err(Error::Malformed("gamma codeword too long"));
    }
    r.read_bits_msb(zeros + 1)
}

/// Codeword length in bits.
pub fn gamma_len(v: u64) -> u64 {
    debug_assert!(v > 0);
    2 * u64::from(64 - v.leading_zeros()) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(v: u64) -> String {
        let mut w = BitWriter::new();
        gamma_encode(&mut w, v).unwrap();
        let b = w.into_bits();
        (0..b.len())
            .map(|i| if b.get(i) { '1' } else { '0' })
            .collect()
    }

    #[test]
    fn code_table() {
        assert_eq!(render(1), "1");
        assert_eq!(render(2), "010");
        assert_eq!(render(3), "011");
        assert_eq!(render(4), "00100");
        assert_eq!(render(9), "0001001");
    }

    #[test]
    fn zero_rejected() {
        let mut w = BitWriter::new();
        assert!(matches!(
            gamma_encode(&mut w, 0),
            Err(Error::InvalidValue(0))
        ));
    }

    #[test]
    fn round_trip_first_million() {
        let mut w = BitWriter::new();
        for v in 1..=1_000_000u64 {
            gamma_encode(&mut w, v).unwrap();
        }
        let total: u64 = (1..=1_000_000u64).map(gamma_len).sum();
        assert_eq!(w.len(), total);
        let b = w.into_bits();
        let mut r = b.reader(0);
        for v in 1..=1_000_000u64 {
            assert_eq!(gamma_decode(&mut r).unwrap(), v);
        }
        assert!(matches!(gamma_decode(&mut r), Err(Error::TruncatedStream)));
    }

    #[test]
    fn truncated_codeword() {
        let mut w = BitWriter::new();
        w.push(false);
        w.push(false);
        w.push(true);
        let b = w.into_bits();
        assert!(matches!(
            gamma_decode(&mut b.reader(0)),
            Err(Error::TruncatedStream)
        ));
    }

    #[test]
    fn large_values() {
        let mut w = BitWriter::new();
        for v in [u64::MAX, 1 << 63, (1 << 40) + 7] {
            gamma_encode(&mut w, v).unwrap();
        }
        let b = w.into_bits();
        let mut r = b.reader(0);
        for v in [u64::MAX, 1 << 63, (1 << 40) + 7] {
            assert_eq!(gamma_decode(&mut r).unwrap(), v);
        }
    }
}

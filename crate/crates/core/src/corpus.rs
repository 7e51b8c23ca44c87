//! Synthetic test corpora.
//!
//! Orders follow the usual numbering of the Fibonacci and Thue-Morse words:
//! order `k` is obtained from the single letter `a` by `k - 1` applications
//! of the morphism, so the Fibonacci word of order `k` has length `F(k + 1)`
//! (`F(1) = F(2) = 1`) and the Thue-Morse word of order `k` has length
//! `2^(k - 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Byte length of [`fibonacci`] of the given order.
pub fn fibonacci_len(order: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..order {
        (a, b) = (b, a + b);
    }
    b
}

fn check_order(order: u32, max: u32) -> Result<()> {
    if order == 0 || order > max {
        return Err(Error::InvalidParameter(format!(
            "order must be in 1..={max}, got {order}"
        )));
    }
    Ok(())
}

/// Fibonacci word: `a -> ab`, `b -> a`, starting from `a`.
pub fn fibonacci(order: u32) -> Result<Vec<u8>> {
    check_order(order, 60)?;
    // w(k) = w(k-1) w(k-2); the longer word is extended in place
    let n =
        usize::try_from(fibonacci_len(order)).map_err(|_| Error::Overflow(fibonacci_len(order)))?;
    let mut w = Vec::with_capacity(n);
    w.push(b'a');
    let mut prev_len = 0;
    if order >= 2 {
        w.push(b'b');
        prev_len = 1;
    }
    for _ in 2..order {
        let cur = w.len();
        w.extend_from_within(..prev_len);
        prev_len = cur;
    }
    debug_assert_eq!(w.len(), n);
    Ok(w)
}

/// Thue-Morse word: `a -> ab`, `b -> ba`, starting from `a`.
pub fn thue_morse(order: u32) -> Result<Vec<u8>> {
    check_order(order, 40)?;
    let n = 1u64 << (order - 1);
    Ok((0..n)
        .map(|i| if i.count_ones() % 2 == 0 { b'a' } else { b'b' })
        .collect())
}

/// Word with many runs: `r(1) = b`, `r(2) = a`, `r(k) = r(k-1) r(k-1) r(k-2)`.
///
/// Every step creates a square, and the squares nest, so the number of
/// maximal repetitions grows linearly with the length.
pub fn run_rich(order: u32) -> Result<Vec<u8>> {
    check_order(order, 30)?;
    let (mut older, mut old) = (b"b".to_vec(), b"a".to_vec());
    if order == 1 {
        return Ok(older);
    }
    for _ in 2..order {
        let mut next = Vec::with_capacity(2 * old.len() + older.len());
        next.extend_from_slice(&old);
        next.extend_from_slice(&old);
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut old, next);
    }
    Ok(old)
}

/// I.i.d. uniform text over `sigma` symbols.
///
/// Alphabets of up to 26 symbols use `a..`; larger ones use the bytes
/// `0..sigma`.
pub fn random(len: usize, sigma: u16, seed: u64) -> Result<Vec<u8>> {
    if len == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    if sigma == 0 || sigma > 256 {
        return Err(Error::InvalidParameter(format!(
            "alphabet size must be in 1..=256, got {sigma}"
        )));
    }
    let base = if sigma <= 26 { b'a' } else { 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..len)
        .map(|_| base + rng.gen_range(0..sigma) as u8)
        .collect())
}

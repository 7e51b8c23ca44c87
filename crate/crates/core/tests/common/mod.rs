#![allow(dead_code)]

use gcis::Symbol;
use rand::Rng;

/// 1-based start positions of every (possibly overlapping) occurrence.
pub fn naive_positions(text: &[u8], pattern: &[u8]) -> Vec<u64> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i as u64 + 1)
        .collect()
}

/// Random text over the first `sigma` letters (or bytes when `sigma > 26`).
pub fn random_text(rng: &mut impl Rng, len: usize, sigma: u16) -> Vec<u8> {
    let base = if sigma <= 26 { b'a' } else { 0 };
    (0..len)
        .map(|_| base + rng.gen_range(0..sigma) as u8)
        .collect()
}

/// Random text with long repeated stretches, closer to what grammars compress.
pub fn repetitive_text(rng: &mut impl Rng, len: usize, sigma: u16) -> Vec<u8> {
    let mut t = random_text(rng, len.clamp(1, 16), sigma);
    while t.len() < len {
        if rng.gen_bool(0.2) {
            let k = rng.gen_range(1..4);
            t.extend(random_text(rng, k, sigma));
        } else {
            let from = rng.gen_range(0..t.len());
            let l = rng.gen_range(1..=(t.len() - from).min(len - t.len()));
            t.extend_from_within(from..from + l);
        }
    }
    t.truncate(len);
    t
}

pub fn as_symbols(s: &[u8]) -> Vec<Symbol> {
    s.iter().map(|&c| Symbol::from(c)).collect()
}

/// The worst case for the grammar: `b ab aab ... a^m b`.
pub fn staircase(m: usize) -> Vec<u8> {
    let mut t = Vec::new();
    for k in 0..=m {
        t.extend(std::iter::repeat_n(b'a', k));
        t.push(b'b');
    }
    t
}

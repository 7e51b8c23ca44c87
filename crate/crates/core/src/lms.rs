//! Suffix typing and LMS factorization of symbol strings.
//!
//! This is the single parsing primitive of the grammar: the text and the
//! pattern are both cut at their S* (leftmost-minimal) positions at every
//! height. A boundary is always forced at the first position, which stands in
//! for a virtual sentinel smaller than every symbol preceding the string.

use crate::error::{Error, Result};
use crate::Symbol;

/// Type of the suffix starting at a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuffixType {
    L,
    S,
    /// An S position whose predecessor is L.
    SStar,
}

impl SuffixType {
    #[inline]
    pub fn is_l(self) -> bool {
        self == SuffixType::L
    }

    /// True for both `S` and `SStar`.
    #[inline]
    pub fn is_s(self) -> bool {
        self != SuffixType::L
    }
}

/// Classifies every position of `s` with a single right-to-left pass.
///
/// The last position is always S; it is S* whenever its predecessor is L.
pub fn classify_types<T: Ord + Copy>(s: &[T]) -> Result<Vec<SuffixType>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = s.len();
    let mut types = vec![SuffixType::S; n];
    for i in (0..n - 1).rev() {
        types[i] = match s[i].cmp(&s[i + 1]) {
            std::cmp::Ordering::Greater => SuffixType::L,
            std::cmp::Ordering::Less => SuffixType::S,
            std::cmp::Ordering::Equal => types[i + 1],
        };
    }
    for i in 1..n {
        if types[i] == SuffixType::S && types[i - 1] == SuffixType::L {
            types[i] = SuffixType::SStar;
        }
    }
    Ok(types)
}

/// Start positions (0-based) of the factors of an LMS factorization.
///
/// The first boundary is always 0; factor `j` spans
/// `boundaries[j]..boundaries[j + 1]`, and the last one runs to the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    boundaries: Vec<usize>,
    len: usize,
}

impl Factorization {
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Length of the factorized string.
    pub fn source_len(&self) -> usize {
        self.len
    }

    pub fn range(&self, j: usize) -> std::ops::Range<usize> {
        let end = self.boundaries.get(j + 1).copied().unwrap_or(self.len);
        self.boundaries[j]..end
    }

    pub fn factors<'a, T>(&'a self, s: &'a [T]) -> impl Iterator<Item = &'a [T]> + 'a {
        (0..self.len()).map(move |j| &s[self.range(j)])
    }
}

/// LMS factorization: a boundary at position 0 and at every S* position.
pub fn factorize<T: Ord + Copy>(s: &[T]) -> Result<Factorization> {
    let types = classify_types(s)?;
    let mut boundaries = vec![0];
    boundaries.extend((1..s.len()).filter(|&i| types[i] == SuffixType::SStar));
    Ok(Factorization {
        boundaries,
        len: s.len(),
    })
}

/// LMS factorization that keeps only S* positions whose status cannot change
/// when arbitrary symbols are appended to `s`.
///
/// The type of every position in the trailing run of equal symbols depends on
/// whatever follows the string, so an S* at the start of that run is dropped.
/// Every boundary past position 0 is then an S* position in any string that
/// contains `s` as a substring.
pub fn factorize_in_context<T: Ord + Copy>(s: &[T]) -> Result<Factorization> {
    let types = classify_types(s)?;
    let n = s.len();
    let mut run_start = n - 1;
    while run_start > 0 && s[run_start - 1] == s[n - 1] {
        run_start -= 1;
    }
    let mut boundaries = vec![0];
    boundaries.extend((1..run_start).filter(|&i| types[i] == SuffixType::SStar));
    Ok(Factorization { boundaries, len: n })
}

/// Maximal runs of equal symbols as `(symbol, count)` pairs.
pub fn run_length_encode<T: Eq + Copy>(s: &[T]) -> Result<Vec<(T, usize)>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut runs: Vec<(T, usize)> = Vec::new();
    for &c in s {
        match runs.last_mut() {
            Some((sym, count)) if *sym == c => *count += 1,
            _ => runs.push((c, 1)),
        }
    }
    Ok(runs)
}

/// Convenience wrapper for symbol strings.
pub fn factor_strings(s: &[Symbol]) -> Result<Vec<Vec<Symbol>>> {
    let f = factorize(s)?;
    Ok(f.factors(s).map(<[Symbol]>::to_vec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use SuffixType::*;

    /// Types straight from the suffix comparison definition.
    fn types_by_suffix_order(s: &[u32]) -> Vec<SuffixType> {
        let n = s.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let ty = if i == n - 1 {
                S
            } else {
                // Virtual end marker larger than everything keeps the last
                // position S, matching the stipulation.
                let a: Vec<u64> = s[i..].iter().map(|&x| x as u64).chain([u64::MAX]).collect();
                let b: Vec<u64> = s[i + 1..]
                    .iter()
                    .map(|&x| x as u64)
                    .chain([u64::MAX])
                    .collect();
                if a > b {
                    L
                } else {
                    S
                }
            };
            out.push(ty);
        }
        for i in 1..n {
            if out[i] == S && out[i - 1] == L {
                out[i] = SStar;
            }
        }
        out
    }

    fn bytes(s: &str) -> Vec<u32> {
        s.bytes().map(u32::from).collect()
    }

    #[test]
    fn single_symbol_is_s() {
        assert_eq!(classify_types(b"a").unwrap(), vec![S]);
    }

    #[test]
    fn descending_pair() {
        // The last position is S-class; its L predecessor makes it S*.
        let t = classify_types(b"ba").unwrap();
        assert_eq!(t, vec![L, SStar]);
        assert!(t[1].is_s());
    }

    #[test]
    fn acab_types() {
        assert_eq!(
            classify_types(b"acab").unwrap(),
            types_by_suffix_order(&bytes("acab"))
        );
        assert_eq!(classify_types(b"acab").unwrap(), vec![S, L, SStar, S]);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(classify_types::<u8>(&[]), Err(Error::EmptyInput)));
        assert!(matches!(factorize::<u8>(&[]), Err(Error::EmptyInput)));
        assert!(matches!(
            run_length_encode::<u8>(&[]),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(b"acabacab").unwrap();
        assert_eq!(f.boundaries(), &[0, 2, 4, 6]);
        let parts: Vec<&[u8]> = f.factors(b"acabacab").collect();
        assert_eq!(parts, vec![&b"ac"[..], b"ab", b"ac", b"ab"]);

        assert_eq!(factorize(b"a").unwrap().boundaries(), &[0]);

        let s = [257u32, 256, 257, 256];
        assert_eq!(
            factor_strings(&s).unwrap(),
            vec![vec![257], vec![256, 257], vec![256]]
        );
    }

    #[test]
    fn context_factorization_drops_trailing_run_boundary() {
        let s = [257u32, 256, 257, 256];
        assert_eq!(factorize_in_context(&s).unwrap().boundaries(), &[0, 1]);
        assert_eq!(
            factorize_in_context(b"cabcba").unwrap().boundaries(),
            &[0, 1]
        );
        assert_eq!(
            factorize_in_context(b"acabacab").unwrap().boundaries(),
            &[0, 2, 4, 6]
        );
    }

    #[test]
    fn run_length_examples() {
        assert_eq!(
            run_length_encode(b"abcc").unwrap(),
            vec![(b'a', 1), (b'b', 1), (b'c', 2)]
        );
        assert_eq!(run_length_encode(b"aaaa").unwrap(), vec![(b'a', 4)]);
        assert_eq!(
            run_length_encode(&[260u32, 259, 258]).unwrap(),
            vec![(260, 1), (259, 1), (258, 1)]
        );
    }

    #[test]
    fn matches_definition_exhaustively() {
        // every string over {0,1,2} up to length 7
        for len in 1..=7u32 {
            for code in 0..3u32.pow(len) {
                let mut c = code;
                let s: Vec<u32> = (0..len)
                    .map(|_| {
                        let d = c % 3;
                        c /= 3;
                        d
                    })
                    .collect();
                assert_eq!(
                    classify_types(&s).unwrap(),
                    types_by_suffix_order(&s),
                    "{s:?}"
                );
            }
        }
    }
}

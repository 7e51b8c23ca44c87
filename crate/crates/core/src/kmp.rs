/// Knuth-Morris-Pratt matcher over an integer alphabet.
#[derive(Debug, Clone)]
pub struct Kmp<'p, T> {
    pattern: &'p [T],
    failure: Vec<usize>,
}

impl<'p, T: Eq> Kmp<'p, T> {
    /// Panics if `pattern` is empty.
    pub fn new(pattern: &'p [T]) -> Self {
        assert!(!pattern.is_empty(), "empty KMP pattern");
        let mut failure = vec![0; pattern.len()];
        let mut k = 0;
        for i in 1..pattern.len() {
            while k > 0 && pattern[i] != pattern[k] {
                k = failure[k - 1];
            }
            if pattern[i] == pattern[k] {
                k += 1;
            }
            failure[i] = k;
        }
        Kmp { pattern, failure }
    }

    /// Calls `hit` with the start of every (possibly overlapping) match.
    pub fn for_each_match(&self, text: &[T], mut hit: impl FnMut(usize)) {
        let m = self.pattern.len();
        let mut k = 0;
        for (i, c) in text.iter().enumerate() {
            while k > 0 && *c != self.pattern[k] {
                k = self.failure[k - 1];
            }
            if *c == self.pattern[k] {
                k += 1;
            }
            if k == m {
                hit(i + 1 - m);
                k = self.failure[k - 1];
            }
        }
    }

    pub fn find_all(&self, text: &[T]) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_match(text, |i| out.push(i));
        out
    }
}

//! Fixed-length binary genotypes stored in packed 64-bit words.
//!
//! Position 1 of the usual notation is index 0 here and the leftmost
//! character of the text form. Within a word, earlier positions sit in
//! lower bits, so prefix scans are `trailing_zeros` on the inverted word.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

const WORD_BITS: usize = 64;

/// A fixed-length bitstring; the length is immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitstring {
    len: usize,
    words: Vec<u64>,
}

impl Bitstring {
    /// All-zero string of length `len`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "bitstring length must be positive");
        Bitstring {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// All-one string of length `len`.
    pub fn ones(len: usize) -> Self {
        let mut b = Bitstring::zeros(len);
        for w in &mut b.words {
            *w = !0;
        }
        b.mask_tail();
        b
    }

    /// Uniformly random string of length `len`.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut b = Bitstring::zeros(len);
        for w in &mut b.words {
            *w = rng.gen::<u64>();
        }
        b.mask_tail();
        b
    }

    /// Builds a string of length `len` from the low bits of `bits`
    /// (bit i of `bits` becomes position i). Used by exhaustive oracles.
    pub fn from_u64_bits(bits: u64, len: usize) -> Self {
        assert!((1..=64).contains(&len));
        let mut b = Bitstring::zeros(len);
        b.words[0] = bits;
        b.mask_tail();
        b
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Reuses this string's storage to copy `other` (same length required).
    pub fn copy_from(&mut self, other: &Bitstring) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of ones among positions `start..start + len`.
    pub fn count_ones_in(&self, start: usize, len: usize) -> usize {
        debug_assert!(start + len <= self.len);
        if len == 0 {
            return 0;
        }
        let end = start + len;
        let first = start / WORD_BITS;
        let last = (end - 1) / WORD_BITS;
        let lo_mask = !0u64 << (start % WORD_BITS);
        let hi_rem = end % WORD_BITS;
        let hi_mask = if hi_rem == 0 { !0u64 } else { (1u64 << hi_rem) - 1 };
        if first == last {
            (self.words[first] & lo_mask & hi_mask).count_ones() as usize
        } else {
            let mut total = (self.words[first] & lo_mask).count_ones() as usize;
            for w in &self.words[first + 1..last] {
                total += w.count_ones() as usize;
            }
            total + (self.words[last] & hi_mask).count_ones() as usize
        }
    }

    /// Length of the all-ones prefix of the whole string.
    pub fn leading_ones(&self) -> usize {
        self.leading_ones_in(0, self.len)
    }

    /// Length of the all-zeros suffix of the whole string.
    pub fn trailing_zeros(&self) -> usize {
        self.trailing_zeros_in(0, self.len)
    }

    /// Length of the run of ones starting at `start`, capped at `len`.
    pub fn leading_ones_in(&self, start: usize, len: usize) -> usize {
        debug_assert!(start + len <= self.len);
        let end = start + len;
        let mut pos = start;
        while pos < end {
            let off = pos % WORD_BITS;
            let chunk = !self.words[pos / WORD_BITS] >> off;
            if chunk == 0 {
                pos += WORD_BITS - off;
            } else {
                pos += chunk.trailing_zeros() as usize;
                break;
            }
        }
        pos.min(end) - start
    }

    /// Length of the run of zeros ending at `start + len - 1`, scanning
    /// backwards, capped at `len`.
    pub fn trailing_zeros_in(&self, start: usize, len: usize) -> usize {
        debug_assert!(start + len <= self.len);
        let end = start + len;
        let mut pos = end;
        while pos > start {
            let idx = pos - 1;
            let off = idx % WORD_BITS;
            let chunk = self.words[idx / WORD_BITS] << (WORD_BITS - 1 - off);
            if chunk == 0 {
                pos -= off + 1;
            } else {
                pos -= (chunk.leading_zeros() as usize).min(off + 1);
                break;
            }
        }
        end - pos.max(start)
    }

    /// Hamming distance to another string of the same length.
    pub fn hamming_distance(&self, other: &Bitstring) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring({self})")
    }
}

/// Parse error for the ASCII text form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseBitstringError {
    #[error("bitstring text must not be empty")]
    Empty,
    #[error("invalid character {0:?}, expected '0' or '1'")]
    InvalidChar(char),
}

impl FromStr for Bitstring {
    type Err = ParseBitstringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseBitstringError::Empty);
        }
        let mut b = Bitstring::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                other => return Err(ParseBitstringError::InvalidChar(other)),
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_leading_ones(bits: &[bool]) -> usize {
        bits.iter().take_while(|&&b| b).count()
    }

    fn naive_trailing_zeros(bits: &[bool]) -> usize {
        bits.iter().rev().take_while(|&&b| !b).count()
    }

    fn from_bools(bits: &[bool]) -> Bitstring {
        let mut b = Bitstring::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            b.set(i, v);
        }
        b
    }

    #[test]
    fn worked_example_leading_ones_trailing_zeros() {
        let x: Bitstring = "1110101100000".parse().unwrap();
        assert_eq!(x.leading_ones(), 3);
        assert_eq!(x.trailing_zeros(), 5);
    }

    #[test]
    fn all_zeros_and_all_ones() {
        for n in [1, 5, 63, 64, 65, 130] {
            let zeros = Bitstring::zeros(n);
            assert_eq!(zeros.leading_ones(), 0);
            assert_eq!(zeros.trailing_zeros(), n);
            let ones = Bitstring::ones(n);
            assert_eq!(ones.leading_ones(), n);
            assert_eq!(ones.trailing_zeros(), 0);
            assert_eq!(ones.count_ones(), n);
        }
    }

    #[test]
    fn text_form_is_position_one_first() {
        let x: Bitstring = "100".parse().unwrap();
        assert!(x.get(0));
        assert!(!x.get(1));
        assert_eq!(x.to_string(), "100");
        assert_eq!(x.leading_ones(), 1);
        assert_eq!(x.trailing_zeros(), 2);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("".parse::<Bitstring>(), Err(ParseBitstringError::Empty));
        assert_eq!(
            "01x".parse::<Bitstring>(),
            Err(ParseBitstringError::InvalidChar('x'))
        );
    }

    #[test]
    fn range_scans_cross_word_boundaries() {
        let mut b = Bitstring::ones(200);
        b.set(130, false);
        assert_eq!(b.leading_ones(), 130);
        assert_eq!(b.leading_ones_in(100, 64), 30);
        assert_eq!(b.leading_ones_in(131, 69), 69);
        let mut z = Bitstring::zeros(200);
        z.set(70, true);
        assert_eq!(z.trailing_zeros(), 129);
        assert_eq!(z.trailing_zeros_in(0, 70), 70);
        assert_eq!(z.trailing_zeros_in(60, 20), 9);
    }

    proptest! {
        #[test]
        fn scans_match_naive(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let b = from_bools(&bits);
            prop_assert_eq!(b.leading_ones(), naive_leading_ones(&bits));
            prop_assert_eq!(b.trailing_zeros(), naive_trailing_zeros(&bits));
            prop_assert_eq!(b.count_ones(), bits.iter().filter(|&&v| v).count());
        }

        #[test]
        fn range_scans_match_naive(
            bits in proptest::collection::vec(any::<bool>(), 1..200),
            raw_start in 0usize..200,
            raw_len in 0usize..200,
        ) {
            let n = bits.len();
            let start = raw_start % n;
            let len = raw_len % (n - start + 1);
            let b = from_bools(&bits);
            let window = &bits[start..start + len];
            prop_assert_eq!(b.leading_ones_in(start, len), naive_leading_ones(window));
            prop_assert_eq!(b.trailing_zeros_in(start, len), naive_trailing_zeros(window));
            prop_assert_eq!(b.count_ones_in(start, len), window.iter().filter(|&&v| v).count());
        }

        #[test]
        fn prefix_plus_suffix_bounded(bits in proptest::collection::vec(any::<bool>(), 1..120)) {
            let b = from_bools(&bits);
            let lo = b.leading_ones();
            let tz = b.trailing_zeros();
            prop_assert!(lo + tz <= bits.len());
            let is_step_shape = (0..bits.len()).all(|i| bits[i] == (i < lo));
            prop_assert_eq!(lo + tz == bits.len(), is_step_shape);
        }

        #[test]
        fn text_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..150)) {
            let b = from_bools(&bits);
            let parsed: Bitstring = b.to_string().parse().unwrap();
            prop_assert_eq!(parsed, b);
        }
    }
}

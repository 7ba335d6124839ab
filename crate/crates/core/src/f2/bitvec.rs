use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// A vector in {0,1}^n, packed into 64-bit words.
///
/// Coordinate `i` lives in word `i / 64` at bit `i % 64`. The textual form
/// writes coordinate 0 first, so "110" has ones at coordinates 0 and 1.
/// Ordering compares the integers whose bit i is coordinate i (coordinate 0
/// least significant): 100 < 010 < 110 < 001. This is the tie-break order
/// for minimum-weight witnesses and greedy basis extension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitVec {
    pub fn zero(n: usize) -> Self {
        BitVec {
            n,
            words: smallvec![0; word_count(n)],
        }
    }

    /// All-1 vector of dimension n.
    pub fn ones(n: usize) -> Self {
        let mut v = BitVec {
            n,
            words: smallvec![!0u64; word_count(n)],
        };
        v.mask_tail();
        v
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = BitVec::zero(n);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVec::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds the vector whose support is `indices` (0-indexed).
    pub fn from_support(n: usize, indices: &[usize]) -> Result<Self> {
        let mut v = BitVec::zero(n);
        for &i in indices {
            if i >= n {
                return Err(Error::VarOutOfRange { var: i, n });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    /// Parses a 0/1 string, coordinate 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = BitVec::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid bit character '{c}'"),
                    })
                }
            }
        }
        Ok(v)
    }

    fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.n);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight |v|.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinate-wise sum mod 2.
    pub fn xor(&self, other: &BitVec) -> Result<BitVec> {
        self.check_dim(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitVec { n: self.n, words })
    }

    pub fn xor_in_place(&mut self, other: &BitVec) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        self.check_dim(other)?;
        let acc: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(acc % 2 == 1)
    }

    /// Index of the first 1, if any.
    pub fn leading_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Support as a sorted list of coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i)).collect()
    }

    fn check_dim(&self, other: &BitVec) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        // Little-endian integer comparison: high words first.
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_and_parse() {
        let v = BitVec::parse("10110").unwrap();
        assert_eq!(v.dim(), 5);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.to_string(), "10110");
        assert!(v.get(0) && !v.get(1) && v.get(2));
    }

    #[test]
    fn xor_and_dot() {
        let a = BitVec::parse("1100").unwrap();
        let b = BitVec::parse("0110").unwrap();
        assert_eq!(a.xor(&b).unwrap().to_string(), "1010");
        assert!(a.dot(&b).unwrap()); // overlap {1} has odd size
        let c = BitVec::parse("0011").unwrap();
        assert!(!a.dot(&c).unwrap());
    }

    #[test]
    fn witness_order() {
        let v = |s: &str| BitVec::parse(s).unwrap();
        assert!(v("100") < v("010"));
        assert!(v("010") < v("110"));
        assert!(v("110") < v("001"));
        assert!(v("000") < v("100"));
    }

    #[test]
    fn order_across_word_boundary() {
        let mut a = BitVec::zero(130);
        let mut b = BitVec::zero(130);
        a.set(128, true);
        b.set(129, true);
        assert!(a < b);
        assert_eq!(a.weight(), 1);
        assert_eq!(a.leading_one(), Some(128));
    }

    #[test]
    fn dim_mismatch_is_an_error() {
        let a = BitVec::zero(3);
        let b = BitVec::zero(4);
        assert!(a.xor(&b).is_err());
        assert!(a.dot(&b).is_err());
    }

    #[test]
    fn ones_masks_tail() {
        let v = BitVec::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.xor(&BitVec::ones(70)).unwrap(), BitVec::zero(70));
    }
}

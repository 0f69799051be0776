// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Compact integer codes for permutations and colorings.

use crate::error::{Error, Result};

/// Largest `n` whose factorial fits in a `u64`.
pub const MAX_PERM_LEN: usize = 20;

/// How a state vector maps to a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codec {
    /// Lehmer rank of a permutation of `0..n`.
    Perm { n: usize },
    /// Base-`base` digits, one per vertex.
    Digits { n: usize, base: u64 },
}

impl Codec {
    pub fn perm(n: usize) -> Result<Self> {
        if n > MAX_PERM_LEN {
            return Err(Error::InvalidInstance(format!(
                "{n} vertices exceed the exhaustive search limit of {MAX_PERM_LEN}"
            )));
        }
        Ok(Codec::Perm { n })
    }

    pub fn digits(n: usize, base: u64) -> Result<Self> {
        let base = base.max(1);
        let fits = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(base)).is_some();
        if !fits {
            return Err(Error::InvalidInstance(format!(
                "{n} vertices with {base} colors exceed the exhaustive search limit"
            )));
        }
        Ok(Codec::Digits { n, base })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match *self {
            Codec::Perm { n } | Codec::Digits { n, .. } => n,
        }
    }

    /// Number of codes, if it fits.
    pub fn size(&self) -> Option<u64> {
        match *self {
            Codec::Perm { n } => (1..=n as u64).try_fold(1u64, |a, k| a.checked_mul(k)),
            Codec::Digits { n, base } => (0..n).try_fold(1u64, |a, _| a.checked_mul(base)),
        }
    }

    pub fn encode(&self, s: &[u8]) -> u64 {
        match *self {
            Codec::Perm { n } => {
                let mut rank = 0u64;
                let mut used = 0u32;
                for (i, &x) in s.iter().enumerate() {
                    let smaller_unused = (x as u32 - (used & ((1u32 << x) - 1)).count_ones()) as u64;
                    rank = rank * (n - i) as u64 + smaller_unused;
                    used |= 1 << x;
                }
                rank
            }
            Codec::Digits { base, .. } => s.iter().fold(0u64, |acc, &d| acc * base + d as u64),
        }
    }

    pub fn decode(&self, mut code: u64, out: &mut [u8]) {
        match *self {
            Codec::Perm { n } => {
                let mut digits = [0u8; MAX_PERM_LEN];
                for i in (0..n).rev() {
                    let radix = (n - i) as u64;
                    digits[i] = (code % radix) as u8;
                    code /= radix;
                }
                let mut used = 0u32;
                for i in 0..n {
                    let mut k = digits[i];
                    let mut x = 0u8;
                    loop {
                        if used & (1 << x) == 0 {
                            if k == 0 {
                                break;
                            }
                            k -= 1;
                        }
                        x += 1;
                    }
                    out[i] = x;
                    used |= 1 << x;
                }
            }
            Codec::Digits { n, base } => {
                for i in (0..n).rev() {
                    out[i] = (code % base) as u8;
                    code /= base;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_rank_is_a_bijection() {
        let c = Codec::perm(5).unwrap();
        let mut seen = [false; 120];
        let mut buf = [0u8; 5];
        for code in 0..120 {
            c.decode(code, &mut buf);
            assert_eq!(c.encode(&buf), code);
            let mut sorted = buf;
            sorted.sort_unstable();
            assert_eq!(sorted, [0, 1, 2, 3, 4]);
            assert!(!std::mem::replace(&mut seen[code as usize], true));
        }
        assert_eq!(c.encode(&[0, 1, 2, 3, 4]), 0);
        assert_eq!(c.encode(&[4, 3, 2, 1, 0]), 119);
    }

    #[test]
    fn digit_codes() {
        let c = Codec::digits(4, 3).unwrap();
        let mut buf = [0u8; 4];
        for code in 0..81 {
            c.decode(code, &mut buf);
            assert_eq!(c.encode(&buf), code);
        }
        assert!(Codec::digits(70, 2).is_err());
        assert!(Codec::perm(21).is_err());
    }
}

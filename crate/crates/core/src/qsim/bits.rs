use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A classical bit pattern written most-significant (highest qubit) first.
///
/// Ordering is lexicographic over the rendered `0`/`1` characters, which for
/// equal widths coincides with numeric order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    /// Low `width` bits of `value`, rendered big-endian.
    pub fn from_u64(value: u64, width: usize) -> Self {
        assert!(width <= 64, "width {width} exceeds 64 bits");
        BitString {
            bits: (0..width).rev().map(|i| (value >> i) & 1 == 1).collect(),
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bits left to right.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bit held by the `i`-th least significant position (qubit `offset + i`
    /// when this string is loaded at `offset`).
    pub fn lsb(&self, i: usize) -> bool {
        self.bits[self.bits.len() - 1 - i]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len() != other.len() {
            return Err(Error::contract(format!(
                "bitstring lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(BitString {
            bits: self
                .bits
                .iter()
                .zip(other.bits.iter())
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn hamming_distance(&self, other: &BitString) -> usize {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .filter(|(a, b)| a != b)
            .count()
            + self.len().abs_diff(other.len())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString { bits })
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u64_roundtrip_and_rendering() {
        let b = BitString::from_u64(0x6a, 8);
        assert_eq!(b.to_string(), "01101010");
        assert_eq!(b.to_u64(), Some(0x6a));
        assert!(!b.lsb(0));
        assert!(b.lsb(1));
        assert_eq!("01101010".parse::<BitString>().unwrap(), b);
    }

    #[test]
    fn rejects_non_binary() {
        assert!("012".parse::<BitString>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a: BitString = "01".parse().unwrap();
        let b: BitString = "10".parse().unwrap();
        assert!(a < b);
    }

    #[test]
    fn xor_length_mismatch() {
        let a = BitString::zeros(3);
        let b = BitString::zeros(4);
        assert!(matches!(a.xor(&b), Err(Error::Contract(_))));
    }
}

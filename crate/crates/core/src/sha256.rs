//! Bit-exact SHA-256 (FIPS 180-4).
//!
//! The compression function is written once, generic over a [`WordXor`]
//! provider, so the same control flow serves the classical hash and the
//! hybrid pipeline that evaluates every 32-bit XOR on a quantum backend.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const BLOCK_BYTES: usize = 64;
pub const DIGEST_BYTES: usize = 32;

/// Messages must be shorter than 2^64 bits.
pub const MAX_MESSAGE_BYTES: u64 = 1 << 61;

/// Initial hash value: first 32 bits of the fractional parts of the square
/// roots of the first eight primes.
pub const H0: [u32; 8] = [
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19,
];

const K: [u32; 64] = [
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
];

/// The eight-word chaining value `H_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HashState {
    pub words: [u32; 8],
}

impl HashState {
    pub fn to_digest(&self) -> Digest {
        let mut out = [0u8; DIGEST_BYTES];
        for (chunk, w) in out.chunks_exact_mut(4).zip(self.words.iter()) {
            chunk.copy_from_slice(&w.to_be_bytes());
        }
        Digest(out)
    }

    pub fn to_hex(&self) -> String {
        self.to_digest().to_hex()
    }
}

impl fmt::Display for HashState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// One padded 512-bit block.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct MessageBlock([u8; BLOCK_BYTES]);

impl MessageBlock {
    pub fn as_bytes(&self) -> &[u8; BLOCK_BYTES] {
        &self.0
    }
}

impl From<[u8; BLOCK_BYTES]> for MessageBlock {
    fn from(bytes: [u8; BLOCK_BYTES]) -> Self {
        MessageBlock(bytes)
    }
}

impl TryFrom<&[u8]> for MessageBlock {
    type Error = Error;

    fn try_from(bytes: &[u8]) -> Result<Self> {
        let arr: [u8; BLOCK_BYTES] = bytes.try_into().map_err(|_| {
            Error::contract(format!(
                "message block must be {BLOCK_BYTES} bytes, got {}",
                bytes.len()
            ))
        })?;
        Ok(MessageBlock(arr))
    }
}

impl fmt::Debug for MessageBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MessageBlock({})", hex::encode(self.0))
    }
}

/// A 256-bit SHA-256 output.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; DIGEST_BYTES]);

impl Digest {
    pub fn as_bytes(&self) -> &[u8; DIGEST_BYTES] {
        &self.0
    }

    /// Lowercase, 64 hex digits.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::parse(1, format!("digest hex: {e}")))?;
        let arr: [u8; DIGEST_BYTES] = bytes
            .try_into()
            .map_err(|_| Error::parse(1, "digest must be exactly 64 hex digits"))?;
        Ok(Digest(arr))
    }

    pub fn leading_zero_bits(&self) -> u32 {
        let mut n = 0;
        for b in self.0 {
            if b == 0 {
                n += 8;
            } else {
                n += b.leading_zeros();
                break;
            }
        }
        n
    }

    /// Number of differing bits against another digest.
    pub fn hamming_distance(&self, other: &Digest) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl FromStr for Digest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Digest::from_hex(s)
    }
}

impl serde::Serialize for Digest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Supplies the 32-bit XOR used inside the round function.
pub trait WordXor {
    fn xor(&mut self, a: u32, b: u32) -> Result<u32>;
}

/// Plain CPU XOR.
#[derive(Clone, Copy, Debug, Default)]
pub struct NativeXor;

impl WordXor for NativeXor {
    #[inline(always)]
    fn xor(&mut self, a: u32, b: u32) -> Result<u32> {
        Ok(a ^ b)
    }
}

/// How `E(H)` is folded back into `H` at the end of each block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FeedForward {
    /// Word-wise addition modulo 2^32, as SHA-256 defines it.
    #[default]
    ModularAdd,
    /// Generic Davies-Meyer `E(H) ⊕ H`. Not SHA-256; used for demonstrations.
    Xor,
}

pub fn initial_state() -> HashState {
    HashState { words: H0 }
}

fn check_length(len: u64) -> Result<()> {
    if len >= MAX_MESSAGE_BYTES {
        return Err(Error::MessageTooLong(len));
    }
    Ok(())
}

/// Appends the `1` bit, zero fill and the 64-bit big-endian bit length.
pub fn pad_message(message: &[u8]) -> Result<Vec<MessageBlock>> {
    check_length(message.len() as u64)?;
    let bit_len = (message.len() as u64) * 8;
    let total = (message.len() + 1 + 8).div_ceil(BLOCK_BYTES) * BLOCK_BYTES;

    let mut buf = Vec::with_capacity(total);
    buf.extend_from_slice(message);
    buf.push(0x80);
    buf.resize(total - 8, 0);
    buf.extend_from_slice(&bit_len.to_be_bytes());

    Ok(buf
        .chunks_exact(BLOCK_BYTES)
        .map(|c| MessageBlock(c.try_into().expect("exact chunk")))
        .collect())
}

#[inline(always)]
fn big_sigma0<X: WordXor>(x: u32, xor: &mut X) -> Result<u32> {
    let t = xor.xor(x.rotate_right(2), x.rotate_right(13))?;
    xor.xor(t, x.rotate_right(22))
}

#[inline(always)]
fn big_sigma1<X: WordXor>(x: u32, xor: &mut X) -> Result<u32> {
    let t = xor.xor(x.rotate_right(6), x.rotate_right(11))?;
    xor.xor(t, x.rotate_right(25))
}

#[inline(always)]
fn small_sigma0<X: WordXor>(x: u32, xor: &mut X) -> Result<u32> {
    let t = xor.xor(x.rotate_right(7), x.rotate_right(18))?;
    xor.xor(t, x >> 3)
}

#[inline(always)]
fn small_sigma1<X: WordXor>(x: u32, xor: &mut X) -> Result<u32> {
    let t = xor.xor(x.rotate_right(17), x.rotate_right(19))?;
    xor.xor(t, x >> 10)
}

#[inline(always)]
fn ch<X: WordXor>(e: u32, f: u32, g: u32, xor: &mut X) -> Result<u32> {
    xor.xor(e & f, !e & g)
}

#[inline(always)]
fn maj<X: WordXor>(a: u32, b: u32, c: u32, xor: &mut X) -> Result<u32> {
    let t = xor.xor(a & b, a & c)?;
    xor.xor(t, b & c)
}

/// Number of 32-bit XORs the round function issues per block.
pub const XORS_PER_BLOCK: usize = 48 * 4 + 64 * 7;

/// One compression step `H_i = E_{m_i}(H_{i-1}) + H_{i-1}` with a caller
/// supplied XOR and feed-forward.
pub fn compress_with<X: WordXor>(
    prev: &HashState,
    block: &MessageBlock,
    xor: &mut X,
    feed_forward: FeedForward,
) -> Result<HashState> {
    let mut w = [0u32; 64];
    for (i, chunk) in block.0.chunks_exact(4).enumerate() {
        w[i] = u32::from_be_bytes(chunk.try_into().expect("4-byte chunk"));
    }
    for t in 16..64 {
        let s1 = small_sigma1(w[t - 2], xor)?;
        let s0 = small_sigma0(w[t - 15], xor)?;
        w[t] = s1
            .wrapping_add(w[t - 7])
            .wrapping_add(s0)
            .wrapping_add(w[t - 16]);
    }

    let [mut a, mut b, mut c, mut d, mut e, mut f, mut g, mut h] = prev.words;
    for t in 0..64 {
        let t1 = h
            .wrapping_add(big_sigma1(e, xor)?)
            .wrapping_add(ch(e, f, g, xor)?)
            .wrapping_add(K[t])
            .wrapping_add(w[t]);
        let t2 = big_sigma0(a, xor)?.wrapping_add(maj(a, b, c, xor)?);
        h = g;
        g = f;
        f = e;
        e = d.wrapping_add(t1);
        d = c;
        c = b;
        b = a;
        a = t1.wrapping_add(t2);
    }

    let mixed = [a, b, c, d, e, f, g, h];
    let mut words = [0u32; 8];
    for i in 0..8 {
        words[i] = match feed_forward {
            FeedForward::ModularAdd => mixed[i].wrapping_add(prev.words[i]),
            FeedForward::Xor => xor.xor(mixed[i], prev.words[i])?,
        };
    }
    Ok(HashState { words })
}

pub fn compress(prev: &HashState, block: &MessageBlock) -> HashState {
    compress_with(prev, block, &mut NativeXor, FeedForward::ModularAdd)
        .expect("native xor is infallible")
}

/// Folds the compression function over every padded block of `message`.
pub fn digest_with<X: WordXor>(
    message: &[u8],
    xor: &mut X,
    feed_forward: FeedForward,
) -> Result<Digest> {
    let mut state = initial_state();
    for block in pad_message(message)? {
        state = compress_with(&state, &block, xor, feed_forward)?;
    }
    Ok(state.to_digest())
}

/// # Panics
///
/// Only for messages of 2^61 bytes or more, which cannot be held in memory.
pub fn sha256(message: &[u8]) -> Digest {
    digest_with(message, &mut NativeXor, FeedForward::ModularAdd)
        .expect("in-memory messages are below the length limit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_state_matches_constants() {
        let h = initial_state();
        assert_eq!(h.words[0], 0x6a09e667);
        assert_eq!(h.words[7], 0x5be0cd19);
        assert_eq!(h.to_hex().len(), 64);
        assert_eq!(
            h.to_hex(),
            "6a09e667bb67ae853c6ef372a54ff53a510e527f9b05688c1f83d9ab5be0cd19"
        );
    }

    #[test]
    fn padding_block_counts() {
        let empty = pad_message(b"").unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].as_bytes()[0], 0x80);
        assert!(empty[0].as_bytes()[1..].iter().all(|&b| b == 0));

        assert_eq!(pad_message(&[0x61; 55]).unwrap().len(), 1);
        assert_eq!(pad_message(&[0x61; 56]).unwrap().len(), 2);
        assert_eq!(pad_message(&[0x61; 64]).unwrap().len(), 2);
        assert_eq!(pad_message(&[0x61; 119]).unwrap().len(), 2);
        assert_eq!(pad_message(&[0x61; 120]).unwrap().len(), 3);
    }

    #[test]
    fn padding_trailer_is_big_endian_bit_length() {
        let blocks = pad_message(&[0u8; 3]).unwrap();
        let b = blocks[0].as_bytes();
        assert_eq!(&b[56..], &24u64.to_be_bytes());
    }

    #[test]
    fn oversize_length_rejected() {
        assert_eq!(
            check_length(MAX_MESSAGE_BYTES),
            Err(Error::MessageTooLong(MAX_MESSAGE_BYTES))
        );
        assert!(check_length(MAX_MESSAGE_BYTES - 1).is_ok());
    }

    #[test]
    fn reference_vectors() {
        let cases: [(&[u8], &str); 5] = [
            (
                b"this is my message for quantum",
                "9b95bfa6ceb2de10d7ef3ff3b794ffea2c2ba7911a209b323a55e8f306a64931",
            ),
            (
                b"DMU",
                "3a8b4b9d4649b3573f552a9eb6b5c1244fd79815e817aa86d65422e2564b2d0a",
            ),
            (
                b"DMV",
                "d4fee25a1acee0e6610473456a83bd2f4f5ccf96e25c13b88f65cd79ca54d7ed",
            ),
            (
                b"A",
                "559aead08264d5795d3909718cdd05abd49572e84fe55590eef31a88a08fdffd",
            ),
            (
                b"",
                "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
            ),
        ];
        for (msg, hex) in cases {
            assert_eq!(sha256(msg).to_hex(), hex, "{:?}", msg);
        }
    }

    #[test]
    fn single_block_compress_equals_digest() {
        for msg in [&b"A"[..], b"DMU", b"DMV"] {
            let block = pad_message(msg).unwrap()[0];
            let h = compress(&initial_state(), &block);
            assert_eq!(h.to_digest(), sha256(msg));
        }
    }

    #[test]
    fn malformed_block_is_contract_violation() {
        let err = MessageBlock::try_from(&[0u8; 63][..]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn one_character_change_avalanches() {
        let d = sha256(b"DMU").hamming_distance(&sha256(b"DMV"));
        assert!(d >= 100, "only {d} bits differ");
    }

    #[test]
    fn xor_feed_forward_differs_from_sha256() {
        let d = digest_with(b"A", &mut NativeXor, FeedForward::Xor).unwrap();
        assert_ne!(d, sha256(b"A"));
    }

    #[test]
    fn xor_count_per_block() {
        struct Counter(usize);
        impl WordXor for Counter {
            fn xor(&mut self, a: u32, b: u32) -> Result<u32> {
                self.0 += 1;
                Ok(a ^ b)
            }
        }
        let mut c = Counter(0);
        let block = pad_message(b"A").unwrap()[0];
        compress_with(&initial_state(), &block, &mut c, FeedForward::ModularAdd).unwrap();
        assert_eq!(c.0, XORS_PER_BLOCK);
    }

    #[test]
    fn leading_zero_bits() {
        let mut b = [0xffu8; 32];
        assert_eq!(Digest(b).leading_zero_bits(), 0);
        b[0] = 0;
        b[1] = 0x1f;
        assert_eq!(Digest(b).leading_zero_bits(), 11);
        assert_eq!(Digest([0; 32]).leading_zero_bits(), 256);
    }
}

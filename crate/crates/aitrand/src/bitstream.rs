//! Packed bit strings, raw-file ingestion, block counting, and sequential
//! bit consumption.
//!
//! Bits are stored MSB-first within each byte: bit index `i` lives in byte
//! `i / 8` at bit position `7 - (i % 8)`. Raw files are headerless packed
//! bytes in the same order; a file of `b` bytes carries exactly `8 * b` bits
//! unless explicitly truncated.

use std::path::Path;

use crate::error::{Error, Result};

/// Bit numbering convention for raw-file ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOrder {
    /// Bit 7 of each byte is read first (the native convention).
    MsbFirst,
    /// Bit 0 of each byte is read first. Provided for dumps produced by
    /// hardware that fills bytes from the low end.
    LsbFirst,
}

/// An immutable packed sequence of bits with an exact bit length.
///
/// Trailing pad bits in the final stored byte are always zero, so two
/// `BitString`s with the same bits compare equal byte-for-byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString {
    data: Vec<u8>,
    bit_len: u64,
}

impl BitString {
    /// Builds a `BitString` from packed bytes, keeping the first `bit_len`
    /// bits. Storage is trimmed to `ceil(bit_len / 8)` bytes and pad bits in
    /// the last byte are zeroed.
    pub fn from_packed_bytes(bytes: impl Into<Vec<u8>>, bit_len: u64) -> Result<Self> {
        let mut data = bytes.into();
        let max = data.len() as u64 * 8;
        if bit_len > max {
            return Err(Error::Length {
                bit_len,
                bytes: data.len(),
                max,
            });
        }
        data.truncate(bit_len.div_ceil(8) as usize);
        let pad = (8 - (bit_len % 8) as u32) % 8;
        if pad > 0 {
            if let Some(last) = data.last_mut() {
                *last &= 0xFFu8 << pad;
            }
        }
        Ok(Self { data, bit_len })
    }

    /// Builds a `BitString` covering every bit of `bytes`.
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        let data = bytes.into();
        let bit_len = data.len() as u64 * 8;
        Self { data, bit_len }
    }

    pub fn bit_len(&self) -> u64 {
        self.bit_len
    }

    pub fn is_empty(&self) -> bool {
        self.bit_len == 0
    }

    /// The packed storage: `ceil(bit_len / 8)` bytes, pad bits zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    /// The whole bytes of the string (`floor(bit_len / 8)`); a trailing
    /// partial byte is not included.
    pub fn full_bytes(&self) -> &[u8] {
        &self.data[..(self.bit_len / 8) as usize]
    }

    /// Bit at index `i` (0 or 1).
    ///
    /// # Panics
    ///
    /// Panics if `i >= bit_len`.
    #[inline]
    pub fn bit(&self, i: u64) -> u8 {
        assert!(i < self.bit_len, "bit index {i} out of range {}", self.bit_len);
        (self.data[(i / 8) as usize] >> (7 - (i % 8) as u32)) & 1
    }

    /// Iterator over the bits in stream order.
    pub fn iter_bits(&self) -> Bits<'_> {
        Bits {
            source: self,
            pos: 0,
        }
    }

    /// A fresh cursor positioned at bit 0.
    pub fn cursor(&self) -> BitCursor<'_> {
        BitCursor {
            source: self,
            position: 0,
        }
    }

    /// Counts non-overlapping `m`-bit blocks by lexicographic value.
    ///
    /// The string is partitioned into `floor(bit_len / m)` consecutive
    /// blocks; a trailing remainder shorter than `m` is discarded.
    pub fn count_blocks(&self, m: u32) -> Result<BlockCounts> {
        if m == 0 || m > 16 {
            return Err(Error::Parameter(format!(
                "block length must be in 1..=16, got {m}"
            )));
        }
        let blocks_total = self.bit_len / m as u64;
        let mut counts = vec![0u64; 1usize << m];
        let mask = (1u32 << m) - 1;

        let mut acc: u32 = 0;
        let mut held: u32 = 0;
        let mut emitted: u64 = 0;
        'outer: for &byte in &self.data {
            acc = (acc << 8) | byte as u32;
            held += 8;
            while held >= m {
                if emitted == blocks_total {
                    break 'outer;
                }
                held -= m;
                counts[((acc >> held) & mask) as usize] += 1;
                emitted += 1;
            }
        }
        Ok(BlockCounts {
            m,
            counts,
            blocks_total,
        })
    }
}

/// Iterator produced by [`BitString::iter_bits`].
pub struct Bits<'a> {
    source: &'a BitString,
    pos: u64,
}

impl Iterator for Bits<'_> {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        if self.pos >= self.source.bit_len {
            return None;
        }
        let b = self.source.bit(self.pos);
        self.pos += 1;
        Some(b)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.source.bit_len - self.pos) as usize;
        (left, Some(left))
    }
}

/// Occurrence counts of the `2^m` possible `m`-bit blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCounts {
    m: u32,
    counts: Vec<u64>,
    blocks_total: u64,
}

impl BlockCounts {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Count of the block whose lexicographic value is `value`.
    pub fn count(&self, value: usize) -> u64 {
        self.counts[value]
    }

    /// All `2^m` counts, indexed by lexicographic block value.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `floor(bit_len / m)`, the number of whole blocks counted.
    pub fn blocks_total(&self) -> u64 {
        self.blocks_total
    }
}

/// A consuming reader over a [`BitString`]; the position never moves
/// backwards, so bits are never recycled.
#[derive(Debug)]
pub struct BitCursor<'a> {
    source: &'a BitString,
    position: u64,
}

impl BitCursor<'_> {
    /// Next unread bit index.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn remaining(&self) -> u64 {
        self.source.bit_len - self.position
    }

    /// Reads the next `k` bits (1..=63) as an unsigned integer, first-read
    /// bit most significant, and advances the position.
    ///
    /// Running out of bits yields [`Error::Exhausted`], which callers treat
    /// as "sample too short" rather than a parameter mistake.
    pub fn take_bits(&mut self, k: u32) -> Result<u64> {
        if k == 0 || k > 63 {
            return Err(Error::Parameter(format!(
                "bit count must be in 1..=63, got {k}"
            )));
        }
        if u64::from(k) > self.remaining() {
            return Err(Error::Exhausted {
                requested: k,
                remaining: self.remaining(),
            });
        }
        let mut value = 0u64;
        for _ in 0..k {
            value = (value << 1) | u64::from(self.source.bit(self.position));
            self.position += 1;
        }
        Ok(value)
    }
}

/// Loads a headerless raw bit file, MSB-first within bytes.
///
/// `truncate_bits` keeps only the leading portion of the file; asking for
/// more bits than the file holds is a length error.
pub fn load_raw_file(path: impl AsRef<Path>, truncate_bits: Option<u64>) -> Result<BitString> {
    load_raw_file_with_order(path, truncate_bits, BitOrder::MsbFirst)
}

/// [`load_raw_file`] with an explicit bit-numbering convention.
pub fn load_raw_file_with_order(
    path: impl AsRef<Path>,
    truncate_bits: Option<u64>,
    order: BitOrder,
) -> Result<BitString> {
    let path = path.as_ref();
    let mut data = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if order == BitOrder::LsbFirst {
        for b in &mut data {
            *b = b.reverse_bits();
        }
    }
    let full = data.len() as u64 * 8;
    let bit_len = match truncate_bits {
        Some(t) if t > full => {
            return Err(Error::Length {
                bit_len: t,
                bytes: data.len(),
                max: full,
            });
        }
        Some(t) => t,
        None => full,
    };
    BitString::from_packed_bytes(data, bit_len)
}

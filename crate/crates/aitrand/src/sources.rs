//! Deterministic bit sources and von Neumann normalization.
//!
//! Two fully specified generators stand in for vendor PRNGs: a portable
//! xorshift64* generator and the deliberately weak RANDU recurrence (a
//! sensitivity fixture the battery must be able to flag). Champernowne's
//! constant covers the computable-but-acyclic class, and a biased wrapper
//! over the xorshift words models an unbalanced hardware stream. Everything
//! else is ingested from raw files.
//!
//! All generators are pure functions of their parameters: identical
//! parameters give bit-identical output on every platform.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bitstream::{load_raw_file, BitString};
use crate::error::{Error, Result};

const XORSHIFT_MULTIPLIER: u64 = 2_685_821_657_736_338_717;
const RANDU_MULTIPLIER: u64 = 65_539;
const RANDU_MODULUS: u64 = 1 << 31;

/// xorshift64* word stream.
struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        let mut s = self.state;
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        self.state = s;
        s.wrapping_mul(XORSHIFT_MULTIPLIER)
    }
}

/// Incremental MSB-first bit packer.
struct BitPacker {
    data: Vec<u8>,
    acc: u8,
    held: u32,
    len: u64,
}

impl BitPacker {
    fn with_capacity(bits: u64) -> Self {
        Self {
            data: Vec::with_capacity(bits.div_ceil(8) as usize),
            acc: 0,
            held: 0,
            len: 0,
        }
    }

    #[inline]
    fn push(&mut self, bit: u8) {
        self.acc = (self.acc << 1) | (bit & 1);
        self.held += 1;
        self.len += 1;
        if self.held == 8 {
            self.data.push(self.acc);
            self.acc = 0;
            self.held = 0;
        }
    }

    fn finish(mut self) -> BitString {
        if self.held > 0 {
            self.data.push(self.acc << (8 - self.held));
        }
        BitString::from_packed_bytes(self.data, self.len)
            .expect("packer length is consistent by construction")
    }
}

/// xorshift64* bit stream: each 64-bit output word is emitted MSB-first and
/// the stream is truncated to `bit_len`.
///
/// Seed 0 is rejected (it is the fixed point of the recurrence).
pub fn gen_prng(seed: u64, bit_len: u64) -> Result<BitString> {
    if seed == 0 {
        return Err(Error::Parameter("prng seed must be nonzero".into()));
    }
    if bit_len == 0 {
        return Err(Error::Parameter("bit_len must be at least 1".into()));
    }
    let mut rng = XorShift64Star::new(seed);
    let nbytes = bit_len.div_ceil(8) as usize;
    let mut data = Vec::with_capacity(nbytes + 8);
    while data.len() < nbytes {
        data.extend_from_slice(&rng.next_word().to_be_bytes());
    }
    data.truncate(nbytes);
    BitString::from_packed_bytes(data, bit_len)
}

/// RANDU bit stream: `x <- 65539 * x mod 2^31`, emitting bit 30 of each
/// successive state. A classically bad generator, kept as a known-weak
/// fixture.
pub fn gen_weak_prng(seed: u64, bit_len: u64) -> Result<BitString> {
    if seed == 0 || seed % 2 == 0 || seed >= RANDU_MODULUS {
        return Err(Error::Parameter(format!(
            "weak prng seed must be odd and in 1..2^31, got {seed}"
        )));
    }
    if bit_len == 0 {
        return Err(Error::Parameter("bit_len must be at least 1".into()));
    }
    let mut packer = BitPacker::with_capacity(bit_len);
    let mut x = seed;
    for _ in 0..bit_len {
        x = (RANDU_MULTIPLIER * x) % RANDU_MODULUS;
        packer.push((x >> 30) as u8 & 1);
    }
    Ok(packer.finish())
}

/// Binary Champernowne sequence: the binary representations of 1, 2, 3, ...
/// concatenated without leading zeros, truncated to `bit_len`.
pub fn gen_champernowne(bit_len: u64) -> Result<BitString> {
    if bit_len == 0 {
        return Err(Error::Parameter("bit_len must be at least 1".into()));
    }
    let mut packer = BitPacker::with_capacity(bit_len);
    let mut emitted = 0u64;
    let mut k = 1u64;
    'outer: loop {
        let width = 64 - k.leading_zeros();
        for shift in (0..width).rev() {
            packer.push(((k >> shift) & 1) as u8);
            emitted += 1;
            if emitted == bit_len {
                break 'outer;
            }
        }
        k += 1;
    }
    Ok(packer.finish())
}

/// Biased bit stream: bit `i` is 1 iff the `i`-th xorshift64* word of
/// `gen_prng(seed)`, read as a fraction in `[0, 1)`, is below `p`.
pub fn gen_biased(seed: u64, p: f64, bit_len: u64) -> Result<BitString> {
    if seed == 0 {
        return Err(Error::Parameter("prng seed must be nonzero".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!(
            "bias probability must lie strictly in (0, 1), got {p}"
        )));
    }
    if bit_len == 0 {
        return Err(Error::Parameter("bit_len must be at least 1".into()));
    }
    // word / 2^64 < p  <=>  word < p * 2^64; the right side fits u128 exactly.
    let threshold = (p * 18_446_744_073_709_551_616.0) as u128;
    let mut rng = XorShift64Star::new(seed);
    let mut packer = BitPacker::with_capacity(bit_len);
    for _ in 0..bit_len {
        let bit = u8::from((rng.next_word() as u128) < threshold);
        packer.push(bit);
    }
    Ok(packer.finish())
}

/// von Neumann normalization: partition into non-overlapping pairs (a
/// trailing odd bit is discarded), drop `00` and `11`, map `01 -> 0` and
/// `10 -> 1`.
pub fn vn_normalize(raw: &BitString) -> BitString {
    let pairs = raw.bit_len() / 2;
    let mut packer = BitPacker::with_capacity(pairs);
    let mut bits = raw.iter_bits();
    for _ in 0..pairs {
        let a = bits.next().expect("pair count bounded by bit_len");
        let b = bits.next().expect("pair count bounded by bit_len");
        if a != b {
            packer.push(a);
        }
    }
    packer.finish()
}

/// Which generator (or file) a source string comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Prng,
    WeakPrng,
    Champernowne,
    Biased,
    File,
}

/// A single source string: generator parameters or a raw file reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceDescriptor {
    pub kind: SourceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Requested length in bits. Mandatory for generators; for files, `None`
    /// means the whole file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bit_len: Option<u64>,
}

impl SourceDescriptor {
    /// Checks the parameter combination without producing any bits.
    pub fn validate(&self) -> Result<()> {
        let need = |opt: bool, what: &str| -> Result<()> {
            if opt {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "source kind {:?} requires {what}",
                    self.kind
                )))
            }
        };
        match self.kind {
            SourceKind::Prng | SourceKind::WeakPrng => {
                need(self.seed.is_some(), "a seed")?;
                need(self.bit_len.is_some(), "bit_len")?;
            }
            SourceKind::Champernowne => {
                need(self.bit_len.is_some(), "bit_len")?;
            }
            SourceKind::Biased => {
                need(self.seed.is_some(), "a seed")?;
                need(self.bias_p.is_some(), "bias_p")?;
                need(self.bit_len.is_some(), "bit_len")?;
            }
            SourceKind::File => {
                need(self.path.is_some(), "a path")?;
            }
        }
        if let Some(0) = self.bit_len {
            return Err(Error::Parameter("bit_len must be at least 1".into()));
        }
        Ok(())
    }

    /// Produces the described bit string.
    pub fn materialize(&self) -> Result<BitString> {
        self.validate()?;
        match self.kind {
            SourceKind::Prng => gen_prng(self.seed.unwrap(), self.bit_len.unwrap()),
            SourceKind::WeakPrng => gen_weak_prng(self.seed.unwrap(), self.bit_len.unwrap()),
            SourceKind::Champernowne => gen_champernowne(self.bit_len.unwrap()),
            SourceKind::Biased => gen_biased(
                self.seed.unwrap(),
                self.bias_p.unwrap(),
                self.bit_len.unwrap(),
            ),
            SourceKind::File => load_raw_file(self.path.as_ref().unwrap(), self.bit_len),
        }
    }
}

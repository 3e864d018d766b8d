//! The four algorithmic-information-theory-inspired randomness tests:
//! book stack (move-to-front), Borel normality, sliding-window entropy
//! estimation, and random-walk range.
//!
//! All four are deterministic: the same bit string always yields the same
//! outcome structure.

use serde::Serialize;

use crate::bitstream::BitString;
use crate::error::{Error, Result};

/// Bit counts before and after the move-to-front transform.
///
/// Repetitive input turns into small indices, so a drop from `ones_before`
/// to `ones_after` signals compressibility. Both counts are reported; the
/// headline metric is `ones_after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BookStackOutcome {
    pub ones_before: u64,
    pub ones_after: u64,
    pub diff: i64,
}

/// Per-block-length detail of the Borel normality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BorelBlockStats {
    pub m: u32,
    pub min_count: u64,
    pub max_count: u64,
    pub spread: u64,
    /// `max_j |N_j / blocks_total - 2^-m|`.
    pub max_abs_deviation: f64,
    /// `sqrt(log2(len) / len)`, the allowed deviation.
    pub threshold: f64,
    pub pass: bool,
}

/// Outcome of the Borel normality test over block lengths `1..=m_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorelOutcome {
    pub m_max: u32,
    pub per_m: Vec<BorelBlockStats>,
    /// `max_{m,j} |N_j^m - blocks_total * 2^-m|` in count units.
    pub aggregate_metric: f64,
    pub pass: bool,
}

/// Sliding-window entropy estimate from longest-match lengths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub window_n: u64,
    pub t: u64,
    /// Match-length cap, `2 * ceil(log2(window_n))`.
    pub cap: u32,
    pub match_lengths: Vec<u32>,
    /// `t * log2(window_n) / sum(L_i)`, clamped to `[0, 1]`.
    pub h_hat: f64,
    /// Set when at least half the match lengths hit the cap; the estimate is
    /// then a floor imposed by the cap rather than a measurement.
    pub cap_saturated: bool,
}

/// Extremes of the +/-1 walk driven by the bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkOutcome {
    pub y_max: i64,
    pub y_min: i64,
    pub range: u64,
}

/// Move-to-front stack over the byte alphabet, initialized to identity order.
struct MtfState {
    stack: [u8; 256],
}

impl MtfState {
    fn new() -> Self {
        let mut stack = [0u8; 256];
        for (i, slot) in stack.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Self { stack }
    }

    /// Index of `byte` in the stack; moves it to the front. Search and shift
    /// happen in one pass.
    #[inline]
    fn encode(&mut self, byte: u8) -> u8 {
        let mut prev = self.stack[0];
        if prev == byte {
            return 0;
        }
        let mut idx = 1usize;
        loop {
            let cur = self.stack[idx];
            self.stack[idx] = prev;
            if cur == byte {
                self.stack[0] = byte;
                return idx as u8;
            }
            prev = cur;
            idx += 1;
        }
    }

    #[inline]
    fn decode(&mut self, index: u8) -> u8 {
        let byte = self.stack[usize::from(index)];
        self.stack.copy_within(..usize::from(index), 1);
        self.stack[0] = byte;
        byte
    }
}

/// Move-to-front transform: each byte is replaced by its current stack index
/// and moved to the front. Bijective; see [`mtf_decode`].
pub fn mtf_encode(input: &[u8]) -> Vec<u8> {
    let mut state = MtfState::new();
    input.iter().map(|&b| state.encode(b)).collect()
}

/// Inverse of [`mtf_encode`] with the same initial stack.
pub fn mtf_decode(input: &[u8]) -> Vec<u8> {
    let mut state = MtfState::new();
    input.iter().map(|&b| state.decode(b)).collect()
}

/// Book stack test: 1-bit counts of the byte stream before and after the
/// move-to-front transform. A trailing partial byte is discarded.
pub fn book_stack_metric(x: &BitString) -> Result<BookStackOutcome> {
    if x.bit_len() < 8 {
        return Err(Error::InputTooShort(format!(
            "book stack needs at least one whole byte, got {} bits",
            x.bit_len()
        )));
    }
    let bytes = x.full_bytes();
    let mut state = MtfState::new();
    let mut ones_before = 0u64;
    let mut ones_after = 0u64;
    for &b in bytes {
        ones_before += u64::from(b.count_ones());
        ones_after += u64::from(state.encode(b).count_ones());
    }
    Ok(BookStackOutcome {
        ones_before,
        ones_after,
        diff: ones_before as i64 - ones_after as i64,
    })
}

/// Borel normality test: for every block length `m` up to
/// `min(floor(log2 log2 len), m_limit or 5, 16)`, each of the `2^m` block
/// frequencies must stay within `sqrt(log2(len) / len)` of `2^-m`.
pub fn borel_normality(x: &BitString, m_limit: Option<u32>) -> Result<BorelOutcome> {
    if x.bit_len() < 2 {
        return Err(Error::InputTooShort(format!(
            "Borel normality needs at least 2 bits, got {}",
            x.bit_len()
        )));
    }
    let len = x.bit_len() as f64;
    let log2_len = len.log2();
    let m_from_len = log2_len.log2().floor().max(0.0) as u32;
    let m_max = m_from_len.min(m_limit.unwrap_or(5)).min(16);
    let threshold = (log2_len / len).sqrt();

    let mut per_m = Vec::with_capacity(m_max as usize);
    let mut aggregate: f64 = 0.0;
    for m in 1..=m_max {
        let counts = x.count_blocks(m)?;
        let total = counts.blocks_total();
        let expected_freq = (0.5f64).powi(m as i32);
        let expected_count = total as f64 * expected_freq;
        let mut min_count = u64::MAX;
        let mut max_count = 0u64;
        let mut max_dev: f64 = 0.0;
        for &c in counts.counts() {
            min_count = min_count.min(c);
            max_count = max_count.max(c);
            max_dev = max_dev.max((c as f64 / total as f64 - expected_freq).abs());
            aggregate = aggregate.max((c as f64 - expected_count).abs());
        }
        per_m.push(BorelBlockStats {
            m,
            min_count,
            max_count,
            spread: max_count - min_count,
            max_abs_deviation: max_dev,
            threshold,
            pass: max_dev <= threshold,
        });
    }
    Ok(BorelOutcome {
        m_max,
        pass: per_m.iter().all(|s| s.pass),
        per_m,
        aggregate_metric: aggregate,
    })
}

/// Sliding-window entropy estimate.
///
/// At `t` evenly spaced positions `i` in `[window_n, len - cap]`, `L_i` is
/// the length of the longest substring starting at `i` that also begins
/// somewhere in the preceding `window_n` bits (self-overlap allowed), at
/// least 1 and capped at `2 * ceil(log2(window_n))`. The estimate is
/// `t * log2(window_n) / sum(L_i)`, clamped to `[0, 1]`.
pub fn entropy_sliding(x: &BitString, window_n: u64, t: u64) -> Result<EntropyEstimate> {
    if window_n < 2 {
        return Err(Error::Parameter(format!(
            "window must be at least 2 symbols, got {window_n}"
        )));
    }
    if t < 1 {
        return Err(Error::Parameter("need at least one estimation position".into()));
    }
    let cap = 2 * (64 - (window_n - 1).leading_zeros());
    let need = window_n + t + u64::from(cap);
    if x.bit_len() < need {
        return Err(Error::InputTooShort(format!(
            "entropy estimation needs at least {need} bits \
             (window {window_n} + t {t} + cap {cap}), got {}",
            x.bit_len()
        )));
    }

    let span = x.bit_len() - u64::from(cap) - window_n;
    let window = window_n as usize;
    let cap_us = cap as usize;
    let mut buf = vec![0u8; window + cap_us];
    let mut match_lengths = Vec::with_capacity(t as usize);
    let mut sum = 0u64;
    let mut at_cap = 0u64;
    for k in 0..t {
        let pos = window_n + ((k as u128 * span as u128) / t as u128) as u64;
        let base = pos - window_n;
        for (off, slot) in buf.iter_mut().enumerate() {
            *slot = x.bit(base + off as u64);
        }
        let mut best = 0usize;
        for start in 0..window {
            if buf[start] != buf[window] {
                continue;
            }
            let mut len = 1usize;
            while len < cap_us && buf[start + len] == buf[window + len] {
                len += 1;
            }
            if len > best {
                best = len;
                if best == cap_us {
                    break;
                }
            }
        }
        let l = best.max(1) as u32;
        if l == cap {
            at_cap += 1;
        }
        sum += u64::from(l);
        match_lengths.push(l);
    }

    let h_hat = (t as f64 * (window_n as f64).log2() / sum as f64).clamp(0.0, 1.0);
    Ok(EntropyEstimate {
        window_n,
        t,
        cap,
        match_lengths,
        h_hat,
        cap_saturated: 2 * at_cap >= t,
    })
}

/// Random-walk range: heights of the walk that moves up on 1 and down on 0,
/// reported as maximum, minimum and their difference.
pub fn random_walk_range(x: &BitString) -> Result<WalkOutcome> {
    if x.is_empty() {
        return Err(Error::InputTooShort("the walk needs at least one bit".into()));
    }
    // Per-byte tables: net height change and intra-byte height extremes.
    let mut delta = [0i8; 256];
    let mut min_prefix = [0i8; 256];
    let mut max_prefix = [0i8; 256];
    for v in 0..256usize {
        let mut y = 0i8;
        let mut lo = 0i8;
        let mut hi = 0i8;
        for shift in (0..8).rev() {
            y += if v >> shift & 1 == 1 { 1 } else { -1 };
            lo = lo.min(y);
            hi = hi.max(y);
        }
        delta[v] = y;
        min_prefix[v] = lo;
        max_prefix[v] = hi;
    }

    let mut y = 0i64;
    let mut y_min = 0i64;
    let mut y_max = 0i64;
    for &b in x.full_bytes() {
        let v = b as usize;
        y_min = y_min.min(y + i64::from(min_prefix[v]));
        y_max = y_max.max(y + i64::from(max_prefix[v]));
        y += i64::from(delta[v]);
    }
    for i in (x.bit_len() / 8) * 8..x.bit_len() {
        y += if x.bit(i) == 1 { 1 } else { -1 };
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    Ok(WalkOutcome {
        y_max,
        y_min,
        range: (y_max - y_min) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstream::BitString;
    use crate::sources::{gen_prng, gen_weak_prng};
    use proptest::prelude::*;

    #[test]
    fn mtf_encode_examples() {
        assert_eq!(mtf_encode(&[0, 0, 0, 0]), [0, 0, 0, 0]);
        assert_eq!(mtf_encode(&[5, 5, 5]), [5, 0, 0]);
        // After 1 then 2 move to the front, 1 sits at index 1.
        assert_eq!(mtf_encode(&[1, 2, 1]), [1, 2, 1]);
    }

    #[test]
    fn mtf_round_trips_every_single_byte() {
        for b in 0..=255u8 {
            assert_eq!(mtf_decode(&mtf_encode(&[b])), [b]);
        }
    }

    proptest! {
        #[test]
        fn mtf_is_bijective(input in proptest::collection::vec(any::<u8>(), 0..512)) {
            prop_assert_eq!(mtf_decode(&mtf_encode(&input)), input);
        }

        #[test]
        fn walk_conserves_final_height(bytes in proptest::collection::vec(any::<u8>(), 1..256),
                                       drop in 0u64..8) {
            let bit_len = bytes.len() as u64 * 8 - drop;
            let x = BitString::from_packed_bytes(bytes, bit_len).unwrap();
            let w = random_walk_range(&x).unwrap();
            let ones: i64 = x.iter_bits().map(i64::from).sum();
            let zeros = bit_len as i64 - ones;
            let naive = naive_walk(&x);
            prop_assert_eq!(w, naive);
            prop_assert_eq!(final_height(&x), ones - zeros);
            prop_assert!(w.range as i64 >= (ones - zeros).abs());
        }
    }

    fn naive_walk(x: &BitString) -> WalkOutcome {
        let mut y = 0i64;
        let (mut lo, mut hi) = (0i64, 0i64);
        for b in x.iter_bits() {
            y += if b == 1 { 1 } else { -1 };
            lo = lo.min(y);
            hi = hi.max(y);
        }
        WalkOutcome { y_max: hi, y_min: lo, range: (hi - lo) as u64 }
    }

    fn final_height(x: &BitString) -> i64 {
        x.iter_bits().map(|b| if b == 1 { 1i64 } else { -1 }).sum()
    }

    #[test]
    fn book_stack_zero_bytes() {
        let x = BitString::from_bytes(vec![0u8; 64]);
        let r = book_stack_metric(&x).unwrap();
        assert_eq!((r.ones_before, r.ones_after, r.diff), (0, 0, 0));
    }

    #[test]
    fn book_stack_repeated_ff() {
        // First access emits index 255 (8 ones), every later one emits 0.
        let x = BitString::from_bytes(vec![0xFF; 64]);
        let r = book_stack_metric(&x).unwrap();
        assert_eq!((r.ones_before, r.ones_after, r.diff), (512, 8, 504));
    }

    #[test]
    fn book_stack_uniform_bytes_balance_after_transform() {
        let x = gen_prng(1, 1 << 20).unwrap();
        let r = book_stack_metric(&x).unwrap();
        let n = (1u64 << 20) as f64;
        let bound = 4.0 * (n * 0.25).sqrt();
        assert!(
            (r.ones_after as f64 - n / 2.0).abs() <= bound,
            "ones_after = {}",
            r.ones_after
        );
    }

    #[test]
    fn book_stack_discards_partial_byte_and_rejects_short_input() {
        let x = BitString::from_packed_bytes(vec![0xFF, 0xFF], 9).unwrap();
        let r = book_stack_metric(&x).unwrap();
        assert_eq!(r.ones_before, 8);

        let short = BitString::from_packed_bytes(vec![0xFF], 7).unwrap();
        assert!(matches!(
            book_stack_metric(&short),
            Err(Error::InputTooShort(_))
        ));
    }

    #[test]
    fn borel_all_zeros_fails_m1() {
        let x = BitString::from_packed_bytes(vec![0u8; 128], 1024).unwrap();
        let r = borel_normality(&x, None).unwrap();
        assert!(!r.pass);
        let m1 = &r.per_m[0];
        assert!((m1.threshold - 0.09882).abs() < 1e-4);
        assert!((m1.max_abs_deviation - 0.5).abs() < 1e-12);
        assert!(!m1.pass);
    }

    #[test]
    fn borel_alternating_passes_m1_fails_m2() {
        let x = BitString::from_bytes(vec![0b0101_0101; 128]); // (01)^512
        let r = borel_normality(&x, None).unwrap();
        assert_eq!(r.m_max, 3); // floor(log2 log2 1024) = 3
        assert!(r.per_m[0].pass);
        assert!(!r.per_m[1].pass);
        assert!((r.per_m[1].max_abs_deviation - 0.75).abs() < 1e-12);
        assert!(!r.pass);
    }

    #[test]
    fn borel_prng_passes_all_m_at_desk_scale() {
        let x = gen_prng(1, 1 << 20).unwrap();
        let r = borel_normality(&x, None).unwrap();
        assert_eq!(r.m_max, 4); // floor(log2 20)
        assert!(r.pass, "{:?}", r.per_m);
    }

    #[test]
    fn borel_m_limit_above_m_max_changes_nothing() {
        let x = gen_prng(3, 1 << 16).unwrap();
        let base = borel_normality(&x, None).unwrap();
        let wide = borel_normality(&x, Some(16)).unwrap();
        assert_eq!(base.m_max, 4); // floor(log2 16) = 4 < 5
        assert_eq!(base, wide);
        let narrow = borel_normality(&x, Some(2)).unwrap();
        assert_eq!(narrow.m_max, 2);
        assert_eq!(narrow.per_m.as_slice(), &base.per_m[..2]);
    }

    #[test]
    fn borel_counts_match_naive_recount() {
        let x = gen_prng(5, 60_000).unwrap();
        for m in 1..=5u32 {
            let counts = x.count_blocks(m).unwrap();
            let bits: Vec<u8> = x.iter_bits().collect();
            let mut naive = vec![0u64; 1 << m];
            for chunk in bits.chunks_exact(m as usize) {
                let mut v = 0usize;
                for &b in chunk {
                    v = (v << 1) | b as usize;
                }
                naive[v] += 1;
            }
            assert_eq!(counts.counts(), naive.as_slice(), "m={m}");
            assert_eq!(counts.blocks_total(), x.bit_len() / m as u64);
        }
    }

    #[test]
    fn entropy_all_zeros_saturates_cap() {
        let x = BitString::from_bytes(vec![0u8; 1 << 12]);
        let r = entropy_sliding(&x, 256, 100).unwrap();
        assert_eq!(r.cap, 16);
        assert!(r.match_lengths.iter().all(|&l| l == 16));
        assert!((r.h_hat - 0.5).abs() < 1e-12);
        assert!(r.cap_saturated);
    }

    #[test]
    fn entropy_prng_is_near_one_bit_per_symbol() {
        let x = gen_prng(1, 1 << 20).unwrap();
        let r = entropy_sliding(&x, 4096, 4096).unwrap();
        assert!(r.h_hat >= 0.93 && r.h_hat <= 1.0, "h_hat = {}", r.h_hat);
        assert!(!r.cap_saturated);
    }

    #[test]
    fn entropy_parameter_and_length_errors() {
        let x = gen_prng(1, 4096).unwrap();
        assert!(matches!(
            entropy_sliding(&x, 1, 10),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            entropy_sliding(&x, 256, 0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            entropy_sliding(&x, 4096, 10),
            Err(Error::InputTooShort(_))
        ));
    }

    #[test]
    fn entropy_weak_prng_between_zeros_and_prng() {
        let zeros = BitString::from_bytes(vec![0u8; 1 << 14]);
        let h_zero = entropy_sliding(&zeros, 1024, 512).unwrap().h_hat;
        let mut h_weak_sum = 0.0;
        let mut h_prng_sum = 0.0;
        for seed in 1..=10u64 {
            let weak = gen_weak_prng(2 * seed - 1, 1 << 17).unwrap();
            let strong = gen_prng(seed, 1 << 17).unwrap();
            h_weak_sum += entropy_sliding(&weak, 1024, 512).unwrap().h_hat;
            h_prng_sum += entropy_sliding(&strong, 1024, 512).unwrap().h_hat;
        }
        let h_weak = h_weak_sum / 10.0;
        let h_prng = h_prng_sum / 10.0;
        assert!(h_zero < h_weak, "zeros {h_zero} vs weak {h_weak}");
        assert!(h_weak <= h_prng + 0.02, "weak {h_weak} vs prng {h_prng}");
    }

    #[test]
    fn walk_short_examples() {
        let ones = BitString::from_packed_bytes(vec![0b1111_0000], 4).unwrap();
        assert_eq!(
            random_walk_range(&ones).unwrap(),
            WalkOutcome { y_max: 4, y_min: 0, range: 4 }
        );
        let alt = BitString::from_packed_bytes(vec![0b0101_0000], 4).unwrap();
        assert_eq!(
            random_walk_range(&alt).unwrap(),
            WalkOutcome { y_max: 0, y_min: -1, range: 1 }
        );
        let empty = BitString::from_packed_bytes(vec![], 0).unwrap();
        assert!(matches!(
            random_walk_range(&empty),
            Err(Error::InputTooShort(_))
        ));
    }
}

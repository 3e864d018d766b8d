//! Exact modular arithmetic, the Euler witness predicate, Carmichael number
//! enumeration, and the bit-driven probabilistic-primality battery metric.
//!
//! All arithmetic is exact: moduli stay below 2^63 so double-width products
//! fit in `u128`.

use std::path::Path;

use serde::Serialize;

use crate::bitstream::{BitCursor, BitString};
use crate::error::{Error, Result};

/// Largest bound accepted by [`enumerate_carmichael`]; the smallest-prime-
/// factor sieve uses 4 bytes per integer, so 10^8 costs ~400 MB.
pub const MAX_SIEVE_BOUND: u64 = 100_000_000;

/// Entries below this are fully validated by [`load_carmichael_file`];
/// larger entries are spot-checked.
const FULL_VALIDATION_LIMIT: u64 = 1_000_000_000_000;

/// How many consecutive rejected witness draws mark the sample degenerate.
const MAX_REJECTIONS: u32 = 64;

#[inline]
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `a^e mod n` for odd `n` in `[3, 2^63)`, computed with exact double-width
/// products.
pub fn mod_pow(a: u64, e: u64, n: u64) -> Result<u64> {
    if n < 3 || n % 2 == 0 || n >= 1 << 63 {
        return Err(Error::Parameter(format!(
            "modulus must be odd and in [3, 2^63), got {n}"
        )));
    }
    if a >= n {
        return Err(Error::Parameter(format!(
            "base must satisfy 0 <= a < n, got a={a}, n={n}"
        )));
    }
    Ok(mod_pow_unchecked(a, e, n))
}

fn mod_pow_unchecked(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc: u64 = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % n as u128) as u64;
        }
        a = ((a as u128 * a as u128) % n as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Jacobi symbol `(a/n)` for odd positive `n`, via binary reciprocity.
pub fn jacobi(a: u64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Parameter(format!(
            "Jacobi symbol needs an odd positive denominator, got {n}"
        )));
    }
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Euler witness predicate: `i` proves `n` composite when `gcd(i, n) > 1` or
/// `i^((n-1)/2)` differs from the Jacobi symbol `(i/n)` modulo `n`.
///
/// For prime `n` this is false for every `i`; for composite `n` at least
/// half of the candidates in `[1, n-1]` are witnesses.
pub fn euler_witness(i: u64, n: u64) -> Result<bool> {
    if n < 3 || n % 2 == 0 || n >= 1 << 63 {
        return Err(Error::Parameter(format!(
            "witness test needs an odd n in [3, 2^63), got {n}"
        )));
    }
    if i < 2 || i > n - 2 {
        return Err(Error::Parameter(format!(
            "candidate witness must lie in [2, n-2], got i={i}, n={n}"
        )));
    }
    if gcd(i, n) > 1 {
        return Ok(true);
    }
    let r = mod_pow_unchecked(i, (n - 1) / 2, n);
    // gcd(i, n) = 1, so the symbol is +/-1; -1 is represented as n - 1.
    let symbol = if jacobi(i, n)? == 1 { 1 } else { n - 1 };
    Ok(r != symbol)
}

/// Sorted Carmichael numbers up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarmichaelSet {
    bound: u64,
    numbers: Vec<u64>,
}

impl CarmichaelSet {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn numbers(&self) -> &[u64] {
        &self.numbers
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }
}

/// Enumerates every Carmichael number `<= bound` with a smallest-prime-factor
/// sieve: each odd composite is factored and kept when it is squarefree and
/// `p - 1` divides `n - 1` for every prime factor `p`.
pub fn enumerate_carmichael(bound: u64) -> Result<CarmichaelSet> {
    if bound < 3 {
        return Err(Error::Parameter(format!(
            "bound must be at least 3, got {bound}"
        )));
    }
    if bound > MAX_SIEVE_BOUND {
        return Err(Error::Resource(format!(
            "bound {bound} exceeds the sieve limit {MAX_SIEVE_BOUND} \
             (~4 bytes per integer); load a precomputed list instead"
        )));
    }
    let limit = bound as usize;
    let mut spf = vec![0u32; limit + 1];
    let mut i = 2usize;
    while i <= limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }

    let mut numbers = Vec::new();
    let mut n = 3usize;
    while n <= limit {
        if spf[n] as usize != n && korselt_via_spf(n as u64, &spf) {
            numbers.push(n as u64);
        }
        n += 2;
    }
    Ok(CarmichaelSet { bound, numbers })
}

fn korselt_via_spf(n: u64, spf: &[u32]) -> bool {
    let mut m = n;
    while m > 1 {
        let p = spf[m as usize] as u64;
        m /= p;
        if m % p == 0 {
            return false; // not squarefree
        }
        if (n - 1) % (p - 1) != 0 {
            return false;
        }
    }
    true
}

/// Parses a newline-separated ascending list of Carmichael numbers.
///
/// Every entry below 10^12 is validated against Korselt's criterion by full
/// factorization; above that, entries are spot-checked (first, last, and
/// every 97th) so huge published lists load in reasonable time.
pub fn load_carmichael_file(path: impl AsRef<Path>) -> Result<CarmichaelSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let integrity = |line: usize, message: String| Error::DataIntegrity {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut numbers: Vec<u64> = Vec::new();
    let mut lines_seen = 0usize;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        lines_seen += 1;
        let line = raw_line.trim();
        let n: u64 = line
            .parse()
            .map_err(|_| integrity(line_no, format!("not a decimal integer: {line:?}")))?;
        if let Some(&prev) = numbers.last() {
            if n <= prev {
                return Err(integrity(
                    line_no,
                    format!("entries must be strictly ascending ({prev} then {n})"),
                ));
            }
        }
        numbers.push(n);
    }

    let total = numbers.len();
    for (idx, &n) in numbers.iter().enumerate() {
        let check = n < FULL_VALIDATION_LIMIT
            || idx == 0
            || idx == total - 1
            || idx % 97 == 0;
        if check && !is_carmichael(n) {
            // Line numbers are 1-based and the file held exactly the numbers.
            return Err(integrity(idx + 1, format!("{n} fails Korselt's criterion")));
        }
    }
    let _ = lines_seen;
    let bound = numbers.last().copied().unwrap_or(0);
    Ok(CarmichaelSet { bound, numbers })
}

/// Full Korselt check by factorization (Miller-Rabin + Pollard rho).
fn is_carmichael(n: u64) -> bool {
    if n < 3 || n % 2 == 0 || is_probable_prime(n) {
        return false;
    }
    let mut factors = Vec::new();
    factorize(n, &mut factors);
    factors.sort_unstable();
    if factors.len() < 2 || factors.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    factors.iter().all(|&p| (n - 1) % (p - 1) == 0)
}

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for every n < 3.3 * 10^24).
fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_any(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Square-and-multiply without the odd-modulus restriction (Miller-Rabin
/// internal use; n is odd there anyway, but keep it general).
fn mod_pow_any(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc: u64 = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % n as u128) as u64;
        }
        a = ((a as u128 * a as u128) % n as u128) as u64;
        e >>= 1;
    }
    acc
}

fn factorize(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_probable_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factorize(d, out);
    factorize(n / d, out);
}

/// Pollard rho with Brent cycling; callers guarantee n is composite.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (((x as u128 * x as u128) + c as u128) % n as u128) as u64;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Outcome of the bit-driven compositeness battery over a Carmichael set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SsRun {
    /// Witnesses drawn per pending number in the final round.
    pub k: u32,
    /// Total bits read from the sample.
    pub bits_consumed: u64,
    /// Whether every number was declared composite.
    pub verdict_complete: bool,
}

/// Runs the probabilistic primality test over every number in `cs`, drawing
/// witnesses from `x` through one shared cursor, and reports how many bits
/// were needed until every number was declared composite.
///
/// Witness selection is fixed-width rejection sampling over `[2, n-2]`:
/// `ceil(log2(n-3))` bits are read per draw and rejected draws still consume
/// their bits. Rounds proceed with k = 1, 2, 3, ... fresh witnesses per
/// still-pending number, ascending within each round, stopping early for a
/// number as soon as one of its draws is a witness.
pub fn ss_carmichael_metric(x: &BitString, cs: &CarmichaelSet) -> Result<SsRun> {
    if cs.is_empty() {
        return Err(Error::Parameter("the Carmichael set is empty".into()));
    }
    let mut cursor = x.cursor();
    let mut pending: Vec<u64> = cs.numbers().to_vec();
    let mut k: u32 = 0;
    while !pending.is_empty() {
        k += 1;
        let mut still = Vec::with_capacity(pending.len());
        for &n in &pending {
            let mut declared = false;
            for _ in 0..k {
                let i = match draw_witness(&mut cursor, n) {
                    Ok(i) => i,
                    Err(Error::Exhausted { .. }) => {
                        return Err(Error::SampleTooShort {
                            round: k,
                            bits_consumed: cursor.position(),
                            pending: pending.len(),
                        });
                    }
                    Err(e) => return Err(e),
                };
                if euler_witness(i, n)? {
                    declared = true;
                    break;
                }
            }
            if !declared {
                still.push(n);
            }
        }
        pending = still;
    }
    Ok(SsRun {
        k,
        bits_consumed: cursor.position(),
        verdict_complete: true,
    })
}

fn draw_witness(cursor: &mut BitCursor<'_>, n: u64) -> Result<u64> {
    let span = n - 3; // size of [2, n-2]
    let width = if span <= 1 {
        1
    } else {
        64 - (span - 1).leading_zeros()
    };
    for _ in 0..MAX_REJECTIONS {
        let v = cursor.take_bits(width)?;
        let i = 2 + v;
        if i <= n - 2 {
            return Ok(i);
        }
    }
    Err(Error::DegenerateSource(format!(
        "{MAX_REJECTIONS} consecutive rejected witness draws for n={n} \
         (width {width} bits)"
    )))
}

//! Descriptive statistics and the comparison tests used to judge
//! per-source metric vectors against each other.
//!
//! The two-sample Kolmogorov-Smirnov p-value is exact (lattice-path counting
//! over all orderings, big-integer arithmetic) whenever the pooled sample is
//! tie-free and `|a| * |b| <= 10^4`; otherwise the asymptotic Kolmogorov
//! distribution is used and a ties warning is attached. Shapiro-Wilk follows
//! the published AS R94 approximation. Welch's t uses the Student-t
//! distribution with Welch-Satterthwaite degrees of freedom.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

/// Significance threshold mirrored from the battery's reporting convention.
pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;

/// Largest `|a| * |b|` for which the exact KS p-value is computed.
pub const KS_EXACT_LIMIT: usize = 10_000;

/// Five-number summary plus mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveNumberSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
    pub sd: f64,
}

/// Which comparison test produced a [`StatTestResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatMethod {
    KsExact,
    KsAsymptotic,
    ShapiroWilk,
    WelchT,
}

/// A test statistic with its p-value and significance flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTestResult {
    pub method: StatMethod,
    pub statistic: f64,
    pub p_value: f64,
    /// Degrees of freedom (Welch only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
    /// `p_value < 0.05`; the battery may re-derive this at a configured
    /// threshold.
    pub significant: bool,
    /// Set when ties forced the asymptotic KS fallback.
    #[serde(default)]
    pub ties_warning: bool,
}

impl StatTestResult {
    fn new(method: StatMethod, statistic: f64, p_value: f64) -> Self {
        Self {
            method,
            statistic,
            p_value,
            df: None,
            significant: p_value < DEFAULT_SIGNIFICANCE,
            ties_warning: false,
        }
    }
}

fn ensure_finite(data: &[f64], what: &str) -> Result<()> {
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter(format!("{what} contains a non-finite value")));
    }
    Ok(())
}

fn mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

fn sample_variance(data: &[f64], m: f64) -> f64 {
    data.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (data.len() - 1) as f64
}

/// Quantile by linear interpolation at position `(n - 1) * q` on sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Min, quartiles, max, mean and sample standard deviation of `data`.
pub fn five_number_summary(data: &[f64]) -> Result<FiveNumberSummary> {
    if data.len() < 2 {
        return Err(Error::Parameter(format!(
            "summary needs at least 2 values, got {}",
            data.len()
        )));
    }
    ensure_finite(data, "sample")?;
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let m = mean(data);
    Ok(FiveNumberSummary {
        min: sorted[0],
        q1: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        mean: m,
        sd: sample_variance(data, m).sqrt(),
    })
}

/// Two-sided two-sample Kolmogorov-Smirnov test.
///
/// `D` is the supremum distance between the empirical CDFs. With a tie-free
/// pooled sample and `|a| * |b| <= 10^4` the p-value is exact; otherwise the
/// asymptotic Kolmogorov distribution of `D * sqrt(nm / (n + m))` is used.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<StatTestResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Parameter("KS test needs nonempty samples".into()));
    }
    ensure_finite(a, "sample a")?;
    ensure_finite(b, "sample b")?;

    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|u, v| u.total_cmp(v));
    ys.sort_by(|u, v| u.total_cmp(v));
    let n = xs.len();
    let m = ys.len();

    // Merge sweep: track i = #a <= x and j = #b <= x at every pooled value;
    // the integer deviation |i*m - j*n| avoids rounding in D.
    let mut i = 0usize;
    let mut j = 0usize;
    let mut d_num: u64 = 0;
    let mut has_ties = false;
    while i < n || j < m {
        let take_a = match (xs.get(i), ys.get(j)) {
            (Some(x), Some(y)) if x == y => {
                has_ties = true;
                // Advance both past the tied value.
                let v = *x;
                while i < n && xs[i] == v {
                    i += 1;
                }
                while j < m && ys[j] == v {
                    j += 1;
                }
                let dev = (i as u64 * m as u64).abs_diff(j as u64 * n as u64);
                d_num = d_num.max(dev);
                continue;
            }
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => unreachable!(),
        };
        if take_a {
            let v = xs[i];
            while i + 1 < n && xs[i + 1] == v {
                has_ties = true;
                i += 1;
            }
            i += 1;
        } else {
            let v = ys[j];
            while j + 1 < m && ys[j + 1] == v {
                has_ties = true;
                j += 1;
            }
            j += 1;
        }
        let dev = (i as u64 * m as u64).abs_diff(j as u64 * n as u64);
        d_num = d_num.max(dev);
    }

    let nm = (n as u64 * m as u64) as f64;
    let d = d_num as f64 / nm;

    if !has_ties && n * m <= KS_EXACT_LIMIT {
        let (tail, total) = ks_exact_tail_counts(n, m, d_num);
        let p = tail.to_f64().unwrap() / total.to_f64().unwrap();
        Ok(StatTestResult::new(StatMethod::KsExact, d, p))
    } else {
        let lambda = d * ((n as f64 * m as f64) / (n + m) as f64).sqrt();
        let p = kolmogorov_sf(lambda);
        let mut r = StatTestResult::new(StatMethod::KsAsymptotic, d, p);
        r.ties_warning = has_ties;
        Ok(r)
    }
}

/// Counts the orderings of a tie-free pooled sample whose maximum integer
/// deviation `|i*m - j*n|` reaches at least `d_num`, together with the total
/// `C(n+m, n)`. The exact p-value is the ratio of the two.
///
/// Counting walks the lattice of merge paths from `(0, 0)` to `(n, m)` and
/// sums, per vertex, the paths that stayed strictly below `d_num`.
pub fn ks_exact_tail_counts(n: usize, m: usize, d_num: u64) -> (BigUint, BigUint) {
    let total = binomial(n + m, n);
    if d_num == 0 {
        // D >= 0 always holds.
        return (total.clone(), total);
    }
    let inside = |i: usize, j: usize| -> bool {
        (i as u64 * m as u64).abs_diff(j as u64 * n as u64) < d_num
    };
    let zero = BigUint::from(0u32);
    let mut row: Vec<BigUint> = vec![zero.clone(); m + 1];
    row[0] = BigUint::from(1u32); // (0, 0) has deviation 0 < d_num
    for j in 1..=m {
        row[j] = if inside(0, j) {
            row[j - 1].clone()
        } else {
            zero.clone()
        };
    }
    for i in 1..=n {
        row[0] = if inside(i, 0) { row[0].clone() } else { zero.clone() };
        for j in 1..=m {
            row[j] = if inside(i, j) {
                &row[j] + &row[j - 1]
            } else {
                zero.clone()
            };
        }
    }
    let below = row[m].clone();
    (&total - &below, total)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Survival function of the Kolmogorov distribution,
/// `Q(lambda) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2)`.
fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut acc = 0.0;
    let a = -2.0 * lambda * lambda;
    for k in 1..=200 {
        let term = 2.0 * (a * (k * k) as f64).exp();
        acc += if k % 2 == 1 { term } else { -term };
        if term < 1e-12 {
            break;
        }
    }
    acc.clamp(0.0, 1.0)
}

/// Shapiro-Wilk normality test (AS R94) for samples of 3..=5000 values.
pub fn shapiro_wilk(sample: &[f64]) -> Result<StatTestResult> {
    let n = sample.len();
    if !(3..=5000).contains(&n) {
        return Err(Error::Parameter(format!(
            "Shapiro-Wilk supports sample sizes 3..=5000, got {n}"
        )));
    }
    ensure_finite(sample, "sample")?;
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.total_cmp(b));
    if x[n - 1] - x[0] == 0.0 {
        return Err(Error::DegenerateSample(
            "all sample values are identical".into(),
        ));
    }
    let (w, p) = swilk(&x);
    let mut r = StatTestResult::new(StatMethod::ShapiroWilk, w, p);
    r.statistic = w;
    Ok(r)
}

/// Core of AS R94: W statistic and p-value on sorted data.
fn swilk(x: &[f64]) -> (f64, f64) {
    let n = x.len();
    let nn2 = n / 2;
    let mut a = vec![0.0f64; nn2 + 1]; // 1-based, a[0] unused

    if n == 3 {
        a[1] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let normal = Normal::standard();
        let an = n as f64;
        let an25 = an + 0.25;
        let mut summ2 = 0.0;
        for (i, slot) in a.iter_mut().enumerate().skip(1) {
            let q = (i as f64 - 0.375) / an25;
            *slot = normal.inverse_cdf(q);
            summ2 += *slot * *slot;
        }
        summ2 *= 2.0;
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();

        const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
        const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
        let a1 = poly(&C1, rsn) - a[1] / ssumm2;

        let (i1, fac) = if n > 5 {
            let a2 = -a[2] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2])
                / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
                .sqrt();
            a[2] = a2;
            (3, fac)
        } else {
            let fac = ((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (2, fac)
        };
        a[1] = a1;
        for slot in a.iter_mut().skip(i1) {
            *slot /= -fac;
        }
    }

    // W as the squared correlation between the sorted data and the weights.
    let range = x[n - 1] - x[0];
    let mut sx = 0.0;
    for &v in x {
        sx += v / range;
    }
    let mut sa = 0.0;
    for i in 0..n {
        let j = n - 1 - i;
        if i != j {
            let idx = i.min(j) + 1;
            let sign = if i > j { 1.0 } else { -1.0 };
            sa += sign * a[idx];
        }
    }
    let sa = sa / n as f64;
    let sx = sx / n as f64;

    let mut ssa = 0.0;
    let mut ssx = 0.0;
    let mut sax = 0.0;
    for i in 0..n {
        let j = n - 1 - i;
        let asa = if i != j {
            let idx = i.min(j) + 1;
            let sign = if i > j { 1.0 } else { -1.0 };
            sign * a[idx] - sa
        } else {
            -sa
        };
        let xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = (1.0 - w1).clamp(0.0, 1.0);

    (w, swilk_p_value(w, n))
}

/// Royston's normalizing transforms of W into a standard-normal upper tail.
fn swilk_p_value(w: f64, n: usize) -> f64 {
    if w >= 1.0 {
        return 1.0;
    }
    if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        let stqr = std::f64::consts::FRAC_PI_3;
        return (pi6 * (w.sqrt().asin() - stqr)).clamp(0.0, 1.0);
    }

    const G: [f64; 2] = [-2.273, 0.459];
    const C3: [f64; 4] = [0.544, -0.39978, 0.025054, -0.0006714];
    const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
    const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
    const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];

    let an = n as f64;
    let y = (1.0 - w).ln();
    let (z, m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return 1e-99;
        }
        (-((gamma - y).ln()), poly(&C3, an), poly(&C4, an).exp())
    } else {
        let xx = an.ln();
        (y, poly(&C5, xx), poly(&C6, xx).exp())
    };
    let normal = Normal::standard();
    (1.0 - normal.cdf((z - m) / s)).clamp(0.0, 1.0)
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * x + c)
}

/// Welch's two-sample t-test (unequal variances), two-sided.
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<StatTestResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Parameter(
            "Welch's t-test needs at least 2 values per sample".into(),
        ));
    }
    ensure_finite(a, "sample a")?;
    ensure_finite(b, "sample b")?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (mean(a), mean(b));
    let va = sample_variance(a, ma);
    let vb = sample_variance(b, mb);
    if va == 0.0 && vb == 0.0 {
        return Err(Error::DegenerateSample(
            "both samples have zero variance".into(),
        ));
    }
    let sea = va / na;
    let seb = vb / nb;
    let se2 = sea + seb;
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    let p = if t == 0.0 {
        1.0
    } else {
        (2.0 * student_t_cdf(-t.abs(), df)).clamp(0.0, 1.0)
    };
    let mut r = StatTestResult::new(StatMethod::WelchT, t, p);
    r.df = Some(df);
    Ok(r)
}

fn student_t_cdf(x: f64, df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("df > 0 by construction")
        .cdf(x)
}

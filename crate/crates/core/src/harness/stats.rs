//! Confidence statistics for experiment verdicts.

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

/// Wilson score interval for a binomial proportion at confidence z.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// 99% Wilson interval.
pub fn wilson99(failures: u64, trials: u64) -> (f64, f64) {
    wilson_interval(failures, trials, Z99)
}

/// Exact-fraction rendering, e.g. "17/10000".
pub fn fraction(failures: u64, trials: u64) -> String {
    format!("{failures}/{trials}")
}

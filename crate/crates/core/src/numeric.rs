//! Small numeric helpers shared across the crate.

pub const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// ln(sum(exp(v))) with the usual max shift.
///
/// Returns -inf for an empty slice or when every entry is -inf, so a fully
/// dead weight vector stays representable instead of turning into NaN.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// Natural log of the normal density with the given mean and standard deviation.
pub fn normal_ln_pdf(x: f64, mean: f64, sigma: f64) -> f64 {
    let z = (x - mean) / sigma;
    -0.5 * z * z - sigma.ln() - 0.5 * LN_2PI
}

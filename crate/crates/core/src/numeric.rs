//! Weighted products shared by the closed-form aggregation operators.

/// Factors below this switch the product to log domain.
const LOG_DOMAIN_THRESHOLD: f64 = 1e-12;

/// `Π base^weight` with `0^0 = 1`.
pub(crate) fn weighted_product<I>(terms: I) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let terms: Vec<(f64, f64)> = terms.into_iter().filter(|&(_, w)| w != 0.0).collect();
    if terms.iter().any(|&(base, _)| base == 0.0) {
        return 0.0;
    }
    if terms.iter().any(|&(base, _)| base < LOG_DOMAIN_THRESHOLD) {
        let log_sum: f64 = terms.iter().map(|&(base, w)| w * base.ln()).sum();
        log_sum.exp()
    } else {
        terms.iter().map(|&(base, w)| base.powf(w)).product()
    }
}

/// `1 - Π (1 - x)^weight`, evaluated through `expm1`/`ln1p` so that small
/// `x` keep their relative precision.
pub(crate) fn probabilistic_sum<I>(terms: I) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut log_sum = 0.0;
    for (x, w) in terms {
        if w == 0.0 {
            continue;
        }
        if x >= 1.0 {
            return 1.0;
        }
        log_sum += w * (-x).ln_1p();
    }
    -log_sum.exp_m1()
}

pub(crate) fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

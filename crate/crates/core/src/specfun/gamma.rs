use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments.
///
/// Lanczos approximation for `x >= 1/2`, reflection formula below.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_integer_and_unit_values() {
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-13);
        assert!(rel(gamma_fn(5.0).unwrap(), 24.0) < 1e-13);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-13);
    }

    #[test]
    fn recurrence_holds() {
        for x in [0.3, 1.7, -0.4] {
            let ratio = gamma_fn(x + 1.0).unwrap() / gamma_fn(x).unwrap();
            assert!(rel(ratio, x) < 1e-13, "x = {x}: {ratio}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_fn(x), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn reference_values() {
        // Gamma(sqrt(2) - 1/2), Gamma(1/2 - sqrt(2)) at 30 digits (mpmath).
        let nu = 2f64.sqrt() - 0.5;
        assert!(rel(gamma_fn(nu).unwrap(), 1.057_427_131_720_638_7) < 1e-13);
        assert!(rel(gamma_fn(-nu).unwrap(), -12.205_439_811_770_659) < 1e-13);
    }
}

//! Numerically robust scalar special functions used throughout the moment
//! and likelihood formulas.
//!
//! The Gaussian CDF is evaluated through the complementary error function so
//! that tail values keep full relative accuracy instead of cancelling against
//! 1. Everything here is pure and total on finite inputs.

use crate::error::{Error, Result};

/// 1/sqrt(2*pi)
pub const INV_SQRT_2PI: f64 = 0.3989422804014326779;
/// sqrt(2)
const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// 1/sqrt(pi)
const INV_SQRT_PI: f64 = 0.5641895835477562869;

/// Standard Gaussian density `phi(x)`.
#[inline]
pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard Gaussian CDF `Phi(x)`, accurate in both tails.
///
/// `Phi(x) = erfc(-x/sqrt(2)) / 2`; relative error is below 1e-13 for
/// |x| <= 8 and the result stays strictly positive down to x ~ -38.
#[inline]
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// erf on [0, 2) via the all-positive-term confluent series
/// `erf(x) = (2/sqrt(pi)) x exp(-x^2) sum_n (2x^2)^n / (2n+1)!!`.
///
/// Every term is positive, so there is no cancellation and the partial sums
/// carry full relative precision.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 1u32;
    loop {
        term *= 2.0 * x2 / (2.0 * f64::from(n) + 1.0);
        sum += term;
        if term < sum * 1e-17 || n > 200 {
            break;
        }
        n += 1;
    }
    2.0 * INV_SQRT_PI * x * (-x2).exp() * sum
}

/// erfc on [2, inf) via the Laplace continued fraction
/// `erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`
/// evaluated with the modified Lentz algorithm.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x / tiny;
    let mut d = 0.0;
    let mut n = 1u32;
    loop {
        let a = 0.5 * f64::from(n);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 || n > 300 {
            break;
        }
        n += 1;
    }
    INV_SQRT_PI * (-x * x).exp() / f
}

/// Soft ReLU `SR(x) = phi(x) + x Phi(x)`, the mean of a ReLU applied to a
/// unit-variance Gaussian with mean `x`. Strictly positive, `SR(x) -> x` as
/// `x -> +inf` and `SR(x) -> 0` as `x -> -inf`.
#[inline]
pub fn soft_relu(x: f64) -> f64 {
    std_normal_pdf(x) + x * std_normal_cdf(x)
}

/// Max-shifted stable `log(sum_i exp(v_i))`.
pub fn log_sum_exp(v: &[f64]) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::Domain("log_sum_exp of empty vector".into()));
    }
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = v.iter().map(|&x| (x - m).exp()).sum();
    Ok(m + s.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Reference values frozen from a 40-digit evaluation (mpmath).
    const CDF_REF: &[(f64, f64)] = &[
        (0.1, 0.53982783727702898),
        (0.5, 0.6914624612740131),
        (1.0, 0.84134474606854295),
        (1.5, 0.93319279873114193),
        (1.959964, 0.9750000009035576),
        (2.0, 0.97724986805182079),
        (3.0, 0.99865010196836991),
        (4.0, 0.99996832875816688),
        (5.0, 0.99999971334842812),
        (6.0, 0.99999999901341235),
        (7.0, 0.99999999999872019),
        (8.0, 0.99999999999999938),
        (-0.5, 0.3085375387259869),
        (-1.0, 0.15865525393145705),
        (-2.0, 0.022750131948179207),
        (-3.0, 0.0013498980316300945),
        (-5.0, 2.8665157187919391e-7),
        (-8.0, 6.2209605742717841e-16),
        (-10.0, 7.6198530241605261e-24),
        (-15.0, 3.6709661993127509e-51),
        (-20.0, 2.7536241186062337e-89),
        (-25.0, 3.0566967063825609e-138),
    ];

    #[test]
    fn pdf_reference_values() {
        assert_relative_eq!(std_normal_pdf(0.0), 0.39894228040143268, max_relative = 1e-15);
        assert_relative_eq!(std_normal_pdf(1.0), 0.24197072451914335, max_relative = 1e-14);
        assert_relative_eq!(std_normal_pdf(3.0), 0.0044318484119380072, max_relative = 1e-14);
        assert_eq!(std_normal_pdf(3.0), std_normal_pdf(-3.0));
    }

    #[test]
    fn cdf_reference_grid() {
        for &(x, want) in CDF_REF {
            let got = std_normal_cdf(x);
            assert_relative_eq!(got, want, max_relative = 1e-13);
        }
    }

    #[test]
    fn cdf_extreme_tail_positive() {
        let p = std_normal_cdf(-38.0);
        assert!(p > 0.0, "Phi(-38) must be strictly positive, got {p}");
        assert!(p < 1e-300);
        // frozen: 2.8854283600687843e-316; subnormal, so only coarse agreement
        assert_relative_eq!(p, 2.8854283600687843e-316, max_relative = 1e-6);
    }

    #[test]
    fn cdf_half_at_zero() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
    }

    #[test]
    fn soft_relu_reference_values() {
        assert_relative_eq!(soft_relu(0.0), 0.39894228040143268, max_relative = 1e-15);
        assert_relative_eq!(soft_relu(0.3), 0.56676124211720987, max_relative = 1e-14);
        assert_relative_eq!(soft_relu(-2.0), 0.0084907026168296375, max_relative = 1e-13);
        assert_relative_eq!(soft_relu(-5.0), 5.346165533832815e-8, max_relative = 1e-12);
        // the tail suffers one subtraction's worth of cancellation
        assert_relative_eq!(soft_relu(-8.0), 7.5502624119464989e-17, max_relative = 1e-10);
        assert!((soft_relu(8.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_derivative_matches_pdf() {
        // central differences with step 1e-5 over [-8, 8]
        let h = 1e-5;
        let mut x = -8.0;
        while x <= 8.0 {
            let fd = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2.0 * h);
            assert!(
                (fd - std_normal_pdf(x)).abs() <= 1e-10,
                "d/dx Phi != phi at x={x}: fd={fd}, pdf={}",
                std_normal_pdf(x)
            );
            x += 0.25;
        }
    }

    #[test]
    fn log_sum_exp_basics() {
        assert_relative_eq!(log_sum_exp(&[0.0, 0.0]).unwrap(), 2f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(
            log_sum_exp(&[1000.0, 1000.0]).unwrap(),
            1000.0 + 2f64.ln(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            log_sum_exp(&[1.0, 0.0]).unwrap(),
            1.3132616875182228,
            max_relative = 1e-14
        );
        assert!(log_sum_exp(&[]).is_err());
    }

    proptest! {
        #[test]
        fn soft_relu_reflection_identity(x in -20.0f64..20.0) {
            // SR(x) - SR(-x) = x, from phi even and Phi(x)+Phi(-x) = 1
            let lhs = soft_relu(x) - soft_relu(-x);
            prop_assert!((lhs - x).abs() <= 1e-12 * x.abs().max(1.0));
        }

        #[test]
        fn cdf_monotone(mut xs in proptest::collection::vec(-30.0f64..30.0, 2..40)) {
            xs.sort_by(f64::total_cmp);
            let ys: Vec<f64> = xs.iter().map(|&x| std_normal_cdf(x)).collect();
            for w in ys.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }

        #[test]
        fn cdf_complement(x in -8.0f64..8.0) {
            let s = std_normal_cdf(x) + std_normal_cdf(-x);
            prop_assert!((s - 1.0).abs() < 1e-14);
        }

        #[test]
        fn log_sum_exp_shift(v in proptest::collection::vec(-50.0f64..50.0, 1..10), c in -100.0f64..100.0) {
            let shifted: Vec<f64> = v.iter().map(|&x| x + c).collect();
            let a = log_sum_exp(&shifted).unwrap();
            let b = log_sum_exp(&v).unwrap() + c;
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}

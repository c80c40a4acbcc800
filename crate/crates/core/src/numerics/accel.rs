//! Convergence acceleration and tail estimation for slowly converging sums.

use rug::ops::Pow;

use super::{ten_pow_neg, BigFloat, NumericsError};

#[derive(Debug, Clone)]
pub struct EpsilonEstimate {
    pub value: BigFloat,
    /// Even column of the epsilon table the value was taken from.
    pub column: usize,
    /// The table was truncated because a difference vanished.
    pub breakdown: bool,
    /// Distance to the previous even column's estimate.
    pub error_estimate: BigFloat,
}

/// Wynn's epsilon algorithm over a sequence of partial sums.
///
/// Returns the last entry of the highest even column. If a difference
/// underflows below `10^-digits` (relative to the largest sum) the table is
/// cut at the last complete even column and that value is returned with
/// `breakdown` set. Arithmetic runs at the precision of the inputs.
pub fn wynn_epsilon(sums: &[BigFloat]) -> Result<EpsilonEstimate, NumericsError> {
    if sums.len() < 5 {
        return Err(NumericsError::TooFewValues {
            needed: 5,
            got: sums.len(),
        });
    }
    let prec = sums.iter().map(BigFloat::prec).max().unwrap_or(64);
    let digits = (f64::from(prec.saturating_sub(4)) / std::f64::consts::LOG2_10).floor() as i64;
    let scale = sums
        .iter()
        .map(|s| BigFloat::with_val(prec, s.abs_ref()))
        .fold(BigFloat::with_val(prec, 1), |m, s| if s > m { s } else { m });
    let tiny = ten_pow_neg(digits, prec) * scale;

    let last_of = |col: &[BigFloat]| col.last().cloned().expect("non-empty column");
    let mut prev: Vec<BigFloat> = vec![BigFloat::with_val(prec, 0); sums.len() + 1];
    let mut cur: Vec<BigFloat> = sums.iter().map(|s| BigFloat::with_val(prec, s)).collect();

    // (column index, estimate) of the two most recent even columns
    let mut best = (0usize, last_of(&cur));
    let mut second: Option<BigFloat> = None;
    let mut breakdown = false;

    let mut k = 0usize;
    'table: while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = BigFloat::with_val(prec, &cur[j + 1] - &cur[j]);
            if BigFloat::with_val(prec, d.abs_ref()) <= tiny {
                breakdown = true;
                break 'table;
            }
            next.push(BigFloat::with_val(prec, &prev[j + 1] + d.recip()));
        }
        k += 1;
        prev = cur;
        cur = next;
        if k.is_multiple_of(2) {
            second = Some(std::mem::replace(&mut best, (k, last_of(&cur))).1);
        }
    }

    let (column, value) = best;
    let error_estimate = match second {
        Some(s) => BigFloat::with_val(prec, &value - &s).abs(),
        None => {
            let n = sums.len();
            BigFloat::with_val(prec, &sums[n - 1] - &sums[n - 2]).abs()
        }
    };
    Ok(EpsilonEstimate {
        value,
        column,
        breakdown,
        error_estimate,
    })
}

#[derive(Debug, Clone)]
pub struct TailFit {
    pub alpha: BigFloat,
    /// Estimated remainder sum over n > N.
    pub tail: BigFloat,
    pub confidence_width: BigFloat,
}

/// Fits `t(n) ~ c n^-alpha` to the last `w` terms `t(N-w+1..=N)` and integrates
/// the fitted power law beyond `N`.
///
/// The exponent comes from the two-point log ratio between the window's ends;
/// the disagreement with the same fit on the window's halves is the residual.
/// The remainder uses the midpoint rule
/// `sum_{n>N} n^-alpha ~ (N+1/2)^(1-alpha) / (alpha-1)`.
///
/// If the local exponent drifts like `alpha + c/n`, the residual is about
/// `c w / (2 N^2)` while the exponent itself is off by `c / N`; the width
/// propagates that `2N/w`-scaled error through `d tail / d alpha`.
pub fn tail_fit(terms: &[BigFloat], n: u64) -> Result<TailFit, NumericsError> {
    let w = terms.len();
    if w < 4 {
        return Err(NumericsError::TooFewValues { needed: 4, got: w });
    }
    if n < w as u64 {
        return Err(NumericsError::IrregularTail);
    }
    let prec = terms.iter().map(BigFloat::prec).max().unwrap_or(64);
    let negative = terms[w - 1] < 0;
    let mag: Vec<BigFloat> = terms
        .iter()
        .map(|t| BigFloat::with_val(prec, if negative { -t.clone() } else { t.clone() }))
        .collect();
    if mag.iter().any(|t| *t <= 0) || mag.windows(2).any(|p| p[1] > p[0]) {
        return Err(NumericsError::IrregularTail);
    }

    let index = |i: usize| n - (w - 1 - i) as u64;
    let two_point = |i: usize, j: usize| -> BigFloat {
        let num = BigFloat::with_val(prec, &mag[i] / &mag[j]).ln();
        let den = BigFloat::with_val(prec, index(j)) / index(i);
        num / den.ln()
    };

    let alpha = two_point(0, w - 1);
    let alpha_f = alpha.to_f64();
    if !(alpha_f > 1.2) {
        return Err(NumericsError::DecayTooSlow { alpha: alpha_f });
    }
    let mid = w / 2;
    let lo = two_point(0, mid);
    let hi = two_point(mid, w - 1);
    let residual = BigFloat::with_val(prec, &lo - &hi).abs();

    let nf = BigFloat::with_val(prec, n);
    let am1 = BigFloat::with_val(prec, &alpha - 1u32);
    let shrink = BigFloat::with_val(prec, &nf / BigFloat::with_val(prec, &nf + 0.5));
    let mut tail = BigFloat::with_val(prec, &mag[w - 1] * &nf) / &am1 * shrink.pow(&am1);
    let sensitivity = BigFloat::with_val(prec, nf.ln_ref()) + BigFloat::with_val(prec, am1.recip_ref());
    let drift = residual * 2u32 * &nf / w as u32;
    let confidence_width = BigFloat::with_val(prec, &tail * &drift) * sensitivity;
    if negative {
        tail = -tail;
    }
    Ok(TailFit {
        alpha,
        tail,
        confidence_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{agreement_digits, bits_for_digits, eval_const};
    use crate::exact::ConstName;
    use proptest::prelude::*;

    fn partial_sums(prec: u32, n: usize, term: impl Fn(u32) -> BigFloat) -> Vec<BigFloat> {
        let mut acc = BigFloat::with_val(prec, 0);
        (1..=n as u32)
            .map(|k| {
                acc += term(k);
                acc.clone()
            })
            .collect()
    }

    #[test]
    fn constant_sequence_is_fixed() {
        let s = BigFloat::with_val(100, 3.25);
        let est = wynn_epsilon(&vec![s.clone(); 5]).unwrap();
        assert_eq!(est.value, s);
        assert!(est.breakdown);
    }

    #[test]
    fn too_few_sums() {
        let s = vec![BigFloat::with_val(64, 1); 4];
        assert!(matches!(
            wynn_epsilon(&s),
            Err(NumericsError::TooFewValues { needed: 5, got: 4 })
        ));
    }

    #[test]
    fn alternating_harmonic_to_ln2() {
        let prec = bits_for_digits(40);
        let sums = partial_sums(prec, 20, |k| {
            let t = BigFloat::with_val(prec, 1) / k;
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        });
        let est = wynn_epsilon(&sums).unwrap();
        let ln2 = eval_const(ConstName::Ln2, 40);
        assert!(agreement_digits(&est.value, &ln2) >= 10.0);
    }

    #[test]
    fn basel_on_doubling_checkpoints() {
        // sum 1/n^2 sampled at 10 * 2^j converges logarithmically; on this
        // subsequence every c_k N^-k component is geometric.
        let prec = bits_for_digits(60);
        let all = partial_sums(prec, 10 * 256, |k| BigFloat::with_val(prec, 1) / (u64::from(k) * u64::from(k)));
        let sampled: Vec<BigFloat> = (0..=8).map(|j| all[(10usize << j) - 1].clone()).collect();
        let est = wynn_epsilon(&sampled).unwrap();
        let exact = eval_const(ConstName::PiSq, 60) / 6u32;
        assert!(agreement_digits(&est.value, &exact) >= 12.0, "{}", est.value);
    }

    #[test]
    fn tail_of_inverse_squares() {
        let prec = bits_for_digits(40);
        let n = 1000u64;
        let terms: Vec<BigFloat> = (n - 7..=n)
            .map(|k| BigFloat::with_val(prec, 1) / (k * k))
            .collect();
        let fit = tail_fit(&terms, n).unwrap();
        assert!((fit.alpha.to_f64() - 2.0).abs() < 1e-12);
        // brute-force remainder sum_{k>1000} 1/k^2 up to 10^6 plus its own tail
        let mut brute = 0.0f64;
        for k in (n + 1..=1_000_000).rev() {
            brute += 1.0 / (k as f64 * k as f64);
        }
        brute += 1.0 / 1_000_000.5;
        assert!((fit.tail.to_f64() - brute).abs() / brute < 1e-6, "{} vs {brute}", fit.tail);
        assert!(fit.tail > 0);
    }

    #[test]
    fn tail_of_inverse_fourth_powers() {
        let prec = bits_for_digits(40);
        let n = 100u64;
        let terms: Vec<BigFloat> = (n - 5..=n)
            .map(|k| BigFloat::with_val(prec, 1) / (k * k * k * k))
            .collect();
        let fit = tail_fit(&terms, n).unwrap();
        assert!((fit.alpha.to_f64() - 4.0).abs() < 1e-10);
        let rough = 1.0 / 3.0e6;
        assert!((fit.tail.to_f64() - rough).abs() / rough < 0.05);
    }

    #[test]
    fn harmonic_tail_is_too_slow() {
        let terms: Vec<BigFloat> = (95..=100u32).map(|k| BigFloat::with_val(80, 1) / k).collect();
        assert!(matches!(tail_fit(&terms, 100), Err(NumericsError::DecayTooSlow { .. })));
    }

    #[test]
    fn irregular_window_is_rejected() {
        let terms: Vec<BigFloat> = [1.0, -1.0, 0.5, 0.25].iter().map(|&v| BigFloat::with_val(64, v)).collect();
        assert!(matches!(tail_fit(&terms, 10), Err(NumericsError::IrregularTail)));
        assert!(tail_fit(&terms[..3], 10).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn geometric_series_is_summed_exactly(num in -50i32..=50, len in 10usize..14) {
            prop_assume!(num != 0);
            let prec = bits_for_digits(30);
            let q = BigFloat::with_val(prec, num) / 100u32;
            let mut power = BigFloat::with_val(prec, 1);
            let mut acc = BigFloat::with_val(prec, 0);
            let mut sums = Vec::new();
            for _ in 0..len {
                acc += &power;
                power *= &q;
                sums.push(acc.clone());
            }
            let est = wynn_epsilon(&sums).unwrap();
            let exact = BigFloat::with_val(prec, 1) / (1u32 - q);
            prop_assert!(agreement_digits(&est.value, &exact) >= 15.0);
        }

        #[test]
        fn tail_is_nonnegative_for_positive_power_laws(alpha_tenths in 13u32..60, n in 50u64..5000) {
            let prec = bits_for_digits(30);
            let alpha = BigFloat::with_val(prec, alpha_tenths) / 10u32;
            let terms: Vec<BigFloat> = (n - 5..=n)
                .map(|k| BigFloat::with_val(prec, k).pow(&alpha).recip())
                .collect();
            let fit = tail_fit(&terms, n).unwrap();
            prop_assert!(fit.tail >= 0);
            prop_assert!(fit.confidence_width >= 0);
            prop_assert!((fit.alpha.to_f64() - f64::from(alpha_tenths) / 10.0).abs() < 1e-9);
        }
    }
}

//! Tanh-sinh (double-exponential) quadrature.
//!
//! Substituting `x = mid + half * tanh(pi/2 * sinh t)` maps the interval to the
//! real line with doubly exponential decay of the weights, so algebraic
//! endpoint singularities need no special handling. Integrands receive the
//! node together with its exact distances to both endpoints; near an endpoint
//! those distances are far more accurate than `x - a` computed after rounding.

use rug::float::Constant;

use super::{bits_for_digits, ten_pow_neg, to_decimal_string, BigFloat, NumericsError};

/// A quadrature node: `x`, `x - a` and `b - x`, each computed directly.
#[derive(Debug, Clone)]
pub struct Abscissa {
    pub x: BigFloat,
    pub from_a: BigFloat,
    pub to_b: BigFloat,
}

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: BigFloat,
    /// Absolute change between the last two levels.
    pub error_estimate: BigFloat,
    pub levels_used: u32,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct TanhSinhOptions {
    pub min_level: u32,
    pub max_level: u32,
    /// Guard digits carried above the requested precision.
    pub guard_digits: u32,
}

impl Default for TanhSinhOptions {
    fn default() -> Self {
        TanhSinhOptions {
            min_level: 3,
            max_level: 12,
            guard_digits: 15,
        }
    }
}

/// Integrates `f` over `(a, b)` to roughly `digits` significant digits using the
/// default level schedule.
pub fn tanh_sinh_integrate<F>(
    f: F,
    a: &BigFloat,
    b: &BigFloat,
    digits: u32,
) -> Result<QuadratureResult, NumericsError>
where
    F: Fn(&Abscissa) -> BigFloat,
{
    tanh_sinh_integrate_with(f, a, b, digits, &TanhSinhOptions::default())
}

pub fn tanh_sinh_integrate_with<F>(
    f: F,
    a: &BigFloat,
    b: &BigFloat,
    digits: u32,
    opts: &TanhSinhOptions,
) -> Result<QuadratureResult, NumericsError>
where
    F: Fn(&Abscissa) -> BigFloat,
{
    let work_digits = digits + opts.guard_digits;
    let prec = bits_for_digits(work_digits);
    let a = BigFloat::with_val(prec, a);
    let b = BigFloat::with_val(prec, b);
    let half = BigFloat::with_val(prec, &b - &a) / 2u32;
    let mid = BigFloat::with_val(prec, &a + &b) / 2u32;
    let pi_half = BigFloat::with_val(prec, Constant::Pi) / 2u32;

    // Beyond tmax the weights (times a square-root endpoint singularity) fall
    // below 10^-work_digits.
    let tmax = (2.0 * f64::from(work_digits) * std::f64::consts::LN_10 / std::f64::consts::PI).asinh();

    let mut evaluations = 0usize;
    // Contribution of the node pair at parameter t (or the centre when t = 0),
    // without the step factor h.
    let mut node_sum = |t: &BigFloat| -> BigFloat {
        let e = BigFloat::with_val(prec, t.exp_ref());
        let e_inv = BigFloat::with_val(prec, e.recip_ref());
        let sinh = BigFloat::with_val(prec, &e - &e_inv) / 2u32;
        let cosh = BigFloat::with_val(prec, &e + &e_inv) / 2u32;
        let u = BigFloat::with_val(prec, &pi_half * &sinh);
        let q = BigFloat::with_val(prec, -(u * 2u32)).exp();
        let one_plus_q = BigFloat::with_val(prec, &q + 1u32);
        // half * (1 - tanh u) and half * sech^2 u * (pi/2) cosh t
        let near = BigFloat::with_val(prec, &half * &q) * 2u32 / &one_plus_q;
        let far = BigFloat::with_val(prec, &half * 2u32) - &near;
        let weight = BigFloat::with_val(prec, &pi_half * &cosh) * &half * &q * 4u32
            / BigFloat::with_val(prec, one_plus_q.square_ref());
        if t.is_zero() {
            evaluations += 1;
            let node = Abscissa {
                x: mid.clone(),
                from_a: half.clone(),
                to_b: half.clone(),
            };
            return weight * f(&node);
        }
        let left = Abscissa {
            x: BigFloat::with_val(prec, &a + &near),
            from_a: near.clone(),
            to_b: far.clone(),
        };
        let right = Abscissa {
            x: BigFloat::with_val(prec, &b - &near),
            from_a: far,
            to_b: near,
        };
        evaluations += 2;
        weight * (f(&left) + f(&right))
    };

    // Level 0: h = 1, nodes at integer t.
    let mut raw = BigFloat::with_val(prec, 0);
    let steps0 = tmax.ceil() as u64;
    for k in 0..=steps0 {
        raw += node_sum(&BigFloat::with_val(prec, k));
    }
    let mut h = BigFloat::with_val(prec, 1);
    let mut previous = BigFloat::with_val(prec, &raw * &h);

    let target = ten_pow_neg(i64::from(digits) - 5, prec);
    let floor = ten_pow_neg(i64::from(work_digits), prec);
    let mut diff = BigFloat::with_val(prec, f64::INFINITY);

    for level in 1..=opts.max_level {
        h /= 2u32;
        // New nodes are the odd multiples of the halved step.
        let count = (tmax * f64::from(1u32 << level)).ceil() as u64;
        let mut k = 1u64;
        while k <= count {
            let t = BigFloat::with_val(prec, &h * k);
            raw += node_sum(&t);
            k += 2;
        }
        let current = BigFloat::with_val(prec, &raw * &h);
        diff = BigFloat::with_val(prec, &current - &previous).abs();
        let tol = BigFloat::with_val(prec, current.abs_ref()) * &target + &floor;
        previous = current;
        if level >= opts.min_level && diff <= tol {
            return Ok(QuadratureResult {
                value: previous,
                error_estimate: diff,
                levels_used: level,
                evaluations,
            });
        }
    }
    Err(NumericsError::NonConvergence {
        levels: opts.max_level,
        estimate: to_decimal_string(&previous, digits),
        change: to_decimal_string(&diff, 6),
    })
}

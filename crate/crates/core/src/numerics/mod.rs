//! Arbitrary-precision floating evaluation.
//!
//! Precision is always an explicit argument in decimal digits; nothing here
//! reads ambient state. [`BigFloat`] is MPFR-backed.

mod accel;
mod quadrature;

pub use accel::{tail_fit, wynn_epsilon, EpsilonEstimate, TailFit};
pub use quadrature::{
    tanh_sinh_integrate, tanh_sinh_integrate_with, Abscissa, QuadratureResult, TanhSinhOptions,
};

use rug::float::Constant;
use rug::ops::Pow;
use thiserror::Error;

use crate::exact::{ConstName, ConstVec, Rational};

pub type BigFloat = rug::Float;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("{func} is undefined at {value}")]
    DomainError { func: &'static str, value: String },
    #[error("quadrature did not converge after {levels} levels (last estimate {estimate}, last change {change})")]
    NonConvergence {
        levels: u32,
        estimate: String,
        change: String,
    },
    #[error("epsilon table broke down at column {column}")]
    NumericalBreakdown { column: usize },
    #[error("fitted decay exponent {alpha:.3} is too small for a tail estimate (need > 1.2)")]
    DecayTooSlow { alpha: f64 },
    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("tail window is not positive and decreasing")]
    IrregularTail,
}

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary precision carrying `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

/// `10^(-digits)` at the given binary precision.
pub fn ten_pow_neg(digits: i64, prec: u32) -> BigFloat {
    let exp = i32::try_from(-digits).expect("exponent out of range");
    BigFloat::with_val(prec, 10).pow(exp)
}

/// Exact rational rounded to `digits`.
pub fn rational_to_float(q: &Rational, digits: u32) -> BigFloat {
    BigFloat::with_val(bits_for_digits(digits), q)
}

fn raw_const(name: ConstName, prec: u32) -> BigFloat {
    let pi = || BigFloat::with_val(prec, Constant::Pi);
    let sqrt2 = || BigFloat::with_val(prec, 2).sqrt();
    let ln2 = || BigFloat::with_val(prec, Constant::Log2);
    // asinh(1) = ln(1 + sqrt 2)
    let ln1p_sqrt2 = || BigFloat::with_val(prec, 1).asinh();
    match name {
        ConstName::One => BigFloat::with_val(prec, 1),
        ConstName::Sqrt2 => sqrt2(),
        ConstName::Pi => pi(),
        ConstName::PiSq => pi().square(),
        ConstName::Ln2 => ln2(),
        ConstName::Ln1pSqrt2 => ln1p_sqrt2(),
        ConstName::PiSqrt2 => pi() * sqrt2(),
        ConstName::PiLn2 => pi() * ln2(),
        ConstName::PiLn1pSqrt2 => pi() * ln1p_sqrt2(),
    }
}

/// A basis constant to `digits` decimal digits. Product constants are formed
/// at ten extra digits and rounded once.
pub fn eval_const(name: ConstName, digits: u32) -> BigFloat {
    let work = raw_const(name, bits_for_digits(digits + 10));
    BigFloat::with_val(bits_for_digits(digits), &work)
}

/// Numeric value of an exact constant vector, summed at `digits + 10` and
/// rounded to `digits`.
pub fn eval_constvec(v: &ConstVec, digits: u32) -> BigFloat {
    let prec = bits_for_digits(digits + 10);
    let mut acc = BigFloat::with_val(prec, 0);
    for (name, q) in v.iter() {
        let term = raw_const(name, prec) * BigFloat::with_val(prec, q);
        acc += term;
    }
    BigFloat::with_val(bits_for_digits(digits), &acc)
}

/// Elementary functions exposed to integrands and generating-function
/// right-hand sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Sqrt,
    Ln,
    Arcsin,
    Arctan,
    Sin,
    Cos,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sqrt => "sqrt",
            Elementary::Ln => "ln",
            Elementary::Arcsin => "arcsin",
            Elementary::Arctan => "arctan",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
        }
    }
}

/// Evaluates `func(x)` to `digits` digits, rejecting arguments outside the
/// real domain.
pub fn elementary(func: Elementary, x: &BigFloat, digits: u32) -> Result<BigFloat, NumericsError> {
    let domain_error = || NumericsError::DomainError {
        func: func.name(),
        value: x.to_string_radix(10, Some(20)),
    };
    if x.is_nan() {
        return Err(domain_error());
    }
    let prec = bits_for_digits(digits);
    let x = BigFloat::with_val(prec + 16, x);
    let y = match func {
        Elementary::Sqrt if x < 0 => return Err(domain_error()),
        Elementary::Ln if x <= 0 => return Err(domain_error()),
        Elementary::Arcsin if x.clone().abs() > 1 => return Err(domain_error()),
        Elementary::Sqrt => x.sqrt(),
        Elementary::Ln => x.ln(),
        Elementary::Arcsin => x.asin(),
        Elementary::Arctan => x.atan(),
        Elementary::Sin => x.sin(),
        Elementary::Cos => x.cos(),
    };
    Ok(BigFloat::with_val(prec, &y))
}

/// Scientific decimal string with `digits` significant digits, used for every
/// number written to a report.
pub fn to_decimal_string(x: &BigFloat, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    x.to_string_radix(10, Some(digits as usize))
}

/// Number of decimal digits to which `a` and `b` agree, relative to `|b|`
/// (or absolute when `b` is zero). Capped at the precision of the inputs.
pub fn agreement_digits(a: &BigFloat, b: &BigFloat) -> f64 {
    let prec = a.prec().max(b.prec());
    let diff = BigFloat::with_val(prec, a - b).abs();
    if diff.is_zero() {
        return f64::from(prec) / LOG2_10;
    }
    let scale = if b.is_zero() {
        BigFloat::with_val(prec, 1)
    } else {
        BigFloat::with_val(prec, b.abs_ref())
    };
    let rel = diff / scale;
    -rel.log10().to_f64()
}

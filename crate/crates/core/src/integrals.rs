//! The integral families paired with their exact closed forms, and tanh-sinh
//! evaluation of each defining integral as an independent oracle.

use std::fmt;
use std::str::FromStr;

use rug::float::Constant;
use rug::ops::Pow;

use crate::closed_forms::{
    closed_b, closed_f, closed_i, closed_k, closed_omega, closed_phi_even, closed_phi_odd, closed_wp,
    ClosedFormError,
};
use crate::exact::ConstVec;
use crate::numerics::{tanh_sinh_integrate, Abscissa, BigFloat, NumericsError, QuadratureResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormKind {
    /// `int_0^{1/2} t^k / sqrt(1-t) dt`
    B,
    /// `int_0^1 t^(2k) sqrt(1+t^2) dt`
    PhiEven,
    /// `int_0^1 t^(2k+1) sqrt(1+t^2) dt`
    PhiOdd,
    /// `int_0^{pi/2} sin^(2r) x sin(x/2) dx`
    K,
    /// `int_0^{pi/2} sin^(2r-1) x cos(x/2) dx`
    I,
    /// `int_0^{pi/2} z sin^q z dz`
    Wp,
    /// `int_0^1 t^(r-1/2) sqrt(1+t) arcsin t dt`
    F,
    /// `2 sqrt2 pi - 2 int_0^1 (t^(k+1/2) + t^(k-1/2)) / sqrt(1-t) dt`
    Omega,
}

impl ClosedFormKind {
    pub const ALL: [ClosedFormKind; 8] = [
        ClosedFormKind::B,
        ClosedFormKind::PhiEven,
        ClosedFormKind::PhiOdd,
        ClosedFormKind::K,
        ClosedFormKind::I,
        ClosedFormKind::Wp,
        ClosedFormKind::F,
        ClosedFormKind::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormKind::B => "B",
            ClosedFormKind::PhiEven => "phi-even",
            ClosedFormKind::PhiOdd => "phi-odd",
            ClosedFormKind::K => "K",
            ClosedFormKind::I => "I",
            ClosedFormKind::Wp => "wp",
            ClosedFormKind::F => "F",
            ClosedFormKind::Omega => "omega",
        }
    }

    /// Conventional name of the integer parameter.
    pub fn param_name(self) -> &'static str {
        match self {
            ClosedFormKind::B | ClosedFormKind::PhiEven | ClosedFormKind::PhiOdd | ClosedFormKind::Omega => "k",
            ClosedFormKind::K | ClosedFormKind::I | ClosedFormKind::F => "r",
            ClosedFormKind::Wp => "q",
        }
    }

    pub fn min_param(self) -> u64 {
        match self {
            ClosedFormKind::I | ClosedFormKind::Omega => 1,
            _ => 0,
        }
    }

    pub fn closed_form(self, p: u64) -> Result<ConstVec, ClosedFormError> {
        Ok(match self {
            ClosedFormKind::B => closed_b(p),
            ClosedFormKind::PhiEven => closed_phi_even(p),
            ClosedFormKind::PhiOdd => closed_phi_odd(p),
            ClosedFormKind::K => closed_k(p),
            ClosedFormKind::I => closed_i(p)?,
            ClosedFormKind::Wp => closed_wp(p),
            ClosedFormKind::F => closed_f(p),
            ClosedFormKind::Omega => closed_omega(p)?,
        })
    }
}

impl fmt::Display for ClosedFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKind(pub String);

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = ClosedFormKind::ALL.iter().map(|k| k.name()).collect();
        write!(f, "unknown integral `{}` (expected one of {})", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownKind {}

impl FromStr for ClosedFormKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClosedFormKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntegralError {
    #[error(transparent)]
    Domain(#[from] ClosedFormError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn sin_pow(x: &BigFloat, n: u32) -> BigFloat {
    BigFloat::with_val(x.prec(), x.sin_ref()).pow(n)
}

fn half_pi(prec: u32) -> BigFloat {
    BigFloat::with_val(prec, Constant::Pi) / 2u32
}

/// Evaluates the defining integral of `kind` at parameter `p` by tanh-sinh
/// quadrature at `digits` decimal digits.
pub fn defining_integral(kind: ClosedFormKind, p: u64, digits: u32) -> Result<QuadratureResult, IntegralError> {
    if p < kind.min_param() {
        return Err(ClosedFormError::DomainError {
            form: kind.name(),
            param: kind.param_name(),
            min: kind.min_param(),
            value: p,
        }
        .into());
    }
    let prec = crate::numerics::bits_for_digits(digits + 20);
    let zero = BigFloat::with_val(prec, 0);
    let one = BigFloat::with_val(prec, 1);
    let pe = u32::try_from(p).expect("parameter too large");
    let result = match kind {
        ClosedFormKind::B => tanh_sinh_integrate(
            |n: &Abscissa| {
                // 1 - t = (1/2 - t) + 1/2
                let root = BigFloat::with_val(n.x.prec(), &n.to_b + 0.5).sqrt();
                BigFloat::with_val(n.x.prec(), (&n.x).pow(pe)) / root
            },
            &zero,
            &BigFloat::with_val(prec, 0.5),
            digits,
        )?,
        ClosedFormKind::PhiEven | ClosedFormKind::PhiOdd => {
            let m = if kind == ClosedFormKind::PhiEven { 2 * pe } else { 2 * pe + 1 };
            tanh_sinh_integrate(
                |n: &Abscissa| {
                    let t = &n.x;
                    (BigFloat::with_val(t.prec(), t.square_ref()) + 1u32).sqrt() * BigFloat::with_val(t.prec(), t.pow(m))
                },
                &zero,
                &one,
                digits,
            )?
        }
        ClosedFormKind::K => tanh_sinh_integrate(
            |n: &Abscissa| sin_pow(&n.x, 2 * pe) * BigFloat::with_val(n.x.prec(), &n.x / 2u32).sin(),
            &zero,
            &half_pi(prec),
            digits,
        )?,
        ClosedFormKind::I => tanh_sinh_integrate(
            |n: &Abscissa| sin_pow(&n.x, 2 * pe - 1) * BigFloat::with_val(n.x.prec(), &n.x / 2u32).cos(),
            &zero,
            &half_pi(prec),
            digits,
        )?,
        ClosedFormKind::Wp => tanh_sinh_integrate(
            |n: &Abscissa| sin_pow(&n.x, pe) * &n.x,
            &zero,
            &half_pi(prec),
            digits,
        )?,
        ClosedFormKind::F => tanh_sinh_integrate(
            |n: &Abscissa| {
                let p = n.x.prec();
                let t = &n.from_a;
                // arcsin t = pi/2 - 2 arcsin(sqrt((1-t)/2)), accurate as t -> 1
                let asin = half_pi(p) - BigFloat::with_val(p, &n.to_b / 2u32).sqrt().asin() * 2u32;
                let power = BigFloat::with_val(p, t.pow(pe)) / BigFloat::with_val(p, t.sqrt_ref());
                power * BigFloat::with_val(p, t + 1u32).sqrt() * asin
            },
            &zero,
            &one,
            digits,
        )?,
        ClosedFormKind::Omega => {
            let beta = tanh_sinh_integrate(
                |n: &Abscissa| {
                    let p = n.x.prec();
                    let t = &n.from_a;
                    let lower = BigFloat::with_val(p, t.pow(pe)) / BigFloat::with_val(p, t.sqrt_ref());
                    let upper = BigFloat::with_val(p, &lower * t);
                    (lower + upper) / BigFloat::with_val(p, n.to_b.sqrt_ref())
                },
                &zero,
                &one,
                digits,
            )?;
            let pi = BigFloat::with_val(prec, Constant::Pi);
            let root2 = BigFloat::with_val(prec, 2u32).sqrt();
            QuadratureResult {
                value: pi * root2 * 2u32 - beta.value * 2u32,
                error_estimate: beta.error_estimate * 2u32,
                ..beta
            }
        }
    };
    Ok(result)
}

//! Exact closed forms of the integral families behind the series catalog.
//!
//! Every value is a [`ConstVec`] assembled from exact rational sums, so
//! alternating cancellations are free of rounding. The defining integrals
//! (see [`crate::integrals`]) serve as independent numeric oracles.

use thiserror::Error;

use crate::exact::{binomial, central_binomial, pow2, pow4, ConstName, ConstVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{form} is defined for {param} >= {min}, got {value}")]
    DomainError {
        form: &'static str,
        param: &'static str,
        min: u64,
        value: u64,
    },
}

fn sign(p: u64) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn binom(n: u64, k: u64) -> Rational {
    Rational::from(binomial(n, k as i64))
}

fn central(n: u64) -> Rational {
    Rational::from(central_binomial(n))
}

fn inv(q: Rational) -> Rational {
    Rational::from(1) / q
}

/// `int_0^{pi/2} sin^n x dx`: `pi/2 * C(2m,m)/4^m` for `n = 2m`,
/// `4^m / ((2m+1) C(2m,m))` for `n = 2m+1`.
pub fn wallis_sin(n: u64) -> ConstVec {
    let m = n / 2;
    if n.is_multiple_of(2) {
        ConstVec::term(central(m) * pow4(-(m as i64)) / 2u32, ConstName::Pi)
    } else {
        ConstVec::rational(pow4(m as i64) / (central(m) * (2 * m + 1)))
    }
}

/// `B(k + 1/2, 1/2) = pi C(2k,k) / 4^k`; the Gamma recursion collapses every
/// half-integer Beta value to a rational multiple of pi.
pub fn beta_half(k: u64) -> ConstVec {
    ConstVec::term(central(k) * pow4(-(k as i64)), ConstName::Pi)
}

/// `int_0^{1/2} t^k / sqrt(1-t) dt = sum_p C(k,p) (-1)^p / (2p+1) (2 - sqrt2 / 2^p)`.
pub fn closed_b(k: u64) -> ConstVec {
    let (nu1, nu2) = nu_pair(k);
    ConstVec::from_terms([(nu1, ConstName::One), (-nu2, ConstName::Sqrt2)])
}

/// `(nu1, nu2)` with `closed_b(k) = nu1 - nu2 sqrt2`:
/// `nu1 = 2 sum C(k,p)(-1)^p/(2p+1)`, `nu2 = sum C(k,p)(-1/2)^p/(2p+1)`.
pub fn nu_pair(k: u64) -> (Rational, Rational) {
    let mut nu1 = Rational::new();
    let mut nu2 = Rational::new();
    for p in 0..=k {
        let c = binom(k, p) * sign(p) / (2 * p + 1);
        nu1 += Rational::from(&c * 2u32);
        nu2 += c * pow2(-(p as i64));
    }
    (nu1, nu2)
}

/// `phi(2k+1) = int_0^1 t^(2k+1) sqrt(1+t^2) dt
///            = sum_p C(k,p) (-1)^(k-p) (sqrt2 2^(p+1) - 1) / (2p+3)`.
pub fn closed_phi_odd(k: u64) -> ConstVec {
    let mut one = Rational::new();
    let mut root = Rational::new();
    for p in 0..=k {
        let c = binom(k, p) * sign(k - p) / (2 * p + 3);
        root += &c * pow2(p as i64 + 1);
        one -= c;
    }
    ConstVec::from_terms([(one, ConstName::One), (root, ConstName::Sqrt2)])
}

/// `phi(2k) = int_0^1 t^(2k) sqrt(1+t^2) dt
///          = (-1)^k/4^k C(2k,k)/(k+1) (sqrt2/2 + ln(1+sqrt2)/2 + sqrt2 sum_{p=1}^k (-1)^p 4^p / C(2p,p))`.
pub fn closed_phi_even(k: u64) -> ConstVec {
    let mut root = Rational::from((1, 2));
    for p in 1..=k {
        root += pow4(p as i64) * sign(p) / central(p);
    }
    let bracket = ConstVec::from_terms([(root, ConstName::Sqrt2), (Rational::from((1, 2)), ConstName::Ln1pSqrt2)]);
    let prefactor = central(k) * pow4(-(k as i64)) * sign(k) / (k + 1);
    bracket.scale(&prefactor)
}

/// `K(r) = int_0^{pi/2} sin^(2r) x sin(x/2) dx
///       = 16^r / ((4r+1) C(4r,2r)) (2 + sqrt2 sum_{k=0}^r C(4k,2k) / ((4k-1) 16^k))`.
pub fn closed_k(r: u64) -> ConstVec {
    let mut root = Rational::new();
    for k in 0..=r {
        root += central(2 * k) * pow4(-2 * k as i64) / (4 * k as i64 - 1);
    }
    let prefactor = pow4(2 * r as i64) / (central(2 * r) * (4 * r + 1));
    ConstVec::from_terms([(Rational::from(2), ConstName::One), (root, ConstName::Sqrt2)]).scale(&prefactor)
}

/// `I(r) = int_0^{pi/2} sin^(2r-1) x cos(x/2) dx` for `r >= 1`
///       `= 6 16^(r-1) / (r C(4r,2r)) (4/3 - sqrt2 sum_{k=0}^{r-1} C(4k,2k) / ((6k+3) 16^k))`.
pub fn closed_i(r: u64) -> Result<ConstVec, ClosedFormError> {
    if r == 0 {
        return Err(ClosedFormError::DomainError {
            form: "I",
            param: "r",
            min: 1,
            value: r,
        });
    }
    let mut root = Rational::new();
    for k in 0..r {
        root -= central(2 * k) * pow4(-2 * k as i64) / (6 * k + 3);
    }
    let prefactor = pow4(2 * (r as i64 - 1)) * 6u32 / (central(2 * r) * r);
    Ok(ConstVec::from_terms([(Rational::from((4, 3)), ConstName::One), (root, ConstName::Sqrt2)]).scale(&prefactor))
}

/// `wp(q) = int_0^{pi/2} z sin^q z dz`:
/// `wp(2n) = C(2n,n)/4^(n+1) (pi^2/2 + sum_{k=1}^n 4^k / (k^2 C(2k,k)))`,
/// `wp(2n+1) = 4^n / ((2n+1) C(2n,n)) (1 + sum_{k=1}^n C(2k,k) / (4^k (2k+1)))`.
pub fn closed_wp(q: u64) -> ConstVec {
    let n = q / 2;
    if q.is_multiple_of(2) {
        let mut sum = Rational::new();
        for k in 1..=n {
            sum += pow4(k as i64) / (central(k) * (k * k));
        }
        let bracket = ConstVec::from_terms([(sum, ConstName::One), (Rational::from((1, 2)), ConstName::PiSq)]);
        bracket.scale(&(central(n) * pow4(-(n as i64 + 1))))
    } else {
        let mut sum = Rational::from(1);
        for k in 1..=n {
            sum += central(k) * pow4(-(k as i64)) / (2 * k + 1);
        }
        ConstVec::rational(sum * pow4(n as i64) / (central(n) * (2 * n + 1)))
    }
}

/// `omega_k = 2 sqrt2 pi - 2 B(k+3/2, 1/2) - 2 B(k+1/2, 1/2)` for `k >= 1`.
pub fn closed_omega(k: u64) -> Result<ConstVec, ClosedFormError> {
    if k == 0 {
        return Err(ClosedFormError::DomainError {
            form: "omega",
            param: "k",
            min: 1,
            value: k,
        });
    }
    let two = Rational::from(2);
    Ok(ConstVec::term(2, ConstName::PiSqrt2) - beta_half(k + 1).scale(&two) - beta_half(k).scale(&two))
}

/// `F(0) = pi/2 (sqrt2 - 1 + ln(1+sqrt2) - ln2)`.
pub fn closed_f0() -> ConstVec {
    let half = Rational::from((1, 2));
    ConstVec::from_terms([
        (half.clone(), ConstName::PiSqrt2),
        (-half.clone(), ConstName::Pi),
        (half.clone(), ConstName::PiLn1pSqrt2),
        (-half, ConstName::PiLn2),
    ])
}

/// `F(r) = int_0^1 t^(r-1/2) sqrt(1+t) arcsin t dt
///       = (-1)^r/4^r C(2r,r)/(r+1) (F(0) + 1/2 sum_{k=1}^r (-1)^k 4^k / C(2k,k) omega_k)`.
pub fn closed_f(r: u64) -> ConstVec {
    let mut bracket = closed_f0();
    for k in 1..=r {
        let w = closed_omega(k).expect("k >= 1");
        bracket += w.scale(&(pow4(k as i64) * sign(k) / (central(k) * 2u32)));
    }
    bracket.scale(&(central(r) * pow4(-(r as i64)) * sign(r) / (r + 1)))
}

/// `1 / ((2r+1) C(2r, r))`, the boundary term shared by several theorems.
pub fn odd_central_reciprocal(r: u64) -> Rational {
    inv(central(r) * (2 * r + 1))
}

//! Exact arithmetic: big integers and rationals, the combinatorial primitives
//! used by every series term, and [`ConstVec`], the exact value type of all
//! closed forms.
//!
//! A [`ConstVec`] is a finite Q-linear combination over nine named real
//! constants. It is a vector space, not a ring: the only non-linear
//! operations are three fixed basis maps (multiply by sqrt 2, multiply by pi,
//! divide by pi) which are defined on part of the basis and fail elsewhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

pub use rug::{Integer, Rational};
use rug::ops::Pow;
use thiserror::Error;

/// n! as an exact integer.
pub fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(to_u32(n)))
}

/// C(n, k), zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(to_u32(n), k as u32))
}

/// C(2n, n).
pub fn central_binomial(n: u64) -> Integer {
    binomial(2 * n, n as i64)
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += 1u32;
    }
    acc
}

/// `base^exp` for a signed exponent. Panics on `0^negative`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let exp = i32::try_from(exp).expect("exponent out of range");
    assert!(exp >= 0 || *base != 0, "zero raised to a negative power");
    Rational::from(base.pow(exp))
}

/// `2^exp` as a rational, for any signed exponent.
pub fn pow2(exp: i64) -> Rational {
    rational_pow(&Rational::from(2), exp)
}

/// `4^exp` as a rational, for any signed exponent.
pub fn pow4(exp: i64) -> Rational {
    rational_pow(&Rational::from(4), exp)
}

/// `p/q` shorthand used throughout the closed-form code.
pub fn ratio(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::from((p, q))
}

fn to_u32(n: u64) -> u32 {
    u32::try_from(n).expect("argument exceeds the supported range")
}

/// The nine symbolic constants spanning every closed form.
///
/// Declaration order is the canonical display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstName {
    One,
    Sqrt2,
    Pi,
    PiSq,
    Ln2,
    Ln1pSqrt2,
    PiSqrt2,
    PiLn2,
    PiLn1pSqrt2,
}

impl ConstName {
    pub const ALL: [ConstName; 9] = [
        ConstName::One,
        ConstName::Sqrt2,
        ConstName::Pi,
        ConstName::PiSq,
        ConstName::Ln2,
        ConstName::Ln1pSqrt2,
        ConstName::PiSqrt2,
        ConstName::PiLn2,
        ConstName::PiLn1pSqrt2,
    ];

    /// Token used in the canonical text form.
    pub fn symbol(self) -> &'static str {
        match self {
            ConstName::One => "1",
            ConstName::Sqrt2 => "sqrt2",
            ConstName::Pi => "pi",
            ConstName::PiSq => "pi^2",
            ConstName::Ln2 => "ln2",
            ConstName::Ln1pSqrt2 => "ln(1+sqrt2)",
            ConstName::PiSqrt2 => "pi*sqrt2",
            ConstName::PiLn2 => "pi*ln2",
            ConstName::PiLn1pSqrt2 => "pi*ln(1+sqrt2)",
        }
    }

    /// Upper-case identifier (ONE, SQRT2, ...).
    pub fn ident(self) -> &'static str {
        match self {
            ConstName::One => "ONE",
            ConstName::Sqrt2 => "SQRT2",
            ConstName::Pi => "PI",
            ConstName::PiSq => "PI_SQ",
            ConstName::Ln2 => "LN2",
            ConstName::Ln1pSqrt2 => "LN_1P_SQRT2",
            ConstName::PiSqrt2 => "PI_SQRT2",
            ConstName::PiLn2 => "PI_LN2",
            ConstName::PiLn1pSqrt2 => "PI_LN_1P_SQRT2",
        }
    }

    fn times_sqrt2(self) -> Option<(i64, ConstName)> {
        match self {
            ConstName::One => Some((1, ConstName::Sqrt2)),
            ConstName::Sqrt2 => Some((2, ConstName::One)),
            ConstName::Pi => Some((1, ConstName::PiSqrt2)),
            ConstName::PiSqrt2 => Some((2, ConstName::Pi)),
            _ => None,
        }
    }

    fn times_pi(self) -> Option<ConstName> {
        match self {
            ConstName::One => Some(ConstName::Pi),
            ConstName::Sqrt2 => Some(ConstName::PiSqrt2),
            ConstName::Pi => Some(ConstName::PiSq),
            ConstName::Ln2 => Some(ConstName::PiLn2),
            ConstName::Ln1pSqrt2 => Some(ConstName::PiLn1pSqrt2),
            _ => None,
        }
    }

    fn over_pi(self) -> Option<ConstName> {
        ConstName::ALL.iter().copied().find(|c| c.times_pi() == Some(self))
    }
}

impl fmt::Display for ConstName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ident())
    }
}

impl FromStr for ConstName {
    type Err = ParseConstVecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstName::ALL
            .iter()
            .copied()
            .find(|c| c.ident().eq_ignore_ascii_case(s) || c.symbol() == s)
            .ok_or_else(|| ParseConstVecError(format!("unknown constant `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{op} is undefined on basis constant {name} (result leaves the constant basis)")]
pub struct OutOfBasis {
    pub op: &'static str,
    pub name: ConstName,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse constant vector: {0}")]
pub struct ParseConstVecError(String);

/// Exact Q-linear combination of [`ConstName`] constants, stored sparsely with
/// no zero coefficients so that equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstVec {
    coeffs: BTreeMap<ConstName, Rational>,
}

impl ConstVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: impl Into<Rational>) -> Self {
        Self::term(q, ConstName::One)
    }

    pub fn constant(name: ConstName) -> Self {
        Self::term(1, name)
    }

    /// `q * name`.
    pub fn term(q: impl Into<Rational>, name: ConstName) -> Self {
        let mut v = Self::zero();
        v.add_term(q.into(), name);
        v
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, ConstName)>,
    {
        let mut v = Self::zero();
        for (q, name) in terms {
            v.add_term(q, name);
        }
        v
    }

    pub fn add_term(&mut self, q: Rational, name: ConstName) {
        if q == 0 {
            return;
        }
        let slot = self.coeffs.entry(name).or_default();
        *slot += q;
        if *slot == 0 {
            self.coeffs.remove(&name);
        }
    }

    /// Coefficient of `name` (zero when absent).
    pub fn coeff(&self, name: ConstName) -> Rational {
        self.coeffs.get(&name).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The rational value, if the vector lies on ONE only.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::new()),
            1 => self.coeffs.get(&ConstName::One).cloned(),
            _ => None,
        }
    }

    /// Non-zero coefficients in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (ConstName, &Rational)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = ConstName> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, Rational::from(v * q)))
                .collect(),
        }
    }

    /// Multiplication by sqrt 2, defined on {1, sqrt2, pi, pi*sqrt2}.
    pub fn mul_sqrt2(&self) -> Result<Self, OutOfBasis> {
        self.map_basis("multiplication by sqrt2", |c| c.times_sqrt2())
    }

    /// Multiplication by pi, defined on {1, sqrt2, pi, ln2, ln(1+sqrt2)}.
    pub fn mul_pi(&self) -> Result<Self, OutOfBasis> {
        self.map_basis("multiplication by pi", |c| c.times_pi().map(|t| (1, t)))
    }

    /// Division by pi, the inverse of [`ConstVec::mul_pi`].
    pub fn div_pi(&self) -> Result<Self, OutOfBasis> {
        self.map_basis("division by pi", |c| c.over_pi().map(|t| (1, t)))
    }

    fn map_basis(
        &self,
        op: &'static str,
        image: impl Fn(ConstName) -> Option<(i64, ConstName)>,
    ) -> Result<Self, OutOfBasis> {
        let mut out = Self::zero();
        for (name, q) in self.iter() {
            let (factor, target) = image(name).ok_or(OutOfBasis { op, name })?;
            out.add_term(Rational::from(q * factor), target);
        }
        Ok(out)
    }

    fn common_denominator(&self) -> Integer {
        self.coeffs
            .values()
            .fold(Integer::from(1), |acc, q| Integer::from(acc.lcm_ref(q.denom())))
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, q)) in self.iter().enumerate() {
            let negative = *q < 0;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = Rational::from(q.abs_ref());
            let (num, den) = (abs.numer(), abs.denom());
            if name == ConstName::One {
                write!(f, "{num}")?;
            } else if *num == 1 {
                f.write_str(name.symbol())?;
            } else {
                write!(f, "{num}*{}", name.symbol())?;
            }
            if *den != 1 {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConstVec {
    /// Canonical text: grouped `(a + b*sqrt2)/d` for multi-term algebraic
    /// values, term-wise `p/q*c` sums otherwise; basis order as declared.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let algebraic = self
            .support()
            .all(|c| matches!(c, ConstName::One | ConstName::Sqrt2));
        let den = self.common_denominator();
        if algebraic && self.coeffs.len() > 1 && den != 1 {
            f.write_str("(")?;
            self.scale(&Rational::from(den.clone())).write_terms(f)?;
            write!(f, ")/{den}")
        } else {
            self.write_terms(f)
        }
    }
}

impl FromStr for ConstVec {
    type Err = ParseConstVecError;

    /// Parses the canonical text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some(close) = rest.rfind(")/") {
                let inner: ConstVec = parse_terms(&rest[..close])?;
                let den: Integer = rest[close + 2..]
                    .parse()
                    .map_err(|_| ParseConstVecError(format!("bad denominator in `{s}`")))?;
                if den == 0 {
                    return Err(ParseConstVecError("zero denominator".into()));
                }
                return Ok(inner.scale(&Rational::from((1, den))));
            }
        }
        parse_terms(s)
    }
}

fn parse_terms(s: &str) -> Result<ConstVec, ParseConstVecError> {
    let s = s.trim();
    if s == "0" {
        return Ok(ConstVec::zero());
    }
    let (mut negative, mut rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let mut out = ConstVec::zero();
    loop {
        let next = [" + ", " - "]
            .iter()
            .filter_map(|sep| rest.find(sep).map(|at| (at, *sep)))
            .min_by_key(|(at, _)| *at);
        let (chunk, following) = match next {
            Some((at, sep)) => (&rest[..at], Some((sep, &rest[at + 3..]))),
            None => (rest, None),
        };
        let (q, name) = parse_term(chunk)?;
        out.add_term(if negative { -q } else { q }, name);
        match following {
            Some((sep, tail)) => {
                negative = sep == " - ";
                rest = tail;
            }
            None => break,
        }
    }
    Ok(out)
}

fn parse_term(chunk: &str) -> Result<(Rational, ConstName), ParseConstVecError> {
    let bad = || ParseConstVecError(format!("bad term `{chunk}`"));
    let (body, den) = match chunk.rsplit_once('/') {
        // `ln(1+sqrt2)` never contains '/', so the last '/' is the denominator.
        Some((b, d)) => (b, d.parse::<Integer>().map_err(|_| bad())?),
        None => (chunk, Integer::from(1)),
    };
    if den == 0 {
        return Err(bad());
    }
    let (num, name) = if let Ok(n) = body.parse::<Integer>() {
        (n, ConstName::One)
    } else {
        let (coef, sym) = match body.split_once('*') {
            Some((c, sym)) if c.parse::<Integer>().is_ok() => (c.parse::<Integer>().unwrap(), sym),
            _ => (Integer::from(1), body),
        };
        let name = ConstName::ALL
            .iter()
            .copied()
            .find(|c| *c != ConstName::One && c.symbol() == sym)
            .ok_or_else(bad)?;
        (coef, name)
    };
    Ok((Rational::from((num, den)), name))
}

impl Add for ConstVec {
    type Output = ConstVec;
    fn add(mut self, rhs: ConstVec) -> ConstVec {
        self += &rhs;
        self
    }
}

impl Add<&ConstVec> for &ConstVec {
    type Output = ConstVec;
    fn add(self, rhs: &ConstVec) -> ConstVec {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ConstVec> for ConstVec {
    fn add_assign(&mut self, rhs: &ConstVec) {
        for (name, q) in rhs.iter() {
            self.add_term(q.clone(), name);
        }
    }
}

impl AddAssign for ConstVec {
    fn add_assign(&mut self, rhs: ConstVec) {
        *self += &rhs;
    }
}

impl Sub for ConstVec {
    type Output = ConstVec;
    fn sub(mut self, rhs: ConstVec) -> ConstVec {
        self -= &rhs;
        self
    }
}

impl Sub<&ConstVec> for &ConstVec {
    type Output = ConstVec;
    fn sub(self, rhs: &ConstVec) -> ConstVec {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&ConstVec> for ConstVec {
    fn sub_assign(&mut self, rhs: &ConstVec) {
        for (name, q) in rhs.iter() {
            self.add_term(Rational::from(-q), name);
        }
    }
}

impl Neg for ConstVec {
    type Output = ConstVec;
    fn neg(self) -> ConstVec {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&Rational> for &ConstVec {
    type Output = ConstVec;
    fn mul(self, q: &Rational) -> ConstVec {
        self.scale(q)
    }
}

impl Mul<Rational> for ConstVec {
    type Output = ConstVec;
    fn mul(self, q: Rational) -> ConstVec {
        self.scale(&q)
    }
}

impl From<Rational> for ConstVec {
    fn from(q: Rational) -> Self {
        ConstVec::rational(q)
    }
}

impl From<ConstName> for ConstVec {
    fn from(name: ConstName) -> Self {
        ConstVec::constant(name)
    }
}

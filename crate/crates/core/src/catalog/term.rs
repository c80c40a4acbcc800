//! Exact series terms as products of simple factors.
//!
//! A term `t(n)` is a product of powers, linear factors, binomial
//! coefficients and Pochhammer symbols, each with integer-affine dependence on
//! `n`. Every factor has a cheap exact ratio `f(n+1)/f(n)`, so consecutive
//! terms are produced by multiplying the previous (large) rational by a small
//! one instead of re-evaluating big binomials.

use thiserror::Error;

use crate::exact::{binomial, pochhammer, rational_pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term is undefined at n = {0} (zero denominator)")]
    Undefined(i64),
}

/// `a n + b` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64) -> Self {
        Affine { a, b }
    }

    pub fn at(self, n: i64) -> i64 {
        self.a * n + self.b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Const(Rational),
    /// `base^(a n + b)`
    Power { base: Rational, exp: Affine },
    /// `(slope n + offset)^exp`
    Linear { slope: i64, offset: Rational, exp: i32 },
    /// `C(top, bottom)^exp` with `exp = +-1`
    Binomial { top: Affine, bottom: Affine, exp: i32 },
    /// `(n + shift)_len^exp` with `exp = +-1`
    Pochhammer { shift: Rational, len: u64, exp: i32 },
}

fn invert(q: Rational) -> Option<Rational> {
    if q == 0 {
        None
    } else {
        Some(Rational::from(1) / q)
    }
}

fn signed(q: Rational, exp: i32) -> Option<Rational> {
    if exp >= 0 {
        Some(q)
    } else {
        invert(q)
    }
}

fn product(range: impl Iterator<Item = i64>) -> Rational {
    range.fold(Rational::from(1), |acc, v| acc * v)
}

impl Factor {
    pub fn value(&self, n: i64) -> Option<Rational> {
        match self {
            Factor::Const(q) => Some(q.clone()),
            Factor::Power { base, exp } => {
                let e = exp.at(n);
                if *base == 0 && e <= 0 {
                    return if e == 0 { Some(Rational::from(1)) } else { None };
                }
                Some(rational_pow(base, e))
            }
            Factor::Linear { slope, offset, exp } => {
                let v = Rational::from(*slope * n) + offset;
                if v == 0 && *exp < 0 {
                    return None;
                }
                Some(rational_pow(&v, i64::from(*exp)))
            }
            Factor::Binomial { top, bottom, exp } => {
                let t = top.at(n);
                let c = if t < 0 {
                    Rational::new()
                } else {
                    Rational::from(binomial(t as u64, bottom.at(n)))
                };
                signed(c, *exp)
            }
            Factor::Pochhammer { shift, len, exp } => {
                let x = Rational::from(n) + shift;
                signed(pochhammer(&x, *len), *exp)
            }
        }
    }

    /// Exact `f(n+1) / f(n)` when it can be formed from small factors.
    pub fn step_ratio(&self, n: i64) -> Option<Rational> {
        match self {
            Factor::Const(_) => Some(Rational::from(1)),
            Factor::Power { base, exp } => {
                if *base == 0 {
                    return None;
                }
                Some(rational_pow(base, exp.a))
            }
            Factor::Linear { slope, offset, exp } => {
                let here = Rational::from(*slope * n) + offset;
                if here == 0 {
                    return None;
                }
                let next = Rational::from(*slope * (n + 1)) + offset;
                if next == 0 && *exp < 0 {
                    return None;
                }
                Some(rational_pow(&(next / here), i64::from(*exp)))
            }
            Factor::Binomial { top, bottom, exp } => {
                let (t, b) = (top.at(n), bottom.at(n));
                let (da, dc) = (top.a, bottom.a);
                if t < 0 || b < 0 || b > t || da < 0 || dc < 0 || dc > da {
                    return None;
                }
                // C(t+da, b+dc) / C(t, b)
                let num = product((1..=da).map(|i| t + i));
                let den = product((1..=dc).map(|i| b + i)) * product((1..=da - dc).map(|i| t - b + i));
                signed(num / den, *exp)
            }
            Factor::Pochhammer { shift, len, exp } => {
                if *len == 0 {
                    return Some(Rational::from(1));
                }
                let x = Rational::from(n) + shift;
                if x == 0 {
                    return None;
                }
                let next = x.clone() + Rational::from(*len);
                if next == 0 && *exp < 0 {
                    return None;
                }
                signed(next / x, *exp)
            }
        }
    }
}

/// Product of factors; the value at `n` is exact.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Term {
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn new() -> Self {
        Term::default()
    }

    pub fn constant(mut self, q: Rational) -> Self {
        self.factors.push(Factor::Const(q));
        self
    }

    /// `base^(a n + b)`
    pub fn power(mut self, base: impl Into<Rational>, a: i64, b: i64) -> Self {
        self.factors.push(Factor::Power {
            base: base.into(),
            exp: Affine::new(a, b),
        });
        self
    }

    /// `(slope n + offset)^exp`
    pub fn linear(mut self, slope: i64, offset: impl Into<Rational>, exp: i32) -> Self {
        self.factors.push(Factor::Linear {
            slope,
            offset: offset.into(),
            exp,
        });
        self
    }

    /// `C(a n + b, c n + d)`
    pub fn binomial(mut self, a: i64, b: i64, c: i64, d: i64) -> Self {
        self.factors.push(Factor::Binomial {
            top: Affine::new(a, b),
            bottom: Affine::new(c, d),
            exp: 1,
        });
        self
    }

    /// `1 / C(a n + b, c n + d)`
    pub fn over_binomial(mut self, a: i64, b: i64, c: i64, d: i64) -> Self {
        self.factors.push(Factor::Binomial {
            top: Affine::new(a, b),
            bottom: Affine::new(c, d),
            exp: -1,
        });
        self
    }

    /// `(n + shift)_len^exp`
    pub fn pochhammer(mut self, shift: impl Into<Rational>, len: u64, exp: i32) -> Self {
        self.factors.push(Factor::Pochhammer {
            shift: shift.into(),
            len,
            exp,
        });
        self
    }

    pub fn at(&self, n: i64) -> Result<Rational, TermError> {
        let mut acc = Rational::from(1);
        for f in &self.factors {
            acc *= f.value(n).ok_or(TermError::Undefined(n))?;
        }
        Ok(acc)
    }

    fn step_ratio(&self, n: i64) -> Option<Rational> {
        let mut acc = Rational::from(1);
        for f in &self.factors {
            acc *= f.step_ratio(n)?;
        }
        Some(acc)
    }

    /// Terms `t(start), t(start+1), ...` generated by exact ratios, falling
    /// back to direct evaluation where a ratio is undefined (e.g. after a
    /// zero term).
    pub fn iter_from(&self, start: i64) -> TermIter<'_> {
        TermIter {
            term: self,
            next_n: start,
            previous: None,
        }
    }
}

pub struct TermIter<'a> {
    term: &'a Term,
    next_n: i64,
    previous: Option<Rational>,
}

impl Iterator for TermIter<'_> {
    type Item = Result<(i64, Rational), TermError>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next_n;
        let value = match self.previous.take() {
            Some(prev) if prev != 0 => match self.term.step_ratio(n - 1) {
                Some(r) => Ok(prev * r),
                None => self.term.at(n),
            },
            _ => self.term.at(n),
        };
        self.next_n += 1;
        match value {
            Ok(v) => {
                self.previous = Some(v.clone());
                Some(Ok((n, v)))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn direct_values() {
        // 1 / ((2n+1)^2 4^n) C(4n,2n) / C(2n,n) at n = 1 is 1/12
        let t = Term::new()
            .linear(2, 1, -2)
            .power(ratio(1, 4), 1, 0)
            .binomial(4, 0, 2, 0)
            .over_binomial(2, 0, 1, 0);
        assert_eq!(t.at(1).unwrap(), ratio(1, 12));
        assert_eq!(t.at(0).unwrap(), 1);
    }

    #[test]
    fn iteration_matches_direct_evaluation() {
        let t = Term::new()
            .linear(1, 0, 1)
            .power(4, 1, 0)
            .linear(2, -1, -2)
            .linear(4, 3, -1)
            .binomial(2, 0, 1, 0)
            .over_binomial(4, 4, 2, 2)
            .pochhammer(ratio(1, 2), 3, -1)
            .pochhammer(1, 3, 1);
        for (k, item) in t.iter_from(0).take(150).enumerate() {
            let (n, v) = item.unwrap();
            assert_eq!(n, k as i64);
            assert_eq!(v, t.at(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn zero_terms_restart_directly() {
        // (n - 2) * 3^n vanishes at n = 2; iteration must recover afterwards
        let t = Term::new().linear(1, -2, 1).power(3, 1, 0);
        let values: Vec<Rational> = t.iter_from(0).take(6).map(|r| r.unwrap().1).collect();
        let direct: Vec<Rational> = (0..6).map(|n| t.at(n).unwrap()).collect();
        assert_eq!(values, direct);
        assert_eq!(values[2], 0);
    }

    #[test]
    fn undefined_terms_are_errors() {
        let t = Term::new().linear(1, -1, -1);
        assert_eq!(t.at(1), Err(TermError::Undefined(1)));
        let b = Term::new().over_binomial(1, -3, 1, 0);
        assert!(b.at(0).is_err());
    }

    #[test]
    fn binomial_ratio_matches_quotient() {
        let f = Factor::Binomial {
            top: Affine::new(4, 6),
            bottom: Affine::new(2, 3),
            exp: -1,
        };
        for n in 0..40 {
            let r = f.step_ratio(n).unwrap();
            assert_eq!(r, f.value(n + 1).unwrap() / f.value(n).unwrap());
        }
    }
}

//! Generating-function identities, checked pointwise at rational x.

use std::sync::Arc;

use crate::exact::{binomial, pow2, ratio, Rational};
use crate::numerics::{elementary, BigFloat, Elementary, NumericsError};

use super::{Affine, GfIdentity, ParamSpec, Term, XDomain};

type R = Result<BigFloat, NumericsError>;

fn f(func: Elementary, x: &BigFloat, digits: u32) -> R {
    elementary(func, x, digits)
}

/// `sqrt(1 - x^2)`
fn cosine_of_arcsin(x: &BigFloat, d: u32) -> R {
    let one_minus = BigFloat::with_val(x.prec(), 1u32 - BigFloat::with_val(x.prec(), x.square_ref()));
    f(Elementary::Sqrt, &one_minus, d)
}

fn interval(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool, exclude_zero: bool) -> XDomain {
    XDomain {
        lo,
        hi,
        lo_closed,
        hi_closed,
        exclude_zero,
    }
}

fn unit_interval(exclude_zero: bool) -> XDomain {
    interval(Rational::from(-1), Rational::from(1), true, true, exclude_zero)
}

struct Gf {
    id: &'static str,
    paper_ref: &'static str,
    start: i64,
    x_power: Affine,
    domain: XDomain,
    samples: [(i64, i64); 2],
}

impl Gf {
    fn build(
        self,
        coeff: impl Fn(&[i64]) -> Term + Send + Sync + 'static,
        rhs: impl Fn(&[i64], &BigFloat, u32) -> R + Send + Sync + 'static,
    ) -> GfIdentity {
        GfIdentity {
            id: self.id.to_string(),
            params: Vec::new(),
            sweep: vec![Vec::new()],
            start_index: self.start,
            coeff: Arc::new(coeff),
            x_power: Arc::new(move |_: &[i64]| self.x_power),
            lhs_scale: None,
            rhs: Arc::new(rhs),
            domain: self.domain,
            samples: self.samples.iter().map(|&(p, q)| ratio(p, q)).collect(),
            paper_ref: self.paper_ref.to_string(),
            erratum: None,
        }
    }
}

/// `C(2n,n) / 4^n`
fn central_over_four() -> Term {
    Term::new().binomial(2, 0, 1, 0).power(ratio(1, 4), 1, 0)
}

/// Catalan number `C_(2n-1) / 4^(2n-1)`
fn g1_coeff() -> Term {
    Term::new()
        .binomial(4, -2, 2, -1)
        .linear(2, 0, -1)
        .power(ratio(1, 4), 2, -1)
}

/// Catalan number `C_(2n) / 4^(2n)`
fn g2_coeff() -> Term {
    Term::new()
        .binomial(4, 0, 2, 0)
        .linear(2, 1, -1)
        .power(ratio(1, 16), 1, 0)
}

fn g1_rhs(x: &BigFloat, d: u32) -> R {
    let p = x.prec();
    let plus = f(Elementary::Sqrt, &BigFloat::with_val(p, x + 1u32), d)?;
    let minus = f(Elementary::Sqrt, &BigFloat::with_val(p, 1u32 - x), d)?;
    Ok((BigFloat::with_val(p, 2u32) - plus - minus) / x)
}

fn g1t_rhs(x: &BigFloat, d: u32) -> R {
    let y = f(Elementary::Arcsin, x, d)?;
    let s = f(Elementary::Sin, &BigFloat::with_val(y.prec(), &y / 4u32), d)?;
    let sin_y = f(Elementary::Sin, &y, d)?;
    Ok(s.square() * 4u32 / sin_y)
}

fn g2_rhs(x: &BigFloat, d: u32) -> R {
    let p = x.prec();
    let plus = f(Elementary::Sqrt, &BigFloat::with_val(p, x + 1u32), d)?;
    let minus = f(Elementary::Sqrt, &BigFloat::with_val(p, 1u32 - x), d)?;
    Ok((plus - minus) / x)
}

fn g2t_rhs(x: &BigFloat, d: u32) -> R {
    let y = f(Elementary::Arcsin, x, d)?;
    let c = f(Elementary::Cos, &BigFloat::with_val(y.prec(), &y / 2u32), d)?;
    Ok(c.recip())
}

pub(super) fn standard() -> Vec<GfIdentity> {
    let mut out = Vec::new();

    out.push(
        Gf {
            id: "gf-lemma-2.0.1",
            paper_ref: "Lemma 2.0.1, \"(8x⁴−8x²+3)sin⁻¹x + √(1−x²)(6x³−3x)\"",
            start: 1,
            x_power: Affine::new(2, 3),
            domain: unit_interval(false),
            samples: [(1, 2), (-3, 4)],
        }
        .build(
            |_| {
                central_over_four()
                    .linear(1, 0, 1)
                    .linear(2, -1, -2)
                    .linear(2, 1, -1)
                    .linear(2, 3, -1)
            },
            |_, x, d| {
                let p = x.prec();
                let x2 = BigFloat::with_val(p, x.square_ref());
                let poly = BigFloat::with_val(p, &x2 * &x2) * 8u32 - BigFloat::with_val(p, &x2 * 8u32) + 3u32;
                let cubic = BigFloat::with_val(p, &x2 * x) * 6u32 - BigFloat::with_val(p, x * 3u32);
                let asin = f(Elementary::Arcsin, x, d)?;
                Ok((poly * asin + cosine_of_arcsin(x, d)? * cubic) / 128u32)
            },
        ),
    );
    out.push(
        Gf {
            id: "gf-buhari",
            paper_ref: "Eq. (buhari), \"(√(1−x²) + 2x sin⁻¹x − sin⁻¹x/x)/8\"",
            start: 1,
            x_power: Affine::new(2, 0),
            domain: unit_interval(true),
            samples: [(1, 2), (3, 4)],
        }
        .build(
            |_| central_over_four().linear(1, 0, 1).linear(2, -1, -2).linear(2, 1, -1),
            |_, x, d| {
                let p = x.prec();
                let asin = f(Elementary::Arcsin, x, d)?;
                let two_x_asin = BigFloat::with_val(p, x * &asin) * 2u32;
                let over_x = BigFloat::with_val(p, &asin / x);
                Ok((cosine_of_arcsin(x, d)? + two_x_asin - over_x) / 8u32)
            },
        ),
    );
    out.push(
        Gf {
            id: "gf-lemma-2.0.2",
            paper_ref: "Lemma 2.0.2, \"((2x²+1)sin⁻¹x − x√(1−x²))/8\"",
            start: 1,
            x_power: Affine::new(2, 1),
            domain: unit_interval(true),
            samples: [(1, 3), (-3, 4)],
        }
        .build(
            |_| {
                central_over_four()
                    .constant(Rational::from(2))
                    .linear(1, 0, 2)
                    .linear(2, -1, -2)
                    .linear(2, 1, -1)
            },
            |_, x, d| {
                let p = x.prec();
                let lead = BigFloat::with_val(p, x.square_ref()) * 2u32 + 1u32;
                let asin = f(Elementary::Arcsin, x, d)?;
                let root = BigFloat::with_val(p, x * cosine_of_arcsin(x, d)?);
                Ok((lead * asin - root) / 8u32)
            },
        ),
    );
    out.push(GfIdentity {
        lhs_scale: Some(Arc::new(|x: &BigFloat| {
            let p = x.prec();
            BigFloat::with_val(p, x * BigFloat::with_val(p, x.sqrt_ref()))
        })),
        ..Gf {
            id: "gf-lemma-2.0.3",
            paper_ref: "Lemma 2.0.3, \"for all x ∈ [0,4)\"",
            start: 1,
            x_power: Affine::new(1, 0),
            domain: interval(Rational::from(0), Rational::from(4), true, false, false),
            samples: [(1, 1), (2, 1)],
        }
        .build(
            // x^(n + 3/2) = x^(3/2) x^n; the x^(3/2) is lhs_scale
            |_| Term::new().linear(1, 0, -1).linear(1, ratio(3, 2), -1).over_binomial(2, 0, 1, 0),
            |_, x, d| {
                let p = x.prec();
                let four_minus = BigFloat::with_val(p, 4u32 - x);
                let s = f(Elementary::Sqrt, &BigFloat::with_val(p, x / &four_minus), d)?;
                let atan = f(Elementary::Arctan, &s, d)?;
                let first = BigFloat::with_val(p, &s * BigFloat::with_val(p, x + 24u32));
                let second = atan * BigFloat::with_val(p, x + 8u32) * 3u32;
                let outer = f(Elementary::Sqrt, &four_minus, d)?;
                Ok(outer * (first - second) * 4u32 / 9u32)
            },
        )
    });
    out.push(
        Gf {
            id: "gf-lemma-2.0.4",
            paper_ref: "Lemma 2.0.4, \"1 − x²/6 − √(1−x²)/2 − arcsin x/(2x)\"",
            start: 1,
            x_power: Affine::new(2, 2),
            domain: unit_interval(true),
            samples: [(1, 2), (-2, 3)],
        }
        .build(
            |_| {
                central_over_four()
                    .constant(ratio(1, 2))
                    .linear(1, 1, -1)
                    .linear(2, 3, -1)
            },
            |_, x, d| {
                let p = x.prec();
                let x2 = BigFloat::with_val(p, x.square_ref());
                let asin = f(Elementary::Arcsin, x, d)?;
                let over = BigFloat::with_val(p, &asin / x) / 2u32;
                Ok(BigFloat::with_val(p, 1u32) - x2 / 6u32 - cosine_of_arcsin(x, d)? / 2u32 - over)
            },
        ),
    );
    out.push(
        Gf {
            id: "gf-lemma-2.0.6",
            paper_ref: "Lemma 2.0.6, \"(9√(1−x²) + (6x²+3)/x·arcsin x − 2x² − 12)/12\"",
            start: 1,
            x_power: Affine::new(2, 2),
            domain: unit_interval(true),
            samples: [(1, 2), (3, 4)],
        }
        .build(
            |_| {
                central_over_four()
                    .constant(ratio(1, 2))
                    .linear(1, 1, -1)
                    .linear(2, 1, -1)
                    .linear(2, 3, -1)
            },
            |_, x, d| {
                let p = x.prec();
                let x2 = BigFloat::with_val(p, x.square_ref());
                let asin = f(Elementary::Arcsin, x, d)?;
                let mid = BigFloat::with_val(p, &x2 * 6u32) + 3u32;
                let mid = mid / x * asin;
                Ok((cosine_of_arcsin(x, d)? * 9u32 + mid - x2 * 2u32 - 12u32) / 12u32)
            },
        ),
    );

    let g1 = Gf {
        id: "gf-G1",
        paper_ref: "Lemma for G₁, \"2/z − (√(1+z)+√(1−z))/z\"",
        start: 1,
        x_power: Affine::new(2, -1),
        domain: unit_interval(true),
        samples: [(1, 2), (-3, 5)],
    }
    .build(|_| g1_coeff(), |_, x, d| g1_rhs(x, d));
    out.push(GfIdentity {
        id: "gf-G1t".to_string(),
        paper_ref: "Lemma for G₁, trigonometric version, \"4sin²(y/4)/sin y\" at x = sin y".to_string(),
        rhs: Arc::new(|_: &[i64], x: &BigFloat, d: u32| g1t_rhs(x, d)),
        ..g1.clone()
    });
    out.push(g1);

    let g2 = Gf {
        id: "gf-G2",
        paper_ref: "Lemma for G₂, \"(√(1+z)−√(1−z))/z\"",
        start: 0,
        x_power: Affine::new(2, 0),
        domain: unit_interval(true),
        samples: [(1, 2), (3, 5)],
    }
    .build(|_| g2_coeff(), |_, x, d| g2_rhs(x, d));
    let g2t = GfIdentity {
        id: "gf-G2t".to_string(),
        paper_ref: "Lemma for G₂, trigonometric version, \"= 1/cos(y/2)\" at x = sin y".to_string(),
        rhs: Arc::new(|_: &[i64], x: &BigFloat, d: u32| g2t_rhs(x, d)),
        ..g2.clone()
    };
    let verbatim = "printed with the sum from n = 1; the right-hand side tends to 1 as z → 0, so the n = 0 term C_0 = 1 belongs to the sum";
    for (base, id) in [(&g2, "gf-G2-lemma-verbatim"), (&g2t, "gf-G2t-lemma-verbatim")] {
        out.push(GfIdentity {
            id: id.to_string(),
            start_index: 1,
            erratum: Some(verbatim.to_string()),
            ..base.clone()
        });
    }
    out.push(g2);
    out.push(g2t);

    out.push(GfIdentity {
        params: vec![ParamSpec::at_least("m", 0)],
        sweep: (0..=3).map(|m| vec![m]).collect(),
        x_power: Arc::new(|p: &[i64]| Affine::new(1, p[0] + 1)),
        ..Gf {
            id: "gf-boyadzhiev",
            paper_ref: "Boyadzhiev lemma, Eq. (section3), \"1 − (1−4x)^k√(1−4x)\"",
            start: 0,
            x_power: Affine::new(1, 0),
            domain: interval(ratio(-1, 4), ratio(1, 4), false, false, false),
            samples: [(1, 8), (-1, 10)],
        }
        .build(
            |p| Term::new().binomial(2, 0, 1, 0).linear(1, p[0] + 1, -1),
            |p, x, d| {
                let m = p[0];
                let prec = x.prec();
                let base = BigFloat::with_val(prec, 1u32 - BigFloat::with_val(prec, x * 4u32));
                let root = f(Elementary::Sqrt, &base, d)?;
                let mut acc = BigFloat::with_val(prec, 0);
                let mut power = root.clone();
                for k in 0..=m {
                    let c = Rational::from(binomial(m as u64, k)) / (2 * k + 1);
                    let c = BigFloat::with_val(prec, &c);
                    let bracket = BigFloat::with_val(prec, 1u32 - &power);
                    if k % 2 == 0 {
                        acc += c * bracket;
                    } else {
                        acc -= c * bracket;
                    }
                    power *= &base;
                }
                Ok(acc * BigFloat::with_val(prec, &pow2(-(2 * m + 1))))
            },
        )
    });

    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

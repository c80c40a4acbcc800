//! Series identities, each transcribed next to its citation.

use std::sync::Arc;

use crate::closed_forms::{
    closed_b, closed_f, closed_i, closed_k, closed_phi_odd, closed_wp, odd_central_reciprocal,
};
use crate::exact::{binomial, factorial, pochhammer, pow2, pow4, ratio, ConstName, ConstVec, Rational};
use crate::numerics::{eval_const, BigFloat};

use super::{CatalogError, ParamSpec, Rhs, SeriesIdentity, Term};

fn u(v: i64) -> u64 {
    u64::try_from(v).expect("parameter checked against its domain")
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `(a + b sqrt2) / d`
fn sqrt2_form(a: i64, b: i64, d: i64) -> ConstVec {
    ConstVec::from_terms([(ratio(a, d), ConstName::One), (ratio(b, d), ConstName::Sqrt2)])
}

/// `a + b pi^2`
fn pi_sq_form(a: Rational, b: Rational) -> ConstVec {
    ConstVec::from_terms([(a, ConstName::One), (b, ConstName::PiSq)])
}

/// `s (a + b sqrt2 + c ln2 + d ln(1+sqrt2))`
fn log_form(s: Rational, a: i64, b: i64, c: i64, d: i64) -> ConstVec {
    ConstVec::from_terms([
        (int(a), ConstName::One),
        (int(b), ConstName::Sqrt2),
        (int(c), ConstName::Ln2),
        (int(d), ConstName::Ln1pSqrt2),
    ])
    .scale(&s)
}

fn wp(q: i64) -> ConstVec {
    closed_wp(u(q))
}

fn one_param(name: &'static str, lo: i64, sweep: std::ops::RangeInclusive<i64>) -> (Vec<ParamSpec>, Vec<Vec<i64>>) {
    (vec![ParamSpec::at_least(name, lo)], sweep.map(|v| vec![v]).collect())
}

struct Entry {
    id: &'static str,
    params: Vec<ParamSpec>,
    sweep: Vec<Vec<i64>>,
    start: i64,
    decay: u32,
    paper_ref: &'static str,
}

impl Entry {
    fn new(id: &'static str, paper_ref: &'static str, start: i64, decay: u32) -> Self {
        Entry {
            id,
            params: Vec::new(),
            sweep: vec![Vec::new()],
            start,
            decay,
            paper_ref,
        }
    }

    fn param(mut self, name: &'static str, lo: i64, sweep: std::ops::RangeInclusive<i64>) -> Self {
        (self.params, self.sweep) = one_param(name, lo, sweep);
        self
    }

    fn exact(
        self,
        term: impl Fn(&[i64]) -> Term + Send + Sync + 'static,
        rhs: impl Fn(&[i64]) -> Result<ConstVec, CatalogError> + Send + Sync + 'static,
    ) -> SeriesIdentity {
        self.build(Arc::new(term), Rhs::Exact(Arc::new(rhs)))
    }

    fn build(self, term: super::TermFn, rhs: Rhs) -> SeriesIdentity {
        SeriesIdentity {
            id: self.id.to_string(),
            params: self.params,
            sweep: self.sweep,
            start_index: self.start,
            term,
            rhs,
            decay_class: self.decay,
            paper_ref: self.paper_ref.to_string(),
            erratum: None,
        }
    }
}

/// Printed special values of a parent series, one per listed `r`.
fn example(
    id: &'static str,
    paper_ref: &'static str,
    parent: &SeriesIdentity,
    values: Vec<(i64, ConstVec)>,
) -> SeriesIdentity {
    let rs: Vec<i64> = values.iter().map(|(r, _)| *r).collect();
    SeriesIdentity {
        id: id.to_string(),
        params: vec![ParamSpec::one_of("r", &rs)],
        sweep: rs.iter().map(|r| vec![*r]).collect(),
        rhs: Rhs::Exact(Arc::new(move |p: &[i64]| {
            Ok(values.iter().find(|(r, _)| *r == p[0]).expect("r checked against its domain").1.clone())
        })),
        paper_ref: paper_ref.to_string(),
        ..parent.clone()
    }
}

fn erratum(mut s: SeriesIdentity, note: &str) -> SeriesIdentity {
    s.erratum = Some(note.to_string());
    s
}

/// `sum_{k=0}^{top} (-1)^k / ((2k+1) 2^(shift-k)) C(top,k) B(k)`
fn b_sum(top: i64, shift: i64) -> ConstVec {
    let mut acc = ConstVec::zero();
    for k in 0..=top.max(-1) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = Rational::from(binomial(u(top), k)) * sign / (2 * k + 1) * pow2(k - shift);
        acc += closed_b(u(k)).scale(&c);
    }
    acc
}

// --- term shapes shared by several entries ---

/// `n 4^n / ((2n-1)^2 (4n+2r-1)) C(2n,n) / C(4n+2r-2, 2n+r-1)`
fn term_b_family(r: i64) -> Term {
    Term::new()
        .linear(1, 0, 1)
        .power(4, 1, 0)
        .linear(2, -1, -2)
        .linear(4, 2 * r - 1, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(4, 2 * r - 2, 2, r - 1)
}

/// `n 4^n / ((2n-1)^2 (2n+1) (4n+2r+1)) C(2n,n) / C(4n+2r, 2n+r)`
fn term_phi_family_sq(r: i64) -> Term {
    Term::new()
        .linear(1, 0, 1)
        .power(4, 1, 0)
        .linear(2, -1, -2)
        .linear(2, 1, -1)
        .linear(4, 2 * r + 1, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(4, 2 * r, 2, r)
}

/// `n 4^n / ((4n^2-1) (4n+2r+1)) C(2n,n) / C(4n+2r, 2n+r)`
fn term_phi_family(r: i64) -> Term {
    Term::new()
        .linear(1, 0, 1)
        .power(4, 1, 0)
        .linear(2, -1, -1)
        .linear(2, 1, -1)
        .linear(4, 2 * r + 1, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(4, 2 * r, 2, r)
}

/// `1 / ((2n+1)(2n+2r+1) 4^n) C(4n,2n) / C(2n+2r, n+r)`
fn term_kunle1(r: i64) -> Term {
    Term::new()
        .linear(2, 1, -1)
        .linear(2, 2 * r + 1, -1)
        .power(ratio(1, 4), 1, 0)
        .binomial(4, 0, 2, 0)
        .over_binomial(2, 2 * r, 1, r)
}

/// `1 / (n (2n+2r-1) 4^n) C(4n-2, 2n-1) / C(2n+2r-2, n+r-1)`
fn term_kunle2(r: i64) -> Term {
    Term::new()
        .linear(1, 0, -1)
        .linear(2, 2 * r - 1, -1)
        .power(ratio(1, 4), 1, 0)
        .binomial(4, -2, 2, -1)
        .over_binomial(2, 2 * r - 2, 1, r - 1)
}

/// `1 / ((n+m+1)(2n+2m+2r+1)) C(2n,n) / C(2n+2m+2r, n+m+r)`
fn term_two_param(m: i64, r: i64) -> Term {
    Term::new()
        .linear(1, m + 1, -1)
        .linear(2, 2 * m + 2 * r + 1, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(2, 2 * m + 2 * r, 1, m + r)
}

/// `n / ((2n+2r+3)(2n-1)^2(2n+1)(2n+3))`, shared by `term_wp_quartic` and its
/// Pochhammer rewrite
fn wp_quartic_weight(r: i64) -> Term {
    Term::new()
        .linear(1, 0, 1)
        .linear(2, 2 * r + 3, -1)
        .linear(2, -1, -2)
        .linear(2, 1, -1)
        .linear(2, 3, -1)
}

fn term_wp_quartic(r: i64) -> Term {
    wp_quartic_weight(r).binomial(2, 0, 1, 0).over_binomial(2, 2 * r + 2, 1, r + 1)
}

/// The same series with `C(2n,n)/C(2n+2r+2,n+r+1)` rewritten as
/// `(n+1)_{r+1} / (n+1/2)_{r+1}` (the `4^-(r+1)` moves to the right).
fn term_wp_quartic_pochhammer(r: i64) -> Term {
    let len = u(r + 1);
    wp_quartic_weight(r).pochhammer(1, len, 1).pochhammer(ratio(1, 2), len, -1)
}

/// `n^2 / ((2n+2r+1)(2n-1)^2(2n+1)) C(2n,n) / C(2n+2r, n+r)`
fn term_wp_square(r: i64) -> Term {
    Term::new()
        .linear(1, 0, 2)
        .linear(2, 2 * r + 1, -1)
        .linear(2, -1, -2)
        .linear(2, 1, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(2, 2 * r, 1, r)
}

/// `1 / ((2n+2r+3)(n+1)(2n+1)(2n+3)) C(2n,n) / C(2n+2r+2, n+r+1)`
fn term_wp_shifted(r: i64) -> Term {
    Term::new()
        .linear(2, 2 * r + 3, -1)
        .linear(1, 1, -1)
        .linear(2, 1, -1)
        .linear(2, 3, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(2, 2 * r + 2, 1, r + 1)
}

/// `1 / ((n+1)(2n+3)(2n+2r+3)) C(2n,n) / C(2n+2r+2, n+r+1)`
fn term_wp_linear(r: i64) -> Term {
    Term::new()
        .linear(1, 1, -1)
        .linear(2, 3, -1)
        .linear(2, 2 * r + 3, -1)
        .binomial(2, 0, 1, 0)
        .over_binomial(2, 2 * r + 2, 1, r + 1)
}

/// `1 / (4^n n (n+3/2)) C(4n+2r, 2n+r) / C(2n,n)`
fn term_sec6(r: i64) -> Term {
    Term::new()
        .power(ratio(1, 4), 1, 0)
        .linear(1, 0, -1)
        .linear(1, ratio(3, 2), -1)
        .binomial(4, 2 * r, 2, r)
        .over_binomial(2, 0, 1, 0)
}

/// `4^n / (2n-1)^2 C(2n,n) / C(4n,2n)`
fn term_bhandari1() -> Term {
    Term::new()
        .power(4, 1, 0)
        .linear(2, -1, -2)
        .binomial(2, 0, 1, 0)
        .over_binomial(4, 0, 2, 0)
}

// --- right-hand sides ---

fn rhs_b_family(r: i64) -> Result<ConstVec, CatalogError> {
    Ok(b_sum(r, 2 * r - 1).mul_sqrt2()?)
}

fn rhs_phi_family_sq(r: i64) -> Result<ConstVec, CatalogError> {
    let half = ratio(1, 2);
    let first = b_sum(r + 1, 2 * r + 1).mul_sqrt2()?.scale(&half);
    let phi = closed_phi_odd(u(r)).scale(&pow2(-(2 * r + 3)));
    // 1/2^(3/2) = sqrt2/4
    let last = b_sum(r - 1, 2 * r + 1).mul_sqrt2()?.scale(&ratio(1, 4));
    Ok(first + phi - last)
}

fn rhs_phi_family(r: i64) -> Result<ConstVec, CatalogError> {
    // 1/sqrt2 = sqrt2/2
    let first = b_sum(r - 1, 2 * r + 1).mul_sqrt2()?.scale(&ratio(1, 2));
    Ok(first - closed_phi_odd(u(r)).scale(&pow2(-(2 * r + 2))))
}

fn rhs_kunle1(r: i64) -> Result<ConstVec, CatalogError> {
    Ok(closed_k(u(r)).scale(&pow2(1 - 2 * r)) - ConstVec::rational(odd_central_reciprocal(u(r))))
}

fn rhs_kunle2(r: i64) -> Result<ConstVec, CatalogError> {
    Ok(ConstVec::rational(odd_central_reciprocal(u(r - 1))) - closed_i(u(r))?.scale(&pow2(2 - 2 * r)))
}

fn rhs_two_param(m: i64, r: i64) -> Rational {
    let lead = odd_central_reciprocal(u(m)) / 2 * odd_central_reciprocal(u(r - 1));
    let mut sum = Rational::new();
    for k in 0..=m {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let beta = Rational::from(factorial(u(k))) / pochhammer(&int(r), u(k + 1));
        sum += Rational::from(binomial(u(m), k)) * sign / (2 * k + 1) * beta;
    }
    lead - sum * pow4(-(m + r))
}

fn rhs_coro1(r: i64) -> Rational {
    odd_central_reciprocal(u(r - 1)) / 2 - pow4(-r) / r
}

/// Bracket of `rhs` for `thm-5.0.2`, without the `2^-(2r+2)` factor.
fn rhs_wp_quartic_unscaled(r: i64) -> ConstVec {
    let wps = wp(2 * r + 4).scale(&int(8)) - wp(2 * r + 2).scale(&int(8)) + wp(2 * r).scale(&int(3));
    wps.scale(&ratio(1, 128)) + ConstVec::rational(ratio(6, 128 * (4 + 2 * r)) - ratio(3, 128 * (2 + 2 * r)))
}

fn rhs_wp_square(r: i64) -> ConstVec {
    let inner = (wp(2 * r + 2).scale(&int(2)) + wp(2 * r)).scale(&ratio(1, 8))
        - ConstVec::rational(ratio(1, 16 * (r + 1)));
    inner.scale(&pow2(-(2 * r + 1)))
}

fn rhs_wp_shifted(r: i64) -> ConstVec {
    let inner = ConstVec::rational(ratio(3, 8 * (r + 1)))
        + (wp(2 * r + 2).scale(&int(4)) + wp(2 * r).scale(&int(2))).scale(&ratio(1, 8));
    inner.scale(&pow2(-(2 * r + 1)))
        - ConstVec::rational(odd_central_reciprocal(u(r + 1)) / 3 + odd_central_reciprocal(u(r)) / 2)
}

fn rhs_wp_linear(r: i64) -> ConstVec {
    // C(2r,r) / (2 4^(r+1)) (pi^2/2 + sum_{k=1}^r 4^k / (k^2 C(2k,k)))
    let mut bracket = ConstVec::term(ratio(1, 2), ConstName::PiSq);
    for k in 1..=r {
        bracket += ConstVec::rational(pow4(k) / Rational::from(binomial(u(2 * k), k)) / (k * k));
    }
    let series_part = bracket.scale(&(Rational::from(binomial(u(2 * r), r)) * pow4(-(r + 1)) / 2));
    let inner = ConstVec::rational(ratio(1, 4 * (r + 1))) + series_part;
    ConstVec::rational(odd_central_reciprocal(u(r)) / 2 - odd_central_reciprocal(u(r + 1)) / 3)
        - inner.scale(&pow2(-(2 * r + 1)))
}

fn rhs_sec6(r: i64) -> Result<ConstVec, CatalogError> {
    let c = |n: i64, k: i64| Rational::from(binomial(u(n), k));
    let rational = c(2 * r, r) * ratio(4, 9) + c(2 * r - 4, r - 2) * ratio(128, 3);
    let f = closed_f(u(r - 1)) + closed_f(u(r - 3)).scale(&int(2));
    let scaled = f.scale(&(pow4(r + 1) / 3)).div_pi()?;
    Ok(ConstVec::rational(rational) - scaled)
}

pub(super) fn standard() -> Vec<SeriesIdentity> {
    let mut out = Vec::new();

    // -- introduction --
    let bhandari1 = Entry::new("intro-bhandari-1", "Introduction, \"= 4(√2−1)\"", 0, 2)
        .exact(|_| term_bhandari1(), |_| Ok(sqrt2_form(-4, 4, 1)));
    out.push(erratum(
        bhandari1.clone(),
        "printed with n ≥ 0, but the n = 0 term equals 1 and the stated value is the sum over n ≥ 1",
    ));
    out.push(SeriesIdentity {
        id: "intro-bhandari-1-from-1".to_string(),
        start_index: 1,
        ..bhandari1
    });
    out.push(
        Entry::new("intro-bhandari-2", "Introduction, \"= (5√2−4)/9\"", 1, 2).exact(
            |_| {
                Term::new()
                    .linear(1, 0, 1)
                    .power(4, 1, 0)
                    .linear(2, -1, -2)
                    .linear(4, 1, -1)
                    .binomial(2, 0, 1, 0)
                    .over_binomial(4, 0, 2, 0)
            },
            |_| Ok(sqrt2_form(-4, 5, 9)),
        ),
    );
    out.push(Entry::new("intro-bhandari-3", "Introduction, \"= 8√2/(3π)\"", 0, 2).build(
        Arc::new(|_: &[i64]| {
            Term::new()
                .linear(1, 1, -1)
                .power(ratio(1, 64), 1, 0)
                .binomial(2, 0, 1, 0)
                .binomial(4, 0, 2, 0)
        }),
        Rhs::Numeric(Arc::new(|_: &[i64], digits: u32| {
            let root2 = eval_const(ConstName::Sqrt2, digits);
            let pi = eval_const(ConstName::Pi, digits);
            BigFloat::with_val(root2.prec(), root2 * 8u32) / (pi * 3u32)
        })),
    ));
    out.push(
        Entry::new("intro-showcase-1", "Introduction, \"= (27√2−26)/420\"", 1, 2)
            .exact(|_| term_kunle2(2), |_| Ok(sqrt2_form(-26, 27, 420))),
    );
    out.push(erratum(
        Entry::new("intro-showcase-2", "Introduction, \"= (16+5π²)/1024\"", 1, 2)
            .exact(|_| term_wp_square(1), |_| Ok(pi_sq_form(ratio(16, 1024), ratio(5, 1024)))),
        "denominator misprinted; the same series is (16+5π²)/2048 in thm-5.0.3-example",
    ));
    out.push(
        Entry::new("intro-showcase-3", "Introduction, \"= 5π²/1024 − 137/2880\"", 1, 4)
            .exact(|_| term_wp_shifted(1), |_| Ok(pi_sq_form(ratio(-137, 2880), ratio(5, 1024)))),
    );

    // -- B(k) and phi(2k+1) families --
    out.push(
        Entry::new("thm-2.1.4", "Theorem 2.1.4, \"√2 Σ (−1)^k/((2k+1)2^{2r−k−1}) C(r,k)𝓑(k)\"", 1, 2)
            .param("r", 1, 1..=4)
            .exact(|p| term_b_family(p[0]), |p| rhs_b_family(p[0])),
    );
    let t215 = Entry::new("thm-2.1.5", "Theorem 2.1.5, \"+ φ(2r+1)/2^{2r+3}\"", 1, 3)
        .param("r", 1, 1..=4)
        .exact(|p| term_phi_family_sq(p[0]), |p| rhs_phi_family_sq(p[0]));
    out.push(example(
        "thm-2.1.5-example",
        "Example after Theorem 2.1.5, \"= (2+2√2)/225\", \"= (137√2−88)/22050\"",
        &t215,
        vec![(1, sqrt2_form(2, 2, 225)), (2, sqrt2_form(-88, 137, 22050))],
    ));
    out.push(t215);
    let t216 = Entry::new("thm-2.1.6", "Theorem 2.1.6, \"− φ(2r+1)/2^{2r+2}\"", 1, 2)
        .param("r", 1, 1..=4)
        .exact(|p| term_phi_family(p[0]), |p| rhs_phi_family(p[0]));
    out.push(example(
        "thm-2.1.6-example",
        "Example after Theorem 2.1.6, \"= (7√2−8)/60\", \"= (71√2−64)/5040\"",
        &t216,
        vec![(1, sqrt2_form(-8, 7, 60)), (2, sqrt2_form(-64, 71, 5040))],
    ));
    out.push(t216);

    // -- K(r) and I(r) families --
    let kunle1 = Entry::new("thm-kunle1", "Eq. (kunle1), \"K(r)/2^{2r−1} − 1/((2r+1)C(2r,r))\"", 1, 2)
        .param("r", 0, 0..=4)
        .exact(|p| term_kunle1(p[0]), |p| rhs_kunle1(p[0]));
    out.push(example(
        "thm-kunle1-corollary",
        "Corollary to Eq. (kunle1), r = 0..3, \"= 3 − 2√2\"",
        &kunle1,
        vec![
            (0, sqrt2_form(3, -2, 1)),
            (1, sqrt2_form(11, -7, 30)),
            (2, sqrt2_form(172, -107, 2520)),
            (3, sqrt2_form(6808, -4175, 480480)),
        ],
    ));
    out.push(kunle1);
    let kunle2 = Entry::new(
        "thm-kunle2",
        "Eq. (kunle2), \"1/((2r−1)C(2r−2,r−1)) − I(r)/2^{2r−2}\"",
        1,
        2,
    )
    .param("r", 1, 1..=5)
    .exact(|p| term_kunle2(p[0]), |p| rhs_kunle2(p[0]));
    out.push(example(
        "thm-kunle2-corollary",
        "Corollary to Eq. (kunle2), r = 1..3, \"= (√2−1)/3\"",
        &kunle2,
        vec![
            (1, sqrt2_form(-1, 1, 3)),
            (2, sqrt2_form(-26, 27, 420)),
            (3, sqrt2_form(-712, 755, 55440)),
        ],
    ));
    out.push(kunle2);

    // -- two-parameter family and its corollary --
    out.push(SeriesIdentity {
        params: vec![ParamSpec::at_least("m", 0), ParamSpec::at_least("r", 1)],
        sweep: (0..=2).flat_map(|m| (1..=3).map(move |r| vec![m, r])).collect(),
        ..Entry::new(
            "thm-5.0.1",
            "Theorem 5.0.1, \"1/(2(2m+1)C(2m,m)) · 1/((2r−1)C(2r−2,r−1))\"",
            0,
            2,
        )
        .exact(|p| term_two_param(p[0], p[1]), |p| Ok(ConstVec::rational(rhs_two_param(p[0], p[1]))))
    });
    out.push(
        Entry::new("coro1", "Corollary (coro1), \"1/(2(2r−1)C(2r−2,r−1)) − 1/(2^{2r}r)\"", 0, 2)
            .param("r", 1, 1..=4)
            .exact(|p| term_two_param(0, p[0]), |p| Ok(ConstVec::rational(rhs_coro1(p[0])))),
    );

    // -- wp(q) families --
    let t502 = Entry::new("thm-5.0.2", "Theorem 5.0.2, \"(8℘(2r+4)−8℘(2r+2)+3℘(2r))/128\"", 1, 4)
        .param("r", 0, 0..=4)
        .exact(|p| term_wp_quartic(p[0]), |p| Ok(rhs_wp_quartic_unscaled(p[0]).scale(&pow2(-(2 * p[0] + 2)))));
    out.push(example(
        "thm-5.0.2-example",
        "Example after Theorem 5.0.2, \"= π²/2048\", \"= (64+9π²)/147456\"",
        &t502,
        vec![
            (0, pi_sq_form(int(0), ratio(1, 2048))),
            (1, pi_sq_form(ratio(64, 147456), ratio(9, 147456))),
        ],
    ));
    out.push(t502);
    let poch = Entry::new(
        "thm-5.0.2-pochhammer-form",
        "Remark, simplified form of Theorem 5.0.2, \"(n+1)_{r+1}/(n+1/2)_{r+1}\"",
        1,
        4,
    )
    .param("r", 0, 0..=4)
    .exact(|p| term_wp_quartic_pochhammer(p[0]), |p| Ok(rhs_wp_quartic_unscaled(p[0])));
    out.push(example(
        "thm-5.0.2-pochhammer-form-example",
        "Remark, \"= π²/512\", \"= (9π²+64)/9216\"",
        &poch,
        vec![
            (0, pi_sq_form(int(0), ratio(1, 512))),
            (1, pi_sq_form(ratio(64, 9216), ratio(9, 9216))),
        ],
    ));
    out.push(poch);
    let t503 = Entry::new("thm-5.0.3", "Theorem 5.0.3, \"(2℘(2r+2)+℘(2r))/8 − 1/(16(r+1))\"", 1, 2)
        .param("r", 0, 0..=4)
        .exact(|p| term_wp_square(p[0]), |p| Ok(rhs_wp_square(p[0])));
    out.push(example(
        "thm-5.0.3-example",
        "Example after Theorem 5.0.3, \"= (16+5π²)/2048\", \"= (40+9π²)/18432\"",
        &t503,
        vec![
            (1, pi_sq_form(ratio(16, 2048), ratio(5, 2048))),
            (2, pi_sq_form(ratio(40, 18432), ratio(9, 18432))),
        ],
    ));
    out.push(t503);
    let t504 = Entry::new("thm-5.0.4", "Theorem 5.0.4, \"3/(8(r+1)) + (4℘(2r+2)+2℘(2r))/8\"", 1, 4)
        .param("r", 0, 0..=4)
        .exact(|p| term_wp_shifted(p[0]), |p| Ok(rhs_wp_shifted(p[0])));
    out.push(example(
        "thm-5.0.4-example",
        "Example after Theorem 5.0.4, \"= (9π²−88)/288\", \"= 5π²/1024 − 137/2880\"",
        &t504,
        vec![
            (0, pi_sq_form(ratio(-88, 288), ratio(9, 288))),
            (1, pi_sq_form(ratio(-137, 2880), ratio(5, 1024))),
        ],
    ));
    out.push(t504);
    let t505 = Entry::new("thm-5.0.5", "Theorem 5.0.5, \"1/(2(2r+1)C(2r,r)) − 1/(3(2r+3)C(2r+2,r+1))\"", 1, 3)
        .param("r", 0, 0..=4)
        .exact(|p| term_wp_linear(p[0]), |p| Ok(rhs_wp_linear(p[0])));
    out.push(example(
        "thm-5.0.5-example",
        "Example after Theorem 5.0.5, \"= (92−9π²)/288\", \"= 59/1440 − π²/256\"",
        &t505,
        vec![
            (0, pi_sq_form(ratio(92, 288), ratio(-9, 288))),
            (1, pi_sq_form(ratio(59, 1440), ratio(-1, 256))),
        ],
    ));
    out.push(t505);

    // -- F(r) family --
    let sec6 = Entry::new(
        "thm-sec6",
        "Final theorem, \"4/9 C(2r,r) + 128/3 C(2r−4,r−2) − 4^{r+1}/(3π) 𝓕(r−1) − 2·4^{r+1}/(3π) 𝓕(r−3)\"",
        1,
        2,
    )
    .param("r", 3, 3..=6)
    .exact(|p| term_sec6(p[0]), |p| rhs_sec6(p[0]));
    out.push(example(
        "thm-sec6-example",
        "Example for Eq. (bounty), r = 3, 4, 5, \"209−110√2+102 ln(2)\"",
        &sec6,
        vec![
            (3, log_form(ratio(8, 9), 209, -110, 102, -102)),
            (4, log_form(ratio(2, 9), 2407, -1396, -444, 444)),
            (5, log_form(ratio(4, 15), 4537, -1948, 780, -780)),
        ],
    ));
    out.push(sec6);

    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

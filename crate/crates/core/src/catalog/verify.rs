//! Verification engine: exact terms, accelerated summation, and comparison
//! against the closed form.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::exact::Rational;
use crate::numerics::{
    bits_for_digits, eval_constvec, tail_fit, ten_pow_neg, to_decimal_string, wynn_epsilon, BigFloat,
};

use super::{resolve, Catalog, CatalogError, Params, Rhs};

/// Field names of the serialized report, in output order.
pub const REPORT_FIELDS: [&str; 11] = [
    "id",
    "params",
    "method",
    "estimate",
    "reference",
    "abs_discrepancy",
    "terms_used",
    "digits",
    "verdict",
    "offset_note",
    "paper_ref",
];

/// Terms fed to the power-law tail fit.
const TAIL_WINDOW: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    EpsilonAcceleration,
    TailCorrected,
    Exact,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::EpsilonAcceleration => "epsilon-acceleration",
            Method::TailCorrected => "tail-corrected",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    /// Parameter values as text; generating-function reports include `x`.
    pub params: BTreeMap<String, String>,
    pub method: Method,
    pub estimate: BigFloat,
    pub reference: BigFloat,
    pub abs_discrepancy: BigFloat,
    pub terms_used: u64,
    pub digits: u32,
    pub verdict: Verdict,
    /// The discrepancy equals the first summed term, or the term just before
    /// it, to within the tolerance: the stated start index is probably off
    /// by one.
    pub offset_note: bool,
    pub paper_ref: String,
    pub tolerance: BigFloat,
    /// Set when the internal error estimate (acceleration or truncation
    /// tail) exceeds the tolerance.
    pub non_convergence: Option<String>,
    /// Set when the verification could not run at all.
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `name=value` pairs joined by `;`.
    pub fn params_text(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }

    fn number(&self, x: &BigFloat) -> String {
        to_decimal_string(x, self.digits)
    }

    /// One flat row in `REPORT_FIELDS` order.
    pub fn record(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.params_text(),
            self.method.to_string(),
            self.number(&self.estimate),
            self.number(&self.reference),
            self.number(&self.abs_discrepancy),
            self.terms_used.to_string(),
            self.digits.to_string(),
            self.verdict.to_string(),
            self.offset_note.to_string(),
            self.paper_ref.clone(),
        ]
    }

    fn failed(id: &str, params: BTreeMap<String, String>, method: Method, digits: u32, paper_ref: &str, err: &CatalogError) -> Self {
        let nan = BigFloat::with_val(64, f64::NAN);
        VerificationReport {
            id: id.to_string(),
            params,
            method,
            estimate: nan.clone(),
            reference: nan.clone(),
            abs_discrepancy: nan.clone(),
            terms_used: 0,
            digits,
            verdict: Verdict::Fail,
            offset_note: false,
            paper_ref: paper_ref.to_string(),
            tolerance: nan,
            non_convergence: None,
            error: Some(err.to_string()),
        }
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerificationReport", REPORT_FIELDS.len())?;
        s.serialize_field("id", &self.id)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("method", self.method.as_str())?;
        s.serialize_field("estimate", &self.number(&self.estimate))?;
        s.serialize_field("reference", &self.number(&self.reference))?;
        s.serialize_field("abs_discrepancy", &self.number(&self.abs_discrepancy))?;
        s.serialize_field("terms_used", &self.terms_used)?;
        s.serialize_field("digits", &self.digits)?;
        s.serialize_field("verdict", self.verdict.as_str())?;
        s.serialize_field("offset_note", &self.offset_note)?;
        s.serialize_field("paper_ref", &self.paper_ref)?;
        s.end()
    }
}

/// Settings of a batch run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub tol: BigFloat,
    pub digits: u32,
    pub max_terms: u64,
    /// Truncation of generating-function sums.
    pub gf_terms: u64,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tol: ten_pow_neg(8, 64),
            digits: 60,
            max_terms: 20_000,
            gf_terms: 500,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |m: String| Err(CatalogError::InvalidConfig(m));
        if !(self.tol > 0) {
            return bad(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.digits < 20 {
            return bad(format!("digits must be at least 20, got {}", self.digits));
        }
        if self.max_terms < 100 {
            return bad(format!("max_terms must be at least 100, got {}", self.max_terms));
        }
        if self.gf_terms < 50 {
            return bad(format!("generating-function truncation must be at least 50, got {}", self.gf_terms));
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1".to_string());
        }
        Ok(())
    }
}

/// Partial-sum counts `N0 2^j`, `j = 0..=J`, with `N0` in `[6, 12)` and the
/// last one not exceeding `max_terms`.
pub fn checkpoints(max_terms: u64) -> Vec<u64> {
    let j = (max_terms / 6).max(1).ilog2();
    let n0 = max_terms >> j;
    (0..=j).map(|i| n0 << i).collect()
}

/// Working precision: enough that rounding in the epsilon table stays far
/// below the tolerance.
fn work_digits(digits: u32, tol: &BigFloat) -> u32 {
    let tol_digits = (-tol.to_f64().log10()).ceil().max(0.0) as u32;
    digits.max(50).max(2 * tol_digits + 20)
}

fn abs_diff(a: &BigFloat, b: &BigFloat) -> BigFloat {
    BigFloat::with_val(a.prec().max(b.prec()), a - b).abs()
}

/// Whether the discrepancy is one boundary term: the first summed term (the
/// sum should start one later) or the term just before it (one earlier).
fn boundary_match(discrepancy: &BigFloat, first: &BigFloat, before: Option<&BigFloat>, tol: &BigFloat) -> bool {
    let hit = |t: &BigFloat| !t.is_zero() && abs_diff(discrepancy, &BigFloat::with_val(t.prec(), t.abs_ref())) < *tol;
    hit(first) || before.is_some_and(hit)
}

fn param_text(names: &[&'static str], values: &[i64]) -> BTreeMap<String, String> {
    names.iter().zip(values).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

impl Catalog {
    /// Sums the exact terms of a series entry, accelerates the partial sums
    /// and compares with the right-hand side.
    pub fn verify_series(
        &self,
        id: &str,
        params: &Params,
        tol: &BigFloat,
        max_terms: u64,
        digits: u32,
    ) -> Result<VerificationReport, CatalogError> {
        let entry = self.series_entry(id)?;
        let values = resolve(id, &entry.params, params)?;
        if !(*tol > 0) {
            return Err(CatalogError::InvalidConfig("tolerance must be positive".into()));
        }
        if max_terms < 100 {
            return Err(CatalogError::InvalidConfig(format!("max_terms must be at least 100, got {max_terms}")));
        }
        let work = work_digits(digits, tol);
        let prec = bits_for_digits(work);
        let tol = BigFloat::with_val(prec, tol);
        let reference = match &entry.rhs {
            Rhs::Exact(f) => eval_constvec(&f(&values)?, work),
            Rhs::Numeric(f) => BigFloat::with_val(prec, f(&values, work)),
        };

        let marks = checkpoints(max_terms);
        let total = *marks.last().expect("at least one checkpoint");
        let term = (entry.term)(&values);
        let mut sum = BigFloat::with_val(prec, 0);
        let mut sums = Vec::with_capacity(marks.len());
        let mut window: Vec<BigFloat> = Vec::with_capacity(TAIL_WINDOW);
        let mut first = None;
        let mut last_n = entry.start_index;
        let mut next_mark = marks.iter().peekable();
        for (count, item) in (1u64..=total).zip(term.iter_from(entry.start_index)) {
            let (n, t) = item?;
            let t = BigFloat::with_val(prec, &t);
            sum += &t;
            if first.is_none() {
                first = Some(t.clone());
            }
            if count + TAIL_WINDOW as u64 > total {
                window.push(t);
            }
            if next_mark.peek() == Some(&&count) {
                sums.push(sum.clone());
                next_mark.next();
            }
            last_n = n;
        }

        let eps = wynn_epsilon(&sums).ok();
        let tail = u64::try_from(last_n).ok().and_then(|n| tail_fit(&window, n).ok());
        let (method, estimate, error_estimate) = match (eps, tail) {
            (Some(e), Some(t)) if e.error_estimate > tol && t.confidence_width < e.error_estimate => {
                (Method::TailCorrected, BigFloat::with_val(prec, &sum + &t.tail), t.confidence_width)
            }
            (Some(e), _) => (Method::EpsilonAcceleration, e.value, e.error_estimate),
            (None, Some(t)) => (Method::TailCorrected, BigFloat::with_val(prec, &sum + &t.tail), t.confidence_width),
            (None, None) => (Method::TailCorrected, sum.clone(), BigFloat::with_val(prec, f64::INFINITY)),
        };

        let abs_discrepancy = abs_diff(&estimate, &reference);
        let first = first.unwrap_or_else(|| BigFloat::with_val(prec, 0));
        let before = term.at(entry.start_index - 1).ok().map(|t| BigFloat::with_val(prec, &t));
        let offset_note = boundary_match(&abs_discrepancy, &first, before.as_ref(), &tol);
        let non_convergence = (error_estimate > tol).then(|| {
            format!(
                "{} error estimate {} exceeds tolerance after {total} terms",
                method,
                to_decimal_string(&error_estimate, 6)
            )
        });
        Ok(VerificationReport {
            id: id.to_string(),
            params: param_text(&entry.params.iter().map(|p| p.name).collect::<Vec<_>>(), &values),
            method,
            verdict: if abs_discrepancy <= tol { Verdict::Pass } else { Verdict::Fail },
            estimate,
            reference,
            abs_discrepancy,
            terms_used: total,
            digits,
            offset_note,
            paper_ref: entry.paper_ref.clone(),
            tolerance: tol,
            non_convergence,
            error: None,
        })
    }

    /// Compares the exact truncated power series at rational `x` with the
    /// analytic right-hand side.
    ///
    /// The tolerance is `10^-(digits-10)` relative to the reference (absolute
    /// below magnitude `10^-(digits-10)`).
    pub fn verify_gf(
        &self,
        id: &str,
        params: &Params,
        x: &Rational,
        truncation: u64,
        digits: u32,
    ) -> Result<VerificationReport, CatalogError> {
        let entry = self.gf_entry(id)?;
        let values = resolve(id, &entry.params, params)?;
        if !entry.domain.contains_strictly(x) {
            return Err(CatalogError::DomainError {
                id: id.to_string(),
                x: x.to_string(),
                domain: entry.domain.to_string(),
            });
        }
        if truncation < 50 {
            return Err(CatalogError::InvalidConfig(format!("truncation must be at least 50, got {truncation}")));
        }
        if digits < 20 {
            return Err(CatalogError::InvalidConfig(format!("digits must be at least 20, got {digits}")));
        }
        let work = digits + 10;
        let prec = bits_for_digits(work);

        let term = entry.lhs_term(&values, x);
        let mut sum = Rational::new();
        let (mut first, mut prev, mut last) = (None, Rational::new(), Rational::new());
        for item in term.iter_from(entry.start_index).take(truncation as usize) {
            let (_, t) = item?;
            sum += &t;
            if first.is_none() {
                first = Some(t.clone());
            }
            prev = std::mem::replace(&mut last, t);
        }

        let xf = BigFloat::with_val(prec, x);
        let scale = match &entry.lhs_scale {
            Some(f) => f(&xf),
            None => BigFloat::with_val(prec, 1),
        };
        let estimate = BigFloat::with_val(prec, &sum) * &scale;
        let reference = BigFloat::with_val(prec, (entry.rhs)(&values, &xf, work)?);
        let floor = ten_pow_neg(i64::from(digits) - 10, prec);
        let tol = BigFloat::with_val(prec, reference.abs_ref()).max(&floor) * &floor;
        let abs_discrepancy = abs_diff(&estimate, &reference);

        let first = BigFloat::with_val(prec, &first.unwrap_or_default()) * &scale;
        let before = term.at(entry.start_index - 1).ok().map(|t| BigFloat::with_val(prec, &t) * &scale);
        let offset_note = boundary_match(&abs_discrepancy, &first, before.as_ref(), &tol);

        // geometric bound on the remainder from the last ratio
        let tail_bound = if prev == 0 {
            BigFloat::with_val(prec, 0)
        } else {
            let rho = BigFloat::with_val(prec, &(Rational::from(&last / &prev))).abs();
            if rho < 1 {
                let last = BigFloat::with_val(prec, &last).abs() * scale.clone().abs();
                last * &rho * 2u32 / (1u32 - rho)
            } else {
                BigFloat::with_val(prec, f64::INFINITY)
            }
        };
        let non_convergence = (tail_bound > tol).then(|| {
            format!(
                "truncation tail bound {} exceeds tolerance after {truncation} terms",
                to_decimal_string(&tail_bound, 6)
            )
        });

        let mut shown = param_text(&entry.params.iter().map(|p| p.name).collect::<Vec<_>>(), &values);
        shown.insert("x".to_string(), x.to_string());
        Ok(VerificationReport {
            id: id.to_string(),
            params: shown,
            method: Method::Exact,
            verdict: if abs_discrepancy <= tol { Verdict::Pass } else { Verdict::Fail },
            estimate,
            reference,
            abs_discrepancy,
            terms_used: truncation,
            digits,
            offset_note,
            paper_ref: entry.paper_ref.clone(),
            tolerance: tol,
            non_convergence,
            error: None,
        })
    }

    /// Runs every entry that is not a recorded erratum over its default
    /// sweep. Failures to run become failed reports; the order is by id, then
    /// parameter values, then sample point, independent of `jobs`.
    pub fn verify_all(&self, config: &VerifyConfig) -> Result<Vec<VerificationReport>, CatalogError> {
        config.validate()?;
        enum Job<'a> {
            Series(&'a super::SeriesIdentity, &'a [i64]),
            Gf(&'a super::GfIdentity, &'a [i64], &'a Rational),
        }
        let mut jobs: Vec<(String, Vec<i64>, Option<Rational>, Job<'_>)> = Vec::new();
        for s in self.series.iter().filter(|s| s.erratum.is_none()) {
            for v in &s.sweep {
                jobs.push((s.id.clone(), v.clone(), None, Job::Series(s, v)));
            }
        }
        for g in self.gf.iter().filter(|g| g.erratum.is_none()) {
            for v in &g.sweep {
                for x in &g.samples {
                    jobs.push((g.id.clone(), v.clone(), Some(x.clone()), Job::Gf(g, v, x)));
                }
            }
        }
        jobs.sort_by(|a, b| (&a.0, &a.1, &a.2).cmp(&(&b.0, &b.1, &b.2)));

        let run = |job: &Job<'_>| -> VerificationReport {
            match job {
                Job::Series(s, v) => {
                    let names: Vec<&'static str> = s.params.iter().map(|p| p.name).collect();
                    let p: Params = names.iter().zip(v.iter()).map(|(k, x)| (k.to_string(), *x)).collect();
                    self.verify_series(&s.id, &p, &config.tol, config.max_terms, config.digits)
                        .unwrap_or_else(|e| {
                            VerificationReport::failed(&s.id, param_text(&names, v), Method::EpsilonAcceleration, config.digits, &s.paper_ref, &e)
                        })
                }
                Job::Gf(g, v, x) => {
                    let names: Vec<&'static str> = g.params.iter().map(|p| p.name).collect();
                    let p: Params = names.iter().zip(v.iter()).map(|(k, x)| (k.to_string(), *x)).collect();
                    self.verify_gf(&g.id, &p, x, config.gf_terms, config.digits).unwrap_or_else(|e| {
                        let mut shown = param_text(&names, v);
                        shown.insert("x".to_string(), x.to_string());
                        VerificationReport::failed(&g.id, shown, Method::Exact, config.digits, &g.paper_ref, &e)
                    })
                }
            }
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| CatalogError::InvalidConfig(e.to_string()))?;
        Ok(pool.install(|| jobs.par_iter().map(|(_, _, _, job)| run(job)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(100), vec![6, 12, 24, 48, 96]);
        let big = checkpoints(20_000);
        assert_eq!(big.len(), 12);
        assert_eq!(big[0], 9);
        assert_eq!(*big.last().unwrap(), 18_432);
        for m in [100u64, 101, 127, 500, 2000, 4999, 20_000, 1 << 20] {
            let c = checkpoints(m);
            assert!(c.len() >= 5, "{m}");
            assert!((6..12).contains(&c[0]), "{m}");
            assert!(*c.last().unwrap() <= m);
            assert!(c.windows(2).all(|w| w[1] == 2 * w[0]));
        }
    }

    #[test]
    fn working_precision_tracks_tolerance() {
        assert_eq!(work_digits(60, &ten_pow_neg(8, 64)), 60);
        assert_eq!(work_digits(20, &ten_pow_neg(8, 64)), 50);
        assert_eq!(work_digits(60, &ten_pow_neg(30, 128)), 80);
    }

    #[test]
    fn default_config_is_valid() {
        assert!(VerifyConfig::default().validate().is_ok());
        let bad = VerifyConfig {
            max_terms: 99,
            ..VerifyConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}

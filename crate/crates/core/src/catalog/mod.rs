//! Registry of series and generating-function identities, and the engine that
//! certifies them numerically.
//!
//! Every entry is transcribed in code next to its citation: series terms are
//! exact products of binomials, Pochhammer symbols and linear factors, and
//! right-hand sides are built from the exact closed forms.

mod gf;
mod series;
pub mod term;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::closed_forms::ClosedFormError;
use crate::exact::{ConstVec, OutOfBasis, Rational};
use crate::numerics::{BigFloat, NumericsError};

pub use term::{Affine, Factor, Term, TermError};
pub use verify::{Method, Verdict, VerificationReport, VerifyConfig, REPORT_FIELDS};

/// Named integer parameters, e.g. `{"r": 2}`.
pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{id}: parameter out of domain ({domain}), got {param} = {value}")]
    ParamOutOfDomain {
        id: String,
        param: String,
        domain: String,
        value: i64,
    },
    #[error("{id}: missing parameter `{param}`")]
    MissingParam { id: String, param: String },
    #[error("{id}: unexpected parameter `{param}`")]
    UnexpectedParam { id: String, param: String },
    #[error("{id}: x = {x} is not strictly inside {domain}")]
    DomainError { id: String, x: String, domain: String },
    #[error("{id} is a {actual} identity")]
    WrongKind { id: String, actual: &'static str },
    #[error("{0} has no exact right-hand side in the constant basis")]
    NoClosedForm(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    OutOfBasis(#[from] OutOfBasis),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    AtLeast(i64),
    OneOf(Vec<i64>),
}

impl Domain {
    pub fn contains(&self, v: i64) -> bool {
        match self {
            Domain::AtLeast(lo) => v >= *lo,
            Domain::OneOf(vs) => vs.contains(&v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: Domain,
}

impl ParamSpec {
    pub fn at_least(name: &'static str, lo: i64) -> Self {
        ParamSpec {
            name,
            domain: Domain::AtLeast(lo),
        }
    }

    pub fn one_of(name: &'static str, values: &[i64]) -> Self {
        ParamSpec {
            name,
            domain: Domain::OneOf(values.to_vec()),
        }
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.domain {
            Domain::AtLeast(lo) => write!(f, "{} ≥ {lo}", self.name),
            Domain::OneOf(vs) => {
                let vs: Vec<String> = vs.iter().map(i64::to_string).collect();
                write!(f, "{} ∈ {{{}}}", self.name, vs.join(", "))
            }
        }
    }
}

fn domain_text(params: &[ParamSpec]) -> String {
    if params.is_empty() {
        return "-".to_string();
    }
    params.iter().map(ParamSpec::to_string).collect::<Vec<_>>().join(", ")
}

pub type TermFn = Arc<dyn Fn(&[i64]) -> Term + Send + Sync>;
pub type ExactRhsFn = Arc<dyn Fn(&[i64]) -> Result<ConstVec, CatalogError> + Send + Sync>;
pub type NumericRhsFn = Arc<dyn Fn(&[i64], u32) -> BigFloat + Send + Sync>;

#[derive(Clone)]
pub enum Rhs {
    Exact(ExactRhsFn),
    /// Value outside the constant basis, evaluated at the given digits.
    Numeric(NumericRhsFn),
}

#[derive(Clone)]
pub struct SeriesIdentity {
    pub id: String,
    pub params: Vec<ParamSpec>,
    /// Default parameter tuples for the batch run, in `params` order.
    pub sweep: Vec<Vec<i64>>,
    pub start_index: i64,
    pub term: TermFn,
    pub rhs: Rhs,
    /// Declared decay exponent: terms behave like `c n^-decay_class`.
    pub decay_class: u32,
    pub paper_ref: String,
    /// Set on verbatim transcriptions known to be misprinted; such entries
    /// stay listable and verifiable but are left out of the default sweep.
    pub erratum: Option<String>,
}

impl fmt::Debug for SeriesIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesIdentity")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("start_index", &self.start_index)
            .finish_non_exhaustive()
    }
}

impl SeriesIdentity {
    /// The same identity with `delta` added to its right-hand side.
    pub fn perturbed(&self, delta: Rational) -> SeriesIdentity {
        let rhs = match &self.rhs {
            Rhs::Exact(f) => {
                let f = Arc::clone(f);
                Rhs::Exact(Arc::new(move |p: &[i64]| Ok(f(p)? + ConstVec::rational(delta.clone()))))
            }
            Rhs::Numeric(f) => {
                let f = Arc::clone(f);
                Rhs::Numeric(Arc::new(move |p: &[i64], d: u32| {
                    let v = f(p, d);
                    let prec = v.prec();
                    v + BigFloat::with_val(prec, &delta)
                }))
            }
        };
        SeriesIdentity { rhs, ..self.clone() }
    }
}

/// Open or closed real interval for the variable of a generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XDomain {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub exclude_zero: bool,
}

impl XDomain {
    /// Sample points must lie strictly inside the interval (and off zero when
    /// zero is excluded).
    pub fn contains_strictly(&self, x: &Rational) -> bool {
        *x > self.lo && *x < self.hi && !(self.exclude_zero && *x == 0)
    }
}

impl fmt::Display for XDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )?;
        if self.exclude_zero {
            f.write_str(", x ≠ 0")?;
        }
        Ok(())
    }
}

pub type GfRhsFn = Arc<dyn Fn(&[i64], &BigFloat, u32) -> Result<BigFloat, NumericsError> + Send + Sync>;
pub type XPowerFn = Arc<dyn Fn(&[i64]) -> Affine + Send + Sync>;
pub type ScaleFn = Arc<dyn Fn(&BigFloat) -> BigFloat + Send + Sync>;

#[derive(Clone)]
pub struct GfIdentity {
    pub id: String,
    pub params: Vec<ParamSpec>,
    pub sweep: Vec<Vec<i64>>,
    pub start_index: i64,
    /// Coefficient of the power of x, as an exact term in n.
    pub coeff: TermFn,
    /// The power of x multiplying the coefficient, `x^(a n + b)`.
    pub x_power: XPowerFn,
    /// Irrational factor applied to the exact truncated sum at the final
    /// conversion (e.g. `x^(3/2)`).
    pub lhs_scale: Option<ScaleFn>,
    pub rhs: GfRhsFn,
    pub domain: XDomain,
    pub samples: Vec<Rational>,
    pub paper_ref: String,
    pub erratum: Option<String>,
}

impl fmt::Debug for GfIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GfIdentity")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl GfIdentity {
    /// The exact term `coeff(n) x^(a n + b)` as a product of factors.
    pub fn lhs_term(&self, values: &[i64], x: &Rational) -> Term {
        let e = (self.x_power)(values);
        (self.coeff)(values).power(x.clone(), e.a, e.b)
    }
}

/// One row of `list`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub id: String,
    pub kind: &'static str,
    pub params: String,
    pub start_index: i64,
    pub decay_class: Option<u32>,
    pub x_domain: Option<String>,
    pub paper_ref: String,
    pub erratum: Option<String>,
}

#[derive(Clone, Default)]
pub struct Catalog {
    pub series: Vec<SeriesIdentity>,
    pub gf: Vec<GfIdentity>,
}

impl fmt::Debug for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Catalog")
            .field("series", &self.series.len())
            .field("gf", &self.gf.len())
            .finish()
    }
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog::default()
    }

    /// Every identity transcribed in this crate.
    pub fn standard() -> Self {
        Catalog {
            series: series::standard(),
            gf: gf::standard(),
        }
    }

    pub fn series_entry(&self, id: &str) -> Result<&SeriesIdentity, CatalogError> {
        self.series.iter().find(|s| s.id == id).ok_or_else(|| self.missing(id, "series"))
    }

    pub fn gf_entry(&self, id: &str) -> Result<&GfIdentity, CatalogError> {
        self.gf.iter().find(|g| g.id == id).ok_or_else(|| self.missing(id, "generating-function"))
    }

    fn missing(&self, id: &str, wanted: &str) -> CatalogError {
        let actual = if self.series.iter().any(|s| s.id == id) {
            Some("series")
        } else if self.gf.iter().any(|g| g.id == id) {
            Some("generating-function")
        } else {
            None
        };
        match actual {
            Some(actual) if actual != wanted => CatalogError::WrongKind { id: id.to_string(), actual },
            _ => CatalogError::UnknownIdentity(id.to_string()),
        }
    }

    pub fn is_series(&self, id: &str) -> bool {
        self.series.iter().any(|s| s.id == id)
    }

    pub fn is_gf(&self, id: &str) -> bool {
        self.gf.iter().any(|g| g.id == id)
    }

    /// Replaces the series entry with the same id, or appends it.
    pub fn insert_series(&mut self, entry: SeriesIdentity) {
        match self.series.iter_mut().find(|s| s.id == entry.id) {
            Some(slot) => *slot = entry,
            None => self.series.push(entry),
        }
    }

    pub fn list(&self) -> Vec<Descriptor> {
        let mut out: Vec<Descriptor> = self
            .series
            .iter()
            .map(|s| Descriptor {
                id: s.id.clone(),
                kind: "series",
                params: domain_text(&s.params),
                start_index: s.start_index,
                decay_class: Some(s.decay_class),
                x_domain: None,
                paper_ref: s.paper_ref.clone(),
                erratum: s.erratum.clone(),
            })
            .chain(self.gf.iter().map(|g| Descriptor {
                id: g.id.clone(),
                kind: "gf",
                params: domain_text(&g.params),
                start_index: g.start_index,
                decay_class: None,
                x_domain: Some(g.domain.to_string()),
                paper_ref: g.paper_ref.clone(),
                erratum: g.erratum.clone(),
            }))
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    /// Exact `t(n)` of a series entry.
    pub fn term_at(&self, id: &str, params: &Params, n: i64) -> Result<Rational, CatalogError> {
        let entry = self.series_entry(id)?;
        let values = resolve(id, &entry.params, params)?;
        if n < entry.start_index {
            return Err(CatalogError::ParamOutOfDomain {
                id: id.to_string(),
                param: "n".to_string(),
                domain: format!("n ≥ {}", entry.start_index),
                value: n,
            });
        }
        Ok((entry.term)(&values).at(n)?)
    }

    /// Exact right-hand side of a series entry.
    pub fn rhs_closed(&self, id: &str, params: &Params) -> Result<ConstVec, CatalogError> {
        let entry = self.series_entry(id)?;
        let values = resolve(id, &entry.params, params)?;
        match &entry.rhs {
            Rhs::Exact(f) => f(&values),
            Rhs::Numeric(_) => Err(CatalogError::NoClosedForm(id.to_string())),
        }
    }
}

/// Checks `params` against the declared parameters and returns the values
/// in declaration order.
pub fn resolve(id: &str, specs: &[ParamSpec], params: &Params) -> Result<Vec<i64>, CatalogError> {
    if let Some(extra) = params.keys().find(|k| !specs.iter().any(|s| s.name == k.as_str())) {
        return Err(CatalogError::UnexpectedParam {
            id: id.to_string(),
            param: extra.clone(),
        });
    }
    specs
        .iter()
        .map(|spec| {
            let v = *params.get(spec.name).ok_or_else(|| CatalogError::MissingParam {
                id: id.to_string(),
                param: spec.name.to_string(),
            })?;
            if !spec.domain.contains(v) {
                return Err(CatalogError::ParamOutOfDomain {
                    id: id.to_string(),
                    param: spec.name.to_string(),
                    domain: spec.to_string(),
                    value: v,
                });
            }
            Ok(v)
        })
        .collect()
}

/// `Params` from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, i64); N]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

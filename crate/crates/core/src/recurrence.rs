//! First-order linear recurrences `a_k z_k = b_k z_{k-1} + r_k` with rational
//! coefficients and constant-vector states.
//!
//! The closed form is
//! `z_n = (b_1..b_n)/(a_1..a_n) * (z_0 + sum_k r_k (a_1..a_{k-1})/(b_1..b_k))`;
//! [`ClosedFormSolver`] builds the prefix products incrementally.

use thiserror::Error;

use crate::exact::{ConstVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("coefficient vanishes at k = {0}")]
    ZeroCoefficient(u64),
}

type RationalFn = Box<dyn Fn(u64) -> Rational + Send + Sync>;
type VecFn = Box<dyn Fn(u64) -> ConstVec + Send + Sync>;

/// `a(k) z_k = b(k) z_{k-1} + r(k)` for `k >= 1`, starting from `z0`.
pub struct RecurrenceSpec {
    pub a: RationalFn,
    pub b: RationalFn,
    pub r: VecFn,
    pub z0: ConstVec,
}

impl RecurrenceSpec {
    pub fn new(
        a: impl Fn(u64) -> Rational + Send + Sync + 'static,
        b: impl Fn(u64) -> Rational + Send + Sync + 'static,
        r: impl Fn(u64) -> ConstVec + Send + Sync + 'static,
        z0: ConstVec,
    ) -> Self {
        RecurrenceSpec {
            a: Box::new(a),
            b: Box::new(b),
            r: Box::new(r),
            z0,
        }
    }
}

impl std::fmt::Debug for RecurrenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RecurrenceSpec").field("z0", &self.z0).finish_non_exhaustive()
    }
}

/// Walks the closed-form solution forward one index at a time.
///
/// State is the prefix product `P_k = prod b_j / a_j` and the bracketed sum;
/// each step costs a constant number of rational multiplications, tracked in
/// [`ClosedFormSolver::multiplications`].
pub struct ClosedFormSolver<'a> {
    spec: &'a RecurrenceSpec,
    k: u64,
    prefix: Rational,
    sum: ConstVec,
    multiplications: u64,
}

impl<'a> ClosedFormSolver<'a> {
    pub fn new(spec: &'a RecurrenceSpec) -> Self {
        ClosedFormSolver {
            spec,
            k: 0,
            prefix: Rational::from(1),
            sum: spec.z0.clone(),
            multiplications: 0,
        }
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    /// Rational multiplications and divisions performed so far.
    pub fn multiplications(&self) -> u64 {
        self.multiplications
    }

    /// Current `z_k`.
    pub fn value(&self) -> ConstVec {
        self.sum.scale(&self.prefix)
    }

    pub fn step(&mut self) -> Result<(), RecurrenceError> {
        let k = self.k + 1;
        let a = (self.spec.a)(k);
        let b = (self.spec.b)(k);
        if a == 0 || b == 0 {
            return Err(RecurrenceError::ZeroCoefficient(k));
        }
        // r_k / (a_k P_k) with P_k = P_{k-1} b_k / a_k, i.e. r_k / (b_k P_{k-1})
        let weight = Rational::from(1) / (b.clone() * &self.prefix);
        self.prefix *= b / a;
        self.multiplications += 3;
        let r = (self.spec.r)(k);
        if !r.is_zero() {
            self.sum += r.scale(&weight);
        }
        self.k = k;
        Ok(())
    }

    pub fn advance_to(&mut self, n: u64) -> Result<ConstVec, RecurrenceError> {
        assert!(n >= self.k, "solver cannot move backwards");
        while self.k < n {
            self.step()?;
        }
        Ok(self.value())
    }
}

pub fn solve_closed(spec: &RecurrenceSpec, n: u64) -> Result<ConstVec, RecurrenceError> {
    ClosedFormSolver::new(spec).advance_to(n)
}

/// Direct forward recursion `z_k = (b(k) z_{k-1} + r(k)) / a(k)`.
pub fn solve_iterative(spec: &RecurrenceSpec, n: u64) -> Result<ConstVec, RecurrenceError> {
    let mut z = spec.z0.clone();
    for k in 1..=n {
        let a = (spec.a)(k);
        if a == 0 {
            return Err(RecurrenceError::ZeroCoefficient(k));
        }
        let next = z.scale(&(spec.b)(k)) + (spec.r)(k);
        z = next.scale(&(Rational::from(1) / a));
    }
    Ok(z)
}

/// `x_{k+1} = a(k) x_k + b(k)` for `k >= 0`:
/// `x_n = a_0..a_{n-1} (x_0 + sum_{k<n} b_k / (a_0..a_k))`.
pub fn solve_affine_form(
    x0: &ConstVec,
    a: impl Fn(u64) -> Rational,
    b: impl Fn(u64) -> ConstVec,
    n: u64,
) -> Result<ConstVec, RecurrenceError> {
    let mut prefix = Rational::from(1);
    let mut sum = x0.clone();
    for k in 0..n {
        let ak = a(k);
        if ak == 0 {
            return Err(RecurrenceError::ZeroCoefficient(k));
        }
        prefix *= ak;
        let bk = b(k);
        if !bk.is_zero() {
            sum += bk.scale(&(Rational::from(1) / &prefix));
        }
    }
    Ok(sum.scale(&prefix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, ConstName};
    use crate::numerics::{agreement_digits, bits_for_digits, eval_constvec, tanh_sinh_integrate, Abscissa, BigFloat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rug::ops::Pow;
    use std::sync::Arc;

    fn sample_vec() -> ConstVec {
        ConstVec::from_terms([(ratio(3, 4), ConstName::Sqrt2), (ratio(-1, 9), ConstName::PiLn2)])
    }

    #[test]
    fn identity_recurrence() {
        let spec = RecurrenceSpec::new(|_| Rational::from(1), |_| Rational::from(1), |_| ConstVec::zero(), sample_vec());
        assert_eq!(solve_closed(&spec, 17).unwrap(), sample_vec());
        assert_eq!(solve_iterative(&spec, 5).unwrap(), sample_vec());
    }

    #[test]
    fn geometric_recurrence() {
        let q = ratio(-5, 3);
        let qq = q.clone();
        let spec = RecurrenceSpec::new(|_| Rational::from(1), move |_| qq.clone(), |_| ConstVec::zero(), ConstVec::rational(1));
        for n in 0..12u64 {
            let expected = crate::exact::rational_pow(&q, n as i64);
            assert_eq!(solve_closed(&spec, n).unwrap(), ConstVec::rational(expected));
        }
    }

    #[test]
    fn zero_coefficients_are_reported() {
        let spec = RecurrenceSpec::new(
            |k| Rational::from(k as i64 - 3),
            |k| Rational::from(k as i64 - 5),
            |_| ConstVec::rational(1),
            ConstVec::zero(),
        );
        assert_eq!(solve_closed(&spec, 10), Err(RecurrenceError::ZeroCoefficient(3)));
        assert_eq!(solve_iterative(&spec, 10), Err(RecurrenceError::ZeroCoefficient(3)));
        assert!(solve_closed(&spec, 2).is_ok());

        let b_zero = RecurrenceSpec::new(|_| Rational::from(1), |k| Rational::from(k as i64 - 2), |_| ConstVec::zero(), ConstVec::zero());
        assert_eq!(solve_closed(&b_zero, 4), Err(RecurrenceError::ZeroCoefficient(2)));
        assert_eq!(
            solve_affine_form(&ConstVec::zero(), |k| Rational::from(k as i64 - 1), |_| ConstVec::zero(), 3),
            Err(RecurrenceError::ZeroCoefficient(1))
        );
    }

    #[test]
    fn affine_examples() {
        let v = sample_vec();
        for n in 0..6 {
            assert_eq!(solve_affine_form(&v, |_| Rational::from(1), |_| ConstVec::zero(), n).unwrap(), v);
        }
        let x4 = solve_affine_form(&ConstVec::zero(), |_| Rational::from(2), |_| ConstVec::rational(1), 4).unwrap();
        assert_eq!(x4, ConstVec::rational(15));
    }

    // phi(2m) = int_0^1 t^(2m) sqrt(1+t^2) dt obeys
    // (m+1) phi(2m) = sqrt2 - (m - 1/2) phi(2m-2).
    #[test]
    fn even_moment_recurrence_matches_quadrature() {
        let spec = RecurrenceSpec::new(
            |k| Rational::from(k + 1),
            |k| -(Rational::from(k) - ratio(1, 2)),
            |_| ConstVec::constant(ConstName::Sqrt2),
            ConstVec::from_terms([(ratio(1, 2), ConstName::Sqrt2), (ratio(1, 2), ConstName::Ln1pSqrt2)]),
        );
        let z1 = solve_closed(&spec, 1).unwrap();
        assert_eq!(z1.to_string(), "3*sqrt2/8 - ln(1+sqrt2)/8");
        let prec = bits_for_digits(60);
        for m in 1..=3u32 {
            let z = solve_closed(&spec, u64::from(m)).unwrap();
            let oracle = tanh_sinh_integrate(
                |n: &Abscissa| {
                    let t = &n.x;
                    (BigFloat::with_val(prec, t * t) + 1u32).sqrt() * BigFloat::with_val(prec, t.pow(2 * m))
                },
                &BigFloat::with_val(prec, 0),
                &BigFloat::with_val(prec, 1),
                40,
            )
            .unwrap();
            assert!(agreement_digits(&eval_constvec(&z, 40), &oracle.value) >= 30.0);
        }
    }

    // x(q) = int_0^{pi/2} z sin^q z dz with x(q) = (q-1)/q x(q-2) + 1/q^2 and
    // x(0) = pi^2/8; on even q this is 2n x_n = (2n-1) x_{n-1} + 1/(2n).
    #[test]
    fn even_weighted_sine_moments() {
        let spec = RecurrenceSpec::new(
            |n| Rational::from(2 * n),
            |n| Rational::from(2 * n - 1),
            |n| ConstVec::rational(ratio(1, 2 * n as i64)),
            ConstVec::term(ratio(1, 8), ConstName::PiSq),
        );
        let expected = [
            "1/4 + pi^2/16",
            "1/4 + 3*pi^2/64",
            "17/72 + 5*pi^2/128",
            "2/9 + 35*pi^2/1024",
            "21/100 + 63*pi^2/2048",
        ];
        for (i, want) in expected.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(solve_closed(&spec, n).unwrap().to_string(), *want);
            assert_eq!(solve_iterative(&spec, n).unwrap().to_string(), *want);
        }
    }

    #[test]
    fn prefix_products_are_incremental() {
        let spec = RecurrenceSpec::new(
            |k| Rational::from(k * k + 1),
            |k| Rational::from(2 * k + 3),
            |k| ConstVec::term(ratio(1, k as i64), ConstName::Pi),
            ConstVec::rational(1),
        );
        let mut solver = ClosedFormSolver::new(&spec);
        solver.advance_to(40).unwrap();
        let before = solver.multiplications();
        solver.advance_to(41).unwrap();
        let per_step = solver.multiplications() - before;
        assert!(per_step <= 3);
        solver.advance_to(400).unwrap();
        assert_eq!(solver.multiplications(), 400 * per_step);
        assert_eq!(solver.value(), solve_iterative(&spec, 400).unwrap());
    }

    fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
        loop {
            let p: i64 = rng.gen_range(-9..=9);
            if p != 0 {
                return ratio(p, rng.gen_range(1..=7));
            }
        }
    }

    fn random_vec(rng: &mut ChaCha8Rng) -> ConstVec {
        let mut v = ConstVec::zero();
        for _ in 0..rng.gen_range(0..=3) {
            let name = ConstName::ALL[rng.gen_range(0..ConstName::ALL.len())];
            v.add_term(random_rational(rng), name);
        }
        v
    }

    fn random_spec(rng: &mut ChaCha8Rng, len: usize) -> RecurrenceSpec {
        let table = |rng: &mut ChaCha8Rng| Arc::new((0..=len).map(|_| random_rational(rng)).collect::<Vec<_>>());
        let a = table(rng);
        let b = table(rng);
        let r = Arc::new((0..=len).map(|_| random_vec(rng)).collect::<Vec<_>>());
        let z0 = random_vec(rng);
        RecurrenceSpec::new(
            move |k| a[k as usize].clone(),
            move |k| b[k as usize].clone(),
            move |k| r[k as usize].clone(),
            z0,
        )
    }

    #[test]
    fn closed_equals_iterative_on_random_specs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
        for _ in 0..200 {
            let n = rng.gen_range(0..=60u64);
            let spec = random_spec(&mut rng, n as usize);
            assert_eq!(solve_closed(&spec, n).unwrap(), solve_iterative(&spec, n).unwrap());
        }
    }

    #[test]
    fn affine_transcription_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let n = rng.gen_range(0..=40u64);
            let spec = random_spec(&mut rng, n as usize + 1);
            let affine = solve_affine_form(
                &spec.z0,
                |k| (spec.b)(k + 1) / (spec.a)(k + 1),
                |k| (spec.r)(k + 1).scale(&(Rational::from(1) / (spec.a)(k + 1))),
                n,
            )
            .unwrap();
            assert_eq!(affine, solve_closed(&spec, n).unwrap());
        }
    }
}

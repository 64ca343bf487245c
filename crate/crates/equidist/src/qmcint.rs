//! Quasi-Monte-Carlo integration: sample means of test functions against
//! sequences, compared to known integrals, with the star discrepancy of the
//! sample attached so Koksma's inequality |error| <= V(f)·D* can be checked.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::decimal::Decimal;
use crate::discrepancy::{check_interval, lowest_f64_at_least, star_discrepancy};
use crate::error::{Error, Result};
use crate::kahan::NeumaierSum;
use crate::polyseq::{polynomial_sequence, PolynomialSpec, Sequence};
use crate::primes::PrimeSchedule;

type Evaluator = Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;

/// A function on [0, 1) with a known integral. Evaluators may be complex
/// valued and may reject points outside their domain (singular functions).
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    evaluator: Evaluator,
    reference_integral: Complex64,
    smooth: bool,
    riemann: bool,
    variation: Option<f64>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("reference_integral", &self.reference_integral)
            .field("smooth", &self.smooth)
            .field("riemann", &self.riemann)
            .field("variation", &self.variation)
            .finish_non_exhaustive()
    }
}

/// C^∞ step: 0 for u <= 0, 1 for u >= 1, strictly increasing between, with
/// all derivatives vanishing at both ends. sigma(u) + sigma(1-u) = 1, which
/// makes the transition ramps of a smooth indicator integrate exactly like
/// the sharp edge they replace.
fn mollifier(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let phi = |t: f64| (-1.0 / t).exp();
        let p = phi(u);
        p / (p + phi(1.0 - u))
    }
}

impl TestFunction {
    /// Names are colon-separated tokens (CSV-safe, no commas or spaces).
    /// A smooth function is automatically Riemann-integrable.
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
        reference_integral: Complex64,
        smooth: bool,
        riemann: bool,
        variation: Option<f64>,
    ) -> Self {
        assert!(
            reference_integral.re.is_finite() && reference_integral.im.is_finite(),
            "reference integral must be finite"
        );
        TestFunction {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            reference_integral,
            smooth,
            riemann: riemann || smooth,
            variation,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(
            format!("const:{c}"),
            move |_| Ok(Complex64::new(c, 0.0)),
            Complex64::new(c, 0.0),
            true,
            true,
            Some(0.0),
        )
    }

    /// e^{2πikx}, the Weyl-criterion harmonic. Its integral vanishes for
    /// every k != 0; k = 0 is rejected (use [`Self::constant`]).
    pub fn exp_k(k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroFrequency);
        }
        Ok(Self::new(
            format!("exp:{k}"),
            move |x| {
                let theta = std::f64::consts::TAU * k as f64 * x;
                Ok(Complex64::new(theta.cos(), theta.sin()))
            },
            Complex64::new(0.0, 0.0),
            true,
            true,
            Some(std::f64::consts::TAU * k.unsigned_abs() as f64),
        ))
    }

    /// sin²(πx) with integral 1/2 and variation 2.
    pub fn sin2_pi() -> Self {
        Self::new(
            "sin2pi",
            |x| {
                let s = (std::f64::consts::PI * x).sin();
                Ok(Complex64::new(s * s, 0.0))
            },
            Complex64::new(0.5, 0.0),
            true,
            true,
            Some(2.0),
        )
    }

    /// x^m with integral 1/(m+1); monotone, so variation 1 (0 for m = 0).
    pub fn monomial(m: u32) -> Self {
        Self::new(
            format!("mono:{m}"),
            move |x| Ok(Complex64::new(x.powi(m as i32), 0.0)),
            Complex64::new(1.0 / (m as f64 + 1.0), 0.0),
            true,
            true,
            Some(if m == 0 { 0.0 } else { 1.0 }),
        )
    }

    fn indicator_with_name(name: String, a: BigRational, b: BigRational) -> Result<Self> {
        check_interval(&a, &b)?;
        // Same thresholds as interval counting, so the two agree point by
        // point on every f64 sample.
        let lo = lowest_f64_at_least(&a);
        let hi = lowest_f64_at_least(&b);
        let reference = (&b - &a).to_f64().unwrap_or(f64::NAN);
        Ok(Self::new(
            name,
            move |x| {
                Ok(Complex64::new(
                    if lo <= x && x < hi { 1.0 } else { 0.0 },
                    0.0,
                ))
            },
            Complex64::new(reference, 0.0),
            false,
            true,
            Some(2.0),
        ))
    }

    /// Indicator of the half-open interval [a, b) with exact rational
    /// endpoints; integral b − a.
    pub fn indicator(a: &BigRational, b: &BigRational) -> Result<Self> {
        Self::indicator_with_name(format!("indicator:{a}:{b}"), a.clone(), b.clone())
    }

    /// [`Self::indicator`] with endpoints taken at the exact binary values
    /// of the given f64s.
    pub fn indicator_f64(a: f64, b: f64) -> Result<Self> {
        match (BigRational::from_float(a), BigRational::from_float(b)) {
            (Some(ra), Some(rb)) => {
                Self::indicator_with_name(format!("indicator:{a}:{b}"), ra, rb)
            }
            _ => Err(Error::InvalidInterval {
                a: a.to_string(),
                b: b.to_string(),
            }),
        }
    }

    /// Smooth periodic surrogate for the indicator of [a, b]: exactly 1 on
    /// [a+eps, b−eps], exactly 0 outside (a−eps, b+eps) mod 1, C^∞ ramps on
    /// the transition bands. The antisymmetric ramps make the integral
    /// exactly b − a with no quadrature.
    pub fn smooth_indicator(a: f64, b: f64, eps: f64) -> Result<Self> {
        if !(0.0 <= a && a < b && b <= 1.0) {
            return Err(Error::InvalidInterval {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let fits_inside = a == 0.0 || (eps < a && eps < 1.0 - b);
        if !(eps > 0.0 && eps < (b - a) / 2.0 && fits_inside) {
            return Err(Error::BandOverflow { eps });
        }
        let profile = move |y: f64| -> f64 {
            if y <= a - eps || y >= b + eps {
                0.0
            } else if y < a + eps {
                mollifier((y - (a - eps)) / (2.0 * eps))
            } else if y <= b - eps {
                1.0
            } else {
                mollifier(((b + eps) - y) / (2.0 * eps))
            }
        };
        Ok(Self::new(
            format!("smoothind:{a}:{b}:{eps}"),
            move |x| Ok(Complex64::new(profile(x - 1.0) + profile(x) + profile(x + 1.0), 0.0)),
            Complex64::new(b - a, 0.0),
            true,
            true,
            Some(2.0),
        ))
    }

    /// g(x) = (1/2)·x^{−1/2}: integrable with ∫ = 1 but unbounded, so not
    /// Riemann-integrable and of unbounded variation. Undefined at 0 — the
    /// evaluator reports a domain error there.
    pub fn inv_sqrt() -> Self {
        Self::new(
            "invsqrt",
            |x| {
                if x <= 0.0 {
                    Err(Error::EvaluatorDomain {
                        name: "invsqrt".into(),
                        x,
                    })
                } else {
                    Ok(Complex64::new(0.5 / x.sqrt(), 0.0))
                }
            },
            Complex64::new(1.0, 0.0),
            false,
            false,
            None,
        )
    }

    /// [`Self::inv_sqrt`] under the convention g(0) := 0, a measure-zero
    /// modification that lets full grids (which contain 0) be integrated.
    /// Convergence against it is reported, not bounded by any variation.
    pub fn inv_sqrt_zeroed() -> Self {
        Self::new(
            "invsqrt0",
            |x| {
                if x <= 0.0 {
                    Ok(Complex64::new(0.0, 0.0))
                } else {
                    Ok(Complex64::new(0.5 / x.sqrt(), 0.0))
                }
            },
            Complex64::new(1.0, 0.0),
            false,
            false,
            None,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn smooth(&self) -> bool {
        self.smooth
    }

    pub fn riemann(&self) -> bool {
        self.riemann
    }

    /// Total-variation bound used in Koksma's inequality; absent for
    /// functions of unbounded variation.
    pub fn variation(&self) -> Option<f64> {
        self.variation
    }

    pub fn reference(&self) -> Complex64 {
        self.reference_integral
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        (self.evaluator)(x)
    }
}

/// The stock functions: constants, monomials, the Weyl harmonics, sin²,
/// sharp and smoothed indicators, and the integrable singular example.
pub fn registry() -> Vec<TestFunction> {
    let fifth = Decimal::parse("0.2").unwrap().to_rational();
    let half = Decimal::parse("0.5").unwrap().to_rational();
    vec![
        TestFunction::new(
            "one",
            |_| Ok(Complex64::new(1.0, 0.0)),
            Complex64::new(1.0, 0.0),
            true,
            true,
            Some(0.0),
        ),
        TestFunction::monomial(1),
        TestFunction::monomial(2),
        TestFunction::monomial(3),
        TestFunction::sin2_pi(),
        TestFunction::exp_k(1).unwrap(),
        TestFunction::exp_k(2).unwrap(),
        TestFunction::exp_k(3).unwrap(),
        TestFunction::indicator_with_name("indicator:0.2:0.5".into(), fifth, half).unwrap(),
        TestFunction::smooth_indicator(0.2, 0.5, 0.01).unwrap(),
        TestFunction::inv_sqrt(),
        TestFunction::inv_sqrt_zeroed(),
    ]
}

/// Resolve a registry-style name, parsing parameterized forms: `exp:K`,
/// `mono:M`, `const:C`, `indicator:A:B` (decimal endpoints, taken exactly),
/// `smoothind:A:B:EPS`.
pub fn lookup_function(name: &str) -> Result<TestFunction> {
    let unknown = || Error::UnknownFunction { name: name.into() };
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(unknown()) };
    match head {
        "one" => {
            arity(0)?;
            Ok(registry().into_iter().next().unwrap())
        }
        "sin2pi" => {
            arity(0)?;
            Ok(TestFunction::sin2_pi())
        }
        "invsqrt" => {
            arity(0)?;
            Ok(TestFunction::inv_sqrt())
        }
        "invsqrt0" => {
            arity(0)?;
            Ok(TestFunction::inv_sqrt_zeroed())
        }
        "const" => {
            arity(1)?;
            let c: f64 = args[0].parse().map_err(|_| unknown())?;
            if !c.is_finite() {
                return Err(unknown());
            }
            Ok(TestFunction::constant(c))
        }
        "exp" => {
            arity(1)?;
            TestFunction::exp_k(args[0].parse().map_err(|_| unknown())?)
        }
        "mono" => {
            arity(1)?;
            Ok(TestFunction::monomial(args[0].parse().map_err(|_| unknown())?))
        }
        "indicator" => {
            arity(2)?;
            let a = Decimal::parse(args[0])?.to_rational();
            let b = Decimal::parse(args[1])?.to_rational();
            TestFunction::indicator_with_name(name.into(), a, b)
        }
        "smoothind" => {
            arity(3)?;
            let a = Decimal::parse(args[0])?.to_f64();
            let b = Decimal::parse(args[1])?.to_f64();
            let eps: f64 = args[2].parse().map_err(|_| unknown())?;
            TestFunction::smooth_indicator(a, b, eps)
        }
        _ => Err(unknown()),
    }
}

/// Sample mean of one test function against one sequence.
#[derive(Clone, Debug)]
pub struct IntegrationReport {
    pub n: u64,
    pub sample_mean: Complex64,
    pub reference: Complex64,
    /// |sample_mean − reference|.
    pub abs_error: f64,
    /// Star discrepancy of the sample when the caller attached it.
    pub dstar_at_n: Option<f64>,
}

/// (1/N) Σ f(s_i) with compensated accumulation in both components.
pub fn integrate(seq: &Sequence, f: &TestFunction) -> Result<IntegrationReport> {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for i in 0..seq.len() {
        let y = f.eval(seq.value(i))?;
        re += y.re;
        im += y.im;
    }
    let n = seq.len() as f64;
    let sample_mean = Complex64::new(re.value() / n, im.value() / n);
    Ok(IntegrationReport {
        n: seq.len() as u64,
        sample_mean,
        reference: f.reference(),
        abs_error: (sample_mean - f.reference()).norm(),
        dstar_at_n: None,
    })
}

/// One schedule entry of an integration convergence table.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub q: u64,
    pub report: IntegrationReport,
}

/// Integrates `f` against the orbit of `p` for every modulus in the
/// schedule, attaching D* of each sample to its row.
pub fn convergence_table(
    p: &PolynomialSpec,
    schedule: &PrimeSchedule,
    f: &TestFunction,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(schedule.len());
    for &q in schedule.q_values() {
        let seq = Sequence::from(polynomial_sequence(p, q)?);
        let mut report = integrate(&seq, f)?;
        report.dstar_at_n = Some(star_discrepancy(&seq).dstar);
        rows.push(ConvergenceRow { q, report });
    }
    Ok(rows)
}

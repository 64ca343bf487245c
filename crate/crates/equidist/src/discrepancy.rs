//! Interval counts, empirical measures, star discrepancy, and the
//! Erdős–Turán bound tying Weyl-sum decay to discrepancy decay.
//!
//! Intervals are half-open `[a, b)` throughout. Counting is exact: endpoints
//! are rationals, grid sequences are counted by integer ceilings over the
//! common denominator, and real sequences are compared against the tightest
//! representable f64 thresholds, so no membership decision hinges on a
//! rounded difference.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::expsum::weyl_sum;
use crate::kahan::NeumaierSum;
use crate::polyseq::{polynomial_sequence, PolynomialSpec, Sequence};
use crate::primes::PrimeSchedule;

pub(crate) fn check_interval(a: &BigRational, b: &BigRational) -> Result<()> {
    if !a.is_negative() && a < b && *b <= BigRational::one() {
        Ok(())
    } else {
        Err(Error::InvalidInterval {
            a: a.to_string(),
            b: b.to_string(),
        })
    }
}

/// Smallest f64 that is >= the exact rational `x`. Real-sequence values are
/// f64, so `value >= threshold` decides the exact comparison `value >= x`,
/// and `value < threshold` decides `value < x`.
pub(crate) fn lowest_f64_at_least(x: &BigRational) -> f64 {
    let mut t = x.to_f64().unwrap_or(0.5);
    if !t.is_finite() {
        t = 0.5;
    }
    while BigRational::from_float(t).is_none_or(|r| r < *x) {
        t = t.next_up();
    }
    loop {
        let down = t.next_down();
        match BigRational::from_float(down) {
            Some(r) if r >= *x => t = down,
            _ => break,
        }
    }
    t
}

/// First grid numerator at or above x·q, i.e. the number of grid points j/q
/// with j/q < x. Endpoints live in [0, 1], so the cut lands in [0, q].
fn grid_cut(x: &BigRational, q: u64) -> u64 {
    let scaled = x * BigRational::from_integer(BigInt::from(q));
    scaled
        .ceil()
        .to_integer()
        .to_u64()
        .expect("interval endpoint validated into [0, 1]")
}

/// Exact fraction of sequence points lying in `[a, b)`.
pub fn interval_count(seq: &Sequence, a: &BigRational, b: &BigRational) -> Result<Ratio<u64>> {
    check_interval(a, b)?;
    let hits = match seq {
        Sequence::Grid(g) => {
            let q = g.denominator();
            let (lo, hi) = (grid_cut(a, q), grid_cut(b, q));
            g.numerators().iter().filter(|&&v| lo <= v && v < hi).count()
        }
        Sequence::Real(r) => {
            let (lo, hi) = (lowest_f64_at_least(a), lowest_f64_at_least(b));
            r.values().iter().filter(|&&x| lo <= x && x < hi).count()
        }
    };
    Ok(Ratio::new(hits as u64, seq.len() as u64))
}

/// [`interval_count`] with endpoints taken at the exact binary values of the
/// given f64s.
pub fn interval_count_f64(seq: &Sequence, a: f64, b: f64) -> Result<Ratio<u64>> {
    match (BigRational::from_float(a), BigRational::from_float(b)) {
        (Some(ra), Some(rb)) => interval_count(seq, &ra, &rb),
        _ => Err(Error::InvalidInterval {
            a: a.to_string(),
            b: b.to_string(),
        }),
    }
}

/// Finitely supported probability measure: the average of the point masses
/// sitting at the sequence values.
#[derive(Clone, Debug)]
pub struct EmpiricalMeasure {
    support: Vec<Ratio<u64>>,
    masses: Vec<Ratio<u64>>,
    source_size: u64,
}

impl EmpiricalMeasure {
    /// Distinct points, ascending.
    pub fn support(&self) -> &[Ratio<u64>] {
        &self.support
    }

    /// Mass per support point, aligned with [`Self::support`]. Each mass is
    /// a multiple of 1/N and the masses sum to exactly 1.
    pub fn masses(&self) -> &[Ratio<u64>] {
        &self.masses
    }

    /// Number of sequence points the measure averages over.
    pub fn source_size(&self) -> u64 {
        self.source_size
    }

    /// Mass at an arbitrary point; zero off the support.
    pub fn mass_at(&self, point: &Ratio<u64>) -> Ratio<u64> {
        match self.support.binary_search(point) {
            Ok(idx) => self.masses[idx],
            Err(_) => Ratio::new(0, 1),
        }
    }
}

/// Tallies a grid sequence into its empirical measure.
pub fn empirical_measure(seq: &crate::polyseq::GridSequence) -> EmpiricalMeasure {
    let q = seq.denominator();
    let n = seq.len() as u64;
    let mut sorted = seq.numerators().to_vec();
    sorted.sort_unstable();

    let mut support = Vec::new();
    let mut masses = Vec::new();
    let mut run = 0u64;
    for (idx, &v) in sorted.iter().enumerate() {
        run += 1;
        if idx + 1 == sorted.len() || sorted[idx + 1] != v {
            support.push(Ratio::new(v, q));
            masses.push(Ratio::new(run, n));
            run = 0;
        }
    }
    EmpiricalMeasure {
        support,
        masses,
        source_size: n,
    }
}

/// Discrepancy statistics of one sequence.
#[derive(Clone, Debug)]
pub struct DiscrepancyReport {
    pub n: u64,
    /// sup over t of |#{x_i < t}/N − t|, the star discrepancy.
    pub dstar: f64,
    /// sup over half-open [a, b) of |count/N − (b−a)|, the two-sided
    /// discrepancy.
    pub d: f64,
    /// An anchored interval [0, t) attaining the star statistic (up to the
    /// jump side at t).
    pub worst_interval: (f64, f64),
    /// Filled by the convergence study; plain reports leave it absent.
    pub et_bound: Option<f64>,
}

/// One pass over the sorted points. All four statistics come from the same
/// sweep; for grid sequences the comparisons run on integer numerators over
/// the common denominator N·q, so ties resolve exactly.
struct GridSweep {
    /// max_i (i·q − v_(i)·N); the overshoot side P of the two-sided D.
    plus: i128,
    /// max_i (v_(i)·N − (i−1)·q); the undershoot side M.
    minus: i128,
    /// max_i of both forms; the star numerator (always positive).
    star: i128,
    /// Common denominator N·q.
    denom: u128,
    /// Numerator of the sorted point achieving the star statistic.
    worst: u64,
}

fn grid_sweep(numerators: &[u64], q: u64) -> GridSweep {
    let mut v = numerators.to_vec();
    v.sort_unstable();
    let n = v.len() as i128;
    let q_i = q as i128;

    let (mut plus, mut minus, mut star) = (i128::MIN, i128::MIN, i128::MIN);
    let mut worst = v[0];
    for (idx, &num) in v.iter().enumerate() {
        let i = idx as i128 + 1;
        let p = i * q_i - num as i128 * n;
        let m = num as i128 * n - (i - 1) * q_i;
        plus = plus.max(p);
        minus = minus.max(m);
        if p.max(m) > star {
            star = p.max(m);
            worst = num;
        }
    }
    GridSweep {
        plus,
        minus,
        star,
        denom: v.len() as u128 * q as u128,
        worst,
    }
}

/// num/denom as f64, reduced first so results like 1/q round only once.
fn exact_over(num: u128, denom: u128) -> f64 {
    if num == 0 {
        return 0.0;
    }
    let g = num.gcd(&denom);
    (num / g) as f64 / (denom / g) as f64
}

/// Star and two-sided discrepancy via the sorted sweep, O(N log N).
///
/// D* = max_i max(i/N − x_(i), x_(i) − (i−1)/N) over the sorted points;
/// D = P + M splits the same sweep into its overshoot and undershoot parts.
/// Grid sequences are swept in exact integer arithmetic.
pub fn star_discrepancy(seq: &Sequence) -> DiscrepancyReport {
    match seq {
        Sequence::Grid(g) => {
            let s = grid_sweep(g.numerators(), g.denominator());
            let d_num = s.plus.max(0) as u128 + s.minus.max(0) as u128;
            DiscrepancyReport {
                n: g.len() as u64,
                dstar: exact_over(s.star as u128, s.denom),
                d: exact_over(d_num, s.denom),
                worst_interval: (0.0, s.worst as f64 / g.denominator() as f64),
                et_bound: None,
            }
        }
        Sequence::Real(r) => {
            let mut v = r.values().to_vec();
            v.sort_unstable_by(f64::total_cmp);
            let n = v.len() as f64;

            let (mut plus, mut minus, mut star) = (f64::MIN, f64::MIN, f64::MIN);
            let mut worst = v[0];
            for (idx, &x) in v.iter().enumerate() {
                let i = (idx + 1) as f64;
                let p = i / n - x;
                let m = x - (i - 1.0) / n;
                plus = plus.max(p);
                minus = minus.max(m);
                if p.max(m) > star {
                    star = p.max(m);
                    worst = x;
                }
            }
            DiscrepancyReport {
                n: v.len() as u64,
                dstar: star,
                d: plus.max(0.0) + minus.max(0.0),
                worst_interval: (0.0, worst),
                et_bound: None,
            }
        }
    }
}

/// Erdős–Turán: D <= 3·(1/(K+1) + Σ_{k=1..K} |S_k|/(N·k)), taking the
/// normalized magnitudes |S_k|/N for k = 1..=K in order. An empty slice
/// yields the vacuous bound 3.
pub fn erdos_turan_bound(normalized_magnitudes: &[f64]) -> f64 {
    let mut sum = NeumaierSum::new();
    for (idx, &mag) in normalized_magnitudes.iter().enumerate() {
        sum += mag / (idx + 1) as f64;
    }
    3.0 * (1.0 / (normalized_magnitudes.len() as f64 + 1.0) + sum.value())
}

/// Deviation of one interval's empirical mass from its length.
#[derive(Clone, Copy, Debug)]
pub struct IntervalDeviation {
    pub a: f64,
    pub b: f64,
    /// |count/N − (b−a)|, computed in exact rational arithmetic.
    pub deviation: f64,
}

/// One schedule entry of a convergence study.
#[derive(Clone, Debug)]
pub struct StudyRow {
    pub q: u64,
    pub n: u64,
    pub dstar: f64,
    pub d: f64,
    /// Erdős–Turán bound at K = ⌊√N⌋, clamped to the trivial bound 1.
    pub et_bound: f64,
    /// One entry per requested interval, in request order.
    pub deviations: Vec<IntervalDeviation>,
    /// The orbit collapsed to a single atom (constant polynomial).
    pub degenerate: bool,
}

/// Tabulates discrepancy decay for `p` across a prime schedule, with the
/// exact deviation of each requested interval.
pub fn weak_convergence_study(
    p: &PolynomialSpec,
    schedule: &PrimeSchedule,
    intervals: &[(BigRational, BigRational)],
) -> Result<Vec<StudyRow>> {
    for (a, b) in intervals {
        check_interval(a, b)?;
    }

    let mut rows = Vec::with_capacity(schedule.len());
    for &q in schedule.q_values() {
        let grid = polynomial_sequence(p, q)?;
        let degenerate = grid.numerators().windows(2).all(|w| w[0] == w[1]);
        let seq = Sequence::from(grid);
        let report = star_discrepancy(&seq);

        let n = seq.len() as u64;
        let mags = (1..=n.isqrt().min(q - 1))
            .map(|k| Ok(weyl_sum(&seq, k as i64)?.normalized_magnitude))
            .collect::<Result<Vec<f64>>>()?;
        let et_bound = erdos_turan_bound(&mags).min(1.0);

        let deviations = intervals
            .iter()
            .map(|(a, b)| {
                let count = interval_count(&seq, a, b)?;
                let exact = BigRational::new(
                    BigInt::from(*count.numer()),
                    BigInt::from(*count.denom()),
                );
                let dev = (exact - (b - a)).abs();
                Ok(IntervalDeviation {
                    a: a.to_f64().unwrap_or(f64::NAN),
                    b: b.to_f64().unwrap_or(f64::NAN),
                    deviation: dev.to_f64().unwrap_or(f64::NAN),
                })
            })
            .collect::<Result<Vec<_>>>()?;

        rows.push(StudyRow {
            q,
            n,
            dstar: report.dstar,
            d: report.d,
            et_bound,
            deviations,
            degenerate,
        });
    }
    Ok(rows)
}

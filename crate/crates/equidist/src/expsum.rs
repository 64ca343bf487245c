//! Weyl sums and complete exponential sums over prime fields.
//!
//! The central estimate is the Weil bound: a complete sum of a degree-d
//! polynomial over F_q has magnitude at most (d-1)*sqrt(q) + 1 whenever the
//! leading residue is nonzero and gcd(q, d) = 1. Nothing here proves it; the
//! checker measures every requested sum against it and reports margins.
//!
//! Phases are always derived from the exact residue r = (k * p(j)) mod q and
//! a single trig call on 2*pi*r/q, so the argument never leaves [0, 2*pi)
//! no matter how large k or p(j) get. Per-k sums are independent and safe to
//! evaluate in parallel; the root-of-unity table is immutable once built.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kahan::NeumaierSum;
use crate::polyseq::{GridSequence, ReducedPolynomial, Sequence};
use crate::qmcint::TestFunction;

/// all_k_scan is O(q^2); refuse moduli above this unless raised explicitly.
pub const DEFAULT_SCAN_LIMIT: u64 = 4096;

/// Moduli up to this get a precomputed root-of-unity table.
const TABLE_LIMIT: u64 = 1 << 20;

/// Value tables are worth the memory only below this size.
const VALUE_TABLE_LIMIT: u64 = 1 << 22;

/// Tolerance on the conjugate-symmetry identity S(q-k) = conj(S(k)).
pub const CONJUGATE_TOL: f64 = 1e-9;

/// A checked instance fails when magnitude exceeds bound by more than this.
pub const WEIL_TOL: f64 = 1e-6;

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// k mod q mapped into [0, q), correct for negative k.
#[inline]
fn residue_of(k: i64, q: u64) -> u64 {
    if k >= 0 {
        k as u64 % q
    } else {
        let r = k.unsigned_abs() % q;
        if r == 0 {
            0
        } else {
            q - r
        }
    }
}

/// e^{2*pi*i*r/q} for exact residues r, either from a mirrored table or by
/// direct evaluation. The table is built on [0, q/2] and reflected, so
/// conjugate pairs are bitwise exact.
enum Phases {
    Table { cos: Vec<f64>, sin: Vec<f64> },
    Direct { q: u64 },
}

impl Phases {
    fn new(q: u64) -> Self {
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut cos = vec![0.0; n];
            let mut sin = vec![0.0; n];
            for r in 0..=(n / 2) {
                let theta = std::f64::consts::TAU * r as f64 / q as f64;
                cos[r] = theta.cos();
                sin[r] = theta.sin();
            }
            for r in (n / 2 + 1)..n {
                cos[r] = cos[n - r];
                sin[r] = -sin[n - r];
            }
            Phases::Table { cos, sin }
        } else {
            Phases::Direct { q }
        }
    }

    #[inline]
    fn at(&self, r: u64) -> (f64, f64) {
        match self {
            Phases::Table { cos, sin } => (cos[r as usize], sin[r as usize]),
            Phases::Direct { q } => {
                let theta = std::f64::consts::TAU * r as f64 / *q as f64;
                (theta.cos(), theta.sin())
            }
        }
    }
}

/// Sum e^{2*pi*i*(k*v_j)/q} over the given residue values.
fn sum_over_values<I>(values: I, k_res: u64, q: u64, phases: &Phases) -> Complex64
where
    I: Iterator<Item = u64>,
{
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for v in values {
        let r = mul_mod(k_res, v, q);
        let (c, s) = phases.at(r);
        re += c;
        im += s;
    }
    Complex64::new(re.value(), im.value())
}

/// Complete exponential sum S(k) = sum_{j=0}^{q-1} e^{2*pi*i*k*p(j)/q}.
pub fn complete_exp_sum(rp: &ReducedPolynomial, k: i64) -> Result<Complex64> {
    let q = rp.modulus();
    if k < 1 || (k as u64) > q - 1 {
        return Err(Error::FrequencyOutOfRange { k, max: q - 1 });
    }
    let phases = Phases::new(q);
    Ok(sum_over_values((0..q).map(|j| rp.eval_mod(j)), k as u64, q, &phases))
}

/// A single Weyl-sum measurement, optionally annotated with a bound.
#[derive(Clone, Debug)]
pub struct WeylSumReport {
    pub k: i64,
    pub sum: Complex64,
    pub magnitude: f64,
    pub normalized_magnitude: f64,
    pub bound: Option<f64>,
    pub margin: Option<f64>,
}

impl WeylSumReport {
    /// Wrap a raw sum of `n` terms; no bound attached.
    pub fn new(k: i64, sum: Complex64, n: u64) -> Self {
        let magnitude = sum.norm();
        WeylSumReport {
            k,
            sum,
            magnitude,
            normalized_magnitude: magnitude / n as f64,
            bound: None,
            margin: None,
        }
    }

    fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.margin = Some(bound - self.magnitude);
        self
    }

    /// True when a bound is present and the magnitude exceeds it beyond
    /// numerical tolerance.
    pub fn violates_bound(&self) -> bool {
        match self.bound {
            Some(b) => self.magnitude > b + WEIL_TOL,
            None => false,
        }
    }
}

fn weyl_sum_grid(g: &GridSequence, k: i64) -> Complex64 {
    let q = g.denominator();
    let phases = Phases::new(q);
    sum_over_values(g.numerators().iter().copied(), residue_of(k, q), q, &phases)
}

fn weyl_sum_real(values: &[f64], k: i64) -> Complex64 {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let kf = k as f64;
    for &s in values {
        // reduce k*s mod 1 before scaling by 2*pi
        let t = (kf * s).rem_euclid(1.0);
        let theta = std::f64::consts::TAU * t;
        re += theta.cos();
        im += theta.sin();
    }
    Complex64::new(re.value(), im.value())
}

/// Weyl sum over any point sequence. Grid inputs go through exact residues;
/// real inputs reduce k*s_i modulo one before the trig call.
pub fn weyl_sum(seq: &Sequence, k: i64) -> Result<WeylSumReport> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if k == 0 {
        return Err(Error::ZeroFrequency);
    }
    let sum = match seq {
        Sequence::Grid(g) => weyl_sum_grid(g, k),
        Sequence::Real(r) => weyl_sum_real(r.values(), k),
    };
    Ok(WeylSumReport::new(k, sum, seq.len() as u64))
}

/// Evaluate S(k) for each k and compare against the Weil bound
/// (d-1)*sqrt(q) + 1. Reports carry the bound and the margin; a negative
/// margin beyond `WEIL_TOL` marks a violation (recorded, not filtered).
pub fn weil_bound_check(rp: &ReducedPolynomial, k_set: &[i64]) -> Result<Vec<WeylSumReport>> {
    let q = rp.modulus();
    let d = rp.degree();
    if d == 0 || *rp.coeffs().last().unwrap() == 0 {
        return Err(Error::DegeneratePolynomial);
    }
    if num_integer::gcd(q, d as u64) != 1 {
        return Err(Error::ModulusDegreeClash { q, d });
    }
    for &k in k_set {
        if k < 1 || (k as u64) > q - 1 {
            return Err(Error::FrequencyOutOfRange { k, max: q - 1 });
        }
    }
    let bound = (d as f64 - 1.0) * (q as f64).sqrt() + 1.0;
    let phases = Phases::new(q);
    let table: Option<Vec<u64>> = if q <= VALUE_TABLE_LIMIT {
        Some((0..q).map(|j| rp.eval_mod(j)).collect())
    } else {
        None
    };
    let mut out = Vec::with_capacity(k_set.len());
    for &k in k_set {
        let sum = match &table {
            Some(vals) => sum_over_values(vals.iter().copied(), k as u64, q, &phases),
            None => sum_over_values((0..q).map(|j| rp.eval_mod(j)), k as u64, q, &phases),
        };
        out.push(WeylSumReport::new(k, sum, q).with_bound(bound));
    }
    Ok(out)
}

/// S(k) for every k = 0..q-1, via the histogram of polynomial values:
/// S(k) = sum_v c_v e^{2*pi*i*k*v/q} with c_v = #{j : p(j) = v}. This is a
/// direct DFT (O(q^2)) of the histogram — prime lengths defeat radix-2
/// splitting and the scan serves as an oracle, so simplicity wins.
pub fn all_k_scan(rp: &ReducedPolynomial) -> Result<Vec<Complex64>> {
    all_k_scan_with_limit(rp, DEFAULT_SCAN_LIMIT)
}

/// Same as `all_k_scan` with an explicit size cap.
pub fn all_k_scan_with_limit(rp: &ReducedPolynomial, limit: u64) -> Result<Vec<Complex64>> {
    let q = rp.modulus();
    if q > limit {
        return Err(Error::ScanLimitExceeded { q, limit });
    }
    let mut hist = vec![0u64; q as usize];
    for j in 0..q {
        hist[rp.eval_mod(j) as usize] += 1;
    }
    let support: Vec<(u64, f64)> = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| (v as u64, c as f64))
        .collect();
    let phases = Phases::new(q);
    let mut out = Vec::with_capacity(q as usize);
    for k in 0..q {
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for &(v, c) in &support {
            let r = mul_mod(k, v, q);
            let (cs, sn) = phases.at(r);
            re += c * cs;
            im += c * sn;
        }
        out.push(Complex64::new(re.value(), im.value()));
    }
    Ok(out)
}

/// Verify S(q-k) = conj(S(k)) for all k in [1, q-1]. Sequences on the grid
/// j/q have conjugate-paired phases, so any honest scan passes; a failure
/// means the scan was corrupted or the accumulation broke down.
pub fn conjugate_frequency_check(scan: &[Complex64]) -> bool {
    let q = scan.len();
    for k in 1..q {
        let diff = scan[q - k] - scan[k].conj();
        if diff.norm() > CONJUGATE_TOL {
            return false;
        }
    }
    true
}

/// Discrete Fourier coefficients of a smooth test function on a q-point
/// grid, checked against the decay envelope H/k^2.
#[derive(Clone, Debug)]
pub struct FourierDecayReport {
    pub coefficients: BTreeMap<i64, Complex64>,
    pub h: f64,
    pub violations: Vec<i64>,
}

/// Compute ĝ(k) = (1/q) * sum_j g(j/q) e^{-2*pi*i*k*j/q} for |k| <= q/2 and
/// report every nonzero k whose coefficient escapes H/k^2.
pub fn fourier_decay_check(g: &TestFunction, q: u64, h: f64) -> Result<FourierDecayReport> {
    if !g.smooth() {
        return Err(Error::NonSmoothFunction { name: g.name().to_string() });
    }
    if q < 16 {
        return Err(Error::GridTooSmall { q });
    }
    if !(h > 0.0) {
        return Err(Error::NonPositiveH { h });
    }
    let values: Vec<Complex64> = (0..q)
        .map(|j| g.eval(j as f64 / q as f64))
        .collect::<Result<_>>()?;
    let phases = Phases::new(q);
    let half = (q / 2) as i64;
    let mut coefficients = BTreeMap::new();
    let mut violations = Vec::new();
    for k in -half..=half {
        let k_res = residue_of(k, q);
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for (j, gv) in values.iter().enumerate() {
            let r = mul_mod(k_res, j as u64, q);
            // e^{-i theta} = conj of the table phase
            let (c, s) = phases.at(r);
            re += gv.re * c + gv.im * s;
            im += gv.im * c - gv.re * s;
        }
        let coeff = Complex64::new(re.value(), im.value()) / q as f64;
        if k != 0 && coeff.norm() > h / (k as f64 * k as f64) {
            violations.push(k);
        }
        coefficients.insert(k, coeff);
    }
    Ok(FourierDecayReport { coefficients, h, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyseq::{generate_sequence, RealSequence};
    use approx::assert_abs_diff_eq;

    fn rp(q: u64, coeffs: &[u64]) -> ReducedPolynomial {
        ReducedPolynomial::from_coeffs(q, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn complete_sum_roots_of_unity_cancel() {
        let s = complete_exp_sum(&rp(5, &[0, 1]), 1).unwrap();
        assert!(s.norm() <= 1e-12, "|S| = {}", s.norm());
    }

    #[test]
    fn complete_sum_gauss_magnitude() {
        let s = complete_exp_sum(&rp(7, &[0, 0, 1]), 1).unwrap();
        assert_abs_diff_eq!(s.norm(), 7f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn complete_sum_constant_phase() {
        let s = complete_exp_sum(&rp(5, &[3]), 1).unwrap();
        let theta = std::f64::consts::TAU * 3.0 / 5.0;
        assert_abs_diff_eq!(s.re, 5.0 * theta.cos(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.im, 5.0 * theta.sin(), epsilon = 1e-9);
    }

    #[test]
    fn complete_sum_frequency_range() {
        let p = rp(5, &[0, 1]);
        assert!(matches!(
            complete_exp_sum(&p, 0),
            Err(Error::FrequencyOutOfRange { k: 0, max: 4 })
        ));
        assert!(matches!(complete_exp_sum(&p, 5), Err(Error::FrequencyOutOfRange { .. })));
        assert!(matches!(complete_exp_sum(&p, -1), Err(Error::FrequencyOutOfRange { .. })));
    }

    #[test]
    fn weyl_sum_cube_roots() {
        let seq = Sequence::Grid(
            GridSequence::new(3, vec![0, 1, 2], crate::polyseq::Provenance::Adhoc).unwrap(),
        );
        let r = weyl_sum(&seq, 1).unwrap();
        assert!(r.magnitude <= 1e-12);
    }

    #[test]
    fn weyl_sum_constant_zeros() {
        let seq = Sequence::Real(
            RealSequence::new(vec![0.0; 10], crate::polyseq::Provenance::Adhoc).unwrap(),
        );
        let r = weyl_sum(&seq, 3).unwrap();
        assert_eq!(r.sum, Complex64::new(10.0, 0.0));
        assert_eq!(r.normalized_magnitude, 1.0);
    }

    #[test]
    fn weyl_sum_full_grid_permutation() {
        let seq = Sequence::Grid(generate_sequence(&rp(5, &[0, 2])));
        let r = weyl_sum(&seq, 2).unwrap();
        assert!(r.magnitude <= 1e-12);
        // negative k mirrors
        let rn = weyl_sum(&seq, -2).unwrap();
        assert!(rn.magnitude <= 1e-12);
    }

    #[test]
    fn weyl_sum_rejects_zero_frequency() {
        let seq = Sequence::Grid(generate_sequence(&rp(5, &[0, 2])));
        assert!(matches!(weyl_sum(&seq, 0), Err(Error::ZeroFrequency)));
        // empty sequences cannot even be constructed
        assert!(matches!(
            GridSequence::new(5, vec![], crate::polyseq::Provenance::Adhoc),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn weil_check_quadratic() {
        let reports = weil_bound_check(&rp(7, &[0, 0, 1]), &[1]).unwrap();
        let r = &reports[0];
        assert_abs_diff_eq!(r.magnitude, 7f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(r.bound.unwrap(), 7f64.sqrt() + 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.margin.unwrap(), 1.0, epsilon = 1e-9);
        assert!(!r.violates_bound());
    }

    #[test]
    fn weil_check_linear_is_zero() {
        for k in 1..5 {
            let reports = weil_bound_check(&rp(5, &[0, 2]), &[k]).unwrap();
            assert!(reports[0].magnitude <= 1e-9 * 5.0);
            assert_abs_diff_eq!(reports[0].bound.unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn weil_check_cubic_within_bound() {
        let reports = weil_bound_check(&rp(7, &[0, 1, 0, 1]), &[3]).unwrap();
        assert!(reports[0].magnitude <= 2.0 * 7f64.sqrt() + 1.0 + 1e-6);
    }

    #[test]
    fn weil_check_rejects_degenerate() {
        assert!(matches!(
            weil_bound_check(&rp(5, &[3]), &[1]),
            Err(Error::DegeneratePolynomial)
        ));
        // gcd(q, d) = 3
        assert!(matches!(
            weil_bound_check(&rp(3, &[0, 0, 0, 1]), &[1]),
            Err(Error::ModulusDegreeClash { q: 3, d: 3 })
        ));
    }

    #[test]
    fn scan_uniform_histogram() {
        let scan = all_k_scan(&rp(5, &[0, 1])).unwrap();
        assert_eq!(scan[0], Complex64::new(5.0, 0.0));
        for k in 1..5 {
            assert!(scan[k].norm() <= 1e-12, "k={k}");
        }
    }

    #[test]
    fn scan_gauss_magnitudes() {
        let scan = all_k_scan(&rp(7, &[0, 0, 1])).unwrap();
        assert_eq!(scan[0].re, 7.0);
        for k in 1..7 {
            assert_abs_diff_eq!(scan[k].norm(), 7f64.sqrt(), epsilon = 1e-9);
        }
    }

    #[test]
    fn scan_concentrated_histogram() {
        let scan = all_k_scan(&rp(3, &[0])).unwrap();
        for k in 0..3 {
            assert_abs_diff_eq!(scan[k].re, 3.0, epsilon = 1e-12);
            assert_abs_diff_eq!(scan[k].im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn scan_limit_enforced() {
        assert!(matches!(
            all_k_scan(&rp(4099, &[0, 1])),
            Err(Error::ScanLimitExceeded { q: 4099, limit: DEFAULT_SCAN_LIMIT })
        ));
        assert!(all_k_scan_with_limit(&rp(4099, &[0, 1]), 5000).is_ok());
    }

    #[test]
    fn scan_agrees_with_direct_sums() {
        for coeffs in [&[1u64, 2, 3][..], &[0, 5, 0, 7], &[10, 0, 0, 0, 12]] {
            let p = rp(101, coeffs);
            let scan = all_k_scan(&p).unwrap();
            for k in 1..101 {
                let direct = complete_exp_sum(&p, k as i64).unwrap();
                assert!(
                    (scan[k] - direct).norm() <= 1e-8 * 101.0,
                    "k={k} scan={} direct={}",
                    scan[k],
                    direct
                );
            }
        }
    }

    #[test]
    fn conjugate_symmetry_and_negative_control() {
        let scan = all_k_scan(&rp(7, &[0, 0, 1])).unwrap();
        assert!(conjugate_frequency_check(&scan));
        assert_abs_diff_eq!((scan[6] - scan[1].conj()).norm(), 0.0, epsilon = 1e-12);

        let mut bad = scan.clone();
        bad[2] += Complex64::new(1e-6, 0.0);
        assert!(!conjugate_frequency_check(&bad));
    }

    #[test]
    fn decay_single_harmonic() {
        let g = TestFunction::new(
            "sin2pix",
            |x| Ok(Complex64::new((std::f64::consts::TAU * x).sin(), 0.0)),
            Complex64::new(0.0, 0.0),
            true,
            true,
            Some(4.0),
        );
        let rep = fourier_decay_check(&g, 64, 1.0).unwrap();
        let c1 = rep.coefficients[&1];
        let cm1 = rep.coefficients[&-1];
        assert_abs_diff_eq!(c1.im, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c1.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cm1.im, 0.5, epsilon = 1e-12);
        assert!(rep.violations.is_empty());
        for (&k, c) in &rep.coefficients {
            if k.abs() > 1 {
                assert!(c.norm() <= 1e-12, "k={k}");
            }
        }
    }

    #[test]
    fn decay_sin_squared() {
        let g = TestFunction::sin2_pi();
        let rep = fourier_decay_check(&g, 64, 1.0).unwrap();
        assert_abs_diff_eq!(rep.coefficients[&0].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.coefficients[&1].re, -0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.coefficients[&-1].re, -0.25, epsilon = 1e-12);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn decay_constant_and_conjugate_invariant() {
        let g = TestFunction::constant(2.5);
        let rep = fourier_decay_check(&g, 32, 0.001).unwrap();
        for (&k, c) in &rep.coefficients {
            if k != 0 {
                assert!(c.norm() <= 1e-12);
            }
        }
        assert!(rep.violations.is_empty());

        // real-valued g: coefficients conjugate in k
        let g = TestFunction::sin2_pi();
        let rep = fourier_decay_check(&g, 48, 1.0).unwrap();
        for (&k, c) in &rep.coefficients {
            if let Some(cm) = rep.coefficients.get(&-k) {
                assert!((cm - c.conj()).norm() <= 1e-10, "k={k}");
            }
        }
    }

    #[test]
    fn decay_rejects_rough_or_tiny() {
        let ind = TestFunction::indicator_f64(0.2, 0.5).unwrap();
        assert!(matches!(
            fourier_decay_check(&ind, 64, 1.0),
            Err(Error::NonSmoothFunction { .. })
        ));
        let g = TestFunction::sin2_pi();
        assert!(matches!(fourier_decay_check(&g, 8, 1.0), Err(Error::GridTooSmall { q: 8 })));
        assert!(matches!(fourier_decay_check(&g, 64, 0.0), Err(Error::NonPositiveH { .. })));
    }

    #[test]
    fn mean_decay_invariant_small_cases() {
        // |S|/q <= (d-1)/sqrt(q) + 3/q on the i = 1..q indexed sequence
        for (q, coeffs) in [(101u64, vec![5u64, 17, 42]), (257, vec![0, 1, 0, 100])] {
            let p = ReducedPolynomial::from_coeffs(q, coeffs).unwrap();
            let d = p.degree() as f64;
            let seq = Sequence::Grid(generate_sequence(&p));
            for k in 1..(q as i64).min(50) {
                let r = weyl_sum(&seq, k).unwrap();
                let cap = (d - 1.0) / (q as f64).sqrt() + 3.0 / q as f64;
                assert!(
                    r.normalized_magnitude <= cap,
                    "q={q} k={k}: {} > {cap}",
                    r.normalized_magnitude
                );
            }
        }
    }
}

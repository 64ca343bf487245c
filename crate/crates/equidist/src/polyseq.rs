//! Polynomials with exact decimal coefficients in [0, 1), their reductions
//! modulo a prime q, and the point sequences they generate on the unit
//! interval.
//!
//! The reduction sends a_l to t_l = floor(q * a_l), carried out in integer
//! arithmetic on the decimal mantissas so no rounding enters: the sequence
//! values are then exact rationals t(i)/q. Real-valued sequences (a linear
//! irrational orbit, or points read from a file) share the same downstream
//! analytics through `Sequence`.

use std::path::{Path, PathBuf};


use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::primes::{is_prime, next_prime};

/// A polynomial sum_l a_l x^l with exact decimal coefficients, each in [0, 1),
/// and a nonzero leading coefficient unless the polynomial is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSpec {
    coeffs: Vec<Decimal>,
}

impl PolynomialSpec {
    pub fn new(coeffs: Vec<Decimal>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LeadingZero { degree: 0 });
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.is_proper() {
                return Err(Error::CoefficientRange { index, value: c.to_string() });
            }
        }
        if coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            return Err(Error::LeadingZero { degree: coeffs.len() - 1 });
        }
        Ok(PolynomialSpec { coeffs })
    }

    /// Parse a comma-separated coefficient list "a_0,a_1,...,a_d".
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(Decimal::parse)
            .collect::<Result<Vec<_>>>()?;
        PolynomialSpec::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Decimal] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl std::fmt::Display for PolynomialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Largest prime factor of n, or None for n <= 1.
fn largest_prime_factor(mut n: u64) -> Option<u64> {
    let mut best = None;
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            best = Some(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        best = Some(n);
    }
    best
}

/// Smallest prime q such that every prime modulus >= q is usable for `p`:
/// the leading residue floor(q * a_d) is at least 1, and q is coprime with
/// the degree. Constant polynomials have no constraint and get 2.
pub fn min_modulus(p: &PolynomialSpec) -> u64 {
    let d = p.degree();
    let mut lower = 2u64;
    if d >= 1 {
        let lead = p.coeffs().last().unwrap();
        lower = lower.max(lead.strict_reciprocal_bound());
        for c in p.coeffs() {
            if !c.is_zero() {
                lower = lower.max(c.strict_complement_bound());
            }
        }
        // Primes dividing d would degenerate the exponential-sum bound; any
        // prime above d's largest prime factor is coprime with d.
        if let Some(f) = largest_prime_factor(d as u64) {
            lower = lower.max(f + 1);
        }
    }
    if lower <= 2 {
        2
    } else {
        next_prime(lower - 1).expect("minimum modulus fits u64")
    }
}

/// The residue coefficients t_l = floor(q * a_l) of a polynomial reduced
/// modulo a prime q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ReducedPolynomial {
    /// Build directly from residue coefficients. Trailing zero residues are
    /// trimmed so the degree is well defined; the all-zero polynomial keeps
    /// a single constant term.
    pub fn from_coeffs(modulus: u64, mut coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime { q: modulus });
        }
        for (index, &t) in coeffs.iter().enumerate() {
            if t >= modulus {
                return Err(Error::ResidueRange { index, value: t, q: modulus });
            }
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Ok(ReducedPolynomial { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of the residue polynomial at i, modulo q. The index
    /// is reduced first; every product stays inside u128.
    pub fn eval_mod(&self, i: u64) -> u64 {
        let q = self.modulus as u128;
        let x = (i % self.modulus) as u128;
        let mut acc = 0u128;
        for &t in self.coeffs.iter().rev() {
            acc = (acc * x + t as u128) % q;
        }
        acc as u64
    }
}

/// Reduce `p` modulo the prime `q`, taking t_l = floor(q * a_l) exactly.
pub fn reduce_polynomial(p: &PolynomialSpec, q: u64) -> Result<ReducedPolynomial> {
    if !is_prime(q) {
        return Err(Error::NotPrime { q });
    }
    let min = min_modulus(p);
    if q < min {
        return Err(Error::ModulusTooSmall { q, min });
    }
    let coeffs = p.coeffs().iter().map(|c| c.floor_mul(q)).collect();
    ReducedPolynomial::from_coeffs(q, coeffs)
}

/// Where a sequence came from.
#[derive(Clone, Debug)]
pub enum Provenance {
    /// Reduced from a decimal-coefficient polynomial at the given modulus.
    Polynomial { spec: PolynomialSpec, modulus: u64 },
    /// Built directly from residue coefficients.
    Residues { modulus: u64 },
    /// Fractional parts of i * alpha.
    Linear { alpha: f64 },
    /// Read from a text file.
    File(PathBuf),
    /// Constructed in memory by the caller.
    Adhoc,
}

/// Points n_i / q on the unit interval, stored as integer numerators over a
/// shared denominator so downstream counts and discrepancies stay exact.
#[derive(Clone, Debug)]
pub struct GridSequence {
    denominator: u64,
    numerators: Vec<u64>,
    provenance: Provenance,
}

impl GridSequence {
    pub fn new(denominator: u64, numerators: Vec<u64>, provenance: Provenance) -> Result<Self> {
        if numerators.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, &n) in numerators.iter().enumerate() {
            if n >= denominator {
                return Err(Error::ResidueRange { index: i, value: n, q: denominator });
            }
        }
        Ok(GridSequence { denominator, numerators, provenance })
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.numerators[i] as f64 / self.denominator as f64
    }
}

/// The sequence s_i = p_q(i)/q mod 1 for i = 1..q. Since i = q wraps to the
/// zero residue, this is the complete residue orbit in a shifted order.
pub fn generate_sequence(rp: &ReducedPolynomial) -> GridSequence {
    let q = rp.modulus();
    let numerators = (1..=q).map(|i| rp.eval_mod(i)).collect();
    GridSequence {
        denominator: q,
        numerators,
        provenance: Provenance::Residues { modulus: q },
    }
}

/// Reduce and generate in one step, keeping the decimal spec as provenance.
pub fn polynomial_sequence(p: &PolynomialSpec, q: u64) -> Result<GridSequence> {
    let rp = reduce_polynomial(p, q)?;
    let mut seq = generate_sequence(&rp);
    seq.provenance = Provenance::Polynomial { spec: p.clone(), modulus: q };
    Ok(seq)
}

/// Real-valued points in [0, 1).
#[derive(Clone, Debug)]
pub struct RealSequence {
    values: Vec<f64>,
    provenance: Provenance,
}

impl RealSequence {
    pub fn new(values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::ValueRange { line: i + 1, value: v });
            }
        }
        Ok(RealSequence { values, provenance })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// s_i = frac(i * alpha) for i = 1..n.
pub fn linear_sequence(alpha: f64, n: usize) -> Result<RealSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if !alpha.is_finite() {
        return Err(Error::ValueRange { line: 0, value: alpha });
    }
    let values = (1..=n)
        .map(|i| {
            let v = (i as f64 * alpha).rem_euclid(1.0);
            // rem_euclid can round up to exactly 1.0 for negative inputs
            if v >= 1.0 {
                0.0
            } else {
                v
            }
        })
        .collect();
    RealSequence::new(values, Provenance::Linear { alpha })
}

/// Read one value per line; '#' starts a comment, blank lines are skipped.
/// Every value must lie in [0, 1).
pub fn load_sequence(path: &Path) -> Result<RealSequence> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::BadSequenceLine { line, text: t.to_string() })?;
        if !v.is_finite() || !(0.0..1.0).contains(&v) {
            return Err(Error::ValueRange { line, value: v });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    RealSequence::new(values, Provenance::File(path.to_path_buf()))
}

/// Any point sequence on the unit interval, exact-grid or real-valued.
#[derive(Clone, Debug)]
pub enum Sequence {
    Grid(GridSequence),
    Real(RealSequence),
}

impl Sequence {
    pub fn len(&self) -> usize {
        match self {
            Sequence::Grid(g) => g.len(),
            Sequence::Real(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, i: usize) -> f64 {
        match self {
            Sequence::Grid(g) => g.value(i),
            Sequence::Real(r) => r.values()[i],
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    pub fn as_grid(&self) -> Option<&GridSequence> {
        match self {
            Sequence::Grid(g) => Some(g),
            Sequence::Real(_) => None,
        }
    }
}

impl From<GridSequence> for Sequence {
    fn from(g: GridSequence) -> Self {
        Sequence::Grid(g)
    }
}

impl From<RealSequence> for Sequence {
    fn from(r: RealSequence) -> Self {
        Sequence::Real(r)
    }
}

//! Compensated summation. Trigonometric series accumulate q terms of unit
//! magnitude; naive summation loses up to q*eps, Neumaier keeps the error
//! near one ulp of the true sum regardless of cancellation.

/// Neumaier variant of Kahan summation: the branch keeps the compensation
/// correct even when the incoming term dominates the running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

impl std::ops::AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

//! Shifted Grünwald coefficients and the cumulative gradient weights built
//! from them.
//!
//! For a fractional order `alpha` in `(0, 1]` the coefficients follow
//!
//! ```text
//! g_0 = 1,    g_j = (j - 1 - alpha) / j * g_{j-1}
//! ```
//!
//! and the cumulative weights are `W_j = dx^(1-alpha) * (g_0 + ... + g_j)`.
//! Every `g_j` with `j >= 1` is negative, so the partial sums decay toward
//! zero through heavy cancellation. Both the recurrence and the running sum
//! are carried in double-double arithmetic and rounded to `f64` once.

use crate::error::DomainError;

/// Precomputed `g_j` and `W_j` for one `(alpha, dx, n)`.
///
/// Immutable after construction; share it freely between readers.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunwaldTable {
    alpha: f64,
    dx: f64,
    g: Vec<f64>,
    w: Vec<f64>,
}

impl GrunwaldTable {
    /// Builds the table for `n + 1` weights.
    pub fn build(alpha: f64, dx: f64, n: usize) -> Result<Self, DomainError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(DomainError::Alpha(alpha));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(DomainError::Spacing(dx));
        }
        if n == 0 {
            return Err(DomainError::TooFewNodes(n + 1));
        }

        let scale = dx.powf(1.0 - alpha);
        let mut g = Vec::with_capacity(n + 1);
        let mut w = Vec::with_capacity(n + 1);

        let mut gj = DoubleDouble::from(1.0);
        let mut partial = gj;
        g.push(1.0);
        w.push(scale);
        for j in 1..=n {
            let jf = j as f64;
            let factor = DoubleDouble::sum(jf - 1.0, -alpha);
            gj = (gj * factor).div_f64(jf);
            partial = partial + gj;
            g.push(gj.to_f64());
            w.push(scale * partial.to_f64());
        }

        Ok(Self { alpha, dx, g, w })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Number of grid intervals `n`; the table holds `n + 1` entries.
    pub fn n(&self) -> usize {
        self.g.len() - 1
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// `g_0 + ... + g_j`, i.e. `W_j / dx^(1-alpha)`.
    pub fn partial_g_sum(&self, j: usize) -> Result<f64, DomainError> {
        if j > self.n() {
            return Err(DomainError::Index { index: j, len: self.g.len() });
        }
        Ok(self.w[j] / self.dx.powf(1.0 - self.alpha))
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles (Knuth two-sum).
    fn sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn product(a: f64, b: f64) -> Self {
        let p = a * b;
        Self { hi: p, lo: a.mul_add(b, -p) }
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let p = Self::product(q1, d);
        let r = Self::sum(self.hi, -p.hi);
        let rem = r.hi + (r.lo - p.lo + self.lo);
        let q2 = rem / d;
        Self::quick_sum(q1, q2)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let s = Self::sum(self.hi, rhs.hi);
        let t = Self::sum(self.lo, rhs.lo);
        let v = Self::quick_sum(s.hi, s.lo + t.hi);
        Self::quick_sum(v.hi, v.lo + t.lo)
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let p = Self::product(self.hi, rhs.hi);
        let cross = self.hi.mul_add(rhs.lo, self.lo * rhs.hi);
        Self::quick_sum(p.hi, p.lo + cross)
    }
}

//! Deterministic one-dimensional search: seeded grid scan with
//! golden-section refinement, and bisection on monotone functions.
//!
//! Infeasible points are reported by the objective as `f64::INFINITY` (or
//! any non-finite value) rather than through an error, so brackets stay
//! well-defined across feasibility boundaries.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpec {
    pub lo: f64,
    pub hi: f64,
    /// Number of seed grid points, endpoints included.
    pub n_grid: usize,
    /// Relative tolerance on the abscissa (golden section) or on the target
    /// (bisection).
    pub rtol: f64,
    pub atol: f64,
    pub max_iter: usize,
}

impl SearchSpec {
    pub fn new(lo: f64, hi: f64) -> Self {
        SearchSpec {
            lo,
            hi,
            n_grid: 64,
            rtol: 1e-12,
            atol: 1e-300,
            max_iter: 300,
        }
    }

    pub fn grid(mut self, n_grid: usize) -> Self {
        self.n_grid = n_grid;
        self
    }

    pub fn tolerances(mut self, rtol: f64, atol: f64) -> Self {
        self.rtol = rtol;
        self.atol = atol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidSpec(format!(
                "lo < hi violated ({} .. {})",
                self.lo, self.hi
            )));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::InvalidSpec("tolerances must be positive".into()));
        }
        if self.n_grid < 8 {
            return Err(Error::InvalidSpec(format!("n_grid = {} < 8", self.n_grid)));
        }
        Ok(())
    }

    fn x_tol(&self, x: f64) -> f64 {
        self.rtol * x.abs() + self.atol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

fn score(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` on `[lo, hi]`.
///
/// A uniform seed grid of `n_grid` points locates the best cell; golden
/// section then shrinks the bracket formed by its two neighbours until the
/// bracket is narrower than `rtol * |x| + atol` or `max_iter` is reached.
/// The result is never worse than the best seed point.
pub fn minimize_1d<F>(f: F, spec: &SearchSpec) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let n = spec.n_grid;
    let step = (spec.hi - spec.lo) / (n - 1) as f64;
    let at = |i: usize| {
        if i == n - 1 {
            spec.hi
        } else {
            spec.lo + step * i as f64
        }
    };

    let mut best = Minimum {
        x: spec.lo,
        value: f64::INFINITY,
    };
    let mut best_idx = None;
    for i in 0..n {
        let x = at(i);
        let v = score(f(x));
        if v < best.value {
            best = Minimum { x, value: v };
            best_idx = Some(i);
        }
    }
    let best_idx = best_idx.ok_or(Error::EmptyFeasibleSet)?;
    if best.value == f64::INFINITY {
        return Err(Error::EmptyFeasibleSet);
    }

    let mut a = at(best_idx.saturating_sub(1));
    let mut b = at((best_idx + 1).min(n - 1));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = score(f(c));
    let mut fd = score(f(d));
    for _ in 0..spec.max_iter {
        if b - a <= spec.x_tol(0.5 * (a + b)) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = score(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = score(f(d));
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best.value {
            best = Minimum { x, value: v };
        }
    }
    Ok(best)
}

/// Finds `x` in `[lo, hi]` with `f(x) ≈ target` for nondecreasing `f`.
///
/// Stops once `|f(x) - target| <= rtol * |target| + atol`, or when the
/// bracket can no longer be split in floating point.
pub fn bisect_monotone<F>(f: F, target: f64, spec: &SearchSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let (mut lo, mut hi) = (spec.lo, spec.hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo <= target && target <= f_hi) {
        return Err(Error::BracketViolation { target, f_lo, f_hi });
    }
    let tol = spec.rtol * target.abs() + spec.atol;
    if (f_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol {
        return Ok(hi);
    }
    let mut best = (lo, (f_lo - target).abs());
    if (f_hi - target).abs() < best.1 {
        best = (hi, (f_hi - target).abs());
    }
    for _ in 0..spec.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        let gap = (v - target).abs();
        if gap < best.1 {
            best = (mid, gap);
        }
        if gap <= tol {
            return Ok(mid);
        }
        if v < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}

//! One-dimensional extremum and threshold location over `Δ`.
//!
//! Both searches start with a uniform grid scan. Golden-section refinement
//! then runs only inside the bracket around the best grid point, since the
//! clipped concurrence has kinks and is not unimodal on a whole interval.

use crate::error::{domain, Result};

/// `1/φ`.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

pub const DEFAULT_SCAN_STEP: f64 = 0.01;
pub const DEFAULT_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

impl Sense {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Max => a > b,
            Sense::Min => a < b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub step: f64,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            step: DEFAULT_SCAN_STEP,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub argument: f64,
    pub value: f64,
    /// Grid bracket the refinement ran in.
    pub bracket: (f64, f64),
    /// Best grid point before refinement.
    pub grid_best: (f64, f64),
    /// The best grid point was an endpoint of the interval.
    pub at_boundary: bool,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    /// Witness changes sign inside `bracket`; `delta` is its midpoint.
    Found { delta: f64, bracket: (f64, f64) },
    /// Already positive at the interval start.
    AlreadyPositive { at: f64 },
    /// Never positive on the scanned grid.
    NeverPositive,
}

fn grid(lo: f64, hi: f64, opts: &ScanOptions) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return domain(format!("invalid interval [{lo}, {hi}]"));
    }
    if !(opts.step > 0.0 && opts.tol > 0.0) {
        return domain("scan step and tolerance must be positive");
    }
    let n = ((hi - lo) / opts.step - 1e-9).ceil() as usize;
    Ok((0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + i as f64 * opts.step
            }
        })
        .collect())
}

/// Golden-section search on `[a, b]` until the bracket is narrower than
/// `tol`. Returns the midpoint of the final bracket and its value.
pub fn golden_section<F>(
    mut f: F,
    a: f64,
    b: f64,
    sense: Sense,
    tol: f64,
) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    while b - a > tol {
        if sense.better(f1, f2) || f1 == f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?, evals + 1))
}

pub fn find_extremum<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    sense: Sense,
    opts: &ScanOptions,
) -> Result<Extremum>
where
    F: FnMut(f64) -> Result<f64>,
{
    let xs = grid(lo, hi, opts)?;
    let ys = xs.iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    for i in 1..ys.len() {
        if sense.better(ys[i], ys[best]) {
            best = i;
        }
    }
    let last = xs.len() - 1;
    let bracket = (xs[best.saturating_sub(1)], xs[(best + 1).min(last)]);
    let (x, fx, evals) = golden_section(&mut f, bracket.0, bracket.1, sense, opts.tol)?;
    let (argument, value) = if sense.better(ys[best], fx) {
        (xs[best], ys[best])
    } else {
        (x, fx)
    };
    Ok(Extremum {
        argument,
        value,
        bracket,
        grid_best: (xs[best], ys[best]),
        at_boundary: best == 0 || best == last,
        evaluations: xs.len() + evals,
    })
}

/// Locates the first point where `witness` turns positive, by bisection to
/// `opts.tol` between the last non-positive and first positive grid points.
pub fn find_threshold<F>(mut witness: F, lo: f64, hi: f64, opts: &ScanOptions) -> Result<Threshold>
where
    F: FnMut(f64) -> Result<f64>,
{
    let xs = grid(lo, hi, opts)?;
    if witness(xs[0])? > 0.0 {
        return Ok(Threshold::AlreadyPositive { at: xs[0] });
    }
    let mut prev = xs[0];
    for &x in &xs[1..] {
        if witness(x)? > 0.0 {
            let (mut a, mut b) = (prev, x);
            while b - a > opts.tol {
                let mid = 0.5 * (a + b);
                if witness(mid)? > 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return Ok(Threshold::Found {
                delta: 0.5 * (a + b),
                bracket: (a, b),
            });
        }
        prev = x;
    }
    Ok(Threshold::NeverPositive)
}

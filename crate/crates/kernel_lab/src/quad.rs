//! Globally adaptive Gauss-Legendre quadrature.

use crate::KernelError;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

const ORDER: usize = 20;
const MAX_INTERVALS: usize = 20_000;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        (0..n)
            .map(|i| {
                let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

fn rule(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let (mut s, mut sa) = (0.0, 0.0);
    for &(x, w) in gauss_legendre() {
        let v = f(c + h * x);
        s += w * v;
        sa += w * v.abs();
    }
    (h * s, h.abs() * sa)
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    abs: f64,
    err: f64,
}

impl Piece {
    fn new(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Piece {
        let m = 0.5 * (a + b);
        let (whole, _) = rule(f, a, b);
        let (l, la) = rule(f, a, m);
        let (r, ra) = rule(f, m, b);
        Piece { a, b, value: l + r, abs: la + ra, err: (l + r - whole).abs() }
    }
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// `int_a^b f` to absolute tolerance `tol`, or to round-off relative to
/// `int |f|` when that is larger. Integrable endpoint singularities are fine
/// since the rule never samples the endpoints.
pub fn integrate(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, KernelError> {
    if a == b {
        return Ok(0.0);
    }
    let first = Piece::new(f, a, b);
    let (mut value, mut abs, mut err) = (first.value, first.abs, first.err);
    let mut heap = BinaryHeap::from([first]);
    loop {
        if !value.is_finite() {
            return Err(KernelError::Quadrature { a, b, residual: f64::NAN });
        }
        if err <= tol.max(1e-14 * abs) {
            // re-add to shed the drift of the running totals
            return Ok(heap.iter().map(|p| p.value).sum());
        }
        let worst = heap.pop().expect("non-empty");
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() >= MAX_INTERVALS || m <= worst.a || m >= worst.b {
            return Err(KernelError::Quadrature { a, b, residual: err });
        }
        let (l, r) = (Piece::new(f, worst.a, m), Piece::new(f, m, worst.b));
        value += l.value + r.value - worst.value;
        abs += l.abs + r.abs - worst.abs;
        err = (err + l.err + r.err - worst.err).max(0.0);
        heap.push(l);
        heap.push(r);
    }
}

/// Sum of `integrate` over consecutive breakpoints.
pub fn integrate_pieces(
    f: &impl Fn(f64) -> f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64, KernelError> {
    let pieces = breaks.len().saturating_sub(1).max(1) as f64;
    let mut s = 0.0;
    for w in breaks.windows(2) {
        s += integrate(f, w[0], w[1], tol / pieces)?;
    }
    Ok(s)
}

/// Bisection for a sign change of `f` on `[lo, hi]`; stops when the
/// bracket is narrower than `tol`. Returns the final bracket.
pub fn bisect(
    f: &impl Fn(f64) -> Result<f64, KernelError>,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64, u32), KernelError> {
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(KernelError::NoSignChange { lo, hi });
    }
    let mut it = 0;
    while hi - lo > tol && it < 200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, mid, it));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        it += 1;
    }
    Ok((lo, hi, it))
}

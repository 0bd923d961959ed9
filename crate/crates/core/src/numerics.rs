//! Adaptive Simpson quadrature and a bracketing root finder for increasing
//! functions.
//!
//! These are the only two numerical primitives the crate needs. The optimizer
//! uses [`find_root_increasing`] on the first-order optimality function; the
//! random-schedule module falls back to [`integrate`] when no closed form
//! exists. Tests use both as independent oracles.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_iter: 200,
        }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("root tolerances must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("max_iter must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 50,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        Ok(())
    }
}

/// Panels are always split at least this many times before a convergence
/// test, so a few coincident samples cannot fake convergence.
const MIN_DEPTH: u32 = 4;

/// Number of bracket doublings allowed before giving up (2^64 · hi_hint).
const MAX_EXPANSIONS: u32 = 64;

/// Adaptive Simpson estimate of the integral of `f` over `[a, b]`.
///
/// Each panel is accepted once the two-halves estimate differs from the
/// whole-panel estimate by at most 15 times its share of the tolerance; the
/// accepted value carries the Richardson correction. Panels at `max_depth` are
/// accepted as they are. The first few levels are always subdivided.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration bounds must be finite"));
    }
    if a > b {
        return Err(Error::domain(format!(
            "integration bounds reversed: {a} > {b}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };

    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let whole = simpson(a, b, fa, fm, fb);
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.abs());

    let mut total = 0.0;
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        tol,
        depth: 0,
    }];
    while let Some(p) = stack.pop() {
        let mid = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + mid);
        let rm = 0.5 * (mid + p.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(p.a, mid, p.fa, flm, p.fm);
        let right = simpson(mid, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        let roundoff = 64.0 * f64::EPSILON * (left.abs() + right.abs());
        let converged = p.depth >= MIN_DEPTH && delta.abs() <= (15.0 * p.tol).max(roundoff);
        if converged || p.depth >= cfg.max_depth || mid <= p.a || mid >= p.b {
            total += left + right + delta / 15.0;
            continue;
        }
        let half_tol = 0.5 * p.tol;
        stack.push(Panel {
            a: mid,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol: half_tol,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: mid,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol: half_tol,
            depth: p.depth + 1,
        });
    }
    Ok(total)
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Root of a function that is strictly increasing on `(lo, ∞)` and negative
/// just above `lo`.
///
/// `g(lo)` is never evaluated. The upper end of the bracket starts at
/// `hi_hint` and doubles until `g` turns positive, then the bracket is bisected
/// until its width is at most `max(abs_tol, rel_tol·|x|)`.
pub fn find_root_increasing<G>(g: G, lo: f64, hi_hint: f64, cfg: &RootConfig) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(lo.is_finite() && hi_hint.is_finite()) || hi_hint <= lo {
        return Err(Error::domain(format!(
            "bracket hint must satisfy lo < hi_hint, got lo = {lo}, hi_hint = {hi_hint}"
        )));
    }

    let mut lo = lo;
    let mut hi = hi_hint;
    let mut expansions = 0;
    loop {
        let v = g(hi);
        if v.is_nan() {
            return Err(Error::NonFinite { at: hi });
        }
        if v == 0.0 {
            return Ok(hi);
        }
        if v > 0.0 {
            break;
        }
        if expansions == MAX_EXPANSIONS {
            return Err(Error::NoFiniteRoot { reached: hi });
        }
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if !hi.is_finite() {
            return Err(Error::NoFiniteRoot { reached: lo });
        }
    }

    for _ in 0..cfg.max_iter {
        let mid = 0.5 * (lo + hi);
        let width = hi - lo;
        if width <= cfg.abs_tol.max(cfg.rel_tol * mid.abs()) || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = g(mid);
        if v.is_nan() {
            return Err(Error::NonFinite { at: mid });
        }
        if v == 0.0 {
            return Ok(mid);
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if hi - lo <= cfg.abs_tol.max(cfg.rel_tol * mid.abs()) {
        Ok(mid)
    } else {
        Err(Error::NoConvergence {
            iterations: cfg.max_iter,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        integrate(f, a, b, &QuadConfig::default()).unwrap()
    }

    #[test]
    fn integrates_identity() {
        assert!((quad(|t| t, 0.0, 2.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_square() {
        assert!((quad(|t| t * t, 0.0, 3.0) - 9.0).abs() < 1e-10);
    }

    #[test]
    fn integrates_decaying_exponential() {
        let exact = 1.0 - (-40.0f64).exp();
        assert!((quad(|t| (-t).exp(), 0.0, 40.0) - exact).abs() < 1e-9);
    }

    #[test]
    fn cubic_is_exact() {
        let f = |t: f64| 2.0 * t * t * t - t * t + 3.0 * t - 1.0;
        let anti = |t: f64| 0.5 * t.powi(4) - t.powi(3) / 3.0 + 1.5 * t * t - t;
        let v = quad(f, -1.0, 2.5);
        assert!((v - (anti(2.5) - anti(-1.0))).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(quad(|t| t.exp(), 1.5, 1.5), 0.0);
    }

    #[test]
    fn reversed_bounds_rejected() {
        let err = integrate(|t| t, 1.0, 0.0, &QuadConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn reports_non_finite_abscissa() {
        let err = integrate(|t| 1.0 / (t - 1.0), 0.0, 2.0, &QuadConfig::default()).unwrap_err();
        match err {
            Error::NonFinite { at } => assert_eq!(at, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kinked_integrand_converges() {
        let v = quad(|t| (t - 1.0).abs(), 0.0, 3.0);
        assert!((v - 2.5).abs() < 1e-9);
    }

    #[test]
    fn linear_root() {
        let x = find_root_increasing(|x| x - 2.0, 0.0, 1.0, &RootConfig::default()).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_root() {
        let x =
            find_root_increasing(|x| x * x * x - 8.0, 0.0, 1.0, &RootConfig::default()).unwrap();
        assert!((x - 2.0).abs() < 1e-11);
    }

    #[test]
    fn hint_beyond_root() {
        let x = find_root_increasing(|x| x - 0.25, 0.0, 100.0, &RootConfig::default()).unwrap();
        assert!((x - 0.25).abs() < 1e-12);
    }

    #[test]
    fn bracket_width_bound() {
        let cfg = RootConfig {
            rel_tol: 1e-6,
            abs_tol: 1e-9,
            max_iter: 200,
        };
        let x = find_root_increasing(|x| x.ln() - 3.0, 0.0, 1.0, &cfg).unwrap();
        assert!((x - 3.0f64.exp()).abs() <= 1e-6 * x);
    }

    #[test]
    fn bounded_function_has_no_finite_root() {
        let err = find_root_increasing(|x| -1.0 / (1.0 + x), 0.0, 1.0, &RootConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::NoFiniteRoot { .. }));
    }

    #[test]
    fn iteration_cap_reports_no_convergence() {
        let cfg = RootConfig {
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            max_iter: 3,
        };
        let err = find_root_increasing(|x| x - 1.234, 0.0, 1.0, &cfg).unwrap_err();
        assert_eq!(err, Error::NoConvergence { iterations: 3 });
    }

    #[test]
    fn invalid_configs_rejected() {
        let bad = RootConfig {
            max_iter: 0,
            ..RootConfig::default()
        };
        assert!(find_root_increasing(|x| x, 0.0, 1.0, &bad).is_err());
        let bad = QuadConfig {
            rel_tol: 0.0,
            ..QuadConfig::default()
        };
        assert!(integrate(|x| x, 0.0, 1.0, &bad).is_err());
        assert!(find_root_increasing(|x| x, 1.0, 1.0, &RootConfig::default()).is_err());
    }
}

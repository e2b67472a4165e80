//! Adaptive quadrature for the radial integrals.
//!
//! Recursive Simpson refinement with Richardson error control. The
//! perturbation integrands are smooth between their breakpoints (the only
//! kinks sit at the core boundary and at ramp edges), so the callers split
//! the domain there and this routine only ever sees smooth pieces.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("non-finite interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let mut out = 0.0;
    adaptive(&f, a, b, fa, fm, fb, whole, tol.max(1e-15), MAX_DEPTH, &mut out)?;
    Ok(out)
}

/// Integrate over `[a, b]` splitting first at the interior `breakpoints`.
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<f64> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&c| c > a && c < b)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let mut lo = a;
    let mut total = 0.0;
    for c in cuts.into_iter().chain(std::iter::once(b)) {
        total += integrate(&f, lo, c, tol)?;
        lo = c;
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    acc: &mut f64,
) -> Result<()> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = (left + right - whole) / 15.0;
    if err.abs() <= tol || (b - a) < 1e-14 * (a.abs() + b.abs() + 1.0) {
        *acc += left + right + err;
        return Ok(());
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure(format!(
            "refinement limit reached on [{a}, {b}], err estimate {err}"
        )));
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc)?;
    adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc)
}

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Brent's method on a sign-changing bracket.
///
/// Stops when `|f(x)| <= tol` or the bracket is narrower than `tol`.
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    try_find_root_bracketed(|x| Ok(f(x)), lo, hi, tol)
}

/// Same as [`find_root_bracketed`] for functions that can fail.
pub fn try_find_root_bracketed<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid("root finding needs finite limits and tol > 0"));
    }
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if !(fa * fb < 0.0) {
        return Err(Error::InvalidBracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    // Orient so the result does not depend on which end is positive.
    if fa > 0.0 {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NonConvergence {
        context: "bracketed root finding",
        estimate: b,
        error: (c - b).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let x = find_root_bracketed(|x| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_root_of_two() {
        let x = find_root_bracketed(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn no_sign_change_is_rejected() {
        let err = find_root_bracketed(|x| x * x + 1.0, 0.0, 2.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { .. }));
    }

    #[test]
    fn endpoint_orientation_does_not_matter() {
        let up = find_root_bracketed(|x| x.powi(3) - 0.3, 0.0, 1.0, 1e-13).unwrap();
        let down = find_root_bracketed(|x| 0.3 - x.powi(3), 0.0, 1.0, 1e-13).unwrap();
        let swapped = find_root_bracketed(|x| x.powi(3) - 0.3, 1.0, 0.0, 1e-13).unwrap();
        assert!((up - down).abs() < 1e-12);
        assert!((up - swapped).abs() < 1e-12);
    }

    #[test]
    fn errors_from_the_function_propagate() {
        let err = try_find_root_bracketed(|_| Err(Error::NoCrossing), 0.0, 1.0, 1e-6).unwrap_err();
        assert!(matches!(err, Error::NoCrossing));
    }
}

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::log_gamma;

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// Upper incomplete gamma `Gamma(a, x)` for `Re a > 0` and real `x > 0`.
///
/// Small `x` goes through the lower series, large `x` through the
/// continued fraction evaluated with the modified Lentz method.
pub fn upper_incomplete_gamma(a: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("upper_incomplete_gamma", format!("x = {x} must be positive")));
    }
    if a.re <= 0.0 {
        return Err(Error::domain(
            "upper_incomplete_gamma",
            format!("Re a = {} must be positive", a.re),
        ));
    }
    let prefactor_log = a * x.ln() - x;
    if x < a.re + 1.0 {
        let mut term = a.inv();
        let mut sum = term;
        for k in 1..MAX_ITER {
            term *= x / (a + k as f64);
            sum += term;
            if term.norm() < EPS * sum.norm() {
                return Ok(log_gamma(a)?.exp() - (prefactor_log.exp() * sum));
            }
        }
        Err(Error::domain("upper_incomplete_gamma", "series did not converge"))
    } else {
        let mut b = Complex64::new(x + 1.0, 0.0) - a;
        let mut c = Complex64::new(1.0 / TINY, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (Complex64::new(i as f64, 0.0) - a);
            b += 2.0;
            d = an * d + b;
            if d.norm() < TINY {
                d = Complex64::new(TINY, 0.0);
            }
            c = b + an / c;
            if c.norm() < TINY {
                c = Complex64::new(TINY, 0.0);
            }
            d = d.inv();
            let del = d * c;
            h *= del;
            if (del - 1.0).norm() < EPS {
                return Ok((prefactor_log.exp()) * h);
            }
        }
        Err(Error::domain("upper_incomplete_gamma", "continued fraction did not converge"))
    }
}

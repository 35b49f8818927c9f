use num_complex::Complex64;

use super::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::gamma::bernoulli_even;

const BERNOULLI_TERMS: usize = 20;

/// `zeta(s, alpha)` by Euler-Maclaurin with `cutoff` explicit terms.
pub fn hurwitz_zeta_with_cutoff(s: Complex64, alpha: f64, cutoff: usize) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("hurwitz_zeta", "pole at s = 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain("hurwitz_zeta", format!("alpha = {alpha} not in (0, 1]")));
    }
    let mut head = Complex64::new(0.0, 0.0);
    for k in (0..cutoff).rev() {
        head += Complex64::new(k as f64 + alpha, 0.0).powc(-s);
    }
    let x = cutoff as f64 + alpha;
    let x_c = Complex64::new(x, 0.0);
    let x_pow = x_c.powc(-s);
    let mut tail = x_c * x_pow / (s - 1.0) + x_pow * 0.5;
    // sum_j B_2j/(2j)! s(s+1)...(s+2j-2) x^{-s-2j+1}
    let mut rising = s;
    let mut power = x_pow / x;
    let mut factorial = 2.0;
    for j in 1..=BERNOULLI_TERMS {
        let term = rising * power * (bernoulli_even(j) / factorial);
        tail += term;
        let jj = 2 * j as u32;
        rising = rising * (s + f64::from(jj - 1)) * (s + f64::from(jj));
        power /= x * x;
        factorial *= f64::from(jj + 1) * f64::from(jj + 2);
    }
    Ok(head + tail)
}

/// `zeta(s, alpha)`, cutoff chosen from `|s|`.
pub fn hurwitz_zeta(s: Complex64, alpha: f64) -> Result<Complex64> {
    let cutoff = (2.0 * s.norm()).max(40.0).ceil() as usize;
    hurwitz_zeta_with_cutoff(s, alpha, cutoff)
}

/// `L(s, chi) = q^{-s} sum_{a=1}^q chi(a) zeta(s, a/q)`.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::domain(
            "dirichlet_l",
            "principal character: L(s, chi) has a pole at s = 1",
        ));
    }
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let v = chi.value(a);
        if v.norm() == 0.0 {
            continue;
        }
        acc += v * hurwitz_zeta(s, a as f64 / q as f64)?;
    }
    Ok(acc * Complex64::new(q as f64, 0.0).powc(-s))
}

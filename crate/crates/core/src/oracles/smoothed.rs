use std::f64::consts::PI;

use num_complex::Complex64;

use super::incomplete_gamma::upper_incomplete_gamma;
use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use crate::model::LFunctionInstance;

/// Gamma factor written as `A Q^s Gamma(alpha s + beta)`.
#[derive(Debug, Clone, Copy)]
struct SingleGamma {
    log_a: Complex64,
    log_a_dual: Complex64,
    q: f64,
    alpha: f64,
    beta: Complex64,
}

fn single_gamma(inst: &LFunctionInstance) -> Result<SingleGamma> {
    let n = inst.conductor as f64;
    match inst.arch.mu.as_slice() {
        [mu] => Ok(SingleGamma {
            log_a: Complex64::new(0.0, 0.0),
            log_a_dual: Complex64::new(0.0, 0.0),
            q: (n / PI).sqrt(),
            alpha: 0.5,
            beta: mu * 0.5,
        }),
        [mu1, mu2] if (mu2 - mu1 - 1.0).norm() < 1e-12 => {
            // Legendre duplication merges the pair into Gamma(s + mu1)
            let log2 = 2f64.ln();
            let half_ln_pi = 0.5 * PI.ln();
            Ok(SingleGamma {
                log_a: (1.0 - mu1) * log2 + half_ln_pi,
                log_a_dual: (1.0 - mu1.conj()) * log2 + half_ln_pi,
                q: n.sqrt() / (2.0 * PI),
                alpha: 1.0,
                beta: *mu1,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "smoothed-sum oracle needs one gamma factor or a pair with mu_2 = mu_1 + 1 ({} given)",
            inst.arch.mu.len()
        ))),
    }
}

/// `L(1/2)` by the classical incomplete-gamma smoothing of the functional
/// equation. Independent of the Mellin-integral cutoff; used as a reference
/// for degree one and for pairs of gamma factors one apart.
pub fn smoothed_sum_oracle(inst: &LFunctionInstance) -> Result<Complex64> {
    let g = single_gamma(inst)?;
    if g.beta.im.abs() > 10.0 {
        return Err(Error::Unsupported(
            "spectral parameters with |Im| > 10 lose all precision to cancellation".into(),
        ));
    }
    let a = g.alpha * 0.5 + g.beta;
    let a_dual = g.alpha * 0.5 + g.beta.conj();
    let log_norm = log_gamma(a)?;
    let dual_scale = inst.root_number * (g.log_a_dual - g.log_a).exp();
    let cap = 60.0 + 2.0 * a.norm();
    let mut direct = Complex64::new(0.0, 0.0);
    let mut dual = Complex64::new(0.0, 0.0);
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let x = (nf / g.q).powf(1.0 / g.alpha);
        if x > cap {
            break;
        }
        let coeff = inst.coefficients.get(n)?;
        let twist = Complex64::from_polar(1.0, -inst.twist * nf.ln());
        let an = coeff * twist;
        let weight = nf.sqrt().recip();
        let log_norm_inv = (-log_norm).exp();
        direct += an * upper_incomplete_gamma(a, x)? * log_norm_inv * weight;
        dual += an.conj() * upper_incomplete_gamma(a_dual, x)? * log_norm_inv * weight;
        n += 1;
    }
    Ok(direct + dual_scale * dual)
}

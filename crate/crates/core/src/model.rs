//! L-function instances: degree data, conductor, root number, Archimedean
//! parameters and a finite list of Dirichlet coefficients.
//!
//! Coefficients are in the unitary (analytic) normalization throughout: the
//! functional equation relates `s` and `1 - s`, so the central point is
//! `s = 1/2` and a Ramanujan-sized coefficient has modulus about 1.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lower bound imposed on `Re mu_j` during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdmissibilityBound {
    /// `Re mu_j >= 1/(m^2+1) - 1/2`, known unconditionally.
    #[default]
    Unconditional,
    /// `Re mu_j >= 0`, i.e. tempered at infinity.
    Tempered,
}

impl AdmissibilityBound {
    /// Lower bound `theta_low` for `Re mu_j` on GL(m).
    pub fn theta_low(self, m: u32) -> f64 {
        match self {
            AdmissibilityBound::Unconditional => 1.0 / (f64::from(m) * f64::from(m) + 1.0) - 0.5,
            AdmissibilityBound::Tempered => 0.0,
        }
    }
}

const ADMISSIBILITY_SLACK: f64 = 1e-12;
const UNITARITY_TOL: f64 = 1e-12;

/// Finite Dirichlet coefficient list, indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSource {
    a: Vec<Complex64>,
}

impl CoefficientSource {
    pub fn new(a: Vec<Complex64>) -> Self {
        CoefficientSource { a }
    }

    pub fn from_real(a: impl IntoIterator<Item = f64>) -> Self {
        CoefficientSource::new(a.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
    }

    pub fn declared_length(&self) -> usize {
        self.a.len()
    }

    /// `a_n`; requests beyond the declared length are an error.
    pub fn get(&self, n: usize) -> Result<Complex64> {
        if n == 0 || n > self.a.len() {
            return Err(Error::CoefficientExhaustion {
                requested: n,
                available: self.a.len(),
            });
        }
        Ok(self.a[n - 1])
    }

    /// `a_1, ..., a_len`.
    pub fn prefix(&self, len: usize) -> Result<&[Complex64]> {
        if len > self.a.len() {
            return Err(Error::CoefficientExhaustion {
                requested: len,
                available: self.a.len(),
            });
        }
        Ok(&self.a[..len])
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.a
    }
}

/// Archimedean parameters `mu_j`, `j = 1..md`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchimedeanParams {
    pub mu: Vec<Complex64>,
}

impl ArchimedeanParams {
    pub fn new(mu: Vec<Complex64>) -> Self {
        ArchimedeanParams { mu }
    }

    /// Parameters of the contragredient: every `mu_j` conjugated.
    pub fn conj(&self) -> Self {
        ArchimedeanParams {
            mu: self.mu.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `1/4 + mu_j/2` for each j.
    pub fn central_shifts(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.mu.iter().map(|&mu| 0.25 + mu * 0.5)
    }
}

/// A principal L-function described by its functional equation data.
#[derive(Debug, Clone, PartialEq)]
pub struct LFunctionInstance {
    pub label: String,
    /// GL rank.
    pub m: u32,
    /// Degree of the number field.
    pub d: u32,
    pub conductor: u64,
    pub root_number: Complex64,
    pub arch: ArchimedeanParams,
    pub coefficients: CoefficientSource,
    /// Accumulated shift `t` of the twist by `|det|^{it}`. The coefficient
    /// list is never rewritten; evaluators reweight `a_n` by `n^{-it}`.
    pub twist: f64,
    pub bound: AdmissibilityBound,
}

impl LFunctionInstance {
    /// Builds and validates an untwisted instance with the unconditional
    /// admissibility bound.
    pub fn new(
        label: impl Into<String>,
        m: u32,
        d: u32,
        conductor: u64,
        root_number: Complex64,
        mu: Vec<Complex64>,
        coefficients: CoefficientSource,
    ) -> Result<Self> {
        let inst = LFunctionInstance {
            label: label.into(),
            m,
            d,
            conductor,
            root_number,
            arch: ArchimedeanParams::new(mu),
            coefficients,
            twist: 0.0,
            bound: AdmissibilityBound::Unconditional,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Same instance validated against a different admissibility bound.
    pub fn with_bound(mut self, bound: AdmissibilityBound) -> Result<Self> {
        self.bound = bound;
        self.validate()?;
        Ok(self)
    }

    /// Checks every structural invariant, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.d == 0 {
            return Err(Error::Invalid(format!(
                "degree data must be positive, got m = {}, d = {}",
                self.m, self.d
            )));
        }
        if self.conductor == 0 {
            return Err(Error::Invalid("conductor N must be at least 1".into()));
        }
        if !self.twist.is_finite() {
            return Err(Error::Invalid("twist must be finite".into()));
        }
        let modulus = self.root_number.norm();
        if !((modulus - 1.0).abs() <= UNITARITY_TOL) {
            return Err(Error::RootNumber { modulus });
        }
        let expected = self.degree();
        if self.arch.mu.len() != expected {
            return Err(Error::Invalid(format!(
                "expected m*d = {expected} archimedean parameters, got {}",
                self.arch.mu.len()
            )));
        }
        let theta = self.theta_low();
        for (j, mu) in self.arch.mu.iter().enumerate() {
            let index = j + 1;
            if !(mu.re.is_finite() && mu.im.is_finite()) {
                return Err(Error::Invalid(format!("mu_{index} is not finite")));
            }
            if mu.re < theta - ADMISSIBILITY_SLACK {
                return Err(Error::Admissibility {
                    index,
                    re_mu: mu.re,
                    bound: theta,
                });
            }
            if *mu == Complex64::new(-0.5, 0.0) {
                return Err(Error::CentralPole { index });
            }
        }
        if let Some(n) = self
            .coefficients
            .as_slice()
            .iter()
            .position(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(Error::Invalid(format!("coefficient a_{} is not finite", n + 1)));
        }
        Ok(())
    }

    /// `m * d`, the number of gamma factors.
    pub fn degree(&self) -> usize {
        (self.m as usize) * (self.d as usize)
    }

    pub fn theta_low(&self) -> f64 {
        self.bound.theta_low(self.m)
    }

    /// Contragredient: conjugated root number, parameters and coefficients.
    pub fn contragredient(&self) -> Self {
        LFunctionInstance {
            label: format!("{}~", self.label),
            root_number: self.root_number.conj(),
            arch: self.arch.conj(),
            coefficients: CoefficientSource::new(
                self.coefficients.as_slice().iter().map(|a| a.conj()).collect(),
            ),
            twist: -self.twist,
            ..self.clone()
        }
    }
}

/// Analytic conductor `C = N / pi^{md} * prod_j |1/4 + mu_j/2|`.
pub fn analytic_conductor(inst: &LFunctionInstance) -> f64 {
    let log_c = (inst.conductor as f64).ln() - inst.degree() as f64 * PI.ln()
        + inst.arch.central_shifts().map(|w| w.norm().ln()).sum::<f64>();
    log_c.exp()
}

/// `eta = min_j |1/4 + mu_j/2|`.
pub fn eta_min(inst: &LFunctionInstance) -> f64 {
    inst.arch
        .central_shifts()
        .map(|w| w.norm())
        .fold(f64::INFINITY, f64::min)
}

/// Twist by `|det|^{it}`: every `mu_j` moves to `mu_j + it` and the root
/// number picks up `N^{-it} pi^{i md t}`. The power of `pi` appears because
/// the archimedean factors carry `pi^{-s/2}` rather than `pi^{-(s+mu_j)/2}`.
/// The conductor and the stored coefficients are unchanged.
pub fn twist(inst: &LFunctionInstance, t: f64) -> Result<LFunctionInstance> {
    let log_phase = -(inst.conductor as f64).ln() + inst.degree() as f64 * PI.ln();
    let phase = Complex64::from_polar(1.0, t * log_phase);
    let shift = Complex64::new(0.0, t);
    let twisted = LFunctionInstance {
        root_number: inst.root_number * phase,
        arch: ArchimedeanParams::new(inst.arch.mu.iter().map(|&mu| mu + shift).collect()),
        twist: inst.twist + t,
        ..inst.clone()
    };
    twisted.validate()?;
    Ok(twisted)
}

/// Average-size diagnostic for the coefficients:
/// `sum_{n <= x} |a_n|` against `x^{1+eps}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientGrowth {
    pub partial_sum: f64,
    pub reference: f64,
    pub ratio: f64,
    /// `a_1 != 1`. Informational only.
    pub leading_not_one: bool,
}

pub fn coefficient_growth_diagnostic(
    src: &CoefficientSource,
    x: usize,
    eps: f64,
) -> Result<CoefficientGrowth> {
    let prefix = src.prefix(x)?;
    let abs: Vec<f64> = prefix.iter().map(|a| a.norm()).collect();
    let partial_sum = crate::summation::pairwise_sum(&abs);
    let reference = (x as f64).powf(1.0 + eps);
    let ratio = if x == 0 { 0.0 } else { partial_sum / reference };
    let leading_not_one = src
        .as_slice()
        .first()
        .is_some_and(|a| (*a - Complex64::new(1.0, 0.0)).norm() > 1e-12);
    Ok(CoefficientGrowth {
        partial_sum,
        reference,
        ratio,
        leading_not_one,
    })
}

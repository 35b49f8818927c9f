//! Built-in instances referenced by name from instance documents and the
//! command line.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{twist, CoefficientSource, LFunctionInstance};
use crate::oracles::{delta_coefficients, gauss_sum_root_number, DirichletCharacter};

/// Default number of coefficients generated for Dirichlet fixtures.
pub const DIRICHLET_DEFAULT_LENGTH: usize = 20_000;
/// Default number of coefficients generated for the discriminant form.
pub const DELTA_DEFAULT_LENGTH: usize = 2_000;
/// Largest coefficient list a built-in fixture will generate.
pub const MAX_LENGTH: usize = 1_000_000;
/// Largest list for the discriminant form; its expansion is quadratic-ish.
pub const DELTA_MAX_LENGTH: usize = 100_000;

pub const BUILTIN_NAMES: [&str; 10] = [
    "dirichlet-3",
    "dirichlet-4",
    "dirichlet-5",
    "dirichlet-7",
    "dirichlet-8",
    "dirichlet-11",
    "dirichlet-5-complex",
    "dirichlet-5-twist-100",
    "delta",
    "trivial",
];

/// The fundamental discriminant behind each quadratic fixture.
fn discriminant(q: u64) -> Option<i64> {
    match q {
        3 => Some(-3),
        4 => Some(-4),
        5 => Some(5),
        7 => Some(-7),
        8 => Some(8),
        11 => Some(-11),
        _ => None,
    }
}

/// Instance attached to a primitive Dirichlet character.
pub fn dirichlet_instance(
    label: &str,
    chi: &DirichletCharacter,
    length: usize,
) -> Result<LFunctionInstance> {
    let kappa = gauss_sum_root_number(chi)?;
    let coeffs = (1..=length as u64).map(|n| chi.value(n)).collect();
    LFunctionInstance::new(
        label,
        1,
        1,
        chi.modulus(),
        kappa,
        vec![Complex64::new(f64::from(chi.delta()), 0.0)],
        CoefficientSource::new(coeffs),
    )
}

/// The character behind a Dirichlet fixture name, if it has one.
pub fn builtin_character(name: &str) -> Option<DirichletCharacter> {
    match name {
        "dirichlet-5-complex" => DirichletCharacter::from_primitive_root(5, 2, 1).ok(),
        "dirichlet-5-twist-100" => DirichletCharacter::kronecker(5).ok(),
        _ => {
            let q: u64 = name.strip_prefix("dirichlet-")?.parse().ok()?;
            DirichletCharacter::kronecker(discriminant(q)?).ok()
        }
    }
}

/// The discriminant form `Delta` of weight 12 and level 1, unitarily
/// normalized.
pub fn delta_instance(length: usize) -> Result<LFunctionInstance> {
    let coeffs = delta_coefficients(length)
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    LFunctionInstance::new(
        "delta",
        2,
        1,
        1,
        Complex64::new(1.0, 0.0),
        vec![Complex64::new(5.5, 0.0), Complex64::new(6.5, 0.0)],
        CoefficientSource::new(coeffs),
    )
}

/// Builds a fixture by name. `length` overrides the default coefficient
/// count; it is ignored by `trivial`, which carries only `a_1 = 1`.
pub fn builtin(name: &str, length: Option<usize>) -> Result<LFunctionInstance> {
    let limit = if name == "delta" { DELTA_MAX_LENGTH } else { MAX_LENGTH };
    if let Some(len) = length {
        if len == 0 || len > limit {
            return Err(Error::Invalid(format!(
                "builtin length must be in 1..={limit}, got {len}"
            )));
        }
    }
    match name {
        "delta" => delta_instance(length.unwrap_or(DELTA_DEFAULT_LENGTH)),
        "trivial" => LFunctionInstance::new(
            "trivial",
            1,
            1,
            1,
            Complex64::new(1.0, 0.0),
            vec![Complex64::new(0.0, 0.0)],
            CoefficientSource::from_real([1.0]),
        ),
        "dirichlet-5-twist-100" => {
            let chi = builtin_character(name).expect("fixture character");
            let base = dirichlet_instance(name, &chi, length.unwrap_or(DIRICHLET_DEFAULT_LENGTH))?;
            twist(&base, 100.0)
        }
        _ => {
            let chi = builtin_character(name)
                .ok_or_else(|| Error::Invalid(format!("unknown builtin fixture '{name}'")))?;
            dirichlet_instance(name, &chi, length.unwrap_or(DIRICHLET_DEFAULT_LENGTH))
        }
    }
}

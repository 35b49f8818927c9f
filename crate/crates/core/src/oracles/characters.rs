use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character given by its values on `1..=q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// `values[a - 1] = chi(a)`; zero where `gcd(a, q) > 1`.
    values: Vec<Complex64>,
    parity: Parity,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const VALUE_TOL: f64 = 1e-12;

impl DirichletCharacter {
    /// Builds a character from its value table and checks complete
    /// multiplicativity, unit values on units, and zeros elsewhere.
    pub fn from_table(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        if modulus < 1 || values.len() as u64 != modulus {
            return Err(Error::Invalid(format!(
                "character table for modulus {modulus} must have {modulus} entries"
            )));
        }
        let q = modulus;
        let at = |a: u64| values[((a - 1) % q) as usize];
        for a in 1..=q {
            let v = at(a);
            if gcd(a, q) == 1 {
                if (v.norm() - 1.0).abs() > VALUE_TOL {
                    return Err(Error::Invalid(format!("chi({a}) = {v} is not a root of unity")));
                }
            } else if v.norm() > VALUE_TOL {
                return Err(Error::Invalid(format!("chi({a}) must vanish, gcd({a}, {q}) > 1")));
            }
        }
        for a in 1..=q {
            for b in 1..=q {
                let ab = (a * b - 1) % q + 1;
                if (at(a) * at(b) - at(ab)).norm() > VALUE_TOL {
                    return Err(Error::Invalid(format!("chi is not multiplicative at ({a}, {b})")));
                }
            }
        }
        let minus_one = at(q.max(2) - 1);
        let parity = if q <= 2 || (minus_one - 1.0).norm() < VALUE_TOL {
            Parity::Even
        } else {
            Parity::Odd
        };
        Ok(DirichletCharacter {
            modulus,
            values,
            parity,
        })
    }

    /// Kronecker symbol `(D/.)` for a fundamental discriminant `D`; a
    /// primitive real character of modulus `|D|`.
    pub fn kronecker(disc: i64) -> Result<Self> {
        if disc == 0 || disc == 1 {
            return Err(Error::Invalid(format!("{disc} is not a nontrivial discriminant")));
        }
        let q = disc.unsigned_abs();
        let values = (1..=q)
            .map(|n| Complex64::new(f64::from(kronecker_symbol(disc, n)), 0.0))
            .collect();
        let chi = DirichletCharacter::from_table(q, values)?;
        if !chi.is_primitive() {
            return Err(Error::Invalid(format!("{disc} is not a fundamental discriminant")));
        }
        Ok(chi)
    }

    /// Character modulo an odd prime `p` with `chi(g) = exp(2 pi i k / (p-1))`
    /// for the primitive root `g`.
    pub fn from_primitive_root(p: u64, g: u64, k: u64) -> Result<Self> {
        let order = p - 1;
        let mut values = vec![Complex64::new(0.0, 0.0); p as usize];
        let mut power = 1u64;
        for e in 0..order {
            if values[(power - 1) as usize] != Complex64::new(0.0, 0.0) {
                return Err(Error::Invalid(format!("{g} is not a primitive root mod {p}")));
            }
            let angle = 2.0 * PI * ((k * e) % order) as f64 / order as f64;
            values[(power - 1) as usize] = Complex64::from_polar(1.0, angle);
            power = power * g % p;
        }
        DirichletCharacter::from_table(p, values)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `chi(n)` for any `n >= 1`.
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[((n - 1) % self.modulus) as usize]
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|z| z.conj()).collect(),
            parity: self.parity,
        }
    }

    pub fn is_principal(&self) -> bool {
        (1..=self.modulus)
            .filter(|&a| gcd(a, self.modulus) == 1)
            .all(|a| (self.value(a) - 1.0).norm() < VALUE_TOL)
    }

    /// Not induced from any proper divisor of the modulus.
    pub fn is_primitive(&self) -> bool {
        let q = self.modulus;
        if q == 1 {
            return true;
        }
        (1..q).filter(|d| q % d == 0).all(|d| {
            // induced from d iff chi(a) = 1 whenever a = 1 mod d, gcd(a,q) = 1
            (1..=q)
                .filter(|&a| gcd(a, q) == 1 && a % d == 1 % d)
                .any(|a| (self.value(a) - 1.0).norm() > VALUE_TOL)
        })
    }

    /// 0 for even and 1 for odd characters; also the archimedean parameter.
    pub fn delta(&self) -> u32 {
        match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
fn jacobi(a: i64, n: u64) -> i32 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for `n >= 1`.
pub fn kronecker_symbol(d: i64, mut n: u64) -> i32 {
    let mut result = 1;
    while n % 2 == 0 {
        n /= 2;
        match d.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(d, n)
}

/// `kappa = tau(chi) / (i^delta sqrt(q))`, `tau(chi) = sum_a chi(a) e(a/q)`.
pub fn gauss_sum_root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::Invalid(format!(
            "character mod {} is not primitive",
            chi.modulus
        )));
    }
    let q = chi.modulus;
    let tau: Complex64 = (1..=q)
        .map(|a| chi.value(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64))
        .sum();
    let i_delta = match chi.parity {
        Parity::Even => Complex64::new(1.0, 0.0),
        Parity::Odd => Complex64::new(0.0, 1.0),
    };
    Ok(tau / (i_delta * (q as f64).sqrt()))
}

use rayon::prelude::*;

/// Ramanujan `tau(n)` for `n = 1..=n_max`, exact; `result[n - 1] = tau(n)`.
///
/// Uses `Delta = q prod (1 - q^k)^24` with the cube of the Euler product
/// given by Jacobi's identity, a sparse series, raised to the eighth power.
pub fn ramanujan_tau(n_max: usize) -> Vec<i128> {
    if n_max == 0 {
        return Vec::new();
    }
    // coefficients of q^0 .. q^{n_max - 1} in prod (1 - q^k)^24
    let len = n_max;
    let mut sparse: Vec<(usize, i128)> = Vec::new();
    let mut j = 0usize;
    loop {
        let e = j * (j + 1) / 2;
        if e >= len {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        sparse.push((e, sign * (2 * j as i128 + 1)));
        j += 1;
    }
    let mut dense = vec![0i128; len];
    for &(e, c) in &sparse {
        dense[e] = c;
    }
    for _ in 1..8 {
        dense = (0..len)
            .into_par_iter()
            .map(|n| {
                sparse
                    .iter()
                    .take_while(|&&(e, _)| e <= n)
                    .map(|&(e, c)| c * dense[n - e])
                    .sum()
            })
            .collect();
    }
    dense
}

/// Normalized coefficients `tau(n) / n^{11/2}` of the discriminant form.
pub fn delta_coefficients(n_max: usize) -> Vec<f64> {
    ramanujan_tau(n_max)
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let n = (i + 1) as f64;
            t as f64 / n.powf(5.5)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n_max: usize) -> Vec<i128> {
        let mut poly = vec![0i128; n_max];
        poly[0] = 1;
        for k in 1..n_max {
            for _ in 0..24 {
                for i in (k..n_max).rev() {
                    poly[i] -= poly[i - k];
                }
            }
        }
        poly
    }

    #[test]
    fn matches_direct_expansion() {
        assert_eq!(ramanujan_tau(40), brute_force(40));
    }

    #[test]
    fn known_values() {
        let t = ramanujan_tau(7);
        assert_eq!(t, vec![1, -24, 252, -1472, 4830, -6048, -16744]);
    }

    #[test]
    fn hecke_relations() {
        let t = ramanujan_tau(2000);
        let tau = |n: usize| t[n - 1];
        assert_eq!(tau(6), tau(2) * tau(3));
        assert_eq!(tau(35), tau(5) * tau(7));
        for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let p11 = (p as i128).pow(11);
            assert_eq!(tau(p * p), tau(p) * tau(p) - p11, "p = {p}");
            if p * p * p <= 2000 {
                assert_eq!(tau(p * p * p), tau(p) * tau(p * p) - p11 * tau(p));
            }
        }
    }

    #[test]
    fn deligne_bound() {
        let a = delta_coefficients(1000);
        for (i, an) in a.iter().enumerate() {
            let n = i + 1;
            let divisors = (1..=n).filter(|d| n % d == 0).count() as f64;
            assert!(an.abs() <= divisors + 1e-9, "n = {n}: {an}");
        }
    }
}

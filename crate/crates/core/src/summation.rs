//! Deterministic compensated summation.
//!
//! Sums are reduced pairwise over fixed-size blocks, each block accumulated
//! with Neumaier's compensation. The reduction tree depends only on the
//! input length, so reruns are bit-identical regardless of thread count.

use num_complex::Complex64;

const BLOCK: usize = 64;

#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn total(self) -> f64 {
        self.sum + self.comp
    }
}

/// Pairwise sum with compensated leaves.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        let mut acc = Neumaier::default();
        for &v in values {
            acc.add(v);
        }
        return acc.total();
    }
    let mid = values.len() / 2;
    let left = pairwise_sum(&values[..mid]);
    let right = pairwise_sum(&values[mid..]);
    let mut acc = Neumaier::default();
    acc.add(left);
    acc.add(right);
    acc.total()
}

/// Complex pairwise sum, real and imaginary parts reduced independently.
pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    let re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let im: Vec<f64> = values.iter().map(|z| z.im).collect();
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

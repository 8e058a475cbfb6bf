//! Shared helpers for the integration suites: a small deterministic RNG and
//! generators for random forms, metrics and orthogonal maps.
#![allow(dead_code)] // each test target compiles its own copy

use g2forms::forms::{KForm, LinearMap, Metric, Vector};

/// SplitMix64: tiny, deterministic, good enough for test sampling.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    pub fn form(&mut self, dim: usize, degree: usize) -> KForm {
        let mut f = KForm::zero(dim, degree);
        for c in f.coefficients_mut() {
            *c = self.unit();
        }
        f
    }

    pub fn vector(&mut self, dim: usize) -> Vector {
        Vector::new((0..dim).map(|_| self.unit()).collect()).unwrap()
    }

    /// Random symmetric positive-definite metric, reasonably conditioned.
    pub fn spd_metric(&mut self, n: usize) -> Metric {
        let a: Vec<f64> = (0..n * n).map(|_| self.unit()).collect();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j { 0.75 } else { 0.0 };
                for k in 0..n {
                    s += a[k * n + i] * a[k * n + j] / n as f64;
                }
                m[i * n + j] = s;
            }
        }
        Metric::new(n, m).expect("spd")
    }

    /// Random orthogonal matrix by Gram-Schmidt of a random one.
    pub fn orthogonal(&mut self, n: usize) -> LinearMap {
        loop {
            let cols: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| self.unit()).collect())
                .collect();
            let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(n);
            let mut ok = true;
            for col in cols {
                let mut v = col;
                for w in &ortho {
                    let dot: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
                    for (vi, wi) in v.iter_mut().zip(w) {
                        *vi -= dot * wi;
                    }
                }
                let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    ok = false;
                    break;
                }
                for vi in v.iter_mut() {
                    *vi /= norm;
                }
                ortho.push(v);
            }
            if !ok {
                continue;
            }
            let mut entries = vec![0.0; n * n];
            for (j, col) in ortho.iter().enumerate() {
                for i in 0..n {
                    entries[i * n + j] = col[i];
                }
            }
            return LinearMap::new(n, n, entries).unwrap();
        }
    }
}

//! Bivariate power series in (t1, t2) truncated at degree `d1` in t1 and
//! `d2` in t2. Enough arithmetic to read off mixed partial derivatives at
//! the origin of products and compositions of simple functions.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series2 {
    d1: usize,
    d2: usize,
    c: Vec<f64>,
}

impl Series2 {
    pub fn zero(d1: usize, d2: usize) -> Self {
        Series2 { d1, d2, c: vec![0.0; (d1 + 1) * (d2 + 1)] }
    }

    pub fn constant(d1: usize, d2: usize, v: f64) -> Self {
        let mut s = Self::zero(d1, d2);
        s.c[0] = v;
        s
    }

    /// a*t1 + b*t2
    pub fn linear(d1: usize, d2: usize, a: f64, b: f64) -> Self {
        let mut s = Self::zero(d1, d2);
        s.set(1, 0, a);
        s.set(0, 1, b);
        s
    }

    /// p*t1^2 + q*t1*t2 + r*t2^2
    pub fn quadratic(d1: usize, d2: usize, p: f64, q: f64, r: f64) -> Self {
        let mut s = Self::zero(d1, d2);
        s.set(2, 0, p);
        s.set(1, 1, q);
        s.set(0, 2, r);
        s
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.d2 + 1) + j
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i > self.d1 || j > self.d2 {
            0.0
        } else {
            self.c[self.idx(i, j)]
        }
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        if i <= self.d1 && j <= self.d2 {
            let k = self.idx(i, j);
            self.c[k] = v;
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        Series2 { d1: self.d1, d2: self.d2, c: self.c.iter().map(|x| a * x).collect() }
    }

    fn axpy(&mut self, a: f64, other: &Series2) {
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            *x += a * y;
        }
    }

    /// sum_k coeffs[k] * self^k. Requires a vanishing constant term, so the
    /// sum terminates at k = d1 + d2.
    pub fn compose(&self, coeffs: impl Fn(usize) -> f64) -> Self {
        debug_assert!(self.c[0] == 0.0);
        let kmax = self.d1 + self.d2;
        let mut out = Series2::constant(self.d1, self.d2, coeffs(0));
        let mut power = Series2::constant(self.d1, self.d2, 1.0);
        for k in 1..=kmax {
            power = &power * self;
            let a = coeffs(k);
            if a != 0.0 {
                out.axpy(a, &power);
            }
        }
        out
    }

    pub fn exp(&self) -> Self {
        let c0 = self.c[0];
        let mut shifted = self.clone();
        shifted.c[0] = 0.0;
        let mut inv_fact = vec![1.0; self.d1 + self.d2 + 1];
        for k in 1..inv_fact.len() {
            inv_fact[k] = inv_fact[k - 1] / k as f64;
        }
        shifted.compose(|k| inv_fact[k]).scale(c0.exp())
    }

    /// (cos(self), sin(self)) for a series with vanishing constant term.
    pub fn cos_sin(&self) -> (Self, Self) {
        let kmax = self.d1 + self.d2;
        let mut inv_fact = vec![1.0; kmax + 1];
        for k in 1..=kmax {
            inv_fact[k] = inv_fact[k - 1] / k as f64;
        }
        let cos = self.compose(|k| match k % 4 {
            0 => inv_fact[k],
            2 => -inv_fact[k],
            _ => 0.0,
        });
        let sin = self.compose(|k| match k % 4 {
            1 => inv_fact[k],
            3 => -inv_fact[k],
            _ => 0.0,
        });
        (cos, sin)
    }
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        debug_assert!(self.d1 == rhs.d1 && self.d2 == rhs.d2);
        let mut out = Series2::zero(self.d1, self.d2);
        for i in 0..=self.d1 {
            for j in 0..=self.d2 {
                let a = self.c[self.idx(i, j)];
                if a == 0.0 {
                    continue;
                }
                for k in 0..=(self.d1 - i) {
                    for l in 0..=(self.d2 - j) {
                        let b = rhs.c[rhs.idx(k, l)];
                        let o = out.idx(i + k, j + l);
                        out.c[o] += a * b;
                    }
                }
            }
        }
        out
    }
}

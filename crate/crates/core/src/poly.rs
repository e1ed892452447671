//! Dense complex polynomials with companion-matrix root finding.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{HeunError, Result};

/// Polynomial `Σ c_k x^k`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(Complex64::new(0.0, 0.0));
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly::new(
            (0..n)
                .map(|k| *self.coeffs.get(k).unwrap_or(&zero) + *other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// All roots, from the eigenvalues of the companion matrix followed by
    /// one Newton step each. A polynomial whose coefficients all vanish is
    /// rejected; a nonzero constant has no roots.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        let lead = self.coeffs[n];
        if lead == Complex64::new(0.0, 0.0) {
            return Err(HeunError::DegeneratePolynomial);
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let eig = nalgebra::Schur::new(m)
            .eigenvalues()
            .ok_or(HeunError::NoConvergence(n))?;
        let dp = self.derivative();
        Ok(eig
            .iter()
            .map(|&r| {
                let d = dp.eval(r);
                let step = if d.norm() > 0.0 {
                    self.eval(r) / d
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let polished = r - step;
                // keep the polished value only if it improves the residual
                if polished.re.is_finite()
                    && polished.im.is_finite()
                    && self.eval(polished).norm() <= self.eval(r).norm()
                {
                    polished
                } else {
                    r
                }
            })
            .collect())
    }
}

//! Dense complex polynomials with Horner evaluation.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// A polynomial sum c_k z^k stored by ascending power. Trailing exact-zero
/// coefficients are trimmed on construction, so `degree` is the true degree
/// (the zero polynomial is kept as the single coefficient 0 with degree 0).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::ZERO);
        }
        ComplexPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Coefficients by ascending power; never empty, no trailing zeros
    /// except for the zero polynomial itself.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The coefficient of z^k, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::ZERO
    }

    /// Horner evaluation at z.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> ComplexPolynomial {
        if self.coeffs.len() == 1 {
            return ComplexPolynomial {
                coeffs: vec![Complex64::ZERO],
            };
        }
        ComplexPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Largest coefficient magnitude; the natural scale of the polynomial.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Horner evaluation of p at z; free-function form of
/// [`ComplexPolynomial::eval`].
pub fn polynomial_eval(p: &ComplexPolynomial, z: Complex64) -> Complex64 {
    p.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        // 1 + z^2 at i.
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        assert_eq!(p.eval(c(0.0, 1.0)), c(0.0, 0.0));
        // z - 0.8 z^2 + 0.2 z^3 at 1.
        let p = ComplexPolynomial::from_real(&[0.0, 1.0, -0.8, 0.2]);
        let v = p.eval(c(1.0, 0.0));
        assert!((v - c(0.4, 0.0)).norm() < 1e-15);
        assert_eq!(polynomial_eval(&p, c(1.0, 0.0)), v);
    }

    #[test]
    fn trimming_and_degree() {
        let p = ComplexPolynomial::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
        let z = ComplexPolynomial::from_real(&[0.0, 0.0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn derivative_rule() {
        // d/dz (3 + 2z + z^3) = 2 + 3z^2.
        let p = ComplexPolynomial::from_real(&[3.0, 2.0, 0.0, 1.0]);
        let d = p.derivative();
        assert_eq!(d.coeffs(), &[c(2.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]);
        assert!(ComplexPolynomial::from_real(&[5.0]).derivative().is_zero());
    }
}

//! Dense univariate polynomials over the rationals.
//!
//! Only what the characteristic-root classifier needs: division, gcd,
//! derivative, square-free decomposition and Sturm root counting.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::types::{to_f64, Rational};

/// Coefficients stored lowest degree first; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if rem.len() < divisor.coeffs.len() {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Yun's square-free decomposition of a nonconstant polynomial. Entry `i`
    /// collects the roots of multiplicity `i + 1`; entries are monic and
    /// pairwise coprime, constant entries mean "no roots of that multiplicity".
    pub fn square_free(&self) -> Vec<RatPoly> {
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let next_b = b.div_rem(&a).0;
            let next_c = d.div_rem(&a).0;
            d = next_c.sub(&next_b.derivative());
            b = next_b;
            out.push(a);
        }
        out
    }

    /// Number of distinct real roots, via a Sturm chain over the rationals.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        // sign at +inf is sign of the leading coefficient; at -inf it flips with odd degree
        let at_pos: Vec<bool> = chain.iter().map(|p| p.leading().is_positive()).collect();
        let at_neg: Vec<bool> = chain
            .iter()
            .map(|p| p.leading().is_positive() ^ (p.degree() % 2 == 1))
            .collect();
        sign_changes(&at_neg).saturating_sub(sign_changes(&at_pos))
    }
}

fn sign_changes(signs: &[bool]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Horner evaluation of a real-coefficient polynomial (lowest degree first)
/// and its derivative at a complex point.
pub(crate) fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::rat;

    fn poly(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = poly(&[2, -3, 0, 1]);
        let (q, r) = f.div_rem(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[-2, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&f.derivative()), poly(&[-1, 1]));
    }

    #[test]
    fn square_free_quadruple_root() {
        // (x-1)^4
        let f = poly(&[1, -4, 6, -4, 1]);
        let parts = f.square_free();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0].degree(), 0);
        assert_eq!(parts[1].degree(), 0);
        assert_eq!(parts[2].degree(), 0);
        assert_eq!(parts[3], poly(&[-1, 1]));
    }

    #[test]
    fn square_free_mixed() {
        // (x-1)^2 (x-2)^2 = x^4 - 6x^3 + 13x^2 - 12x + 4
        let f = poly(&[4, -12, 13, -6, 1]);
        let parts = f.square_free();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].degree(), 0);
        assert_eq!(parts[1], poly(&[2, -3, 1]));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(poly(&[24, -50, 35, -10, 1]).count_real_roots(), 4);
        // x^4 - x^3 - x^2 - x - 1
        assert_eq!(poly(&[-1, -1, -1, -1, 1]).count_real_roots(), 2);
        // x^2 + 1
        assert_eq!(poly(&[1, 0, 1]).count_real_roots(), 0);
        // (x^2 + 1)(x^2 + 4)
        assert_eq!(poly(&[4, 0, 5, 0, 1]).count_real_roots(), 0);
    }

    #[test]
    fn horner_derivative() {
        let (p, dp) = eval_with_derivative(&[1.0, 0.0, 1.0], Complex64::new(2.0, 0.0));
        assert_eq!(p, Complex64::new(5.0, 0.0));
        assert_eq!(dp, Complex64::new(4.0, 0.0));
    }
}

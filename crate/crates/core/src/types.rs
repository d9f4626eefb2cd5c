//! Shared value types: exact rationals, complex scalars, system parameters,
//! initial data and the error taxonomy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Exact rational scalar. Always kept in canonical form (positive denominator,
/// coprime numerator and denominator) by `num-rational`.
pub type Rational = BigRational;

/// Complex double used for characteristic roots and Binet evaluation.
pub type ComplexF = Complex64;

/// Which of the two forbidden-set sequences vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => f.write_str("A"),
            Letter::B => f.write_str("B"),
        }
    }
}

/// Which of the two defining equations (the x-update or the y-update).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Equation {
    X,
    Y,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::X => f.write_str("X"),
            Equation::Y => f.write_str("Y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("parameter d must be nonzero")]
    ZeroD,
    #[error("initial value {0} must be nonzero")]
    ZeroInitialValue(&'static str),
    /// Carries the smallest index with `A_n = 0` or `B_n = 0`.
    #[error("initial values lie in the forbidden set: {which}_{index} = 0")]
    ForbiddenSetHit { index: usize, which: Letter },
    #[error("division by zero in the {equation} equation at step {index}")]
    DivisionByZeroAtStep { index: usize, equation: Equation },
    #[error("non-finite value in floating-point evaluation")]
    NonFiniteNumeric,
    #[error("characteristic roots are too close to a multiplicity boundary to classify")]
    RootClassificationAmbiguous,
    #[error("index {index} is outside the available range -2..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty input")]
    Empty,
    #[error("malformed number {0:?}; expected an integer, fraction p/q or decimal")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `[-+]?digits(/digits)?` or `[-+]?digits(.digits)?` into an exact
/// rational. Decimals are scaled by a power of ten, never routed through `f64`.
pub fn rational_parse(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(trimmed.to_owned());
    let (negative, body) = match trimmed.as_bytes()[0] {
        b'-' => (true, &trimmed[1..]),
        b'+' => (false, &trimmed[1..]),
        _ => (false, trimmed),
    };

    let value = if let Some((num, den)) = body.split_once('/') {
        if !is_digits(num) || !is_digits(den) {
            return Err(malformed());
        }
        let den = BigInt::from_str(den).map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(trimmed.to_owned()));
        }
        let num = BigInt::from_str(num).map_err(|_| malformed())?;
        Rational::new(num, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !is_digits(int) || !is_digits(frac) {
            return Err(malformed());
        }
        let scale: BigInt = Pow::pow(BigInt::from(10u32), frac.len());
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| malformed())?;
        Rational::new(num, scale)
    } else {
        if !is_digits(body) {
            return Err(malformed());
        }
        Rational::from_integer(BigInt::from_str(body).map_err(|_| malformed())?)
    };

    Ok(if negative { -value } else { value })
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest `f64`, or infinity when the magnitude is out of range.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Bit length of the larger of numerator and denominator.
pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

/// Coefficients `a, b, c, d` of the system; `d` is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Params {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, SolverError> {
        if d.is_zero() {
            return Err(SolverError::ZeroD);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, SolverError> {
        Self::new(rat(a), rat(b), rat(c), rat(d))
    }

    /// `a = b = c = d = 1`, whose fundamental sequence is the Tetranacci numbers.
    pub fn tetranacci() -> Self {
        Self::from_ints(1, 1, 1, 1).expect("d = 1")
    }

    /// Parameters whose characteristic quartic has the given four roots
    /// (counted with multiplicity): `a = e1, b = -e2, c = e3, d = -e4`.
    pub fn from_roots(roots: [Rational; 4]) -> Result<Self, SolverError> {
        let [e1, e2, e3, e4] = elementary_symmetric(&roots);
        Self::new(e1, -e2, e3, -e4)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_positive(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|v| v.is_positive())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c={}, d={})", self.a, self.b, self.c, self.d)
    }
}

/// Elementary symmetric functions `e1..e4` of four values.
pub(crate) fn elementary_symmetric<T>(r: &[T; 4]) -> [T; 4]
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    // coefficients of prod (1 + r_i t)
    let mut e = [T::one(), T::zero(), T::zero(), T::zero(), T::zero()];
    for root in r.iter() {
        for k in (1..=4).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * root.clone();
        }
    }
    let [_, e1, e2, e3, e4] = e;
    [e1, e2, e3, e4]
}

/// The six nonzero initial values `x_{-2}, x_{-1}, x_0, y_{-2}, y_{-1}, y_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InitialState {
    x: [Rational; 3],
    y: [Rational; 3],
}

impl InitialState {
    pub fn new(
        x_m2: Rational,
        x_m1: Rational,
        x_0: Rational,
        y_m2: Rational,
        y_m1: Rational,
        y_0: Rational,
    ) -> Result<Self, SolverError> {
        const NAMES: [&str; 6] = ["x_-2", "x_-1", "x_0", "y_-2", "y_-1", "y_0"];
        let all = [&x_m2, &x_m1, &x_0, &y_m2, &y_m1, &y_0];
        if let Some(i) = all.iter().position(|v| v.is_zero()) {
            return Err(SolverError::ZeroInitialValue(NAMES[i]));
        }
        Ok(Self {
            x: [x_m2, x_m1, x_0],
            y: [y_m2, y_m1, y_0],
        })
    }

    pub fn from_ints(x: [i64; 3], y: [i64; 3]) -> Result<Self, SolverError> {
        Self::new(rat(x[0]), rat(x[1]), rat(x[2]), rat(y[0]), rat(y[1]), rat(y[2]))
    }

    /// Mirrored data `y_{-i} = x_{-i}`, which reduces the system to a single equation.
    pub fn symmetric(x_m2: Rational, x_m1: Rational, x_0: Rational) -> Result<Self, SolverError> {
        Self::new(
            x_m2.clone(),
            x_m1.clone(),
            x_0.clone(),
            x_m2,
            x_m1,
            x_0,
        )
    }

    /// `x_{-2}, x_{-1}, x_0`.
    pub fn x(&self) -> &[Rational; 3] {
        &self.x
    }

    /// `y_{-2}, y_{-1}, y_0`.
    pub fn y(&self) -> &[Rational; 3] {
        &self.y
    }

    pub fn is_symmetric(&self) -> bool {
        self.x == self.y
    }

    pub fn is_positive(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|v| v.is_positive())
    }
}
